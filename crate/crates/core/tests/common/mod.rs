//! Test oracles and generators. Nothing here calls into the transform or
//! step-matrix code under test.
#![allow(dead_code)]

use std::f64::consts::TAU;

use qftqr::{Complex, ComplexMatrix, ComplexVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vector(rng: &mut impl Rng, len: usize) -> ComplexVector {
    let data = (0..len)
        .map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    ComplexVector::new(data).unwrap()
}

pub fn random_unit_vector(rng: &mut impl Rng, len: usize) -> ComplexVector {
    let v = random_vector(rng, len);
    let norm = v.norm();
    ComplexVector::new(v.iter().map(|z| z / norm).collect()).unwrap()
}

/// DFT matrix computed straight from `exp(2πi·ac/N)/√N`,
/// with the exponent product reduced modulo N in integer arithmetic.
pub fn naive_dft_matrix(n: u32) -> ComplexMatrix {
    let len = 1usize << n;
    let scale = 1.0 / (len as f64).sqrt();
    ComplexMatrix::from_fn(len, |c, a| {
        let r = (a * c) % len;
        Complex::from_polar(scale, TAU * r as f64 / len as f64)
    })
}

pub fn naive_dft(x: &ComplexVector) -> ComplexVector {
    let len = x.len();
    let scale = 1.0 / (len as f64).sqrt();
    let data = (0..len)
        .map(|c| {
            x.iter()
                .enumerate()
                .map(|(a, &xa)| {
                    let r = (a * c) % len;
                    xa * Complex::from_polar(scale, TAU * r as f64 / len as f64)
                })
                .sum()
        })
        .collect();
    ComplexVector::new(data).unwrap()
}

/// Random unitary by Gram–Schmidt on a random complex matrix.
pub fn random_unitary(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v: Vec<Complex> = (0..dim)
            .map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        for q in &cols {
            let r: Complex = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= r * qi;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_fn(dim, |j, k| cols[k][j])
}

pub fn random_matrix(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, _| {
        Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

/// Bit-reversal permutation built by string reversal of the binary digits.
pub fn reversal_permutation(n: u32) -> ComplexMatrix {
    let len = 1usize << n;
    let rev = |j: usize| {
        if n == 0 {
            return 0;
        }
        let s: String = format!("{j:0width$b}", width = n as usize)
            .chars()
            .rev()
            .collect();
        usize::from_str_radix(&s, 2).unwrap()
    };
    ComplexMatrix::from_fn(len, |j, k| {
        if k == rev(j) {
            Complex::new(1.0, 0.0)
        } else {
            Complex::new(0.0, 0.0)
        }
    })
}

/// `H^{⊗n}` from the closed form `(−1)^{popcount(j & k)} / √N`.
pub fn hadamard_transform(n: u32) -> ComplexMatrix {
    let len = 1usize << n;
    let scale = 1.0 / (len as f64).sqrt();
    ComplexMatrix::from_fn(len, |j, k| {
        let sign = if (j & k).count_ones() % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        Complex::new(sign * scale, 0.0)
    })
}

/// `|arg(a · conj(b))|`, the wrapped phase difference.
pub fn phase_gap(a: Complex, b: Complex) -> f64 {
    (a * b.conj()).arg().abs()
}
