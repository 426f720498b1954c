//! Per-stage matrices of the radix-2 FFT and their factorization.
//!
//! Stage `s` of the FFT on `n` bits is the `2^n × 2^n` unitary `P(s)`. It
//! factors as `P(s) = M(s)·N(s)` where `M(s)` is a Hadamard on bit `s`
//! (real orthogonal) and `N(s)` is a diagonal of phases that further splits
//! into two-qubit controlled phases `R(s,t,u)`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::fourier::{bit, bit_reverse};
use crate::numerics::{
    format_complex, format_real, omega_pow, Complex, ComplexMatrix, ComplexVector, Tolerance,
    MAX_DENSE_QUBITS, ONE, ZERO,
};

fn check_qubits(n: usize) -> Result<()> {
    if (1..=MAX_DENSE_QUBITS).contains(&n) {
        Ok(())
    } else {
        Err(Error::QubitCountOutOfRange {
            n,
            max: MAX_DENSE_QUBITS,
        })
    }
}

fn check_step(n: usize, s: usize) -> Result<()> {
    check_qubits(n)?;
    if s < n {
        Ok(())
    } else {
        Err(Error::StepOutOfRange { s, n })
    }
}

/// `(0.j)·2^{n+s}` reduced modulo `2^n`, i.e. the integer `(j_s … j_{n−1} 0…0)₂`.
fn scaled_fraction(j: usize, n: usize, s: usize) -> u64 {
    let full: u64 = (0..n)
        .map(|t| (bit(j, t as u32) as u64) << (n + s - t - 1))
        .sum();
    full & ((1u64 << n) - 1)
}

/// `(−1)^{⌊j/2^s⌋}`.
fn parity_sign(j: usize, s: usize) -> f64 {
    if (j >> s) & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Stage matrix `P(s)`. Row `j` has exactly two nonzeros: the diagonal and
/// column `j ∓ 2^s` depending on bit `s` of `j`.
pub fn build_p(n: usize, s: usize) -> Result<ComplexMatrix> {
    check_step(n, s)?;
    let dim = 1usize << n;
    let half = 1usize << s;
    let mut p = ComplexMatrix::zeros(dim);
    for j in 0..dim {
        let js = bit(j, s as u32) as u64;
        let frac = scaled_fraction(j, n, s);
        p[(j, j)] = omega_pow(js * frac, n as u32) * FRAC_1_SQRT_2;
        if js == 1 {
            p[(j, j - half)] = Complex::new(FRAC_1_SQRT_2, 0.0);
        } else {
            p[(j, j + half)] = omega_pow(frac, n as u32) * FRAC_1_SQRT_2;
        }
    }
    Ok(p)
}

/// Column scaling `α_k = (−1)^{⌊k/2^s⌋} ω^{2^n − k_s (0.k) 2^{n+s}}` that
/// turns `P(s)` into the real matrix `M(s)`.
pub fn build_alpha(n: usize, s: usize) -> Result<ComplexVector> {
    check_step(n, s)?;
    let dim = 1usize << n;
    let data = (0..dim)
        .map(|k| {
            let ks = bit(k, s as u32) as u64;
            let exponent = (1u64 << n) - ks * scaled_fraction(k, n, s);
            omega_pow(exponent, n as u32) * parity_sign(k, s)
        })
        .collect();
    Ok(ComplexVector::from_vec_unchecked(data))
}

/// Real orthogonal factor `M(s)`: Hadamard acting on bit `s`.
pub fn build_m(n: usize, s: usize) -> Result<ComplexMatrix> {
    check_step(n, s)?;
    let dim = 1usize << n;
    let half = 1usize << s;
    let h = FRAC_1_SQRT_2;
    let mut m = ComplexMatrix::zeros(dim);
    for j in 0..dim {
        m[(j, j)] = Complex::new(parity_sign(j, s) * h, 0.0);
        if bit(j, s as u32) == 1 {
            m[(j, j - half)] = Complex::new(h, 0.0);
        } else {
            m[(j, j + half)] = Complex::new(h, 0.0);
        }
    }
    Ok(m)
}

fn n_diagonal_entry(j: usize, n: usize, s: usize) -> Complex {
    let js = bit(j, s as u32) as u64;
    omega_pow(js * scaled_fraction(j, n, s), n as u32) * parity_sign(j, s)
}

/// Diagonal factor `N(s)` with `N_jj = (−1)^{⌊j/2^s⌋} ω^{j_s (0.j) 2^{n+s}}`.
pub fn build_n(n: usize, s: usize) -> Result<ComplexMatrix> {
    check_step(n, s)?;
    let diag: Vec<Complex> = (0..1usize << n)
        .map(|j| n_diagonal_entry(j, n, s))
        .collect();
    Ok(ComplexMatrix::diagonal(&diag))
}

/// Diagonal `R(s,t,u)` with entry `ω^{j_s j_t 2^{n−u}}`: phase `2π/2^u` on
/// basis states where bits `s` and `t` are both set.
pub fn build_r(n: usize, s: usize, t: usize, u: usize) -> Result<ComplexMatrix> {
    check_qubits(n)?;
    if s >= n {
        return Err(Error::QubitOutOfRange { qubit: s, n });
    }
    if t >= n {
        return Err(Error::QubitOutOfRange { qubit: t, n });
    }
    if s == t {
        return Err(Error::InvalidGate(format!(
            "controlled phase needs distinct qubits, got {s} twice"
        )));
    }
    if !(1..=n).contains(&u) {
        return Err(Error::InvalidPhaseExponent(u as u32));
    }
    let step = 1u64 << (n - u);
    let diag: Vec<Complex> = (0..1usize << n)
        .map(|j| {
            let both = (bit(j, s as u32) & bit(j, t as u32)) as u64;
            omega_pow(both * step, n as u32)
        })
        .collect();
    Ok(ComplexMatrix::diagonal(&diag))
}

/// `∏_{t=s+1}^{n−1} R(s, t, t−s+1)`; the identity when `s = n − 1`.
pub fn phase_product(n: usize, s: usize) -> Result<ComplexMatrix> {
    check_step(n, s)?;
    let mut acc = ComplexMatrix::identity(1 << n);
    for t in s + 1..n {
        acc = build_r(n, s, t, t - s + 1)?.matmul(&acc)?;
    }
    Ok(acc)
}

/// `I^{⊗(n−s−1)} ⊗ H ⊗ I^{⊗s}` built as an explicit Kronecker chain.
pub fn hadamard_tensor(n: usize, s: usize) -> Result<ComplexMatrix> {
    check_step(n, s)?;
    let i2 = ComplexMatrix::identity(2);
    let mut acc = ComplexMatrix::identity(1);
    for slot in (0..n).rev() {
        let factor = if slot == s {
            ComplexMatrix::hadamard()
        } else {
            i2.clone()
        };
        acc = acc.kron(&factor)?;
    }
    Ok(acc)
}

/// Bit-reversal permutation `A`: `A_{jk} = 1` iff `k = rev(j)`.
pub fn bit_reversal_matrix(n: usize) -> Result<ComplexMatrix> {
    check_qubits(n)?;
    let dim = 1usize << n;
    let mut a = ComplexMatrix::zeros(dim);
    for j in 0..dim {
        a[(j, bit_reverse(j, n as u32))] = ONE;
    }
    Ok(a)
}

/// `A · M(0)N(0) · M(1)N(1) ⋯ M(n−1)N(n−1)`, built from the closed forms.
pub fn factored_transform(n: usize) -> Result<ComplexMatrix> {
    check_qubits(n)?;
    let mut acc = ComplexMatrix::identity(1 << n);
    // right to left so every product has a sparse left operand
    for s in (0..n).rev() {
        let step = build_m(n, s)?.matmul(&build_n(n, s)?)?;
        acc = step.matmul(&acc)?;
    }
    bit_reversal_matrix(n)?.matmul(&acc)
}

/// Result of factoring one stage matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct StepDecomposition {
    pub n: usize,
    pub s: usize,
    pub p: ComplexMatrix,
    pub m_factor: ComplexMatrix,
    pub n_factor: ComplexMatrix,
    pub alpha: ComplexVector,
    /// Largest Gram–Schmidt projection between distinct columns of `P`.
    pub orthogonality_residual: f64,
    /// `max |M·N − P|`.
    pub factorization_residual: f64,
    /// Distance of the numeric factors from the closed forms.
    pub closed_form_residual: f64,
}

impl StepDecomposition {
    /// Text dump of `P`, `M`, `N`, `α` and the residuals.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# n={} s={}", self.n, self.s);
        let _ = write!(out, "# P\n{}", self.p);
        let _ = write!(out, "# M\n{}", self.m_factor);
        let _ = write!(out, "# N\n{}", self.n_factor);
        let alpha: Vec<String> = self.alpha.iter().map(|&z| format_complex(z)).collect();
        let _ = writeln!(out, "# alpha\n{}", alpha.join(" "));
        let _ = writeln!(
            out,
            "# residuals orthogonality={} factorization={} closed_form={}",
            format_real(self.orthogonality_residual),
            format_real(self.factorization_residual),
            format_real(self.closed_form_residual)
        );
        out
    }
}

/// Factors `P(s)` into a real orthogonal `M` and a diagonal `N`.
///
/// The columns of `P(s)` are orthonormal and each has exactly two nonzeros,
/// at rows `k` and `k XOR 2^s`. Gram–Schmidt therefore only has to project
/// against the partner column, and the triangular factor collapses to a
/// diagonal of phases. Each column is rotated so that its off-diagonal entry
/// is positive real, which fixes the diagonal sign of `M` to `(−1)^{k_s}`.
/// The numeric factors are then checked against [`build_m`] and
/// [`build_n`].
pub fn qr_decompose_step(p: &ComplexMatrix, n: usize, s: usize) -> Result<StepDecomposition> {
    check_step(n, s)?;
    let dim = 1usize << n;
    if p.dim() != dim {
        return Err(Error::DimensionMismatch {
            left: p.dim(),
            right: dim,
        });
    }
    let tol = Tolerance::STRICT.eps();
    let half = 1usize << s;

    for k in 0..dim {
        let partner = k ^ half;
        for j in 0..dim {
            let z = p[(j, k)];
            let expected = j == k || j == partner;
            if expected && (z.norm() - FRAC_1_SQRT_2).abs() > tol {
                return Err(Error::Structure(format!(
                    "entry ({j},{k}) has modulus {}, expected 1/sqrt(2)",
                    z.norm()
                )));
            }
            if !expected && z.norm() > tol {
                return Err(Error::Structure(format!("unexpected nonzero at ({j},{k})")));
            }
        }
    }

    let mut columns: Vec<[Complex; 2]> = Vec::with_capacity(dim);
    let mut alpha = Vec::with_capacity(dim);
    let mut orthogonality_residual = 0.0f64;
    for k in 0..dim {
        let partner = k ^ half;
        // support rows in ascending order
        let rows = [k.min(partner), k.max(partner)];
        let mut col = [p[(rows[0], k)], p[(rows[1], k)]];
        if partner < k {
            // the partner column shares support; all other earlier columns are disjoint
            let q = &columns[partner];
            let r: Complex = q.iter().zip(&col).map(|(a, b)| a.conj() * b).sum();
            orthogonality_residual = orthogonality_residual.max(r.norm());
            for (c, qi) in col.iter_mut().zip(q) {
                *c -= r * qi;
            }
        }
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for c in col.iter_mut() {
            *c /= norm;
        }
        let off = if rows[0] == k { col[1] } else { col[0] };
        let phase = off.conj() / off.norm();
        for c in col.iter_mut() {
            *c *= phase;
        }
        columns.push(col);
        alpha.push(phase / norm);
    }

    let mut m_factor = ComplexMatrix::zeros(dim);
    let mut n_diag = vec![ZERO; dim];
    for (k, col) in columns.iter().enumerate() {
        let partner = k ^ half;
        let rows = [k.min(partner), k.max(partner)];
        m_factor[(rows[0], k)] = col[0];
        m_factor[(rows[1], k)] = col[1];
        n_diag[k] = rows
            .iter()
            .zip(col)
            .map(|(&j, m)| m.conj() * p[(j, k)])
            .sum();
    }
    let n_factor = ComplexMatrix::diagonal(&n_diag);
    let factorization_residual = m_factor.matmul(&n_factor)?.max_entry_distance(p)?;
    let closed_form_residual = m_factor
        .max_entry_distance(&build_m(n, s)?)?
        .max(n_factor.max_entry_distance(&build_n(n, s)?)?);
    if closed_form_residual > tol {
        return Err(Error::Structure(format!(
            "factors deviate from the closed forms by {closed_form_residual:e}"
        )));
    }

    Ok(StepDecomposition {
        n,
        s,
        p: p.clone(),
        m_factor,
        n_factor,
        alpha: ComplexVector::from_vec_unchecked(alpha),
        orthogonality_residual,
        factorization_residual,
        closed_form_residual,
    })
}

/// Builds `P(s)` and factors it.
pub fn decompose_step(n: usize, s: usize) -> Result<StepDecomposition> {
    qr_decompose_step(&build_p(n, s)?, n, s)
}
