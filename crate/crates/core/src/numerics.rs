//! Dense complex linear algebra sized for verification work.
//!
//! Matrices are square and row-major. Products skip exact-zero entries of the
//! left operand, so multiplying by gate embeddings or step matrices (two
//! nonzeros per row) costs O(dim²) rather than O(dim³).

use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Complex = Complex64;

/// Largest qubit count for which dense matrices are materialized.
pub const MAX_DENSE_QUBITS: usize = 12;
/// Largest matrix dimension any constructor will produce.
pub const MAX_DIM: usize = 1 << MAX_DENSE_QUBITS;

pub(crate) const ZERO: Complex = Complex::new(0.0, 0.0);
pub(crate) const ONE: Complex = Complex::new(1.0, 0.0);

/// `ω^k` for `ω = exp(2πi / 2^bits)`.
///
/// The exponent is reduced modulo `2^bits` before any trigonometry, and
/// multiples of a quarter turn are returned exactly.
pub fn omega_pow(k: u64, bits: u32) -> Complex {
    if bits == 0 {
        return ONE;
    }
    let modulus = 1u64 << bits;
    let k = k & (modulus - 1);
    if (k << 2).is_multiple_of(modulus) {
        return match (k << 2) / modulus {
            0 => ONE,
            1 => Complex::new(0.0, 1.0),
            2 => Complex::new(-1.0, 0.0),
            _ => Complex::new(0.0, -1.0),
        };
    }
    Complex::from_polar(1.0, TAU * k as f64 / modulus as f64)
}

/// Positive comparison threshold for approximate equality checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance(f64);

impl Tolerance {
    pub const DEFAULT: Tolerance = Tolerance(1e-10);
    /// For constructions that are exact up to rounding (sign flips, ω powers).
    pub const STRICT: Tolerance = Tolerance(1e-12);

    pub fn new(eps: f64) -> Result<Self> {
        if eps > 0.0 && eps.is_finite() {
            Ok(Self(eps))
        } else {
            Err(Error::InvalidTolerance(eps))
        }
    }

    pub fn eps(self) -> f64 {
        self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::DEFAULT
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector {
    data: Vec<Complex>,
}

impl ComplexVector {
    /// Wraps `data`, rejecting empty input and non-finite components.
    pub fn new(data: Vec<Complex>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(i) = data.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { data })
    }

    pub fn zeros(len: usize) -> Self {
        assert!(len > 0, "vector length must be positive");
        Self {
            data: vec![ZERO; len],
        }
    }

    /// The computational basis vector `e_index`.
    pub fn basis(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.data[index] = ONE;
        v
    }

    pub(crate) fn from_vec_unchecked(data: Vec<Complex>) -> Self {
        debug_assert!(!data.is_empty());
        Self { data }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex] {
        &self.data
    }

    pub fn into_inner(self) -> Vec<Complex> {
        self.data
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex> {
        self.data.iter()
    }

    /// Euclidean norm.
    pub fn norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of the difference.
    pub fn max_distance(&self, other: &ComplexVector) -> Result<f64> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

impl Index<usize> for ComplexVector {
    type Output = Complex;

    fn index(&self, i: usize) -> &Complex {
        &self.data[i]
    }
}

/// Square dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut m = Self::zeros(dim);
        for j in 0..dim {
            for k in 0..dim {
                m.entries[j * dim + k] = f(j, k);
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Empty);
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: row.len(),
                });
            }
            entries.extend(row);
        }
        if let Some(i) = entries.iter().position(|z| !z.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { dim, entries })
    }

    pub fn diagonal(diag: &[Complex]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * m.dim + i] = d;
        }
        m
    }

    /// The 2×2 Hadamard matrix.
    pub fn hadamard() -> Self {
        let h = Complex::new(FRAC_1_SQRT_2, 0.0);
        Self {
            dim: 2,
            entries: vec![h, h, h, -h],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex] {
        &self.entries
    }

    pub fn row(&self, j: usize) -> &[Complex] {
        &self.entries[j * self.dim..(j + 1) * self.dim]
    }

    pub fn column(&self, k: usize) -> Vec<Complex> {
        (0..self.dim).map(|j| self[(j, k)]).collect()
    }

    pub fn diagonal_entries(&self) -> Vec<Complex> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |j, k| self[(k, j)].conj())
    }

    fn check_same_dim(&self, other: &ComplexMatrix) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<Self> {
        self.check_same_dim(other)?;
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            let out_row = &mut out[i * n..(i + 1) * n];
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == ZERO {
                    continue;
                }
                for (o, &b) in out_row.iter_mut().zip(other.row(k)) {
                    *o += a * b;
                }
            }
        }
        Ok(Self {
            dim: n,
            entries: out,
        })
    }

    pub fn matvec(&self, v: &ComplexVector) -> Result<ComplexVector> {
        if self.dim != v.len() {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: v.len(),
            });
        }
        let data = (0..self.dim)
            .map(|j| {
                self.row(j)
                    .iter()
                    .zip(v.as_slice())
                    .map(|(a, x)| a * x)
                    .sum()
            })
            .collect();
        Ok(ComplexVector::from_vec_unchecked(data))
    }

    /// Kronecker product `self ⊗ other`; `self` indexes the high-order block.
    pub fn kron(&self, other: &ComplexMatrix) -> Result<Self> {
        let dim = self
            .dim
            .checked_mul(other.dim)
            .filter(|&d| d <= MAX_DIM)
            .ok_or(Error::DimensionTooLarge {
                dim: self.dim.saturating_mul(other.dim),
                max: MAX_DIM,
            })?;
        let q = other.dim;
        Ok(Self::from_fn(dim, |j, k| {
            self[(j / q, k / q)] * other[(j % q, k % q)]
        }))
    }

    /// Max-entry norm of `self · self† − I`.
    pub fn unitarity_error(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for j in 0..n {
            for k in 0..n {
                let dot: Complex = self
                    .row(j)
                    .iter()
                    .zip(self.row(k))
                    .map(|(a, b)| a * b.conj())
                    .sum();
                let target = if j == k { ONE } else { ZERO };
                worst = worst.max((dot - target).norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self, tol: Tolerance) -> bool {
        self.unitarity_error() <= tol.eps()
    }

    /// Largest modulus of an off-diagonal entry.
    pub fn off_diagonal_max(&self) -> f64 {
        let mut worst = 0.0f64;
        for j in 0..self.dim {
            for (k, z) in self.row(j).iter().enumerate() {
                if j != k {
                    worst = worst.max(z.norm());
                }
            }
        }
        worst
    }

    pub fn max_entry_distance(&self, other: &ComplexMatrix) -> Result<f64> {
        self.check_same_dim(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex;

    fn index(&self, (j, k): (usize, usize)) -> &Complex {
        &self.entries[j * self.dim + k]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (j, k): (usize, usize)) -> &mut Complex {
        &mut self.entries[j * self.dim + k]
    }
}

/// Formats a real number as the shortest decimal that parses back to the
/// same `f64`, switching to exponent form for very large or small values.
pub fn format_real(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

/// `re+imi` / `re-imi` form used by the matrix dumps.
pub fn format_complex(z: Complex) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", format_real(z.re), sign, format_real(z.im.abs()))
}

impl fmt::Display for ComplexMatrix {
    /// One row per line, entries separated by a single space.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.dim {
            let line: Vec<String> = self.row(j).iter().map(|&z| format_complex(z)).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
