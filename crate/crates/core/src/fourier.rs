//! Reference transforms: the direct DFT, the bit-pair-restricted approximate
//! DFT, the radix-2 FFT with its phase-truncated variant, and the error-bound
//! helpers that relate the approximation parameter `m` to phase error.
//!
//! Index convention: bit `s` of an index is the coefficient of `2^s`.
//! Transforms use `ω = exp(+2πi/N)` and the unitary `1/√N` normalization.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use crate::error::{Error, Result};
use crate::numerics::{omega_pow, Complex, ComplexMatrix, ComplexVector, MAX_DENSE_QUBITS};

/// Number of bits `n` such that `len == 2^n`.
pub fn qubits_for_len(len: usize) -> Result<u32> {
    if len.is_power_of_two() {
        Ok(len.trailing_zeros())
    } else {
        Err(Error::NotPowerOfTwo(len))
    }
}

/// Bit `s` of `value`, as 0 or 1.
#[inline]
pub fn bit(value: usize, s: u32) -> usize {
    (value >> s) & 1
}

/// Reverses the low `width` bits of `value`.
pub fn bit_reverse(value: usize, width: u32) -> usize {
    if width == 0 {
        return 0;
    }
    value.reverse_bits() >> (usize::BITS - width)
}

/// An index together with the bit width it is read at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitIndex {
    value: usize,
    width: u32,
}

impl BitIndex {
    pub fn new(value: usize, width: u32) -> Result<Self> {
        if width as usize >= usize::BITS as usize || value >> width != 0 {
            return Err(Error::Structure(format!(
                "index {value} does not fit in {width} bits"
            )));
        }
        Ok(Self { value, width })
    }

    pub fn value(self) -> usize {
        self.value
    }

    pub fn width(self) -> u32 {
        self.width
    }

    pub fn bit(self, s: u32) -> usize {
        bit(self.value, s)
    }

    /// `0.j₀j₁…j_{n−1} = Σ_t j_t / 2^{t+1}`: the low bit is the first digit
    /// after the point.
    pub fn binary_fraction(self) -> f64 {
        (0..self.width)
            .map(|t| self.bit(t) as f64 / (1u64 << (t + 1)) as f64)
            .sum()
    }

    pub fn reversed(self) -> Self {
        Self {
            value: bit_reverse(self.value, self.width),
            width: self.width,
        }
    }
}

/// The approximation parameter `m` with `1 ≤ m ≤ n`; `m = n` is exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ApproximationParam(usize);

impl ApproximationParam {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if (1..=n).contains(&m) {
            Ok(Self(m))
        } else {
            Err(Error::ApproximationOutOfRange { m, n })
        }
    }

    /// The parameter selecting the exact transform on `n ≥ 1` bits.
    pub fn exact(n: usize) -> Result<Self> {
        Self::new(n, n)
    }

    pub fn get(self) -> usize {
        self.0
    }

    fn check(self, n: usize) -> Result<()> {
        if self.0 > n {
            Err(Error::ApproximationOutOfRange { m: self.0, n })
        } else {
            Ok(())
        }
    }
}

fn root_table(n: u32) -> Vec<Complex> {
    (0..1u64 << n).map(|r| omega_pow(r, n)).collect()
}

/// `Y_c = (1/√N) Σ_a X_a ω^{ac}` evaluated term by term.
pub fn dft_direct(x: &ComplexVector) -> Result<ComplexVector> {
    let n = qubits_for_len(x.len())?;
    let len = x.len();
    let mask = len - 1;
    let roots = root_table(n);
    let scale = 1.0 / (len as f64).sqrt();
    let data = (0..len)
        .map(|c| {
            let acc: Complex = x
                .iter()
                .enumerate()
                .map(|(a, &xa)| xa * roots[(a * c) & mask])
                .sum();
            acc * scale
        })
        .collect();
    Ok(ComplexVector::from_vec_unchecked(data))
}

/// The unitary DFT matrix `F_{ca} = ω^{ac}/√N` on `n` bits.
pub fn dft_matrix(n: u32) -> Result<ComplexMatrix> {
    if n as usize > MAX_DENSE_QUBITS {
        return Err(Error::QubitCountOutOfRange {
            n: n as usize,
            max: MAX_DENSE_QUBITS,
        });
    }
    let len = 1usize << n;
    let roots = root_table(n);
    let scale = 1.0 / (len as f64).sqrt();
    Ok(ComplexMatrix::from_fn(len, |c, a| {
        roots[(a * c) & (len - 1)] * scale
    }))
}

/// Phase exponent (in units of `2π/N`) of the approximate transform entry
/// for input index `a` and output index `c`: the sum of `a_j c_k 2^{j+k}`
/// over bit pairs with `n − m ≤ j + k ≤ n − 1`.
pub fn approx_phase_exponent(a: usize, c: usize, n: u32, m: usize) -> u64 {
    let n = n as usize;
    let lower = n.saturating_sub(m);
    let mut e = 0u64;
    for j in 0..n {
        if bit(a, j as u32) == 0 {
            continue;
        }
        for k in lower.saturating_sub(j)..n.saturating_sub(j) {
            if bit(c, k as u32) == 1 {
                e += 1u64 << (j + k);
            }
        }
    }
    e
}

/// Approximate DFT by the explicit restricted double sum over bit pairs.
/// With `m = n` this is the exact DFT written in binary-expansion form.
pub fn dft_approx_direct(x: &ComplexVector, m: ApproximationParam) -> Result<ComplexVector> {
    let n = qubits_for_len(x.len())?;
    if n == 0 {
        return Ok(x.clone());
    }
    m.check(n as usize)?;
    let len = x.len();
    let scale = 1.0 / (len as f64).sqrt();
    let data = (0..len)
        .map(|c| {
            let acc: Complex = x
                .iter()
                .enumerate()
                .filter(|(_, xa)| **xa != Complex::new(0.0, 0.0))
                .map(|(a, &xa)| xa * omega_pow(approx_phase_exponent(a, c, n, m.get()), n))
                .sum();
            acc * scale
        })
        .collect();
    Ok(ComplexVector::from_vec_unchecked(data))
}

fn bound_for(n: usize, m: i64) -> f64 {
    TAU * n as f64 * 2f64.powi(-(m.clamp(-1000, 1000) as i32))
}

/// Upper bound `2πn·2^{−m}` on the phase deviation between exact and
/// approximate transform entries.
pub fn phase_error_bound(n: usize, m: ApproximationParam) -> Result<f64> {
    if n == 0 {
        return Err(Error::QubitCountOutOfRange { n, max: usize::MAX });
    }
    m.check(n)?;
    Ok(bound_for(n, m.get() as i64))
}

/// `⌈log₂(2π/ε) + log₂ log₂ N⌉` before clamping, adjusted by at most one
/// step so that it is the smallest integer whose bound is `≤ eps_max`.
pub fn min_m_unclamped(eps_max: f64, n: usize) -> Result<i64> {
    if !(eps_max > 0.0 && eps_max.is_finite()) {
        return Err(Error::InvalidErrorBound(eps_max));
    }
    if n == 0 {
        return Err(Error::QubitCountOutOfRange { n, max: usize::MAX });
    }
    let raw = ((TAU / eps_max).log2() + (n as f64).log2()).ceil();
    let mut m = raw.clamp(-1000.0, 1000.0) as i64;
    // the float ceiling can land one off when the real value is an integer
    while m < 1000 && bound_for(n, m) > eps_max {
        m += 1;
    }
    while m > -1000 && bound_for(n, m - 1) <= eps_max {
        m -= 1;
    }
    Ok(m)
}

/// Smallest approximation parameter meeting `eps_max`, clamped to `[1, n]`.
pub fn min_m_for_error(eps_max: f64, n: usize) -> Result<usize> {
    let m = min_m_unclamped(eps_max, n)?;
    Ok(m.clamp(1, n as i64) as usize)
}

/// Twiddle exponent `(j_s j_{s+1} … j_top 0…0)₂` for butterfly stage `s`:
/// bit `t` of `j` lands at position `n − 1 − (t − s)`.
fn twiddle_exponent(j: usize, n: u32, s: u32, top: u32) -> u64 {
    (s..=top)
        .map(|t| (bit(j, t) as u64) << (n - 1 - (t - s)))
        .sum()
}

fn stage_into(prev: &[Complex], next: &mut [Complex], n: u32, s: u32, m: usize) {
    let top = (s + m as u32 - 1).min(n - 1);
    let half = 1usize << s;
    for (j, out) in next.iter_mut().enumerate() {
        let lo = prev[j & !half];
        let hi = prev[j | half];
        let w = omega_pow(twiddle_exponent(j, n, s, top), n);
        *out = (lo + w * hi) * FRAC_1_SQRT_2;
    }
}

/// One butterfly stage: maps `X^{(s+1)}` to `X^{(s)}`. The twiddle keeps
/// bits `s..=min(s+m−1, n−1)` of the output index.
pub fn fft_stage(x: &ComplexVector, s: u32, m: ApproximationParam) -> Result<ComplexVector> {
    let n = qubits_for_len(x.len())?;
    if s >= n {
        return Err(Error::StepOutOfRange {
            s: s as usize,
            n: n as usize,
        });
    }
    m.check(n as usize)?;
    let mut out = vec![Complex::new(0.0, 0.0); x.len()];
    stage_into(x.as_slice(), &mut out, n, s, m.get());
    Ok(ComplexVector::from_vec_unchecked(out))
}

fn fft_truncated(x: &ComplexVector, m: usize) -> Result<ComplexVector> {
    let n = qubits_for_len(x.len())?;
    if n == 0 {
        return Ok(x.clone());
    }
    let mut cur = x.as_slice().to_vec();
    let mut next = vec![Complex::new(0.0, 0.0); x.len()];
    for s in (0..n).rev() {
        stage_into(&cur, &mut next, n, s, m);
        std::mem::swap(&mut cur, &mut next);
    }
    let out = (0..x.len()).map(|b| cur[bit_reverse(b, n)]).collect();
    Ok(ComplexVector::from_vec_unchecked(out))
}

/// Radix-2 FFT: butterfly stages `s = n−1` down to `0`, each scaled by
/// `1/√2`, followed by the bit-reversal re-ordering.
pub fn fft_classical(x: &ComplexVector) -> Result<ComplexVector> {
    let n = qubits_for_len(x.len())?;
    fft_truncated(x, n as usize)
}

/// [`fft_classical`] with each twiddle truncated to `m` leading bits.
pub fn fft_approx_classical(x: &ComplexVector, m: ApproximationParam) -> Result<ComplexVector> {
    let n = qubits_for_len(x.len())?;
    if n > 0 {
        m.check(n as usize)?;
    }
    fft_truncated(x, m.get())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn vec_of(xs: &[(f64, f64)]) -> ComplexVector {
        ComplexVector::new(xs.iter().map(|&(r, i)| c(r, i)).collect()).unwrap()
    }

    fn assert_close(a: &ComplexVector, b: &ComplexVector, tol: f64) {
        let d = a.max_distance(b).unwrap();
        assert!(d < tol, "distance {d} >= {tol}");
    }

    #[test]
    fn dft_delta_and_uniform() {
        let delta = vec_of(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
        let uniform = vec_of(&[(0.5, 0.0); 4]);
        assert_close(&dft_direct(&delta).unwrap(), &uniform, 1e-15);
        assert_close(&dft_direct(&uniform).unwrap(), &delta, 1e-15);
    }

    #[test]
    fn dft_of_second_basis_vector() {
        // Y_c = ω^c / 2 with ω = i
        let x = vec_of(&[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]);
        let want = vec_of(&[(0.5, 0.0), (0.0, 0.5), (-0.5, 0.0), (0.0, -0.5)]);
        assert_close(&dft_direct(&x).unwrap(), &want, 1e-15);
    }

    #[test]
    fn length_must_be_power_of_two() {
        let x = vec_of(&[(1.0, 0.0); 3]);
        assert_eq!(dft_direct(&x), Err(Error::NotPowerOfTwo(3)));
        assert_eq!(fft_classical(&x), Err(Error::NotPowerOfTwo(3)));
        let m = ApproximationParam::new(1, 1).unwrap();
        assert!(dft_approx_direct(&x, m).is_err());
        assert!(fft_approx_classical(&x, m).is_err());
    }

    #[test]
    fn length_one_is_identity() {
        let x = vec_of(&[(0.3, -0.4)]);
        assert_eq!(dft_direct(&x).unwrap(), x);
        assert_eq!(fft_classical(&x).unwrap(), x);
        let m = ApproximationParam::new(1, 1).unwrap();
        assert_eq!(fft_approx_classical(&x, m).unwrap(), x);
    }

    #[test]
    fn approx_param_range() {
        assert!(ApproximationParam::new(0, 3).is_err());
        assert!(ApproximationParam::new(4, 3).is_err());
        let m = ApproximationParam::new(3, 3).unwrap();
        let x = vec_of(&[(1.0, 0.0), (0.0, 0.0)]);
        assert_eq!(
            dft_approx_direct(&x, m),
            Err(Error::ApproximationOutOfRange { m: 3, n: 1 })
        );
    }

    #[test]
    fn approx_small_cases() {
        let s = FRAC_1_SQRT_2;
        let x = vec_of(&[(1.0, 0.0), (0.0, 0.0)]);
        let m1 = ApproximationParam::new(1, 1).unwrap();
        assert_close(
            &dft_approx_direct(&x, m1).unwrap(),
            &vec_of(&[(s, 0.0), (s, 0.0)]),
            1e-15,
        );

        let delta = ComplexVector::basis(8, 0);
        let m = ApproximationParam::new(1, 3).unwrap();
        let u = 1.0 / 8f64.sqrt();
        assert_close(
            &dft_approx_direct(&delta, m).unwrap(),
            &vec_of(&[(u, 0.0); 8]),
            1e-15,
        );
        assert_close(
            &fft_approx_classical(&delta, m).unwrap(),
            &vec_of(&[(u, 0.0); 8]),
            1e-15,
        );
    }

    #[test]
    fn error_bound_values() {
        let b = |n, m| phase_error_bound(n, ApproximationParam::new(m, n).unwrap()).unwrap();
        assert_eq!(b(1, 1), PI);
        assert_eq!(b(8, 4), PI);
        assert!((b(10, 10) - 20.0 * PI / 1024.0).abs() < 1e-15);
        assert!((b(10, 10) - 0.06136).abs() < 1e-5);
        assert!(phase_error_bound(3, ApproximationParam::new(4, 4).unwrap()).is_err());
    }

    #[test]
    fn min_m_examples() {
        for n in 1..=20 {
            let eps = TAU * n as f64 * 2f64.powi(-(n as i32));
            assert_eq!(min_m_for_error(eps, n).unwrap(), n, "n={n}");
        }
        assert_eq!(min_m_for_error(TAU, 4).unwrap(), 2);
        assert_eq!(min_m_unclamped(TAU, 4).unwrap(), 2);
        let m2 = ApproximationParam::new(2, 4).unwrap();
        assert!(phase_error_bound(4, m2).unwrap() <= TAU);
        assert_eq!(min_m_for_error(1e6, 5).unwrap(), 1);
        assert_eq!(min_m_for_error(1e-30, 5).unwrap(), 5);
        assert_eq!(min_m_for_error(f64::MAX, 5).unwrap(), 1);
        assert_eq!(min_m_for_error(f64::MIN_POSITIVE, 5).unwrap(), 5);
        assert!(min_m_for_error(0.0, 5).is_err());
        assert!(min_m_for_error(f64::NAN, 5).is_err());
    }

    #[test]
    fn bit_reverse_examples() {
        assert_eq!(bit_reverse(0, 4), 0);
        assert_eq!(bit_reverse(1, 3), 4);
        assert_eq!(bit_reverse(6, 4), 6);
        assert_eq!(bit_reverse(0b1101, 4), 0b1011);
        let idx = BitIndex::new(1, 3).unwrap();
        assert_eq!(idx.reversed().value(), 4);
        assert!(BitIndex::new(8, 3).is_err());
    }

    #[test]
    fn bit_index_helpers() {
        // j = 6 = 110₂ on 3 bits: j0=0, j1=1, j2=1 → 0.011₂ = 3/8
        let j = BitIndex::new(6, 3).unwrap();
        assert_eq!((j.bit(0), j.bit(1), j.bit(2)), (0, 1, 1));
        assert_eq!(j.binary_fraction(), 0.375);
        for v in 0..16 {
            let b = BitIndex::new(v, 4).unwrap();
            let via_sum: usize = (0..4).map(|s| b.bit(s) << s).sum();
            assert_eq!(via_sum, v);
        }
    }

    #[test]
    fn fft_small_cases() {
        let s = FRAC_1_SQRT_2;
        let x = vec_of(&[(1.0, 0.0), (0.0, 0.0)]);
        assert_close(
            &fft_classical(&x).unwrap(),
            &vec_of(&[(s, 0.0), (s, 0.0)]),
            1e-15,
        );
        let u = 1.0 / 8f64.sqrt();
        let delta = ComplexVector::basis(8, 0);
        assert_close(
            &fft_classical(&delta).unwrap(),
            &vec_of(&[(u, 0.0); 8]),
            1e-15,
        );
    }

    #[test]
    fn fft_stage_rejects_bad_step() {
        let x = ComplexVector::basis(4, 0);
        let m = ApproximationParam::new(2, 2).unwrap();
        assert!(matches!(
            fft_stage(&x, 2, m),
            Err(Error::StepOutOfRange { .. })
        ));
    }

    #[test]
    fn phase_exponent_full_range_matches_product() {
        // with m = n the restricted exponent agrees with a·c modulo N
        for n in 1..=5u32 {
            let len = 1usize << n;
            for a in 0..len {
                for cc in 0..len {
                    let e = approx_phase_exponent(a, cc, n, n as usize);
                    assert_eq!(e as usize % len, (a * cc) % len);
                }
            }
        }
    }
}
