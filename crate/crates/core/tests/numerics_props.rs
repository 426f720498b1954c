mod common;

use proptest::prelude::*;
use qftqr::stepmatrices::build_m;
use qftqr::{Complex, ComplexMatrix, Tolerance};

use common::{random_matrix, random_unitary, rng};

/// `(A ⊗ I)_{jk} = A_{⌊j/2⌋⌊k/2⌋}` when `k ≡ j (mod 2)`, else 0.
fn kron_identity_formula(a: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_fn(a.dim() * 2, |j, k| {
        if j % 2 == k % 2 {
            a[(j / 2, k / 2)]
        } else {
            Complex::new(0.0, 0.0)
        }
    })
}

#[test]
fn hadamard_kron_identity_matches_formula() {
    let h = ComplexMatrix::hadamard();
    let got = h.kron(&ComplexMatrix::identity(2)).unwrap();
    assert_eq!(got, kron_identity_formula(&h));
}

#[test]
fn identity_kron_hadamard_is_first_m() {
    let got = ComplexMatrix::identity(2)
        .kron(&ComplexMatrix::hadamard())
        .unwrap();
    assert_eq!(got, build_m(2, 0).unwrap());
}

#[test]
fn adjoint_inverts_unitary() {
    let u = random_unitary(&mut rng(3), 16);
    let prod = u.adjoint().matmul(&u).unwrap();
    assert!(
        prod.max_entry_distance(&ComplexMatrix::identity(16))
            .unwrap()
            < 1e-12
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kron_with_identity_is_exact(seed in any::<u64>(), log_dim in 0u32..4) {
        let a = random_matrix(&mut rng(seed), 1 << log_dim);
        let got = a.kron(&ComplexMatrix::identity(2)).unwrap();
        prop_assert_eq!(got, kron_identity_formula(&a));
    }

    #[test]
    fn unitary_closed_under_product(seed in any::<u64>(), dim in 1usize..24) {
        let mut r = rng(seed);
        let a = random_unitary(&mut r, dim);
        let b = random_unitary(&mut r, dim);
        let tol = Tolerance::DEFAULT;
        prop_assert!(a.is_unitary(tol) && b.is_unitary(tol));
        let ten_x = Tolerance::new(10.0 * tol.eps()).unwrap();
        prop_assert!(a.matmul(&b).unwrap().is_unitary(ten_x));
    }

    #[test]
    fn matmul_associates(seed in any::<u64>(), dim in 1usize..=64) {
        let mut r = rng(seed);
        let a = random_unitary(&mut r, dim);
        let b = random_unitary(&mut r, dim);
        let c = random_unitary(&mut r, dim);
        let left = a.matmul(&b).unwrap().matmul(&c).unwrap();
        let right = a.matmul(&b.matmul(&c).unwrap()).unwrap();
        prop_assert!(left.max_entry_distance(&right).unwrap() < 1e-12);
    }
}
