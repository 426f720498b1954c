mod common;

use proptest::prelude::*;
use qftqr::simulator::apply_circuit_unnormalized;
use qftqr::{
    circuit_to_unitary, dft_direct, fft_classical, prepare_state, run_circuit, synth_aqft,
    synth_qft, ApproximationParam, Circuit, Complex, ComplexVector, Gate, StateVector,
};

use common::{naive_dft, random_unit_vector, random_vector, rng};

#[test]
fn qft_on_random_states_matches_dft() {
    let mut r = rng(31);
    for n in 1..=16usize {
        let x = random_unit_vector(&mut r, 1 << n);
        let out = run_circuit(prepare_state(&x, false).unwrap(), &synth_qft(n).unwrap())
            .unwrap()
            .into_vector();
        let oracle = if n <= 10 {
            dft_direct(&x).unwrap()
        } else {
            fft_classical(&x).unwrap()
        };
        let d = out.max_distance(&oracle).unwrap();
        assert!(d < 1e-9, "n={n}: {d}");
        if n <= 6 {
            assert!(out.max_distance(&naive_dft(&x)).unwrap() < 1e-9);
        }
    }
}

#[test]
fn qft_of_zero_state_is_uniform() {
    for n in 1..=12 {
        let st = StateVector::zero_state(n).unwrap();
        let out = run_circuit(st, &synth_qft(n).unwrap()).unwrap();
        let u = 1.0 / ((1usize << n) as f64).sqrt();
        for z in out.amplitudes() {
            assert!((z - Complex::new(u, 0.0)).norm() < 1e-12);
        }
    }
}

#[test]
fn norm_preserved_gate_by_gate() {
    let mut r = rng(32);
    let n = 10;
    let x = random_unit_vector(&mut r, 1 << n);
    let mut st = prepare_state(&x, false).unwrap();
    for g in synth_qft(n).unwrap().gates() {
        st.apply(g).unwrap();
        assert!((st.norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn simulator_agrees_with_dense_on_synthesized_families() {
    let mut r = rng(33);
    for n in 1..=8usize {
        for m in 1..=n {
            let c = synth_aqft(n, ApproximationParam::new(m, n).unwrap()).unwrap();
            let u = circuit_to_unitary(&c).unwrap();
            let x = random_unit_vector(&mut r, 1 << n);
            let sim = run_circuit(prepare_state(&x, false).unwrap(), &c)
                .unwrap()
                .into_vector();
            let dense = u.matvec(&x).unwrap();
            assert!(sim.max_distance(&dense).unwrap() < 1e-10, "n={n} m={m}");
        }
    }
}

#[test]
fn linearity() {
    let mut r = rng(34);
    let n = 6;
    let c = synth_qft(n).unwrap();
    let x = random_vector(&mut r, 1 << n);
    let y = random_vector(&mut r, 1 << n);
    let (alpha, beta) = (Complex::new(0.3, -1.2), Complex::new(-0.7, 0.4));

    let run = |v: &[Complex]| {
        let mut buf = v.to_vec();
        apply_circuit_unnormalized(&mut buf, &c).unwrap();
        buf
    };
    let combo: Vec<Complex> = x
        .iter()
        .zip(y.iter())
        .map(|(a, b)| alpha * a + beta * b)
        .collect();
    let lhs = run(&combo);
    let fx = run(x.as_slice());
    let fy = run(y.as_slice());
    for i in 0..lhs.len() {
        let rhs = alpha * fx[i] + beta * fy[i];
        assert!((lhs[i] - rhs).norm() < 1e-9);
    }
}

#[test]
fn unnormalized_kernel_checks_width() {
    let mut buf = vec![Complex::new(1.0, 0.0); 4];
    assert!(apply_circuit_unnormalized(&mut buf, &synth_qft(3).unwrap()).is_err());
}

fn arb_circuit(n: usize) -> impl Strategy<Value = Circuit> {
    let gate = prop_oneof![
        (0..n).prop_map(|target| Gate::Hadamard { target }),
        (0..n, 1..n, 1u32..10).prop_map(move |(c, off, u)| Gate::ControlledPhase {
            control: c,
            target: (c + off) % n,
            u,
        }),
        (0..n, 1..n).prop_map(move |(a, off)| Gate::Swap {
            a,
            b: (a + off) % n
        }),
    ];
    prop::collection::vec(gate, 0..30).prop_map(move |gates| {
        let mut c = Circuit::new(n).unwrap();
        for g in gates {
            c.push(g).unwrap();
        }
        c
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simulator_agrees_with_dense_on_random_circuits(
        (c, seed) in (2usize..=6).prop_flat_map(|n| (arb_circuit(n), any::<u64>()))
    ) {
        let n = c.num_qubits();
        let x: ComplexVector = random_unit_vector(&mut rng(seed), 1 << n);
        let sim = run_circuit(prepare_state(&x, false).unwrap(), &c).unwrap().into_vector();
        let dense = circuit_to_unitary(&c).unwrap().matvec(&x).unwrap();
        prop_assert!(sim.max_distance(&dense).unwrap() < 1e-10);
    }
}
