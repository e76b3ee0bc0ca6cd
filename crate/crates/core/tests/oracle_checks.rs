//! Model behaviour checked against the state-vector oracle.

use rand::Rng;

use ctxstab::coins::seeded;
use ctxstab::differential::{paired_run, random_circuit, random_gate, random_hermitian_pauli};
use ctxstab::oracle::{gate_matrix, matrices_close};
use ctxstab::scenarios::{self, pauli};
use ctxstab::{Gate, Instruction, OnticState, QuantumState};

#[test]
fn prepare_by_measurement_matches_oracle_state() {
    let generators = scenarios::GHZ_GENERATORS.map(pauli);
    let target = QuantumState::from_stabilizers(3, &generators).unwrap();
    for seed in 0..50 {
        let mut s = OnticState::prepare_canonical(3, seeded(seed)).unwrap();
        s.prepare_by_measurement(&generators).unwrap();
        for g in &generators {
            assert!(!s.clone().measure(g).unwrap());
        }
        // a state stabilized by the measurement context is the target state
        let prepared = QuantumState::from_stabilizers(3, s.measurement_context()).unwrap();
        assert!((prepared.fidelity(&target) - 1.0).abs() < 1e-9);
    }
}

#[test]
fn gate_prefix_tracks_the_oracle() {
    let mut rng = seeded(8);
    for _ in 0..200 {
        let n = rng.gen_range(1..=5);
        let mut model = OnticState::prepare_canonical(n, seeded(rng.gen())).unwrap();
        let mut oracle = QuantumState::zero(n).unwrap();
        for _ in 0..30 {
            let g = random_gate(&mut rng, n);
            model.apply_gate(&g).unwrap();
            oracle.apply(&g).unwrap();
        }
        let from_model = QuantumState::from_stabilizers(n, model.measurement_context()).unwrap();
        assert!((from_model.fidelity(&oracle) - 1.0).abs() < 1e-9);
        for m in model.measurement_context() {
            assert!((oracle.pauli_expectation(m).unwrap() - 1.0).abs() < 1e-9);
        }
    }
}

#[test]
fn cz_is_hadamard_conjugated_cnot() {
    for n in 2..=4 {
        for a in 0..n {
            for b in (0..n).filter(|&b| b != a) {
                let h = gate_matrix(n, &Gate::H(b)).unwrap();
                let cnot = gate_matrix(
                    n,
                    &Gate::Cnot {
                        control: a,
                        target: b,
                    },
                )
                .unwrap();
                let cz = gate_matrix(n, &Gate::Cz(a, b)).unwrap();
                assert!(matrices_close(&(&h * cnot * &h), &cz, 1e-12));
            }
        }
    }
    let mut rng = seeded(4);
    for _ in 0..100 {
        let mut s = OnticState::prepare_canonical(3, seeded(rng.gen())).unwrap();
        for _ in 0..10 {
            s.apply_gate(&random_gate(&mut rng, 3)).unwrap();
        }
        let mut t = s.clone();
        s.apply_gate(&Gate::Cz(0, 2)).unwrap();
        for g in [
            Gate::H(2),
            Gate::Cnot {
                control: 0,
                target: 2,
            },
            Gate::H(2),
        ] {
            t.apply_gate(&g).unwrap();
        }
        assert_eq!(s.snapshot(), t.snapshot());
    }
}

#[test]
fn shallow_gate_prefix_is_stabilized_by_zxx() {
    let mut q = QuantumState::zero(3).unwrap();
    for i in scenarios::shallow_circuit().instructions() {
        if let Instruction::Gate(g) = i {
            q.apply(g).unwrap();
        }
    }
    for (s, e) in [("ZXX", 1.0), ("-XYI", 1.0), ("-XIY", 1.0), ("ZII", 0.0)] {
        assert!(
            (q.pauli_expectation(&pauli(s)).unwrap() - e).abs() < 1e-12,
            "{s}"
        );
    }
}

#[test]
fn ghz_state_correlations() {
    let mut q = QuantumState::zero(3).unwrap();
    for i in scenarios::ghz_prep_circuit().instructions() {
        if let Instruction::Gate(g) = i {
            q.apply(g).unwrap();
        }
    }
    assert!((q.pauli_expectation(&pauli("XYY")).unwrap() + 1.0).abs() < 1e-12);
    assert!((q.pauli_expectation(&pauli("XXX")).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn paired_runs_never_contradict_certain_outcomes() {
    let mut rng = seeded(21);
    for _ in 0..100 {
        let n = rng.gen_range(1..=5);
        let c = random_circuit(&mut rng, n, 25, 6);
        for shot in 0..20 {
            for m in paired_run(&c, seeded(shot)).unwrap() {
                if let Some(p) = m.predicted() {
                    assert_eq!(p, m.outcome, "{c}");
                } else {
                    assert!(m.is_random());
                }
            }
        }
    }
}

#[test]
fn measurement_in_context_is_certain_for_the_oracle() {
    let mut rng = seeded(5);
    for _ in 0..100 {
        let n = rng.gen_range(1..=4);
        let mut model = OnticState::prepare_canonical(n, seeded(rng.gen())).unwrap();
        let mut oracle = QuantumState::zero(n).unwrap();
        for _ in 0..8 {
            let g = random_gate(&mut rng, n);
            model.apply_gate(&g).unwrap();
            oracle.apply(&g).unwrap();
            let obs = random_hermitian_pauli(&mut rng, n);
            let expectation = oracle.pauli_expectation(&obs).unwrap();
            let v = model.measure(&obs).unwrap();
            if model.expand(&obs).unwrap().in_measurement_context() && expectation.abs() > 0.5 {
                assert_eq!(v, expectation < 0.0);
            }
            oracle.project(&obs, v).unwrap();
        }
    }
}
