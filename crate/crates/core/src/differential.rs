//! Differential testing of the model against the state-vector oracle.
//!
//! For each seed the model runs a circuit while the oracle follows the same
//! path: before each measurement the oracle's expectation of the observable
//! is recorded, then the oracle is projected onto the outcome the model
//! produced. Where the expectation is `±1` the model must agree exactly;
//! where it is 0 the model's outcomes must look like fair coins.

use rand::Rng;

use crate::circuit::{Circuit, Instruction};
use crate::coins::{shot_stream, CoinSource};
use crate::context::OnticState;
use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::oracle::QuantumState;
use crate::pauli::{Letter, PauliOperator};

const EXPECTATION_TOL: f64 = 1e-9;

pub fn random_gate<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Gate {
    let two_qubit = n >= 2 && rng.gen_bool(0.35);
    if two_qubit {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        if rng.gen_bool(0.5) {
            Gate::Cnot {
                control: a,
                target: b,
            }
        } else {
            Gate::Cz(a, b)
        }
    } else {
        let q = rng.gen_range(0..n);
        match rng.gen_range(0..5) {
            0 => Gate::H(q),
            1 => Gate::S(q),
            2 => Gate::X(q),
            3 => Gate::Y(q),
            _ => Gate::Z(q),
        }
    }
}

/// Uniformly random letters with a random sign.
pub fn random_hermitian_pauli<R: Rng + ?Sized>(rng: &mut R, n: usize) -> PauliOperator {
    let mut p = PauliOperator::identity(n);
    for q in 0..n {
        let l = match rng.gen_range(0..4) {
            0 => Letter::I,
            1 => Letter::X,
            2 => Letter::Y,
            _ => Letter::Z,
        };
        p.set_letter(q, l);
    }
    p.with_sign(rng.gen())
}

/// Random circuit on `n` qubits with up to `max_gates` gates and between 1
/// and `max_measurements` measurements, interleaved at random.
pub fn random_circuit<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    max_gates: usize,
    max_measurements: usize,
) -> Circuit {
    let gates = rng.gen_range(0..=max_gates);
    let measurements = rng.gen_range(1..=max_measurements.max(1));
    let mut kinds: Vec<bool> = std::iter::repeat_n(true, gates)
        .chain(std::iter::repeat_n(false, measurements))
        .collect();
    // Fisher–Yates via rand's slice helpers
    use rand::seq::SliceRandom;
    kinds.shuffle(rng);
    let mut c = Circuit::new(n).expect("n > 0");
    for is_gate in kinds {
        let instr = if is_gate {
            Instruction::Gate(random_gate(rng, n))
        } else {
            Instruction::Measure {
                label: None,
                observable: random_hermitian_pauli(rng, n),
            }
        };
        c.push(instr).expect("generated instruction is valid");
    }
    c
}

/// Oracle view of one measurement in a paired run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairedMeasurement {
    pub outcome: bool,
    pub expectation: f64,
}

impl PairedMeasurement {
    pub fn is_deterministic(&self) -> bool {
        (self.expectation.abs() - 1.0).abs() < EXPECTATION_TOL
    }

    pub fn is_random(&self) -> bool {
        self.expectation.abs() < EXPECTATION_TOL
    }

    /// The outcome QM predicts with certainty, if any.
    pub fn predicted(&self) -> Option<bool> {
        self.is_deterministic().then_some(self.expectation < 0.0)
    }
}

/// Runs `circuit` on the model from `|0…0⟩` with `coins`, shadowed by the oracle.
pub fn paired_run<C: CoinSource>(circuit: &Circuit, coins: C) -> Result<Vec<PairedMeasurement>> {
    let mut model = OnticState::prepare_canonical(circuit.n(), coins)?;
    let mut oracle = QuantumState::zero(circuit.n())?;
    let mut out = Vec::with_capacity(circuit.measurement_count());
    for instr in circuit.instructions() {
        match instr {
            Instruction::Gate(g) => {
                model.apply_gate(g)?;
                oracle.apply(g)?;
            }
            Instruction::Measure { observable, .. } => {
                let outcome = model.measure(observable)?;
                let expectation = oracle.pauli_expectation(observable)?;
                oracle.project(observable, outcome)?;
                out.push(PairedMeasurement {
                    outcome,
                    expectation,
                });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MeasurementTally {
    pub deterministic: u64,
    pub mismatches: u64,
    pub random: u64,
    pub ones: u64,
    /// Expectations outside `{-1, 0, 1}`; impossible for stabilizer states.
    pub other: u64,
}

impl MeasurementTally {
    pub fn frequency(&self) -> Option<f64> {
        (self.random > 0).then(|| self.ones as f64 / self.random as f64)
    }

    /// Distance of the random-case frequency from 1/2 in standard errors.
    pub fn z_score(&self) -> Option<f64> {
        self.frequency()
            .map(|f| (f - 0.5).abs() / (0.5 / (self.random as f64).sqrt()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DifferentialReport {
    pub seeds: u64,
    pub per_measurement: Vec<MeasurementTally>,
}

impl DifferentialReport {
    pub fn mismatches(&self) -> u64 {
        self.per_measurement
            .iter()
            .map(|t| t.mismatches + t.other)
            .sum()
    }

    pub fn max_z_score(&self) -> f64 {
        self.per_measurement
            .iter()
            .filter_map(MeasurementTally::z_score)
            .fold(0.0, f64::max)
    }

    pub fn passes(&self, z_limit: f64) -> bool {
        self.mismatches() == 0 && self.max_z_score() <= z_limit
    }
}

/// Paired runs of `circuit` for shots `0..seeds` of the stream family `seed`.
pub fn differential(circuit: &Circuit, seed: u64, seeds: u64) -> Result<DifferentialReport> {
    let mut tallies = vec![MeasurementTally::default(); circuit.measurement_count()];
    for shot in 0..seeds {
        let run = paired_run(circuit, shot_stream(seed, shot))?;
        for (t, m) in tallies.iter_mut().zip(&run) {
            if let Some(predicted) = m.predicted() {
                t.deterministic += 1;
                if predicted != m.outcome {
                    t.mismatches += 1;
                }
            } else if m.is_random() {
                t.random += 1;
                t.ones += u64::from(m.outcome);
            } else {
                t.other += 1;
            }
        }
    }
    Ok(DifferentialReport {
        seeds,
        per_measurement: tallies,
    })
}

/// Errors out for circuits the oracle cannot hold.
pub fn check_oracle_width(n: usize) -> Result<()> {
    if n > crate::oracle::DEFAULT_CAP {
        return Err(Error::OracleCap {
            n,
            cap: crate::oracle::DEFAULT_CAP,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coins::seeded;
    use crate::scenarios;

    #[test]
    fn random_circuits_respect_limits() {
        let mut rng = seeded(3);
        for _ in 0..100 {
            let n = rng.gen_range(2..=6);
            let c = random_circuit(&mut rng, n, 40, 8);
            let gates = c.instructions().len() - c.measurement_count();
            assert!(gates <= 40);
            assert!((1..=8).contains(&c.measurement_count()));
        }
    }

    #[test]
    fn shallow_circuit_measurements_are_fair_and_consistent() {
        let report = differential(&scenarios::shallow_circuit(), 1, 400).unwrap();
        assert_eq!(report.mismatches(), 0);
        // z1 and z2 are fair coins, z3 is then fixed by the parity constraint
        assert_eq!(report.per_measurement[0].random, 400);
        assert_eq!(report.per_measurement[1].random, 400);
        assert_eq!(report.per_measurement[2].deterministic, 400);
        assert!(report.max_z_score() < 5.0);
    }
}
