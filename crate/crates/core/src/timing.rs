//! Wall-clock cost of measurements and gates, for scaling inspection.

use std::time::{Duration, Instant};

use rand::RngCore;

use crate::coins::seeded;
use crate::context::OnticState;
use crate::differential::{random_gate, random_hermitian_pauli};
use crate::error::Result;

/// Per-operation times at one width; each is the best of several batches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Timing {
    pub n: usize,
    pub per_measurement: Duration,
    pub per_gate: Duration,
}

const BATCHES: usize = 5;

/// Times `reps` measurements of random dense Pauli observables and `reps`
/// random gates on an `n`-qubit state. The state is first scrambled by `n`
/// dense measurements so both contexts are dense.
pub fn time_operations(n: usize, reps: usize, seed: u64) -> Result<Timing> {
    let mut rng = seeded(seed);
    let mut state = OnticState::prepare_canonical(n, seeded(rng.next_u64()))?;
    for _ in 0..n {
        state.measure(&random_hermitian_pauli(&mut rng, n))?;
    }

    let reps = reps.max(1);
    let mut per_measurement = Duration::MAX;
    let mut per_gate = Duration::MAX;
    for _ in 0..BATCHES {
        let observables: Vec<_> = (0..reps)
            .map(|_| random_hermitian_pauli(&mut rng, n))
            .collect();
        let start = Instant::now();
        for o in &observables {
            state.measure(o)?;
        }
        per_measurement = per_measurement.min(start.elapsed() / reps as u32);

        let gates: Vec<_> = (0..reps).map(|_| random_gate(&mut rng, n)).collect();
        let start = Instant::now();
        for g in &gates {
            state.apply_gate(g)?;
        }
        per_gate = per_gate.min(start.elapsed() / reps as u32);
    }
    Ok(Timing {
        n,
        per_measurement,
        per_gate,
    })
}

/// Repetitions that keep one batch near a few milliseconds.
pub fn default_reps(n: usize) -> usize {
    (2_000_000 / (n * n).max(1)).clamp(5, 2000)
}
