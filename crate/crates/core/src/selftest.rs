//! Randomized invariant suite, shared by `ctxstab selftest` and the tests.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore};

use crate::coins::{seeded, SeededCoins};
use crate::context::OnticState;
use crate::differential::{random_gate, random_hermitian_pauli};
use crate::gate::Gate;
use crate::oracle::{gate_matrix, matrices_close, pauli_matrix};
use crate::pauli::{compose, Letter, PauliOperator};

const MATRIX_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: &'static str,
    pub checks: u64,
    pub violations: u64,
    pub first_failure: Option<String>,
    /// Informational checks are reported but do not decide [`suite_passed`].
    pub informational: bool,
}

impl CheckReport {
    fn new(name: &'static str) -> Self {
        CheckReport {
            name,
            checks: 0,
            violations: 0,
            first_failure: None,
            informational: false,
        }
    }

    fn informational(mut self) -> Self {
        self.informational = true;
        self
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0 && self.checks > 0
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.passed(), self.informational) {
            (true, _) => "PASS",
            (false, false) => "FAIL",
            (false, true) => "INFO",
        };
        write!(
            f,
            "{status} {:<28} checks={:<7} violations={}",
            self.name, self.checks, self.violations
        )?;
        if let Some(first) = &self.first_failure {
            write!(f, " first: {first}")?;
        }
        Ok(())
    }
}

/// Widths exercised by the random walk; 70 crosses a word boundary.
const WALK_WIDTHS: [usize; 8] = [1, 2, 3, 4, 5, 8, 16, 70];

/// Random element of the measurement context: a random nonempty product of
/// `M_k`, with a random extra sign.
fn random_context_element<R: Rng>(rng: &mut R, state: &OnticState<SeededCoins>) -> PauliOperator {
    let n = state.n();
    let mut p = PauliOperator::identity(n);
    let first = rng.gen_range(0..n);
    for (k, mk) in state.measurement_context().iter().enumerate() {
        if k == first || rng.gen_bool(0.5) {
            p = &p * mk;
        }
    }
    if rng.gen() {
        p.negate()
    } else {
        p
    }
}

/// Outcome without disturbing `state`.
fn outcome_of(state: &OnticState<SeededCoins>, p: &PauliOperator, coin_seed: u64) -> bool {
    state
        .fork(seeded(coin_seed))
        .measure(p)
        .expect("valid observable")
}

fn random_state<R: Rng>(rng: &mut R, n: usize, gates: usize) -> OnticState<SeededCoins> {
    let mut s = OnticState::prepare_canonical(n, seeded(rng.next_u64())).expect("n > 0");
    for _ in 0..gates {
        s.apply_gate(&random_gate(rng, n)).expect("valid gate");
    }
    s
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Runs `steps` randomized gate/measurement steps and the exhaustive algebra
/// checks. Every report must show zero violations.
pub fn run_invariant_suite(seed: u64, steps: usize) -> Vec<CheckReport> {
    let mut rng = seeded(seed);
    let mut symplectic = CheckReport::new("symplectic basis");
    let mut repeat = CheckReport::new("repeatability");
    let mut homomorphism = CheckReport::new("context homomorphism");
    let mut disturbance = CheckReport::new("disturbance independence");
    // Contextuality forces some commuting sets to depend on measurement
    // order, so this one is expected to record violations.
    let mut order = CheckReport::new("commuting order invariance").informational();
    let mut conjugation = CheckReport::new("gate conjugation vs oracle");
    let mut negation = CheckReport::new("sign convention");

    let mut state = random_state(&mut rng, 2, 0);
    for step in 0..steps {
        if step % 250 == 0 {
            let n = *WALK_WIDTHS.choose(&mut rng).expect("nonempty");
            state = random_state(&mut rng, n, 2 * n);
        }
        let n = state.n();

        if rng.gen_bool(0.5) {
            let g = random_gate(&mut rng, n);
            state.apply_gate(&g).expect("valid gate");
        } else {
            let obs = if rng.gen_bool(0.3) {
                random_context_element(&mut rng, &state)
            } else {
                random_hermitian_pauli(&mut rng, n)
            };
            let coin_seed = rng.next_u64();
            let flipped = !outcome_of(&state, &obs.negate(), coin_seed);
            let v = state.measure(&obs).expect("valid observable");
            negation.record(flipped == v, || format!("-{obs} did not complement {obs}"));
            let again = state.measure(&obs).expect("valid observable");
            repeat.record(v == again, || format!("{obs}: {v} then {again}"));
        }
        symplectic.record(state.check_symplectic(), || format!("step {step}: {state}"));

        let p = random_context_element(&mut rng, &state);
        let q = random_context_element(&mut rng, &state);
        let pq = compose(&p, &q).expect("same width");
        let (cs1, cs2, cs3) = (rng.next_u64(), rng.next_u64(), rng.next_u64());
        let (vp, vq, vpq) = (
            outcome_of(&state, &p, cs1),
            outcome_of(&state, &q, cs2),
            outcome_of(&state, &pq, cs3),
        );
        homomorphism.record(vp ^ vq == vpq, || format!("{p} {q} in {state}"));

        if step % 10 == 0 {
            check_commuting_orders(&mut rng, &state, &mut disturbance, &mut order);
        }

        let small_n = rng.gen_range(1..=4);
        let g = random_gate(&mut rng, small_n);
        let p = random_hermitian_pauli(&mut rng, small_n);
        check_conjugation(&g, &p, &mut conjugation);
    }

    vec![
        symplectic,
        repeat,
        homomorphism,
        disturbance,
        order,
        conjugation,
        negation,
        exhaustive_compose(3),
        exhaustive_conjugation(3),
    ]
}

/// Measures a random commuting set in every order, twice per order with
/// different disturbance coins. Within an order the outcomes must never
/// depend on the coins; across orders they are compared as well.
pub fn check_commuting_orders<R: Rng>(
    rng: &mut R,
    state: &OnticState<SeededCoins>,
    disturbance: &mut CheckReport,
    order: &mut CheckReport,
) {
    let n = state.n();
    // elements of another state's measurement context commute pairwise
    let other = random_state(rng, n, 3 * n);
    let size = rng.gen_range(2..=4usize);
    let set: Vec<PauliOperator> = (0..size)
        .map(|_| random_context_element(rng, &other))
        .collect();
    let idx: Vec<usize> = (0..size).collect();
    let mut reference: Option<BTreeMap<usize, bool>> = None;
    for perm in permutations(&idx) {
        let runs: Vec<BTreeMap<usize, bool>> = (0..2)
            .map(|_| {
                let mut s = state.fork(seeded(rng.next_u64()));
                perm.iter()
                    .map(|&i| (i, s.measure(&set[i]).expect("valid observable")))
                    .collect()
            })
            .collect();
        disturbance.record(runs[0] == runs[1], || {
            format!("{set:?} order {perm:?} in {state}")
        });
        match &reference {
            None => reference = Some(runs[0].clone()),
            Some(r) => order.record(r == &runs[0], || {
                format!("{set:?} order {perm:?} in {state}")
            }),
        }
    }
}

fn check_conjugation(g: &Gate, p: &PauliOperator, report: &mut CheckReport) {
    let n = p.n();
    if g.validate(n).is_err() {
        return;
    }
    let u = gate_matrix(n, g).expect("validated");
    let expected = &u * pauli_matrix(p) * u.adjoint();
    let image = g.image(p).expect("validated");
    report.record(
        matrices_close(&pauli_matrix(&image), &expected, MATRIX_TOL),
        || format!("{g} on {p} gave {image}"),
    );
}

fn all_paulis(n: usize) -> Vec<PauliOperator> {
    let letters = [Letter::I, Letter::X, Letter::Y, Letter::Z];
    (0..4usize.pow(n as u32))
        .map(|mut code| {
            let mut p = PauliOperator::identity(n);
            for q in 0..n {
                p.set_letter(q, letters[code % 4]);
                code /= 4;
            }
            p
        })
        .collect()
}

/// `compose` against the matrix product for every pair at each width `≤ max_n`.
pub fn exhaustive_compose(max_n: usize) -> CheckReport {
    let mut report = CheckReport::new("compose vs matrix product");
    for n in 1..=max_n {
        let ops = all_paulis(n);
        let mats: Vec<_> = ops.iter().map(pauli_matrix).collect();
        for (a, ma) in ops.iter().zip(&mats) {
            for (b, mb) in ops.iter().zip(&mats) {
                let ab = compose(a, b).expect("same width");
                report.record(
                    matrices_close(&pauli_matrix(&ab), &(ma * mb), MATRIX_TOL),
                    || format!("{a} * {b} gave {ab}"),
                );
            }
        }
    }
    report
}

/// Every gate placement against every Pauli at each width `≤ max_n`.
pub fn exhaustive_conjugation(max_n: usize) -> CheckReport {
    let mut report = CheckReport::new("gate conjugation exhaustive");
    for n in 1..=max_n {
        let mut gates = Vec::new();
        for q in 0..n {
            gates.extend([Gate::H(q), Gate::S(q), Gate::X(q), Gate::Y(q), Gate::Z(q)]);
            for t in 0..n {
                if t != q {
                    gates.push(Gate::Cnot {
                        control: q,
                        target: t,
                    });
                    gates.push(Gate::Cz(q, t));
                }
            }
        }
        for p in all_paulis(n) {
            for g in &gates {
                check_conjugation(g, &p, &mut report);
            }
        }
    }
    report
}

/// True when every non-informational check passed.
pub fn suite_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.informational || r.passed())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_suite_is_clean() {
        let reports = run_invariant_suite(1, 300);
        for r in &reports {
            assert!(r.informational || r.passed(), "{r}");
        }
        assert!(suite_passed(&reports));
    }

    #[test]
    fn permutations_count() {
        assert_eq!(permutations(&[0, 1, 2, 3]).len(), 24);
    }
}
