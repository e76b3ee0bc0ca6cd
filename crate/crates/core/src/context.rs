//! The ontic state: a signed symplectic basis `{M_k; C_k}` of the Pauli group.
//!
//! The measurement context `M_1..M_n` generates the stabilizer group of the
//! represented quantum state; the conjugate context `C_1..C_n` completes the
//! symplectic basis and carries independently randomized signs. Every Pauli
//! measurement outcome is a deterministic function of these signs.

use std::fmt;

use crate::coins::CoinSource;
use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::pauli::{words_for, Letter, PauliOperator};

/// Which basis index is replaced when several candidates qualify in step B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotRule {
    /// Smallest qualifying index.
    LowestIndex,
    /// Qualifying index whose basis element shares the most qubits with the
    /// observable's support; ties go to the smallest index.
    #[default]
    MaxSupportOverlap,
}

/// Coefficients of an observable in the current basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    /// `m_k = M·C_k mod 2`, the coefficient of `M_k`.
    pub m: Vec<bool>,
    /// `c_k = M·M_k mod 2`, the coefficient of `C_k`.
    pub c: Vec<bool>,
    /// Outcome bit.
    pub v: bool,
    /// Residual `i` phase; never used as an outcome.
    pub w: bool,
}

impl Expansion {
    pub fn in_measurement_context(&self) -> bool {
        self.c.iter().all(|&b| !b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureCase {
    /// The observable anticommuted with some `M_k`: the context changes.
    NewContext,
    /// The observable was already in the measurement context.
    InContext,
    /// Identity support: a scalar, nothing to update.
    Scalar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasureOutcome {
    pub outcome: bool,
    pub case: MeasureCase,
    /// Basis index now holding `(-1)^v M`; `None` for scalars.
    pub index: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasureStep {
    /// Outcome retrieved; basis unchanged.
    Retrieve,
    /// Basis updated to hold `(-1)^v M`.
    Store,
    /// Conjugate partner sign randomized.
    Disturb,
}

impl MeasureStep {
    pub fn label(&self) -> &'static str {
        match self {
            MeasureStep::Retrieve => "A",
            MeasureStep::Store => "B",
            MeasureStep::Disturb => "C",
        }
    }
}

/// Passed to trace hooks after each measurement sub-step.
pub struct TraceEvent<'a> {
    pub step: MeasureStep,
    pub outcome: bool,
    pub case: MeasureCase,
    pub measurement: &'a [PauliOperator],
    pub conjugate: &'a [PauliOperator],
}

impl TraceEvent<'_> {
    pub fn snapshot(&self) -> String {
        brace_notation(self.measurement, self.conjugate)
    }
}

/// `{M_1,..,M_n;C_1,..,C_n}`; conjugate elements always carry an explicit sign.
pub fn brace_notation(measurement: &[PauliOperator], conjugate: &[PauliOperator]) -> String {
    let ms: Vec<String> = measurement.iter().map(|p| p.to_string()).collect();
    let cs: Vec<String> = conjugate
        .iter()
        .map(|p| {
            let s = p.to_string();
            if s.starts_with('-') || s.starts_with('i') {
                s
            } else {
                format!("+{s}")
            }
        })
        .collect();
    format!("{{{};{}}}", ms.join(","), cs.join(","))
}

/// Storage accounting for one ontic state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MemoryReport {
    pub n: usize,
    /// `2n` elements of `2n + 1` bits each: `4n² + 2n`.
    pub context_bits: u64,
    /// Bits actually held by the packed representation.
    pub stored_bits: u64,
    pub overhead_bits: u64,
}

impl MemoryReport {
    pub fn for_qubits(n: usize) -> Self {
        let n64 = n as u64;
        let context_bits = 4 * n64 * n64 + 2 * n64;
        // each element: two packed words-vectors plus one phase byte
        let per_element = 2 * 64 * words_for(n) as u64 + 8;
        let stored_bits = 2 * n64 * per_element;
        MemoryReport {
            n,
            context_bits,
            stored_bits,
            overhead_bits: stored_bits - context_bits,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OnticState<C> {
    n: usize,
    m: Vec<PauliOperator>,
    c: Vec<PauliOperator>,
    coins: C,
    pivot: PivotRule,
}

impl<C: CoinSource> OnticState<C> {
    /// `|0…0⟩`: `M_k = Z_k`, `C_k = (-1)^(r_k) X_k` with `r_k` tossed in order.
    pub fn prepare_canonical(n: usize, mut coins: C) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroQubits);
        }
        let m = (0..n)
            .map(|k| PauliOperator::single(n, k, Letter::Z))
            .collect::<Result<Vec<_>>>()?;
        let c = (0..n)
            .map(|k| {
                let sign = coins.toss();
                PauliOperator::single(n, k, Letter::X).map(|p| p.with_sign(sign))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OnticState {
            n,
            m,
            c,
            coins,
            pivot: PivotRule::default(),
        })
    }

    /// Builds a state from an explicit basis, checking the symplectic conditions.
    pub fn from_basis(
        measurement: Vec<PauliOperator>,
        conjugate: Vec<PauliOperator>,
        coins: C,
    ) -> Result<Self> {
        let n = measurement.len();
        if n == 0 {
            return Err(Error::ZeroQubits);
        }
        if conjugate.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: conjugate.len(),
            });
        }
        if let Some(p) = measurement.iter().chain(&conjugate).find(|p| p.n() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.n(),
            });
        }
        let state = OnticState {
            n,
            m: measurement,
            c: conjugate,
            coins,
            pivot: PivotRule::default(),
        };
        if !state.check_symplectic() {
            return Err(Error::InvalidPreparation(
                "basis is not a Hermitian symplectic basis".into(),
            ));
        }
        Ok(state)
    }

    pub fn with_pivot_rule(mut self, pivot: PivotRule) -> Self {
        self.pivot = pivot;
        self
    }

    pub fn expand(&self, observable: &PauliOperator) -> Result<Expansion> {
        self.check_observable(observable)?;
        Ok(self.expand_unchecked(observable))
    }

    fn expand_unchecked(&self, observable: &PauliOperator) -> Expansion {
        let m: Vec<bool> = self
            .c
            .iter()
            .map(|ck| observable.anticommutes_unchecked(ck))
            .collect();
        let c: Vec<bool> = self
            .m
            .iter()
            .map(|mk| observable.anticommutes_unchecked(mk))
            .collect();
        // conjugate terms first, then measurement terms, each ascending
        let mut acc = PauliOperator::identity(self.n);
        for (ck, _) in self.c.iter().zip(&c).filter(|(_, &b)| b) {
            acc.compose_assign_unchecked(ck);
        }
        for (mk, _) in self.m.iter().zip(&m).filter(|(_, &b)| b) {
            acc.compose_assign_unchecked(mk);
        }
        debug_assert_eq!(acc.x_words(), observable.x_words());
        debug_assert_eq!(acc.z_words(), observable.z_words());
        let diff = (4 + observable.phase() - acc.phase()) % 4;
        Expansion {
            m,
            c,
            v: diff >= 2,
            w: diff % 2 == 1,
        }
    }

    /// Outcome of measuring `observable`, updating the basis and disturbing
    /// one conjugate sign.
    pub fn measure(&mut self, observable: &PauliOperator) -> Result<bool> {
        Ok(self.measure_detailed(observable, &mut |_| {})?.outcome)
    }

    pub fn measure_detailed(
        &mut self,
        observable: &PauliOperator,
        hook: &mut dyn FnMut(&TraceEvent<'_>),
    ) -> Result<MeasureOutcome> {
        self.check_observable(observable)?;
        if observable.is_identity_support() {
            let outcome = observable.sign_bit();
            hook(&self.event(MeasureStep::Retrieve, outcome, MeasureCase::Scalar));
            return Ok(MeasureOutcome {
                outcome,
                case: MeasureCase::Scalar,
                index: None,
            });
        }

        let exp = self.expand_unchecked(observable);
        let v = exp.v;
        let case = if exp.in_measurement_context() {
            MeasureCase::InContext
        } else {
            MeasureCase::NewContext
        };
        hook(&self.event(MeasureStep::Retrieve, v, case));

        let k = match case {
            MeasureCase::NewContext => {
                let k = self.pick(observable, &exp.c);
                for j in 0..self.n {
                    if j != k && exp.c[j] {
                        let mk = self.m[k].clone();
                        self.m[j].compose_assign_unchecked(&mk);
                    }
                }
                self.c[k] = self.m[k].clone();
                k
            }
            _ => self.pick(observable, &exp.m),
        };
        self.m[k] = if v {
            observable.negate()
        } else {
            observable.clone()
        };
        let ck = self.c[k].clone();
        for j in 0..self.n {
            if j != k && exp.m[j] {
                self.c[j].compose_assign_unchecked(&ck);
            }
        }
        hook(&self.event(MeasureStep::Store, v, case));

        let coin = self.coins.toss();
        self.c[k].set_sign(coin);
        hook(&self.event(MeasureStep::Disturb, v, case));

        Ok(MeasureOutcome {
            outcome: v,
            case,
            index: Some(k),
        })
    }

    fn pick(&self, observable: &PauliOperator, candidates: &[bool]) -> usize {
        let mut indices = candidates
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(k, _)| k);
        match self.pivot {
            PivotRule::LowestIndex => indices.next(),
            PivotRule::MaxSupportOverlap => indices
                .map(|k| (self.m[k].support_overlap(observable), k))
                .fold(None, |best: Option<(u32, usize)>, cand| match best {
                    Some(b) if b.0 >= cand.0 => Some(b),
                    _ => Some(cand),
                })
                .map(|(_, k)| k),
        }
        .expect("a non-scalar observable has a nonzero coefficient")
    }

    fn event(&self, step: MeasureStep, outcome: bool, case: MeasureCase) -> TraceEvent<'_> {
        TraceEvent {
            step,
            outcome,
            case,
            measurement: &self.m,
            conjugate: &self.c,
        }
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n)?;
        for p in self.m.iter_mut().chain(self.c.iter_mut()) {
            gate.conjugate(p);
        }
        Ok(())
    }

    pub fn apply_h(&mut self, q: usize) -> Result<()> {
        self.apply_gate(&Gate::H(q))
    }

    pub fn apply_s(&mut self, q: usize) -> Result<()> {
        self.apply_gate(&Gate::S(q))
    }

    pub fn apply_cnot(&mut self, control: usize, target: usize) -> Result<()> {
        self.apply_gate(&Gate::Cnot { control, target })
    }

    pub fn apply_cz(&mut self, a: usize, b: usize) -> Result<()> {
        self.apply_gate(&Gate::Cz(a, b))
    }

    pub fn apply_x(&mut self, q: usize) -> Result<()> {
        self.apply_gate(&Gate::X(q))
    }

    pub fn apply_y(&mut self, q: usize) -> Result<()> {
        self.apply_gate(&Gate::Y(q))
    }

    pub fn apply_z(&mut self, q: usize) -> Result<()> {
        self.apply_gate(&Gate::Z(q))
    }

    /// Conjugation by an arbitrary Pauli: flips every anticommuting element.
    pub fn apply_pauli(&mut self, p: &PauliOperator) -> Result<()> {
        self.check_dim(p)?;
        for e in self.m.iter_mut().chain(self.c.iter_mut()) {
            if e.anticommutes_unchecked(p) {
                e.flip_sign();
            }
        }
        Ok(())
    }

    /// Prepares the state stabilized by `generators` by measuring each one,
    /// then fixing wrong signs with a single Pauli correction drawn from the
    /// conjugate context.
    pub fn prepare_by_measurement(&mut self, generators: &[PauliOperator]) -> Result<()> {
        for g in generators {
            self.check_observable(g)?;
        }
        for (i, a) in generators.iter().enumerate() {
            for b in &generators[i + 1..] {
                if a.anticommutes_unchecked(b) {
                    return Err(Error::InvalidPreparation(format!(
                        "generators {a} and {b} anticommute"
                    )));
                }
            }
        }
        if gf2_rank(generators) < generators.len() {
            return Err(Error::InvalidPreparation(
                "generators are not independent".into(),
            ));
        }

        for g in generators {
            self.measure(g)?;
        }

        // Solve Σ_k m_k(g_i) q_k = v(g_i) so that Π C_k^(q_k) anticommutes
        // exactly with the generators that came out with the wrong sign.
        let rows: Vec<(Vec<bool>, bool)> = generators
            .iter()
            .map(|g| {
                let e = self.expand_unchecked(g);
                debug_assert!(e.in_measurement_context());
                (e.m, e.v)
            })
            .collect();
        let q = gf2_solve(self.n, &rows)
            .ok_or_else(|| Error::InvalidPreparation("no sign correction exists".into()))?;
        for (k, flip) in q.into_iter().enumerate() {
            if flip {
                self.m[k].flip_sign();
            }
        }
        debug_assert!(generators.iter().all(|g| !self.expand_unchecked(g).v));
        Ok(())
    }

    /// All three symplectic-basis conditions plus Hermiticity of every element.
    pub fn check_symplectic(&self) -> bool {
        let all = || self.m.iter().chain(&self.c);
        if all().any(|p| !p.is_hermitian() || p.n() != self.n) {
            return false;
        }
        for j in 0..self.n {
            for k in 0..self.n {
                if self.m[j].anticommutes_unchecked(&self.m[k])
                    || self.c[j].anticommutes_unchecked(&self.c[k])
                    || self.m[j].anticommutes_unchecked(&self.c[k]) != (j == k)
                {
                    return false;
                }
            }
        }
        true
    }

    pub fn stats(&self) -> MemoryReport {
        MemoryReport::for_qubits(self.n)
    }
}

impl<C> OnticState<C> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn measurement_context(&self) -> &[PauliOperator] {
        &self.m
    }

    pub fn conjugate_context(&self) -> &[PauliOperator] {
        &self.c
    }

    pub fn pivot_rule(&self) -> PivotRule {
        self.pivot
    }

    pub fn coins(&self) -> &C {
        &self.coins
    }

    pub fn coins_mut(&mut self) -> &mut C {
        &mut self.coins
    }

    /// Same basis, different coin source.
    pub fn with_coins<D>(self, coins: D) -> OnticState<D> {
        OnticState {
            n: self.n,
            m: self.m,
            c: self.c,
            coins,
            pivot: self.pivot,
        }
    }

    /// Copy of the basis driven by a new coin source.
    pub fn fork<D>(&self, coins: D) -> OnticState<D> {
        OnticState {
            n: self.n,
            m: self.m.clone(),
            c: self.c.clone(),
            coins,
            pivot: self.pivot,
        }
    }

    pub fn snapshot(&self) -> String {
        brace_notation(&self.m, &self.c)
    }

    fn check_dim(&self, p: &PauliOperator) -> Result<()> {
        if p.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: p.n(),
            });
        }
        Ok(())
    }

    fn check_observable(&self, p: &PauliOperator) -> Result<()> {
        self.check_dim(p)?;
        if !p.is_hermitian() {
            return Err(Error::InvalidObservable(p.to_string()));
        }
        Ok(())
    }
}

impl<C> fmt::Display for OnticState<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.snapshot())
    }
}

fn symplectic_row(p: &PauliOperator) -> Vec<u64> {
    p.x_words().iter().chain(p.z_words()).copied().collect()
}

/// Rank over GF(2) of the (x|z) vectors of `paulis`.
pub(crate) fn gf2_rank(paulis: &[PauliOperator]) -> usize {
    let mut rows: Vec<Vec<u64>> = paulis.iter().map(symplectic_row).collect();
    let width = rows.first().map_or(0, |r| r.len() * 64);
    let mut rank = 0;
    for bit in 0..width {
        let (w, mask) = (bit / 64, 1u64 << (bit % 64));
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][w] & mask != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] & mask != 0 {
                row.iter_mut().zip(&pivot_row).for_each(|(a, b)| *a ^= b);
            }
        }
        rank += 1;
    }
    rank
}

/// Solves `A q = b` over GF(2) for `q` of length `n`; rows are `(A_i, b_i)`.
fn gf2_solve(n: usize, rows: &[(Vec<bool>, bool)]) -> Option<Vec<bool>> {
    let mut aug: Vec<(Vec<bool>, bool)> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..aug.len()).find(|&r| aug[r].0[col]) else {
            continue;
        };
        aug.swap(rank, p);
        let (prow, pb) = aug[rank].clone();
        for (r, (row, b)) in aug.iter_mut().enumerate() {
            if r != rank && row[col] {
                row.iter_mut().zip(&prow).for_each(|(a, c)| *a ^= c);
                *b ^= pb;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if aug[rank..].iter().any(|(_, b)| *b) {
        return None;
    }
    let mut q = vec![false; n];
    for (r, &col) in pivots.iter().enumerate() {
        q[col] = aug[r].1;
    }
    Some(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coins::{seeded, PinnedCoins};

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    fn pm_start() -> OnticState<PinnedCoins> {
        OnticState::prepare_canonical(2, PinnedCoins::from_bits(&[0, 1]).then_seeded(0)).unwrap()
    }

    #[test]
    fn canonical_preparation() {
        assert_eq!(pm_start().snapshot(), "{ZI,IZ;+XI,-IX}");
        let mut one = OnticState::prepare_canonical(1, PinnedCoins::from_bits(&[0, 0])).unwrap();
        assert_eq!(one.snapshot(), "{Z;+X}");
        assert!(!one.measure(&p("Z")).unwrap());
        assert!(matches!(
            OnticState::prepare_canonical(0, seeded(0)),
            Err(Error::ZeroQubits)
        ));
    }

    #[test]
    fn expansion_examples() {
        let s = pm_start();
        let e = s.expand(&p("ZZ")).unwrap();
        assert_eq!(
            (e.m, e.c, e.v),
            (vec![true, true], vec![false, false], false)
        );
        let e = s.expand(&p("ZX")).unwrap();
        assert_eq!(
            (e.m, e.c, e.v),
            (vec![true, false], vec![false, true], true)
        );
        let e = s.expand(&p("-IZ")).unwrap();
        assert_eq!(
            (e.m, e.c, e.v),
            (vec![false, true], vec![false, false], true)
        );
        assert!(matches!(
            s.expand(&p("ZZ").multiply_i()),
            Err(Error::InvalidObservable(_))
        ));
    }

    #[test]
    fn pm_first_sequence() {
        let mut s =
            OnticState::prepare_canonical(2, PinnedCoins::from_bits(&[0, 1, 1, 0])).unwrap();
        assert!(!s.measure(&p("ZZ")).unwrap());
        assert_eq!(s.snapshot(), "{ZZ,IZ;-XI,-XX}");
        assert!(s.measure(&p("XX")).unwrap());
        assert_eq!(s.snapshot(), "{ZZ,-XX;-XI,+IZ}");
        let mut t = s.fork(seeded(1));
        assert!(!t.measure(&p("YY")).unwrap());
    }

    #[test]
    fn pm_second_sequence() {
        let mut s =
            OnticState::prepare_canonical(2, PinnedCoins::from_bits(&[0, 1, 0, 1])).unwrap();
        assert!(s.measure(&p("ZX")).unwrap());
        assert_eq!(s.snapshot(), "{ZI,-ZX;+XZ,+IZ}");
        assert!(!s.measure(&p("XZ")).unwrap());
        assert_eq!(s.snapshot(), "{XZ,-ZX;-ZI,+IZ}");
        let mut t = s.fork(seeded(1));
        assert!(t.measure(&p("YY")).unwrap());
    }

    #[test]
    fn identity_observable_is_a_scalar() {
        let mut s = pm_start();
        let before = s.snapshot();
        assert!(!s.measure(&p("II")).unwrap());
        assert!(s.measure(&p("-II")).unwrap());
        assert_eq!(s.snapshot(), before);
        assert_eq!(s.coins().drawn(), 2);
    }

    #[test]
    fn negated_observable_gives_complement() {
        let mut rng = seeded(11);
        for _ in 0..50 {
            let mut s = OnticState::prepare_canonical(3, seeded(rng.gen_u64())).unwrap();
            s.apply_h(0).unwrap();
            s.apply_cnot(0, 1).unwrap();
            s.apply_s(2).unwrap();
            let obs = p("XYZ");
            let a = s.fork(seeded(0)).measure(&obs).unwrap();
            let b = s.fork(seeded(0)).measure(&obs.negate()).unwrap();
            assert_ne!(a, b);
        }
    }

    trait GenU64 {
        fn gen_u64(&mut self) -> u64;
    }
    impl GenU64 for crate::coins::SeededCoins {
        fn gen_u64(&mut self) -> u64 {
            rand::RngCore::next_u64(self)
        }
    }

    #[test]
    fn gates_on_basis() {
        let mut s = OnticState::prepare_canonical(1, PinnedCoins::from_bits(&[0])).unwrap();
        s.apply_h(0).unwrap();
        assert_eq!(s.snapshot(), "{X;+Z}");
        let mut s = OnticState::prepare_canonical(1, PinnedCoins::from_bits(&[0])).unwrap();
        s.apply_z(0).unwrap();
        assert_eq!(s.snapshot(), "{Z;-X}");
        let mut s = OnticState::from_basis(vec![p("Y")], vec![p("Z")], seeded(0)).unwrap();
        s.apply_h(0).unwrap();
        assert_eq!(s.snapshot(), "{-Y;+X}");
        assert!(s.apply_h(1).is_err());
        assert!(matches!(
            s.apply_cnot(0, 0),
            Err(Error::InvalidGate(_)) | Err(Error::QubitOutOfRange { .. })
        ));
    }

    #[test]
    fn prepare_single_qubit_reset() {
        let mut s = OnticState::from_basis(vec![p("-Z")], vec![p("X")], seeded(4)).unwrap();
        s.prepare_by_measurement(&[p("Z")]).unwrap();
        assert_eq!(s.measurement_context()[0], p("Z"));
        assert_eq!(s.conjugate_context()[0].letters(), "X");
        assert!(s.check_symplectic());
    }

    #[test]
    fn prepare_rejects_bad_generators() {
        let mut s = OnticState::prepare_canonical(2, seeded(0)).unwrap();
        assert!(matches!(
            s.prepare_by_measurement(&[p("XI"), p("ZI")]),
            Err(Error::InvalidPreparation(_))
        ));
        assert!(matches!(
            s.prepare_by_measurement(&[p("XX"), p("ZZ"), p("-YY")]),
            Err(Error::InvalidPreparation(_))
        ));
        assert!(matches!(
            s.prepare_by_measurement(&[p("II")]),
            Err(Error::InvalidPreparation(_))
        ));
    }

    #[test]
    fn prepare_canonical_generators_is_noop_on_context() {
        let mut s = OnticState::prepare_canonical(3, seeded(2)).unwrap();
        s.prepare_by_measurement(&[p("ZII"), p("IZI"), p("IIZ")])
            .unwrap();
        let ms: Vec<String> = s
            .measurement_context()
            .iter()
            .map(|m| m.to_string())
            .collect();
        assert_eq!(ms, ["ZII", "IZI", "IIZ"]);
    }

    #[test]
    fn memory_report() {
        assert_eq!(MemoryReport::for_qubits(100).context_bits, 40200);
        assert_eq!(MemoryReport::for_qubits(1).context_bits, 6);
        let r = MemoryReport::for_qubits(64);
        assert_eq!(r.stored_bits - r.overhead_bits, r.context_bits);
    }

    #[test]
    fn canonical_states_are_symplectic() {
        for n in 1..=64 {
            assert!(OnticState::prepare_canonical(n, seeded(n as u64))
                .unwrap()
                .check_symplectic());
        }
    }

    #[test]
    fn gf2_solver() {
        let rows = vec![
            (vec![true, true, false], true),
            (vec![false, true, true], false),
        ];
        let q = gf2_solve(3, &rows).unwrap();
        assert!(q[0] ^ q[1]);
        assert!(!(q[1] ^ q[2]));
        assert!(gf2_solve(2, &[(vec![true, false], true), (vec![true, false], false)]).is_none());
        assert_eq!(gf2_rank(&[p("XX"), p("ZZ"), p("YY")]), 2);
    }
}
