//! Dense state-vector reference simulator.
//!
//! Basis index bit `q` holds qubit `q` (the `q`-th Pauli letter from the left).
//! This is a test instrument: widths are capped and nothing is optimized.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::pauli::{Letter, PauliOperator};

pub const DEFAULT_CAP: usize = 12;

const DETERMINISTIC_EPS: f64 = 1e-9;

pub type DenseMatrix = DMatrix<Complex64>;

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    n: usize,
    amps: Vec<Complex64>,
}

impl QuantumState {
    /// `|0…0⟩` on `n ≤ DEFAULT_CAP` qubits.
    pub fn zero(n: usize) -> Result<Self> {
        Self::zero_with_cap(n, DEFAULT_CAP)
    }

    pub fn zero_with_cap(n: usize, cap: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroQubits);
        }
        if n > cap || n >= 64 {
            return Err(Error::OracleCap { n, cap });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(QuantumState { n, amps })
    }

    /// The normalized joint `+1` eigenstate of commuting Hermitian `generators`.
    pub fn from_stabilizers(n: usize, generators: &[PauliOperator]) -> Result<Self> {
        let mut base = QuantumState::zero(n)?;
        for b in 0..base.amps.len() {
            base.amps
                .iter_mut()
                .for_each(|a| *a = Complex64::new(0.0, 0.0));
            base.amps[b] = Complex64::new(1.0, 0.0);
            let mut s = base.clone();
            let mut ok = true;
            for g in generators {
                if s.project(g, false)? < DETERMINISTIC_EPS {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(s);
            }
        }
        Err(Error::InvalidPreparation(
            "generators have no common +1 eigenstate".into(),
        ))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &QuantumState) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .norm_sqr()
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n)?;
        let i = Complex64::new(0.0, 1.0);
        match *gate {
            Gate::H(q) => {
                let bit = 1usize << q;
                let h = std::f64::consts::FRAC_1_SQRT_2;
                for b in 0..self.amps.len() {
                    if b & bit == 0 {
                        let (a0, a1) = (self.amps[b], self.amps[b | bit]);
                        self.amps[b] = (a0 + a1) * h;
                        self.amps[b | bit] = (a0 - a1) * h;
                    }
                }
            }
            Gate::S(q) => self.for_each_with(1 << q, |a| *a *= i),
            Gate::Z(q) => self.for_each_with(1 << q, |a| *a = -*a),
            Gate::X(q) => {
                let bit = 1usize << q;
                for b in 0..self.amps.len() {
                    if b & bit == 0 {
                        self.amps.swap(b, b | bit);
                    }
                }
            }
            Gate::Y(q) => {
                // Y|0⟩ = i|1⟩, Y|1⟩ = -i|0⟩
                let bit = 1usize << q;
                for b in 0..self.amps.len() {
                    if b & bit == 0 {
                        let (a0, a1) = (self.amps[b], self.amps[b | bit]);
                        self.amps[b] = -i * a1;
                        self.amps[b | bit] = i * a0;
                    }
                }
            }
            Gate::Cnot { control, target } => {
                let (c, t) = (1usize << control, 1usize << target);
                for b in 0..self.amps.len() {
                    if b & c != 0 && b & t == 0 {
                        self.amps.swap(b, b | t);
                    }
                }
            }
            Gate::Cz(a, b) => self.for_each_with((1 << a) | (1 << b), |x| *x = -*x),
        }
        Ok(())
    }

    fn for_each_with(&mut self, mask: usize, f: impl Fn(&mut Complex64)) {
        for (b, a) in self.amps.iter_mut().enumerate() {
            if b & mask == mask {
                f(a);
            }
        }
    }

    /// `P|ψ⟩` for any Pauli, Hermitian or not.
    pub fn pauli_applied(&self, p: &PauliOperator) -> Result<Vec<Complex64>> {
        self.check_dim(p)?;
        let (xmask, zmask) = masks(p);
        let y_count = (xmask & zmask).count_ones();
        let global = i_pow(u32::from(p.phase()) + y_count);
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (b, a) in self.amps.iter().enumerate() {
            let sign = if (zmask & b).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            out[b ^ xmask] = a * global * sign;
        }
        Ok(out)
    }

    /// `⟨ψ|P|ψ⟩`.
    pub fn pauli_expectation(&self, p: &PauliOperator) -> Result<f64> {
        if !p.is_hermitian() {
            return Err(Error::InvalidObservable(p.to_string()));
        }
        let pv = self.pauli_applied(p)?;
        Ok(self
            .amps
            .iter()
            .zip(&pv)
            .map(|(a, b)| (a.conj() * b).re)
            .sum())
    }

    /// Projects onto the `(-1)^outcome` eigenspace of `p` and renormalizes;
    /// returns the Born probability of that outcome. A zero-probability
    /// projection leaves the state untouched.
    pub fn project(&mut self, p: &PauliOperator, outcome: bool) -> Result<f64> {
        let expectation = self.pauli_expectation(p)?;
        let prob = if outcome {
            (1.0 - expectation) / 2.0
        } else {
            (1.0 + expectation) / 2.0
        };
        if prob < DETERMINISTIC_EPS {
            return Ok(0.0);
        }
        let pv = self.pauli_applied(p)?;
        let s = if outcome { -1.0 } else { 1.0 };
        let scale = 1.0 / (4.0 * prob).sqrt();
        for (a, b) in self.amps.iter_mut().zip(&pv) {
            *a = (*a + b * s) * scale;
        }
        Ok(prob)
    }

    /// Born-rule measurement with collapse.
    pub fn measure<R: Rng + ?Sized>(&mut self, p: &PauliOperator, rng: &mut R) -> Result<bool> {
        let p0 = (1.0 + self.pauli_expectation(p)?) / 2.0;
        let outcome = if p0 > 1.0 - DETERMINISTIC_EPS {
            false
        } else if p0 < DETERMINISTIC_EPS {
            true
        } else {
            rng.gen::<f64>() >= p0
        };
        self.project(p, outcome)?;
        Ok(outcome)
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
}

fn masks(p: &PauliOperator) -> (usize, usize) {
    let mut x = 0;
    let mut z = 0;
    for q in 0..p.n() {
        if p.x_bit(q) {
            x |= 1 << q;
        }
        if p.z_bit(q) {
            z |= 1 << q;
        }
    }
    (x, z)
}

fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The 2×2 matrix of a single Pauli letter.
pub fn letter_matrix(letter: Letter) -> DenseMatrix {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    match letter {
        Letter::I => DenseMatrix::from_row_slice(2, 2, &[one, z, z, one]),
        Letter::X => DenseMatrix::from_row_slice(2, 2, &[z, one, one, z]),
        Letter::Y => DenseMatrix::from_row_slice(2, 2, &[z, -i, i, z]),
        Letter::Z => DenseMatrix::from_row_slice(2, 2, &[one, z, z, -one]),
    }
}

/// Full `2^n × 2^n` matrix of `i^phase ⊗_k σ_k`, built by Kronecker products.
///
/// The canonical factor `i^(x z)` is already part of `σ_k = Y` when both bits
/// are set, so only the stored phase multiplies the product.
pub fn pauli_matrix(p: &PauliOperator) -> DenseMatrix {
    // highest qubit is the most significant tensor factor
    let mut m = DenseMatrix::from_element(1, 1, c(1.0, 0.0));
    for q in (0..p.n()).rev() {
        m = m.kronecker(&letter_matrix(p.letter(q)));
    }
    m * i_pow(u32::from(p.phase()))
}

/// Full matrix of `gate` on `n` qubits from its textbook 2×2 or 4×4 block.
pub fn gate_matrix(n: usize, gate: &Gate) -> Result<DenseMatrix> {
    gate.validate(n)?;
    let dim = 1usize << n;
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let h = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let i = c(0.0, 1.0);
    // block acting on (bit of first qubit, bit of second qubit) as index a + 2b
    let (qubits, block): (Vec<usize>, DenseMatrix) = match *gate {
        Gate::H(q) => (vec![q], DenseMatrix::from_row_slice(2, 2, &[h, h, h, -h])),
        Gate::S(q) => (vec![q], DenseMatrix::from_row_slice(2, 2, &[one, z, z, i])),
        Gate::X(q) => (vec![q], letter_matrix(Letter::X)),
        Gate::Y(q) => (vec![q], letter_matrix(Letter::Y)),
        Gate::Z(q) => (vec![q], letter_matrix(Letter::Z)),
        Gate::Cnot { control, target } => (
            vec![control, target],
            // index = control + 2·target; flips target when control is set
            DenseMatrix::from_row_slice(
                4,
                4,
                &[
                    one, z, z, z, //
                    z, z, z, one, //
                    z, z, one, z, //
                    z, one, z, z,
                ],
            ),
        ),
        Gate::Cz(a, b) => (
            vec![a, b],
            DenseMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![one, one, one, -one])),
        ),
    };
    let mut full = DenseMatrix::zeros(dim, dim);
    let local = |b: usize| -> usize {
        qubits
            .iter()
            .enumerate()
            .map(|(k, &q)| ((b >> q) & 1) << k)
            .sum()
    };
    let others_mask = !qubits.iter().fold(0usize, |m, &q| m | (1 << q));
    for col in 0..dim {
        for row in 0..dim {
            if row & others_mask == col & others_mask {
                full[(row, col)] = block[(local(row), local(col))];
            }
        }
    }
    Ok(full)
}

pub fn matrices_close(a: &DenseMatrix, b: &DenseMatrix, tol: f64) -> bool {
    a.shape() == b.shape() && a.iter().zip(b.iter()).all(|(x, y)| (x - y).norm() <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coins::seeded;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn hadamard_on_zero() {
        let mut s = QuantumState::zero(1).unwrap();
        s.apply(&Gate::H(0)).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.amplitudes()[0] - c(h, 0.0)).norm() < 1e-12);
        assert!((s.amplitudes()[1] - c(h, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn cz_is_diagonal() {
        let m = gate_matrix(2, &Gate::Cz(0, 1)).unwrap();
        let expected = DenseMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c(1.0, 0.0),
            c(1.0, 0.0),
            c(1.0, 0.0),
            c(-1.0, 0.0),
        ]));
        assert!(matrices_close(&m, &expected, 1e-12));
    }

    #[test]
    fn expectations_on_zero() {
        let s = QuantumState::zero(1).unwrap();
        assert!((s.pauli_expectation(&p("Z")).unwrap() - 1.0).abs() < 1e-12);
        assert!(s.pauli_expectation(&p("X")).unwrap().abs() < 1e-12);
        assert!(s.pauli_expectation(&p("Z").multiply_i()).is_err());
    }

    #[test]
    fn measurement_statistics_on_zero() {
        let mut rng = seeded(5);
        let mut ones = 0;
        for _ in 0..2000 {
            let mut s = QuantumState::zero(1).unwrap();
            assert!(!s.clone().measure(&p("Z"), &mut rng).unwrap());
            if s.measure(&p("X"), &mut rng).unwrap() {
                ones += 1;
            }
        }
        assert!((ones as f64 / 2000.0 - 0.5).abs() < 5.0 * 0.5 / 2000f64.sqrt());
    }

    #[test]
    fn zz_xx_yy_parity_is_odd() {
        let mut rng = seeded(9);
        for _ in 0..100 {
            let mut s = QuantumState::zero(2).unwrap();
            let a = s.measure(&p("ZZ"), &mut rng).unwrap();
            let b = s.measure(&p("XX"), &mut rng).unwrap();
            let c = s.measure(&p("YY"), &mut rng).unwrap();
            assert!(a ^ b ^ c);
        }
    }

    #[test]
    fn repeated_measurement_is_idempotent() {
        let mut rng = seeded(1);
        let mut s = QuantumState::zero(3).unwrap();
        s.apply(&Gate::H(1)).unwrap();
        let obs = p("XXZ");
        let a = s.measure(&obs, &mut rng).unwrap();
        let snapshot = s.clone();
        assert_eq!(s.measure(&obs, &mut rng).unwrap(), a);
        assert!((s.fidelity(&snapshot) - 1.0).abs() < 1e-10);
        assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn width_cap() {
        assert!(matches!(
            QuantumState::zero(13),
            Err(Error::OracleCap { n: 13, cap: 12 })
        ));
        assert!(QuantumState::zero_with_cap(13, 13).is_ok());
    }

    #[test]
    fn pauli_matrix_of_y_carries_i() {
        let y = pauli_matrix(&p("Y"));
        assert!(matrices_close(&y, &letter_matrix(Letter::Y), 0.0));
        let iz = pauli_matrix(&p("ZI"));
        // qubit 0 is the least significant index bit
        assert_eq!(iz[(1, 1)], c(-1.0, 0.0));
        assert_eq!(iz[(2, 2)], c(1.0, 0.0));
    }
}
