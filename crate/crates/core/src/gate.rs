//! Clifford gates and their action on Pauli operators by conjugation.

use std::fmt;

use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

/// Qubit indices are 0-based; qubit 0 is the leftmost Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    S(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Cnot { control: usize, target: usize },
    Cz(usize, usize),
}

impl Gate {
    pub fn mnemonic(&self) -> &'static str {
        match self {
            Gate::H(_) => "H",
            Gate::S(_) => "S",
            Gate::X(_) => "X",
            Gate::Y(_) => "Y",
            Gate::Z(_) => "Z",
            Gate::Cnot { .. } => "CNOT",
            Gate::Cz(..) => "CZ",
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::S(q) | Gate::X(q) | Gate::Y(q) | Gate::Z(q) => vec![q],
            Gate::Cnot { control, target } => vec![control, target],
            Gate::Cz(a, b) => vec![a, b],
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let qs = self.qubits();
        if let Some(&q) = qs.iter().find(|&&q| q >= n) {
            return Err(Error::QubitOutOfRange { qubit: q, n });
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(Error::InvalidGate(format!(
                "{} acts on two distinct qubits, got {} twice",
                self.mnemonic(),
                qs[0]
            )));
        }
        Ok(())
    }

    /// `P ← U P U†`, assuming the gate was validated against `p.n()`.
    ///
    /// Only the touched bits are read and written, so the cost is O(1) per
    /// operator. The sign update `r` is added as `2r` to the phase exponent.
    pub fn conjugate(&self, p: &mut PauliOperator) {
        match *self {
            Gate::H(q) => {
                let (x, z) = (p.x_bit(q), p.z_bit(q));
                p.set_x(q, z);
                p.set_z(q, x);
                if x && z {
                    p.flip_sign();
                }
            }
            Gate::S(q) => {
                let (x, z) = (p.x_bit(q), p.z_bit(q));
                p.set_z(q, z ^ x);
                if x && z {
                    p.flip_sign();
                }
            }
            Gate::X(q) => {
                if p.z_bit(q) {
                    p.flip_sign();
                }
            }
            Gate::Y(q) => {
                if p.x_bit(q) ^ p.z_bit(q) {
                    p.flip_sign();
                }
            }
            Gate::Z(q) => {
                if p.x_bit(q) {
                    p.flip_sign();
                }
            }
            Gate::Cnot { control, target } => {
                let (xc, zc) = (p.x_bit(control), p.z_bit(control));
                let (xt, zt) = (p.x_bit(target), p.z_bit(target));
                if xc && zt && !(xt ^ zc) {
                    p.flip_sign();
                }
                p.set_x(target, xt ^ xc);
                p.set_z(control, zc ^ zt);
            }
            Gate::Cz(a, b) => {
                let (xa, za) = (p.x_bit(a), p.z_bit(a));
                let (xb, zb) = (p.x_bit(b), p.z_bit(b));
                if xa && xb && (za ^ zb) {
                    p.flip_sign();
                }
                p.set_z(a, za ^ xb);
                p.set_z(b, zb ^ xa);
            }
        }
    }

    /// Conjugated copy of `p`, with validation.
    pub fn image(&self, p: &PauliOperator) -> Result<PauliOperator> {
        self.validate(p.n())?;
        let mut out = p.clone();
        self.conjugate(&mut out);
        Ok(out)
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::H(q) | Gate::S(q) | Gate::X(q) | Gate::Y(q) | Gate::Z(q) => {
                write!(f, "{} {q}", self.mnemonic())
            }
            Gate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
            Gate::Cz(a, b) => write!(f, "CZ {a} {b}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn single_qubit_images() {
        assert_eq!(Gate::H(0).image(&p("Z")).unwrap(), p("X"));
        assert_eq!(Gate::H(0).image(&p("X")).unwrap(), p("Z"));
        assert_eq!(Gate::H(0).image(&p("Y")).unwrap(), p("-Y"));
        assert_eq!(Gate::S(0).image(&p("X")).unwrap(), p("Y"));
        assert_eq!(Gate::S(0).image(&p("Y")).unwrap(), p("-X"));
        assert_eq!(Gate::Z(0).image(&p("X")).unwrap(), p("-X"));
        assert_eq!(Gate::X(0).image(&p("Y")).unwrap(), p("-Y"));
        assert_eq!(Gate::Y(0).image(&p("Y")).unwrap(), p("Y"));
    }

    #[test]
    fn two_qubit_images() {
        let cx = Gate::Cnot {
            control: 0,
            target: 1,
        };
        assert_eq!(cx.image(&p("XI")).unwrap(), p("XX"));
        assert_eq!(cx.image(&p("IZ")).unwrap(), p("ZZ"));
        assert_eq!(cx.image(&p("YY")).unwrap(), p("-XZ"));
        let cz = Gate::Cz(0, 1);
        assert_eq!(cz.image(&p("XI")).unwrap(), p("XZ"));
        assert_eq!(cz.image(&p("XX")).unwrap(), p("YY"));
        assert_eq!(cz.image(&p("YX")).unwrap(), p("-XY"));
    }

    #[test]
    fn validation() {
        assert!(matches!(
            Gate::H(3).validate(3),
            Err(Error::QubitOutOfRange { qubit: 3, n: 3 })
        ));
        assert!(matches!(
            Gate::Cnot {
                control: 1,
                target: 1
            }
            .validate(3),
            Err(Error::InvalidGate(_))
        ));
        assert!(Gate::Cz(0, 2).validate(3).is_ok());
    }
}
