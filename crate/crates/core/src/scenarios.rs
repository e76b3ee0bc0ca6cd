//! Worked contextuality examples: the Peres–Mermin square, a GHZ state and a
//! three-qubit shallow-circuit instance.

use crate::circuit::{parse_circuit, Circuit};
use crate::pauli::PauliOperator;

/// Rows of the Peres–Mermin square. Every row and the first two columns
/// multiply to `+II`; the last column multiplies to `-II`.
pub const PM_SQUARE: [[&str; 3]; 3] = [["ZI", "IZ", "ZZ"], ["IX", "XI", "XX"], ["ZX", "XZ", "YY"]];

/// One line (row or column) of the square, with the parity QM predicts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PmLine {
    pub name: &'static str,
    pub observables: [&'static str; 3],
    pub parity: bool,
}

pub fn pm_lines() -> Vec<PmLine> {
    let s = PM_SQUARE;
    vec![
        PmLine {
            name: "row 1",
            observables: s[0],
            parity: false,
        },
        PmLine {
            name: "row 2",
            observables: s[1],
            parity: false,
        },
        PmLine {
            name: "row 3",
            observables: s[2],
            parity: false,
        },
        PmLine {
            name: "column 1",
            observables: [s[0][0], s[1][0], s[2][0]],
            parity: false,
        },
        PmLine {
            name: "column 2",
            observables: [s[0][1], s[1][1], s[2][1]],
            parity: false,
        },
        PmLine {
            name: "column 3",
            observables: [s[0][2], s[1][2], s[2][2]],
            parity: true,
        },
    ]
}

/// Takes `|000⟩` to the state stabilized by `-XYY, -YXY, -YYX`, mapping a
/// canonical basis `{Z_k; ±X_k}` to `{-XYY,-YXY,-YYX; ±YII,±IYI,±IIY}` with the
/// conjugate signs carried over.
pub const GHZ_PREP: &str = "\
qubits 3
H 0
H 1
H 2
CZ 0 1
CZ 0 2
CZ 1 2
S 0
S 1
S 2
H 0
H 1
H 2
S 0
S 1
S 2
Y 0
Y 1
Y 2
";

pub const GHZ_GENERATORS: [&str; 3] = ["-XYY", "-YXY", "-YYX"];

/// Shallow-circuit instance for `f(x) = xᵀAx mod 4` with
/// `A = [[0,1,1],[1,1,0],[1,0,1]]`: Hadamards, `CZ` on the off-diagonal
/// entries, `S` on the diagonal entries, Hadamards, then Z measurements.
pub const SHALLOW_CIRCUIT: &str = "\
qubits 3
H 0
H 1
H 2
CZ 0 1
CZ 0 2
S 1
S 2
H 0
H 1
H 2
M z1= +ZII
M z2= +IZI
M z3= +IIZ
";

/// Every valid output `z₁z₂z₃` of the shallow-circuit instance.
pub const SHALLOW_SOLUTIONS: [&str; 4] = ["100", "010", "001", "111"];

pub fn ghz_prep_circuit() -> Circuit {
    parse_circuit(GHZ_PREP).expect("built-in circuit parses")
}

pub fn shallow_circuit() -> Circuit {
    parse_circuit(SHALLOW_CIRCUIT).expect("built-in circuit parses")
}

pub fn pauli(s: &str) -> PauliOperator {
    s.parse().expect("built-in Pauli string parses")
}
