//! Circuit representation, the line-oriented text format, and execution.
//!
//! ```text
//! qubits 3          # header, required before any instruction
//! H 0               # qubit indices are 0-based
//! CZ 0 1
//! M z1= +ZII        # observables are full-width; letter 1 is qubit 0
//! ```

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::coins::CoinSource;
use crate::context::OnticState;
use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::oracle::QuantumState;
use crate::pauli::{PauliOperator, PauliParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instruction {
    Gate(Gate),
    Measure {
        label: Option<String>,
        observable: PauliOperator,
    },
}

impl Instruction {
    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            Instruction::Gate(g) => g.validate(n),
            Instruction::Measure { observable, .. } => {
                if observable.n() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: observable.n(),
                    });
                }
                if !observable.is_hermitian() {
                    return Err(Error::InvalidObservable(observable.to_string()));
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instruction::Gate(g) => g.fmt(f),
            Instruction::Measure { label, observable } => {
                let sign = if observable.sign_bit() { "-" } else { "+" };
                match label {
                    Some(l) => write!(f, "M {l}= {sign}{}", observable.letters()),
                    None => write!(f, "M {sign}{}", observable.letters()),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    n: usize,
    instructions: Vec<Instruction>,
}

impl Circuit {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroQubits);
        }
        Ok(Circuit {
            n,
            instructions: Vec::new(),
        })
    }

    pub fn push(&mut self, instruction: Instruction) -> Result<()> {
        instruction.validate(self.n)?;
        self.instructions.push(instruction);
        Ok(())
    }

    pub fn gate(mut self, gate: Gate) -> Result<Self> {
        self.push(Instruction::Gate(gate))?;
        Ok(self)
    }

    pub fn measure(mut self, observable: PauliOperator) -> Result<Self> {
        self.push(Instruction::Measure {
            label: None,
            observable,
        })?;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    pub fn measurement_count(&self) -> usize {
        self.instructions
            .iter()
            .filter(|i| matches!(i, Instruction::Measure { .. }))
            .count()
    }

    /// Result names in measurement order; unlabeled measurements are `m<i>`.
    pub fn measurement_labels(&self) -> Vec<String> {
        self.instructions
            .iter()
            .filter_map(|i| match i {
                Instruction::Measure { label, .. } => Some(label.clone()),
                Instruction::Gate(_) => None,
            })
            .enumerate()
            .map(|(i, l)| l.unwrap_or_else(|| format!("m{i}")))
            .collect()
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.n)?;
        for i in &self.instructions {
            writeln!(f, "{i}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircuitParseErrorKind {
    #[error("missing `qubits <n>` header")]
    MissingHeader,
    #[error("duplicate `qubits` header")]
    DuplicateHeader,
    #[error("invalid qubit count {0:?}")]
    BadQubitCount(String),
    #[error("unknown mnemonic {0:?}")]
    UnknownMnemonic(String),
    #[error("{mnemonic} takes {expected} operand(s), found {found}")]
    Arity {
        mnemonic: String,
        expected: usize,
        found: usize,
    },
    #[error("invalid qubit index {0:?}")]
    BadQubitIndex(String),
    #[error("qubit {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("qubit {0} used twice in a two-qubit gate")]
    DuplicateQubit(usize),
    #[error("invalid measurement label {0:?}")]
    BadLabel(String),
    #[error("malformed Pauli string: {0}")]
    Pauli(PauliParseErrorKind),
}

/// Parse failure at a 1-based line and column.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {kind}")]
pub struct CircuitParseError {
    pub line: usize,
    pub column: usize,
    pub kind: CircuitParseErrorKind,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: line[..s].chars().count() + 1,
        });
    }
    out
}

fn is_label(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse_circuit(text: &str) -> Result<Circuit, CircuitParseError> {
    let mut circuit: Option<Circuit> = None;
    let mut last_line = 1;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        let Some(head) = toks.first() else {
            continue;
        };
        let err = |column: usize, kind| CircuitParseError {
            line: line_no,
            column,
            kind,
        };

        if head.text == "qubits" {
            if circuit.is_some() {
                return Err(err(head.column, CircuitParseErrorKind::DuplicateHeader));
            }
            if toks.len() != 2 {
                return Err(err(
                    head.column,
                    CircuitParseErrorKind::Arity {
                        mnemonic: "qubits".into(),
                        expected: 1,
                        found: toks.len() - 1,
                    },
                ));
            }
            let n = toks[1]
                .text
                .parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| {
                    err(
                        toks[1].column,
                        CircuitParseErrorKind::BadQubitCount(toks[1].text.into()),
                    )
                })?;
            circuit = Some(Circuit::new(n).expect("n > 0"));
            continue;
        }

        let Some(circ) = circuit.as_mut() else {
            return Err(err(head.column, CircuitParseErrorKind::MissingHeader));
        };
        let n = circ.n;
        let instruction = match head.text {
            "M" => parse_measure(line, &toks, n).map_err(|(c, k)| err(c, k))?,
            mnemonic => {
                let arity = match mnemonic {
                    "H" | "S" | "X" | "Y" | "Z" => 1,
                    "CNOT" | "CZ" => 2,
                    _ => {
                        return Err(err(
                            head.column,
                            CircuitParseErrorKind::UnknownMnemonic(mnemonic.into()),
                        ))
                    }
                };
                if toks.len() - 1 != arity {
                    return Err(err(
                        head.column,
                        CircuitParseErrorKind::Arity {
                            mnemonic: mnemonic.into(),
                            expected: arity,
                            found: toks.len() - 1,
                        },
                    ));
                }
                let mut qs = Vec::with_capacity(arity);
                for t in &toks[1..] {
                    let q = t.text.parse::<usize>().map_err(|_| {
                        err(
                            t.column,
                            CircuitParseErrorKind::BadQubitIndex(t.text.into()),
                        )
                    })?;
                    if q >= n {
                        return Err(err(
                            t.column,
                            CircuitParseErrorKind::QubitOutOfRange { qubit: q, n },
                        ));
                    }
                    qs.push(q);
                }
                if arity == 2 && qs[0] == qs[1] {
                    return Err(err(
                        toks[2].column,
                        CircuitParseErrorKind::DuplicateQubit(qs[0]),
                    ));
                }
                Instruction::Gate(match mnemonic {
                    "H" => Gate::H(qs[0]),
                    "S" => Gate::S(qs[0]),
                    "X" => Gate::X(qs[0]),
                    "Y" => Gate::Y(qs[0]),
                    "Z" => Gate::Z(qs[0]),
                    "CNOT" => Gate::Cnot {
                        control: qs[0],
                        target: qs[1],
                    },
                    _ => Gate::Cz(qs[0], qs[1]),
                })
            }
        };
        circ.instructions.push(instruction);
    }
    circuit.ok_or(CircuitParseError {
        line: last_line,
        column: 1,
        kind: CircuitParseErrorKind::MissingHeader,
    })
}

/// `M [label=] [+|-]PAULI`, where the label and observable may share a token.
fn parse_measure(
    line: &str,
    toks: &[Token<'_>],
    n: usize,
) -> Result<Instruction, (usize, CircuitParseErrorKind)> {
    let head = &toks[0];
    let rest_start = line
        .char_indices()
        .nth(head.column - 1 + 1)
        .map_or(line.len(), |(i, _)| i);
    let rest = &line[rest_start..];
    let rest_col = head.column + 1;
    let (label, obs_text, obs_col) = match rest.find('=') {
        Some(eq) => {
            let label_part = &rest[..eq];
            let label = label_part.trim();
            let label_col = rest_col + label_part.chars().take_while(|c| c.is_whitespace()).count();
            if !is_label(label) {
                return Err((label_col, CircuitParseErrorKind::BadLabel(label.into())));
            }
            let after = &rest[eq + 1..];
            (
                Some(label.to_string()),
                after,
                rest_col + rest[..eq + 1].chars().count(),
            )
        }
        None => (None, rest, rest_col),
    };
    let obs_toks = tokens(obs_text);
    if obs_toks.len() != 1 {
        return Err((
            head.column,
            CircuitParseErrorKind::Arity {
                mnemonic: "M".into(),
                expected: 1,
                found: obs_toks.len(),
            },
        ));
    }
    let t = &obs_toks[0];
    let col = obs_col + t.column - 1;
    let observable = crate::pauli::parse_pauli(t.text, n)
        .map_err(|e| (col + e.position, CircuitParseErrorKind::Pauli(e.kind)))?;
    Ok(Instruction::Measure { label, observable })
}

/// One measurement result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeasurementRecord {
    pub shot: u64,
    pub label: String,
    pub observable: String,
    pub outcome: u8,
}

/// Anything that can run gates and Pauli measurements.
pub trait Backend {
    fn width(&self) -> usize;
    fn apply_gate(&mut self, gate: &Gate) -> Result<()>;
    fn measure(&mut self, observable: &PauliOperator) -> Result<bool>;
}

impl<C: CoinSource> Backend for OnticState<C> {
    fn width(&self) -> usize {
        self.n()
    }

    fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        OnticState::apply_gate(self, gate)
    }

    fn measure(&mut self, observable: &PauliOperator) -> Result<bool> {
        OnticState::measure(self, observable)
    }
}

/// A state vector plus the randomness for its Born-rule draws.
pub struct OracleBackend<R> {
    pub state: QuantumState,
    pub rng: R,
}

impl<R: rand::Rng> Backend for OracleBackend<R> {
    fn width(&self) -> usize {
        self.state.n()
    }

    fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        self.state.apply(gate)
    }

    fn measure(&mut self, observable: &PauliOperator) -> Result<bool> {
        self.state.measure(observable, &mut self.rng)
    }
}

pub fn execute<B: Backend>(
    circuit: &Circuit,
    backend: &mut B,
    shot: u64,
) -> Result<Vec<MeasurementRecord>> {
    execute_observed(circuit, backend, shot, |_, _| {})
}

/// Like [`execute`], calling `observe(instruction, backend)` after each step.
pub fn execute_observed<B: Backend>(
    circuit: &Circuit,
    backend: &mut B,
    shot: u64,
    mut observe: impl FnMut(&Instruction, &B),
) -> Result<Vec<MeasurementRecord>> {
    if backend.width() != circuit.n {
        return Err(Error::DimensionMismatch {
            expected: circuit.n,
            found: backend.width(),
        });
    }
    let labels = circuit.measurement_labels();
    let mut records = Vec::with_capacity(labels.len());
    for instr in &circuit.instructions {
        match instr {
            Instruction::Gate(g) => backend.apply_gate(g)?,
            Instruction::Measure { observable, .. } => {
                let v = backend.measure(observable)?;
                records.push(MeasurementRecord {
                    shot,
                    label: labels[records.len()].clone(),
                    observable: observable.to_string(),
                    outcome: u8::from(v),
                });
            }
        }
        observe(instr, backend);
    }
    Ok(records)
}

/// Model execution with a basis snapshot after every gate and every
/// measurement sub-step; `sink(step_label, snapshot)`.
pub fn execute_traced<C: CoinSource>(
    circuit: &Circuit,
    state: &mut OnticState<C>,
    shot: u64,
    sink: &mut dyn FnMut(&str, String),
) -> Result<Vec<MeasurementRecord>> {
    if state.n() != circuit.n {
        return Err(Error::DimensionMismatch {
            expected: circuit.n,
            found: state.n(),
        });
    }
    let labels = circuit.measurement_labels();
    let mut records = Vec::new();
    for instr in &circuit.instructions {
        match instr {
            Instruction::Gate(g) => {
                state.apply_gate(g)?;
                sink(&g.to_string(), state.snapshot());
            }
            Instruction::Measure { observable, .. } => {
                let label = &labels[records.len()];
                let out = state.measure_detailed(observable, &mut |ev| {
                    let tag = format!(
                        "M {observable} {} v={}",
                        ev.step.label(),
                        u8::from(ev.outcome)
                    );
                    sink(&tag, ev.snapshot());
                })?;
                records.push(MeasurementRecord {
                    shot,
                    label: label.clone(),
                    observable: observable.to_string(),
                    outcome: u8::from(out.outcome),
                });
            }
        }
    }
    Ok(records)
}
