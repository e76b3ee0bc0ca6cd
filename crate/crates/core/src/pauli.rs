//! Signed n-qubit Pauli operators over packed binary symplectic vectors.
//!
//! An operator is stored as `i^phase ⊗_k i^(x_k z_k) X^(x_k) Z^(z_k)`. With this
//! canonical form `Y` is `x = z = 1` with phase 0, and an operator is Hermitian
//! exactly when its phase is even.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

#[inline]
fn word_and_mask(q: usize) -> (usize, u64) {
    (q / WORD_BITS, 1u64 << (q % WORD_BITS))
}

#[inline]
fn popcount_and(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(p, q)| (p & q).count_ones()).sum()
}

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Letter::I),
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PauliParseErrorKind {
    #[error("empty Pauli string")]
    Empty,
    #[error("non-Hermitian phase prefix `i`")]
    NonHermitianPhase,
    #[error("unexpected character {0:?}")]
    BadCharacter(char),
    #[error("expected {expected} Pauli letters, found {found}")]
    WrongLength { expected: usize, found: usize },
}

/// Parse failure with the 0-based character position it refers to.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid Pauli string at index {position}: {kind}")]
pub struct PauliParseError {
    pub position: usize,
    pub kind: PauliParseErrorKind,
}

/// A signed n-qubit Pauli group element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: u8,
}

impl PauliOperator {
    /// The identity on `n` qubits. Panics if `n == 0`.
    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "Pauli operators act on at least one qubit");
        let words = words_for(n);
        PauliOperator {
            n,
            x: vec![0; words],
            z: vec![0; words],
            phase: 0,
        }
    }

    /// Builds an operator from explicit bit vectors; `phase` is taken mod 4.
    pub fn from_bits(x: &[bool], z: &[bool], phase: u8) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::ZeroQubits);
        }
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                found: z.len(),
            });
        }
        let mut p = PauliOperator::identity(x.len());
        for (q, (&xb, &zb)) in x.iter().zip(z).enumerate() {
            p.set_letter(q, Letter::from_bits(xb, zb));
        }
        p.phase = phase % 4;
        Ok(p)
    }

    /// `letter` on qubit `q` (0-based), identity elsewhere.
    pub fn single(n: usize, q: usize, letter: Letter) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroQubits);
        }
        if q >= n {
            return Err(Error::QubitOutOfRange { qubit: q, n });
        }
        let mut p = PauliOperator::identity(n);
        p.set_letter(q, letter);
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Phase exponent `p` of `i^p`, relative to the canonical form.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn x_bit(&self, q: usize) -> bool {
        let (w, m) = word_and_mask(q);
        self.x[w] & m != 0
    }

    pub fn z_bit(&self, q: usize) -> bool {
        let (w, m) = word_and_mask(q);
        self.z[w] & m != 0
    }

    pub fn letter(&self, q: usize) -> Letter {
        Letter::from_bits(self.x_bit(q), self.z_bit(q))
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase.is_multiple_of(2)
    }

    pub fn is_identity_support(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    /// The outcome bit `v` of a Hermitian operator `(-1)^v P_canonical`.
    pub fn sign_bit(&self) -> bool {
        self.phase >= 2
    }

    /// Number of qubits on which the operator acts nontrivially.
    pub fn weight(&self) -> u32 {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(a, b)| (a | b).count_ones())
            .sum()
    }

    /// Number of qubits in the joint support of `self` and `other`.
    pub(crate) fn support_overlap(&self, other: &PauliOperator) -> u32 {
        self.x
            .iter()
            .zip(&self.z)
            .zip(other.x.iter().zip(&other.z))
            .map(|((a, b), (c, d))| ((a | b) & (c | d)).count_ones())
            .sum()
    }

    pub fn negate(&self) -> Self {
        let mut p = self.clone();
        p.phase = (p.phase + 2) % 4;
        p
    }

    pub fn multiply_i(&self) -> Self {
        let mut p = self.clone();
        p.phase = (p.phase + 1) % 4;
        p
    }

    /// Same support with phase replaced by `(-1)^sign`.
    pub fn with_sign(&self, sign: bool) -> Self {
        let mut p = self.clone();
        p.set_sign(sign);
        p
    }

    pub(crate) fn set_sign(&mut self, sign: bool) {
        self.phase = if sign { 2 } else { 0 };
    }

    pub(crate) fn add_phase(&mut self, delta: u8) {
        self.phase = (self.phase + delta) % 4;
    }

    pub(crate) fn flip_sign(&mut self) {
        self.add_phase(2);
    }

    pub(crate) fn set_letter(&mut self, q: usize, letter: Letter) {
        let (w, m) = word_and_mask(q);
        let (xb, zb) = letter.bits();
        if xb {
            self.x[w] |= m;
        } else {
            self.x[w] &= !m;
        }
        if zb {
            self.z[w] |= m;
        } else {
            self.z[w] &= !m;
        }
    }

    pub(crate) fn set_x(&mut self, q: usize, bit: bool) {
        let (w, m) = word_and_mask(q);
        if bit {
            self.x[w] |= m;
        } else {
            self.x[w] &= !m;
        }
    }

    pub(crate) fn set_z(&mut self, q: usize, bit: bool) {
        let (w, m) = word_and_mask(q);
        if bit {
            self.z[w] |= m;
        } else {
            self.z[w] &= !m;
        }
    }

    fn check_dim(&self, other: &PauliOperator) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// Parity of the symplectic product, without a dimension check.
    #[inline]
    pub(crate) fn anticommutes_unchecked(&self, other: &PauliOperator) -> bool {
        let mut acc = 0u64;
        for i in 0..self.x.len() {
            acc ^= (self.x[i] & other.z[i]) ^ (other.x[i] & self.z[i]);
        }
        acc.count_ones() % 2 == 1
    }

    /// In-place `self ← self · rhs`, without a dimension check.
    #[inline]
    pub(crate) fn compose_assign_unchecked(&mut self, rhs: &PauliOperator) {
        let mut acc: i64 = i64::from(self.phase) + i64::from(rhs.phase);
        for i in 0..self.x.len() {
            let (x1, z1, x2, z2) = (self.x[i], self.z[i], rhs.x[i], rhs.z[i]);
            let (x3, z3) = (x1 ^ x2, z1 ^ z2);
            // i^(x z) X^x Z^z · i^(x' z') X^x' Z^z' = i^(x z + x' z' + 2 z x' - x'' z'') canonical(x'', z'')
            acc += i64::from((x1 & z1).count_ones())
                + i64::from((x2 & z2).count_ones())
                + 2 * i64::from((z1 & x2).count_ones())
                - i64::from((x3 & z3).count_ones());
            self.x[i] = x3;
            self.z[i] = z3;
        }
        self.phase = acc.rem_euclid(4) as u8;
    }

    /// Formats just the letters, without any sign.
    pub fn letters(&self) -> String {
        (0..self.n).map(|q| self.letter(q).as_char()).collect()
    }
}

/// `Σ_k x_k z'_k − x'_k z_k` as a plain integer.
pub fn symplectic_product(p: &PauliOperator, q: &PauliOperator) -> Result<i64> {
    p.check_dim(q)?;
    Ok(i64::from(popcount_and(&p.x, &q.z)) - i64::from(popcount_and(&q.x, &p.z)))
}

pub fn commutes(p: &PauliOperator, q: &PauliOperator) -> Result<bool> {
    p.check_dim(q)?;
    Ok(!p.anticommutes_unchecked(q))
}

/// The group operation: exactly the matrix product `p · q`.
pub fn compose(p: &PauliOperator, q: &PauliOperator) -> Result<PauliOperator> {
    p.check_dim(q)?;
    let mut out = p.clone();
    out.compose_assign_unchecked(q);
    Ok(out)
}

impl std::ops::Mul<&PauliOperator> for &PauliOperator {
    type Output = PauliOperator;

    fn mul(self, rhs: &PauliOperator) -> PauliOperator {
        assert_eq!(self.n, rhs.n, "cannot compose Paulis of different widths");
        let mut out = self.clone();
        out.compose_assign_unchecked(rhs);
        out
    }
}

/// Parses a signed Hermitian Pauli string of exactly `n` letters.
pub fn parse_pauli(text: &str, n: usize) -> Result<PauliOperator, PauliParseError> {
    let p: PauliOperator = text.parse()?;
    if p.n != n {
        let sign_len = usize::from(text.starts_with(['+', '-']));
        return Err(PauliParseError {
            position: sign_len + p.n.min(n),
            kind: PauliParseErrorKind::WrongLength {
                expected: n,
                found: p.n,
            },
        });
    }
    Ok(p)
}

pub fn format_pauli(p: &PauliOperator) -> String {
    p.to_string()
}

impl FromStr for PauliOperator {
    type Err = PauliParseError;

    fn from_str(text: &str) -> Result<Self, PauliParseError> {
        let mut chars = text.char_indices().peekable();
        let mut negative = false;
        if let Some(&(_, c)) = chars.peek() {
            if c == '+' || c == '-' {
                negative = c == '-';
                chars.next();
            }
        }
        let mut letters = Vec::new();
        for (pos, c) in chars {
            match Letter::from_char(c) {
                Some(l) => letters.push(l),
                None if c == 'i' => {
                    return Err(PauliParseError {
                        position: pos,
                        kind: PauliParseErrorKind::NonHermitianPhase,
                    })
                }
                None => {
                    return Err(PauliParseError {
                        position: text[..pos].chars().count(),
                        kind: PauliParseErrorKind::BadCharacter(c),
                    })
                }
            }
        }
        if letters.is_empty() {
            return Err(PauliParseError {
                position: text.chars().count(),
                kind: PauliParseErrorKind::Empty,
            });
        }
        let mut p = PauliOperator::identity(letters.len());
        for (q, l) in letters.into_iter().enumerate() {
            p.set_letter(q, l);
        }
        p.set_sign(negative);
        Ok(p)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{prefix}{}", self.letters())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}
