use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::BitVec;
use crate::error::{Error, Result};

/// Single-qubit Pauli.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const NON_IDENTITY: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// `i^phase · ⊗σ_j`, with `σ_j` read from the `(x_j, z_j)` bit pair.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliWord {
    x: BitVec,
    z: BitVec,
    phase: u8,
}

impl PauliWord {
    pub fn identity(n: usize) -> Self {
        PauliWord {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
            phase: 0,
        }
    }

    pub fn from_parts(x: BitVec, z: BitVec, phase: u8) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::LengthMismatch {
                left: x.len(),
                right: z.len(),
            });
        }
        Ok(PauliWord { x, z, phase: phase % 4 })
    }

    pub fn single(n: usize, qubit: usize, p: Pauli) -> Self {
        let mut w = Self::identity(n);
        w.set(qubit, p);
        w
    }

    /// Product of single-qubit Paulis on the listed qubits (phase 0).
    pub fn from_sparse(n: usize, terms: impl IntoIterator<Item = (usize, Pauli)>) -> Self {
        let mut w = Self::identity(n);
        for (q, p) in terms {
            w.set(q, p);
        }
        w
    }

    /// Same Pauli on every listed qubit.
    pub fn uniform(n: usize, qubits: impl IntoIterator<Item = usize>, p: Pauli) -> Self {
        Self::from_sparse(n, qubits.into_iter().map(|q| (q, p)))
    }

    /// Builds from the symplectic vector `x || z` with phase 0.
    pub fn from_symplectic(v: &BitVec) -> Self {
        let n = v.len() / 2;
        PauliWord {
            x: v.slice(0, n),
            z: v.slice(n, n),
            phase: 0,
        }
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn x_part(&self) -> &BitVec {
        &self.x
    }

    #[inline]
    pub fn z_part(&self) -> &BitVec {
        &self.z
    }

    #[inline]
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn with_phase(mut self, phase: u8) -> Self {
        self.phase = phase % 4;
        self
    }

    pub fn negated(mut self) -> Self {
        self.phase = (self.phase + 2) % 4;
        self
    }

    /// Drops the phase.
    pub fn unsigned(&self) -> PauliWord {
        PauliWord {
            x: self.x.clone(),
            z: self.z.clone(),
            phase: 0,
        }
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase.is_multiple_of(2)
    }

    /// `+1` or `-1` for Hermitian words.
    pub fn sign(&self) -> i8 {
        match self.phase {
            0 => 1,
            2 => -1,
            _ => 0,
        }
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x.get(q), self.z.get(q))
    }

    pub fn set(&mut self, q: usize, p: Pauli) {
        let (x, z) = p.bits();
        self.x.set(q, x);
        self.z.set(q, z);
    }

    pub fn weight(&self) -> usize {
        self.x.or(&self.z).count_ones()
    }

    pub fn support(&self) -> Vec<usize> {
        self.x.or(&self.z).iter_ones().collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// `x || z`.
    pub fn to_symplectic(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    fn y_count(&self) -> usize {
        self.x.and_count(&self.z)
    }

    /// Symplectic product with `other` (true when they anticommute).
    #[inline]
    pub fn anticommutes(&self, other: &PauliWord) -> bool {
        let mut acc = 0u64;
        for k in 0..self.x.words().len() {
            acc ^= (self.x.words()[k] & other.z.words()[k]) ^ (self.z.words()[k] & other.x.words()[k]);
        }
        acc.count_ones() % 2 == 1
    }

    /// In-place right multiplication `self ← self · other`.
    pub fn mul_assign(&mut self, other: &PauliWord) {
        debug_assert_eq!(self.n_qubits(), other.n_qubits());
        let before = self.y_count() + other.y_count() + 2 * self.z.and_count(&other.x);
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
        let after = self.y_count();
        let total = self.phase as usize + other.phase as usize + before + 4 * self.n_qubits() - after;
        self.phase = (total % 4) as u8;
    }

    /// Restriction to the listed qubits, renumbered in list order.
    pub fn restrict(&self, qubits: &[usize]) -> PauliWord {
        let mut w = PauliWord::identity(qubits.len());
        for (k, &q) in qubits.iter().enumerate() {
            w.set(k, self.get(q));
        }
        w
    }
}

impl std::ops::Mul for &PauliWord {
    type Output = PauliWord;
    fn mul(self, rhs: &PauliWord) -> PauliWord {
        let mut out = self.clone();
        out.mul_assign(rhs);
        out
    }
}

/// Exact group product; errors on a length mismatch.
pub fn pauli_mul(a: &PauliWord, b: &PauliWord) -> Result<PauliWord> {
    if a.n_qubits() != b.n_qubits() {
        return Err(Error::LengthMismatch {
            left: a.n_qubits(),
            right: b.n_qubits(),
        });
    }
    Ok(a * b)
}

/// True when the symplectic form vanishes; phases are ignored.
pub fn commutes(a: &PauliWord, b: &PauliWord) -> Result<bool> {
    if a.n_qubits() != b.n_qubits() {
        return Err(Error::LengthMismatch {
            left: a.n_qubits(),
            right: b.n_qubits(),
        });
    }
    Ok(!a.anticommutes(b))
}

/// The standard symplectic form on `F2^{2n}`, pairing x-parts with z-parts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymplecticForm {
    pub dimension: usize,
}

impl SymplecticForm {
    pub fn new(n_qubits: usize) -> Self {
        SymplecticForm {
            dimension: 2 * n_qubits,
        }
    }

    /// `u^T λ v` for symplectic vectors `x || z`.
    pub fn eval(&self, u: &BitVec, v: &BitVec) -> bool {
        let n = self.dimension / 2;
        let (ux, uz) = (u.slice(0, n), u.slice(n, n));
        let (vx, vz) = (v.slice(0, n), v.slice(n, n));
        ux.dot(&vz) ^ uz.dot(&vx)
    }

    /// Matrix `λ = [[0, I], [I, 0]]`.
    pub fn matrix(&self) -> super::F2Matrix {
        let n = self.dimension / 2;
        let mut m = super::F2Matrix::zeros(self.dimension, self.dimension);
        for i in 0..n {
            m.set(i, n + i, true);
            m.set(n + i, i, true);
        }
        m
    }
}

impl fmt::Display for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(prefix)?;
        for q in 0..self.n_qubits() {
            write!(f, "{}", self.get(q).symbol())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PauliWord {
    type Err = Error;

    /// Dense form with optional sign prefix: `"XIZ"`, `"-YY"`, `"+iXZ"`, `"-iZ"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (phase, body) = if let Some(r) = s.strip_prefix("-i") {
            (3, r)
        } else if let Some(r) = s.strip_prefix("+i") {
            (1, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (2, r)
        } else if let Some(r) = s.strip_prefix('+') {
            (0, r)
        } else {
            (0, s)
        };
        let mut w = PauliWord::identity(body.chars().count());
        for (q, c) in body.chars().enumerate() {
            let p = match c {
                'I' | '_' => Pauli::I,
                'X' => Pauli::X,
                'Y' => Pauli::Y,
                'Z' => Pauli::Z,
                other => return Err(Error::Parse(format!("bad Pauli symbol `{other}`"))),
            };
            w.set(q, p);
        }
        Ok(w.with_phase(phase))
    }
}

impl Serialize for PauliWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PauliWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> PauliWord {
        s.parse().unwrap()
    }

    #[test]
    fn single_qubit_products() {
        let xy = pauli_mul(&w("X"), &w("Y")).unwrap();
        assert_eq!(xy.phase(), 1);
        assert_eq!(xy.get(0), Pauli::Z);

        let xx = pauli_mul(&w("X"), &w("X")).unwrap();
        assert!(xx.is_identity());
        assert_eq!(xx.phase(), 0);

        let zx = pauli_mul(&w("Z"), &w("X")).unwrap();
        assert_eq!(zx.phase(), 1);
        assert_eq!(zx.get(0), Pauli::Y);

        // Y·Y = I, Y·X = -iZ
        assert_eq!(pauli_mul(&w("Y"), &w("Y")).unwrap(), w("I"));
        assert_eq!(pauli_mul(&w("Y"), &w("X")).unwrap(), w("-iZ"));
    }

    #[test]
    fn commutation_examples() {
        assert!(!commutes(&w("XXI"), &w("IZZ")).unwrap());
        assert!(commutes(&w("XX"), &w("ZZ")).unwrap());
        assert!(commutes(&w("XIII"), &w("IIZZ")).unwrap());
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(pauli_mul(&w("X"), &w("XX")).is_err());
        assert!(commutes(&w("X"), &w("XX")).is_err());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["+XYZI", "-iZZ", "+iY", "-XX"] {
            assert_eq!(w(s).to_string(), s);
        }
    }

    #[test]
    fn symplectic_matrix_is_symmetric() {
        let m = SymplecticForm::new(3).matrix();
        assert_eq!(m.transpose(), m);
    }
}
