//! Laurent polynomials over F2 and matrices of them.
//!
//! Used for two things: checking that the trivalent coupled-chain model
//! reduces to the 3D toric code under invertible row/column operations, and
//! writing the translation-invariant X-cube generators symbolically before
//! expanding them on a finite torus.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::f2::{BitVec, PauliWord};

/// Finite sum of monomials `x^e` with coefficient 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    n_vars: usize,
    terms: BTreeSet<Vec<i64>>,
}

impl LaurentPoly {
    pub fn zero(n_vars: usize) -> Self {
        LaurentPoly {
            n_vars,
            terms: BTreeSet::new(),
        }
    }

    pub fn one(n_vars: usize) -> Self {
        Self::monomial(vec![0; n_vars])
    }

    pub fn monomial(exponent: Vec<i64>) -> Self {
        let n_vars = exponent.len();
        LaurentPoly {
            n_vars,
            terms: BTreeSet::from([exponent]),
        }
    }

    /// `x_i^power`.
    pub fn var(n_vars: usize, i: usize, power: i64) -> Self {
        let mut e = vec![0; n_vars];
        e[i] = power;
        Self::monomial(e)
    }

    /// `1 + x_i + ... + x_i^(len-1)`.
    pub fn geometric(n_vars: usize, i: usize, len: usize) -> Self {
        let mut p = Self::zero(n_vars);
        for k in 0..len as i64 {
            p.toggle(Self::var(n_vars, i, k).terms.into_iter().next().unwrap());
        }
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &[i64]> {
        self.terms.iter().map(Vec::as_slice)
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    /// A single monomial is exactly a unit of the Laurent ring.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn toggle(&mut self, e: Vec<i64>) {
        if !self.terms.remove(&e) {
            self.terms.insert(e);
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n_vars != other.n_vars {
            return Err(Error::VariableMismatch(self.n_vars, other.n_vars));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(LaurentPoly {
            n_vars: self.n_vars,
            terms: self.terms.symmetric_difference(&other.terms).cloned().collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.n_vars);
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        Ok(out)
    }

    /// Substitute `x_i -> x_i^-1` for every variable.
    pub fn antipode(&self) -> Self {
        LaurentPoly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|e| e.iter().map(|x| -x).collect()).collect(),
        }
    }

    /// Fold exponents into `0..period[i]`, i.e. reduce modulo `x_i^L - 1`.
    pub fn reduce(&self, period: &[usize]) -> Result<Self> {
        if period.len() != self.n_vars {
            return Err(Error::VariableMismatch(self.n_vars, period.len()));
        }
        let mut out = Self::zero(self.n_vars);
        for e in &self.terms {
            out.toggle(e.iter().zip(period).map(|(&x, &l)| x.rem_euclid(l as i64)).collect());
        }
        Ok(out)
    }

    /// Multiply by `x^shift`.
    pub fn shifted(&self, shift: &[i64]) -> Self {
        LaurentPoly {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|e| e.iter().zip(shift).map(|(a, b)| a + b).collect()).collect(),
        }
    }

    /// Componentwise minimum exponent over all terms.
    fn min_exponent(&self) -> Option<Vec<i64>> {
        let mut it = self.terms.iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.iter().zip(e).map(|(a, b)| *a.min(b)).collect()))
    }

    /// Exact division of ordinary polynomials (no negative exponents) under
    /// lex order. Returns `None` when `divisor` does not divide `self`.
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let lead = divisor.terms.iter().next_back()?.clone();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.n_vars);
        while let Some(top) = rem.terms.iter().next_back().cloned() {
            let q: Vec<i64> = top.iter().zip(&lead).map(|(a, b)| a - b).collect();
            if q.iter().any(|&x| x < 0) {
                return None;
            }
            rem = rem.add(&divisor.shifted(&q)).ok()?;
            quot.toggle(q);
        }
        Some(quot)
    }

    /// Parse `"x^-1*z+1"` style text with the given variable names.
    pub fn parse(text: &str, vars: &[&str]) -> Result<Self> {
        let n = vars.len();
        let mut p = Self::zero(n);
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if text == "0" {
            return Ok(p);
        }
        for term in text.split('+') {
            let mut e = vec![0i64; n];
            if term != "1" {
                for factor in term.split('*') {
                    let (name, power) = match factor.split_once('^') {
                        Some((name, pw)) => (name, pw.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?),
                        None => (factor, 1),
                    };
                    let i = vars
                        .iter()
                        .position(|v| *v == name)
                        .ok_or_else(|| Error::Parse(format!("unknown variable `{name}` in `{text}`")))?;
                    e[i] += power;
                }
            }
            p.toggle(e);
        }
        Ok(p)
    }

    pub fn to_string_with(&self, vars: &[&str]) -> String {
        Shown(self, vars).to_string()
    }
}

struct Shown<'a, 'b>(&'a LaurentPoly, &'a [&'b str]);

impl fmt::Display for Shown<'_, '_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return f.write_str("0");
        }
        let mut terms: Vec<String> = Vec::new();
        for e in self.0.terms.iter().rev() {
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| {
                    let name = self.1.get(i).map(|s| s.to_string()).unwrap_or_else(|| format!("x{}", i + 1));
                    if x == 1 {
                        name
                    } else {
                        format!("{name}^{x}")
                    }
                })
                .collect();
            terms.push(if factors.is_empty() { "1".into() } else { factors.join("*") });
        }
        f.write_str(&terms.join("+"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&["x", "y", "z"]))
    }
}

/// How `Hᵀ` treats the entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Transpose {
    /// Entrywise transpose only.
    Plain,
    /// Transpose and invert every variable.
    Antipode,
}

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    n_vars: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize, n_vars: usize) -> Self {
        LaurentMatrix {
            rows,
            cols,
            n_vars,
            entries: vec![LaurentPoly::zero(n_vars); rows * cols],
        }
    }

    pub fn identity(n: usize, n_vars: usize) -> Self {
        let mut m = Self::zeros(n, n, n_vars);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one(n_vars));
        }
        m
    }

    pub fn from_rows(n_vars: usize, rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        let n_rows = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(Error::LengthMismatch { left: row.len(), right: cols });
            }
            for p in row {
                if p.n_vars != n_vars {
                    return Err(Error::VariableMismatch(p.n_vars, n_vars));
                }
                entries.push(p);
            }
        }
        Ok(LaurentMatrix {
            rows: n_rows,
            cols,
            n_vars,
            entries,
        })
    }

    pub fn parse(rows: &[Vec<String>], vars: &[&str]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| LaurentPoly::parse(s, vars)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(vars.len(), parsed)
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: LaurentPoly) {
        self.entries[r * self.cols + c] = p;
    }

    pub fn row(&self, r: usize) -> &[LaurentPoly] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self, convention: Transpose) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.n_vars);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let p = self.get(r, c);
                t.set(
                    c,
                    r,
                    match convention {
                        Transpose::Plain => p.clone(),
                        Transpose::Antipode => p.antipode(),
                    },
                );
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n_vars != other.n_vars {
            return Err(Error::VariableMismatch(self.n_vars, other.n_vars));
        }
        if self.cols != other.rows {
            return Err(Error::LengthMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols, self.n_vars);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = LaurentPoly::zero(self.n_vars);
                for k in 0..self.cols {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b)?)?;
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn reduce(&self, period: &[usize]) -> Result<Self> {
        let entries = self.entries.iter().map(|p| p.reduce(period)).collect::<Result<Vec<_>>>()?;
        Ok(LaurentMatrix { entries, ..self.clone() })
    }

    /// Determinant by fraction-free elimination. Each row is first shifted by
    /// a monomial so that all exponents are non-negative; the shifts are undone
    /// at the end.
    pub fn determinant(&self) -> Result<LaurentPoly> {
        if self.rows != self.cols {
            return Err(Error::LengthMismatch {
                left: self.rows,
                right: self.cols,
            });
        }
        let n = self.rows;
        let nv = self.n_vars;
        let mut total_shift = vec![0i64; nv];
        let mut m: Vec<Vec<LaurentPoly>> = Vec::with_capacity(n);
        for r in 0..n {
            let row = self.row(r);
            let low = row
                .iter()
                .filter_map(LaurentPoly::min_exponent)
                .reduce(|a, b| a.iter().zip(&b).map(|(x, y)| *x.min(y)).collect())
                .unwrap_or_else(|| vec![0; nv]);
            let shift: Vec<i64> = low.iter().map(|x| -x).collect();
            for (t, s) in total_shift.iter_mut().zip(&shift) {
                *t += s;
            }
            m.push(row.iter().map(|p| p.shifted(&shift)).collect());
        }

        let mut prev = LaurentPoly::one(nv);
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
                return Ok(LaurentPoly::zero(nv));
            };
            m.swap(k, p);
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[i][j].mul(&m[k][k])?.add(&m[i][k].mul(&m[k][j])?)?;
                    m[i][j] = num
                        .exact_div(&prev)
                        .ok_or_else(|| Error::Parse("fraction-free elimination hit an inexact division".into()))?;
                }
                m[i][k] = LaurentPoly::zero(nv);
            }
            prev = m[k][k].clone();
        }
        let undo: Vec<i64> = total_shift.iter().map(|x| -x).collect();
        Ok(m[n - 1][n - 1].shifted(&undo))
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            writeln!(f, "{:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Transcribed generator matrix of the trivalent model with the two
/// invertible matrices that bring it to block form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrivalentData {
    pub variables: Vec<String>,
    #[serde(rename = "H")]
    pub h: Vec<Vec<String>>,
    pub r: Vec<Vec<String>>,
    pub l: Vec<Vec<String>>,
    pub target: Vec<Vec<String>>,
    /// Corrections applied on top of the verbatim transcription.
    #[serde(default)]
    pub errata: Vec<Erratum>,
}

/// One corrected entry. `verbatim` must match the transcribed text, so a
/// stale erratum is caught rather than silently overwriting new data.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Erratum {
    pub matrix: String,
    pub row: usize,
    pub col: usize,
    pub verbatim: String,
    pub value: String,
}

const TRIVALENT_JSON: &str = include_str!("../data/trivalent_model.json");
const TRIVALENT_SHA256: &str = include_str!("../data/trivalent_model.json.sha256");

/// Parse matrix data, refusing it unless its SHA-256 matches `expected_hex`.
pub fn load_trivalent(text: &str, expected_hex: &str) -> Result<TrivalentData> {
    let found = hex::encode(Sha256::digest(text.as_bytes()));
    let expected = expected_hex.split_whitespace().next().unwrap_or("").to_ascii_lowercase();
    if found != expected {
        return Err(Error::Checksum {
            name: "trivalent_model.json".into(),
            expected,
            found,
        });
    }
    Ok(serde_json::from_str(text)?)
}

pub fn builtin_trivalent() -> Result<TrivalentData> {
    load_trivalent(TRIVALENT_JSON, TRIVALENT_SHA256)
}

pub struct TrivalentMatrices {
    pub h: LaurentMatrix,
    pub r: LaurentMatrix,
    pub l: LaurentMatrix,
    pub target: LaurentMatrix,
}

impl TrivalentData {
    /// Matrices with the errata applied.
    pub fn matrices(&self) -> Result<TrivalentMatrices> {
        let mut fixed = self.clone();
        for e in &self.errata {
            let m = match e.matrix.as_str() {
                "H" => &mut fixed.h,
                "r" => &mut fixed.r,
                "l" => &mut fixed.l,
                "target" => &mut fixed.target,
                other => return Err(Error::Parse(format!("erratum names unknown matrix `{other}`"))),
            };
            let cell = m
                .get_mut(e.row)
                .and_then(|r| r.get_mut(e.col))
                .ok_or_else(|| Error::Parse(format!("erratum ({}, {}) out of range", e.row, e.col)))?;
            if *cell != e.verbatim {
                return Err(Error::Parse(format!(
                    "erratum for {}[{}][{}] expects `{}`, data has `{}`",
                    e.matrix, e.row, e.col, e.verbatim, cell
                )));
            }
            *cell = e.value.clone();
        }
        fixed.errata.clear();
        fixed.verbatim_matrices()
    }

    /// Matrices exactly as transcribed.
    pub fn verbatim_matrices(&self) -> Result<TrivalentMatrices> {
        let vars: Vec<&str> = self.variables.iter().map(String::as_str).collect();
        Ok(TrivalentMatrices {
            h: LaurentMatrix::parse(&self.h, &vars)?,
            r: LaurentMatrix::parse(&self.r, &vars)?,
            l: LaurentMatrix::parse(&self.l, &vars)?,
            target: LaurentMatrix::parse(&self.target, &vars)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub convention: Transpose,
    pub errata_applied: usize,
    pub identity: bool,
    /// Entries `(row, col)` where `r·Hᵀ·l` differs from the target.
    pub mismatches: Vec<(usize, usize)>,
    pub det_r: String,
    pub det_l: String,
    pub det_r_unit: bool,
    pub det_l_unit: bool,
}

impl ReductionReport {
    pub fn passed(&self) -> bool {
        self.identity && self.det_r_unit && self.det_l_unit
    }
}

/// The convention under which the transcribed product reproduces the target.
pub const CANONICAL_TRANSPOSE: Transpose = Transpose::Plain;

pub fn check_reduction(m: &TrivalentMatrices, vars: &[&str], convention: Transpose) -> Result<ReductionReport> {
    let product = m.r.mul(&m.h.transpose(convention))?.mul(&m.l)?;
    let mut mismatches = Vec::new();
    if product.n_rows() != m.target.n_rows() || product.n_cols() != m.target.n_cols() {
        return Err(Error::LengthMismatch {
            left: product.n_rows() * product.n_cols(),
            right: m.target.n_rows() * m.target.n_cols(),
        });
    }
    for i in 0..product.n_rows() {
        for j in 0..product.n_cols() {
            if product.get(i, j) != m.target.get(i, j) {
                mismatches.push((i, j));
            }
        }
    }
    let det_r = m.r.determinant()?;
    let det_l = m.l.determinant()?;
    Ok(ReductionReport {
        convention,
        errata_applied: 0,
        identity: mismatches.is_empty(),
        mismatches,
        det_r: det_r.to_string_with(vars),
        det_l: det_l.to_string_with(vars),
        det_r_unit: det_r.is_monomial(),
        det_l_unit: det_l.is_monomial(),
    })
}

/// Check the built-in trivalent model reduction under the canonical
/// transpose.
pub fn verify_trivalent_reduction() -> Result<ReductionReport> {
    let data = builtin_trivalent()?;
    let vars: Vec<&str> = data.variables.iter().map(String::as_str).collect();
    let mut report = check_reduction(&data.matrices()?, &vars, CANONICAL_TRANSPOSE)?;
    report.errata_applied = data.errata.len();
    Ok(report)
}

/// Rows `A^{1,i}` for `i = 2..n` followed by the cube row `B`. Columns are
/// the X block (one per axis) then the Z block.
pub fn xcube_poly_generators(n: usize) -> Result<LaurentMatrix> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!("X-cube generators need n >= 2, got {n}")));
    }
    let star = |i: usize| LaurentPoly::one(n).add(&LaurentPoly::var(n, i, -1));
    let mut rows = Vec::new();
    for i in 1..n {
        let mut row = vec![LaurentPoly::zero(n); 2 * n];
        row[0] = star(0)?;
        row[i] = star(i)?;
        rows.push(row);
    }
    let mut cube = vec![LaurentPoly::zero(n); 2 * n];
    for (axis, slot) in cube[n..].iter_mut().enumerate() {
        let mut p = LaurentPoly::one(n);
        for k in (0..n).filter(|&k| k != axis) {
            p = p.mul(&LaurentPoly::one(n).add(&LaurentPoly::var(n, k, 1))?)?;
        }
        *slot = p;
    }
    rows.push(cube);
    LaurentMatrix::from_rows(n, rows)
}

/// Expand each generator row at every translate on the `L^n` torus. A row
/// with `2q` columns describes `q` qubits per site: the X parts first, then
/// the Z parts. Qubit `v·q + k` is component `k` at site `v = Σ c_i L^i`, so
/// for the X-cube rows (`q = n`) it is the edge from `v` along axis `k`.
pub fn instantiate(rows: &LaurentMatrix, size: usize) -> Result<Vec<PauliWord>> {
    let n = rows.n_vars();
    if !rows.n_cols().is_multiple_of(2) {
        return Err(Error::InvalidParameters(format!("generator rows need an even column count, got {}", rows.n_cols())));
    }
    if size < 2 {
        return Err(Error::InvalidParameters(format!("torus size must be >= 2, got {size}")));
    }
    let q = rows.n_cols() / 2;
    let n_sites = size.pow(n as u32);
    let n_qubits = q * n_sites;
    let period = vec![size; n];
    let site = |e: &[i64]| e.iter().rev().fold(0usize, |acc, &c| acc * size + c as usize);
    let mut out = Vec::with_capacity(rows.n_rows() * n_sites);
    for r in 0..rows.n_rows() {
        for origin in 0..n_sites {
            let mut shift = Vec::with_capacity(n);
            let mut rem = origin;
            for _ in 0..n {
                shift.push((rem % size) as i64);
                rem /= size;
            }
            let mut x = BitVec::zeros(n_qubits);
            let mut z = BitVec::zeros(n_qubits);
            for (col, p) in rows.row(r).iter().enumerate() {
                let (block, k) = if col < q { (&mut x, col) } else { (&mut z, col - q) };
                for e in p.shifted(&shift).reduce(&period)?.terms() {
                    block.flip(site(e) * q + k);
                }
            }
            out.push(PauliWord::from_parts(x, z, 0)?);
        }
    }
    Ok(out)
}

/// Exchange the X and Z parts of every word.
pub fn hadamard_all(words: &[PauliWord]) -> Result<Vec<PauliWord>> {
    words
        .iter()
        .map(|w| PauliWord::from_parts(w.z_part().clone(), w.x_part().clone(), 0))
        .collect()
}

/// `log2 GSD` of the trivalent model on an `L×L×L` torus.
pub fn trivalent_gsd(size: usize) -> Result<usize> {
    let m = builtin_trivalent()?.matrices()?;
    let words = instantiate(&m.h, size)?;
    let n_qubits = words.first().map_or(0, PauliWord::n_qubits);
    crate::phases::gsd(&words, n_qubits)
}

/// `log2 GSD` of the X-cube model instantiated from the symbolic rows.
pub fn xcube_poly_gsd(n: usize, size: usize) -> Result<usize> {
    let words = instantiate(&xcube_poly_generators(n)?, size)?;
    crate::phases::gsd(&words, n * size.pow(n as u32))
}
