use super::BitVec;
use crate::error::{Error, Result};

/// Dense row-major matrix over F2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Matrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        F2Matrix {
            cols,
            rows: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// All rows must share one length.
    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch {
                left: bad.len(),
                right: cols,
            });
        }
        Ok(F2Matrix { cols, rows })
    }

    pub fn from_dense(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| BitVec::from_indices(cols, r.iter().enumerate().filter(|(_, &b)| b != 0).map(|(i, _)| i)))
            .collect();
        F2Matrix { cols, rows }
    }

    #[inline]
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.rows[r].set(c, v);
    }

    pub fn push_row(&mut self, row: BitVec) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.cols);
        BitVec::from_bools(&self.rows.iter().map(|r| r.dot(v)).collect::<Vec<_>>())
    }

    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.cols, other.n_rows());
        let mut out = F2Matrix::zeros(self.n_rows(), other.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for k in row.iter_ones() {
                out.rows[i].xor_assign(&other.rows[k]);
            }
        }
        out
    }

    /// In-place reduced row echelon form; returns pivot columns in row order.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        let n_rows = self.rows.len();
        for c in 0..self.cols {
            if r == n_rows {
                break;
            }
            let Some(p) = (r..n_rows).find(|&i| self.rows[i].get(c)) else {
                continue;
            };
            self.rows.swap(r, p);
            let pivot_row = self.rows[r].clone();
            for i in 0..n_rows {
                if i != r && self.rows[i].get(c) {
                    self.rows[i].xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut basis = SpanBasis::new(self.cols);
        for row in &self.rows {
            basis.insert(row.clone());
        }
        basis.rank()
    }
}

pub fn f2_rank(m: &F2Matrix) -> usize {
    m.rank()
}

/// Basis of `{v : m·v = 0}`.
pub fn f2_nullspace(m: &F2Matrix) -> Vec<BitVec> {
    let mut a = m.clone();
    let pivots = a.rref_in_place();
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = BitVec::zeros(m.cols);
        v.set(free, true);
        for (row, &p) in pivots.iter().enumerate() {
            if a.rows[row].get(free) {
                v.set(p, true);
            }
        }
        basis.push(v);
    }
    basis
}

/// Some `v` with `m·v = rhs`, or `None` when `rhs` is outside the column space.
pub fn f2_solve(m: &F2Matrix, rhs: &BitVec) -> Option<BitVec> {
    assert_eq!(rhs.len(), m.n_rows());
    let mut aug = F2Matrix::zeros(m.n_rows(), m.cols + 1);
    for (i, row) in m.rows.iter().enumerate() {
        let mut r = row.concat(&BitVec::zeros(1));
        if rhs.get(i) {
            r.set(m.cols, true);
        }
        aug.rows[i] = r;
    }
    let pivots = aug.rref_in_place();
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut v = BitVec::zeros(m.cols);
    for (row, &p) in pivots.iter().enumerate() {
        if aug.rows[row].get(m.cols) {
            v.set(p, true);
        }
    }
    Some(v)
}

/// Incrementally built echelon basis of a subspace of `F2^dim`.
///
/// Each stored row carries the combination of inserted vectors that produced
/// it, so members can be expanded back into the original generators.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    dim: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
    combos: Vec<BitVec>,
    inserted: usize,
    track: bool,
    dim_combo: usize,
}

impl SpanBasis {
    pub fn new(dim: usize) -> Self {
        SpanBasis {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: Vec::new(),
            inserted: 0,
            track: false,
            dim_combo: 0,
        }
    }

    /// Basis that records generator combinations for up to `capacity`
    /// inserted vectors.
    pub fn with_tracking(dim: usize, capacity: usize) -> Self {
        SpanBasis {
            track: true,
            dim_combo: capacity,
            ..Self::new(dim)
        }
    }

    pub fn from_vectors<'a>(dim: usize, vs: impl IntoIterator<Item = &'a BitVec>) -> Self {
        let mut b = Self::new(dim);
        for v in vs {
            b.insert(v.clone());
        }
        b
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.rows
    }

    /// Reduces `v` against the basis; returns the residual and, when tracking,
    /// the combination of inserted generators that was subtracted.
    pub fn reduce(&self, v: &BitVec) -> (BitVec, Option<BitVec>) {
        let mut v = v.clone();
        let mut combo = self.track.then(|| BitVec::zeros(self.dim_combo));
        for (k, row) in self.rows.iter().enumerate() {
            if v.get(self.pivots[k]) {
                v.xor_assign(row);
                if let Some(c) = combo.as_mut() {
                    c.xor_assign(&self.combos[k]);
                }
            }
        }
        (v, combo)
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Generator combination equal to `v`, if `v` lies in the span.
    pub fn express(&self, v: &BitVec) -> Option<BitVec> {
        let (res, combo) = self.reduce(v);
        if res.is_zero() {
            combo
        } else {
            None
        }
    }

    /// Adds `v`; returns true if it enlarged the span.
    pub fn insert(&mut self, v: BitVec) -> bool {
        assert_eq!(v.len(), self.dim);
        let index = self.inserted;
        self.inserted += 1;
        let (res, combo) = self.reduce(&v);
        match res.first_one() {
            None => false,
            Some(p) => {
                self.rows.push(res);
                self.pivots.push(p);
                if let Some(mut c) = combo {
                    c.flip(index);
                    self.combos.push(c);
                }
                true
            }
        }
    }

    pub fn contains_span(&self, other: &SpanBasis) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn same_span(&self, other: &SpanBasis) -> bool {
        self.rank() == other.rank() && self.contains_span(other)
    }
}
