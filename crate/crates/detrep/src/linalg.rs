//! Dense exact linear algebra over any of the coefficient fields.
//!
//! Everything is written against the [`Field`] trait, so the same code runs
//! over the rationals, `Q(mu)`, and `Q(mu, i)`. Pivoting is deterministic —
//! always the first nonzero entry scanning rows top-down within columns
//! left-to-right — which makes reduced row echelon forms, kernels, and
//! complements canonical for a given input. No-solution is reported as a
//! value (`None`), not an error; genuinely exceptional conditions
//! (singular inversion, containment violations) are typed errors.

use crate::field::Field;
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is singular")]
    Singular,
    #[error("subspace is not contained in the ambient span")]
    NotContained,
}

/// A dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldMatrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> FieldMatrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        FieldMatrix { rows, cols, data }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        FieldMatrix {
            rows,
            cols,
            data: (0..rows * cols).map(|_| F::zero()).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = F::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        FieldMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_cols(cols: Vec<Vec<F>>) -> Self {
        Self::from_rows(transpose_vecs(&cols))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut F {
        &mut self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row_vec(&self, r: usize) -> Vec<F> {
        (0..self.cols).map(|c| self.get(r, c).clone()).collect()
    }

    pub fn col_vec(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        let mut rows = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut row = self.row_vec(r);
            row.extend(rhs.row_vec(r));
            rows.push(row);
        }
        Self::from_rows(rows)
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        let mut out = Self::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(r, c).add(&a.mul(b));
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "mul_vec shape mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = F::zero();
                for c in 0..self.cols {
                    let a = self.get(r, c);
                    if !a.is_zero() && !v[c].is_zero() {
                        acc = acc.add(&a.mul(&v[c]));
                    }
                }
                acc
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form with deterministic pivoting (first nonzero
    /// entry top-down per column, columns left-to-right). Returns the
    /// reduced matrix and the pivot column indices.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0usize;
        for c in 0..m.cols {
            if pr == m.rows {
                break;
            }
            let Some(r) = (pr..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(pr, r);
            let inv = m
                .get(pr, c)
                .inv()
                .expect("pivot is nonzero by construction");
            for j in c..m.cols {
                let v = m.get(pr, j).mul(&inv);
                m.set(pr, j, v);
            }
            for r2 in 0..m.rows {
                if r2 == pr || m.get(r2, c).is_zero() {
                    continue;
                }
                let factor = m.get(r2, c).clone();
                for j in c..m.cols {
                    let v = m.get(r2, j).sub(&factor.mul(m.get(pr, j)));
                    m.set(r2, j, v);
                }
            }
            pivots.push(c);
            pr += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical kernel basis, one column per free variable, derived from
    /// the reduced row echelon form.
    pub fn kernel(&self) -> Self {
        let (r, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = Some(i);
            }
            v
        };
        let free: Vec<usize> = (0..self.cols).filter(|c| pivot_set[*c].is_none()).collect();
        let mut cols = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![F::zero(); self.cols];
            v[f] = F::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = r.get(i, f).neg();
            }
            cols.push(v);
        }
        if cols.is_empty() {
            Self::zero(self.cols, 0)
        } else {
            Self::from_cols(cols)
        }
    }

    /// One solution of `self * x = b` (free variables set to zero), or
    /// `None` when the system is inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows, "solve shape mismatch");
        let aug = self.hstack(&Self::from_cols(vec![b.to_vec()]));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    /// Exact inverse, or `LinalgError::Singular`.
    pub fn invert(&self) -> Result<Self, LinalgError> {
        assert_eq!(self.rows, self.cols, "invert requires a square matrix");
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n));
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
            return Err(LinalgError::Singular);
        }
        let mut out = Self::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(out)
    }

    /// Determinant by Gaussian elimination with row swaps.
    pub fn det(&self) -> F {
        assert_eq!(self.rows, self.cols, "det requires a square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = F::one();
        for c in 0..n {
            let Some(r) = (c..n).find(|&r| !m.get(r, c).is_zero()) else {
                return F::zero();
            };
            if r != c {
                m.swap_rows(c, r);
                det = det.neg();
            }
            let pivot = m.get(c, c).clone();
            det = det.mul(&pivot);
            let inv = pivot.inv().expect("pivot nonzero");
            for r2 in (c + 1)..n {
                if m.get(r2, c).is_zero() {
                    continue;
                }
                let factor = m.get(r2, c).mul(&inv);
                for j in c..n {
                    let v = m.get(r2, j).sub(&factor.mul(m.get(c, j)));
                    m.set(r2, j, v);
                }
            }
        }
        det
    }
}

impl<F: Field> fmt::Debug for FieldMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FieldMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| format!("{:?}", self.get(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

fn transpose_vecs<F: Field>(cols: &[Vec<F>]) -> Vec<Vec<F>> {
    let c = cols.len();
    let r = cols.first().map_or(0, Vec::len);
    assert!(cols.iter().all(|col| col.len() == r), "ragged columns");
    (0..r)
        .map(|i| (0..c).map(|j| cols[j][i].clone()).collect())
        .collect()
}

/// Incremental span tracker: a growing row-reduced basis used for rank and
/// membership bookkeeping without re-running full eliminations.
pub struct SpanTracker<F: Field> {
    dim: usize,
    /// Reduced rows sorted by pivot position; each has a 1 at its pivot.
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> SpanTracker<F> {
    pub fn new(dim: usize) -> Self {
        SpanTracker { dim, rows: Vec::new() }
    }

    fn reduce(&self, v: &mut [F]) {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let factor = v[*p].clone();
            for i in *p..self.dim {
                if !row[i].is_zero() {
                    v[i] = v[i].sub(&factor.mul(&row[i]));
                }
            }
        }
    }

    /// Returns `true` (and grows the span) iff `v` was independent.
    pub fn absorb(&mut self, v: &[F]) -> bool {
        assert_eq!(v.len(), self.dim, "span tracker dimension mismatch");
        let mut v = v.to_vec();
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero leading entry");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = x.mul(&inv);
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v));
        true
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        v.iter().all(F::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Columns of `ambient` that extend the column span of `sub` to the full
/// column span of `ambient`, chosen greedily left-to-right (deterministic).
/// Errors if some column of `sub` falls outside the span of `ambient`.
pub fn complement<F: Field>(
    sub: &FieldMatrix<F>,
    ambient: &FieldMatrix<F>,
) -> Result<FieldMatrix<F>, LinalgError> {
    assert_eq!(sub.rows(), ambient.rows(), "complement shape mismatch");
    let mut ambient_span = SpanTracker::new(ambient.rows());
    for c in 0..ambient.cols() {
        ambient_span.absorb(&ambient.col_vec(c));
    }
    let mut tracker = SpanTracker::new(sub.rows());
    for c in 0..sub.cols() {
        let col = sub.col_vec(c);
        if !ambient_span.contains(&col) {
            return Err(LinalgError::NotContained);
        }
        tracker.absorb(&col);
    }
    let mut kept = Vec::new();
    for c in 0..ambient.cols() {
        let col = ambient.col_vec(c);
        if tracker.absorb(&col) {
            kept.push(col);
        }
    }
    Ok(if kept.is_empty() {
        FieldMatrix::zero(ambient.rows(), 0)
    } else {
        FieldMatrix::from_cols(kept)
    })
}
