//! Subspaces of `K^n` kept in sparse reduced row echelon form.

use super::field::{FieldSpec, Scalar};
use super::matrix::Matrix;

/// Sparse vector: `(column, nonzero value)` pairs sorted by column.
pub type SparseVec = Vec<(usize, Scalar)>;

pub fn sparse_from_dense(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, s)| !s.is_zero())
        .map(|(i, s)| (i, s.clone()))
        .collect()
}

/// A subspace given by an incrementally maintained RREF basis.
///
/// Every basis row starts with its pivot entry, which equals one, and no
/// other row has a nonzero entry in that column. The pivot of a row is its
/// smallest column index.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: FieldSpec,
    ambient_dim: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
}

impl Subspace {
    pub fn new(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace { field, ambient_dim, rows: Vec::new(), pivot_row: vec![None; ambient_dim] }
    }

    pub fn from_dense<'a>(
        field: FieldSpec,
        ambient_dim: usize,
        vectors: impl IntoIterator<Item = &'a [Scalar]>,
    ) -> Self {
        let mut s = Subspace::new(field, ambient_dim);
        for v in vectors {
            s.insert_dense(v);
        }
        s
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient_dim
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.ambient_dim).filter(|&c| self.pivot_row[c].is_some()).collect()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Columns without a pivot; their unit vectors span a complement.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ambient_dim).filter(|&c| self.pivot_row[c].is_none()).collect()
    }

    /// The basis as a dense RREF matrix, rows ordered by pivot.
    pub fn basis_matrix(&self) -> Matrix {
        let rows = self
            .pivots()
            .into_iter()
            .map(|c| self.dense_row(self.pivot_row[c].unwrap()))
            .collect();
        Matrix::from_rows(self.field, self.ambient_dim, rows)
    }

    fn dense_row(&self, r: usize) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.ambient_dim];
        for (c, v) in &self.rows[r] {
            out[*c] = v.clone();
        }
        out
    }

    /// Residual of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let mut buf: Vec<Scalar> = Vec::new();
        let mut touched: Vec<usize> = Vec::new();
        let mut seen = vec![false; self.ambient_dim];
        buf.resize(self.ambient_dim, self.field.zero());
        for (c, a) in v {
            buf[*c] = a.clone();
            seen[*c] = true;
            touched.push(*c);
        }
        for (c, a) in v {
            let Some(r) = self.pivot_row[*c] else { continue };
            for (cc, b) in &self.rows[r] {
                buf[*cc] = buf[*cc].sub_mul(a, b);
                if !seen[*cc] {
                    seen[*cc] = true;
                    touched.push(*cc);
                }
            }
        }
        touched.sort_unstable();
        let zero = self.field.zero();
        touched
            .into_iter()
            .filter_map(|c| {
                let v = std::mem::replace(&mut buf[c], zero.clone());
                (!v.is_zero()).then_some((c, v))
            })
            .collect()
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn contains_dense(&self, v: &[Scalar]) -> bool {
        self.contains(&sparse_from_dense(v))
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[(usize, Scalar)]) -> bool {
        if self.is_full() {
            return false;
        }
        let mut w = self.reduce(v);
        if w.is_empty() {
            return false;
        }
        let inv = w[0].1.inv().expect("nonzero leading entry");
        for (_, a) in w.iter_mut() {
            *a = &*a * &inv;
        }
        let pivot = w[0].0;
        for row in self.rows.iter_mut() {
            if let Ok(pos) = row.binary_search_by_key(&pivot, |(c, _)| *c) {
                let factor = row[pos].1.clone();
                *row = axpy(row, &factor, &w);
            }
        }
        self.pivot_row[pivot] = Some(self.rows.len());
        self.rows.push(w);
        true
    }

    pub fn insert_dense(&mut self, v: &[Scalar]) -> bool {
        self.insert(&sparse_from_dense(v))
    }

    /// Joins another subspace of the same ambient space into this one.
    pub fn absorb(&mut self, other: &Subspace) {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        for r in &other.rows {
            self.insert(r);
        }
    }

    /// Number of the given vectors that are independent modulo this subspace.
    pub fn rank_modulo<'a>(&self, vectors: impl IntoIterator<Item = &'a SparseVec>) -> usize {
        let mut s = self.clone();
        vectors.into_iter().filter(|v| s.insert(v)).count()
    }
}

/// `row - factor * w`, merging sorted sparse vectors.
fn axpy(row: &[(usize, Scalar)], factor: &Scalar, w: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(row.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < w.len() {
        let take_row = j == w.len() || (i < row.len() && row[i].0 < w[j].0);
        let take_w = i == row.len() || (j < w.len() && w[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_w {
            let v = -&(factor * &w[j].1);
            if !v.is_zero() {
                out.push((w[j].0, v));
            }
            j += 1;
        } else {
            let v = row[i].1.sub_mul(factor, &w[j].1);
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::rref;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Q.from_i64(x)).collect()
    }

    #[test]
    fn incremental_matches_batch_rref() {
        let vecs = [v(&[0, 2, 4, 1]), v(&[1, 1, 0, 0]), v(&[1, 3, 4, 1]), v(&[0, 0, 0, 5])];
        let s = Subspace::from_dense(Q, 4, vecs.iter().map(|x| x.as_slice()));
        let m = Matrix::from_rows(Q, 4, vecs.to_vec());
        let r = rref(&m);
        assert_eq!(s.dim(), r.rank);
        assert_eq!(s.pivots(), r.pivots);
        let mut batch = Vec::new();
        for i in 0..r.rank {
            batch.push(r.reduced.row(i).to_vec());
        }
        assert_eq!(s.basis_matrix(), Matrix::from_rows(Q, 4, batch));
    }

    #[test]
    fn membership() {
        let s = Subspace::from_dense(Q, 3, [v(&[1, 0, 1]).as_slice(), v(&[0, 1, 1]).as_slice()]);
        assert!(s.contains_dense(&v(&[2, 3, 5])));
        assert!(!s.contains_dense(&v(&[0, 0, 1])));
        assert_eq!(s.free_columns(), vec![2]);
        assert_eq!(s.rank_modulo([&sparse_from_dense(&v(&[0, 0, 1]))]), 1);
    }
}
