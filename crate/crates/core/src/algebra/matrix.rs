//! Dense matrices over an exact field and reduced row echelon form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    nrows: usize,
    ncols: usize,
    data: Vec<Scalar>,
}

/// Output of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, nrows: usize, ncols: usize) -> Self {
        Matrix { field, nrows, ncols, data: vec![field.zero(); nrows * ncols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `ncols`.
    pub fn from_rows(field: FieldSpec, ncols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            assert_eq!(r.len(), ncols, "ragged matrix");
            data.extend(r);
        }
        Matrix { field, nrows, ncols, data }
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            field,
            ncols,
            rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect(),
        )
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.ncols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.ncols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.ncols..(r + 1) * self.ncols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.nrows).map(move |r| self.row(r))
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.nrows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.ncols, self.nrows);
        for r in 0..self.nrows {
            for c in 0..self.ncols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols, other.nrows);
        let mut out = Matrix::zeros(self.field, self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let v = out.get(i, j) + &(a * other.get(k, j));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, r) in self.rows().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let cells: Vec<String> = r.iter().map(|s| s.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        f.write_str("]")
    }
}

/// Reduced row echelon form. Over `QQ` each row is first scaled to a
/// primitive integer vector and elimination runs fraction-free.
pub fn rref(m: &Matrix) -> Rref {
    match m.field {
        FieldSpec::Rationals => rref_rational(m),
        FieldSpec::PrimeField(_) => rref_field(m),
    }
}

/// `ncols - rank`.
pub fn kernel_dim(m: &Matrix) -> usize {
    m.ncols - rref(m).rank
}

fn rref_field(m: &Matrix) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.ncols {
        if row == a.nrows {
            break;
        }
        let Some(p) = (row..a.nrows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        swap_rows(&mut a, row, p);
        let inv = a.get(row, col).inv().expect("nonzero pivot");
        for c in col..a.ncols {
            let v = a.get(row, c) * &inv;
            a.set(row, c, v);
        }
        for r in 0..a.nrows {
            if r == row || a.get(r, col).is_zero() {
                continue;
            }
            let factor = a.get(r, col).clone();
            for c in col..a.ncols {
                let v = a.get(r, c).sub_mul(&factor, a.get(row, c));
                a.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    Rref { rank: pivots.len(), reduced: a, pivots }
}

fn swap_rows(a: &mut Matrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..a.ncols {
        a.data.swap(i * a.ncols + c, j * a.ncols + c);
    }
}

fn primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            *v /= &g;
        }
    }
}

fn rref_rational(m: &Matrix) -> Rref {
    let mut rows: Vec<Vec<BigInt>> = m
        .rows()
        .map(|r| {
            let lcm = r.iter().fold(BigInt::one(), |l, s| {
                l.lcm(s.as_rational().expect("rational entry").denom())
            });
            let mut ints: Vec<BigInt> = r
                .iter()
                .map(|s| {
                    let q = s.as_rational().unwrap();
                    q.numer() * (&lcm / q.denom())
                })
                .collect();
            primitive(&mut ints);
            ints
        })
        .collect();

    let ncols = m.ncols;
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == rows.len() {
            break;
        }
        let Some(p) = (row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(row, p);
        for r in 0..rows.len() {
            if r == row || rows[r][col].is_zero() {
                continue;
            }
            let a = rows[row][col].clone();
            let b = rows[r][col].clone();
            let (pivot_row, other) = if r < row {
                let (lo, hi) = rows.split_at_mut(row);
                (&hi[0], &mut lo[r])
            } else {
                let (lo, hi) = rows.split_at_mut(r);
                (&lo[row], &mut hi[0])
            };
            for c in 0..ncols {
                other[c] = &other[c] * &a - &pivot_row[c] * &b;
            }
            primitive(other);
        }
        pivots.push(col);
        row += 1;
    }

    let mut reduced = Matrix::zeros(FieldSpec::Rationals, m.nrows, ncols);
    for (r, ints) in rows.iter().enumerate() {
        let lead = pivots.get(r).map(|&c| ints[c].clone());
        for (c, v) in ints.iter().enumerate() {
            let q = match &lead {
                Some(l) => BigRational::new(v.clone(), l.clone()),
                None => BigRational::from_integer(v.clone()),
            };
            reduced.set(r, c, Scalar::Q(q));
        }
    }
    Rref { rank: pivots.len(), reduced, pivots }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn identity_rank() {
        let r = rref(&Matrix::identity(Q, 2));
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
    }

    #[test]
    fn zero_rank() {
        assert_eq!(rref(&Matrix::zeros(Q, 3, 3)).rank, 0);
        assert_eq!(kernel_dim(&Matrix::zeros(Q, 2, 5)), 5);
    }

    #[test]
    fn dependent_rows() {
        let m = Matrix::from_i64(Q, &[&[1, 2], &[2, 4]]);
        let r = rref(&m);
        assert_eq!(r.rank, 1);
        assert_eq!(r.reduced, Matrix::from_i64(Q, &[&[1, 2], &[0, 0]]));
        assert_eq!(kernel_dim(&Matrix::from_i64(Q, &[&[1, 1], &[1, 1]])), 1);
        assert_eq!(kernel_dim(&Matrix::identity(Q, 3)), 0);
    }

    #[test]
    fn rational_rref_normalizes_pivots() {
        let half = Q.one() * Q.from_i64(2).inv().unwrap();
        let m = Matrix::from_rows(
            Q,
            3,
            vec![vec![Q.from_i64(2), Q.from_i64(1), Q.zero()], vec![half, Q.zero(), Q.one()]],
        );
        let r = rref(&m);
        assert_eq!(r.rank, 2);
        // [[2,1,0],[1/2,0,1]] -> [[1,0,2],[0,1,-4]]
        assert_eq!(r.reduced, Matrix::from_i64(Q, &[&[1, 0, 2], &[0, 1, -4]]));
    }

    #[test]
    fn prime_field_rref() {
        let f = FieldSpec::PrimeField(5);
        let m = Matrix::from_i64(f, &[&[2, 4], &[1, 2]]);
        assert_eq!(rref(&m).rank, 1);
        assert_eq!(rref(&m).reduced, Matrix::from_i64(f, &[&[1, 2], &[0, 0]]));
    }
}
