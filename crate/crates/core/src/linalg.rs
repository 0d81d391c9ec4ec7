//! Dense matrices and Gaussian elimination over any [`FiniteField`].
//!
//! Element index 0 is the additive identity in every field of the tower, so
//! `E::default()` serves as zero when allocating.

use crate::error::{Error, Result};
use crate::gf_tower::FiniteField;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Copy + Default> Matrix<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                expected: format!("{} entries for {rows}x{cols}", rows * cols),
                got: data.len().to_string(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![E::default(); rows * cols] }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<E>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::ShapeMismatch { expected: format!("{cols} columns"), got: r.len().to_string() });
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[E] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> E {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: E) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[E] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<E> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    /// Columns `idx` as a new matrix.
    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let mut out = Matrix::zeros(self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    pub fn stack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch { expected: format!("{} columns", self.cols), got: other.cols.to_string() });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data })
    }
}

pub fn identity<F: FiniteField>(f: &F, n: usize) -> Matrix<F::Elem>
{
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        m.set(i, i, f.one());
    }
    m
}

pub fn mul<F: FiniteField>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>>
{
    if a.cols != b.rows {
        return Err(Error::ShapeMismatch {
            expected: format!("{} rows", a.cols),
            got: b.rows.to_string(),
        });
    }
    let mut out = Matrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if f.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                out.set(i, j, f.add(out.get(i, j), f.mul(x, b.get(k, j))));
            }
        }
    }
    Ok(out)
}

/// `v · Mᵀ`, i.e. the inner product of `v` with every row of `m`.
pub fn mul_vec_transpose<F: FiniteField>(f: &F, v: &[F::Elem], m: &Matrix<F::Elem>) -> Vec<F::Elem> {
    (0..m.rows)
        .map(|r| {
            m.row(r)
                .iter()
                .zip(v)
                .fold(f.zero(), |acc, (&h, &x)| f.add(acc, f.mul(h, x)))
        })
        .collect()
}

/// Reduces `m` to reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: FiniteField>(f: &F, m: &mut Matrix<F::Elem>) -> Vec<usize>
{
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(m.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
        for j in c..cols {
            m.set(r, j, f.mul(m.get(r, j), inv));
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c);
            if f.is_zero(factor) {
                continue;
            }
            for j in c..cols {
                let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank by forward elimination on a scratch copy.
pub fn rank<F: FiniteField>(f: &F, m: &Matrix<F::Elem>) -> usize
{
    rank_of_rows(f, m.rows, m.cols, m.data.clone())
}

/// Rank of a row-major buffer, consumed as scratch space.
pub fn rank_of_rows<F: FiniteField>(f: &F, rows: usize, cols: usize, mut d: Vec<F::Elem>) -> usize {
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(d[i * cols + c])) else {
            continue;
        };
        if p != r {
            for j in c..cols {
                d.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(d[r * cols + c]).expect("pivot is nonzero");
        for i in r + 1..rows {
            let factor = f.mul(d[i * cols + c], inv);
            if f.is_zero(factor) {
                continue;
            }
            for j in c..cols {
                d[i * cols + j] = f.sub(d[i * cols + j], f.mul(factor, d[r * cols + j]));
            }
        }
        r += 1;
    }
    r
}

/// Basis (as rows) of the right kernel `{x : m·xᵀ = 0}`.
pub fn null_space<F: FiniteField>(f: &F, m: &Matrix<F::Elem>) -> Matrix<F::Elem>
{
    let mut red = m.clone();
    let pivots = rref(f, &mut red);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = Matrix::zeros(free.len(), m.cols);
    for (k, &fc) in free.iter().enumerate() {
        out.set(k, fc, f.one());
        for (i, &pc) in pivots.iter().enumerate() {
            out.set(k, pc, f.neg(red.get(i, fc)));
        }
    }
    out
}

pub fn inverse<F: FiniteField>(f: &F, m: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>>
{
    let n = m.rows;
    if m.cols != n {
        return Err(Error::ShapeMismatch { expected: "square matrix".into(), got: format!("{}x{}", m.rows, m.cols) });
    }
    let mut aug = Matrix::zeros(n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            aug.set(r, c, m.get(r, c));
        }
        aug.set(r, n + r, f.one());
    }
    let pivots = rref(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        let rank = pivots.iter().filter(|&&c| c < n).count();
        return Err(Error::RankDeficient { rank, expected: n });
    }
    let mut out = Matrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            out.set(r, c, aug.get(r, n + c));
        }
    }
    Ok(out)
}

/// Whether two matrices have the same row space.
pub fn same_row_space<F: FiniteField>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Result<bool>
{
    let ra = rank(f, a);
    Ok(ra == rank(f, b) && ra == rank(f, &a.stack(b)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf_tower::{BaseField, Fq};

    fn f3() -> BaseField {
        BaseField::new(3, 1).unwrap()
    }

    fn mat(rows: usize, cols: usize, v: &[u32]) -> Matrix<Fq> {
        Matrix::new(rows, cols, v.iter().map(|&x| Fq(x)).collect()).unwrap()
    }

    #[test]
    fn rank_and_null_space() {
        let f = f3();
        // second row = 2 * first
        let m = mat(2, 3, &[1, 2, 0, 2, 1, 0]);
        assert_eq!(rank(&f, &m), 1);
        let ns = null_space(&f, &m);
        assert_eq!(ns.rows(), 2);
        for r in 0..ns.rows() {
            assert!(mul_vec_transpose(&f, ns.row(r), &m).iter().all(|x| x.0 == 0));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let f = f3();
        let m = mat(2, 2, &[1, 1, 0, 2]);
        let inv = inverse(&f, &m).unwrap();
        assert_eq!(mul(&f, &m, &inv).unwrap(), identity(&f, 2));
        assert!(matches!(inverse(&f, &mat(2, 2, &[1, 2, 2, 1])), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn empty_matrices() {
        let f = f3();
        let m: Matrix<Fq> = Matrix::zeros(0, 3);
        assert_eq!(rank(&f, &m), 0);
        assert_eq!(null_space(&f, &m).rows(), 3);
    }
}
