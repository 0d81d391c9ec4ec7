//! Rank and rank distance over `F_q`, and the bridge between the matrix
//! space `F_q^{N×n}` and the vector space `F_{q^N}^n`.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::gf_tower::{add_digits, neg_digits, BaseField, FieldTower, FiniteField, Fq, FqN};
use crate::linalg::{self, Matrix};

/// An `N×n` matrix over `F_q` with `n ≤ N`; the vertex type of the matrix graph.
///
/// [`MatFq::new`] transposes wider-than-tall input and records it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatFq {
    rows: usize,
    cols: usize,
    entries: Vec<Fq>,
    transposed: bool,
}

impl MatFq {
    pub fn new(rows: usize, cols: usize, entries: Vec<Fq>) -> Result<Self> {
        let m = Self::raw(rows, cols, entries)?;
        Ok(if cols > rows { m.transpose_recorded() } else { m })
    }

    /// No orientation normalization.
    fn raw(rows: usize, cols: usize, entries: Vec<Fq>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                expected: format!("{} entries", rows * cols),
                got: entries.len().to_string(),
            });
        }
        Ok(MatFq { rows, cols, entries, transposed: false })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        let (rows, cols) = if cols > rows { (cols, rows) } else { (rows, cols) };
        MatFq { rows, cols, entries: vec![Fq(0); rows * cols], transposed: false }
    }

    fn transpose_recorded(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c));
            }
        }
        MatFq { rows: self.cols, cols: self.rows, entries, transposed: !self.transposed }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Fq] {
        &self.entries
    }

    /// True when the constructor swapped the orientation of its input.
    pub fn was_transposed(&self) -> bool {
        self.transposed
    }

    pub fn get(&self, r: usize, c: usize) -> Fq {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Fq) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn to_matrix(&self) -> Matrix<Fq> {
        Matrix::new(self.rows, self.cols, self.entries.clone()).expect("shape is consistent")
    }

    fn check_shape(&self, other: &MatFq) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch {
                expected: format!("{}x{}", self.rows, self.cols),
                got: format!("{}x{}", other.rows, other.cols),
            });
        }
        Ok(())
    }

    pub fn add(&self, f: &BaseField, other: &MatFq) -> Result<MatFq> {
        self.check_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(MatFq { entries, ..self.clone() })
    }

    pub fn sub(&self, f: &BaseField, other: &MatFq) -> Result<MatFq> {
        self.check_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(MatFq { entries, ..self.clone() })
    }

    /// Row-major base-`q` index, first entry most significant.
    pub fn to_index(&self, q: u64) -> u64 {
        self.entries.iter().fold(0u64, |acc, e| acc * q + e.0 as u64)
    }

    pub fn from_index(mut index: u64, rows: usize, cols: usize, q: u64) -> MatFq {
        let mut entries = vec![Fq(0); rows * cols];
        for e in entries.iter_mut().rev() {
            *e = Fq((index % q) as u32);
            index /= q;
        }
        MatFq { rows, cols, entries, transposed: false }
    }

    /// Base-`q` digit string in row-major order, most significant first.
    pub fn label(&self, q: u64) -> String {
        digits_to_label(self.entries.iter().map(|e| e.0 as u64), q)
    }

    pub fn from_label(label: &str, rows: usize, cols: usize, q: u64) -> Result<MatFq> {
        let digits = label_to_digits(label, q)?;
        if digits.len() != rows * cols {
            return Err(Error::Parse(format!("label {label:?} has {} digits, expected {}", digits.len(), rows * cols)));
        }
        Self::raw(rows, cols, digits.into_iter().map(|d| Fq(d as u32)).collect())
    }

    /// Array of rows, each an array of `F_q` coefficient arrays.
    pub fn to_json(&self, f: &BaseField) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|r| {
                    Value::Array((0..self.cols).map(|c| serde_json::json!(f.coeffs(self.get(r, c)))).collect())
                })
                .collect(),
        )
    }

    pub fn from_json(f: &BaseField, v: &Value) -> Result<MatFq> {
        let rows: Vec<Vec<Vec<u32>>> =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("matrix: {e}")))?;
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::new();
        for r in &rows {
            if r.len() != cols {
                return Err(Error::Parse("ragged matrix rows".into()));
            }
            for e in r {
                if e.len() != f.degree() {
                    return Err(Error::Parse(format!("F_q element needs {} coefficients", f.degree())));
                }
                entries.push(f.from_coeffs(e)?);
            }
        }
        MatFq::new(rows.len(), cols, entries)
    }
}

fn digits_to_label(digits: impl Iterator<Item = u64>, q: u64) -> String {
    if q <= 36 {
        digits.map(|d| char::from_digit(d as u32, 36).unwrap()).collect()
    } else {
        digits.map(|d| d.to_string()).collect::<Vec<_>>().join(":")
    }
}

fn label_to_digits(label: &str, q: u64) -> Result<Vec<u64>> {
    let digits: Vec<u64> = if q <= 36 {
        label
            .chars()
            .map(|ch| ch.to_digit(36).map(u64::from).ok_or_else(|| Error::Parse(format!("bad digit {ch:?}"))))
            .collect::<Result<_>>()?
    } else {
        label
            .split(':')
            .map(|s| s.parse::<u64>().map_err(|_| Error::Parse(format!("bad digit {s:?}"))))
            .collect::<Result<_>>()?
    };
    if let Some(&d) = digits.iter().find(|&&d| d >= q) {
        return Err(Error::Parse(format!("digit {d} out of range for q = {q}")));
    }
    Ok(digits)
}

/// A length-`n` vector over `F_{q^N}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VecExt(pub Vec<FqN>);

impl VecExt {
    pub fn zeros(n: usize) -> Self {
        VecExt(vec![FqN(0); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[FqN] {
        &self.0
    }

    /// Base-`q^N` index, first coordinate most significant.
    pub fn to_index(&self, order: u64) -> u64 {
        self.0.iter().fold(0, |acc, x| acc * order + x.0)
    }

    pub fn from_index(mut index: u64, n: usize, order: u64) -> Self {
        let mut v = vec![FqN(0); n];
        for x in v.iter_mut().rev() {
            *x = FqN(index % order);
            index /= order;
        }
        VecExt(v)
    }

    pub fn sub(&self, f: &impl FiniteField<Elem = FqN>, other: &VecExt) -> Result<VecExt> {
        if self.len() != other.len() {
            return Err(Error::ShapeMismatch { expected: self.len().to_string(), got: other.len().to_string() });
        }
        Ok(VecExt(self.0.iter().zip(&other.0).map(|(&a, &b)| f.sub(a, b)).collect()))
    }
}

/// Rank over `F_q` by Gaussian elimination.
pub fn rank(f: &BaseField, m: &MatFq) -> usize {
    linalg::rank_of_rows(f, m.rows, m.cols, m.entries.clone())
}

pub fn rank_distance(f: &BaseField, a: &MatFq, b: &MatFq) -> Result<usize> {
    Ok(rank(f, &a.sub(f, b)?))
}

/// Column `j` of the result is the basis expansion of `v_j`.
pub fn vector_to_matrix(tower: &FieldTower, v: &VecExt) -> MatFq {
    let (rows, cols) = (tower.degree(), v.len());
    let mut m = MatFq::raw(rows, cols, vec![Fq(0); rows * cols]).expect("shape");
    for (j, &x) in v.0.iter().enumerate() {
        for (i, c) in tower.expand(x).into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    if cols > rows {
        m.transpose_recorded()
    } else {
        m
    }
}

pub fn matrix_to_vector(tower: &FieldTower, m: &MatFq) -> Result<VecExt> {
    let m = if m.transposed { m.transpose_recorded() } else { m.clone() };
    if m.rows != tower.degree() {
        return Err(Error::ShapeMismatch { expected: format!("{} rows", tower.degree()), got: m.rows.to_string() });
    }
    let mut out = Vec::with_capacity(m.cols);
    for c in 0..m.cols {
        let col: Vec<Fq> = (0..m.rows).map(|r| m.get(r, c)).collect();
        out.push(tower.contract(&col)?);
    }
    Ok(VecExt(out))
}

/// Maximal number of `F_q`-independent coordinates of `v`.
pub fn column_rank(tower: &FieldTower, v: &[FqN]) -> usize {
    let rows = v.len();
    let cols = tower.degree();
    let mut data = Vec::with_capacity(rows * cols);
    for &x in v {
        data.extend(tower.expand(x));
    }
    linalg::rank_of_rows(tower.base(), rows, cols, data)
}

/// Number of `N×n` matrices over `F_q` of rank `k`:
/// `∏_{i<k} (q^N - q^i)(q^n - q^i) / ∏_{i<k} (q^k - q^i)`.
pub fn count_rank_k(rows: usize, cols: usize, q: u64, k: usize) -> Result<BigUint> {
    if k > rows.min(cols) {
        return Err(Error::InvalidParameter(format!("rank {k} exceeds min({rows}, {cols})")));
    }
    let q = BigUint::from(q);
    let qn = q.pow(rows as u32);
    let qm = q.pow(cols as u32);
    let qk = q.pow(k as u32);
    let (mut num, mut den) = (BigUint::one(), BigUint::one());
    let mut qi = BigUint::one();
    for _ in 0..k {
        num *= (&qn - &qi) * (&qm - &qi);
        den *= &qk - &qi;
        qi *= &q;
    }
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// `q^{rows·cols}`.
pub fn space_size(rows: usize, cols: usize, q: u64) -> BigUint {
    BigUint::from(q).pow((rows * cols) as u32)
}

/// All `rows×cols` matrices in lexicographic row-major order.
pub fn enumerate_matrices(
    rows: usize,
    cols: usize,
    q: u64,
    budget: Budget,
) -> Result<impl Iterator<Item = MatFq>> {
    let total = budget.admit(&space_size(rows, cols, q))?;
    Ok((0..total).map(move |i| MatFq::from_index(i, rows, cols, q)))
}

/// `(q^N - 1)(q^n - 1)/(q - 1)`.
pub fn rank_one_count(rows: usize, cols: usize, q: u64) -> BigUint {
    let q_big = BigUint::from(q);
    (q_big.pow(rows as u32) - 1u32) * (q_big.pow(cols as u32) - 1u32) / (q - 1)
}

/// Every rank-one matrix exactly once, as `u · wᵀ` with `u ≠ 0` and the
/// first nonzero entry of `w` equal to one.
pub fn enumerate_rank_one(
    f: &BaseField,
    rows: usize,
    cols: usize,
    budget: Budget,
) -> Result<impl Iterator<Item = MatFq> + '_> {
    let (rows, cols) = if cols > rows { (cols, rows) } else { (rows, cols) };
    budget.admit(&rank_one_count(rows, cols, f.order()))?;
    let q = f.order();
    let us = q.pow(rows as u32);
    let ws = q.pow(cols as u32);
    let normalized = move |w: &[Fq]| w.iter().find(|e| e.0 != 0).is_some_and(|e| e.0 == 1);
    Ok((1..us).flat_map(move |ui| {
        let u = MatFq::from_index(ui, 1, rows, q).entries;
        (1..ws).filter_map(move |wi| {
            let w = MatFq::from_index(wi, 1, cols, q).entries;
            if !normalized(&w) {
                return None;
            }
            let mut m = MatFq::raw(rows, cols, vec![Fq(0); rows * cols]).expect("shape");
            for (r, &a) in u.iter().enumerate() {
                for (c, &b) in w.iter().enumerate() {
                    m.set(r, c, f.mul(a, b));
                }
            }
            Some(m)
        })
    }))
}

/// Index arithmetic on `F_q^{N×n}`: vertex indices are base-`p` digit strings,
/// so translation is carry-free digit addition.
#[derive(Debug, Clone, Copy)]
pub struct IndexSpace {
    p: u64,
}

impl IndexSpace {
    pub fn new(f: &BaseField) -> Self {
        IndexSpace { p: f.p() }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        add_digits(a, b, self.p)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        add_digits(a, neg_digits(b, self.p), self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, m: usize) -> BaseField {
        BaseField::new(p, m).unwrap()
    }

    fn m2(f: &[u32]) -> MatFq {
        MatFq::new(2, 2, f.iter().map(|&x| Fq(x)).collect()).unwrap()
    }

    #[test]
    fn basic_ranks() {
        let f = gf(2, 1);
        assert_eq!(rank(&f, &MatFq::zeros(3, 2)), 0);
        let mut id = MatFq::zeros(3, 2);
        id.set(0, 0, Fq(1));
        id.set(1, 1, Fq(1));
        assert_eq!(rank(&f, &id), 2);
        assert_eq!(rank(&f, &m2(&[1, 1, 1, 1])), 1);
        assert_eq!(rank_distance(&f, &m2(&[1, 1, 1, 1]), &m2(&[1, 0, 0, 1])).unwrap(), 2);
    }

    #[test]
    fn c1_pairs_at_distance_two() {
        let f = gf(2, 1);
        let c1 = [m2(&[1, 0, 0, 1]), m2(&[0, 0, 1, 0]), m2(&[0, 1, 0, 0]), m2(&[1, 1, 1, 1])];
        for i in 0..4 {
            assert_eq!(rank_distance(&f, &c1[i], &c1[i]).unwrap(), 0);
            for j in i + 1..4 {
                assert_eq!(rank_distance(&f, &c1[i], &c1[j]).unwrap(), 2);
            }
        }
    }

    #[test]
    fn wide_input_is_transposed() {
        let m = MatFq::new(1, 3, vec![Fq(1), Fq(0), Fq(1)]).unwrap();
        assert!(m.was_transposed());
        assert_eq!((m.rows(), m.cols()), (3, 1));
        let err = m.sub(&gf(2, 1), &MatFq::zeros(2, 2));
        assert!(matches!(err, Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn vector_bridge_examples() {
        let t = FieldTower::build(2, 1, 3).unwrap();
        let alpha = t.ext().generator();
        assert_eq!(vector_to_matrix(&t, &VecExt::zeros(2)), MatFq::zeros(3, 2));
        let m = vector_to_matrix(&t, &VecExt(vec![alpha, FqN(0)]));
        assert_eq!(m.entries(), &[Fq(0), Fq(0), Fq(1), Fq(0), Fq(0), Fq(0)]);
        assert_eq!(rank(t.base(), &m), 1);
        let a2 = t.ext().mul(alpha, alpha);
        assert_eq!(column_rank(&t, &[FqN(1), alpha, a2]), 3);
        assert_eq!(column_rank(&t, &[alpha, alpha]), 1);
        assert_eq!(column_rank(&t, &[FqN(5)]), 1);
    }

    #[test]
    fn vector_round_trip_exhaustive() {
        let t = FieldTower::build(2, 1, 2).unwrap();
        for i in 0..16 {
            let v = VecExt::from_index(i, 2, 4);
            let m = vector_to_matrix(&t, &v);
            assert_eq!(matrix_to_vector(&t, &m).unwrap(), v);
            assert_eq!(column_rank(&t, v.entries()), rank(t.base(), &m));
        }
    }

    #[test]
    fn rank_counts_small() {
        assert_eq!(count_rank_k(2, 2, 2, 0).unwrap(), BigUint::one());
        assert_eq!(count_rank_k(2, 2, 2, 1).unwrap(), BigUint::from(9u32));
        assert!(count_rank_k(2, 2, 2, 3).is_err());
        // hand enumeration over the 16 binary 2x2 matrices
        let f = gf(2, 1);
        let ones = enumerate_matrices(2, 2, 2, Budget::DEFAULT).unwrap().filter(|m| rank(&f, m) == 1).count();
        assert_eq!(ones, 9);
    }

    #[test]
    fn rank_one_enumeration() {
        let f = gf(2, 1);
        let all: Vec<_> = enumerate_rank_one(&f, 2, 2, Budget::DEFAULT).unwrap().collect();
        assert_eq!(all.len(), 9);
        let set: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(set.len(), 9);
        assert!(all.iter().all(|m| rank(&f, m) == 1));
        assert_eq!(enumerate_rank_one(&f, 2, 1, Budget::DEFAULT).unwrap().count(), 3);
        let f5 = gf(5, 1);
        assert_eq!(enumerate_rank_one(&f5, 1, 1, Budget::DEFAULT).unwrap().count(), 4);
        let small = Budget::new(2).unwrap();
        assert!(matches!(enumerate_rank_one(&f, 2, 2, small).err(), Some(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn labels_and_json() {
        let f = gf(3, 1);
        let m = MatFq::from_index(5, 2, 2, 3);
        assert_eq!(m.label(3), "0012");
        assert_eq!(MatFq::from_label("0012", 2, 2, 3).unwrap(), m);
        assert_eq!(m.to_index(3), 5);
        assert!(MatFq::from_label("0013", 2, 2, 3).is_err());
        let js = m.to_json(&f);
        assert_eq!(js, serde_json::json!([[[0], [0]], [[1], [2]]]));
        assert_eq!(MatFq::from_json(&f, &js).unwrap(), m);
    }

    #[test]
    fn index_space_translation() {
        let f = gf(3, 1);
        let s = IndexSpace::new(&f);
        for a in 0..81 {
            for b in 0..81 {
                let ma = MatFq::from_index(a, 2, 2, 3);
                let mb = MatFq::from_index(b, 2, 2, 3);
                assert_eq!(s.add(a, b), ma.add(&f, &mb).unwrap().to_index(3));
                assert_eq!(s.sub(a, b), ma.sub(&f, &mb).unwrap().to_index(3));
            }
        }
    }
}
