//! Linear rank-metric codes over `F_{q^N}` and the built-in equidistant codes.

use std::collections::BTreeMap;
use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigUint;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::gf_tower::{FieldTower, FiniteField, FqN, TowerDesc};
use crate::linalg::{self, Matrix};
use crate::rank_linalg::{self, MatFq, VecExt};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeTag {
    Gabidulin { s: u64, h: Vec<FqN> },
    Explicit,
    Searched,
}

/// A linear code over `F_{q^N}` of length `n` and dimension `k`, held as both a
/// `k×n` generator and an `(n-k)×n` parity-check matrix.
#[derive(Debug, Clone)]
pub struct LinearRankCode {
    tower: Arc<FieldTower>,
    n: usize,
    k: usize,
    generator: Matrix<FqN>,
    parity: Matrix<FqN>,
    tag: CodeTag,
    min_distance: Option<usize>,
}

/// Moore matrix with rows `h_j^{q^{s·i}}` for `i = 0..rows`.
pub fn moore_matrix(tower: &FieldTower, h: &[FqN], rows: usize, s: u64) -> Matrix<FqN> {
    let mut m = Matrix::zeros(rows, h.len());
    for (j, &hj) in h.iter().enumerate() {
        let mut x = hj;
        for i in 0..rows {
            m.set(i, j, x);
            x = tower.frobenius(x, s);
        }
    }
    m
}

/// Generator of the code `{v : v·Hᵀ = 0}`.
pub fn generator_from_parity(tower: &FieldTower, parity: &Matrix<FqN>) -> Result<Matrix<FqN>> {
    full_rank_dual(tower, parity)
}

/// Parity-check matrix of the row space of `generator`.
pub fn parity_from_generator(tower: &FieldTower, generator: &Matrix<FqN>) -> Result<Matrix<FqN>> {
    full_rank_dual(tower, generator)
}

fn full_rank_dual(tower: &FieldTower, m: &Matrix<FqN>) -> Result<Matrix<FqN>> {
    let r = linalg::rank(tower.ext(), m);
    if r != m.rows() {
        return Err(Error::RankDeficient { rank: r, expected: m.rows() });
    }
    Ok(linalg::null_space(tower.ext(), m))
}

impl LinearRankCode {
    pub fn from_parity(tower: Arc<FieldTower>, parity: Matrix<FqN>, tag: CodeTag) -> Result<Self> {
        let generator = generator_from_parity(&tower, &parity)?;
        Ok(Self::assemble(tower, generator, parity, tag))
    }

    pub fn from_generator(tower: Arc<FieldTower>, generator: Matrix<FqN>, tag: CodeTag) -> Result<Self> {
        let parity = parity_from_generator(&tower, &generator)?;
        Ok(Self::assemble(tower, generator, parity, tag))
    }

    fn assemble(tower: Arc<FieldTower>, generator: Matrix<FqN>, parity: Matrix<FqN>, tag: CodeTag) -> Self {
        LinearRankCode {
            n: generator.cols(),
            k: generator.rows(),
            tower,
            generator,
            parity,
            tag,
            min_distance: None,
        }
    }

    /// The Gabidulin code whose parity-check matrix has rows
    /// `h^{q^{s·i}}`, `i = 0..n-k`. Defaults: `h` = first `n` basis elements.
    pub fn gabidulin(tower: Arc<FieldTower>, n: usize, k: usize, s: u64, h: Option<Vec<FqN>>) -> Result<Self> {
        let big_n = tower.degree();
        if n == 0 || n > big_n {
            return Err(Error::InvalidParameter(format!("need 1 <= n <= N = {big_n}, got n = {n}")));
        }
        if k == 0 || k > n {
            return Err(Error::InvalidParameter(format!("need 1 <= k <= n = {n}, got k = {k}")));
        }
        if s == 0 || s.gcd(&(big_n as u64)) != 1 {
            return Err(Error::InvalidParameter(format!("need gcd(s, N) = 1, got s = {s}, N = {big_n}")));
        }
        let h = match h {
            Some(h) => {
                if h.len() != n {
                    return Err(Error::ShapeMismatch { expected: format!("{n} elements"), got: h.len().to_string() });
                }
                if rank_linalg::column_rank(&tower, &h) != n {
                    return Err(Error::NotIndependent);
                }
                h
            }
            None => tower.basis()[..n].to_vec(),
        };
        let parity = moore_matrix(&tower, &h, n - k, s);
        Self::from_parity(tower, parity, CodeTag::Gabidulin { s, h })
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &Matrix<FqN> {
        &self.generator
    }

    pub fn parity(&self) -> &Matrix<FqN> {
        &self.parity
    }

    pub fn tag(&self) -> &CodeTag {
        &self.tag
    }

    /// `n - k + 1` for Gabidulin codes.
    pub fn designed_distance(&self) -> Option<usize> {
        matches!(self.tag, CodeTag::Gabidulin { .. }).then(|| self.n - self.k + 1)
    }

    pub fn cached_min_distance(&self) -> Option<usize> {
        self.min_distance
    }

    /// Enumerates the code and caches its minimum rank distance.
    pub fn with_verified_distance(mut self, budget: Budget) -> Result<Self> {
        self.min_distance = min_rank_distance(&self, budget)?;
        Ok(self)
    }

    /// `q^{Nk}`.
    pub fn size(&self) -> BigUint {
        BigUint::from(self.tower.ext_order()).pow(self.k as u32)
    }

    /// `q^{N(n-d+1)}`.
    pub fn singleton_bound(&self, d: usize) -> BigUint {
        BigUint::from(self.tower.ext_order()).pow((self.n + 1 - d) as u32)
    }

    pub fn syndrome(&self, v: &[FqN]) -> Vec<FqN> {
        linalg::mul_vec_transpose(self.tower.ext(), v, &self.parity)
    }

    pub fn contains(&self, v: &[FqN]) -> bool {
        v.len() == self.n && self.syndrome(v).iter().all(|x| x.0 == 0)
    }

    /// The codeword whose message (base-`q^N` digits, first row most significant) is `index`.
    pub fn codeword(&self, index: u64) -> VecExt {
        let f = self.tower.ext();
        let msg = VecExt::from_index(index, self.k, f.order());
        let mut out = vec![f.zero(); self.n];
        for (r, &c) in msg.entries().iter().enumerate() {
            if c.0 == 0 {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(self.generator.row(r)) {
                *o = f.add(*o, f.mul(c, g));
            }
        }
        VecExt(out)
    }

    pub fn to_json(&self) -> Value {
        let t = &self.tower;
        let tag = match &self.tag {
            CodeTag::Gabidulin { s, h } => {
                json!({"kind": "gabidulin", "s": s, "h": h.iter().map(|&x| t.fqn_to_json(x)).collect::<Vec<_>>()})
            }
            CodeTag::Explicit => json!("explicit"),
            CodeTag::Searched => json!("searched"),
        };
        let mut v = json!({
            "tower": t.desc(),
            "n": self.n,
            "k": self.k,
            "generator": ext_matrix_to_json(t, &self.generator),
            "parity": ext_matrix_to_json(t, &self.parity),
            "tag": tag,
        });
        if let Some(d) = self.min_distance {
            v["min_distance"] = json!(d);
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let file: CodeFile = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("code file: {e}")))?;
        let tower = Arc::new(FieldTower::from_desc(&file.tower)?);
        let tag = match &file.tag {
            Value::String(s) if s == "searched" => CodeTag::Searched,
            Value::Object(o) if o.get("kind") == Some(&json!("gabidulin")) => {
                let s = o.get("s").and_then(Value::as_u64).ok_or_else(|| Error::Parse("gabidulin tag needs s".into()))?;
                let h: Vec<Vec<Vec<u32>>> = serde_json::from_value(o.get("h").cloned().unwrap_or(json!([])))
                    .map_err(|e| Error::Parse(format!("gabidulin h: {e}")))?;
                let h = h.iter().map(|e| tower.fqn_from_json(e)).collect::<Result<Vec<_>>>()?;
                CodeTag::Gabidulin { s, h }
            }
            _ => CodeTag::Explicit,
        };
        let parse = |m: &Option<Vec<Vec<Vec<Vec<u32>>>>>| -> Result<Option<Matrix<FqN>>> {
            m.as_ref().map(|rows| ext_matrix_from_json(&tower, rows, file.n)).transpose()
        };
        let (generator, parity) = (parse(&file.generator)?, parse(&file.parity)?);
        let code = match (generator, parity) {
            (_, Some(h)) if h.rows() > 0 || file.k == Some(file.n) => {
                let code = Self::from_parity(tower.clone(), h, tag)?;
                if let Some(k) = file.k {
                    if k != code.k {
                        return Err(Error::Parse(format!("k = {k} but parity matrix gives {}", code.k)));
                    }
                }
                code
            }
            (Some(g), _) => Self::from_generator(tower.clone(), g, tag)?,
            _ => return Err(Error::Parse("code file needs a generator or a parity matrix".into())),
        };
        Ok(code)
    }
}

#[derive(Debug, Deserialize, Serialize)]
struct CodeFile {
    tower: TowerDesc,
    n: usize,
    #[serde(default)]
    k: Option<usize>,
    #[serde(default)]
    generator: Option<Vec<Vec<Vec<Vec<u32>>>>>,
    #[serde(default)]
    parity: Option<Vec<Vec<Vec<Vec<u32>>>>>,
    #[serde(default)]
    tag: Value,
}

pub fn ext_matrix_to_json(tower: &FieldTower, m: &Matrix<FqN>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| json!(m.row(r).iter().map(|&x| tower.fqn_to_json(x)).collect::<Vec<_>>()))
            .collect(),
    )
}

pub fn ext_matrix_from_json(tower: &FieldTower, rows: &[Vec<Vec<Vec<u32>>>], cols: usize) -> Result<Matrix<FqN>> {
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|e| tower.fqn_from_json(e)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(cols, rows)
}

pub fn enumerate_codewords(code: &LinearRankCode, budget: Budget) -> Result<impl Iterator<Item = VecExt> + '_> {
    let total = budget.admit(&code.size())?;
    Ok((0..total).map(move |i| code.codeword(i)))
}

/// Number of codewords of each column rank.
pub fn rank_spectrum(code: &LinearRankCode, budget: Budget) -> Result<BTreeMap<usize, u64>> {
    let total = budget.admit(&code.size())?;
    let n = code.n;
    let hist = (0..total)
        .into_par_iter()
        .fold(
            || vec![0u64; n + 1],
            |mut h, i| {
                h[rank_linalg::column_rank(&code.tower, code.codeword(i).entries())] += 1;
                h
            },
        )
        .reduce(|| vec![0u64; n + 1], |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect());
    Ok(hist.into_iter().enumerate().filter(|&(_, c)| c > 0).collect())
}

/// Least nonzero codeword rank; `None` for the zero code.
pub fn min_rank_distance(code: &LinearRankCode, budget: Budget) -> Result<Option<usize>> {
    Ok(rank_spectrum(code, budget)?.into_keys().find(|&w| w > 0))
}

/// Minimum column rank of pairwise differences; `None` for fewer than two words.
pub fn min_pairwise_distance(tower: &FieldTower, words: &[VecExt]) -> Result<Option<usize>> {
    let mut best = None;
    for (a, b) in words.iter().tuple_combinations() {
        let d = rank_linalg::column_rank(tower, a.sub(tower.ext(), b)?.entries());
        best = Some(best.map_or(d, |x: usize| x.min(d)));
    }
    Ok(best)
}

/// Every `d - 1` columns of `h` are `F_{q^N}`-independent and some `d` columns are dependent.
pub fn check_parity_columns(tower: &FieldTower, h: &Matrix<FqN>, d: usize) -> bool {
    let n = h.cols();
    if d == 0 || d > n {
        return false;
    }
    let f = tower.ext();
    let independent = |cols: &[usize]| linalg::rank(f, &h.select_columns(cols)) == cols.len();
    (0..n).combinations(d - 1).all(|c| independent(&c)) && (0..n).combinations(d).any(|c| !independent(&c))
}

/// Smallest number of `F_{q^N}`-dependent columns of `h` (`None` if all are independent).
pub fn least_dependent_columns(tower: &FieldTower, h: &Matrix<FqN>) -> Option<usize> {
    let f = tower.ext();
    (1..=h.cols()).find(|&d| {
        (0..h.cols()).combinations(d).any(|c| linalg::rank(f, &h.select_columns(&c)) < d)
    })
}

/// Outcome of comparing the column-dependence criterion with enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityCrossCheck {
    /// Minimum rank distance from codeword enumeration (ground truth).
    pub enumerated: Option<usize>,
    /// The `d` for which the column criterion holds, if any.
    pub column_criterion: Option<usize>,
}

impl ParityCrossCheck {
    pub fn agrees(&self) -> bool {
        self.enumerated == self.column_criterion
    }
}

pub fn cross_check_parity(code: &LinearRankCode, budget: Budget) -> Result<ParityCrossCheck> {
    Ok(ParityCrossCheck {
        enumerated: min_rank_distance(code, budget)?,
        column_criterion: least_dependent_columns(&code.tower, &code.parity),
    })
}

/// `Some(d)` when every pair of distinct words is at distance exactly `d`.
pub fn is_equidistant<T>(words: &[T], dist: impl Fn(&T, &T) -> Result<usize>) -> Result<Option<usize>> {
    if words.len() < 2 {
        return Err(Error::InvalidParameter("equidistance needs at least two words".into()));
    }
    let mut common = None;
    for (a, b) in words.iter().tuple_combinations() {
        let d = dist(a, b)?;
        match common {
            None => common = Some(d),
            Some(c) if c != d => return Ok(None),
            _ => {}
        }
    }
    Ok(common)
}

/// Equidistance of all codewords of a linear code.
pub fn code_is_equidistant(code: &LinearRankCode, budget: Budget) -> Result<Option<usize>> {
    let words: Vec<VecExt> = enumerate_codewords(code, budget)?.collect();
    // pairs grow quadratically; admit them separately
    budget.admit(&(BigUint::from(words.len()) * BigUint::from(words.len())))?;
    let t = code.tower.clone();
    is_equidistant(&words, |a, b| Ok(rank_linalg::column_rank(&t, a.sub(t.ext(), b)?.entries())))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeWords {
    Matrices(Vec<MatFq>),
    Vectors(Vec<VecExt>),
}

/// An explicit word list with a declared common pairwise distance.
#[derive(Debug, Clone)]
pub struct EquidistantCode {
    pub name: String,
    pub tower: Arc<FieldTower>,
    pub n: usize,
    pub words: CodeWords,
    pub declared_distance: usize,
}

impl EquidistantCode {
    pub fn size(&self) -> usize {
        match &self.words {
            CodeWords::Matrices(w) => w.len(),
            CodeWords::Vectors(w) => w.len(),
        }
    }

    /// Common pairwise rank distance, if there is one.
    pub fn measured_distance(&self) -> Result<Option<usize>> {
        let t = &self.tower;
        match &self.words {
            CodeWords::Matrices(w) => is_equidistant(w, |a, b| rank_linalg::rank_distance(t.base(), a, b)),
            CodeWords::Vectors(w) => {
                is_equidistant(w, |a, b| Ok(rank_linalg::column_rank(t, a.sub(t.ext(), b)?.entries())))
            }
        }
    }

    pub fn verify(&self) -> Result<bool> {
        Ok(self.measured_distance()? == Some(self.declared_distance))
    }

    /// Ranks of the listed words.
    pub fn word_ranks(&self) -> Vec<usize> {
        let t = &self.tower;
        match &self.words {
            CodeWords::Matrices(w) => w.iter().map(|m| rank_linalg::rank(t.base(), m)).collect(),
            CodeWords::Vectors(w) => w.iter().map(|v| rank_linalg::column_rank(t, v.entries())).collect(),
        }
    }

    pub fn as_matrices(&self) -> Vec<MatFq> {
        match &self.words {
            CodeWords::Matrices(w) => w.clone(),
            CodeWords::Vectors(w) => w.iter().map(|v| rank_linalg::vector_to_matrix(&self.tower, v)).collect(),
        }
    }
}

const C2_WORDS: [[u64; 2]; 8] = [[1, 2], [2, 3], [7, 1], [0, 5], [3, 4], [5, 7], [6, 6], [4, 0]];
const C3_WORDS: [[u64; 3]; 8] =
    [[4, 0, 0], [1, 2, 4], [0, 1, 2], [5, 3, 6], [6, 6, 1], [3, 4, 5], [2, 7, 3], [7, 5, 7]];

/// `F_2 ⊂ F_8` with modulus `x^3 + x + 1`, the presentation C2 and C3 are keyed to.
pub fn f8_tower() -> Arc<FieldTower> {
    Arc::new(FieldTower::build(2, 1, 3).expect("F_8 exists"))
}

/// The built-in codes under their default towers.
pub fn builtin_code(name: &str) -> Result<EquidistantCode> {
    match name {
        "C1" => builtin_code_in(name, &Arc::new(FieldTower::build(2, 1, 2)?)),
        "C2" | "C3" => builtin_code_in(name, &f8_tower()),
        _ => Err(Error::UnknownCode(name.to_string())),
    }
}

/// C2 and C3 are element literals in powers of `α` with `α^3 = α + 1`; any
/// other presentation of `F_8` is rejected.
pub fn builtin_code_in(name: &str, tower: &Arc<FieldTower>) -> Result<EquidistantCode> {
    let code = |n, words, d| EquidistantCode { name: name.to_string(), tower: tower.clone(), n, words, declared_distance: d };
    match name {
        "C1" => {
            if tower.q() != 2 || tower.degree() != 2 {
                return Err(Error::ModulusMismatch("C1 lives in F_2^{2x2}".into()));
            }
            let m = |e: [u32; 4]| MatFq::new(2, 2, e.iter().map(|&x| crate::gf_tower::Fq(x)).collect());
            let words = vec![m([1, 0, 0, 1])?, m([0, 0, 1, 0])?, m([0, 1, 0, 0])?, m([1, 1, 1, 1])?];
            Ok(code(2, CodeWords::Matrices(words), 2))
        }
        "C2" | "C3" => {
            let f8 = tower.p() == 2 && tower.m() == 1 && tower.degree() == 3;
            if !f8 || tower.ext().modulus().iter().map(|c| c.0).collect::<Vec<_>>() != [1, 1, 0, 1] {
                return Err(Error::ModulusMismatch(format!("{name} requires F_8 with alpha^3 = alpha + 1")));
            }
            let words: Vec<VecExt> = if name == "C2" {
                C2_WORDS.iter().map(|w| VecExt(w.iter().map(|&x| FqN(x)).collect())).collect()
            } else {
                C3_WORDS.iter().map(|w| VecExt(w.iter().map(|&x| FqN(x)).collect())).collect()
            };
            let n = words[0].len();
            Ok(code(n, CodeWords::Vectors(words), n))
        }
        _ => Err(Error::UnknownCode(name.to_string())),
    }
}
