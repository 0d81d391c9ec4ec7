use serde::{Deserialize, Serialize};

use super::{prime_factors, BaseField, ExtField, FiniteField, Fq, FqN};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

/// `F_p ⊂ F_q ⊂ F_{q^N}` together with an ordered `F_q`-basis of `F_{q^N}`.
#[derive(Debug, Clone)]
pub struct FieldTower {
    ext: ExtField,
    basis: Vec<FqN>,
    // inverse of the basis matrix; `None` for the polynomial basis
    coords: Option<Matrix<Fq>>,
}

/// JSON form of a tower.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerDesc {
    pub p: u64,
    pub m: usize,
    #[serde(rename = "N")]
    pub n_ext: usize,
    pub modulus_q: Vec<u32>,
    #[serde(rename = "modulus_qN")]
    pub modulus_qn: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<Vec<u32>>>>,
}

impl FieldTower {
    /// Builds the tower with the smallest monic irreducible moduli at both levels.
    pub fn build(p: u64, m: usize, n_ext: usize) -> Result<Self> {
        let base = BaseField::new(p, m)?;
        let ext = ExtField::new(base, n_ext)?;
        Ok(Self::from_ext(ext))
    }

    pub fn from_moduli(p: u64, modulus_q: Vec<u32>, modulus_qn: Vec<Fq>) -> Result<Self> {
        let base = BaseField::with_modulus(p, modulus_q)?;
        let ext = ExtField::with_modulus(base, modulus_qn)?;
        Ok(Self::from_ext(ext))
    }

    fn from_ext(ext: ExtField) -> Self {
        let mut basis = Vec::with_capacity(ext.degree());
        let beta = ext.generator();
        let mut x = ext.one();
        for _ in 0..ext.degree() {
            basis.push(x);
            x = ext.mul(x, beta);
        }
        FieldTower { ext, basis, coords: None }
    }

    /// Replaces the polynomial basis by `basis`, which must be `F_q`-independent.
    pub fn with_basis(mut self, basis: Vec<FqN>) -> Result<Self> {
        let n = self.degree();
        if basis.len() != n {
            return Err(Error::ShapeMismatch { expected: format!("{n} basis elements"), got: basis.len().to_string() });
        }
        let mut b = Matrix::zeros(n, n);
        for (j, &e) in basis.iter().enumerate() {
            for (i, c) in self.ext.coeffs(e).into_iter().enumerate() {
                b.set(i, j, c);
            }
        }
        let inv = linalg::inverse(self.base(), &b).map_err(|_| Error::NotIndependent)?;
        let is_poly = basis == self.basis;
        self.basis = basis;
        self.coords = if is_poly { None } else { Some(inv) };
        Ok(self)
    }

    pub fn p(&self) -> u64 {
        self.base().p()
    }

    pub fn m(&self) -> usize {
        self.base().degree()
    }

    pub fn q(&self) -> u64 {
        self.base().order()
    }

    /// `N`, the degree of `F_{q^N}` over `F_q`.
    pub fn degree(&self) -> usize {
        self.ext.degree()
    }

    /// `q^N`.
    pub fn ext_order(&self) -> u64 {
        self.ext.order()
    }

    pub fn base(&self) -> &BaseField {
        self.ext.base()
    }

    pub fn ext(&self) -> &ExtField {
        &self.ext
    }

    pub fn basis(&self) -> &[FqN] {
        &self.basis
    }

    pub fn has_polynomial_basis(&self) -> bool {
        self.coords.is_none()
    }

    /// `x^{q^j}`.
    pub fn frobenius(&self, x: FqN, j: u64) -> FqN {
        let q = self.q();
        let mut y = x;
        for _ in 0..j % self.degree() as u64 {
            y = self.ext.pow_u64(y, q);
        }
        y
    }

    /// Coordinates of `x` over the tower's basis.
    pub fn expand(&self, x: FqN) -> Vec<Fq> {
        let poly = self.ext.coeffs(x);
        match &self.coords {
            None => poly,
            Some(inv) => {
                let f = self.base();
                (0..inv.rows())
                    .map(|r| {
                        inv.row(r)
                            .iter()
                            .zip(&poly)
                            .fold(f.zero(), |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
                    })
                    .collect()
            }
        }
    }

    pub fn contract(&self, v: &[Fq]) -> Result<FqN> {
        if v.len() != self.degree() {
            return Err(Error::ShapeMismatch { expected: format!("{} coordinates", self.degree()), got: v.len().to_string() });
        }
        match &self.coords {
            None => self.ext.from_coeffs(v),
            Some(_) => Ok(v.iter().zip(&self.basis).fold(self.ext.zero(), |acc, (&c, &b)| {
                self.ext.add(acc, self.ext.mul(self.ext.embed(c), b))
            })),
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, x: FqN) -> Result<u64> {
        if x.0 == 0 {
            return Err(Error::InverseOfZero);
        }
        let mut ord = self.ext_order() - 1;
        for r in prime_factors(ord) {
            while ord.is_multiple_of(r) && self.ext.pow_u64(x, ord / r) == self.ext.one() {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// The smallest-index element of order `q^N - 1`.
    pub fn primitive_element(&self) -> FqN {
        let group = self.ext_order() - 1;
        self.ext
            .nonzero_elements()
            .find(|&x| self.element_order(x).ok() == Some(group))
            .expect("multiplicative group is cyclic")
    }

    pub fn fq_to_json(&self, a: Fq) -> Vec<u32> {
        self.base().coeffs(a)
    }

    pub fn fq_from_json(&self, c: &[u32]) -> Result<Fq> {
        if c.len() != self.m() {
            return Err(Error::Parse(format!("F_q element needs {} coefficients, got {}", self.m(), c.len())));
        }
        self.base().from_coeffs(c)
    }

    pub fn fqn_to_json(&self, x: FqN) -> Vec<Vec<u32>> {
        self.ext.coeffs(x).into_iter().map(|c| self.fq_to_json(c)).collect()
    }

    pub fn fqn_from_json(&self, c: &[Vec<u32>]) -> Result<FqN> {
        if c.len() != self.degree() {
            return Err(Error::Parse(format!("F_q^N element needs {} coefficients, got {}", self.degree(), c.len())));
        }
        let coeffs = c.iter().map(|e| self.fq_from_json(e)).collect::<Result<Vec<_>>>()?;
        self.ext.from_coeffs(&coeffs)
    }

    pub fn desc(&self) -> TowerDesc {
        TowerDesc {
            p: self.p(),
            m: self.m(),
            n_ext: self.degree(),
            modulus_q: self.base().modulus().to_vec(),
            modulus_qn: self.ext.modulus().iter().map(|&c| self.fq_to_json(c)).collect(),
            basis: self.coords.as_ref().map(|_| self.basis.iter().map(|&b| self.fqn_to_json(b)).collect()),
        }
    }

    pub fn from_desc(d: &TowerDesc) -> Result<Self> {
        let base = BaseField::with_modulus(d.p, d.modulus_q.clone())?;
        if base.degree() != d.m {
            return Err(Error::Parse(format!("modulus_q has degree {}, expected m = {}", base.degree(), d.m)));
        }
        let modulus = d.modulus_qn.iter().map(|c| base.from_coeffs(c)).collect::<Result<Vec<_>>>()?;
        let ext = ExtField::with_modulus(base, modulus)?;
        if ext.degree() != d.n_ext {
            return Err(Error::Parse(format!("modulus_qN has degree {}, expected N = {}", ext.degree(), d.n_ext)));
        }
        let tower = Self::from_ext(ext);
        match &d.basis {
            None => Ok(tower),
            Some(b) => {
                let basis = b.iter().map(|e| tower.fqn_from_json(e)).collect::<Result<Vec<_>>>()?;
                tower.with_basis(basis)
            }
        }
    }

    /// Same field presentation (moduli and basis).
    pub fn same_as(&self, other: &FieldTower) -> bool {
        self.desc() == other.desc()
    }
}
