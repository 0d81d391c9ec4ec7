use serde::{Deserialize, Serialize};

use super::{add_digits, checked_pow, neg_digits, poly, BaseField, FiniteField, Fq, LogTables};
use crate::error::{Error, Result};

/// An element of `F_{q^N}`, stored as its base-`q` coefficient index over `F_q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct FqN(pub u64);

/// `F_{q^N} = F_q[y]/(g)` for a monic irreducible `g` of degree `N` over `F_q`.
#[derive(Debug, Clone)]
pub struct ExtField {
    base: BaseField,
    degree: usize,
    order: u64,
    modulus: Vec<Fq>,
    tables: Option<LogTables>,
}

impl ExtField {
    pub fn new(base: BaseField, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        checked_pow(base.order(), degree)?;
        let modulus = poly::smallest_irreducible(&base, degree);
        Self::with_modulus(base, modulus)
    }

    pub fn with_modulus(base: BaseField, modulus: Vec<Fq>) -> Result<Self> {
        if modulus.len() < 2 {
            return Err(Error::ZeroDegree);
        }
        let degree = modulus.len() - 1;
        let order = checked_pow(base.order(), degree)?;
        if modulus.iter().any(|c| c.0 as u64 >= base.order())
            || *modulus.last().unwrap() != base.one()
            || !poly::is_irreducible(&base, &modulus)
        {
            return Err(Error::NotIrreducible(modulus.iter().map(|c| c.0 as u64).collect()));
        }
        let mut field = ExtField { base, degree, order, modulus, tables: None };
        field.tables = LogTables::build(order, 1, |a, b| field.mul_direct(FqN(a), FqN(b)).0);
        Ok(field)
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[Fq] {
        &self.modulus
    }

    /// Little-endian `F_q` coefficients in the polynomial basis, length `N`.
    pub fn coeffs(&self, a: FqN) -> Vec<Fq> {
        let q = self.base.order();
        let mut x = a.0;
        (0..self.degree)
            .map(|_| {
                let c = x % q;
                x /= q;
                Fq(c as u32)
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[Fq]) -> Result<FqN> {
        if coeffs.len() > self.degree {
            return Err(Error::ShapeMismatch {
                expected: format!("at most {} coefficients", self.degree),
                got: coeffs.len().to_string(),
            });
        }
        let q = self.base.order();
        let mut idx = 0u64;
        for c in coeffs.iter().rev() {
            if c.0 as u64 >= q {
                return Err(Error::ElementOutOfRange { index: c.0 as u64, order: q });
            }
            idx = idx * q + c.0 as u64;
        }
        Ok(FqN(idx))
    }

    /// Embeds `F_q` as the constant polynomials.
    pub fn embed(&self, c: Fq) -> FqN {
        FqN(c.0 as u64)
    }

    /// The residue of the indeterminate (`β`, or `α` in F_8).
    pub fn generator(&self) -> FqN {
        if self.degree == 1 {
            // F_q[y]/(y - c) identifies y with c
            let c = self.base.neg(self.modulus[0]);
            FqN(c.0 as u64)
        } else {
            FqN(self.base.order())
        }
    }

    fn mul_direct(&self, a: FqN, b: FqN) -> FqN {
        let prod = poly::mul(&self.base, &self.coeffs(a), &self.coeffs(b));
        let r = poly::rem_monic(&self.base, &prod, &self.modulus);
        self.from_coeffs(&r).expect("reduced product has degree below N")
    }
}

impl FiniteField for ExtField {
    type Elem = FqN;

    fn order(&self) -> u64 {
        self.order
    }

    fn characteristic(&self) -> u64 {
        self.base.p()
    }

    fn zero(&self) -> FqN {
        FqN(0)
    }

    fn one(&self) -> FqN {
        FqN(1)
    }

    fn add(&self, a: FqN, b: FqN) -> FqN {
        FqN(add_digits(a.0, b.0, self.base.p()))
    }

    fn neg(&self, a: FqN) -> FqN {
        FqN(neg_digits(a.0, self.base.p()))
    }

    fn mul(&self, a: FqN, b: FqN) -> FqN {
        match &self.tables {
            Some(t) => FqN(t.mul(a.0, b.0)),
            None => self.mul_direct(a, b),
        }
    }

    fn inv(&self, a: FqN) -> Result<FqN> {
        if a.0 == 0 {
            return Err(Error::InverseOfZero);
        }
        Ok(match &self.tables {
            Some(t) => FqN(t.inv(a.0)),
            None => self.pow_u64(a, self.order - 2),
        })
    }

    fn element(&self, index: u64) -> Result<FqN> {
        if index >= self.order {
            return Err(Error::ElementOutOfRange { index, order: self.order });
        }
        Ok(FqN(index))
    }

    fn index_of(&self, a: FqN) -> u64 {
        a.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn direct_matches_tables_over_f9_extension() {
        let base = BaseField::new(3, 1).unwrap();
        let f = ExtField::new(base, 2).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b), f.mul_direct(a, b));
            }
        }
    }

    #[test]
    fn generator_satisfies_modulus() {
        let base = BaseField::new(2, 2).unwrap();
        let f = ExtField::new(base.clone(), 2).unwrap();
        let y = f.generator();
        // g(y) = 0
        let mut acc = f.zero();
        let mut pw = f.one();
        for &c in f.modulus() {
            acc = f.add(acc, f.mul(f.embed(c), pw));
            pw = f.mul(pw, y);
        }
        assert_eq!(acc, f.zero());
    }
}
