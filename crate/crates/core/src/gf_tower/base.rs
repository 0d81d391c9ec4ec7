use serde::{Deserialize, Serialize};

use super::{add_digits, checked_pow, neg_digits, poly, FiniteField, LogTables, PrimeField};
use crate::error::{Error, Result};

/// An element of `F_q`, stored as its base-`p` coefficient index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Fq(pub u32);

/// `F_q = F_p[x]/(f)` for a monic irreducible `f` of degree `m`.
#[derive(Debug, Clone)]
pub struct BaseField {
    prime: PrimeField,
    m: usize,
    q: u64,
    modulus: Vec<u32>,
    tables: Option<LogTables>,
}

impl BaseField {
    /// Uses the smallest monic irreducible of degree `m` over `F_p`.
    pub fn new(p: u64, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let prime = PrimeField::new(p)?;
        let modulus = poly::smallest_irreducible(&prime, m);
        Self::with_modulus(p, modulus)
    }

    /// `modulus` is little-endian and must be monic irreducible over `F_p`.
    pub fn with_modulus(p: u64, modulus: Vec<u32>) -> Result<Self> {
        let prime = PrimeField::new(p)?;
        if modulus.len() < 2 {
            return Err(Error::ZeroDegree);
        }
        let as_u64 = || modulus.iter().map(|&c| c as u64).collect::<Vec<_>>();
        if modulus.iter().any(|&c| c as u64 >= p)
            || *modulus.last().unwrap() != 1
            || !poly::is_irreducible(&prime, &modulus)
        {
            return Err(Error::NotIrreducible(as_u64()));
        }
        let m = modulus.len() - 1;
        let q = checked_pow(p, m)?;
        if q > u32::MAX as u64 {
            return Err(Error::FieldTooLarge(format!("{p}^{m}")));
        }
        let mut field = BaseField { prime, m, q, modulus, tables: None };
        field.tables = LogTables::build(q, 1, |a, b| field.mul_direct(Fq(a as u32), Fq(b as u32)).0 as u64);
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.prime.p() as u64
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn prime_field(&self) -> &PrimeField {
        &self.prime
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Little-endian `F_p` coefficients, always of length `m`.
    pub fn coeffs(&self, a: Fq) -> Vec<u32> {
        let p = self.p() as u32;
        let mut x = a.0;
        (0..self.m)
            .map(|_| {
                let c = x % p;
                x /= p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fq> {
        if coeffs.len() > self.m {
            return Err(Error::ShapeMismatch {
                expected: format!("at most {} coefficients", self.m),
                got: coeffs.len().to_string(),
            });
        }
        let p = self.p() as u32;
        let mut idx = 0u32;
        for &c in coeffs.iter().rev() {
            if c >= p {
                return Err(Error::ElementOutOfRange { index: c as u64, order: p as u64 });
            }
            idx = idx * p + c;
        }
        Ok(Fq(idx))
    }

    fn mul_direct(&self, a: Fq, b: Fq) -> Fq {
        let prod = poly::mul(&self.prime, &self.coeffs(a), &self.coeffs(b));
        let r = poly::rem_monic(&self.prime, &prod, &self.modulus);
        self.from_coeffs(&r).expect("reduced product has degree below m")
    }
}

impl FiniteField for BaseField {
    type Elem = Fq;

    fn order(&self) -> u64 {
        self.q
    }

    fn characteristic(&self) -> u64 {
        self.p()
    }

    fn zero(&self) -> Fq {
        Fq(0)
    }

    fn one(&self) -> Fq {
        Fq(1)
    }

    fn add(&self, a: Fq, b: Fq) -> Fq {
        Fq(add_digits(a.0 as u64, b.0 as u64, self.p()) as u32)
    }

    fn neg(&self, a: Fq) -> Fq {
        Fq(neg_digits(a.0 as u64, self.p()) as u32)
    }

    fn mul(&self, a: Fq, b: Fq) -> Fq {
        match &self.tables {
            Some(t) => Fq(t.mul(a.0 as u64, b.0 as u64) as u32),
            None => self.mul_direct(a, b),
        }
    }

    fn inv(&self, a: Fq) -> Result<Fq> {
        if a.0 == 0 {
            return Err(Error::InverseOfZero);
        }
        Ok(match &self.tables {
            Some(t) => Fq(t.inv(a.0 as u64) as u32),
            None => self.pow_u64(a, self.q - 2),
        })
    }

    fn element(&self, index: u64) -> Result<Fq> {
        if index >= self.q {
            return Err(Error::ElementOutOfRange { index, order: self.q });
        }
        Ok(Fq(index as u32))
    }

    fn index_of(&self, a: Fq) -> u64 {
        a.0 as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_uses_x2_x_1() {
        let f = BaseField::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // x * x = x + 1
        assert_eq!(f.mul(Fq(2), Fq(2)), Fq(3));
    }

    #[test]
    fn degree_one_is_prime_field() {
        let f = BaseField::new(5, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.mul(Fq(3), Fq(4)), Fq(2));
        assert_eq!(f.add(Fq(3), Fq(4)), Fq(2));
    }

    #[test]
    fn rejects_reducible_modulus() {
        // x^2 + 1 = (x + 1)^2 over F_2
        assert!(matches!(BaseField::with_modulus(2, vec![1, 0, 1]), Err(Error::NotIrreducible(_))));
        assert!(matches!(BaseField::new(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(BaseField::new(2, 0), Err(Error::ZeroDegree)));
    }

    #[test]
    fn table_and_direct_agree() {
        let f = BaseField::new(3, 2).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b), f.mul_direct(a, b));
            }
        }
    }
}
