use super::{is_prime, FiniteField};
use crate::error::{Error, Result};

/// The prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
}

impl FiniteField for PrimeField {
    type Elem = u32;

    fn order(&self) -> u64 {
        self.p as u64
    }

    fn characteristic(&self) -> u64 {
        self.p as u64
    }

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1 % self.p
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    fn neg(&self, a: u32) -> u32 {
        (self.p - a) % self.p
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::InverseOfZero);
        }
        Ok(self.pow_u64(a, self.p as u64 - 2))
    }

    fn element(&self, index: u64) -> Result<u32> {
        if index >= self.p as u64 {
            return Err(Error::ElementOutOfRange { index, order: self.p as u64 });
        }
        Ok(index as u32)
    }

    fn index_of(&self, a: u32) -> u64 {
        a as u64
    }
}
