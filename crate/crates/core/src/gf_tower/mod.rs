//! Arithmetic in the tower `F_p ⊂ F_q = F_{p^m} ⊂ F_{q^N}`.
//!
//! Elements are stored by their *index*: the little-endian coefficient vector
//! of the element read as an integer (digits base `p` for `F_q`, base `q` for
//! `F_{q^N}`). The index doubles as the fixed total order on elements used by
//! every enumerator in the crate, and makes elements `Copy`.
//!
//! `F_{q^N}` is a degree-`N` extension of `F_q`, not a degree-`mN` extension
//! of `F_p`, so expanding an element over an `F_q`-basis is a direct read of
//! its coefficients.

mod base;
mod ext;
mod poly;
mod prime;
mod tower;

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigUint;

use crate::error::{Error, Result};

pub use base::{BaseField, Fq};
pub use ext::{ExtField, FqN};
pub use prime::PrimeField;
pub use tower::{FieldTower, TowerDesc};

/// A finite field whose elements are enumerable by index in `0..order()`.
pub trait FiniteField {
    type Elem: Copy + Default + Eq + Ord + Hash + Debug + Send + Sync;

    fn order(&self) -> u64;
    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn inv(&self, a: Self::Elem) -> Result<Self::Elem>;

    /// The element with the given index.
    fn element(&self, index: u64) -> Result<Self::Elem>;
    fn index_of(&self, a: Self::Elem) -> u64;

    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem {
        self.add(a, self.neg(b))
    }

    fn div(&self, a: Self::Elem, b: Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }

    fn pow_u64(&self, a: Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Square-and-multiply with an arbitrary-precision exponent.
    fn pow(&self, a: Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(acc, acc);
            if e.bit(i) {
                acc = self.mul(acc, a);
            }
        }
        acc
    }

    /// All elements in index order.
    fn elements(&self) -> impl Iterator<Item = Self::Elem> + '_ {
        (0..self.order()).map(move |i| self.element(i).expect("index below order"))
    }

    fn nonzero_elements(&self) -> impl Iterator<Item = Self::Elem> + '_ {
        (1..self.order()).map(move |i| self.element(i).expect("index below order"))
    }
}

/// Digit-wise addition of two base-`p` numbers without carries.
///
/// Both `F_q` and `F_{q^N}` indices are base-`p` digit strings of the
/// underlying `F_p` coefficients, so addition at every level reduces to this.
pub(crate) fn add_digits(mut a: u64, mut b: u64, p: u64) -> u64 {
    if p == 2 {
        return a ^ b;
    }
    let (mut out, mut place) = (0u64, 1u64);
    while a > 0 || b > 0 {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place = place.wrapping_mul(p);
    }
    out
}

pub(crate) fn neg_digits(mut a: u64, p: u64) -> u64 {
    if p == 2 {
        return a;
    }
    let (mut out, mut place) = (0u64, 1u64);
    while a > 0 {
        out += ((p - a % p) % p) * place;
        a /= p;
        place = place.wrapping_mul(p);
    }
    out
}

pub(crate) fn checked_pow(base: u64, exp: usize) -> Result<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc
            .checked_mul(base)
            .filter(|&v| v <= 1 << 62)
            .ok_or_else(|| Error::FieldTooLarge(format!("{base}^{exp}")))?;
    }
    Ok(acc)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors by trial division.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Exp/log tables over a cyclic multiplicative group, indexed by element index.
#[derive(Debug, Clone)]
pub(crate) struct LogTables {
    log: Vec<u32>,
    exp: Vec<u64>,
}

/// Tables are cached for fields up to this order.
pub(crate) const TABLE_LIMIT: u64 = 1 << 16;

impl LogTables {
    /// Builds tables from a generator found by direct multiplication.
    pub(crate) fn build(order: u64, one: u64, mul: impl Fn(u64, u64) -> u64) -> Option<LogTables> {
        if !(2..=TABLE_LIMIT).contains(&order) {
            return None;
        }
        let group = (order - 1) as usize;
        for g in 1..order {
            let mut exp = Vec::with_capacity(2 * group);
            let mut x = one;
            loop {
                exp.push(x);
                x = mul(x, g);
                if x == one {
                    break;
                }
            }
            if exp.len() != group {
                continue;
            }
            let mut log = vec![0u32; order as usize];
            for (i, &e) in exp.iter().enumerate() {
                log[e as usize] = i as u32;
            }
            let head = exp.clone();
            exp.extend(head);
            return Some(LogTables { log, exp });
        }
        None
    }

    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub(crate) fn inv(&self, a: u64) -> u64 {
        let group = self.exp.len() / 2;
        let l = self.log[a as usize] as usize;
        self.exp[(group - l) % group]
    }
}
