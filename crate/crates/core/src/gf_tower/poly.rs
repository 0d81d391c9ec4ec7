//! Dense univariate polynomials over a [`FiniteField`], little-endian and
//! trimmed (the zero polynomial is the empty vector).

use super::FiniteField;

pub(crate) fn trim<F: FiniteField>(f: &F, mut a: Vec<F::Elem>) -> Vec<F::Elem> {
    while a.last().is_some_and(|&c| f.is_zero(c)) {
        a.pop();
    }
    a
}

pub(crate) fn mul<F: FiniteField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(f, out)
}

/// Remainder of `a` modulo a monic `modulus`.
pub(crate) fn rem_monic<F: FiniteField>(f: &F, a: &[F::Elem], modulus: &[F::Elem]) -> Vec<F::Elem> {
    let deg = modulus.len() - 1;
    let mut r = trim(f, a.to_vec());
    while r.len() > deg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - deg;
        for (i, &c) in modulus.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(lead, c));
        }
        r = trim(f, r);
    }
    r
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-`order`
/// digits of `t`. Increasing `t` walks the monic polynomials in integer order.
pub(crate) fn monic_from_index<F: FiniteField>(f: &F, deg: usize, mut t: u64) -> Vec<F::Elem> {
    let q = f.order();
    let mut out = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        out.push(f.element(t % q).expect("digit below order"));
        t /= q;
    }
    out.push(f.one());
    out
}

/// Irreducibility by trial division against every monic polynomial of degree
/// at most `deg/2`.
pub(crate) fn is_irreducible<F: FiniteField>(f: &F, poly: &[F::Elem]) -> bool {
    let poly = trim(f, poly.to_vec());
    if poly.len() < 2 {
        return false;
    }
    let deg = poly.len() - 1;
    let q = f.order();
    for e in 1..=deg / 2 {
        let count = q.pow(e as u32);
        for t in 0..count {
            let divisor = monic_from_index(f, e, t);
            if rem_monic(f, &poly, &divisor).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible of degree `deg` in integer order.
pub(crate) fn smallest_irreducible<F: FiniteField>(f: &F, deg: usize) -> Vec<F::Elem> {
    let mut t = 0u64;
    loop {
        let cand = monic_from_index(f, deg, t);
        if is_irreducible(f, &cand) {
            return cand;
        }
        t += 1;
    }
}
