use matgraph::{BaseField, ExtField, FieldTower, FiniteField, Fq, FqN};
use proptest::prelude::*;

/// Schoolbook product of digit vectors modulo a monic polynomial over `F_p`.
fn oracle_mul(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let deg = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for top in (deg..prod.len()).rev() {
        let c = prod[top];
        if c != 0 {
            for (k, &mk) in modulus.iter().enumerate() {
                let idx = top - deg + k;
                prod[idx] = (prod[idx] + p * p - c * mk % p) % p;
            }
        }
    }
    prod.truncate(deg);
    prod.resize(deg, 0);
    prod
}

fn towers() -> Vec<FieldTower> {
    [(2, 1, 1), (2, 1, 3), (3, 1, 2), (2, 2, 2), (5, 1, 2), (2, 3, 3), (7, 1, 3), (2, 1, 9)]
        .iter()
        .map(|&(p, m, n)| FieldTower::build(p, m, n).unwrap())
        .collect()
}

#[test]
fn base_field_products_match_schoolbook_oracle() {
    for (p, m) in [(2u64, 3usize), (3, 2), (5, 2), (2, 5)] {
        let f = BaseField::new(p, m).unwrap();
        let modulus: Vec<u32> = f.modulus().to_vec();
        for a in f.elements() {
            for b in f.elements() {
                let want = oracle_mul(&f.coeffs(a), &f.coeffs(b), &modulus, p as u32);
                assert_eq!(f.coeffs(f.mul(a, b)), want, "p={p} m={m} a={a:?} b={b:?}");
            }
        }
    }
}

#[test]
fn smallest_moduli() {
    assert_eq!(BaseField::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
    assert_eq!(BaseField::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
    assert_eq!(BaseField::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
    let ext = FieldTower::build(2, 1, 3).unwrap();
    assert_eq!(ext.ext().generator(), FqN(2));
}

#[test]
fn multiplicative_groups_are_cyclic() {
    for t in towers() {
        let g = t.primitive_element();
        assert_eq!(t.element_order(g).unwrap(), t.ext_order() - 1);
    }
}

#[test]
fn frobenius_has_order_n() {
    for t in towers() {
        for x in t.ext().elements() {
            assert_eq!(t.frobenius(x, t.degree() as u64), x);
        }
        // Fixed points of x -> x^q are exactly the embedded base field.
        let fixed = t.ext().elements().filter(|&x| t.frobenius(x, 1) == x).count() as u64;
        assert_eq!(fixed, t.q());
    }
}

fn arb_tower() -> impl Strategy<Value = (FieldTower, u64, u64, u64)> {
    (0..8usize).prop_flat_map(|i| {
        let t = towers().swap_remove(i);
        let o = t.ext_order();
        (Just(t), 0..o, 0..o, 0..o)
    })
}

proptest! {
    #[test]
    fn ext_field_axioms((t, a, b, c) in arb_tower()) {
        let f: &ExtField = t.ext();
        let (a, b, c) = (f.element(a).unwrap(), f.element(b).unwrap(), f.element(c).unwrap());
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        if !f.is_zero(a) {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
    }

    #[test]
    fn frobenius_is_linear_over_base((t, a, b, c) in arb_tower()) {
        let f = t.ext();
        let k = t.base().element(c % t.q()).unwrap();
        let (a, b) = (FqN(a), FqN(b));
        let lhs = t.frobenius(f.add(f.mul(t.ext().embed(k), a), b), 1);
        let rhs = f.add(f.mul(t.ext().embed(k), t.frobenius(a, 1)), t.frobenius(b, 1));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(t.frobenius(f.mul(a, b), 1), f.mul(t.frobenius(a, 1), t.frobenius(b, 1)));
    }

    #[test]
    fn expand_contract_round_trip((t, a, _b, _c) in arb_tower()) {
        let x = FqN(a);
        let v = t.expand(x);
        prop_assert_eq!(v.len(), t.degree());
        prop_assert_eq!(t.contract(&v).unwrap(), x);
        prop_assert_eq!(t.fqn_from_json(&t.fqn_to_json(x)).unwrap(), x);
    }
}

#[test]
fn expand_is_additive() {
    let t = FieldTower::build(3, 1, 2).unwrap();
    let f = t.base();
    for a in t.ext().elements() {
        for b in t.ext().elements() {
            let sum: Vec<Fq> = t.expand(a).iter().zip(t.expand(b)).map(|(&x, y)| f.add(x, y)).collect();
            assert_eq!(t.expand(t.ext().add(a, b)), sum);
        }
    }
}

#[test]
fn tower_description_round_trips() {
    for t in towers() {
        let json = serde_json::to_string(&t.desc()).unwrap();
        let back = FieldTower::from_desc(&serde_json::from_str(&json).unwrap()).unwrap();
        assert!(back.same_as(&t));
    }
}
