//! Property tests for the polynomial core: ring axioms under exact
//! equality, the Leibniz rule, substitution as a ring homomorphism, and the
//! parse/print fixpoint.

use std::collections::BTreeMap;

use proptest::prelude::*;

use kellerkit_core::polyring::{parse_poly, rat_int, Monomial, Polynomial, Rational, VarSet};

fn vars_xy() -> VarSet {
    VarSet::new(["x", "y"]).unwrap()
}

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    let term = (0u32..4, 0u32..4, -6i64..=6);
    proptest::collection::vec(term, 0..6).prop_map(|terms| {
        let vars = vars_xy();
        Polynomial::from_terms(
            &vars,
            terms.into_iter().map(|(a, b, c)| {
                (
                    Monomial::from_exponents([a, b]),
                    Rational::from_integer(c.into()),
                )
            }),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        // associativity and commutativity of + and *
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        // distributivity
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        // additive inverse and neutral elements
        let vars = vars_xy();
        prop_assert_eq!(&p - &p, Polynomial::zero(&vars));
        prop_assert_eq!(&p * &Polynomial::one(&vars), p.clone());
    }

    #[test]
    fn leibniz_rule(p in arb_poly(), q in arb_poly()) {
        let product = &p * &q;
        for v in ["x", "y"] {
            let lhs = product.partial_derivative(v).unwrap();
            let rhs = &(&p.partial_derivative(v).unwrap() * &q)
                + &(&p * &q.partial_derivative(v).unwrap());
            prop_assert_eq!(&lhs, &rhs);
        }
    }

    #[test]
    fn derivative_is_linear(p in arb_poly(), q in arb_poly()) {
        let lhs = (&p + &q).partial_derivative("x").unwrap();
        let rhs = &p.partial_derivative("x").unwrap() + &q.partial_derivative("x").unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_is_a_ring_homomorphism(
        p in arb_poly(),
        q in arb_poly(),
        r in arb_poly(),
        img_x in arb_poly(),
        img_y in arb_poly(),
    ) {
        let mut images = BTreeMap::new();
        images.insert("x".to_string(), img_x);
        images.insert("y".to_string(), img_y);
        let value = (&(&p * &q) + &r).substitute(&images).unwrap();
        let split = &(&p.substitute(&images).unwrap() * &q.substitute(&images).unwrap())
            + &r.substitute(&images).unwrap();
        prop_assert_eq!(value, split);
    }

    #[test]
    fn substitute_identity_is_identity(p in arb_poly()) {
        let vars = vars_xy();
        let mut images = BTreeMap::new();
        images.insert("x".to_string(), Polynomial::variable(&vars, "x").unwrap());
        images.insert("y".to_string(), Polynomial::variable(&vars, "y").unwrap());
        prop_assert_eq!(p.substitute(&images).unwrap(), p);
    }

    #[test]
    fn print_then_parse_is_identity(p in arb_poly()) {
        let vars = vars_xy();
        let text = p.to_string();
        let back = parse_poly(&text, &vars).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn evaluate_agrees_with_full_substitution(p in arb_poly(), a in -9i64..=9, b in -9i64..=9) {
        let mut point = BTreeMap::new();
        point.insert("x".to_string(), rat_int(a));
        point.insert("y".to_string(), rat_int(b));
        let direct = p.evaluate(&point).unwrap();

        let vars = vars_xy();
        let mut images = BTreeMap::new();
        images.insert("x".to_string(), Polynomial::constant(&vars, rat_int(a)));
        images.insert("y".to_string(), Polynomial::constant(&vars, rat_int(b)));
        let via_subst = p.substitute(&images).unwrap();
        prop_assert_eq!(via_subst.constant_value().unwrap(), direct);
    }

    #[test]
    fn pow_matches_repeated_multiplication(p in arb_poly(), e in 0u32..5) {
        let mut expected = Polynomial::one(&vars_xy());
        for _ in 0..e {
            expected = &expected * &p;
        }
        prop_assert_eq!(p.pow(e), expected);
    }
}

#[test]
fn spec_fixed_points() {
    let vars = vars_xy();
    // substitution inverse pair
    let mut images = BTreeMap::new();
    images.insert("x".to_string(), Polynomial::variable(&vars, "x").unwrap());
    images.insert("y".to_string(), parse_poly("y + x^2", &vars).unwrap());
    let p = parse_poly("y - x^2", &vars).unwrap();
    assert_eq!(
        p.substitute(&images).unwrap(),
        Polynomial::variable(&vars, "y").unwrap()
    );

    // evaluation of the squares fixture at a point on the hypersurface
    let uvs = VarSet::new(["u", "v", "s"]).unwrap();
    let g = parse_poly("(s^2 - u - v)^2 - 4*u*v", &uvs).unwrap();
    let mut point = BTreeMap::new();
    point.insert("u".to_string(), rat_int(1));
    point.insert("v".to_string(), rat_int(1));
    point.insert("s".to_string(), rat_int(2));
    assert_eq!(g.evaluate(&point).unwrap(), rat_int(0));

    // derivative fixture
    let ds = g.partial_derivative("s").unwrap();
    assert_eq!(ds, parse_poly("4*s*(s^2 - u - v)", &uvs).unwrap());
}
