use dashu_ratio::RBig;
use proptest::prelude::*;

use ringlab::quadratic::{quad_norm, sigma, QuadInt, QuadValue};
use ringlab::skew::{skew_mul, SkewPolynomial};
use ringlab::{make_ring, Element, FiniteRing, Ring, RingDescriptor as D};

fn finite_rings() -> Vec<D> {
    vec![
        D::Modular(6),
        D::Modular(8),
        D::matrix(2, D::Modular(2)),
        D::upper_triangular(2, D::Modular(3)),
        D::Product(vec![D::Modular(2), D::Modular(3)]),
        D::Product(vec![D::upper_triangular(2, D::Modular(2)), D::Modular(3)]),
    ]
}

fn assert_ring_laws(r: &Ring, a: &Element, b: &Element, c: &Element) {
    assert_eq!(r.add(a, b), r.add(b, a));
    assert_eq!(r.add(&r.add(a, b), c), r.add(a, &r.add(b, c)));
    assert_eq!(r.mul(&r.mul(a, b), c), r.mul(a, &r.mul(b, c)));
    assert_eq!(r.mul(a, &r.add(b, c)), r.add(&r.mul(a, b), &r.mul(a, c)));
    assert_eq!(r.mul(&r.add(a, b), c), r.add(&r.mul(a, c), &r.mul(b, c)));
    assert_eq!(r.add(a, &r.neg(a)), r.zero());
    assert_eq!(r.mul(a, &r.one()), *a);
    assert_eq!(r.mul(&r.one(), a), *a);
}

fn small_rational() -> impl Strategy<Value = RBig> {
    (-30i64..=30, 1u64..=12).prop_map(|(p, q)| RBig::from_parts(p.into(), q.into()))
}

fn quad_value() -> impl Strategy<Value = QuadValue> {
    (small_rational(), small_rational()).prop_map(|(a, b)| QuadValue::new(a, b))
}

fn quad_int() -> impl Strategy<Value = QuadInt> {
    (-40i64..=40, -40i64..=40).prop_map(|(a, b)| QuadInt::from_ints(a, b))
}

fn s_element() -> impl Strategy<Value = SkewPolynomial> {
    (quad_int(), prop::collection::vec(quad_value(), 0..4)).prop_map(|(c0, rest)| {
        let mut coeffs = vec![c0.to_value()];
        coeffs.extend(rest);
        SkewPolynomial::new(coeffs)
    })
}

proptest! {
    #[test]
    fn finite_rings_satisfy_the_axioms(which in 0usize..6, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>(), k in any::<prop::sample::Index>()) {
        let desc = &finite_rings()[which];
        let fr = FiniteRing::of(desc).unwrap();
        let r = make_ring(desc.clone()).unwrap();
        let pick = |ix: &prop::sample::Index| fr.element(ix.index(fr.len())).clone();
        assert_ring_laws(&r, &pick(&i), &pick(&j), &pick(&k));
    }

    #[test]
    fn integers_satisfy_the_axioms(a in -10_000i64..10_000, b in -10_000i64..10_000, c in -10_000i64..10_000) {
        let r = make_ring(D::Integer).unwrap();
        assert_ring_laws(&r, &Element::int(a), &Element::int(b), &Element::int(c));
    }

    #[test]
    fn quadratic_integers_satisfy_the_axioms(a in quad_int(), b in quad_int(), c in quad_int()) {
        let r = make_ring(D::QuadraticInteger).unwrap();
        let (a, b, c) = (Element::QuadInteger(a), Element::QuadInteger(b), Element::QuadInteger(c));
        assert_ring_laws(&r, &a, &b, &c);
        prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
    }

    #[test]
    fn norm_is_multiplicative(a in quad_value(), b in quad_value()) {
        prop_assert_eq!(quad_norm(&(&a * &b)), quad_norm(&a) * quad_norm(&b));
    }

    #[test]
    fn integer_norm_is_multiplicative(a in quad_int(), b in quad_int()) {
        prop_assert_eq!(a.mul(&b).norm(), a.norm() * b.norm());
    }

    #[test]
    fn sigma_is_an_involutive_automorphism(a in quad_value(), b in quad_value()) {
        prop_assert_eq!(sigma(&sigma(&a)), a.clone());
        prop_assert_eq!(sigma(&(&a + &b)), &sigma(&a) + &sigma(&b));
        prop_assert_eq!(sigma(&(&a * &b)), &sigma(&a) * &sigma(&b));
    }

    #[test]
    fn skew_ring_satisfies_the_axioms(f in s_element(), g in s_element(), h in s_element()) {
        let r = make_ring(D::skew_subring(3, 2)).unwrap();
        let (f, g, h) = (Element::Skew(f), Element::Skew(g), Element::Skew(h));
        assert_ring_laws(&r, &f, &g, &h);
    }

    #[test]
    fn skew_product_is_closed_in_s(f in s_element(), g in s_element()) {
        prop_assert!(skew_mul(&f, &g).in_s());
    }

    #[test]
    fn x_twists_constants(c in quad_value()) {
        let x = SkewPolynomial::x();
        let c_poly = SkewPolynomial::constant(c.clone());
        prop_assert_eq!(skew_mul(&x, &c_poly), skew_mul(&SkewPolynomial::constant(sigma(&c)), &x));
    }
}
