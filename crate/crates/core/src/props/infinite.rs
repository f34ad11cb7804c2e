//! Verdicts for infinite rings: exact arguments where one is available,
//! sampled falsification otherwise, and `unknown` for the rest.

use dashu_int::IBig;

use super::{Meter, PropertyId, PropertyVerdict, Witness};
use crate::descriptor::RingDescriptor;
use crate::element::Element;
use crate::ring;
use crate::skew::{skew_mul, SGrid, SkewPolynomial};

/// Pairs (a, b) with 0 <= a, b <= SAMPLE_HEIGHT are scanned for stable-range counterexamples.
pub const SAMPLE_HEIGHT: i64 = 16;

/// Z, Z[w] and S are domains whose units are exactly 1 and -1.
fn units_are_plus_minus_one(desc: &RingDescriptor) -> bool {
    matches!(
        desc,
        RingDescriptor::Integer | RingDescriptor::QuadraticInteger | RingDescriptor::SkewSubring { .. }
    )
}

pub(crate) fn check(desc: &RingDescriptor, property: PropertyId, budget: u64) -> PropertyVerdict {
    use PropertyId as P;
    let commutative_family = matches!(
        property,
        P::KazimirskyLeft
            | P::KazimirskyRight
            | P::DuoLeft
            | P::DuoRight
            | P::QuasiDuoLeft
            | P::QuasiDuoRight
            | P::UnitCentral
            | P::Dubrovin
    );
    if commutative_family && desc.is_commutative_by_construction() {
        let why = match property {
            P::Dubrovin => "commutative ring: RaR = aR = Ra, take b = a",
            _ => "commutative ring: left and right notions coincide and every one-sided ideal is two-sided",
        };
        return PropertyVerdict::holds(property, desc, 0).with_note(why);
    }
    match (property, desc) {
        (P::UnitCentral | P::KazimirskyLeft | P::KazimirskyRight, RingDescriptor::SkewSubring { max_degree, height }) => {
            skew_units_central(desc, property, *max_degree, *height, budget)
        }
        (P::StableRange1 | P::UnitStableRange1, _) if units_are_plus_minus_one(desc) => {
            integer_pair_sample(desc, property, budget)
        }
        (P::IdempotentUnit, _) if units_are_plus_minus_one(desc) => {
            let one = ring::one(desc);
            PropertyVerdict::fails(
                property,
                desc,
                vec![Witness::element("e", one.clone()), Witness::element("f", one)],
                1,
            )
            .with_note("units are 1 and -1, so eu + fv lies in {-2, 0, 2} for e = f = 1")
        }
        _ => PropertyVerdict::unknown(
            property,
            desc,
            0,
            format!("no decision procedure for {property} on the infinite ring {desc}"),
        ),
    }
}

/// The units of S are 1 and -1 (degree and norm argument). They are checked
/// to commute with every element of the sampling grid. A central unit u gives
/// uaS = auS, which lies in aS, so the same sample settles both Kazimirsky sides.
fn skew_units_central(
    desc: &RingDescriptor,
    property: PropertyId,
    max_degree: usize,
    height: u64,
    budget: u64,
) -> PropertyVerdict {
    let grid = SGrid::new(max_degree, height);
    let total = grid.len();
    let mut meter = Meter::new(budget);
    if !meter.charge(total) {
        return PropertyVerdict::exhausted(property, desc, 0, budget)
            .with_note(format!("sampling grid has {total} elements, budget is {budget}"));
    }
    let units = [SkewPolynomial::one(), SkewPolynomial::one().neg()];
    for f in grid.iter() {
        for u in &units {
            if skew_mul(u, &f) != skew_mul(&f, u) {
                if property == PropertyId::UnitCentral {
                    return PropertyVerdict::fails(
                        property,
                        desc,
                        vec![
                            Witness::element("u", Element::Skew(u.clone())),
                            Witness::element("a", Element::Skew(f)),
                        ],
                        meter.used,
                    );
                }
                return PropertyVerdict::unknown(property, desc, meter.used, "a unit failed to commute");
            }
        }
    }
    PropertyVerdict::holds(property, desc, meter.used).with_note(format!(
        "units of S are exactly 1 and -1; both commute with all {total} grid elements"
    ))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Rational-integer pairs (a, b) with gcd 1 are comaximal. Since the units
/// are +-1 and b is a nonzero rational integer, a + bt = u forces t to be a
/// rational integer, so solvability is plain divisibility b | u - a.
fn integer_pair_sample(desc: &RingDescriptor, property: PropertyId, budget: u64) -> PropertyVerdict {
    let unit_t = property == PropertyId::UnitStableRange1;
    let mut meter = Meter::new(budget);
    for a in 0..=SAMPLE_HEIGHT {
        for b in 0..=SAMPLE_HEIGHT {
            if !meter.charge(1) {
                return PropertyVerdict::exhausted(property, desc, meter.used, budget);
            }
            if gcd(a, b) != 1 {
                continue;
            }
            let solvable = if unit_t {
                [1i64, -1].iter().any(|&t| (a + b * t).abs() == 1)
            } else {
                [1i64, -1].iter().any(|&u| if b == 0 { a == u } else { (u - a) % b == 0 })
            };
            if !solvable {
                let w = |name: &str, v: i64| Witness::element(name, ring::from_i64(desc, v));
                let note = if unit_t {
                    "units are exactly 1 and -1 and neither a + b nor a - b is a unit"
                } else {
                    "units are exactly 1 and -1 and b divides neither 1 - a nor -1 - a"
                };
                return PropertyVerdict::fails(property, desc, vec![w("a", a), w("b", b)], meter.used).with_note(note);
            }
        }
    }
    PropertyVerdict::unknown(
        property,
        desc,
        meter.used,
        format!("no counterexample among integer pairs up to {SAMPLE_HEIGHT}"),
    )
}

/// The rational integer an element of Z, Z[w] or S equals, if any.
pub(crate) fn as_rational_integer(e: &Element) -> Option<IBig> {
    match e {
        Element::Integer(n) => Some(n.clone()),
        Element::QuadInteger(q) if q.im == IBig::ZERO => Some(q.re.clone()),
        Element::Skew(p) if p.degree().unwrap_or(0) == 0 => {
            let c = p.constant_term();
            (c.is_rational() && c.is_integral()).then(|| c.re.numerator().clone())
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use crate::descriptor::RingDescriptor as D;
    use crate::element::Element;

    fn verdict(d: &D, p: PropertyId) -> PropertyVerdict {
        check_property(d, p, DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn integers_fail_stable_range_one() {
        let v = verdict(&D::Integer, PropertyId::StableRange1);
        assert_eq!(v.verdict, Verdict::Fails);
        assert_eq!(v.witness_element("a"), Some(&Element::int(2)));
        assert_eq!(v.witness_element("b"), Some(&Element::int(5)));
        assert!(replay(&v).unwrap());
    }

    #[test]
    fn the_pair_five_seven_replays_over_z() {
        let v = PropertyVerdict::fails(
            PropertyId::StableRange1,
            &D::Integer,
            vec![Witness::element("a", Element::int(5)), Witness::element("b", Element::int(7))],
            0,
        );
        assert!(replay(&v).unwrap());
        let not_a_counterexample = PropertyVerdict::fails(
            PropertyId::StableRange1,
            &D::Integer,
            vec![Witness::element("a", Element::int(2)), Witness::element("b", Element::int(3))],
            0,
        );
        assert!(!replay(&not_a_counterexample).unwrap());
    }

    #[test]
    fn unit_stable_range_fails_on_domains_with_two_units() {
        for d in [D::Integer, D::QuadraticInteger, D::skew_subring(3, 2)] {
            let v = verdict(&d, PropertyId::UnitStableRange1);
            assert_eq!(v.verdict, Verdict::Fails, "{d}");
            assert_eq!(v.witness_element("a"), Some(&crate::ring::one(&d)));
            assert_eq!(v.witness_element("b"), Some(&crate::ring::one(&d)));
            assert!(replay(&v).unwrap());
        }
    }

    #[test]
    fn commutative_infinite_rings() {
        for d in [D::Integer, D::QuadraticInteger, D::QuadraticField] {
            assert_eq!(verdict(&d, PropertyId::KazimirskyRight).verdict, Verdict::Holds);
            assert_eq!(verdict(&d, PropertyId::UnitCentral).verdict, Verdict::Holds);
            assert_eq!(verdict(&d, PropertyId::Bezout).verdict, Verdict::Unknown);
        }
    }

    #[test]
    fn skew_ring_unit_central_on_a_small_grid() {
        let d = D::skew_subring(1, 1);
        let v = verdict(&d, PropertyId::UnitCentral);
        assert_eq!(v.verdict, Verdict::Holds);
        assert_eq!(v.budget_used, 3 * 3 * 9);
        let tight = check_property(&d, PropertyId::UnitCentral, 10).unwrap();
        assert_eq!(tight.verdict, Verdict::Unknown);
        assert!(tight.budget_exceeded);
    }

    #[test]
    fn skew_ring_idempotent_unit_fails() {
        let v = verdict(&D::skew_subring(3, 2), PropertyId::IdempotentUnit);
        assert_eq!(v.verdict, Verdict::Fails);
        assert!(replay(&v).unwrap());
    }
}
