//! Exhaustive checkers over Cayley tables.

use std::collections::HashSet;

use super::ideals::maximal_ideals;
use super::{Meter, PropertyId, PropertyVerdict, Witness};
use crate::descriptor::RingDescriptor;
use crate::error::Result;
use crate::finite::{ElemSet, FiniteRing};
use crate::reduce;
use crate::ring::Side;

pub(crate) enum Outcome {
    Holds,
    Fails(Vec<Witness>),
    Exhausted,
}

macro_rules! charge {
    ($meter:expr, $n:expr) => {
        if !$meter.charge($n as u64) {
            return Ok(Outcome::Exhausted);
        }
    };
}

fn w(fr: &FiniteRing, name: &str, i: usize) -> Witness {
    Witness::element(name, fr.element(i).clone())
}

fn fails(fr: &FiniteRing, named: &[(&str, usize)]) -> Result<Outcome> {
    Ok(Outcome::Fails(named.iter().map(|&(n, i)| w(fr, n, i)).collect()))
}

pub(crate) fn check(desc: &RingDescriptor, property: PropertyId, budget: u64) -> Result<PropertyVerdict> {
    let fr = FiniteRing::of(desc)?;
    let mut meter = Meter::new(budget);
    let outcome = match property {
        PropertyId::Bezout => bezout(&fr, &mut meter),
        PropertyId::Hermite => reduce::hermite_property(&fr, &mut meter),
        PropertyId::StableRange1 => stable_range(&fr, &mut meter, false),
        PropertyId::UnitStableRange1 => stable_range(&fr, &mut meter, true),
        PropertyId::KazimirskyLeft => kazimirsky(&fr, &mut meter, Side::Left),
        PropertyId::KazimirskyRight => kazimirsky(&fr, &mut meter, Side::Right),
        PropertyId::DuoLeft => duo(&fr, &mut meter, Side::Left),
        PropertyId::DuoRight => duo(&fr, &mut meter, Side::Right),
        PropertyId::QuasiDuoLeft => quasi_duo(&fr, &mut meter, Side::Left),
        PropertyId::QuasiDuoRight => quasi_duo(&fr, &mut meter, Side::Right),
        PropertyId::UnitCentral => unit_central(&fr, &mut meter),
        PropertyId::Dubrovin => dubrovin(&fr, &mut meter),
        PropertyId::IdempotentUnit => idempotent_unit(&fr, &mut meter),
        PropertyId::EdrSmall => reduce::edr_property(&fr, &mut meter),
    }?;
    Ok(match outcome {
        Outcome::Holds => PropertyVerdict::holds(property, desc, meter.used),
        Outcome::Fails(witness) => PropertyVerdict::fails(property, desc, witness, meter.used),
        Outcome::Exhausted => PropertyVerdict::exhausted(property, desc, meter.used, meter.limit),
    })
}

/// aR + bR = dR and Ra + Rb = Rd' for some d, d'; right side scanned first.
fn bezout(fr: &FiniteRing, meter: &mut Meter) -> Result<Outcome> {
    let n = fr.len();
    for side in [Side::Right, Side::Left] {
        let principal: HashSet<&ElemSet> = (0..n).map(|d| fr.principal(d, side)).collect();
        for a in 0..n {
            charge!(meter, n);
            for b in 0..n {
                let sum = fr.sum(fr.principal(a, side), fr.principal(b, side));
                if !principal.contains(&sum) {
                    return fails(fr, &[("a", a), ("b", b)]);
                }
            }
        }
    }
    Ok(Outcome::Holds)
}

/// aR + bR = R implies a + bt is a unit for some t (some unit t when `unit_t`).
fn stable_range(fr: &FiniteRing, meter: &mut Meter, unit_t: bool) -> Result<Outcome> {
    let n = fr.len();
    let all: Vec<usize> = (0..n).collect();
    let ts: &[usize] = if unit_t { fr.units() } else { &all };
    for a in 0..n {
        charge!(meter, n);
        for b in 0..n {
            if !fr.comaximal(a, b, Side::Right) {
                continue;
            }
            if !ts.iter().any(|&t| fr.is_unit(fr.add(a, fr.mul(b, t)))) {
                return fails(fr, &[("a", a), ("b", b)]);
            }
        }
    }
    Ok(Outcome::Holds)
}

/// Right: uar in aR for all a, units u, r. Left: rau in Ra.
fn kazimirsky(fr: &FiniteRing, meter: &mut Meter, side: Side) -> Result<Outcome> {
    let n = fr.len();
    for a in 0..n {
        let ideal = fr.principal(a, side);
        for &u in fr.units() {
            charge!(meter, n);
            for r in 0..n {
                let x = match side {
                    Side::Right => fr.mul(fr.mul(u, a), r),
                    Side::Left => fr.mul(fr.mul(r, a), u),
                };
                if !ideal.contains(x) {
                    return fails(fr, &[("a", a), ("u", u), ("r", r)]);
                }
            }
        }
    }
    Ok(Outcome::Holds)
}

/// Right: ra in aR for all a, r. Left: ar in Ra.
fn duo(fr: &FiniteRing, meter: &mut Meter, side: Side) -> Result<Outcome> {
    let n = fr.len();
    for a in 0..n {
        charge!(meter, n);
        let ideal = fr.principal(a, side);
        for r in 0..n {
            let x = match side {
                Side::Right => fr.mul(r, a),
                Side::Left => fr.mul(a, r),
            };
            if !ideal.contains(x) {
                return fails(fr, &[("a", a), ("r", r)]);
            }
        }
    }
    Ok(Outcome::Holds)
}

/// Every maximal one-sided ideal on `side` is two-sided.
fn quasi_duo(fr: &FiniteRing, meter: &mut Meter, side: Side) -> Result<Outcome> {
    let n = fr.len();
    for ideal in maximal_ideals(fr, side)? {
        for m in ideal.set.ones() {
            charge!(meter, n);
            for r in 0..n {
                let x = match side {
                    Side::Left => fr.mul(m, r),
                    Side::Right => fr.mul(r, m),
                };
                if !ideal.set.contains(x) {
                    let mut witness: Vec<Witness> = ideal
                        .generators
                        .iter()
                        .enumerate()
                        .map(|(i, &g)| w(fr, &format!("g{}", i + 1), g))
                        .collect();
                    witness.push(w(fr, "m", m));
                    witness.push(w(fr, "r", r));
                    return Ok(Outcome::Fails(witness));
                }
            }
        }
    }
    Ok(Outcome::Holds)
}

fn unit_central(fr: &FiniteRing, meter: &mut Meter) -> Result<Outcome> {
    let n = fr.len();
    for &u in fr.units() {
        charge!(meter, n);
        for a in 0..n {
            if fr.mul(u, a) != fr.mul(a, u) {
                return fails(fr, &[("u", u), ("a", a)]);
            }
        }
    }
    Ok(Outcome::Holds)
}

/// RaR = bR = Rb for some b.
fn dubrovin(fr: &FiniteRing, meter: &mut Meter) -> Result<Outcome> {
    let n = fr.len();
    for a in 0..n {
        charge!(meter, n);
        let ideal = fr.two_sided_ideal(a);
        let ok = (0..n).any(|b| fr.right_ideal(b) == ideal && fr.left_ideal(b) == ideal);
        if !ok {
            return fails(fr, &[("a", a)]);
        }
    }
    Ok(Outcome::Holds)
}

/// Idempotents e, f with eR + fR = R admit units u, v with eu + fv = 1.
fn idempotent_unit(fr: &FiniteRing, meter: &mut Meter) -> Result<Outcome> {
    let idem = fr.idempotents();
    let units = fr.units();
    for &e in &idem {
        charge!(meter, idem.len());
        for &f in &idem {
            if !fr.comaximal(e, f, Side::Right) {
                continue;
            }
            let ok = units
                .iter()
                .any(|&u| units.iter().any(|&v| fr.add(fr.mul(e, u), fr.mul(f, v)) == fr.one()));
            if !ok {
                return fails(fr, &[("e", e), ("f", f)]);
            }
        }
    }
    Ok(Outcome::Holds)
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use crate::descriptor::RingDescriptor as D;
    use crate::element::Element;
    use crate::literal::parse_element;

    fn m2z2() -> D {
        D::matrix(2, D::Modular(2))
    }

    fn tri2() -> D {
        D::upper_triangular(2, D::Modular(2))
    }

    fn verdict(d: &D, p: PropertyId) -> PropertyVerdict {
        check_property(d, p, DEFAULT_BUDGET).unwrap()
    }

    fn el(d: &D, s: &str) -> Element {
        parse_element(d, s).unwrap()
    }

    #[test]
    fn bezout_examples() {
        for d in [D::Modular(6), m2z2(), D::Modular(4)] {
            assert_eq!(verdict(&d, PropertyId::Bezout).verdict, Verdict::Holds, "{d}");
        }
    }

    #[test]
    fn stable_range_examples() {
        assert_eq!(verdict(&D::Modular(2), PropertyId::StableRange1).verdict, Verdict::Holds);
        assert_eq!(verdict(&m2z2(), PropertyId::StableRange1).verdict, Verdict::Holds);
    }

    #[test]
    fn unit_stable_range_examples() {
        let z2 = verdict(&D::Modular(2), PropertyId::UnitStableRange1);
        assert_eq!(z2.verdict, Verdict::Fails);
        assert_eq!(z2.witness_element("a"), Some(&Element::Residue(1)));
        assert_eq!(z2.witness_element("b"), Some(&Element::Residue(1)));
        assert_eq!(verdict(&m2z2(), PropertyId::UnitStableRange1).verdict, Verdict::Holds);
        assert_eq!(verdict(&D::Modular(3), PropertyId::UnitStableRange1).verdict, Verdict::Holds);
    }

    #[test]
    fn kazimirsky_examples() {
        assert_eq!(verdict(&D::Modular(6), PropertyId::KazimirskyRight).verdict, Verdict::Holds);
        let v = verdict(&m2z2(), PropertyId::KazimirskyRight);
        assert_eq!(v.verdict, Verdict::Fails);
        assert!(replay(&v).unwrap());
        assert_eq!(verdict(&m2z2(), PropertyId::KazimirskyLeft).verdict, Verdict::Fails);
    }

    #[test]
    fn duo_examples() {
        for n in 2..=12 {
            assert_eq!(verdict(&D::Modular(n), PropertyId::DuoLeft).verdict, Verdict::Holds);
            assert_eq!(verdict(&D::Modular(n), PropertyId::DuoRight).verdict, Verdict::Holds);
        }
        for d in [m2z2(), tri2()] {
            let v = verdict(&d, PropertyId::DuoRight);
            assert_eq!(v.verdict, Verdict::Fails, "{d}");
            assert!(replay(&v).unwrap());
        }
    }

    #[test]
    fn unit_central_examples() {
        assert_eq!(verdict(&D::Modular(6), PropertyId::UnitCentral).verdict, Verdict::Holds);
        let v = verdict(&m2z2(), PropertyId::UnitCentral);
        assert_eq!(v.verdict, Verdict::Fails);
        assert_eq!(v.witness_element("u"), Some(&el(&m2z2(), "[[0,1],[1,0]]")));
        assert_eq!(v.witness_element("a"), Some(&el(&m2z2(), "[[0,0],[0,1]]")));
    }

    #[test]
    fn quasi_duo_examples() {
        assert_eq!(verdict(&D::Modular(6), PropertyId::QuasiDuoLeft).verdict, Verdict::Holds);
        assert_eq!(verdict(&D::Modular(4), PropertyId::QuasiDuoLeft).verdict, Verdict::Holds);
        let v = verdict(&m2z2(), PropertyId::QuasiDuoLeft);
        assert_eq!(v.verdict, Verdict::Fails);
        assert!(replay(&v).unwrap());
    }

    #[test]
    fn dubrovin_examples() {
        assert_eq!(verdict(&D::Modular(6), PropertyId::Dubrovin).verdict, Verdict::Holds);
        assert_eq!(verdict(&m2z2(), PropertyId::Dubrovin).verdict, Verdict::Holds);
        let v = verdict(&tri2(), PropertyId::Dubrovin);
        assert_ne!(v.verdict, Verdict::Unknown);
        if v.verdict == Verdict::Fails {
            assert!(replay(&v).unwrap());
        }
    }

    #[test]
    fn idempotent_unit_examples() {
        assert_eq!(verdict(&m2z2(), PropertyId::IdempotentUnit).verdict, Verdict::Holds);
        let v = verdict(&D::Modular(2), PropertyId::IdempotentUnit);
        assert_eq!(v.verdict, Verdict::Fails);
        assert_eq!(v.witness_element("e"), Some(&Element::Residue(1)));
        assert_eq!(v.witness_element("f"), Some(&Element::Residue(1)));
        assert_eq!(verdict(&D::Modular(3), PropertyId::IdempotentUnit).verdict, Verdict::Holds);
    }

    #[test]
    fn small_budget_gives_unknown() {
        let v = check_property(&m2z2(), PropertyId::UnitCentral, 10).unwrap();
        assert_eq!(v.verdict, Verdict::Unknown);
        assert!(v.budget_exceeded);
    }

    #[test]
    fn commutative_rings_satisfy_the_commutativity_family() {
        let rings: Vec<D> = (2..=12)
            .map(D::Modular)
            .chain([D::Product(vec![D::Modular(2), D::Modular(3)]), D::Product(vec![D::Modular(6), D::Modular(6)])])
            .collect();
        for d in rings {
            for p in [
                PropertyId::KazimirskyLeft,
                PropertyId::KazimirskyRight,
                PropertyId::DuoLeft,
                PropertyId::DuoRight,
                PropertyId::QuasiDuoLeft,
                PropertyId::QuasiDuoRight,
                PropertyId::UnitCentral,
            ] {
                assert_eq!(verdict(&d, p).verdict, Verdict::Holds, "{d} {p}");
            }
        }
    }
}
