//! Independent re-evaluation of failure witnesses.
//!
//! Replay never touches the Cayley tables: it enumerates the ring afresh and
//! evaluates each definition with element arithmetic, so a table bug cannot
//! certify its own output.

use std::collections::BTreeSet;

use dashu_int::IBig;

use super::infinite::as_rational_integer;
use super::{PropertyId, PropertyVerdict, Verdict, WitnessValue};
use crate::descriptor::RingDescriptor;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::reduce;
use crate::ring::{self, Side};

type Set = BTreeSet<Element>;

struct Replayer<'a> {
    desc: &'a RingDescriptor,
    /// All elements when the ring is finite.
    elements: Option<Vec<Element>>,
}

impl<'a> Replayer<'a> {
    fn new(desc: &'a RingDescriptor) -> Result<Self> {
        let elements = if desc.is_finite() {
            Some(ring::enumerate_elements(desc)?)
        } else {
            None
        };
        Ok(Replayer { desc, elements })
    }

    fn all(&self) -> Result<&[Element]> {
        self.elements
            .as_deref()
            .ok_or_else(|| Error::InfiniteRing(self.desc.to_string()))
    }

    fn mul(&self, a: &Element, b: &Element) -> Element {
        ring::mul(self.desc, a, b)
    }

    fn add(&self, a: &Element, b: &Element) -> Element {
        ring::add(self.desc, a, b)
    }

    fn one(&self) -> Element {
        ring::one(self.desc)
    }

    fn units(&self) -> Result<Vec<Element>> {
        match &self.elements {
            Some(all) => Ok(all.iter().filter(|x| self.is_unit_finite(all, x)).cloned().collect()),
            None => ring::units(self.desc),
        }
    }

    fn is_unit_finite(&self, all: &[Element], x: &Element) -> bool {
        let one = self.one();
        all.iter().any(|y| self.mul(x, y) == one && self.mul(y, x) == one)
    }

    fn is_unit(&self, x: &Element) -> Result<bool> {
        match &self.elements {
            Some(all) => Ok(self.is_unit_finite(all, x)),
            None => ring::is_unit(self.desc, x),
        }
    }

    fn principal(&self, a: &Element, side: Side) -> Result<Set> {
        Ok(self
            .all()?
            .iter()
            .map(|r| match side {
                Side::Right => self.mul(a, r),
                Side::Left => self.mul(r, a),
            })
            .collect())
    }

    fn sum(&self, i: &Set, j: &Set) -> Set {
        i.iter().flat_map(|x| j.iter().map(move |y| (x, y))).map(|(x, y)| self.add(x, y)).collect()
    }

    fn additive_closure(&self, gens: &Set) -> Set {
        let mut set: Set = [ring::zero(self.desc)].into();
        loop {
            let next = self.sum(&set, gens);
            let grown: Set = set.union(&next).cloned().collect();
            if grown.len() == set.len() {
                return set;
            }
            set = grown;
        }
    }

    /// aR + bR = R. Infinite rings: rational integers with gcd 1, confirmed
    /// by an explicit Bezout identity.
    fn comaximal(&self, a: &Element, b: &Element) -> Result<bool> {
        if self.elements.is_some() {
            let ia = self.principal(a, Side::Right)?;
            let ib = self.principal(b, Side::Right)?;
            return Ok(self.sum(&ia, &ib).contains(&self.one()));
        }
        let (Some(x), Some(y)) = (as_rational_integer(a), as_rational_integer(b)) else {
            return Ok(false);
        };
        let (g, s, t) = extended_gcd(&x, &y);
        if g != IBig::ONE {
            return Ok(false);
        }
        let s = embed(self.desc, &s);
        let t = embed(self.desc, &t);
        Ok(self.add(&self.mul(a, &s), &self.mul(b, &t)) == self.one())
    }
}

fn embed(desc: &RingDescriptor, n: &IBig) -> Element {
    let small = i64::try_from(n.clone()).expect("Bezout coefficients of sampled pairs are small");
    ring::from_i64(desc, small)
}

fn extended_gcd(a: &IBig, b: &IBig) -> (IBig, IBig, IBig) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (IBig::ONE, IBig::ZERO);
    let (mut t0, mut t1) = (IBig::ZERO, IBig::ONE);
    while r1 != IBig::ZERO {
        let q = &r0 / &r1;
        (r0, r1) = (r1.clone(), &r0 - &q * &r1);
        (s0, s1) = (s1.clone(), &s0 - &q * &s1);
        (t0, t1) = (t1.clone(), &t0 - &q * &t1);
    }
    if r0 < IBig::ZERO {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

fn get<'v>(v: &'v PropertyVerdict, name: &str) -> Result<&'v Element> {
    v.witness_element(name)
        .ok_or_else(|| Error::Semantic(format!("witness for {} lacks '{name}'", v.property)))
}

/// True when the witness of a `fails` verdict reproduces the violation.
/// Verdicts other than `fails` carry nothing to replay and return true.
pub fn replay(v: &PropertyVerdict) -> Result<bool> {
    if v.verdict != Verdict::Fails {
        return Ok(true);
    }
    if v.witness.is_empty() {
        return Ok(false);
    }
    let rp = Replayer::new(&v.ring)?;
    let desc = &v.ring;
    if let Some(bad) = v.witness.iter().find_map(|w| match &w.value {
        WitnessValue::Element(e) if !ring::contains(desc, e) => Some(e),
        _ => None,
    }) {
        return Err(Error::NotAnElement(bad.to_string(), desc.to_string()));
    }
    use PropertyId as P;
    match v.property {
        P::Bezout => {
            let (a, b) = (get(v, "a")?, get(v, "b")?);
            for side in [Side::Right, Side::Left] {
                let ideal = rp.sum(&rp.principal(a, side)?, &rp.principal(b, side)?);
                let mut principal = false;
                for d in rp.all()? {
                    if rp.principal(d, side)? == ideal {
                        principal = true;
                        break;
                    }
                }
                if !principal {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        P::StableRange1 => {
            let (a, b) = (get(v, "a")?, get(v, "b")?);
            if !rp.comaximal(a, b)? {
                return Ok(false);
            }
            if let Some(all) = &rp.elements {
                for t in all {
                    if rp.is_unit(&rp.add(a, &rp.mul(b, t)))? {
                        return Ok(false);
                    }
                }
                return Ok(true);
            }
            // Units are +-1 and a, b are rational integers (checked by comaximal).
            let (x, y) = (as_rational_integer(a).unwrap(), as_rational_integer(b).unwrap());
            for u in rp.units()? {
                let Some(u) = as_rational_integer(&u) else { return Ok(false) };
                let solvable = if y == IBig::ZERO { x == u } else { (&u - &x) % &y == IBig::ZERO };
                if solvable {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        P::UnitStableRange1 => {
            let (a, b) = (get(v, "a")?, get(v, "b")?);
            if !rp.comaximal(a, b)? {
                return Ok(false);
            }
            for u in rp.units()? {
                if rp.is_unit(&rp.add(a, &rp.mul(b, &u)))? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        P::KazimirskyLeft | P::KazimirskyRight => {
            let (a, u, r) = (get(v, "a")?, get(v, "u")?, get(v, "r")?);
            if !rp.is_unit(u)? {
                return Ok(false);
            }
            let (side, x) = if v.property == P::KazimirskyRight {
                (Side::Right, rp.mul(&rp.mul(u, a), r))
            } else {
                (Side::Left, rp.mul(&rp.mul(r, a), u))
            };
            Ok(!rp.principal(a, side)?.contains(&x))
        }
        P::DuoLeft | P::DuoRight => {
            let (a, r) = (get(v, "a")?, get(v, "r")?);
            let (side, x) = if v.property == P::DuoRight {
                (Side::Right, rp.mul(r, a))
            } else {
                (Side::Left, rp.mul(a, r))
            };
            Ok(!rp.principal(a, side)?.contains(&x))
        }
        P::QuasiDuoLeft | P::QuasiDuoRight => {
            let side = if v.property == P::QuasiDuoLeft { Side::Left } else { Side::Right };
            let (m, r) = (get(v, "m")?, get(v, "r")?);
            let mut ideal: Set = [ring::zero(desc)].into();
            for w in v.witness.iter().filter(|w| w.name.starts_with('g')) {
                let g = w.as_element().ok_or_else(|| Error::Semantic("generator is not an element".into()))?;
                ideal = rp.sum(&ideal, &rp.principal(g, side)?);
            }
            let one = rp.one();
            if ideal.contains(&one) || !ideal.contains(m) {
                return Ok(false);
            }
            for x in rp.all()? {
                if !ideal.contains(x) && !rp.sum(&ideal, &rp.principal(x, side)?).contains(&one) {
                    return Ok(false);
                }
            }
            let product = if side == Side::Left { rp.mul(m, r) } else { rp.mul(r, m) };
            Ok(!ideal.contains(&product))
        }
        P::UnitCentral => {
            let (u, a) = (get(v, "u")?, get(v, "a")?);
            Ok(rp.is_unit(u)? && rp.mul(u, a) != rp.mul(a, u))
        }
        P::Dubrovin => {
            let a = get(v, "a")?;
            let all = rp.all()?;
            let products: Set = all
                .iter()
                .flat_map(|r| all.iter().map(move |s| (r, s)))
                .map(|(r, s)| rp.mul(&rp.mul(r, a), s))
                .collect();
            let ideal = rp.additive_closure(&products);
            for b in all {
                if rp.principal(b, Side::Right)? == ideal && rp.principal(b, Side::Left)? == ideal {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        P::IdempotentUnit => {
            let (e, f) = (get(v, "e")?, get(v, "f")?);
            if rp.mul(e, e) != *e || rp.mul(f, f) != *f || !rp.comaximal(e, f)? {
                return Ok(false);
            }
            let units = rp.units()?;
            let one = rp.one();
            for u in &units {
                for w in &units {
                    if rp.add(&rp.mul(e, u), &rp.mul(f, w)) == one {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        P::Hermite | P::EdrSmall => {
            let a = v
                .witness
                .iter()
                .find_map(|w| match &w.value {
                    WitnessValue::Matrix(m) if w.name == "A" => Some(m),
                    _ => None,
                })
                .ok_or_else(|| Error::Semantic(format!("witness for {} lacks matrix 'A'", v.property)))?;
            reduce::replay_irreducible(a, v.property == P::Hermite)
        }
    }
}
