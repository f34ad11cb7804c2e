//! Witness-producing constructions for the transfer and decomposition results.
//!
//! Every search runs in enumeration order, so each returned element is the
//! smallest one that works, and every result is re-checked against its
//! defining equation before it is returned.

use std::sync::Arc;

use rayon::prelude::*;

use crate::descriptor::RingDescriptor;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::finite::FiniteRing;
use crate::ring::{self, Side};

fn finite(ring: &RingDescriptor) -> Result<Arc<FiniteRing>> {
    ring.validate()?;
    if !ring.is_finite() {
        return Err(Error::InfiniteRing(ring.to_string()));
    }
    FiniteRing::of(ring)
}

fn first(fr: &FiniteRing, pred: impl Fn(usize) -> bool) -> Option<usize> {
    (0..fr.len()).find(|&i| pred(i))
}

/// Smallest t with a + b t a unit, given aR + bR = R.
pub fn sr1_witness(ring: &RingDescriptor, a: &Element, b: &Element) -> Result<Element> {
    let fr = finite(ring)?;
    let (a, b) = (fr.index_of(a)?, fr.index_of(b)?);
    Ok(fr.element(sr1_index(&fr, a, b)?).clone())
}

fn sr1_index(fr: &FiniteRing, a: usize, b: usize) -> Result<usize> {
    if !fr.comaximal(a, b, Side::Right) {
        return Err(Error::NotComaximal);
    }
    first(fr, |t| fr.is_unit(fr.add(a, fr.mul(b, t)))).ok_or_else(|| {
        Error::NoWitness(format!(
            "no t makes {} + {}·t a unit in {}",
            fr.element(a),
            fr.element(b),
            fr.descriptor()
        ))
    })
}

/// Elements built while turning a right comaximal pair into a left one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferWitness {
    pub a: Element,
    pub b: Element,
    /// a + b t = u is a unit.
    pub t: Element,
    pub u: Element,
    /// x a + t = w is a unit.
    pub x: Element,
    pub w: Element,
    /// b w = y b.
    pub y: Element,
    /// p = 1 - b x, q = y.
    pub p: Element,
    pub q: Element,
    /// p a + q b, which equals u.
    pub unit: Element,
}

/// From aR + bR = R, builds p, q with p a + q b a unit, so Ra + Rb = R.
///
/// Steps: (1) t with a + b t a unit; (2) x with x a + t = w a unit;
/// (3) y with b w = y b; (4) p = 1 - b x, q = y and p a + q b = a + b t.
/// A failing step is reported by number; it means a hypothesis (stable range
/// 1 or the left Kazimirsky condition) does not hold in this ring.
pub fn theorem1_transfer(ring: &RingDescriptor, a: &Element, b: &Element) -> Result<TransferWitness> {
    let fr = finite(ring)?;
    transfer_indices(&fr, fr.index_of(a)?, fr.index_of(b)?)
}

fn transfer_indices(fr: &FiniteRing, a: usize, b: usize) -> Result<TransferWitness> {
    let fail = |step: u8, reason: String| Error::ConstructionFailed { step, reason };
    let el = |i: usize| fr.element(i).clone();
    let t = match sr1_index(fr, a, b) {
        Ok(t) => t,
        Err(Error::NoWitness(why)) => return Err(fail(1, why)),
        Err(e) => return Err(e),
    };
    let u = fr.add(a, fr.mul(b, t));
    let x = first(fr, |x| fr.is_unit(fr.add(fr.mul(x, a), t)))
        .ok_or_else(|| fail(2, format!("no x makes x·{} + {} a unit", el(a), el(t))))?;
    let w = fr.add(fr.mul(x, a), t);
    let bw = fr.mul(b, w);
    let y = first(fr, |y| fr.mul(y, b) == bw)
        .ok_or_else(|| fail(3, format!("{}·{} is not in R·{}", el(b), el(w), el(b))))?;
    let p = fr.sub(fr.one(), fr.mul(b, x));
    let q = y;
    let unit = fr.add(fr.mul(p, a), fr.mul(q, b));
    if !fr.is_unit(unit) {
        return Err(fail(4, format!("p·a + q·b = {} is not a unit", el(unit))));
    }
    Ok(TransferWitness {
        a: el(a),
        b: el(b),
        t: el(t),
        u: el(u),
        x: el(x),
        w: el(w),
        y: el(y),
        p: el(p),
        q: el(q),
        unit: el(unit),
    })
}

/// Outcome of running the transfer on every right comaximal pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferSweep {
    pub ring: RingDescriptor,
    pub pairs: usize,
    pub succeeded: usize,
    /// Pairs where the construction stopped, with the reason.
    pub failures: Vec<(Element, Element, Error)>,
}

pub fn theorem1_sweep(ring: &RingDescriptor) -> Result<TransferSweep> {
    let fr = finite(ring)?;
    let n = fr.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| fr.comaximal(a, b, Side::Right))
        .collect();
    let results: Vec<_> = pairs
        .par_iter()
        .map(|&(a, b)| (a, b, transfer_indices(&fr, a, b)))
        .collect();
    let mut sweep = TransferSweep {
        ring: ring.clone(),
        pairs: pairs.len(),
        succeeded: 0,
        failures: Vec::new(),
    };
    for (a, b, r) in results {
        match r {
            Ok(w) => {
                // Ra + Rb must contain the reported unit, by set arithmetic.
                let left_sum = fr.sum(fr.left_ideal(a), fr.left_ideal(b));
                let unit = fr.index_of(&w.unit)?;
                if !left_sum.contains(unit) {
                    return Err(Error::InvalidCertificate(format!("{} is not in Ra + Rb", w.unit)));
                }
                sweep.succeeded += 1;
            }
            Err(e) => sweep.failures.push((fr.element(a).clone(), fr.element(b).clone(), e)),
        }
    }
    Ok(sweep)
}

/// Smallest unit v with v a = a u, assuming Ra = Rau.
pub fn prop1_unit_commute(ring: &RingDescriptor, a: &Element, u: &Element) -> Result<Element> {
    let fr = finite(ring)?;
    let (ai, ui) = (fr.index_of(a)?, fr.index_of(u)?);
    if !fr.is_unit(ui) {
        return Err(Error::NotUnit(u.to_string()));
    }
    let au = fr.mul(ai, ui);
    if fr.left_ideal(ai) != fr.left_ideal(au) {
        return Err(Error::HypothesisFailed(format!("R·{a} != R·{a}·{u}")));
    }
    fr.units()
        .iter()
        .copied()
        .find(|&v| fr.mul(v, ai) == au)
        .map(|v| fr.element(v).clone())
        .ok_or_else(|| Error::NoWitness(format!("no unit v with v·{a} = {a}·{u}")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop2Witness {
    /// u = 1 + x a.
    pub u: Element,
    /// y = 1 + a x, with y a = a u.
    pub y: Element,
}

/// For 1 + x a a unit u, y = 1 + a x satisfies y a = a u. Works in any ring.
pub fn prop2_witness(ring: &RingDescriptor, a: &Element, x: &Element) -> Result<Prop2Witness> {
    ring.validate()?;
    for e in [a, x] {
        if !ring::contains(ring, e) {
            return Err(Error::NotAnElement(e.to_string(), ring.to_string()));
        }
    }
    let one = ring::one(ring);
    let u = ring::add(ring, &one, &ring::mul(ring, x, a));
    if !ring::is_unit(ring, &u)? {
        return Err(Error::NotUnit(u.to_string()));
    }
    let y = ring::add(ring, &one, &ring::mul(ring, a, x));
    if ring::mul(ring, &y, a) != ring::mul(ring, a, &u) {
        return Err(Error::InvalidCertificate(format!("({y})·{a} != {a}·({u})")));
    }
    Ok(Prop2Witness { u, y })
}

/// Units u, w with u + w = a, u smallest.
pub fn prop4_unit_sum(ring: &RingDescriptor, a: &Element) -> Result<(Element, Element)> {
    let fr = finite(ring)?;
    let (u, w) = unit_sum_indices(&fr, fr.index_of(a)?)?;
    Ok((fr.element(u).clone(), fr.element(w).clone()))
}

fn unit_sum_indices(fr: &FiniteRing, a: usize) -> Result<(usize, usize)> {
    if a == 0 {
        return Err(Error::ZeroInput);
    }
    fr.units()
        .iter()
        .map(|&u| (u, fr.sub(a, u)))
        .find(|&(_, w)| fr.is_unit(w))
        .ok_or_else(|| Error::NoDecomposition(format!("{} in {}", fr.element(a), fr.descriptor())))
}

/// Nonzero elements of a finite ring that are not a sum of two units.
pub fn prop4_sweep(ring: &RingDescriptor) -> Result<Vec<Element>> {
    let fr = finite(ring)?;
    Ok((1..fr.len())
        .filter(|&a| unit_sum_indices(&fr, a).is_err())
        .map(|a| fr.element(a).clone())
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop5Witness {
    /// a = u + w with u, w units.
    pub u: Element,
    pub w: Element,
    /// u b = b x and w b = b y.
    pub x: Element,
    pub y: Element,
    /// z = x + y, so a b = b z.
    pub z: Element,
}

/// Writes a = u + w and moves each unit past b to get a b = b z.
/// b = 0 and b = 1 are answered directly (z = 0 and z = a).
pub fn prop5_duo_witness(ring: &RingDescriptor, a: &Element, b: &Element) -> Result<Prop5Witness> {
    let fr = finite(ring)?;
    let (ai, bi) = (fr.index_of(a)?, fr.index_of(b)?);
    let el = |i: usize| fr.element(i).clone();
    let (u, w) = unit_sum_indices(&fr, ai)?;
    let past_b = |v: usize| {
        let vb = fr.mul(v, bi);
        first(&fr, |x| fr.mul(bi, x) == vb)
            .ok_or_else(|| Error::NoFactorization(format!("{}·{} is not in {}·R", el(v), b, b)))
    };
    let (x, y) = if bi == 0 {
        (0, 0)
    } else if bi == fr.one() {
        (u, w)
    } else {
        (past_b(u)?, past_b(w)?)
    };
    let z = fr.add(x, y);
    if fr.mul(ai, bi) != fr.mul(bi, z) {
        return Err(Error::InvalidCertificate(format!("{a}·{b} != {b}·{}", el(z))));
    }
    Ok(Prop5Witness { u: el(u), w: el(w), x: el(x), y: el(y), z: el(z) })
}
