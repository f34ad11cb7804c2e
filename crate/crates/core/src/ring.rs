//! Arithmetic derived from a [`RingDescriptor`].

use dashu_int::IBig;
use itertools::Itertools;

use crate::descriptor::RingDescriptor;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::finite::FiniteRing;
use crate::matrix;
use crate::quadratic::{QuadInt, QuadValue};
use crate::skew::{s_is_unit, skew_mul, SkewPolynomial};

/// Largest finite ring [`Ring::enumerate_elements`] will materialize.
pub const MAX_ENUMERATION: u64 = 1 << 20;

/// Which side a one-sided ideal or action lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// An arithmetic provider for one ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    desc: RingDescriptor,
}

/// Validates a descriptor and returns its arithmetic.
pub fn make_ring(desc: RingDescriptor) -> Result<Ring> {
    desc.validate()?;
    Ok(Ring { desc })
}

impl Ring {
    pub fn new(desc: RingDescriptor) -> Result<Ring> {
        make_ring(desc)
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.desc
    }

    pub fn is_finite(&self) -> bool {
        self.desc.is_finite()
    }

    pub fn zero(&self) -> Element {
        zero(&self.desc)
    }

    pub fn one(&self) -> Element {
        one(&self.desc)
    }

    /// The image of an integer under Z -> R.
    pub fn from_i64(&self, n: i64) -> Element {
        from_i64(&self.desc, n)
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        add(&self.desc, a, b)
    }

    pub fn neg(&self, a: &Element) -> Element {
        neg(&self.desc, a)
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        add(&self.desc, a, &neg(&self.desc, b))
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        mul(&self.desc, a, b)
    }

    pub fn is_zero(&self, a: &Element) -> bool {
        *a == self.zero()
    }

    pub fn contains(&self, e: &Element) -> bool {
        contains(&self.desc, e)
    }

    pub(crate) fn finite(&self) -> Result<std::sync::Arc<FiniteRing>> {
        FiniteRing::of(&self.desc)
    }

    /// Two-sided invertibility. Finite rings use the multiplication table;
    /// infinite rings use exact rules (norm 1, determinant a unit, ...).
    pub fn is_unit(&self, a: &Element) -> Result<bool> {
        is_unit(&self.desc, a)
    }

    pub fn inverse(&self, a: &Element) -> Result<Option<Element>> {
        inverse(&self.desc, a)
    }

    /// All elements in lexicographic payload order. Zero comes first.
    pub fn enumerate_elements(&self) -> Result<Vec<Element>> {
        enumerate_elements(&self.desc)
    }

    /// The group of two-sided units, in enumeration order.
    pub fn units(&self) -> Result<Vec<Element>> {
        units(&self.desc)
    }

    /// aR (right) or Ra (left), sorted in enumeration order.
    pub fn principal_ideal(&self, a: &Element, side: Side) -> Result<Vec<Element>> {
        let fr = self.finite()?;
        let ia = fr.index_of(a)?;
        let set = match side {
            Side::Right => fr.right_ideal(ia),
            Side::Left => fr.left_ideal(ia),
        };
        Ok(set.ones().map(|i| fr.element(i).clone()).collect())
    }

    /// RaR: the additive closure of { r a s }.
    pub fn two_sided_ideal(&self, a: &Element) -> Result<Vec<Element>> {
        let fr = self.finite()?;
        let ia = fr.index_of(a)?;
        Ok(fr
            .two_sided_ideal(ia)
            .ones()
            .map(|i| fr.element(i).clone())
            .collect())
    }
}

fn payload_mismatch(desc: &RingDescriptor, e: &Element) -> ! {
    panic!("element {e:?} does not belong to {desc}")
}

pub(crate) fn zero(desc: &RingDescriptor) -> Element {
    from_i64(desc, 0)
}

pub(crate) fn one(desc: &RingDescriptor) -> Element {
    from_i64(desc, 1)
}

pub(crate) fn from_i64(desc: &RingDescriptor, n: i64) -> Element {
    match desc {
        RingDescriptor::Integer => Element::int(n),
        RingDescriptor::Modular(m) => Element::Residue((n as i128).rem_euclid(*m as i128) as u64),
        RingDescriptor::Matrix { size, base } | RingDescriptor::UpperTriangular { size, base } => {
            let k = *size;
            let entries = (0..k * k)
                .map(|p| {
                    if p / k == p % k {
                        from_i64(base, n)
                    } else {
                        zero(base)
                    }
                })
                .collect();
            Element::Matrix(entries)
        }
        RingDescriptor::Product(factors) => {
            Element::Tuple(factors.iter().map(|f| from_i64(f, n)).collect())
        }
        RingDescriptor::QuadraticInteger => Element::QuadInteger(QuadInt::from_ints(n, 0)),
        RingDescriptor::QuadraticField => Element::Quadratic(QuadValue::from_ints(n, 0)),
        RingDescriptor::SkewSubring { .. } => {
            Element::Skew(SkewPolynomial::constant(QuadValue::from_ints(n, 0)))
        }
    }
}

pub(crate) fn add(desc: &RingDescriptor, a: &Element, b: &Element) -> Element {
    match (desc, a, b) {
        (RingDescriptor::Integer, Element::Integer(x), Element::Integer(y)) => {
            Element::Integer(x + y)
        }
        (RingDescriptor::Modular(m), Element::Residue(x), Element::Residue(y)) => {
            Element::Residue(((*x as u128 + *y as u128) % *m as u128) as u64)
        }
        (
            RingDescriptor::Matrix { base, .. } | RingDescriptor::UpperTriangular { base, .. },
            Element::Matrix(x),
            Element::Matrix(y),
        ) => Element::Matrix(x.iter().zip(y).map(|(p, q)| add(base, p, q)).collect()),
        (RingDescriptor::Product(factors), Element::Tuple(x), Element::Tuple(y)) => Element::Tuple(
            factors
                .iter()
                .zip(x.iter().zip(y))
                .map(|(f, (p, q))| add(f, p, q))
                .collect(),
        ),
        (RingDescriptor::QuadraticInteger, Element::QuadInteger(x), Element::QuadInteger(y)) => {
            Element::QuadInteger(x.add(y))
        }
        (RingDescriptor::QuadraticField, Element::Quadratic(x), Element::Quadratic(y)) => {
            Element::Quadratic(x + y)
        }
        (RingDescriptor::SkewSubring { .. }, Element::Skew(x), Element::Skew(y)) => {
            Element::Skew(x.add(y))
        }
        _ => payload_mismatch(desc, a),
    }
}

pub(crate) fn neg(desc: &RingDescriptor, a: &Element) -> Element {
    match (desc, a) {
        (RingDescriptor::Integer, Element::Integer(x)) => Element::Integer(-x),
        (RingDescriptor::Modular(m), Element::Residue(x)) => {
            Element::Residue(if *x == 0 { 0 } else { m - x })
        }
        (
            RingDescriptor::Matrix { base, .. } | RingDescriptor::UpperTriangular { base, .. },
            Element::Matrix(x),
        ) => Element::Matrix(x.iter().map(|p| neg(base, p)).collect()),
        (RingDescriptor::Product(factors), Element::Tuple(x)) => {
            Element::Tuple(factors.iter().zip(x).map(|(f, p)| neg(f, p)).collect())
        }
        (RingDescriptor::QuadraticInteger, Element::QuadInteger(x)) => Element::QuadInteger(x.neg()),
        (RingDescriptor::QuadraticField, Element::Quadratic(x)) => Element::Quadratic(-x),
        (RingDescriptor::SkewSubring { .. }, Element::Skew(x)) => Element::Skew(x.neg()),
        _ => payload_mismatch(desc, a),
    }
}

pub(crate) fn mul(desc: &RingDescriptor, a: &Element, b: &Element) -> Element {
    match (desc, a, b) {
        (RingDescriptor::Integer, Element::Integer(x), Element::Integer(y)) => {
            Element::Integer(x * y)
        }
        (RingDescriptor::Modular(m), Element::Residue(x), Element::Residue(y)) => {
            Element::Residue(((*x as u128 * *y as u128) % *m as u128) as u64)
        }
        (
            RingDescriptor::Matrix { size, base } | RingDescriptor::UpperTriangular { size, base },
            Element::Matrix(x),
            Element::Matrix(y),
        ) => Element::Matrix(matrix::mul_square(base, x, y, *size)),
        (RingDescriptor::Product(factors), Element::Tuple(x), Element::Tuple(y)) => Element::Tuple(
            factors
                .iter()
                .zip(x.iter().zip(y))
                .map(|(f, (p, q))| mul(f, p, q))
                .collect(),
        ),
        (RingDescriptor::QuadraticInteger, Element::QuadInteger(x), Element::QuadInteger(y)) => {
            Element::QuadInteger(x.mul(y))
        }
        (RingDescriptor::QuadraticField, Element::Quadratic(x), Element::Quadratic(y)) => {
            Element::Quadratic(x * y)
        }
        (RingDescriptor::SkewSubring { .. }, Element::Skew(x), Element::Skew(y)) => {
            Element::Skew(skew_mul(x, y))
        }
        _ => payload_mismatch(desc, a),
    }
}

pub(crate) fn contains(desc: &RingDescriptor, e: &Element) -> bool {
    match (desc, e) {
        (RingDescriptor::Integer, Element::Integer(_)) => true,
        (RingDescriptor::Modular(m), Element::Residue(r)) => r < m,
        (RingDescriptor::Matrix { size, base }, Element::Matrix(x)) => {
            x.len() == size * size && x.iter().all(|p| contains(base, p))
        }
        (RingDescriptor::UpperTriangular { size, base }, Element::Matrix(x)) => {
            let z = zero(base);
            x.len() == size * size
                && x.iter().enumerate().all(|(p, v)| {
                    contains(base, v) && (p / size <= p % size || *v == z)
                })
        }
        (RingDescriptor::Product(factors), Element::Tuple(x)) => {
            x.len() == factors.len() && factors.iter().zip(x).all(|(f, p)| contains(f, p))
        }
        (RingDescriptor::QuadraticInteger, Element::QuadInteger(_)) => true,
        (RingDescriptor::QuadraticField, Element::Quadratic(_)) => true,
        (RingDescriptor::SkewSubring { .. }, Element::Skew(p)) => {
            p.in_s() && p.coeffs().last().is_none_or(|c| !c.is_zero())
        }
        _ => false,
    }
}

pub(crate) fn enumerate_elements(desc: &RingDescriptor) -> Result<Vec<Element>> {
    let order = desc
        .order()
        .ok_or_else(|| Error::InfiniteRing(desc.to_string()))?;
    if order > MAX_ENUMERATION.into() {
        return Err(Error::BudgetExceeded(format!(
            "{desc} has {order} elements; enumeration is limited to {MAX_ENUMERATION}"
        )));
    }
    Ok(match desc {
        RingDescriptor::Modular(n) => (0..*n).map(Element::Residue).collect(),
        RingDescriptor::Matrix { size, base } => {
            let base_elems = enumerate_elements(base)?;
            (0..size * size)
                .map(|_| base_elems.iter().cloned())
                .multi_cartesian_product()
                .map(Element::Matrix)
                .collect()
        }
        RingDescriptor::UpperTriangular { size, base } => {
            let base_elems = enumerate_elements(base)?;
            let z = zero(base);
            let k = *size;
            (0..k * k)
                .map(|p| {
                    if p / k <= p % k {
                        base_elems.clone()
                    } else {
                        vec![z.clone()]
                    }
                })
                .multi_cartesian_product()
                .map(Element::Matrix)
                .collect()
        }
        RingDescriptor::Product(factors) => factors
            .iter()
            .map(enumerate_elements)
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .multi_cartesian_product()
            .map(Element::Tuple)
            .collect(),
        _ => return Err(Error::InfiniteRing(desc.to_string())),
    })
}

pub(crate) fn units(desc: &RingDescriptor) -> Result<Vec<Element>> {
    match desc {
        RingDescriptor::Integer | RingDescriptor::QuadraticInteger | RingDescriptor::SkewSubring { .. } => {
            // norm argument: +-1 only
            Ok(vec![from_i64(desc, -1), from_i64(desc, 1)])
        }
        _ if desc.is_finite() => {
            let fr = FiniteRing::of(desc)?;
            Ok(fr.units().iter().map(|&u| fr.element(u).clone()).collect())
        }
        _ => Err(Error::InfiniteRing(format!(
            "{desc}: the unit group is infinite or has no exact rule"
        ))),
    }
}

pub(crate) fn is_unit(desc: &RingDescriptor, a: &Element) -> Result<bool> {
    if desc.is_finite() {
        let fr = FiniteRing::of(desc)?;
        return Ok(fr.is_unit(fr.index_of(a)?));
    }
    match (desc, a) {
        (RingDescriptor::Integer, Element::Integer(n)) => Ok(n.unsigned_abs_is_one()),
        (RingDescriptor::QuadraticInteger, Element::QuadInteger(q)) => Ok(q.is_unit()),
        (RingDescriptor::QuadraticField, Element::Quadratic(q)) => Ok(!q.is_zero()),
        (RingDescriptor::SkewSubring { .. }, Element::Skew(p)) => s_is_unit(p),
        (RingDescriptor::Product(factors), Element::Tuple(parts)) => {
            for (f, p) in factors.iter().zip(parts) {
                if !is_unit(f, p)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        (RingDescriptor::Matrix { size, base }, Element::Matrix(entries))
            if base.is_commutative_by_construction() =>
        {
            let det = matrix::determinant(base, entries, *size)?;
            is_unit(base, &det)
        }
        (RingDescriptor::UpperTriangular { size, base }, Element::Matrix(entries)) => {
            for i in 0..*size {
                if !is_unit(base, &entries[i * size + i])? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => Err(Error::Unsupported(format!("unit test for {desc}"))),
    }
}

pub(crate) fn inverse(desc: &RingDescriptor, a: &Element) -> Result<Option<Element>> {
    if desc.is_finite() {
        let fr = FiniteRing::of(desc)?;
        return Ok(fr.inverse(fr.index_of(a)?).map(|i| fr.element(i).clone()));
    }
    match (desc, a) {
        (RingDescriptor::Integer, Element::Integer(n)) => {
            Ok(n.unsigned_abs_is_one().then(|| a.clone()))
        }
        (RingDescriptor::QuadraticInteger, Element::QuadInteger(q)) => {
            // units are +-1, their own inverses
            Ok(q.is_unit().then(|| a.clone()))
        }
        (RingDescriptor::QuadraticField, Element::Quadratic(q)) => {
            Ok(q.inverse().map(Element::Quadratic))
        }
        (RingDescriptor::SkewSubring { .. }, Element::Skew(p)) => {
            Ok(s_is_unit(p)?.then(|| a.clone()))
        }
        (RingDescriptor::Product(factors), Element::Tuple(parts)) => {
            let mut out = Vec::with_capacity(parts.len());
            for (f, p) in factors.iter().zip(parts) {
                match inverse(f, p)? {
                    Some(inv) => out.push(inv),
                    None => return Ok(None),
                }
            }
            Ok(Some(Element::Tuple(out)))
        }
        (RingDescriptor::Matrix { size, base }, Element::Matrix(entries))
            if base.is_commutative_by_construction() =>
        {
            Ok(matrix::adjugate_inverse(base, entries, *size)?.map(Element::Matrix))
        }
        _ => Err(Error::Unsupported(format!("inversion in {desc}"))),
    }
}

trait AbsOne {
    fn unsigned_abs_is_one(&self) -> bool;
}

impl AbsOne for IBig {
    fn unsigned_abs_is_one(&self) -> bool {
        *self == IBig::ONE || *self == IBig::NEG_ONE
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> Ring {
        make_ring(RingDescriptor::Modular(n)).unwrap()
    }

    fn m2z2() -> Ring {
        make_ring(RingDescriptor::matrix(2, RingDescriptor::Modular(2))).unwrap()
    }

    fn mat(entries: [u64; 4]) -> Element {
        Element::Matrix(entries.iter().map(|&r| Element::Residue(r)).collect())
    }

    #[test]
    fn modular_product() {
        let r = z(6);
        assert_eq!(r.mul(&Element::Residue(4), &Element::Residue(5)), Element::Residue(2));
        assert_eq!(r.from_i64(-1), Element::Residue(5));
    }

    #[test]
    fn quadratic_integer_product() {
        let r = make_ring(RingDescriptor::QuadraticInteger).unwrap();
        let a = Element::QuadInteger(QuadInt::from_ints(1, 1));
        let b = Element::QuadInteger(QuadInt::from_ints(1, -1));
        assert_eq!(r.mul(&a, &b), r.from_i64(8));
    }

    #[test]
    fn skew_twist_in_ring() {
        let r = make_ring(RingDescriptor::skew_subring(3, 2)).unwrap();
        let x = Element::Skew(SkewPolynomial::x());
        let w = Element::Skew(SkewPolynomial::constant(QuadValue::w()));
        let expected = Element::Skew(SkewPolynomial::new(vec![
            QuadValue::zero(),
            QuadValue::from_ints(0, -1),
        ]));
        assert_eq!(r.mul(&x, &w), expected);
    }

    #[test]
    fn malformed_descriptors() {
        assert!(matches!(
            make_ring(RingDescriptor::Modular(1)),
            Err(Error::UnsupportedDescriptor(_))
        ));
        assert!(make_ring(RingDescriptor::matrix(0, RingDescriptor::Integer)).is_err());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            z(2).enumerate_elements().unwrap(),
            vec![Element::Residue(0), Element::Residue(1)]
        );
        let z6 = z(6).enumerate_elements().unwrap();
        assert_eq!(z6, (0..6).map(Element::Residue).collect::<Vec<_>>());
        // 2^(2*2) by counting
        let m = m2z2().enumerate_elements().unwrap();
        assert_eq!(m.len(), 16);
        assert_eq!(m[0], m2z2().zero());
        assert!(m.windows(2).all(|w| w[0] < w[1]));
        assert!(matches!(
            make_ring(RingDescriptor::Integer).unwrap().enumerate_elements(),
            Err(Error::InfiniteRing(_))
        ));
    }

    #[test]
    fn triangular_enumeration_keeps_zeros() {
        let r = make_ring(RingDescriptor::upper_triangular(2, RingDescriptor::Modular(2))).unwrap();
        let all = r.enumerate_elements().unwrap();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|e| r.contains(e)));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn unit_examples() {
        assert_eq!(z(6).units().unwrap(), vec![Element::Residue(1), Element::Residue(5)]);
        let zi7 = make_ring(RingDescriptor::QuadraticInteger).unwrap();
        let u = zi7.units().unwrap();
        assert_eq!(u.len(), 2);
        assert!(u.contains(&zi7.one()) && u.contains(&zi7.from_i64(-1)));
        let s = make_ring(RingDescriptor::skew_subring(3, 2)).unwrap();
        assert_eq!(s.units().unwrap(), vec![s.from_i64(-1), s.one()]);
        assert!(make_ring(RingDescriptor::QuadraticField).unwrap().units().is_err());
        assert_eq!(m2z2().units().unwrap().len(), 6);
    }

    #[test]
    fn principal_ideal_examples() {
        let r = z(6);
        assert_eq!(
            r.principal_ideal(&Element::Residue(2), Side::Right).unwrap(),
            vec![Element::Residue(0), Element::Residue(2), Element::Residue(4)]
        );
        assert_eq!(r.principal_ideal(&Element::Residue(1), Side::Left).unwrap().len(), 6);
        // E11 * R: matrices with zero bottom row
        let m = m2z2();
        let ideal = m.principal_ideal(&mat([1, 0, 0, 0]), Side::Right).unwrap();
        assert_eq!(ideal.len(), 4);
        for e in &ideal {
            let Element::Matrix(x) = e else { unreachable!() };
            assert_eq!((&x[2], &x[3]), (&Element::Residue(0), &Element::Residue(0)));
        }
    }

    #[test]
    fn two_sided_ideal_examples() {
        let r = z(6);
        assert_eq!(r.two_sided_ideal(&Element::Residue(2)).unwrap().len(), 3);
        assert_eq!(r.two_sided_ideal(&r.zero()).unwrap(), vec![r.zero()]);
        let m = m2z2();
        assert_eq!(m.two_sided_ideal(&m.zero()).unwrap(), vec![m.zero()]);
        // M2(F2) is simple
        assert_eq!(m.two_sided_ideal(&mat([1, 0, 0, 0])).unwrap().len(), 16);
    }
}
