//! Cayley tables for finite rings.
//!
//! Elements are addressed by their position in the enumeration order, so
//! "smallest index" and "lexicographically first payload" coincide and every
//! brute-force search that scans indices upward returns the first witness.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use fixedbitset::FixedBitSet;

use crate::descriptor::RingDescriptor;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::ring;

/// Largest ring for which tables are built (two n^2 tables of u32).
pub const MAX_TABLE_ORDER: u64 = 1024;

pub type ElemSet = FixedBitSet;

#[derive(Debug)]
pub struct FiniteRing {
    desc: RingDescriptor,
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    one: usize,
    inverse: Vec<Option<u32>>,
    units: Vec<usize>,
    unit_mask: ElemSet,
    commutative: bool,
    right: OnceLock<Vec<ElemSet>>,
    left: OnceLock<Vec<ElemSet>>,
    two_sided: OnceLock<Vec<ElemSet>>,
}

fn cache() -> &'static Mutex<HashMap<RingDescriptor, Arc<FiniteRing>>> {
    static CACHE: OnceLock<Mutex<HashMap<RingDescriptor, Arc<FiniteRing>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

impl FiniteRing {
    /// Tables for `desc`, built once per process.
    pub fn of(desc: &RingDescriptor) -> Result<Arc<FiniteRing>> {
        if let Some(fr) = cache().lock().unwrap().get(desc) {
            return Ok(fr.clone());
        }
        let built = Arc::new(FiniteRing::build(desc)?);
        let mut guard = cache().lock().unwrap();
        Ok(guard.entry(desc.clone()).or_insert(built).clone())
    }

    fn build(desc: &RingDescriptor) -> Result<FiniteRing> {
        desc.validate()?;
        let order = desc
            .order()
            .ok_or_else(|| Error::InfiniteRing(desc.to_string()))?;
        if order > MAX_TABLE_ORDER.into() {
            return Err(Error::BudgetExceeded(format!(
                "{desc} has {order} elements; tables are limited to {MAX_TABLE_ORDER}"
            )));
        }
        let elements = ring::enumerate_elements(desc)?;
        let n = elements.len();
        let index: HashMap<Element, usize> =
            elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let lookup = |e: &Element| index[e] as u32;

        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                add.push(lookup(&ring::add(desc, a, b)));
                mul.push(lookup(&ring::mul(desc, a, b)));
            }
        }
        let neg = elements.iter().map(|a| lookup(&ring::neg(desc, a))).collect();
        let one = index[&ring::one(desc)];
        debug_assert_eq!(index[&ring::zero(desc)], 0);

        let mut inverse = vec![None; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| mul[a * n + b] as usize == one && mul[b * n + a] as usize == one)
                .map(|b| b as u32);
        }
        let units: Vec<usize> = (0..n).filter(|&a| inverse[a].is_some()).collect();
        let mut unit_mask = ElemSet::with_capacity(n);
        units.iter().for_each(|&u| unit_mask.insert(u));
        let commutative = (0..n).all(|a| (a + 1..n).all(|b| mul[a * n + b] == mul[b * n + a]));

        Ok(FiniteRing {
            desc: desc.clone(),
            elements,
            index,
            add,
            mul,
            neg,
            one,
            inverse,
            units,
            unit_mask,
            commutative,
            right: OnceLock::new(),
            left: OnceLock::new(),
            two_sided: OnceLock::new(),
        })
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.desc
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn index_of(&self, e: &Element) -> Result<usize> {
        self.index
            .get(e)
            .copied()
            .ok_or_else(|| Error::NotAnElement(e.to_string(), self.desc.to_string()))
    }

    pub const fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.elements.len() + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.elements.len() + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn is_unit(&self, a: usize) -> bool {
        self.unit_mask.contains(a)
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        self.inverse[a].map(|b| b as usize)
    }

    /// Unit indices in enumeration order.
    pub fn units(&self) -> &[usize] {
        &self.units
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    /// First pair (a, b) in enumeration order with ab != ba.
    pub fn commutativity_witness(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.mul(a, b) != self.mul(b, a))
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&e| self.mul(e, e) == e).collect()
    }

    /// aR.
    pub fn right_ideal(&self, a: usize) -> &ElemSet {
        &self.right.get_or_init(|| {
            (0..self.len())
                .map(|a| self.collect((0..self.len()).map(|r| self.mul(a, r))))
                .collect()
        })[a]
    }

    /// Ra.
    pub fn left_ideal(&self, a: usize) -> &ElemSet {
        &self.left.get_or_init(|| {
            (0..self.len())
                .map(|a| self.collect((0..self.len()).map(|r| self.mul(r, a))))
                .collect()
        })[a]
    }

    pub fn principal(&self, a: usize, side: ring::Side) -> &ElemSet {
        match side {
            ring::Side::Right => self.right_ideal(a),
            ring::Side::Left => self.left_ideal(a),
        }
    }

    /// RaR, the additive closure of { r a s }.
    pub fn two_sided_ideal(&self, a: usize) -> &ElemSet {
        &self.two_sided.get_or_init(|| {
            (0..self.len())
                .map(|a| {
                    let ra = self.left_ideal(a);
                    let products =
                        self.collect(ra.ones().flat_map(|x| (0..self.len()).map(move |s| (x, s))).map(|(x, s)| self.mul(x, s)));
                    self.additive_closure(&products)
                })
                .collect()
        })[a]
    }

    pub fn collect(&self, items: impl IntoIterator<Item = usize>) -> ElemSet {
        let mut set = ElemSet::with_capacity(self.len());
        set.extend(items);
        set
    }

    /// The additive subgroup generated by `gens`.
    pub fn additive_closure(&self, gens: &ElemSet) -> ElemSet {
        let g: Vec<usize> = gens.ones().collect();
        let mut set = ElemSet::with_capacity(self.len());
        set.insert(0);
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &y in &g {
                let z = self.add(x, y);
                if !set.put(z) {
                    stack.push(z);
                }
            }
        }
        set
    }

    /// I + J for additive subgroups I, J.
    pub fn sum(&self, i: &ElemSet, j: &ElemSet) -> ElemSet {
        let mut out = ElemSet::with_capacity(self.len());
        for x in i.ones() {
            for y in j.ones() {
                out.insert(self.add(x, y));
            }
        }
        out
    }

    /// 1 in aR + bR (right) or Ra + Rb (left).
    pub fn comaximal(&self, a: usize, b: usize, side: ring::Side) -> bool {
        let ia = self.principal(a, side);
        let ib = self.principal(b, side);
        let one = self.one;
        ia.ones().any(|x| ib.contains(self.sub(one, x)))
    }
}
