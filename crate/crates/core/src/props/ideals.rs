//! One-sided ideals of finite rings.
//!
//! In a finite ring every one-sided ideal is a finite sum of principal ones,
//! so closing the principal ideals under pairwise sums yields the whole
//! lattice. The closure is exponential in general; it is only attempted for
//! |R| <= 16, or |R| <= 36 when R is commutative.

use std::collections::HashMap;

use crate::descriptor::RingDescriptor;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::finite::{ElemSet, FiniteRing};
use crate::ring::Side;

pub const MAX_IDEAL_LATTICE: usize = 16;
pub const MAX_COMMUTATIVE_IDEAL_LATTICE: usize = 36;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneSidedIdeal {
    pub side: Side,
    /// Members in enumeration order.
    pub elements: Vec<Element>,
    /// Elements whose principal ideals sum to this one.
    pub generators: Vec<Element>,
}

pub(crate) struct IndexIdeal {
    pub(crate) set: ElemSet,
    pub(crate) generators: Vec<usize>,
}

fn check_size(fr: &FiniteRing) -> Result<()> {
    let n = fr.len();
    if n <= MAX_IDEAL_LATTICE || (fr.is_commutative() && n <= MAX_COMMUTATIVE_IDEAL_LATTICE) {
        Ok(())
    } else {
        Err(Error::BudgetExceeded(format!(
            "ideal lattice of {} ({n} elements) exceeds the limit of {MAX_IDEAL_LATTICE} \
             ({MAX_COMMUTATIVE_IDEAL_LATTICE} for commutative rings)",
            fr.descriptor()
        )))
    }
}

/// All one-sided ideals on `side`, in discovery order.
pub(crate) fn all_ideals(fr: &FiniteRing, side: Side) -> Result<Vec<IndexIdeal>> {
    check_size(fr)?;
    let mut ideals: Vec<IndexIdeal> = Vec::new();
    let mut seen: HashMap<ElemSet, usize> = HashMap::new();
    for a in 0..fr.len() {
        let set = fr.principal(a, side).clone();
        if !seen.contains_key(&set) {
            seen.insert(set.clone(), ideals.len());
            ideals.push(IndexIdeal { set, generators: vec![a] });
        }
    }
    let mut i = 0;
    while i < ideals.len() {
        for j in 0..i {
            let set = fr.sum(&ideals[j].set, &ideals[i].set);
            if !seen.contains_key(&set) {
                let mut generators = ideals[j].generators.clone();
                generators.extend(&ideals[i].generators);
                generators.sort_unstable();
                generators.dedup();
                seen.insert(set.clone(), ideals.len());
                ideals.push(IndexIdeal { set, generators });
            }
        }
        i += 1;
    }
    Ok(ideals)
}

/// Maximal proper ideals, sorted by their member lists.
pub(crate) fn maximal_ideals(fr: &FiniteRing, side: Side) -> Result<Vec<IndexIdeal>> {
    let proper: Vec<IndexIdeal> = all_ideals(fr, side)?
        .into_iter()
        .filter(|i| !i.set.contains(fr.one()))
        .collect();
    let is_maximal = |i: &IndexIdeal| {
        !proper
            .iter()
            .any(|j| j.set != i.set && i.set.is_subset(&j.set))
    };
    let mut keep: Vec<usize> = (0..proper.len()).filter(|&k| is_maximal(&proper[k])).collect();
    keep.sort_by_key(|&k| proper[k].set.ones().collect::<Vec<_>>());
    let mut proper: Vec<Option<IndexIdeal>> = proper.into_iter().map(Some).collect();
    Ok(keep.into_iter().map(|k| proper[k].take().unwrap()).collect())
}

pub fn enumerate_maximal_one_sided_ideals(ring: &RingDescriptor, side: Side) -> Result<Vec<OneSidedIdeal>> {
    let fr = FiniteRing::of(ring)?;
    let elem = |i: usize| fr.element(i).clone();
    Ok(maximal_ideals(&fr, side)?
        .into_iter()
        .map(|ideal| OneSidedIdeal {
            side,
            elements: ideal.set.ones().map(elem).collect(),
            generators: ideal.generators.iter().map(|&g| elem(g)).collect(),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptor::RingDescriptor as D;
    use crate::ring;

    fn residues(v: &[u64]) -> Vec<Element> {
        v.iter().map(|&r| Element::Residue(r)).collect()
    }

    #[test]
    fn maximal_ideals_of_z6() {
        let m = enumerate_maximal_one_sided_ideals(&D::Modular(6), Side::Left).unwrap();
        let sets: Vec<_> = m.iter().map(|i| i.elements.clone()).collect();
        assert_eq!(sets, vec![residues(&[0, 2, 4]), residues(&[0, 3])]);
    }

    #[test]
    fn field_has_zero_ideal_maximal() {
        let m = enumerate_maximal_one_sided_ideals(&D::Modular(2), Side::Left).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].elements, residues(&[0]));
    }

    #[test]
    fn m2z2_has_three_maximal_left_ideals_of_order_four() {
        let d = D::matrix(2, D::Modular(2));
        for side in [Side::Left, Side::Right] {
            let m = enumerate_maximal_one_sided_ideals(&d, side).unwrap();
            assert_eq!(m.len(), 3);
            assert!(m.iter().all(|i| i.elements.len() == 4));
        }
    }

    #[test]
    fn ideals_are_closed_and_cover_every_proper_ideal() {
        for d in [D::upper_triangular(2, D::Modular(2)), D::Modular(12), D::matrix(2, D::Modular(2))] {
            let fr = FiniteRing::of(&d).unwrap();
            for side in [Side::Left, Side::Right] {
                let all = all_ideals(&fr, side).unwrap();
                let maximal = maximal_ideals(&fr, side).unwrap();
                for ideal in &all {
                    for x in ideal.set.ones() {
                        for y in ideal.set.ones() {
                            assert!(ideal.set.contains(fr.add(x, y)));
                        }
                        for r in 0..fr.len() {
                            let p = match side {
                                Side::Left => fr.mul(r, x),
                                Side::Right => fr.mul(x, r),
                            };
                            assert!(ideal.set.contains(p));
                        }
                    }
                    if !ideal.set.contains(fr.one()) {
                        assert!(maximal.iter().any(|m| ideal.set.is_subset(&m.set)));
                    }
                }
            }
        }
    }

    #[test]
    fn large_noncommutative_ring_is_rejected() {
        let d = D::upper_triangular(2, D::Modular(3));
        assert!(matches!(
            enumerate_maximal_one_sided_ideals(&d, Side::Left),
            Err(Error::BudgetExceeded(_))
        ));
        assert!(ring::Ring::new(d).is_ok());
    }
}
