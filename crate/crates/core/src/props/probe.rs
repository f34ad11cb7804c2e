//! Search for a finite ring that is unit-central and of stable range 1 but
//! not commutative. The probe only reports what it finds.

use super::{check_property, PropertyId, Verdict, DEFAULT_BUDGET};
use crate::descriptor::RingDescriptor;
use crate::error::Result;
use crate::finite::FiniteRing;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeEntry {
    pub ring: RingDescriptor,
    pub unit_central: Verdict,
    pub sr1: Verdict,
    pub commutative: bool,
}

impl ProbeEntry {
    pub fn is_counterexample(&self) -> bool {
        self.unit_central == Verdict::Holds && self.sr1 == Verdict::Holds && !self.commutative
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeReport {
    pub max_order: u64,
    pub entries: Vec<ProbeEntry>,
}

impl ProbeReport {
    pub fn counterexamples(&self) -> Vec<&ProbeEntry> {
        self.entries.iter().filter(|e| e.is_counterexample()).collect()
    }
}

/// The finite built-in rings, then Zn, Tri(2,Zn), Mat(2,Zn) and pairwise
/// products of those, restricted to order <= `max_order`.
pub fn probe_rings(max_order: u64) -> Vec<RingDescriptor> {
    use RingDescriptor as D;
    let mut rings: Vec<D> = Vec::new();
    let push = |d: D, rings: &mut Vec<D>| {
        if d.order_u64().is_some_and(|o| o <= max_order) && !rings.contains(&d) {
            rings.push(d);
        }
    };
    for n in 2..=12 {
        push(D::Modular(n), &mut rings);
    }
    push(D::matrix(2, D::Modular(2)), &mut rings);
    push(D::upper_triangular(2, D::Modular(2)), &mut rings);
    push(D::Product(vec![D::Modular(2), D::Modular(3)]), &mut rings);

    let mut factors: Vec<D> = Vec::new();
    for n in 2..=max_order.min(1 << 20) {
        let candidates = [D::Modular(n), D::upper_triangular(2, D::Modular(n)), D::matrix(2, D::Modular(n))];
        let mut any = false;
        for d in candidates {
            if d.order_u64().is_some_and(|o| o <= max_order) {
                any = true;
                factors.push(d);
            }
        }
        if !any {
            break;
        }
    }
    for f in &factors {
        push(f.clone(), &mut rings);
    }
    for (i, f) in factors.iter().enumerate() {
        for g in &factors[i..] {
            push(D::Product(vec![f.clone(), g.clone()]), &mut rings);
        }
    }
    rings
}

pub fn probe_unit_central_commutative(max_order: u64) -> Result<ProbeReport> {
    let mut entries = Vec::new();
    for ring in probe_rings(max_order) {
        let fr = FiniteRing::of(&ring)?;
        let unit_central = check_property(&ring, PropertyId::UnitCentral, DEFAULT_BUDGET)?.verdict;
        let sr1 = check_property(&ring, PropertyId::StableRange1, DEFAULT_BUDGET)?.verdict;
        entries.push(ProbeEntry {
            ring,
            unit_central,
            sr1,
            commutative: fr.is_commutative(),
        });
    }
    Ok(ProbeReport { max_order, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_eight_has_no_counterexample() {
        let report = probe_unit_central_commutative(8).unwrap();
        assert!(report.counterexamples().is_empty());
        let z6 = report.entries.iter().find(|e| e.ring == RingDescriptor::Modular(6)).unwrap();
        assert_eq!((z6.unit_central, z6.sr1, z6.commutative), (Verdict::Holds, Verdict::Holds, true));
    }

    #[test]
    fn m2z2_is_excluded_as_not_unit_central() {
        let report = probe_unit_central_commutative(16).unwrap();
        let m = report
            .entries
            .iter()
            .find(|e| e.ring == RingDescriptor::matrix(2, RingDescriptor::Modular(2)))
            .unwrap();
        assert_eq!(m.unit_central, Verdict::Fails);
        assert!(!m.is_counterexample());
    }

    #[test]
    fn generated_rings_respect_the_order_bound() {
        let rings = probe_rings(16);
        assert!(rings.iter().all(|d| d.order_u64().unwrap() <= 16));
        assert!(rings.contains(&RingDescriptor::Product(vec![
            RingDescriptor::upper_triangular(2, RingDescriptor::Modular(2)),
            RingDescriptor::Modular(2)
        ]) ) || rings.contains(&RingDescriptor::Product(vec![
            RingDescriptor::Modular(2),
            RingDescriptor::upper_triangular(2, RingDescriptor::Modular(2))
        ])));
    }
}
