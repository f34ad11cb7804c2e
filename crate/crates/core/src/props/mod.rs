//! Property checkers with three-valued verdicts and replayable witnesses.
//!
//! Finite rings are searched exhaustively over the Cayley tables, scanning
//! every quantifier in enumeration order so that the first violation found is
//! the lexicographically smallest one. Infinite rings only get a verdict when
//! an exact argument applies (commutativity, known unit groups) or a sampled
//! counterexample turns up; everything else is `unknown`.

pub(crate) mod finite;
mod ideals;
mod infinite;
mod probe;
mod replay;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::descriptor::RingDescriptor;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::matrix::MatrixOverRing;
use crate::ring::Side;

pub use ideals::{enumerate_maximal_one_sided_ideals, OneSidedIdeal};
pub use probe::{probe_unit_central_commutative, probe_rings, ProbeEntry, ProbeReport};
pub use replay::replay;

/// Default number of quantified tuples a checker may examine.
pub const DEFAULT_BUDGET: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropertyId {
    Bezout,
    Hermite,
    StableRange1,
    UnitStableRange1,
    KazimirskyLeft,
    KazimirskyRight,
    DuoLeft,
    DuoRight,
    QuasiDuoLeft,
    QuasiDuoRight,
    UnitCentral,
    Dubrovin,
    IdempotentUnit,
    EdrSmall,
}

impl PropertyId {
    pub const ALL: [PropertyId; 14] = [
        PropertyId::Bezout,
        PropertyId::Hermite,
        PropertyId::StableRange1,
        PropertyId::UnitStableRange1,
        PropertyId::KazimirskyLeft,
        PropertyId::KazimirskyRight,
        PropertyId::DuoLeft,
        PropertyId::DuoRight,
        PropertyId::QuasiDuoLeft,
        PropertyId::QuasiDuoRight,
        PropertyId::UnitCentral,
        PropertyId::Dubrovin,
        PropertyId::IdempotentUnit,
        PropertyId::EdrSmall,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PropertyId::Bezout => "bezout",
            PropertyId::Hermite => "hermite",
            PropertyId::StableRange1 => "sr1",
            PropertyId::UnitStableRange1 => "unit-sr1",
            PropertyId::KazimirskyLeft => "kazimirsky-left",
            PropertyId::KazimirskyRight => "kazimirsky-right",
            PropertyId::DuoLeft => "duo-left",
            PropertyId::DuoRight => "duo-right",
            PropertyId::QuasiDuoLeft => "quasi-duo-left",
            PropertyId::QuasiDuoRight => "quasi-duo-right",
            PropertyId::UnitCentral => "unit-central",
            PropertyId::Dubrovin => "dubrovin",
            PropertyId::IdempotentUnit => "idempotent-unit",
            PropertyId::EdrSmall => "edr-small",
        }
    }

    pub fn kazimirsky(side: Side) -> PropertyId {
        match side {
            Side::Left => PropertyId::KazimirskyLeft,
            Side::Right => PropertyId::KazimirskyRight,
        }
    }

    pub fn duo(side: Side) -> PropertyId {
        match side {
            Side::Left => PropertyId::DuoLeft,
            Side::Right => PropertyId::DuoRight,
        }
    }

    pub fn quasi_duo(side: Side) -> PropertyId {
        match side {
            Side::Left => PropertyId::QuasiDuoLeft,
            Side::Right => PropertyId::QuasiDuoRight,
        }
    }

    pub fn id_list() -> String {
        PropertyId::ALL.iter().map(|p| p.as_str()).collect::<Vec<_>>().join(", ")
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PropertyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PropertyId::ALL
            .into_iter()
            .find(|p| p.as_str() == s.trim())
            .ok_or_else(|| {
                Error::Semantic(format!("unknown property '{s}'; expected one of: {}", PropertyId::id_list()))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessValue {
    Element(Element),
    /// Matrices over the ring itself (reduction counterexamples).
    Matrix(MatrixOverRing),
}

impl fmt::Display for WitnessValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessValue::Element(e) => write!(f, "{e}"),
            WitnessValue::Matrix(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub name: String,
    pub value: WitnessValue,
}

impl Witness {
    pub fn element(name: impl Into<String>, value: Element) -> Self {
        Witness { name: name.into(), value: WitnessValue::Element(value) }
    }

    pub fn matrix(name: impl Into<String>, value: MatrixOverRing) -> Self {
        Witness { name: name.into(), value: WitnessValue::Matrix(value) }
    }

    pub fn as_element(&self) -> Option<&Element> {
        match &self.value {
            WitnessValue::Element(e) => Some(e),
            WitnessValue::Matrix(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyVerdict {
    pub property: PropertyId,
    pub ring: RingDescriptor,
    pub verdict: Verdict,
    pub witness: Vec<Witness>,
    pub budget_used: u64,
    /// Set when the search stopped because the budget ran out.
    pub budget_exceeded: bool,
    pub note: Option<String>,
}

impl PropertyVerdict {
    pub(crate) fn holds(property: PropertyId, ring: &RingDescriptor, used: u64) -> Self {
        PropertyVerdict {
            property,
            ring: ring.clone(),
            verdict: Verdict::Holds,
            witness: Vec::new(),
            budget_used: used,
            budget_exceeded: false,
            note: None,
        }
    }

    pub(crate) fn fails(property: PropertyId, ring: &RingDescriptor, witness: Vec<Witness>, used: u64) -> Self {
        debug_assert!(!witness.is_empty());
        PropertyVerdict {
            verdict: Verdict::Fails,
            witness,
            ..PropertyVerdict::holds(property, ring, used)
        }
    }

    pub(crate) fn unknown(property: PropertyId, ring: &RingDescriptor, used: u64, note: impl Into<String>) -> Self {
        PropertyVerdict {
            verdict: Verdict::Unknown,
            note: Some(note.into()),
            ..PropertyVerdict::holds(property, ring, used)
        }
    }

    pub(crate) fn exhausted(property: PropertyId, ring: &RingDescriptor, used: u64, limit: u64) -> Self {
        PropertyVerdict {
            budget_exceeded: true,
            ..PropertyVerdict::unknown(property, ring, used, format!("budget of {limit} tuples exhausted"))
        }
    }

    pub(crate) fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn witness_element(&self, name: &str) -> Option<&Element> {
        self.witness.iter().find(|w| w.name == name).and_then(|w| w.as_element())
    }
}

/// Counts examined tuples against a limit.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Meter {
    pub(crate) used: u64,
    pub(crate) limit: u64,
}

impl Meter {
    pub(crate) fn new(limit: u64) -> Self {
        Meter { used: 0, limit }
    }

    /// Reserves `n` more tuples; false once the limit would be crossed.
    pub(crate) fn charge(&mut self, n: u64) -> bool {
        if self.used.saturating_add(n) > self.limit {
            false
        } else {
            self.used += n;
            true
        }
    }
}

/// Evaluates `property` on `ring` within `budget` tuples.
///
/// Malformed descriptors are errors. Running out of budget, or a ring too
/// large for tables, gives an `unknown` verdict with `budget_exceeded` set.
pub fn check_property(ring: &RingDescriptor, property: PropertyId, budget: u64) -> Result<PropertyVerdict> {
    ring.validate()?;
    if !ring.is_finite() {
        return Ok(infinite::check(ring, property, budget));
    }
    match finite::check(ring, property, budget) {
        Err(Error::BudgetExceeded(why)) => Ok(PropertyVerdict {
            budget_exceeded: true,
            ..PropertyVerdict::unknown(property, ring, 0, why)
        }),
        other => other,
    }
}

pub fn check_bezout(ring: &RingDescriptor) -> Result<PropertyVerdict> {
    check_property(ring, PropertyId::Bezout, DEFAULT_BUDGET)
}

pub fn check_stable_range_1(ring: &RingDescriptor) -> Result<PropertyVerdict> {
    check_property(ring, PropertyId::StableRange1, DEFAULT_BUDGET)
}

pub fn check_unit_stable_range_1(ring: &RingDescriptor) -> Result<PropertyVerdict> {
    check_property(ring, PropertyId::UnitStableRange1, DEFAULT_BUDGET)
}

pub fn check_kazimirsky(ring: &RingDescriptor, side: Side) -> Result<PropertyVerdict> {
    check_property(ring, PropertyId::kazimirsky(side), DEFAULT_BUDGET)
}

pub fn check_duo(ring: &RingDescriptor, side: Side) -> Result<PropertyVerdict> {
    check_property(ring, PropertyId::duo(side), DEFAULT_BUDGET)
}

pub fn check_quasi_duo(ring: &RingDescriptor, side: Side) -> Result<PropertyVerdict> {
    check_property(ring, PropertyId::quasi_duo(side), DEFAULT_BUDGET)
}

pub fn check_unit_central(ring: &RingDescriptor) -> Result<PropertyVerdict> {
    check_property(ring, PropertyId::UnitCentral, DEFAULT_BUDGET)
}

pub fn check_dubrovin(ring: &RingDescriptor) -> Result<PropertyVerdict> {
    check_property(ring, PropertyId::Dubrovin, DEFAULT_BUDGET)
}

pub fn check_idempotent_unit_criterion(ring: &RingDescriptor) -> Result<PropertyVerdict> {
    check_property(ring, PropertyId::IdempotentUnit, DEFAULT_BUDGET)
}
