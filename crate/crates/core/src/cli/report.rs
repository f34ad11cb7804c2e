use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::literal::{parse_element, parse_matrix};
use crate::props::{PropertyId, PropertyVerdict, Verdict, Witness, WitnessValue};
use crate::ringspec::parse_ring_spec;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub name: String,
    pub value: String,
}

/// One line of a report stream.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub ring: String,
    /// Property id, or the command name for `reduce` and `construct`.
    pub property: String,
    pub verdict: String,
    pub witness: Vec<WitnessRecord>,
    /// Tuples examined.
    pub budget: u64,
    pub duration_ms: f64,
}

impl ReportRecord {
    pub fn from_verdict(v: &PropertyVerdict, duration_ms: f64) -> Self {
        ReportRecord {
            ring: v.ring.to_string(),
            property: v.property.to_string(),
            verdict: v.verdict.to_string(),
            witness: v
                .witness
                .iter()
                .map(|w| WitnessRecord { name: w.name.clone(), value: w.value.to_string() })
                .collect(),
            budget: v.budget_used,
            duration_ms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    pub fn from_json(line: &str) -> Result<Self> {
        serde_json::from_str(line).map_err(|e| Error::Semantic(format!("bad report record: {e}")))
    }

    /// Rebuilds the verdict by re-parsing the ring and every witness literal.
    pub fn to_verdict(&self) -> Result<PropertyVerdict> {
        let ring = parse_ring_spec(&self.ring)?;
        let property: PropertyId = self.property.parse()?;
        let verdict = match self.verdict.as_str() {
            "holds" => Verdict::Holds,
            "fails" => Verdict::Fails,
            "unknown" => Verdict::Unknown,
            other => return Err(Error::Semantic(format!("unknown verdict '{other}'"))),
        };
        let matrices = matches!(property, PropertyId::Hermite | PropertyId::EdrSmall);
        let witness = self
            .witness
            .iter()
            .map(|w| {
                let value = if matrices {
                    WitnessValue::Matrix(parse_matrix(&ring, &w.value)?)
                } else {
                    WitnessValue::Element(parse_element(&ring, &w.value)?)
                };
                Ok(Witness { name: w.name.clone(), value })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PropertyVerdict {
            property,
            ring,
            verdict,
            witness,
            budget_used: self.budget,
            budget_exceeded: false,
            note: None,
        })
    }
}
