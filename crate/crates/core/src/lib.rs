//! Exact computations with rings: finite rings by Cayley table, the integers,
//! Z[(1+√-7)/2] and its fraction field, and a skew polynomial subring S.
//!
//! Property checkers return three-valued verdicts with witnesses that can be
//! replayed; constructions return elements that are re-verified; diagonal
//! reductions come with certificates that are recomputed on demand.

pub mod cli;
pub mod descriptor;
pub mod element;
pub mod error;
pub mod finite;
pub mod literal;
pub mod matrix;
pub mod proofs;
pub mod props;
pub mod quadratic;
pub mod reduce;
pub mod ring;
pub mod ringspec;
pub mod skew;

pub use descriptor::RingDescriptor;
pub use element::Element;
pub use error::{Error, Result};
pub use finite::FiniteRing;
pub use literal::{parse_element, parse_elements, parse_matrix};
pub use matrix::MatrixOverRing;
pub use props::{check_property, PropertyId, PropertyVerdict, Verdict, DEFAULT_BUDGET};
pub use ring::{make_ring, Ring, Side};
pub use ringspec::parse_ring_spec;
