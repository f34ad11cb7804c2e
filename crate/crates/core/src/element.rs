//! Canonical element payloads.
//!
//! Every constructor in the crate normalizes, so two elements of the same ring
//! are equal exactly when their payloads are identical. The derived `Ord` is
//! lexicographic on payloads, which is the enumeration order of finite rings.

use std::fmt;

use dashu_int::IBig;

use crate::quadratic::{QuadInt, QuadValue};
use crate::skew::SkewPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Integer(IBig),
    /// Residue in [0, n) for Z/nZ.
    Residue(u64),
    /// Row-major k x k entries; triangular rings keep explicit zeros below the diagonal.
    Matrix(Vec<Element>),
    Tuple(Vec<Element>),
    QuadInteger(QuadInt),
    Quadratic(QuadValue),
    Skew(SkewPolynomial),
}

impl Element {
    pub fn int(n: i64) -> Self {
        Element::Integer(IBig::from(n))
    }

    pub fn as_residue(&self) -> Option<u64> {
        match self {
            Element::Residue(r) => Some(*r),
            _ => None,
        }
    }

    pub fn as_integer(&self) -> Option<&IBig> {
        match self {
            Element::Integer(n) => Some(n),
            _ => None,
        }
    }
}

pub(crate) fn isqrt(n: usize) -> usize {
    let mut k = (n as f64).sqrt() as usize;
    while k * k > n {
        k -= 1;
    }
    while (k + 1) * (k + 1) <= n {
        k += 1;
    }
    k
}

pub(crate) fn write_rows<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    entries: &[T],
    cols: usize,
) -> fmt::Result {
    write!(f, "[")?;
    for (r, row) in entries.chunks(cols).enumerate() {
        if r > 0 {
            write!(f, ",")?;
        }
        write!(f, "[")?;
        for (c, e) in row.iter().enumerate() {
            if c > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")?;
    }
    write!(f, "]")
}

/// Literal syntax: integers, `a+b*w`, `[[..],[..]]`, `(x,y)`, `[c0,c1,...]`.
impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Integer(n) => write!(f, "{n}"),
            Element::Residue(r) => write!(f, "{r}"),
            Element::Matrix(entries) => write_rows(f, entries, isqrt(entries.len())),
            Element::Tuple(parts) => {
                write!(f, "(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            Element::QuadInteger(q) => write!(f, "{q}"),
            Element::Quadratic(q) => write!(f, "{q}"),
            Element::Skew(p) => write!(f, "{p}"),
        }
    }
}
