//! The twisted polynomial ring K[x; sigma] over K = Q(w), and its subring S of
//! polynomials whose constant term lies in Z[w].
//!
//! Multiplication follows x*c = sigma(c)*x with coefficients written on the
//! left, so (c x^i)(d x^j) = c sigma^i(d) x^(i+j).

use std::fmt;

use dashu_ratio::RBig;

use crate::error::{Error, Result};
use crate::quadratic::{quad_norm, sigma, QuadValue};

/// Coefficients c_0, c_1, ..., c_d with c_d != 0; empty for zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkewPolynomial {
    coeffs: Vec<QuadValue>,
}

impl SkewPolynomial {
    /// Builds a polynomial from lowest-degree-first coefficients, stripping trailing zeros.
    pub fn new(mut coeffs: Vec<QuadValue>) -> Self {
        while coeffs.last().is_some_and(QuadValue::is_zero) {
            coeffs.pop();
        }
        SkewPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        SkewPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: QuadValue) -> Self {
        SkewPolynomial::new(vec![c])
    }

    pub fn one() -> Self {
        SkewPolynomial::constant(QuadValue::one())
    }

    /// The indeterminate x.
    pub fn x() -> Self {
        SkewPolynomial::new(vec![QuadValue::zero(), QuadValue::one()])
    }

    pub fn coeffs(&self) -> &[QuadValue] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn constant_term(&self) -> QuadValue {
        self.coeffs.first().cloned().unwrap_or_else(QuadValue::zero)
    }

    /// Membership in S: the free member must lie in Z[w].
    pub fn in_s(&self) -> bool {
        self.constant_term().is_integral()
    }

    pub fn add(&self, other: &SkewPolynomial) -> SkewPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = QuadValue::zero();
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                a + b
            })
            .collect();
        SkewPolynomial::new(coeffs)
    }

    pub fn neg(&self) -> SkewPolynomial {
        SkewPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &SkewPolynomial) -> SkewPolynomial {
        self.add(&other.neg())
    }

    /// Left scalar multiple c * f.
    pub fn scale_left(&self, c: &QuadValue) -> SkewPolynomial {
        SkewPolynomial::new(self.coeffs.iter().map(|d| c * d).collect())
    }
}

/// sigma^i(d): sigma is an involution, so only the parity of i matters.
fn sigma_pow(i: usize, d: &QuadValue) -> QuadValue {
    if i.is_multiple_of(2) {
        d.clone()
    } else {
        sigma(d)
    }
}

/// The twisted product: (c x^i)(d x^j) = c sigma^i(d) x^(i+j).
pub fn skew_mul(f: &SkewPolynomial, g: &SkewPolynomial) -> SkewPolynomial {
    if f.is_zero() || g.is_zero() {
        return SkewPolynomial::zero();
    }
    let mut out = vec![QuadValue::zero(); f.coeffs.len() + g.coeffs.len() - 1];
    for (i, c) in f.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (j, d) in g.coeffs.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            let term = c * &sigma_pow(i, d);
            out[i + j] = &out[i + j] + &term;
        }
    }
    SkewPolynomial::new(out)
}

/// Units of S. Degrees add under multiplication (K is a field and sigma is
/// injective), so a unit has degree 0; a constant unit c of S needs c and
/// c^-1 in Z[w], hence norm 1, which forces c = +-1.
pub fn s_is_unit(f: &SkewPolynomial) -> Result<bool> {
    if !f.in_s() {
        return Err(Error::NotInS(f.to_string()));
    }
    if f.degree() != Some(0) {
        return Ok(false);
    }
    let c = &f.coeffs[0];
    Ok(c.is_integral() && quad_norm(c) == RBig::ONE)
}

/// (x, w): x*w = -w*x differs from w*x, so S is not commutative.
pub fn noncommutativity_witness() -> (SkewPolynomial, SkewPolynomial) {
    let x = SkewPolynomial::x();
    let w = SkewPolynomial::constant(QuadValue::w());
    debug_assert_ne!(skew_mul(&x, &w), skew_mul(&w, &x));
    (x, w)
}

/// Rationals p/q with |p| <= height and 1 <= q <= height, ascending.
pub fn bounded_rationals(height: u64) -> Vec<RBig> {
    let h = height as i64;
    let mut values: Vec<RBig> = (-h..=h)
        .flat_map(|p| (1..=height).map(move |q| RBig::from_parts(p.into(), q.into())))
        .collect();
    values.sort();
    values.dedup();
    values
}

/// Every element of S with degree <= `max_degree` whose coefficient parts are
/// drawn from [`bounded_rationals`] (integers only for the constant term).
/// Iteration order is lexicographic on the coefficient index tuple, constant
/// term most significant.
#[derive(Debug, Clone)]
pub struct SGrid {
    constant_values: Vec<QuadValue>,
    values: Vec<QuadValue>,
    max_degree: usize,
}

impl SGrid {
    pub fn new(max_degree: usize, height: u64) -> Self {
        let rationals = bounded_rationals(height);
        let integers: Vec<RBig> = rationals.iter().filter(|r| r.is_int()).cloned().collect();
        let pairs = |set: &[RBig]| -> Vec<QuadValue> {
            set.iter()
                .flat_map(|a| set.iter().map(move |b| QuadValue::new(a.clone(), b.clone())))
                .collect()
        };
        SGrid {
            constant_values: pairs(&integers),
            values: pairs(&rationals),
            max_degree,
        }
    }

    pub fn len(&self) -> u64 {
        self.constant_values.len() as u64 * (self.values.len() as u64).pow(self.max_degree as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = SkewPolynomial> + '_ {
        let radices: Vec<usize> = std::iter::once(self.constant_values.len())
            .chain(std::iter::repeat_n(self.values.len(), self.max_degree))
            .collect();
        let mut digits = vec![0usize; radices.len()];
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let coeffs = digits
                .iter()
                .enumerate()
                .map(|(pos, &d)| {
                    if pos == 0 {
                        self.constant_values[d].clone()
                    } else {
                        self.values[d].clone()
                    }
                })
                .collect();
            let item = SkewPolynomial::new(coeffs);
            // odometer, last position fastest
            let mut pos = radices.len();
            loop {
                if pos == 0 {
                    done = true;
                    break;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < radices[pos] {
                    break;
                }
                digits[pos] = 0;
            }
            Some(item)
        })
    }
}

impl fmt::Display for SkewPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}
