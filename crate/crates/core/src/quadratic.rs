//! Exact arithmetic in Q(w) and Z[w], where w = sqrt(-7).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use dashu_int::IBig;
use dashu_ratio::RBig;

/// a + b*w with rational a, b. `RBig` keeps both parts in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadValue {
    pub re: RBig,
    pub im: RBig,
}

impl QuadValue {
    pub fn new(re: RBig, im: RBig) -> Self {
        QuadValue { re, im }
    }

    pub fn zero() -> Self {
        QuadValue::new(RBig::ZERO, RBig::ZERO)
    }

    pub fn one() -> Self {
        QuadValue::new(RBig::ONE, RBig::ZERO)
    }

    /// The element w = sqrt(-7).
    pub fn w() -> Self {
        QuadValue::new(RBig::ZERO, RBig::ONE)
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        QuadValue::new(RBig::from(re), RBig::from(im))
    }

    /// (re_num/re_den) + (im_num/im_den) w.
    pub fn from_fractions(re_num: i64, re_den: u64, im_num: i64, im_den: u64) -> Self {
        QuadValue::new(
            RBig::from_parts(re_num.into(), re_den.into()),
            RBig::from_parts(im_num.into(), im_den.into()),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// True when both parts are integers, i.e. the value lies in Z[w].
    pub fn is_integral(&self) -> bool {
        self.re.is_int() && self.im.is_int()
    }

    /// True when the value is a rational number (fixed by conjugation).
    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    pub fn scale(&self, k: &RBig) -> QuadValue {
        // Units of Z are frequent scalars; skip the rational normalisation for them.
        if *k == RBig::ONE {
            return self.clone();
        }
        if *k == RBig::NEG_ONE {
            return -self;
        }
        QuadValue::new(&self.re * k, &self.im * k)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<QuadValue> {
        if self.is_zero() {
            return None;
        }
        let n = quad_norm(self);
        let c = sigma(self);
        Some(QuadValue::new(c.re / &n, c.im / &n))
    }

    pub fn to_quad_int(&self) -> Option<QuadInt> {
        if !self.is_integral() {
            return None;
        }
        Some(QuadInt::new(
            self.re.numerator().clone(),
            self.im.numerator().clone(),
        ))
    }
}

/// The conjugation a + b w -> a - b w; an involutive field automorphism of Q(w).
pub fn sigma(c: &QuadValue) -> QuadValue {
    QuadValue::new(c.re.clone(), -&c.im)
}

/// c * sigma(c) = a^2 + 7 b^2.
pub fn quad_norm(c: &QuadValue) -> RBig {
    &c.re * &c.re + RBig::from(7) * &c.im * &c.im
}

impl Add for &QuadValue {
    type Output = QuadValue;
    fn add(self, o: &QuadValue) -> QuadValue {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        QuadValue::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &QuadValue {
    type Output = QuadValue;
    fn sub(self, o: &QuadValue) -> QuadValue {
        QuadValue::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Neg for &QuadValue {
    type Output = QuadValue;
    fn neg(self) -> QuadValue {
        QuadValue::new(-&self.re, -&self.im)
    }
}

impl Mul for &QuadValue {
    type Output = QuadValue;
    fn mul(self, o: &QuadValue) -> QuadValue {
        // Scalar operands are common in S (rational coefficients); skip the cross terms.
        if self.im.is_zero() {
            return o.scale(&self.re);
        }
        if o.im.is_zero() {
            return self.scale(&o.re);
        }
        let re = &self.re * &o.re - RBig::from(7) * &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        QuadValue::new(re, im)
    }
}

impl fmt::Display for QuadValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_quad(f, &self.re, &self.im, |r| r.is_zero(), |r| r.is_one(), |r| {
            r < &RBig::ZERO
        })
    }
}

/// a + b w with integer a, b: an element of Z[w].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadInt {
    pub re: IBig,
    pub im: IBig,
}

impl QuadInt {
    pub fn new(re: IBig, im: IBig) -> Self {
        QuadInt { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        QuadInt::new(re.into(), im.into())
    }

    pub fn zero() -> Self {
        QuadInt::from_ints(0, 0)
    }

    pub fn one() -> Self {
        QuadInt::from_ints(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm(&self) -> IBig {
        &self.re * &self.re + IBig::from(7) * &self.im * &self.im
    }

    pub fn conj(&self) -> QuadInt {
        QuadInt::new(self.re.clone(), -&self.im)
    }

    pub fn add(&self, o: &QuadInt) -> QuadInt {
        QuadInt::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &QuadInt) -> QuadInt {
        QuadInt::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn neg(&self) -> QuadInt {
        QuadInt::new(-&self.re, -&self.im)
    }

    pub fn mul(&self, o: &QuadInt) -> QuadInt {
        QuadInt::new(
            &self.re * &o.re - IBig::from(7) * &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    /// The units of Z[w] are the elements of norm 1, and a^2 + 7b^2 = 1 forces b = 0, a = +-1.
    pub fn is_unit(&self) -> bool {
        self.norm() == IBig::ONE
    }

    /// The exact quotient `c / self` when it lies in Z[w].
    pub fn divides(&self, c: &QuadInt) -> Option<QuadInt> {
        if self.is_zero() {
            return c.is_zero().then(QuadInt::zero);
        }
        let n = self.norm();
        let num = c.mul(&self.conj());
        if (&num.re % &n).is_zero() && (&num.im % &n).is_zero() {
            Some(QuadInt::new(&num.re / &n, &num.im / &n))
        } else {
            None
        }
    }

    pub fn to_value(&self) -> QuadValue {
        QuadValue::new(RBig::from(self.re.clone()), RBig::from(self.im.clone()))
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_quad(f, &self.re, &self.im, |r| r.is_zero(), |r| r.is_one(), |r| {
            r < &IBig::ZERO
        })
    }
}

/// Shared literal format: "a", "w", "-w", "b*w", "a+b*w", "a-w", ...
fn write_quad<T: fmt::Display + Clone + Neg<Output = T>>(
    f: &mut fmt::Formatter<'_>,
    re: &T,
    im: &T,
    is_zero: impl Fn(&T) -> bool,
    is_one: impl Fn(&T) -> bool,
    is_negative: impl Fn(&T) -> bool,
) -> fmt::Result {
    if is_zero(im) {
        return write!(f, "{re}");
    }
    let negative = is_negative(im);
    let magnitude = if negative { -im.clone() } else { im.clone() };
    if !is_zero(re) {
        write!(f, "{re}{}", if negative { "-" } else { "+" })?;
    } else if negative {
        write!(f, "-")?;
    }
    if is_one(&magnitude) {
        write!(f, "w")
    } else {
        write!(f, "{magnitude}*w")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&QuadValue::from_ints(3, 0)), QuadValue::from_ints(3, 0));
        assert_eq!(sigma(&QuadValue::w()), QuadValue::from_ints(0, -1));
        assert_eq!(
            sigma(&QuadValue::from_fractions(1, 2, 2, 1)),
            QuadValue::from_fractions(1, 2, -2, 1)
        );
    }

    #[test]
    fn norm_examples() {
        assert_eq!(quad_norm(&QuadValue::one()), RBig::ONE);
        assert_eq!(quad_norm(&QuadValue::w()), RBig::from(7));
        assert_eq!(quad_norm(&QuadValue::from_ints(3, 2)), RBig::from(37));
    }

    #[test]
    fn quad_int_norm_product() {
        // (1+w)(1-w) = 1 - w^2 = 8
        let p = QuadInt::from_ints(1, 1).mul(&QuadInt::from_ints(1, -1));
        assert_eq!(p, QuadInt::from_ints(8, 0));
    }

    #[test]
    fn quad_int_units_and_division() {
        assert!(QuadInt::from_ints(-1, 0).is_unit());
        assert!(!QuadInt::from_ints(0, 1).is_unit());
        assert_eq!(
            QuadInt::from_ints(1, 1).divides(&QuadInt::from_ints(8, 0)),
            Some(QuadInt::from_ints(1, -1))
        );
        assert_eq!(QuadInt::from_ints(5, 0).divides(&QuadInt::from_ints(3, 0)), None);
    }

    #[test]
    fn inverse_is_exact() {
        let c = QuadValue::from_fractions(1, 2, -3, 4);
        let inv = c.inverse().unwrap();
        assert!((&c * &inv).is_one());
        assert!(QuadValue::zero().inverse().is_none());
    }

    #[test]
    fn literal_format() {
        assert_eq!(QuadValue::from_ints(1, 2).to_string(), "1+2*w");
        assert_eq!(QuadValue::from_ints(0, -1).to_string(), "-w");
        assert_eq!(QuadValue::from_fractions(1, 2, -1, 2).to_string(), "1/2-1/2*w");
        assert_eq!(QuadValue::from_ints(-3, 0).to_string(), "-3");
        assert_eq!(QuadInt::from_ints(2, 1).to_string(), "2+w");
    }
}
