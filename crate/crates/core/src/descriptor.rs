//! Symbolic ring descriptions.
//!
//! A [`RingDescriptor`] names a ring; arithmetic is derived from it by
//! [`Ring`](crate::ring::Ring). Descriptors print in the same syntax the
//! command-line parser accepts, so `parse_ring_spec(&d.to_string()) == d`.

use std::fmt;

use dashu_int::UBig;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingDescriptor {
    /// The integers Z.
    Integer,
    /// Z/nZ with n >= 2.
    Modular(u64),
    /// k x k matrices over a base ring.
    Matrix { size: usize, base: Box<RingDescriptor> },
    /// k x k upper triangular matrices over a base ring, k >= 2.
    UpperTriangular { size: usize, base: Box<RingDescriptor> },
    /// Direct product of at least one factor; factors are never products themselves.
    Product(Vec<RingDescriptor>),
    /// Z[w] with w^2 = -7.
    QuadraticInteger,
    /// Q(w) with w^2 = -7.
    QuadraticField,
    /// Polynomials over Q(w) with twisted multiplication x*c = conj(c)*x and
    /// constant term in Z[w]. The bounds only govern sampling.
    SkewSubring { max_degree: usize, height: u64 },
}

impl RingDescriptor {
    pub fn modular(n: u64) -> Self {
        RingDescriptor::Modular(n)
    }

    pub fn matrix(size: usize, base: RingDescriptor) -> Self {
        RingDescriptor::Matrix {
            size,
            base: Box::new(base),
        }
    }

    pub fn upper_triangular(size: usize, base: RingDescriptor) -> Self {
        RingDescriptor::UpperTriangular {
            size,
            base: Box::new(base),
        }
    }

    pub fn skew_subring(max_degree: usize, height: u64) -> Self {
        RingDescriptor::SkewSubring { max_degree, height }
    }

    /// Checks the parameter constraints every constructor must honor.
    pub fn validate(&self) -> Result<()> {
        match self {
            RingDescriptor::Integer
            | RingDescriptor::QuadraticInteger
            | RingDescriptor::QuadraticField => Ok(()),
            RingDescriptor::Modular(n) if *n < 2 => Err(Error::UnsupportedDescriptor(format!(
                "modulus {n} < 2 gives a ring with 1 = 0"
            ))),
            RingDescriptor::Modular(_) => Ok(()),
            RingDescriptor::Matrix { size, base } => {
                if *size == 0 {
                    return Err(Error::UnsupportedDescriptor("matrix size must be >= 1".into()));
                }
                base.validate()
            }
            RingDescriptor::UpperTriangular { size, base } => {
                if *size < 2 {
                    return Err(Error::UnsupportedDescriptor(
                        "triangular matrix size must be >= 2".into(),
                    ));
                }
                base.validate()
            }
            RingDescriptor::Product(factors) => {
                if factors.is_empty() {
                    return Err(Error::UnsupportedDescriptor("empty product".into()));
                }
                for f in factors {
                    if matches!(f, RingDescriptor::Product(_)) {
                        return Err(Error::UnsupportedDescriptor(
                            "product factors must not be products".into(),
                        ));
                    }
                    f.validate()?;
                }
                Ok(())
            }
            RingDescriptor::SkewSubring { height, .. } => {
                if *height == 0 {
                    return Err(Error::UnsupportedDescriptor(
                        "sampling height must be >= 1".into(),
                    ));
                }
                Ok(())
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            RingDescriptor::Modular(_) => true,
            RingDescriptor::Matrix { base, .. } | RingDescriptor::UpperTriangular { base, .. } => {
                base.is_finite()
            }
            RingDescriptor::Product(factors) => factors.iter().all(|f| f.is_finite()),
            _ => false,
        }
    }

    /// |R| for finite rings.
    pub fn order(&self) -> Option<UBig> {
        match self {
            RingDescriptor::Modular(n) => Some(UBig::from(*n)),
            RingDescriptor::Matrix { size, base } => {
                Some(base.order()?.pow(size * size))
            }
            RingDescriptor::UpperTriangular { size, base } => {
                Some(base.order()?.pow(size * (size + 1) / 2))
            }
            RingDescriptor::Product(factors) => factors
                .iter()
                .try_fold(UBig::ONE, |acc, f| Some(acc * f.order()?)),
            _ => None,
        }
    }

    /// The order as a machine integer, when it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.order().and_then(|o| u64::try_from(o).ok())
    }

    /// True when commutativity follows from the construction alone.
    pub fn is_commutative_by_construction(&self) -> bool {
        match self {
            RingDescriptor::Integer
            | RingDescriptor::Modular(_)
            | RingDescriptor::QuadraticInteger
            | RingDescriptor::QuadraticField => true,
            RingDescriptor::Matrix { size, base } => *size == 1 && base.is_commutative_by_construction(),
            RingDescriptor::Product(factors) => {
                factors.iter().all(|f| f.is_commutative_by_construction())
            }
            RingDescriptor::UpperTriangular { .. } | RingDescriptor::SkewSubring { .. } => false,
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Integer => write!(f, "Z"),
            RingDescriptor::Modular(n) => write!(f, "Zn({n})"),
            RingDescriptor::Matrix { size, base } => write!(f, "Mat({size},{base})"),
            RingDescriptor::UpperTriangular { size, base } => write!(f, "Tri({size},{base})"),
            RingDescriptor::Product(factors) => {
                for (i, factor) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, "x")?;
                    }
                    write!(f, "{factor}")?;
                }
                Ok(())
            }
            RingDescriptor::QuadraticInteger => write!(f, "Zi7"),
            RingDescriptor::QuadraticField => write!(f, "Qi7"),
            RingDescriptor::SkewSubring { max_degree, height } => {
                write!(f, "SkewS({max_degree},{height})")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finiteness_follows_the_bases() {
        assert!(RingDescriptor::Modular(6).is_finite());
        assert!(!RingDescriptor::Integer.is_finite());
        assert!(RingDescriptor::matrix(2, RingDescriptor::Modular(2)).is_finite());
        assert!(!RingDescriptor::matrix(2, RingDescriptor::Integer).is_finite());
        assert!(!RingDescriptor::Product(vec![
            RingDescriptor::Modular(2),
            RingDescriptor::QuadraticInteger
        ])
        .is_finite());
        assert!(!RingDescriptor::skew_subring(3, 2).is_finite());
    }

    #[test]
    fn order_product_rule() {
        let z2 = RingDescriptor::Modular(2);
        assert_eq!(RingDescriptor::matrix(2, z2.clone()).order_u64(), Some(16));
        assert_eq!(RingDescriptor::upper_triangular(2, z2.clone()).order_u64(), Some(8));
        assert_eq!(RingDescriptor::upper_triangular(3, RingDescriptor::Modular(3)).order_u64(), Some(729));
        assert_eq!(
            RingDescriptor::Product(vec![z2, RingDescriptor::Modular(3)]).order_u64(),
            Some(6)
        );
        assert_eq!(RingDescriptor::QuadraticField.order(), None);
    }

    #[test]
    fn malformed_parameters_are_rejected() {
        assert!(RingDescriptor::Modular(1).validate().is_err());
        assert!(RingDescriptor::matrix(0, RingDescriptor::Modular(2)).validate().is_err());
        assert!(RingDescriptor::upper_triangular(1, RingDescriptor::Modular(2)).validate().is_err());
        assert!(RingDescriptor::Product(vec![]).validate().is_err());
        assert!(RingDescriptor::skew_subring(3, 0).validate().is_err());
    }

    #[test]
    fn display_uses_spec_syntax() {
        let d = RingDescriptor::matrix(
            2,
            RingDescriptor::Product(vec![RingDescriptor::Modular(2), RingDescriptor::Modular(3)]),
        );
        assert_eq!(d.to_string(), "Mat(2,Zn(2)xZn(3))");
    }
}
