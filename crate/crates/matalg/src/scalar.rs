//! Exact complex scalars: pairs of arbitrary-precision rationals.
//!
//! Every theorem-level decision in this crate is about entries being zero or
//! nonzero, so equality must be exact. Floating point appears only at the
//! ingestion boundary (see [`crate::matrix::FloatMatrix`]).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
}

/// An exact complex number `re + im·i` with rational real and imaginary parts.
///
/// `BigRational` keeps values in canonical reduced form with a positive
/// denominator, so derived equality is exact equality of complex numbers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComplexRational {
    re: BigRational,
    im: BigRational,
}

impl ComplexRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    /// Builds `re_num/re_den + (im_num/im_den)·i`, rejecting zero denominators.
    pub fn from_integer_parts(
        re_num: BigInt,
        re_den: BigInt,
        im_num: BigInt,
        im_den: BigInt,
    ) -> Result<Self, ScalarError> {
        if re_den.is_zero() || im_den.is_zero() {
            return Err(ScalarError::ZeroDenominator);
        }
        Ok(Self {
            re: BigRational::new(re_num, re_den),
            im: BigRational::new(im_num, im_den),
        })
    }

    /// A real integer as a complex rational.
    pub fn from_int(v: i64) -> Self {
        Self {
            re: BigRational::from_integer(BigInt::from(v)),
            im: BigRational::zero(),
        }
    }

    /// The exact rational value of an `f64` pair (binary expansion, no rounding).
    /// Returns `None` for NaN or infinities.
    pub fn from_f64_parts(re: f64, im: f64) -> Option<Self> {
        Some(Self {
            re: BigRational::from_float(re)?,
            im: BigRational::from_float(im)?,
        })
    }

    pub fn zero() -> Self {
        Self {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        Self {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn conjugate(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `re² + im²`, the squared modulus, as an exact rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inverse(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let n = self.norm_sqr();
        Ok(Self {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }
}

impl Add for &ComplexRational {
    type Output = ComplexRational;
    fn add(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &ComplexRational {
    type Output = ComplexRational;
    fn sub(self, rhs: &ComplexRational) -> ComplexRational {
        ComplexRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &ComplexRational {
    type Output = ComplexRational;
    fn mul(self, rhs: &ComplexRational) -> ComplexRational {
        // Zero short-circuits keep the echelon reductions cheap: most entries
        // in closure bases are zero.
        if self.is_zero() || rhs.is_zero() {
            return ComplexRational::zero();
        }
        if self.im.is_zero() && rhs.im.is_zero() {
            return ComplexRational {
                re: &self.re * &rhs.re,
                im: BigRational::zero(),
            };
        }
        ComplexRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &ComplexRational {
    type Output = Result<ComplexRational, ScalarError>;
    fn div(self, rhs: &ComplexRational) -> Result<ComplexRational, ScalarError> {
        Ok(self * &rhs.inverse()?)
    }
}

impl Neg for &ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        ComplexRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

macro_rules! forward_value_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ComplexRational {
            type Output = ComplexRational;
            fn $method(self, rhs: ComplexRational) -> ComplexRational {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_value_binop!(Add, add);
forward_value_binop!(Sub, sub);
forward_value_binop!(Mul, mul);

impl Neg for ComplexRational {
    type Output = ComplexRational;
    fn neg(self) -> ComplexRational {
        -&self
    }
}

impl fmt::Display for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ComplexRational {
        ComplexRational::from_integer_parts(n.into(), d.into(), 0.into(), 1.into()).unwrap()
    }

    #[test]
    fn canonical_reduced_form() {
        // 2/4 and 1/2 are the same value; -1/-2 normalizes to positive denominator
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(-1, -2), q(1, 2));
        assert_eq!(q(3, -6), q(-1, 2));
    }

    #[test]
    fn zero_denominator_rejected() {
        let e = ComplexRational::from_integer_parts(1.into(), 0.into(), 0.into(), 1.into());
        assert_eq!(e.unwrap_err(), ScalarError::ZeroDenominator);
        let e = ComplexRational::from_integer_parts(1.into(), 1.into(), 1.into(), 0.into());
        assert_eq!(e.unwrap_err(), ScalarError::ZeroDenominator);
    }

    #[test]
    fn complex_product_and_inverse() {
        let i = ComplexRational::from_integer_parts(0.into(), 1.into(), 1.into(), 1.into()).unwrap();
        assert_eq!(&i * &i, ComplexRational::from_int(-1));
        let z = ComplexRational::from_integer_parts(3.into(), 1.into(), 4.into(), 1.into()).unwrap();
        let w = z.inverse().unwrap();
        assert!((&z * &w).is_one());
        assert_eq!(
            ComplexRational::zero().inverse().unwrap_err(),
            ScalarError::DivisionByZero
        );
    }

    #[test]
    fn exact_equality_no_tolerance() {
        // 1/3 computed two different ways is identical
        let a = q(1, 3);
        let b = &q(2, 3) - &q(1, 3);
        assert_eq!(a, b);
        // and differs from any nearby float-derived value
        let c = ComplexRational::from_f64_parts(1.0 / 3.0, 0.0).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn float_ingestion_is_exact_binary() {
        let half = ComplexRational::from_f64_parts(0.5, -0.25).unwrap();
        assert_eq!(half, {
            ComplexRational::from_integer_parts(1.into(), 2.into(), (-1).into(), 4.into()).unwrap()
        });
        assert!(ComplexRational::from_f64_parts(f64::NAN, 0.0).is_none());
    }
}
