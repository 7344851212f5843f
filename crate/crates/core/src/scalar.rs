//! Scalar field abstraction used by the polynomial, rational-function and
//! measure code.
//!
//! Everything that computes a generating function or a measure is generic
//! over [`Scalar`]. The exact instance ([`BigRational`]) is the one the
//! acceptance tests run on; `Rational64`, `f64` and `f32` are available for
//! quick approximate work and for comparing against floating-point tooling.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

/// A field scalar: signed, ordered, clonable, and convertible to and from
/// exact rationals.
pub trait Scalar: Clone + Debug + PartialOrd + Signed + Send + Sync + 'static {
    /// `true` when arithmetic is exact and `is_zero` is a reliable test.
    const EXACT: bool;

    fn from_int(v: i64) -> Self;

    fn from_big_rational(v: &BigRational) -> Self;

    fn to_big_rational(&self) -> BigRational;

    /// Zero test used for pivoting and polynomial normalization. Inexact
    /// types treat values below a small absolute threshold as zero.
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_int(numer) / Self::from_int(denom)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_big_rational(v: &BigRational) -> Self {
        v.clone()
    }

    fn to_big_rational(&self) -> BigRational {
        self.clone()
    }
}

/// Machine-word rationals. Exact until an intermediate overflows, at which
/// point the underlying arithmetic panics; prefer [`BigRational`] for
/// anything beyond small automata.
impl Scalar for Rational64 {
    const EXACT: bool = true;

    fn from_int(v: i64) -> Self {
        Rational64::from_integer(v)
    }

    fn from_big_rational(v: &BigRational) -> Self {
        let n = v.numer().to_i64().expect("numerator exceeds i64");
        let d = v.denom().to_i64().expect("denominator exceeds i64");
        Rational64::new(n, d)
    }

    fn to_big_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}

macro_rules! float_scalar {
    ($t:ty, $eps:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_int(v: i64) -> Self {
                v as $t
            }

            fn from_big_rational(v: &BigRational) -> Self {
                v.to_f64().unwrap_or(f64::NAN) as $t
            }

            fn to_big_rational(&self) -> BigRational {
                BigRational::from_f64(*self as f64).unwrap_or_else(BigRational::zero)
            }

            fn is_negligible(&self) -> bool {
                self.abs() < $eps
            }
        }
    };
}

float_scalar!(f64, 1e-10);
float_scalar!(f32, 1e-5);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions_round_trip_for_exact_types() {
        let q = BigRational::new(BigInt::from(-3), BigInt::from(14));
        assert_eq!(Rational64::from_big_rational(&q).to_big_rational(), q);
        assert_eq!(BigRational::from_ratio(6, 4), BigRational::new(3.into(), 2.into()));
    }

    #[test]
    fn float_negligible_threshold() {
        assert!(1e-12f64.is_negligible());
        assert!(!1e-3f64.is_negligible());
        assert!((0.5f64).to_big_rational() == BigRational::new(1.into(), 2.into()));
    }
}
