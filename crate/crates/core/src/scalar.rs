//! Scalar abstraction for the closed-form degree and goodness bounds.
//!
//! The combinatorial code is integer-only. The handful of real-valued
//! bounds (goodness thresholds, semi-degree guarantees, crossing-edge bounds)
//! are written once against [`Scalar`] so they can be evaluated in floating
//! point for reporting and in exact rational arithmetic for verification.

use std::fmt::Debug;

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, ToPrimitive};

/// Exact rational scalar used wherever a bound must be compared without
/// rounding error.
pub type Rational = Ratio<i64>;

/// Numeric type the bound formulas are generic over: `f32`, `f64` or
/// [`Rational`].
pub trait Scalar: Num + Copy + PartialOrd + FromPrimitive + Debug {
    /// Smallest integer not below `self`, or `None` when out of `i64` range.
    fn ceil_to_i64(self) -> Option<i64>;

    /// Largest integer not above `self`, or `None` when out of `i64` range.
    fn floor_to_i64(self) -> Option<i64>;

    /// Lossy conversion for display and JSON reports.
    fn to_f64_lossy(self) -> f64;

    fn from_usize_exact(v: usize) -> Self {
        Self::from_usize(v).expect("count representable in scalar type")
    }

    /// `num / den` built from integers.
    fn ratio(num: i64, den: i64) -> Self {
        let n = Self::from_i64(num).expect("numerator representable");
        let d = Self::from_i64(den).expect("denominator representable");
        n / d
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn ceil_to_i64(self) -> Option<i64> {
                self.ceil().to_i64()
            }

            fn floor_to_i64(self) -> Option<i64> {
                self.floor().to_i64()
            }

            fn to_f64_lossy(self) -> f64 {
                self as f64
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

impl Scalar for Rational {
    fn ceil_to_i64(self) -> Option<i64> {
        Some(self.ceil().to_integer())
    }

    fn floor_to_i64(self) -> Option<i64> {
        Some(self.floor().to_integer())
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_agrees_between_routes() {
        for num in -20i64..20 {
            for den in 1i64..7 {
                let exact = Rational::ratio(num, den);
                let float = f64::ratio(num, den);
                assert_eq!(exact.floor_to_i64(), float.floor_to_i64(), "{num}/{den}");
                // 1/3 * 3 style products are not exercised here, only direct quotients.
                assert_eq!(exact.ceil_to_i64(), float.ceil_to_i64(), "{num}/{den}");
            }
        }
    }

    #[test]
    fn rational_ceil_of_integer_is_identity() {
        assert_eq!(Rational::from_usize_exact(5).ceil_to_i64(), Some(5));
        assert_eq!(Rational::ratio(-1, 2).ceil_to_i64(), Some(0));
    }
}
