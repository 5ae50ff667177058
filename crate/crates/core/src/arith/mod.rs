//! Exact and numeric arithmetic shared by every identity checker.

mod bell;
mod binomial;
mod complex;
mod cpoly;
mod divisor;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use bell::{bell_partition_sum, bell_polynomial, bell_polynomial_with_cap, DEFAULT_BELL_CAP};
pub use binomial::BinomialTable;
pub use complex::{
    complex_power, fractional_weight, power_or_zero, ExactWeight, NumericWeight,
    WeightParams, DEFAULT_DISK_RADIUS,
};
pub use cpoly::CPolynomial;
pub use divisor::{divisor_count, divisors, sigma_int, sigma_zc_exact, sigma_zc_numeric};

/// A commutative ring with unit, used by the generic Bell polynomial and the
/// series kernels.
///
/// Values carry enough context (for series: the truncation order) to build
/// their own zero and one.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplication by an exact rational scalar.
    fn scale(&self, r: &BigRational) -> Self;
}

/// Exact scalars a truncated series may carry as coefficients.
pub trait Coefficient: Ring + fmt::Display {
    fn from_rational(r: BigRational) -> Self;
    fn try_inverse(&self) -> Option<Self>;

    fn from_int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(v)))
    }
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, r: &BigRational) -> Self {
        self * r
    }
}

impl Coefficient for BigRational {
    fn from_rational(r: BigRational) -> Self {
        r
    }
    fn try_inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

/// Shorthand for an integer-valued rational.
pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
