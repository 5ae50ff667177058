use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::CPolynomial;
use crate::error::{Error, Result};

/// Default radius of the disk numeric-mode weights `c` must lie in.
pub const DEFAULT_DISK_RADIUS: f64 = 0.9;

/// Exact mode: a nonnegative integer exponent, with `c` kept symbolic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactWeight {
    pub z: u32,
}

/// Numeric mode: complex exponent and complex weight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericWeight {
    pub z: Complex64,
    pub c: Complex64,
}

/// The exponent `z` (or `k`) and weight `c` of a weighted identity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WeightParams {
    Exact(ExactWeight),
    Numeric(NumericWeight),
}

impl WeightParams {
    pub fn exact(z: u32) -> Self {
        WeightParams::Exact(ExactWeight { z })
    }

    pub fn numeric(z: Complex64, c: Complex64) -> Result<Self> {
        Self::numeric_in_disk(z, c, DEFAULT_DISK_RADIUS)
    }

    pub fn numeric_in_disk(z: Complex64, c: Complex64, radius: f64) -> Result<Self> {
        if !(z.is_finite() && c.is_finite()) {
            return Err(Error::Domain(format!("non-finite weight parameters z={z}, c={c}")));
        }
        if c.norm() > radius {
            return Err(Error::Domain(format!(
                "|c| = {} lies outside the configured disk of radius {radius}",
                c.norm()
            )));
        }
        Ok(WeightParams::Numeric(NumericWeight { z, c }))
    }
}

fn small_nonnegative_integer(z: Complex64) -> Option<i32> {
    (z.im == 0.0 && z.re >= 0.0 && z.re.fract() == 0.0 && z.re <= 1024.0).then_some(z.re as i32)
}

/// `j^z = exp(z ln j)` on the principal branch; exact integer powers are
/// reproduced without going through the logarithm.
pub fn complex_power(j: u64, z: Complex64) -> Complex64 {
    assert!(j >= 1, "complex_power needs a positive base");
    if j == 1 {
        return Complex64::new(1.0, 0.0);
    }
    let base = j as f64;
    if let Some(k) = small_nonnegative_integer(z) {
        return Complex64::new(base.powi(k), 0.0);
    }
    let ln = base.ln();
    let modulus = base.powf(z.re);
    let (sin, cos) = (z.im * ln).sin_cos();
    Complex64::new(modulus * cos, modulus * sin)
}

/// Like [`complex_power`] but admits base 0, with `0^0 = 1` and `0^z = 0`
/// otherwise.
pub fn power_or_zero(base: u64, z: Complex64) -> Complex64 {
    if base == 0 {
        if z.is_zero() {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::zero()
        }
    } else {
        complex_power(base, z)
    }
}

/// Applies `D^z: c^j -> j^z c^j` termwise to `p` and evaluates at `c`.
pub fn fractional_weight(p: &CPolynomial, z: Complex64, c: Complex64) -> Complex64 {
    p.terms()
        .map(|(j, a)| {
            let a = a.to_f64().unwrap_or(f64::NAN);
            power_or_zero(u64::from(j), z) * c.powu(j) * a
        })
        .sum()
}
