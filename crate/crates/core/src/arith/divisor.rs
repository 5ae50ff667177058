use num_bigint::BigUint;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::complex::complex_power;
use super::CPolynomial;

/// Positive divisors of `n` in ascending order, by trial division.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors of zero are undefined");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `d(n)`, the number of positive divisors.
pub fn divisor_count(n: u64) -> u64 {
    divisors(n).len() as u64
}

/// `sigma_z(n) = sum_{d | n} d^z`.
pub fn sigma_int(z: u32, n: u64) -> BigUint {
    divisors(n)
        .into_iter()
        .map(|d| num_traits::pow(BigUint::from(d), z as usize))
        .fold(BigUint::zero(), |acc, t| acc + t)
}

/// `sigma_{z,c}(n) = sum_{d | n} d^z c^d` as a polynomial in `c`.
pub fn sigma_zc_exact(z: u32, n: u64) -> CPolynomial {
    let mut out = CPolynomial::zero();
    for d in divisors(n) {
        let weight = num_traits::pow(BigRational::from_integer(d.into()), z as usize);
        out.add_term(d as u32, &weight);
    }
    out
}

/// `sum_{d | n} d^z c^d` for complex `z` and `c`, using the real logarithm of
/// each divisor. The `d = 1` term is exactly `c`.
pub fn sigma_zc_numeric(z: Complex64, c: Complex64, n: u64) -> Complex64 {
    divisors(n)
        .into_iter()
        .map(|d| {
            let weight = if d == 1 { Complex64::one() } else { complex_power(d, z) };
            weight * c.powu(d as u32)
        })
        .sum()
}
