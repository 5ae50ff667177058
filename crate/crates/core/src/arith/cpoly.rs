use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Coefficient, Ring};

/// A polynomial in the weight variable `c` with exact rational coefficients.
///
/// Stored sparsely; zero coefficients are never kept, so structural equality
/// is polynomial equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct CPolynomial {
    coeffs: BTreeMap<u32, BigRational>,
}

impl CPolynomial {
    pub fn zero() -> Self {
        CPolynomial { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(r: BigRational) -> Self {
        Self::monomial(r, 0)
    }

    /// The indeterminate `c`.
    pub fn c() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    /// `coeff * c^exp`.
    pub fn monomial(coeff: BigRational, exp: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exp, coeff);
        }
        CPolynomial { coeffs }
    }

    /// Builds `sum_e dense[e] c^e` from integer coefficients.
    pub fn from_dense_integers(dense: Vec<BigInt>) -> Self {
        let coeffs = dense
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(e, v)| (e as u32, BigRational::from_integer(v)))
            .collect();
        CPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: u32) -> BigRational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigRational)> {
        self.coeffs.iter().map(|(&e, v)| (e, v))
    }

    /// The constant polynomial's value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.degree() {
            None => Some(BigRational::zero()),
            Some(0) => Some(self.coeff(0)),
            Some(_) => None,
        }
    }

    pub fn add_term(&mut self, exp: u32, coeff: &BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        CPolynomial { coeffs: self.coeffs.iter().map(|(&e, v)| (e, v * r)).collect() }
    }

    /// Multiplies by `c^shift`.
    pub fn shift(&self, shift: u32) -> Self {
        CPolynomial { coeffs: self.coeffs.iter().map(|(&e, v)| (e + shift, v.clone())).collect() }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The operator `c d/dc`, sending `c^j` to `j c^j`.
    pub fn theta(&self) -> Self {
        CPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&e, _)| e > 0)
                .map(|(&e, v)| (e, v * BigRational::from_integer(BigInt::from(e))))
                .collect(),
        }
    }

    pub fn eval(&self, c: &BigRational) -> BigRational {
        // Horner over the sparse exponents, highest first.
        let mut acc = BigRational::zero();
        let mut prev = None;
        for (&e, v) in self.coeffs.iter().rev() {
            if let Some(p) = prev {
                acc *= num_traits::pow(c.clone(), (p - e) as usize);
            }
            acc += v;
            prev = Some(e);
        }
        if let Some(p) = prev {
            acc *= num_traits::pow(c.clone(), p as usize);
        }
        acc
    }

    pub fn eval_complex(&self, c: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(&e, v)| c.powu(e) * v.to_f64().unwrap_or(f64::NAN))
            .sum()
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &BigRational, bare_one: bool) -> fmt::Result {
    if r.is_integer() {
        if bare_one && r.is_one() {
            Ok(())
        } else {
            write!(f, "{}", r.numer())
        }
    } else if bare_one {
        write!(f, "({}/{})", r.numer(), r.denom())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (&e, v)) in self.coeffs.iter().enumerate() {
            let magnitude = v.abs();
            match (i, v.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if e == 0 {
                write_rational(f, &magnitude, false)?;
            } else {
                write_rational(f, &magnitude, true)?;
                if e == 1 {
                    f.write_str("c")?;
                } else {
                    write!(f, "c^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CPolynomial({self})")
    }
}

impl From<BigRational> for CPolynomial {
    fn from(r: BigRational) -> Self {
        Self::constant(r)
    }
}

impl From<i64> for CPolynomial {
    fn from(v: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(v)))
    }
}

impl AddAssign<&CPolynomial> for CPolynomial {
    fn add_assign(&mut self, rhs: &CPolynomial) {
        for (&e, v) in &rhs.coeffs {
            self.add_term(e, v);
        }
    }
}

impl SubAssign<&CPolynomial> for CPolynomial {
    fn sub_assign(&mut self, rhs: &CPolynomial) {
        for (&e, v) in &rhs.coeffs {
            self.add_term(e, &-v);
        }
    }
}

impl Add for &CPolynomial {
    type Output = CPolynomial;
    fn add(self, rhs: &CPolynomial) -> CPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &CPolynomial {
    type Output = CPolynomial;
    fn sub(self, rhs: &CPolynomial) -> CPolynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &CPolynomial {
    type Output = CPolynomial;
    fn mul(self, rhs: &CPolynomial) -> CPolynomial {
        let mut out = CPolynomial::zero();
        for (&ea, va) in &self.coeffs {
            for (&eb, vb) in &rhs.coeffs {
                out.add_term(ea + eb, &(va * vb));
            }
        }
        out
    }
}

impl Neg for &CPolynomial {
    type Output = CPolynomial;
    fn neg(self) -> CPolynomial {
        CPolynomial { coeffs: self.coeffs.iter().map(|(&e, v)| (e, -v)).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for CPolynomial {
            type Output = CPolynomial;
            fn $method(self, rhs: CPolynomial) -> CPolynomial {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for CPolynomial {
    type Output = CPolynomial;
    fn neg(self) -> CPolynomial {
        -&self
    }
}

impl Ring for CPolynomial {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
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
        CPolynomial::scale(self, r)
    }
}

impl Coefficient for CPolynomial {
    fn from_rational(r: BigRational) -> Self {
        Self::constant(r)
    }

    /// Only nonzero constants are units of the polynomial ring.
    fn try_inverse(&self) -> Option<Self> {
        let k = self.as_constant()?;
        (!k.is_zero()).then(|| Self::constant(k.recip()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    fn poly(terms: &[(u32, i64)]) -> CPolynomial {
        let mut p = CPolynomial::zero();
        for &(e, v) in terms {
            p.add_term(e, &rat(v));
        }
        p
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = poly(&[(1, 2), (3, 1)]);
        let q = poly(&[(1, -2)]);
        assert_eq!(&p + &q, poly(&[(3, 1)]));
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn display_is_ascending() {
        assert_eq!(poly(&[(4, 4), (1, 1), (2, 2)]).to_string(), "c + 2c^2 + 4c^4");
        assert_eq!(poly(&[(0, -1), (2, 1)]).to_string(), "-1 + c^2");
        assert_eq!(CPolynomial::monomial(ratio(-1, 2), 3).to_string(), "-(1/2)c^3");
        assert_eq!(CPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn multiplication_and_eval() {
        // (1 + c)(1 - c) = 1 - c^2
        let prod = &poly(&[(0, 1), (1, 1)]) * &poly(&[(0, 1), (1, -1)]);
        assert_eq!(prod, poly(&[(0, 1), (2, -1)]));
        assert_eq!(prod.eval(&ratio(1, 2)), ratio(3, 4));
        assert_eq!(poly(&[(1, 1)]).pow(5), poly(&[(5, 1)]));
    }

    #[test]
    fn theta_is_c_derivative() {
        assert_eq!(poly(&[(0, 7), (2, 3)]).theta(), poly(&[(2, 6)]));
    }

    #[test]
    fn only_constants_invert() {
        assert_eq!(CPolynomial::from(4).try_inverse(), Some(CPolynomial::constant(ratio(1, 4))));
        assert_eq!(CPolynomial::c().try_inverse(), None);
        assert_eq!(CPolynomial::zero().try_inverse(), None);
    }
}
