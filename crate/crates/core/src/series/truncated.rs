use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::{Coefficient, Ring};
use crate::error::{Error, Result};

/// A power series in `q` known through `q^order`.
///
/// Coefficients beyond `order` are never read or produced. Two series are
/// equal iff their orders and all `order + 1` coefficients agree.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<C> {
    coeffs: Vec<C>,
}

pub(crate) fn ring_pow<C: Ring>(x: &C, exp: usize) -> C {
    let mut acc = x.one_like();
    for _ in 0..exp {
        acc = acc.mul_ref(x);
    }
    acc
}

impl<C: Coefficient> TruncatedSeries<C> {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries { coeffs: vec![C::from_int(0); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::from_int(1), order)
    }

    pub fn constant(value: C, order: usize) -> Self {
        Self::monomial(value, 0, order)
    }

    /// `value * q^exp`; zero when `exp > order`.
    pub fn monomial(value: C, exp: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if exp <= order {
            s.coeffs[exp] = value;
        }
        s
    }

    /// Takes the first `order + 1` coefficients, padding with zeros.
    pub fn from_coeffs(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::from_int(0));
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &C {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn set_coeff(&mut self, i: usize, value: C) {
        if i <= self.order() {
            self.coeffs[i] = value;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero_elem)
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::Usage(format!(
                "series order mismatch: {} vs {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.zip_with(other, Ring::add_ref))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(self.zip_with(other, Ring::sub_ref))
    }

    /// Schoolbook product truncated at the common order.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let q = self.order();
        let mut out = Self::zero(q);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in other.coeffs[..=q - i].iter().enumerate() {
                if !b.is_zero_elem() {
                    out.coeffs[i + j] = out.coeffs[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect() }
    }

    /// Multiplies every coefficient by the ring element `x`.
    pub fn scale_by(&self, x: &C) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| a.mul_ref(x)).collect() }
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| a.scale(r)).collect() }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        let q = self.order();
        let mut out = Self::zero(q);
        for i in k..=q {
            out.coeffs[i] = self.coeffs[i - k].clone();
        }
        out
    }

    /// Multiplies by `(1 - x q^k)`, `k >= 1`.
    pub fn mul_one_minus(&self, x: &C, k: usize) -> Self {
        assert!(k >= 1);
        let mut out = self.clone();
        for i in k..=self.order() {
            out.coeffs[i] = out.coeffs[i].sub_ref(&x.mul_ref(&self.coeffs[i - k]));
        }
        out
    }

    /// Multiplies by the geometric series `1 / (1 - x q^k) = sum_j x^j q^{jk}`,
    /// `k >= 1`, as the running recurrence `out[i] = self[i] + x out[i - k]`.
    pub fn div_one_minus(&self, x: &C, k: usize) -> Self {
        assert!(k >= 1);
        let mut out = self.clone();
        for i in k..=self.order() {
            let carried = x.mul_ref(&out.coeffs[i - k]);
            out.coeffs[i] = out.coeffs[i].add_ref(&carried);
        }
        out
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].try_inverse().ok_or_else(|| {
            Error::Domain(format!("constant term {} is not invertible", self.coeffs[0]))
        })?;
        let q = self.order();
        let mut g: Vec<C> = Vec::with_capacity(q + 1);
        g.push(inv0.clone());
        for i in 1..=q {
            let mut acc = self.coeffs[0].zero_like();
            for k in 1..=i {
                if !self.coeffs[k].is_zero_elem() {
                    acc = acc.add_ref(&self.coeffs[k].mul_ref(&g[i - k]));
                }
            }
            g.push(acc.mul_ref(&inv0).neg_ref());
        }
        Ok(TruncatedSeries { coeffs: g })
    }

    /// `exp(f)` for `f` with zero constant term, via `i g_i = sum k f_k g_{i-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero_elem() {
            return Err(Error::Domain("exp needs a zero constant term".into()));
        }
        let q = self.order();
        let mut g: Vec<C> = Vec::with_capacity(q + 1);
        g.push(C::from_int(1));
        for i in 1..=q {
            let mut acc = C::from_int(0);
            for k in 1..=i {
                if !self.coeffs[k].is_zero_elem() {
                    let term = self.coeffs[k].mul_ref(&g[i - k]).scale(&int_rat(k));
                    acc = acc.add_ref(&term);
                }
            }
            g.push(acc.scale(&BigRational::new(1.into(), BigInt::from(i))));
        }
        Ok(TruncatedSeries { coeffs: g })
    }

    /// `log(f)` for `f` with constant term 1, via `f g' = f'`.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != C::from_int(1) {
            return Err(Error::Domain("log needs constant term 1".into()));
        }
        let q = self.order();
        let mut g: Vec<C> = Vec::with_capacity(q + 1);
        g.push(C::from_int(0));
        for i in 1..=q {
            let mut acc = self.coeffs[i].scale(&int_rat(i));
            for k in 1..i {
                if !self.coeffs[i - k].is_zero_elem() {
                    let term = g[k].mul_ref(&self.coeffs[i - k]).scale(&int_rat(k));
                    acc = acc.sub_ref(&term);
                }
            }
            g.push(acc.scale(&BigRational::new(1.into(), BigInt::from(i))));
        }
        Ok(TruncatedSeries { coeffs: g })
    }

    /// CSV rows `power,coefficient` for each nonzero coefficient, one per
    /// line, `\n` terminated.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (i, a) in self.coeffs.iter().enumerate() {
            if !a.is_zero_elem() {
                out.push_str(&format!("{i},{a}\n"));
            }
        }
        out
    }

    /// Index of the first coefficient where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        if self.order() != other.order() {
            return Some(self.order().min(other.order()) + 1);
        }
        self.coeffs.iter().zip(&other.coeffs).position(|(a, b)| a != b)
    }
}

fn int_rat(v: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl<C: Coefficient> fmt::Debug for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({a})q^{i}")?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

impl<C: Coefficient> fmt::Display for TruncatedSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

// Operator forms panic on an order mismatch; use the `try_` methods when the
// orders are not known to agree.
impl<C: Coefficient> Add for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn add(self, rhs: Self) -> TruncatedSeries<C> {
        self.try_add(rhs).expect("series orders must match")
    }
}

impl<C: Coefficient> Sub for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn sub(self, rhs: Self) -> TruncatedSeries<C> {
        self.try_sub(rhs).expect("series orders must match")
    }
}

impl<C: Coefficient> Mul for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn mul(self, rhs: Self) -> TruncatedSeries<C> {
        self.try_mul(rhs).expect("series orders must match")
    }
}

impl<C: Coefficient> Neg for &TruncatedSeries<C> {
    type Output = TruncatedSeries<C>;
    fn neg(self) -> TruncatedSeries<C> {
        TruncatedSeries { coeffs: self.coeffs.iter().map(Ring::neg_ref).collect() }
    }
}

impl<C: Coefficient> Ring for TruncatedSeries<C> {
    fn zero_like(&self) -> Self {
        Self::zero(self.order())
    }
    fn one_like(&self) -> Self {
        Self::one(self.order())
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
        self.scale_rational(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    type S = TruncatedSeries<BigRational>;

    fn s(vals: &[i64], order: usize) -> S {
        S::from_coeffs(vals.iter().map(|&v| rat(v)).collect(), order)
    }

    #[test]
    fn products() {
        assert_eq!(&s(&[1, 1], 3) * &s(&[1, -1], 3), s(&[1, 0, -1], 3));
        let f = s(&[2, -3, 0, 7], 5);
        assert_eq!(&f * &S::one(5), f);
        assert_eq!(&s(&[1; 11], 10) * &s(&[1, -1], 10), S::one(10));
    }

    #[test]
    fn order_mismatch_is_a_usage_error() {
        assert!(matches!(S::one(3).try_mul(&S::one(4)), Err(Error::Usage(_))));
        assert!(matches!(S::one(3).try_add(&S::one(4)), Err(Error::Usage(_))));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(s(&[1, -1], 4).inverse().unwrap(), s(&[1, 1, 1, 1, 1], 4));
        assert_eq!(S::one(6).inverse().unwrap(), S::one(6));
        assert!(matches!(s(&[0, 1], 4).inverse(), Err(Error::Domain(_))));
    }

    #[test]
    fn geometric_division_matches_inverse() {
        let f = s(&[3, 1, -4, 1, 5], 12);
        let g = f.div_one_minus(&rat(2), 3);
        let direct = &f * &S::monomial(rat(-2), 3, 12).add_ref(&S::one(12)).inverse().unwrap();
        assert_eq!(g, direct);
        assert_eq!(g.mul_one_minus(&rat(2), 3), f);
    }

    #[test]
    fn exp_log_examples() {
        assert_eq!(S::zero(8).exp().unwrap(), S::one(8));
        let f = s(&[0, 1, 1], 12);
        assert_eq!(f.exp().unwrap().log().unwrap(), f);
        let g = s(&[1, -1], 12);
        assert_eq!(g.log().unwrap().exp().unwrap(), g);
        assert!(matches!(S::one(4).exp(), Err(Error::Domain(_))));
        assert!(matches!(S::zero(4).log(), Err(Error::Domain(_))));
    }

    #[test]
    fn csv_skips_zeros() {
        assert_eq!(s(&[0, 1, 0, -2], 3).to_csv(), "1,1\n3,-2\n");
    }
}
