use num_bigint::BigInt;
use num_rational::BigRational;

use super::TruncatedSeries;
use crate::arith::Coefficient;
use crate::error::{Error, Result};

/// A power series in `t` through `t^order`, whose coefficients are
/// q-series sharing one q-order.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpSeries<C: Coefficient> {
    q_order: usize,
    coeffs: Vec<TruncatedSeries<C>>,
}

impl<C: Coefficient> ExpSeries<C> {
    /// `coeffs[m]` is the coefficient of `t^m`.
    pub fn new(coeffs: Vec<TruncatedSeries<C>>) -> Result<Self> {
        let q_order = coeffs
            .first()
            .ok_or_else(|| Error::Usage("an exponential series needs a t^0 coefficient".into()))?
            .order();
        if coeffs.iter().any(|c| c.order() != q_order) {
            return Err(Error::Usage("all t-coefficients must share one q-order".into()));
        }
        Ok(ExpSeries { q_order, coeffs })
    }

    /// Builds `sum_m a_m t^m / m!` from `a_0, a_1, ...`.
    pub fn from_egf(a: Vec<TruncatedSeries<C>>) -> Result<Self> {
        let mut factorial = BigInt::from(1);
        let coeffs = a
            .into_iter()
            .enumerate()
            .map(|(m, s)| {
                if m > 0 {
                    factorial *= m;
                }
                s.scale_rational(&BigRational::new(1.into(), factorial.clone()))
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn q_order(&self) -> usize {
        self.q_order
    }

    pub fn coeff(&self, m: usize) -> &TruncatedSeries<C> {
        &self.coeffs[m]
    }

    pub fn coeffs(&self) -> &[TruncatedSeries<C>] {
        &self.coeffs
    }

    /// Multiplies every t-coefficient by the q-series `s`.
    pub fn scale_by_series(&self, s: &TruncatedSeries<C>) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|c| c.try_mul(s)).collect::<Result<_>>()?;
        Ok(ExpSeries { q_order: self.q_order, coeffs })
    }

    /// `exp` in `t`; the `t^0` coefficient must vanish.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Domain("t-exp needs a zero t^0 coefficient".into()));
        }
        let mut g = Vec::with_capacity(self.coeffs.len());
        g.push(TruncatedSeries::one(self.q_order));
        for i in 1..self.coeffs.len() {
            let mut acc = TruncatedSeries::zero(self.q_order);
            for k in 1..=i {
                let term = self.coeffs[k].try_mul(&g[i - k])?;
                acc = acc.try_add(&term.scale_rational(&BigRational::from_integer(k.into())))?;
            }
            g.push(acc.scale_rational(&BigRational::new(1.into(), BigInt::from(i))));
        }
        Ok(ExpSeries { q_order: self.q_order, coeffs: g })
    }

    /// First `(t-power, q-power)` where two series differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.order() != other.order() {
            return Some((self.order().min(other.order()) + 1, 0));
        }
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .enumerate()
            .find_map(|(m, (a, b))| a.first_difference(b).map(|i| (m, i)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn exp_of_linear_term() {
        // exp(x t) with x = 2 q: coefficients (2q)^m / m!
        let q = 6;
        let x = TruncatedSeries::monomial(rat(2), 1, q);
        let zero = TruncatedSeries::zero(q);
        let f = ExpSeries::new(vec![zero.clone(), x.clone(), zero.clone(), zero]).unwrap();
        let e = f.exp().unwrap();
        let want = ExpSeries::from_egf(vec![
            TruncatedSeries::one(q),
            x.clone(),
            &x * &x,
            &(&x * &x) * &x,
        ])
        .unwrap();
        assert_eq!(e, want);
    }

    #[test]
    fn mixed_orders_rejected() {
        let r = ExpSeries::new(vec![TruncatedSeries::<BigRational>::one(3), TruncatedSeries::one(4)]);
        assert!(matches!(r, Err(Error::Usage(_))));
    }
}
