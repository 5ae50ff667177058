use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{BinomialTable, Ring};
use crate::error::{Error, Result};
use crate::partition::enumerate_partitions;

/// Largest `m` accepted by [`bell_polynomial`] unless overridden.
pub const DEFAULT_BELL_CAP: usize = 10;

/// Complete Bell polynomial `Y_m(u_1, ..., u_m)` via
/// `Y_{m+1} = sum_k binom(m, k) Y_{m-k} u_{k+1}`, `Y_0 = 1`.
///
/// `u[0]` holds `u_1`. `one` supplies the ring unit (needed when `m = 0`).
pub fn bell_polynomial<R: Ring>(m: usize, u: &[R], one: &R) -> Result<R> {
    bell_polynomial_with_cap(m, u, one, DEFAULT_BELL_CAP)
}

pub fn bell_polynomial_with_cap<R: Ring>(m: usize, u: &[R], one: &R, cap: usize) -> Result<R> {
    if m > cap {
        return Err(Error::Range(format!("Bell polynomial order {m} exceeds cap {cap}")));
    }
    if u.len() < m {
        return Err(Error::Usage(format!("Y_{m} needs {m} arguments, got {}", u.len())));
    }
    let binom = BinomialTable::new(m.max(1));
    let mut ys: Vec<R> = Vec::with_capacity(m + 1);
    ys.push(one.one_like());
    for next in 1..=m {
        let prev = next - 1;
        let mut acc = one.zero_like();
        for k in 0..=prev {
            let b = BigRational::from_integer(binom.get(prev, k));
            acc = acc.add_ref(&ys[prev - k].mul_ref(&u[k]).scale(&b));
        }
        ys.push(acc);
    }
    Ok(ys.swap_remove(m))
}

/// Complete Bell polynomial straight from its definition: a sum over
/// `k_1 + 2 k_2 + ... + m k_m = m` of
/// `m! / (k_1! ... k_m!) * prod (u_i / i!)^{k_i}`.
pub fn bell_partition_sum<R: Ring>(m: usize, u: &[R], one: &R) -> Result<R> {
    if u.len() < m {
        return Err(Error::Usage(format!("Y_{m} needs {m} arguments, got {}", u.len())));
    }
    let factorial = |k: usize| (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i));
    let m_fact = factorial(m);
    let mut total = one.zero_like();
    for p in enumerate_partitions(m as u32)? {
        // multiplicity of each part size
        let mut mult = vec![0usize; m + 1];
        for &part in p.parts() {
            mult[part as usize] += 1;
        }
        let mut denom = BigInt::one();
        let mut term = one.one_like();
        for (i, &k) in mult.iter().enumerate().skip(1) {
            if k == 0 {
                continue;
            }
            denom *= factorial(k) * num_traits::pow(factorial(i), k);
            for _ in 0..k {
                term = term.mul_ref(&u[i - 1]);
            }
        }
        total = total.add_ref(&term.scale(&BigRational::new(m_fact.clone(), denom)));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, CPolynomial};

    #[test]
    fn low_orders() {
        let one = rat(1);
        let u = [rat(3), rat(5)];
        assert_eq!(bell_polynomial(0, &u, &one).unwrap(), rat(1));
        assert_eq!(bell_polynomial(1, &u, &one).unwrap(), rat(3));
        assert_eq!(bell_polynomial(2, &u, &one).unwrap(), rat(9 + 5));
    }

    #[test]
    fn cap_is_enforced() {
        let u = vec![rat(1); 12];
        assert!(matches!(bell_polynomial(11, &u, &rat(1)), Err(Error::Range(_))));
        // all-ones arguments give the Bell numbers
        assert_eq!(bell_polynomial_with_cap(11, &u, &rat(1), 12).unwrap(), rat(678570));
    }

    #[test]
    fn recurrence_matches_definition_symbolically() {
        // u_i = c^{9^(i-1)}: every monomial u_1^k_1 ... u_8^k_8 with k_i <= 8
        // lands on its own exponent, so equality here is equality of the
        // multivariate polynomials.
        let u: Vec<CPolynomial> =
            (0..8).map(|i| CPolynomial::monomial(rat(1), 9u32.pow(i))).collect();
        let one = CPolynomial::one();
        for m in 0..=8 {
            assert_eq!(
                bell_polynomial(m, &u, &one).unwrap(),
                bell_partition_sum(m, &u, &one).unwrap(),
                "m = {m}"
            );
        }
    }
}
