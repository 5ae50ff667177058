use num_bigint::BigInt;
use num_rational::BigRational;

use super::{ring_pow, TruncatedSeries};
use crate::arith::{divisors, BinomialTable, Coefficient};
use crate::error::{Error, Result};

/// Default q-order.
pub const DEFAULT_ORDER: usize = 30;

fn int<C: Coefficient>(v: i64) -> C {
    C::from_int(v)
}

fn big<C: Coefficient>(v: BigInt) -> C {
    C::from_rational(BigRational::from_integer(v))
}

/// `(xq)_n = prod_{k=1}^{n} (1 - x q^k)`.
pub fn pochhammer_finite<C: Coefficient>(x: &C, n: usize, order: usize) -> TruncatedSeries<C> {
    (1..=n.min(order)).fold(TruncatedSeries::one(order), |acc, k| acc.mul_one_minus(x, k))
}

/// `(xq)_inf`; factors with `k > order` cannot reach the tracked
/// coefficients and are skipped.
pub fn pochhammer_infinite<C: Coefficient>(x: &C, order: usize) -> TruncatedSeries<C> {
    pochhammer_finite(x, order, order)
}

/// `(q^start)_inf = prod_{k >= start} (1 - q^k)`, `start >= 1`.
pub fn pochhammer_shifted_infinite<C: Coefficient>(start: usize, order: usize) -> TruncatedSeries<C> {
    assert!(start >= 1, "shifted product starts at q^1 or later");
    let one: C = int(1);
    (start..=order).fold(TruncatedSeries::one(order), |acc, k| acc.mul_one_minus(&one, k))
}

/// `tails[n] = (q^{n+1})_inf` for `n = 0..=order`, built from the top down.
fn shifted_tails<C: Coefficient>(order: usize) -> Vec<TruncatedSeries<C>> {
    let one: C = int(1);
    let mut tails = vec![TruncatedSeries::one(order); order + 1];
    for n in (0..order).rev() {
        tails[n] = tails[n + 1].mul_one_minus(&one, n + 1);
    }
    tails
}

/// `A(c, q) = (q)_inf / (cq)_inf` as a quotient of the two products.
pub fn series_a_quotient<C: Coefficient>(c: &C, order: usize) -> Result<TruncatedSeries<C>> {
    let numerator = pochhammer_infinite(&int::<C>(1), order);
    let denominator = pochhammer_infinite(c, order);
    numerator.try_mul(&denominator.inverse()?)
}

/// `A(c, q) = sum_{n >= 0} c^n q^n (q^{n+1})_inf` (Euler's expansion).
pub fn series_a_euler<C: Coefficient>(c: &C, order: usize) -> TruncatedSeries<C> {
    let tails = shifted_tails::<C>(order);
    let mut out = TruncatedSeries::zero(order);
    let mut c_pow: C = int(1);
    for (n, tail) in tails.iter().enumerate() {
        out = &out + &tail.shift(n).scale_by(&c_pow);
        c_pow = c_pow.mul_ref(c);
    }
    out
}

/// `A(c, q)`, built both ways; a disagreement is a consistency fault.
pub fn series_a<C: Coefficient>(c: &C, order: usize) -> Result<TruncatedSeries<C>> {
    let quotient = series_a_quotient(c, order)?;
    let euler = series_a_euler(c, order);
    if let Some(i) = quotient.first_difference(&euler) {
        return Err(Error::Consistency(format!(
            "A(c,q) quotient and Euler forms differ at q^{i}: {} vs {}",
            quotient.coeff(i),
            euler.coeff(i)
        )));
    }
    Ok(quotient)
}

/// `M_{m,c} = sum_{n >= 1} n^m c^n q^n (q^{n+1})_inf`.
pub fn series_m<C: Coefficient>(m: u32, c: &C, order: usize) -> TruncatedSeries<C> {
    let tails = shifted_tails::<C>(order);
    let mut out = TruncatedSeries::zero(order);
    let mut c_pow = c.clone();
    for (n, tail) in tails.iter().enumerate().skip(1) {
        let weight = c_pow.mul_ref(&big(num_traits::pow(BigInt::from(n), m as usize)));
        out = &out + &tail.shift(n).scale_by(&weight);
        c_pow = c_pow.mul_ref(c);
    }
    out
}

fn check_k_index(m: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::Usage("K_{m,c} is defined for m >= 1".into()));
    }
    Ok(())
}

/// `K_{m,c} = sum_n sigma_{m-1,c}(n) q^n` from divisor sums.
pub fn series_k_divisor<C: Coefficient>(m: u32, c: &C, order: usize) -> Result<TruncatedSeries<C>> {
    check_k_index(m)?;
    let c_pows: Vec<C> = (0..=order).map(|d| ring_pow(c, d)).collect();
    let mut coeffs = vec![int::<C>(0)];
    for n in 1..=order {
        let mut acc = int::<C>(0);
        for d in divisors(n as u64) {
            let d = d as usize;
            let w = big::<C>(num_traits::pow(BigInt::from(d), (m - 1) as usize));
            acc = acc.add_ref(&c_pows[d].mul_ref(&w));
        }
        coeffs.push(acc);
    }
    Ok(TruncatedSeries::from_coeffs(coeffs, order))
}

/// `K_{m,c} = sum_j c^j j^{m-1} q^j / (1 - q^j)` as a Lambert series.
pub fn series_k_lambert<C: Coefficient>(m: u32, c: &C, order: usize) -> Result<TruncatedSeries<C>> {
    check_k_index(m)?;
    let one: C = int(1);
    let mut out = TruncatedSeries::zero(order);
    let mut c_pow = c.clone();
    for j in 1..=order {
        let weight = c_pow.mul_ref(&big(num_traits::pow(BigInt::from(j), (m - 1) as usize)));
        let term = TruncatedSeries::monomial(weight, j, order).div_one_minus(&one, j);
        out = &out + &term;
        c_pow = c_pow.mul_ref(c);
    }
    Ok(out)
}

/// `K_{m,c}`, built from divisor sums and as a Lambert series; a
/// disagreement is a consistency fault.
pub fn series_k<C: Coefficient>(m: u32, c: &C, order: usize) -> Result<TruncatedSeries<C>> {
    let by_divisors = series_k_divisor(m, c, order)?;
    let lambert = series_k_lambert(m, c, order)?;
    if let Some(i) = by_divisors.first_difference(&lambert) {
        return Err(Error::Consistency(format!(
            "K_{{{m},c}} divisor and Lambert forms differ at q^{i}: {} vs {}",
            by_divisors.coeff(i),
            lambert.coeff(i)
        )));
    }
    Ok(by_divisors)
}

/// Both sides of
/// `sum (-1)^{n-1} c^n q^{n(n+1)/2} / ((1-q^n)(cq)_n) = sum c^n q^n / (1-q^n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Entry4Sides<C: Coefficient> {
    pub lhs: TruncatedSeries<C>,
    pub rhs: TruncatedSeries<C>,
}

pub fn series_entry4<C: Coefficient>(c: &C, order: usize) -> Entry4Sides<C> {
    let one: C = int(1);
    let mut lhs = TruncatedSeries::zero(order);
    // running 1/(cq)_n
    let mut inv_cq = TruncatedSeries::one(order);
    let mut c_pow = c.clone();
    for n in 1.. {
        let exp = n * (n + 1) / 2;
        if exp > order {
            break;
        }
        inv_cq = inv_cq.div_one_minus(c, n);
        let sign: C = int(if n % 2 == 1 { 1 } else { -1 });
        let term = inv_cq.shift(exp).scale_by(&c_pow.mul_ref(&sign)).div_one_minus(&one, n);
        lhs = &lhs + &term;
        c_pow = c_pow.mul_ref(c);
    }
    let mut rhs = TruncatedSeries::zero(order);
    let mut c_pow = c.clone();
    for n in 1..=order {
        rhs = &rhs + &TruncatedSeries::monomial(c_pow.clone(), n, order).div_one_minus(&one, n);
        c_pow = c_pow.mul_ref(c);
    }
    Entry4Sides { lhs, rhs }
}

/// The three expressions of the binomial k-fold identity:
///
/// - `binomial_sum = sum_{n >= k} binom(n, k) q^n (q^{n+1})_inf`
/// - `alternating = q^{-binom(k,2)} sum_{n >= 1} (-1)^{n-1} q^{binom(n+k,2)} / ((1-q^n)^k (q)_n)`
/// - `nested = sum_{j_1 >= j_2 >= ... >= j_k >= 1} prod_i q^{j_i} / (1 - q^{j_i})`
#[derive(Clone, Debug, PartialEq)]
pub struct DilcherForms<C: Coefficient> {
    pub binomial_sum: TruncatedSeries<C>,
    pub alternating: TruncatedSeries<C>,
    pub nested: TruncatedSeries<C>,
}

pub const DILCHER_MAX_K: usize = 6;

pub fn series_dilcher_binomial<C: Coefficient>(k: usize, order: usize) -> Result<DilcherForms<C>> {
    if !(1..=DILCHER_MAX_K).contains(&k) {
        return Err(Error::Range(format!("k = {k} outside 1..={DILCHER_MAX_K}")));
    }
    if order < k {
        return Err(Error::Range(format!("q-order {order} below k = {k}")));
    }
    let one: C = int(1);
    let binom = BinomialTable::new(order + k);

    let tails = shifted_tails::<C>(order);
    let mut binomial_sum = TruncatedSeries::zero(order);
    for (n, tail) in tails.iter().enumerate().skip(k) {
        binomial_sum = &binomial_sum + &tail.shift(n).scale_by(&big(binom.get(n, k)));
    }

    // (n+k choose 2) - (k choose 2) = n (n + 2k - 1) / 2, never negative.
    let mut alternating = TruncatedSeries::zero(order);
    let mut inv_q_n = TruncatedSeries::one(order);
    for n in 1..=order {
        let exp = n * (n + 2 * k - 1) / 2;
        if exp > order {
            break;
        }
        inv_q_n = inv_q_n.div_one_minus(&one, n);
        let sign: C = int(if n % 2 == 1 { 1 } else { -1 });
        let mut term = inv_q_n.shift(exp).scale_by(&sign);
        for _ in 0..k {
            term = term.div_one_minus(&one, n);
        }
        alternating = &alternating + &term;
    }

    // lambert[j] = q^j / (1 - q^j); level r holds the r-fold nested sums
    // indexed by their outermost j.
    let lambert: Vec<TruncatedSeries<C>> = (0..=order)
        .map(|j| {
            if j == 0 {
                TruncatedSeries::zero(order)
            } else {
                TruncatedSeries::monomial(one.clone(), j, order).div_one_minus(&one, j)
            }
        })
        .collect();
    let mut level = lambert.clone();
    for _ in 1..k {
        let mut prefix = TruncatedSeries::zero(order);
        let mut next = Vec::with_capacity(order + 1);
        for j in 0..=order {
            prefix = &prefix + &level[j];
            next.push(&lambert[j] * &prefix);
        }
        level = next;
    }
    let nested = level.iter().fold(TruncatedSeries::zero(order), |acc, s| &acc + s);

    Ok(DilcherForms { binomial_sum, alternating, nested })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{divisor_count, rat, CPolynomial};

    type S = TruncatedSeries<BigRational>;

    fn ints(s: &S) -> Vec<i64> {
        s.coeffs().iter().map(|v| v.to_integer().try_into().unwrap()).collect()
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer_finite(&rat(1), 0, 5), S::one(5));
        assert_eq!(ints(&pochhammer_finite(&rat(1), 2, 4)), [1, -1, -1, 1, 0]);
        assert_eq!(ints(&pochhammer_infinite(&rat(1), 7)), [1, -1, -1, 0, 0, 1, 0, 1]);
        assert_eq!(pochhammer_infinite(&rat(0), 7), S::one(7));
        assert_eq!(pochhammer_shifted_infinite::<BigRational>(9, 8), S::one(8));
        let c = CPolynomial::c();
        let p = pochhammer_finite(&c, 1, 3);
        assert_eq!(p.coeff(1), &-&c);
    }

    #[test]
    fn a_degenerate_weights() {
        assert_eq!(series_a(&rat(1), 12).unwrap(), S::one(12));
        assert_eq!(series_a(&rat(0), 12).unwrap(), pochhammer_infinite(&rat(1), 12));
    }

    #[test]
    fn m_at_unit_weight() {
        let d: Vec<i64> = (1..=6).map(|n| divisor_count(n) as i64).collect();
        assert_eq!(ints(&series_m(1, &rat(1), 6))[1..], d[..]);
        // m = 0 telescopes to 1 - (q)_inf
        let m0 = series_m(0, &rat(1), 15);
        assert_eq!(m0, &S::one(15) - &pochhammer_infinite(&rat(1), 15));
    }

    #[test]
    fn k_examples() {
        assert_eq!(ints(&series_k(1, &rat(1), 5).unwrap()), [0, 1, 2, 2, 3, 2]);
        assert_eq!(ints(&series_k(2, &rat(1), 4).unwrap()), [0, 1, 3, 4, 7]);
        let k1 = series_k(1, &CPolynomial::c(), 4).unwrap();
        assert_eq!(k1.coeff(4).to_string(), "c + c^2 + c^4");
        assert!(matches!(series_k(0, &rat(1), 4), Err(Error::Usage(_))));
    }

    #[test]
    fn entry4_examples() {
        let sides = series_entry4(&rat(1), 20);
        assert_eq!(sides.lhs, sides.rhs);
        let d: Vec<i64> = (1..=20).map(|n| divisor_count(n) as i64).collect();
        assert_eq!(ints(&sides.lhs)[1..], d[..]);
        let zero = series_entry4(&rat(0), 10);
        assert!(zero.lhs.is_zero() && zero.rhs.is_zero());
    }

    #[test]
    fn dilcher_k1_is_divisor_count() {
        let f = series_dilcher_binomial::<BigRational>(1, 10).unwrap();
        let d: Vec<i64> = (1..=10).map(|n| divisor_count(n) as i64).collect();
        for s in [&f.binomial_sum, &f.alternating, &f.nested] {
            assert_eq!(ints(s)[1..], d[..]);
        }
        assert!(matches!(series_dilcher_binomial::<BigRational>(7, 10), Err(Error::Range(_))));
        assert!(matches!(series_dilcher_binomial::<BigRational>(3, 2), Err(Error::Range(_))));
    }
}
