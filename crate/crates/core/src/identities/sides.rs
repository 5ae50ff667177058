//! Left and right sides of the partition-sum identities.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

use super::profile::{distinct_profile, partition_profile, DistinctProfile, PartitionProfile};
use crate::arith::{
    divisor_count, divisors, power_or_zero, sigma_int, sigma_zc_exact, BinomialTable, CPolynomial,
    WeightParams,
};
use crate::error::{Error, Result};
use crate::partition::{count_exact_part_sizes, DEFAULT_ENUMERATION_LIMIT};

/// Both sides of one identity instance.
#[derive(Clone, Debug, PartialEq)]
pub enum Sides {
    Exact { lhs: CPolynomial, rhs: CPolynomial },
    /// `magnitude` is the sum of absolute values of every term on both
    /// sides.
    Numeric { lhs: Complex64, rhs: Complex64, magnitude: f64 },
}

impl Sides {
    /// Exact sides must be identical; numeric sides must satisfy
    /// `|lhs - rhs| <= tolerance * max(1, |rhs|)`.
    pub fn agrees(&self, tolerance: f64) -> bool {
        match self {
            Sides::Exact { lhs, rhs } => lhs == rhs,
            Sides::Numeric { lhs, rhs, .. } => (lhs - rhs).norm() <= tolerance * rhs.norm().max(1.0),
        }
    }

    /// Ratio of summed term magnitudes to `max(1, |rhs|)`.
    pub fn condition(&self) -> Option<f64> {
        match self {
            Sides::Exact { .. } => None,
            Sides::Numeric { rhs, magnitude, .. } => Some(magnitude / rhs.norm().max(1.0)),
        }
    }

    pub fn render(&self) -> (String, String) {
        match self {
            Sides::Exact { lhs, rhs } => (lhs.to_string(), rhs.to_string()),
            Sides::Numeric { lhs, rhs, .. } => (render_complex(*lhs), render_complex(*rhs)),
        }
    }
}

pub(crate) fn render_complex(z: Complex64) -> String {
    format!("{:.17e}{:+.17e}i", z.re, z.im)
}

/// `base^k` with `0^0 = 1`.
fn ipow(base: u32, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), k as usize)
}

/// Dense integer coefficients of a polynomial in `c`.
struct DenseAcc(Vec<BigInt>);

impl DenseAcc {
    fn new(degree: u32) -> Self {
        DenseAcc(vec![BigInt::zero(); degree as usize + 1])
    }

    fn add(&mut self, exp: u32, value: BigInt) {
        self.0[exp as usize] += value;
    }

    fn finish(self) -> CPolynomial {
        CPolynomial::from_dense_integers(self.0)
    }
}

/// Neumaier-compensated complex sum that also tracks the summed magnitude.
#[derive(Default)]
struct NumAcc {
    sum: Complex64,
    carry: Complex64,
    magnitude: f64,
}

impl NumAcc {
    fn add(&mut self, x: Complex64) {
        self.magnitude += x.norm();
        self.sum.re = neumaier(self.sum.re, x.re, &mut self.carry.re);
        self.sum.im = neumaier(self.sum.im, x.im, &mut self.carry.im);
    }

    fn value(&self) -> Complex64 {
        self.sum + self.carry
    }
}

fn neumaier(sum: f64, x: f64, carry: &mut f64) -> f64 {
    let t = sum + x;
    if sum.abs() >= x.abs() {
        *carry += (sum - t) + x;
    } else {
        *carry += (x - t) + sum;
    }
    t
}

fn max_distinct_sizes(pp: &PartitionProfile) -> usize {
    pp.counts.keys().map(|&(_, nu)| nu as usize).max().unwrap_or(0)
}

// ---------------------------------------------------------------------------
// Weighted generalization with sigma_{z,c}(n) on the right.
// ---------------------------------------------------------------------------

pub(crate) fn thm21_exact(dp: &DistinctProfile, z: u32) -> Sides {
    let mut lhs = DenseAcc::new(dp.n);
    for (&(s, l), &w) in &dp.signed {
        for j in 1..=s {
            let base = l - s + j;
            lhs.add(base, ipow(base, z) * w);
        }
    }
    Sides::Exact { lhs: lhs.finish(), rhs: sigma_zc_exact(z, u64::from(dp.n)) }
}

pub(crate) fn thm21_numeric(dp: &DistinctProfile, z: Complex64, c: Complex64) -> Sides {
    let mut lhs = NumAcc::default();
    for (&(s, l), &w) in &dp.signed {
        for j in 1..=s {
            let base = l - s + j;
            lhs.add(power_or_zero(u64::from(base), z) * c.powu(base) * w as f64);
        }
    }
    let mut rhs = NumAcc::default();
    for d in divisors(u64::from(dp.n)) {
        rhs.add(power_or_zero(d, z) * c.powu(d as u32));
    }
    Sides::Numeric { lhs: lhs.value(), rhs: rhs.value(), magnitude: lhs.magnitude + rhs.magnitude }
}

/// Both sides of
/// `sum_{D(n)} (-1)^{#-1} sum_{j=1}^{s} (l-s+j)^z c^{l-s+j} = sigma_{z,c}(n)`.
pub fn lhs_rhs_thm21(n: u32, w: &WeightParams) -> Result<Sides> {
    let dp = distinct_profile(n, DEFAULT_ENUMERATION_LIMIT)?;
    Ok(match *w {
        WeightParams::Exact(e) => thm21_exact(&dp, e.z),
        WeightParams::Numeric(v) => thm21_numeric(&dp, v.z, v.c),
    })
}

// ---------------------------------------------------------------------------
// Smallest-part powers against binomial sums over all partitions.
// ---------------------------------------------------------------------------

pub(crate) fn thm23_exact(dp: &DistinctProfile, pp: &PartitionProfile, k: u32) -> Sides {
    let mut lhs = DenseAcc::new(dp.n);
    for (&(s, _), &w) in &dp.signed {
        lhs.add(s, ipow(s, k) * w);
    }
    let binom = BinomialTable::new(max_distinct_sizes(pp));
    let mut rhs = DenseAcc::new(pp.n);
    for (&(l, nu), &count) in &pp.counts {
        for j in 0..=nu.min(l - 1) {
            let term = binom.get(nu as usize, j as usize) * ipow(l - j, k) * count;
            rhs.add(l - j, if j % 2 == 0 { term } else { -term });
        }
    }
    Sides::Exact { lhs: lhs.finish(), rhs: rhs.finish() }
}

pub(crate) fn thm23_numeric(dp: &DistinctProfile, pp: &PartitionProfile, k: Complex64, c: Complex64) -> Sides {
    let mut lhs = NumAcc::default();
    for (&(s, _), &w) in &dp.signed {
        lhs.add(power_or_zero(u64::from(s), k) * c.powu(s) * w as f64);
    }
    let binom = BinomialTable::new(max_distinct_sizes(pp));
    let mut rhs = NumAcc::default();
    for (&(l, nu), &count) in &pp.counts {
        for j in 0..=nu.min(l - 1) {
            let b = bigint_to_f64(&binom.get(nu as usize, j as usize)) * count as f64;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            rhs.add(power_or_zero(u64::from(l - j), k) * c.powu(l - j) * (sign * b));
        }
    }
    Sides::Numeric { lhs: lhs.value(), rhs: rhs.value(), magnitude: lhs.magnitude + rhs.magnitude }
}

fn bigint_to_f64(v: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(v).unwrap_or(f64::NAN)
}

/// Both sides of
/// `sum_{D(n)} (-1)^{#-1} s^k c^s = sum_{P(n)} sum_{j=0}^{nu} (-1)^j binom(nu,j) (l-j)^k c^{l-j}`,
/// with `w.z` as the exponent `k`. A `j = l` term (only possible when
/// `nu = l`) is the image of a constant under `(c d/dc)^k` and is dropped
/// for every `k`, including `k = 0`; keeping it as `0^0 c^0 = 1` breaks
/// the identity already at `n = 1`.
pub fn lhs_rhs_thm23(n: u32, w: &WeightParams) -> Result<Sides> {
    let dp = distinct_profile(n, DEFAULT_ENUMERATION_LIMIT)?;
    let pp = partition_profile(n, DEFAULT_ENUMERATION_LIMIT)?;
    Ok(match *w {
        WeightParams::Exact(e) => thm23_exact(&dp, &pp, e.z),
        WeightParams::Numeric(v) => thm23_numeric(&dp, &pp, v.z, v.c),
    })
}

// ---------------------------------------------------------------------------
// sum_{j <= s} j^k c^j weights.
// ---------------------------------------------------------------------------

pub(crate) fn thm26_exact(dp: &DistinctProfile, pp: &PartitionProfile, k: u32) -> Sides {
    let mut lhs = DenseAcc::new(dp.n);
    for (&(s, _), &w) in &dp.signed {
        for j in 1..=s {
            lhs.add(j, ipow(j, k) * w);
        }
    }
    let binom = BinomialTable::new(max_distinct_sizes(pp));
    let mut rhs = DenseAcc::new(pp.n);
    for (&(l, nu), &count) in &pp.counts {
        if nu < 2 {
            continue;
        }
        for j in 0..nu {
            let term = binom.get(nu as usize - 1, j as usize) * ipow(l - j, k) * count;
            rhs.add(l - j, if j % 2 == 0 { term } else { -term });
        }
    }
    let rhs = &rhs.finish() + &sigma_zc_exact(k, u64::from(pp.n));
    Sides::Exact { lhs: lhs.finish(), rhs }
}

pub(crate) fn thm26_numeric(dp: &DistinctProfile, pp: &PartitionProfile, k: Complex64, c: Complex64) -> Sides {
    let mut lhs = NumAcc::default();
    for (&(s, _), &w) in &dp.signed {
        for j in 1..=s {
            lhs.add(power_or_zero(u64::from(j), k) * c.powu(j) * w as f64);
        }
    }
    let binom = BinomialTable::new(max_distinct_sizes(pp));
    let mut rhs = NumAcc::default();
    for (&(l, nu), &count) in &pp.counts {
        if nu < 2 {
            continue;
        }
        for j in 0..nu {
            let b = bigint_to_f64(&binom.get(nu as usize - 1, j as usize)) * count as f64;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            rhs.add(power_or_zero(u64::from(l - j), k) * c.powu(l - j) * (sign * b));
        }
    }
    for d in divisors(u64::from(pp.n)) {
        rhs.add(power_or_zero(d, k) * c.powu(d as u32));
    }
    Sides::Numeric { lhs: lhs.value(), rhs: rhs.value(), magnitude: lhs.magnitude + rhs.magnitude }
}

/// Both sides of
/// `sum_{D(n)} (-1)^{#-1} sum_{j=1}^{s} j^k c^j
///   = sum_{P(n), nu >= 2} sum_{j<nu} (-1)^j binom(nu-1,j) (l-j)^k c^{l-j} + sigma_{k,c}(n)`.
pub fn lhs_rhs_thm26(n: u32, w: &WeightParams) -> Result<Sides> {
    let dp = distinct_profile(n, DEFAULT_ENUMERATION_LIMIT)?;
    let pp = partition_profile(n, DEFAULT_ENUMERATION_LIMIT)?;
    Ok(match *w {
        WeightParams::Exact(e) => thm26_exact(&dp, &pp, e.z),
        WeightParams::Numeric(v) => thm26_numeric(&dp, &pp, v.z, v.c),
    })
}

// ---------------------------------------------------------------------------
// Integer identities.
// ---------------------------------------------------------------------------

/// `sum_{D(n)} (-1)^{#-1} s(pi)` and `d(n)`.
pub(crate) fn bs_basic(dp: &DistinctProfile) -> (BigInt, BigInt) {
    let lhs: i64 = dp.signed.iter().map(|(&(s, _), &w)| i64::from(s) * w).sum();
    (BigInt::from(lhs), BigInt::from(divisor_count(u64::from(dp.n))))
}

/// `sum_{D(n)} (-1)^{#-1} sum_{j=1}^{s} (l-s+j)^z` and `sigma_z(n)`.
pub(crate) fn bs_int(dp: &DistinctProfile, z: u32) -> (BigInt, BigInt) {
    let mut lhs = BigInt::zero();
    for (&(s, l), &w) in &dp.signed {
        for j in 1..=s {
            lhs += ipow(l - s + j, z) * w;
        }
    }
    (lhs, BigInt::from(sigma_int(z, u64::from(dp.n))))
}

/// `c = 1` form of the smallest-part power identity: integer sides.
pub(crate) fn cor24(dp: &DistinctProfile, pp: &PartitionProfile, k: u32) -> (BigInt, BigInt) {
    let lhs: BigInt = dp.signed.iter().map(|(&(s, _), &w)| ipow(s, k) * w).sum();
    let binom = BinomialTable::new(max_distinct_sizes(pp));
    let mut rhs = BigInt::zero();
    for (&(l, nu), &count) in &pp.counts {
        for j in 0..=nu.min(l - 1) {
            let term = binom.get(nu as usize, j as usize) * ipow(l - j, k) * count;
            if j % 2 == 0 {
                rhs += term;
            } else {
                rhs -= term;
            }
        }
    }
    (lhs, rhs)
}

/// The `k = 1` reduction chain: the right side equals
/// `-sum_{P(n)} sum_j (-1)^j binom(nu,j) j`, which counts the one-size
/// partitions of `n`, which number `d(n)`. Returns the three values in
/// that order.
pub(crate) fn cor24_reduction(pp: &PartitionProfile) -> [BigInt; 3] {
    let binom = BinomialTable::new(max_distinct_sizes(pp));
    let mut neg_j_sum = BigInt::zero();
    let mut one_size = BigInt::zero();
    for (&(_, nu), &count) in &pp.counts {
        for j in 0..=nu {
            let term = binom.get(nu as usize, j as usize) * j * count;
            if j % 2 == 0 {
                neg_j_sum -= term;
            } else {
                neg_j_sum += term;
            }
        }
        if nu == 1 {
            one_size += count;
        }
    }
    [neg_j_sum, one_size, BigInt::from(divisor_count(u64::from(pp.n)))]
}

pub(crate) fn cor27_from_profile(dp: &DistinctProfile) -> (BigInt, BigInt) {
    let lhs = BigInt::from(count_exact_part_sizes(dp.n, 2));
    let rhs: i64 = dp.signed.iter().map(|(&(s, l), &w)| -w * i64::from(s) * i64::from(l - s)).sum();
    (lhs, BigInt::from(rhs))
}

/// `p^(2)(n)` and `sum_{D(n)} (-1)^{#} s (l - s)`.
pub fn check_cor27(n: u32) -> Result<(BigInt, BigInt)> {
    Ok(cor27_from_profile(&distinct_profile(n, DEFAULT_ENUMERATION_LIMIT)?))
}

/// `p^(2)(n)` (by counting, no enumeration) and
/// `(sum_{j=1}^{n-1} d(j) d(n-j) + d(n) - sigma(n)) / 2`.
pub fn check_cor25(n: u32) -> Result<(BigInt, BigInt)> {
    if n == 0 {
        return Err(Error::Usage("n must be positive".into()));
    }
    let n64 = u64::from(n);
    let mut numerator: BigInt = (1..n64)
        .map(|j| BigInt::from(divisor_count(j) * divisor_count(n64 - j)))
        .sum();
    numerator += divisor_count(n64);
    numerator -= BigInt::from(sigma_int(1, n64));
    let two = BigInt::from(2);
    if (&numerator % &two) != BigInt::zero() {
        return Err(Error::AlgorithmFault(format!("n={n}: right side {numerator}/2 is not an integer")));
    }
    Ok((BigInt::from(count_exact_part_sizes(n, 2)), numerator / two))
}

// ---------------------------------------------------------------------------
// Andrews–Garvan–Liang partition identity.
// ---------------------------------------------------------------------------

pub(crate) fn agl_from_profiles(dp: &DistinctProfile, pp: &PartitionProfile, scaled: bool) -> Sides {
    let mut lhs = DenseAcc::new(dp.n);
    for (&(s, _), &w) in &dp.signed {
        if scaled {
            lhs.add(s, BigInt::from(w));
            lhs.add(0, BigInt::from(-w));
        } else {
            for e in 0..s {
                lhs.add(e, BigInt::from(w));
            }
        }
    }
    let c_minus_one = &CPolynomial::c() - &CPolynomial::one();
    let mut rhs = CPolynomial::zero();
    for (&(l, nu), &count) in &pp.counts {
        let power = if scaled { nu } else { nu - 1 };
        let term = c_minus_one.pow(power).shift(l - nu);
        rhs += &term.scale(&num_rational::BigRational::from_integer(count.into()));
    }
    Sides::Exact { lhs: lhs.finish(), rhs }
}

/// Both sides of
/// `sum_{D(n)} (-1)^{#-1} (1 + c + ... + c^{s-1}) = sum_{P(n)} c^{l-nu} (c-1)^{nu-1}`,
/// or of its multiple by `c - 1` when `scaled`.
pub fn check_agl(n: u32, scaled: bool) -> Result<(CPolynomial, CPolynomial)> {
    let dp = distinct_profile(n, DEFAULT_ENUMERATION_LIMIT)?;
    let pp = partition_profile(n, DEFAULT_ENUMERATION_LIMIT)?;
    match agl_from_profiles(&dp, &pp, scaled) {
        Sides::Exact { lhs, rhs } => Ok((lhs, rhs)),
        Sides::Numeric { .. } => unreachable!(),
    }
}

// ---------------------------------------------------------------------------
// Convolution formulas for [q^n] M_m, m <= 4.
// ---------------------------------------------------------------------------

fn convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let len = a.len();
    let mut out = vec![BigInt::zero(); len];
    for i in 1..len {
        for j in 1..len - i {
            out[i + j] += &a[i] * &b[j];
        }
    }
    out
}

/// `[C_1(n), C_2(n), C_3(n), C_4(n)]` for `n = 0..=n_max` from divisor
/// function convolutions (index 0 is all zeros).
pub fn dilcher_convolutions(n_max: u32) -> Vec<[BigInt; 4]> {
    let len = n_max as usize + 1;
    let seq = |z: u32| -> Vec<BigInt> {
        (0..len)
            .map(|n| if n == 0 { BigInt::zero() } else { BigInt::from(sigma_int(z, n as u64)) })
            .collect()
    };
    let (d, s1, s2, s3) = (seq(0), seq(1), seq(2), seq(3));
    let dd = convolve(&d, &d);
    let ddd = convolve(&dd, &d);
    let dddd = convolve(&ddd, &d);
    let d_s1 = convolve(&d, &s1);
    let s1_s1 = convolve(&s1, &s1);
    let d_s2 = convolve(&d, &s2);
    let dd_s1 = convolve(&dd, &s1);
    (0..len)
        .map(|n| {
            let c1 = d[n].clone();
            let c2 = &s1[n] + &dd[n];
            let c3 = &s2[n] + &d_s1[n] * 3 + &ddd[n];
            let c4 = &s3[n] + &s1_s1[n] * 3 + &d_s2[n] * 4 + &dd_s1[n] * 6 + &dddd[n];
            [c1, c2, c3, c4]
        })
        .collect()
}

/// `C_m(n) = sum_{D(n)} (-1)^{#-1} s^m` from the distinct-part profile.
pub(crate) fn dilcher_from_profile(dp: &DistinctProfile, m: u32) -> BigInt {
    dp.signed.iter().map(|(&(s, _), &w)| ipow(s, m) * w).sum()
}

/// `sum_{D(n)} (-1)^{#-1} s^m c^s` as a polynomial.
pub(crate) fn eq113_from_profile(dp: &DistinctProfile, m: u32) -> CPolynomial {
    let mut acc = DenseAcc::new(dp.n);
    for (&(s, _), &w) in &dp.signed {
        acc.add(s, ipow(s, m) * w);
    }
    acc.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn exact(sides: Sides) -> (String, String) {
        sides.render()
    }

    #[test]
    fn thm21_examples() {
        let (l, r) = exact(lhs_rhs_thm21(4, &WeightParams::exact(1)).unwrap());
        assert_eq!((l.as_str(), r.as_str()), ("c + 2c^2 + 4c^4", "c + 2c^2 + 4c^4"));
        for z in 0..4 {
            let (l, r) = exact(lhs_rhs_thm21(1, &WeightParams::exact(z)).unwrap());
            assert_eq!((l.as_str(), r.as_str()), ("c", "c"));
        }
        if let Sides::Exact { lhs, rhs } = lhs_rhs_thm21(6, &WeightParams::exact(0)).unwrap() {
            assert_eq!(lhs.eval(&rat(1)), rat(4));
            assert_eq!(rhs.eval(&rat(1)), rat(4));
        }
    }

    #[test]
    fn thm23_examples() {
        let Sides::Exact { lhs, rhs } = lhs_rhs_thm23(2, &WeightParams::exact(2)).unwrap() else { panic!() };
        assert_eq!(lhs.eval(&rat(1)), rat(4));
        assert_eq!(rhs.eval(&rat(1)), rat(4));
        for k in 0..4 {
            let Sides::Exact { lhs, rhs } = lhs_rhs_thm23(1, &WeightParams::exact(k)).unwrap() else { panic!() };
            assert_eq!(lhs, CPolynomial::c());
            assert_eq!(rhs, CPolynomial::c());
        }
    }

    #[test]
    fn thm26_examples() {
        let Sides::Exact { lhs, rhs } = lhs_rhs_thm26(6, &WeightParams::exact(0)).unwrap() else { panic!() };
        assert_eq!(lhs.eval(&rat(1)), rat(4));
        assert_eq!(rhs.eval(&rat(1)), rat(4));
        let Sides::Exact { lhs, rhs } = lhs_rhs_thm26(6, &WeightParams::exact(1)).unwrap() else { panic!() };
        assert_eq!(lhs.eval(&rat(1)), rat(18));
        assert_eq!(rhs.eval(&rat(1)), rat(18));
        let Sides::Exact { lhs, rhs } = lhs_rhs_thm26(1, &WeightParams::exact(3)).unwrap() else { panic!() };
        assert_eq!((lhs.clone(), rhs), (CPolynomial::c(), lhs));
    }

    #[test]
    fn corollary_examples() {
        assert_eq!(check_cor27(6).unwrap(), (BigInt::from(6), BigInt::from(6)));
        assert_eq!(check_cor27(1).unwrap(), (BigInt::zero(), BigInt::zero()));
        assert_eq!(check_cor27(2).unwrap(), (BigInt::zero(), BigInt::zero()));
        assert_eq!(check_cor25(6).unwrap(), (BigInt::from(6), BigInt::from(6)));
        assert_eq!(check_cor25(1).unwrap(), (BigInt::zero(), BigInt::zero()));
        assert_eq!(check_cor25(2).unwrap(), (BigInt::zero(), BigInt::zero()));
    }

    #[test]
    fn agl_examples() {
        let (l, r) = check_agl(3, false).unwrap();
        assert_eq!(l.to_string(), "c + c^2");
        assert_eq!(r.to_string(), "c + c^2");
        assert_eq!(check_agl(1, false).unwrap(), (CPolynomial::one(), CPolynomial::one()));
        let (l, r) = check_agl(7, true).unwrap();
        assert_eq!(l, r);
        assert_eq!(l.eval(&rat(1)), rat(0));
    }

    #[test]
    fn dilcher_small_values() {
        let table = dilcher_convolutions(6);
        // C_2(2) = sigma(2) + d(1) d(1) = 4
        assert_eq!(table[2][1], BigInt::from(4));
        assert_eq!(table[6][0], BigInt::from(4));
    }

    #[test]
    fn numeric_reduces_to_exact_at_integer_points() {
        let c = Complex64::new(0.5, 0.0);
        let w = WeightParams::numeric(Complex64::new(2.0, 0.0), c).unwrap();
        let Sides::Numeric { lhs, .. } = lhs_rhs_thm21(12, &w).unwrap() else { panic!() };
        let Sides::Exact { lhs: exact, .. } = lhs_rhs_thm21(12, &WeightParams::exact(2)).unwrap() else { panic!() };
        let want: f64 = num_traits::ToPrimitive::to_f64(&exact.eval(&crate::arith::ratio(1, 2))).unwrap();
        assert!((lhs.re - want).abs() <= 1e-12 * want.abs());
        assert!(lhs.im.abs() <= 1e-12);
    }
}
