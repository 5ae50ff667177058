use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rayon::prelude::*;

use super::profile::{distinct_profile, partition_profile, DistinctProfile, PartitionProfile};
use super::report::{CheckRange, FailureDetail, IdentityReport, Mode};
use super::sides::{self, Sides};
use super::IdentityId;
use crate::arith::{bell_polynomial, rat, ratio, CPolynomial, Coefficient, WeightParams, DEFAULT_DISK_RADIUS};
use crate::error::{Error, Result};
use crate::involution::class_sum;
use crate::partition::DEFAULT_ENUMERATION_LIMIT;
use crate::series::{
    series_a, series_dilcher_binomial, series_entry4, series_k, series_m, ExpSeries, TruncatedSeries,
    DEFAULT_ORDER, DILCHER_MAX_K,
};

/// Parameters shared by every checker. Partition-sum identities use the
/// `n` range, exponents and numeric grid; series identities use the
/// q-order, `m_max`, `binomial_k_max` and exact `c_values`.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckConfig {
    pub n_min: u32,
    pub n_max: u32,
    pub exponents: Vec<u32>,
    /// `(z, c)` pairs for numeric mode.
    pub numeric_grid: Vec<(Complex64, Complex64)>,
    pub mode: Mode,
    pub tolerance: f64,
    pub q_order: usize,
    pub m_max: usize,
    pub binomial_k_max: usize,
    pub c_values: Vec<BigRational>,
    pub enumeration_limit: u32,
    pub disk_radius: f64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            n_min: 1,
            n_max: 60,
            exponents: vec![0, 1, 2, 3, 4],
            numeric_grid: default_numeric_grid(),
            mode: Mode::Exact,
            tolerance: 1e-9,
            q_order: DEFAULT_ORDER,
            m_max: 5,
            binomial_k_max: 4,
            c_values: vec![rat(1), ratio(2, 3), ratio(-1, 2)],
            enumeration_limit: DEFAULT_ENUMERATION_LIMIT,
            disk_radius: DEFAULT_DISK_RADIUS,
        }
    }
}

/// `z ∈ {1.5, -1, -2, 0.5+0.5i} × c ∈ {0.4, -0.3, 0.4-0.3i, 0.2+0.7i}`.
pub fn default_numeric_grid() -> Vec<(Complex64, Complex64)> {
    let zs = [Complex64::new(1.5, 0.0), Complex64::new(-1.0, 0.0), Complex64::new(-2.0, 0.0), Complex64::new(0.5, 0.5)];
    let cs = [Complex64::new(0.4, 0.0), Complex64::new(-0.3, 0.0), Complex64::new(0.4, -0.3), Complex64::new(0.2, 0.7)];
    zs.iter().flat_map(|&z| cs.iter().map(move |&c| (z, c))).collect()
}

impl CheckConfig {
    fn validate(&self) -> Result<()> {
        if self.n_min == 0 || self.n_min > self.n_max {
            return Err(Error::Usage(format!("bad n range {}..={}", self.n_min, self.n_max)));
        }
        if self.n_max > self.enumeration_limit {
            return Err(Error::Range(format!(
                "n_max = {} exceeds the enumeration limit {}",
                self.n_max, self.enumeration_limit
            )));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::Usage(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        Ok(())
    }

    fn n_range(&self) -> CheckRange {
        CheckRange { n_min: Some(self.n_min), n_max: Some(self.n_max), ..CheckRange::default() }
    }

    fn with_exponents(&self) -> CheckRange {
        CheckRange { exponents: self.exponents.iter().map(u32::to_string).collect(), ..self.n_range() }
    }

    fn with_grid(&self) -> CheckRange {
        let mut zs: Vec<String> = Vec::new();
        let mut cs: Vec<String> = Vec::new();
        for (z, c) in &self.numeric_grid {
            push_unique(&mut zs, z.to_string());
            push_unique(&mut cs, c.to_string());
        }
        CheckRange { exponents: zs, c_values: cs, ..self.n_range() }
    }

    fn grid_weights(&self) -> Result<Vec<(Complex64, Complex64)>> {
        for &(z, c) in &self.numeric_grid {
            WeightParams::numeric_in_disk(z, c, self.disk_radius)?;
        }
        Ok(self.numeric_grid.clone())
    }

    fn grid_exponents(&self) -> Vec<Complex64> {
        let mut zs: Vec<Complex64> = Vec::new();
        for &(z, _) in &self.numeric_grid {
            if !zs.contains(&z) {
                zs.push(z);
            }
        }
        zs
    }
}

fn push_unique(v: &mut Vec<String>, s: String) {
    if !v.contains(&s) {
        v.push(s);
    }
}

/// Per-`n` outcome: the first failure at this `n`, and the worst
/// numeric condition seen.
type Outcome = (Option<FailureDetail>, Option<f64>);

/// Runs `f` for every `n` in parallel and keeps the lowest-`n` failure.
fn sweep<F>(cfg: &CheckConfig, f: F) -> Outcome
where
    F: Fn(u32) -> Result<Outcome> + Sync,
{
    let per_n: Vec<Outcome> = (cfg.n_min..=cfg.n_max)
        .into_par_iter()
        .map(|n| f(n).unwrap_or_else(|e| (Some(FailureDetail::fault(Some(n.into()), format!("n={n}"), e)), None)))
        .collect();
    let condition = per_n.iter().filter_map(|o| o.1).reduce(f64::max);
    let failure = per_n.into_iter().find_map(|o| o.0);
    (failure, condition)
}

fn compare_sides(n: u32, location: String, sides: &Sides, tolerance: f64, worst: &mut Option<f64>) -> Option<FailureDetail> {
    if let Some(k) = sides.condition() {
        *worst = Some(worst.map_or(k, |w| w.max(k)));
    }
    if sides.agrees(tolerance) {
        return None;
    }
    let (l, r) = sides.render();
    Some(FailureDetail::mismatch(Some(n.into()), location, l, r))
}

fn compare_ints(n: u32, location: String, lhs: &BigInt, rhs: &BigInt) -> Option<FailureDetail> {
    (lhs != rhs).then(|| FailureDetail::mismatch(Some(n.into()), location, lhs, rhs))
}

fn profiles(n: u32, cfg: &CheckConfig) -> Result<(DistinctProfile, PartitionProfile)> {
    Ok((distinct_profile(n, cfg.enumeration_limit)?, partition_profile(n, cfg.enumeration_limit)?))
}

/// Checks one identity over the configured range. Algorithm and
/// consistency faults become failing reports; invalid configuration is
/// an error.
pub fn check_identity(id: IdentityId, cfg: &CheckConfig) -> Result<IdentityReport> {
    cfg.validate()?;
    if cfg.mode == Mode::Numeric && !id.supports_numeric() {
        return Err(Error::Usage(format!("{id} has no numeric mode")));
    }
    let start = Instant::now();
    let (range, (failure, condition)) = match cfg.mode {
        Mode::Exact => run_exact(id, cfg)?,
        Mode::Numeric => run_numeric(id, cfg)?,
    };
    let mut report = IdentityReport::new(id, cfg.mode, range, failure);
    report.condition = condition;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Every identity that supports the configured mode, in registry order.
pub fn check_all(cfg: &CheckConfig) -> Result<Vec<IdentityReport>> {
    IdentityId::ALL
        .into_iter()
        .filter(|id| cfg.mode == Mode::Exact || id.supports_numeric())
        .map(|id| check_identity(id, cfg))
        .collect()
}

fn run_numeric(id: IdentityId, cfg: &CheckConfig) -> Result<(CheckRange, Outcome)> {
    let tol = cfg.tolerance;
    if id == IdentityId::Cor24 {
        let zs = cfg.grid_exponents();
        let mut range = cfg.with_grid();
        range.c_values = vec!["1".into()];
        let outcome = sweep(cfg, |n| {
            let (dp, pp) = profiles(n, cfg)?;
            let mut worst = None;
            let one = Complex64::new(1.0, 0.0);
            let failure = zs.iter().find_map(|&z| {
                let s = sides::thm23_numeric(&dp, &pp, z, one);
                compare_sides(n, format!("n={n} k={z} c=1"), &s, tol, &mut worst)
            });
            Ok((failure, worst))
        });
        return Ok((range, outcome));
    }
    let grid = cfg.grid_weights()?;
    let outcome = sweep(cfg, |n| {
        let dp = distinct_profile(n, cfg.enumeration_limit)?;
        let pp = match id {
            IdentityId::Thm23 | IdentityId::Thm26 => Some(partition_profile(n, cfg.enumeration_limit)?),
            _ => None,
        };
        let mut worst = None;
        let failure = grid.iter().find_map(|&(z, c)| {
            let s = match id {
                IdentityId::BsOnevar => sides::thm21_numeric(&dp, z, c),
                IdentityId::Thm23 => sides::thm23_numeric(&dp, pp.as_ref().unwrap(), z, c),
                IdentityId::Thm26 => sides::thm26_numeric(&dp, pp.as_ref().unwrap(), z, c),
                _ => unreachable!("numeric support is checked before dispatch"),
            };
            compare_sides(n, format!("n={n} z={z} c={c}"), &s, tol, &mut worst)
        });
        Ok((failure, worst))
    });
    Ok((cfg.with_grid(), outcome))
}

fn run_exact(id: IdentityId, cfg: &CheckConfig) -> Result<(CheckRange, Outcome)> {
    use IdentityId::*;
    let exps = &cfg.exponents;
    let limit = cfg.enumeration_limit;
    Ok(match id {
        BsBasic => (
            cfg.n_range(),
            sweep(cfg, |n| {
                let (l, r) = sides::bs_basic(&distinct_profile(n, limit)?);
                Ok((compare_ints(n, format!("n={n}"), &l, &r), None))
            }),
        ),
        BsInt => (
            cfg.with_exponents(),
            sweep(cfg, |n| {
                let dp = distinct_profile(n, limit)?;
                Ok((
                    exps.iter().find_map(|&z| {
                        let (l, r) = sides::bs_int(&dp, z);
                        compare_ints(n, format!("n={n} z={z}"), &l, &r)
                    }),
                    None,
                ))
            }),
        ),
        BsOnevar | Thm23 | Thm26 => (
            cfg.with_exponents(),
            sweep(cfg, |n| {
                let dp = distinct_profile(n, limit)?;
                let pp = if id == BsOnevar { None } else { Some(partition_profile(n, limit)?) };
                let mut worst = None;
                Ok((
                    exps.iter().find_map(|&z| {
                        let s = match id {
                            BsOnevar => sides::thm21_exact(&dp, z),
                            Thm23 => sides::thm23_exact(&dp, pp.as_ref().unwrap(), z),
                            _ => sides::thm26_exact(&dp, pp.as_ref().unwrap(), z),
                        };
                        compare_sides(n, format!("n={n} z={z}"), &s, 0.0, &mut worst)
                    }),
                    None,
                ))
            }),
        ),
        Cor24 => {
            let mut range = cfg.with_exponents();
            range.c_values = vec!["1".into()];
            (
                range,
                sweep(cfg, |n| {
                    let (dp, pp) = profiles(n, cfg)?;
                    let direct = exps.iter().find_map(|&k| {
                        let (l, r) = sides::cor24(&dp, &pp, k);
                        compare_ints(n, format!("n={n} k={k}"), &l, &r)
                    });
                    if direct.is_some() {
                        return Ok((direct, None));
                    }
                    // k = 1 reduction: rhs -> signed j-sum -> one-size partitions -> d(n)
                    let (_, rhs) = sides::cor24(&dp, &pp, 1);
                    let chain = sides::cor24_reduction(&pp);
                    let mut prev = rhs;
                    for (step, value) in chain.iter().enumerate() {
                        if let Some(f) = compare_ints(n, format!("n={n} k=1 reduction step {}", step + 1), &prev, value) {
                            return Ok((Some(f), None));
                        }
                        prev = value.clone();
                    }
                    Ok((None, None))
                }),
            )
        }
        Cor25 => (
            cfg.n_range(),
            sweep(cfg, |n| {
                let (l, r) = sides::check_cor25(n)?;
                Ok((compare_ints(n, format!("n={n}"), &l, &r), None))
            }),
        ),
        Cor27 => (
            cfg.n_range(),
            sweep(cfg, |n| {
                let (l, r) = sides::cor27_from_profile(&distinct_profile(n, limit)?);
                Ok((compare_ints(n, format!("n={n}"), &l, &r), None))
            }),
        ),
        AglPti | AglScaled => (
            cfg.n_range(),
            sweep(cfg, |n| {
                let (dp, pp) = profiles(n, cfg)?;
                let s = sides::agl_from_profiles(&dp, &pp, id == AglScaled);
                let mut worst = None;
                Ok((compare_sides(n, format!("n={n}"), &s, 0.0, &mut worst), None))
            }),
        ),
        ClassSum => (
            cfg.n_range(),
            sweep(cfg, |n| {
                for divisor in 1..=n {
                    let got = class_sum(n, divisor)?;
                    let want = i64::from(n % divisor == 0);
                    if got != want {
                        let loc = format!("n={n} N={divisor}");
                        return Ok((Some(FailureDetail::mismatch(Some(n.into()), loc, got, want)), None));
                    }
                }
                Ok((None, None))
            }),
        ),
        Eq113 => {
            let c = CPolynomial::c();
            let order = cfg.n_max as usize;
            let series: Vec<TruncatedSeries<CPolynomial>> = exps.iter().map(|&m| series_m(m, &c, order)).collect();
            let mut range = cfg.with_exponents();
            range.c_values = vec!["symbolic".into()];
            (
                range,
                sweep(cfg, |n| {
                    let dp = distinct_profile(n, limit)?;
                    Ok((
                        exps.iter().zip(&series).find_map(|(&m, s)| {
                            let lhs = s.coeff(n as usize);
                            let rhs = sides::eq113_from_profile(&dp, m);
                            (*lhs != rhs).then(|| FailureDetail::mismatch(Some(n.into()), format!("n={n} m={m}"), lhs, rhs))
                        }),
                        None,
                    ))
                }),
            )
        }
        DilcherCm => {
            let one = rat(1);
            let order = cfg.n_max as usize;
            let series: Vec<TruncatedSeries<BigRational>> = (1..=4).map(|m| series_m(m, &one, order)).collect();
            let table = sides::dilcher_convolutions(cfg.n_max);
            let range = CheckRange { exponents: (1..=4).map(|m: u32| m.to_string()).collect(), c_values: vec!["1".into()], ..cfg.n_range() };
            (
                range,
                sweep(cfg, |n| {
                    let dp = distinct_profile(n, limit)?;
                    for m in 1..=4u32 {
                        let enumerated = sides::dilcher_from_profile(&dp, m);
                        let formula = &table[n as usize][m as usize - 1];
                        let loc = format!("n={n} m={m}");
                        if let Some(f) = compare_ints(n, format!("{loc} formula"), &enumerated, formula) {
                            return Ok((Some(f), None));
                        }
                        let coeff = series[m as usize - 1].coeff(n as usize);
                        if *coeff != BigRational::from_integer(enumerated.clone()) {
                            return Ok((Some(FailureDetail::mismatch(Some(n.into()), format!("{loc} series"), coeff, enumerated)), None));
                        }
                    }
                    Ok((None, None))
                }),
            )
        }
        Entry4 | UchimuraTriple | Thm12 | Thm22Exp | Thm22Bell => {
            let range = CheckRange {
                q_order: Some(cfg.q_order),
                ..CheckRange::default()
            };
            run_series(id, cfg, range)?
        }
    })
}

fn series_mismatch<C: Coefficient>(label: &str, a: &TruncatedSeries<C>, b: &TruncatedSeries<C>) -> Option<FailureDetail> {
    a.first_difference(b).map(|i| {
        FailureDetail::mismatch(Some(i as u64), format!("{label} q^{i}"), a.coeff(i), b.coeff(i))
    })
}

fn fault_detail(label: &str, e: Error) -> FailureDetail {
    FailureDetail::fault(None, label, e)
}

fn run_series(id: IdentityId, cfg: &CheckConfig, mut range: CheckRange) -> Result<(CheckRange, Outcome)> {
    let order = cfg.q_order;
    let failure = match id {
        IdentityId::Entry4 => {
            range.c_values = vec!["symbolic".into(), "1".into()];
            let symbolic = series_entry4(&CPolynomial::c(), order);
            let kluyver = series_entry4(&rat(1), order);
            series_mismatch("c=symbolic", &symbolic.lhs, &symbolic.rhs)
                .or_else(|| series_mismatch("c=1", &kluyver.lhs, &kluyver.rhs))
        }
        IdentityId::UchimuraTriple => {
            range.c_values = vec!["1".into()];
            let one = rat(1);
            let m1 = series_m(1, &one, order);
            let kluyver = series_entry4(&one, order);
            series_mismatch("M_1 vs alternating", &m1, &kluyver.lhs)
                .or_else(|| series_mismatch("alternating vs Lambert", &kluyver.lhs, &kluyver.rhs))
        }
        IdentityId::Thm12 => {
            if cfg.binomial_k_max > DILCHER_MAX_K || cfg.binomial_k_max == 0 {
                return Err(Error::Range(format!("k_max = {} outside 1..={DILCHER_MAX_K}", cfg.binomial_k_max)));
            }
            range.exponents = (1..=cfg.binomial_k_max).map(|k| k.to_string()).collect();
            (1..=cfg.binomial_k_max).find_map(|k| match series_dilcher_binomial::<BigRational>(k, order) {
                Err(e) => Some(fault_detail(&format!("k={k}"), e)),
                Ok(f) => series_mismatch(&format!("k={k} binomial vs alternating"), &f.binomial_sum, &f.alternating)
                    .or_else(|| series_mismatch(&format!("k={k} alternating vs nested"), &f.alternating, &f.nested)),
            })
        }
        IdentityId::Thm22Exp | IdentityId::Thm22Bell => {
            range.m_max = Some(cfg.m_max);
            range.c_values = cfg.c_values.iter().map(|c| c.to_string()).collect();
            let mut first = None;
            for c in &cfg.c_values {
                let f = thm22_failure(cfg.m_max, order, c, id == IdentityId::Thm22Exp)?;
                if f.is_some() {
                    first = f;
                    break;
                }
            }
            first
        }
        _ => unreachable!("not a series identity"),
    };
    Ok((range, (failure, None)))
}

fn validate_thm22(m_max: usize, order: usize) -> Result<()> {
    if !(1..=6).contains(&m_max) {
        return Err(Error::Usage(format!("m_max = {m_max} outside 1..=6")));
    }
    if order < 10 {
        return Err(Error::Usage(format!("q-order {order} below 10")));
    }
    Ok(())
}

/// The first failure of either the exponential relation (`exp = true`)
/// or the Bell relation at one exact `c`.
fn thm22_failure(m_max: usize, order: usize, c: &BigRational, exp: bool) -> Result<Option<FailureDetail>> {
    validate_thm22(m_max, order)?;
    let at = |loc: String| format!("c={c} {loc}");
    let a = match series_a(c, order) {
        Ok(a) => a,
        Err(e) => return Ok(Some(fault_detail(&at("A".into()), e))),
    };
    let mut ks = Vec::with_capacity(m_max);
    for m in 1..=m_max as u32 {
        match series_k(m, c, order) {
            Ok(k) => ks.push(k),
            Err(e) => return Ok(Some(fault_detail(&at(format!("K_{m}")), e))),
        }
    }
    let ms: Vec<_> = (1..=m_max as u32).map(|m| series_m(m, c, order)).collect();

    if exp {
        let mut direct = vec![a.clone()];
        direct.extend(ms.iter().cloned());
        let direct = ExpSeries::from_egf(direct)?;
        let mut k_terms = vec![TruncatedSeries::zero(order)];
        k_terms.extend(ks.iter().cloned());
        let via_k = ExpSeries::from_egf(k_terms)?.exp()?.scale_by_series(&a)?;
        return Ok(direct.first_difference(&via_k).map(|(m, i)| {
            FailureDetail::mismatch(
                Some(i as u64),
                at(format!("t^{m} q^{i}")),
                direct.coeff(m).coeff(i),
                via_k.coeff(m).coeff(i),
            )
        }));
    }
    let one = TruncatedSeries::one(order);
    for m in 1..=m_max {
        let y = bell_polynomial(m, &ks[..m], &one)?;
        let rhs = a.try_mul(&y)?;
        if let Some(f) = series_mismatch(&at(format!("m={m}")), &ms[m - 1], &rhs) {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// Checks both the exponential generating function relation and the Bell
/// relation for `m <= m_max` at q-order `order` and the exact weight `c`.
/// Returns the two reports in that order.
pub fn check_thm22(m_max: usize, order: usize, c: &BigRational) -> Result<[IdentityReport; 2]> {
    validate_thm22(m_max, order)?;
    let range = CheckRange { q_order: Some(order), m_max: Some(m_max), c_values: vec![c.to_string()], ..CheckRange::default() };
    let run = |id: IdentityId| -> Result<IdentityReport> {
        let start = Instant::now();
        let failure = thm22_failure(m_max, order, c, id == IdentityId::Thm22Exp)?;
        let mut report = IdentityReport::new(id, Mode::Exact, range.clone(), failure);
        report.elapsed_ms = start.elapsed().as_millis() as u64;
        Ok(report)
    };
    Ok([run(IdentityId::Thm22Exp)?, run(IdentityId::Thm22Bell)?])
}
