//! Independent oracles: extended-precision complex arithmetic for the
//! numeric divisor sums, and published partition counts.

use astro_float::{BigFloat, Consts, RoundingMode};
use num_bigint::BigUint;
use num_complex::Complex64;
use pie_core::arith::{complex_power, divisors, sigma_zc_numeric, WeightParams};
use pie_core::identities::{lhs_rhs_thm21, Sides};
use pie_core::partition::partition_count;

const P: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

#[derive(Clone)]
struct Hc {
    re: BigFloat,
    im: BigFloat,
}

impl Hc {
    fn from(z: Complex64) -> Self {
        Hc { re: BigFloat::from_f64(z.re, P), im: BigFloat::from_f64(z.im, P) }
    }

    fn zero() -> Self {
        Hc::from(Complex64::new(0.0, 0.0))
    }

    fn add(&self, o: &Hc) -> Hc {
        Hc { re: self.re.add(&o.re, P, RM), im: self.im.add(&o.im, P, RM) }
    }

    fn sub(&self, o: &Hc) -> Hc {
        Hc { re: self.re.sub(&o.re, P, RM), im: self.im.sub(&o.im, P, RM) }
    }

    fn mul(&self, o: &Hc) -> Hc {
        let re = self.re.mul(&o.re, P, RM).sub(&self.im.mul(&o.im, P, RM), P, RM);
        let im = self.re.mul(&o.im, P, RM).add(&self.im.mul(&o.re, P, RM), P, RM);
        Hc { re, im }
    }

    fn norm_sqr(&self) -> BigFloat {
        self.re.mul(&self.re, P, RM).add(&self.im.mul(&self.im, P, RM), P, RM)
    }

    /// `j^z` on the principal branch.
    fn int_pow(j: u64, z: Complex64, cc: &mut Consts) -> Hc {
        let ln_j = BigFloat::from_u64(j, P).ln(P, RM, cc);
        let a = BigFloat::from_f64(z.re, P).mul(&ln_j, P, RM);
        let b = BigFloat::from_f64(z.im, P).mul(&ln_j, P, RM);
        let modulus = a.exp(P, RM, cc);
        Hc { re: modulus.mul(&b.cos(P, RM, cc), P, RM), im: modulus.mul(&b.sin(P, RM, cc), P, RM) }
    }

    fn powu(&self, k: u64) -> Hc {
        let mut out = Hc::from(Complex64::new(1.0, 0.0));
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }
}

fn sigma_oracle(z: Complex64, c: Complex64, n: u64, cc: &mut Consts) -> Hc {
    let hc = Hc::from(c);
    divisors(n).into_iter().fold(Hc::zero(), |acc, d| acc.add(&Hc::int_pow(d, z, cc).mul(&hc.powu(d))))
}

/// `|got - want| <= tol * max(1, |want|)`, evaluated in extended precision.
fn close(got: Complex64, want: &Hc, tol: f64) -> bool {
    let err = Hc::from(got).sub(want).norm_sqr();
    let one = BigFloat::from_f64(1.0, P);
    let scale = want.norm_sqr();
    let scale = if scale > one { scale } else { one };
    let bound = scale.mul(&BigFloat::from_f64(tol * tol, P), P, RM);
    err <= bound
}

#[test]
fn sigma_zc_numeric_matches_extended_precision() {
    let mut cc = Consts::new().unwrap();
    let z = Complex64::new(1.5, 0.5);
    let c = Complex64::new(0.4, -0.3);
    let want = sigma_oracle(z, c, 12, &mut cc);
    let got = sigma_zc_numeric(z, c, 12);
    assert!(close(got, &want, 1e-9));
    assert!(!close(got + Complex64::new(0.0, 1e-6 * got.norm()), &want, 1e-9));
}

#[test]
fn sigma_zc_numeric_matches_over_a_grid() {
    let mut cc = Consts::new().unwrap();
    let zs = [Complex64::new(-1.0, 0.0), Complex64::new(-2.0, 0.0), Complex64::new(2.0, -1.0), Complex64::new(0.5, 0.5)];
    let cs = [Complex64::new(0.4, 0.0), Complex64::new(-0.3, 0.0), Complex64::new(0.2, 0.7), Complex64::new(1.0, 0.0)];
    for z in zs {
        for c in cs {
            for n in [1u64, 7, 12, 30, 60] {
                let want = sigma_oracle(z, c, n, &mut cc);
                assert!(close(sigma_zc_numeric(z, c, n), &want, 1e-12), "z={z} c={c} n={n}");
            }
        }
    }
}

#[test]
fn partition_side_matches_extended_precision() {
    let mut cc = Consts::new().unwrap();
    for (z, c) in [(Complex64::new(1.5, 0.0), Complex64::new(0.4, -0.3)), (Complex64::new(2.0, -1.0), Complex64::new(0.2, 0.7))] {
        let w = WeightParams::numeric(z, c).unwrap();
        for n in [5u32, 18, 30] {
            let Sides::Numeric { lhs, .. } = lhs_rhs_thm21(n, &w).unwrap() else { panic!("numeric sides") };
            let want = sigma_oracle(z, c, n.into(), &mut cc);
            assert!(close(lhs, &want, 1e-9), "z={z} c={c} n={n}");
        }
    }
}

#[test]
fn complex_power_of_two_to_i() {
    let mut cc = Consts::new().unwrap();
    let want = Hc::int_pow(2, Complex64::new(0.0, 1.0), &mut cc);
    assert!(close(complex_power(2, Complex64::new(0.0, 1.0)), &want, 1e-15));
    let got = complex_power(2, Complex64::new(0.0, 1.0));
    let ln2 = std::f64::consts::LN_2;
    assert!((got - Complex64::new(ln2.cos(), ln2.sin())).norm() < 1e-15);
}

#[test]
fn published_partition_counts() {
    assert_eq!(partition_count(100), BigUint::from(190_569_292u64));
    assert_eq!(partition_count(200), BigUint::from(3_972_999_029_388u64));
}
