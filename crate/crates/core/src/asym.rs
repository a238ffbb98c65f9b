//! Floating-point asymptotics for balanced fractions and large-degree
//! Jacobi values, with empirical convergence reports against the exact
//! routes.
//!
//! This is the only module that touches floats. Exact rationals are
//! converted through an 80-bit integer intermediate and one exact
//! power-of-two scale, so conversion error stays at the f64 rounding level
//! and never pollutes a convergence measurement.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::kary::{balanced_count_jacobi, KaryParams};
use crate::perm::balanced_count_closed;
use crate::special::{factorial, jacobi_eval, JacobiQuery};

/// Fraction of balanced words among {1..k}^n for large n:
/// sqrt(2/(pi n)) for even k, with the extra factor k/sqrt(k^2 - 1) for odd
/// k >= 3.
pub fn kary_balanced_asymptotic(k: u32, n: u64) -> Result<f64> {
    if k < 2 {
        return Err(Error::InvalidParameter(
            "the balanced-fraction asymptotic concerns k >= 2".into(),
        ));
    }
    if n == 0 {
        return Err(Error::InvalidParameter(
            "the balanced-fraction asymptotic needs n >= 1".into(),
        ));
    }
    let base = (2.0 / (PI * n as f64)).sqrt();
    if k.is_multiple_of(2) {
        Ok(base)
    } else {
        let kf = k as f64;
        Ok(base * kf / (kf * kf - 1.0).sqrt())
    }
}

/// Fraction of balanced permutations of 1..n for large admissible n:
/// sqrt(8/(pi n)). Only n = 0 or 3 (mod 4) have balanced permutations at
/// all, so other residues are rejected rather than given a meaningless
/// number.
pub fn perm_balanced_asymptotic(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "the balanced-permutation asymptotic needs n >= 1".into(),
        ));
    }
    if !n.is_multiple_of(4) && n % 4 != 3 {
        return Err(Error::VanishingCount { n });
    }
    Ok((8.0 / (PI * n as f64)).sqrt())
}

/// Large-degree estimate for P_m^{(alpha,beta)}(x) with x > 1 fixed:
/// (sqrt(x+1) + sqrt(x-1))^{alpha+beta} (x + sqrt(x^2-1))^{m+1/2}
/// / (sqrt(2 pi m) (x^2-1)^{1/4} (x-1)^{alpha/2} (x+1)^{beta/2}).
pub fn jacobi_large_degree_estimate(degree: u64, alpha: u32, beta: u32, x: f64) -> Result<f64> {
    // NaN must be rejected too, hence the explicit check.
    if x.is_nan() || x <= 1.0 {
        return Err(Error::ArgumentOutOfRange { found: x });
    }
    if degree == 0 {
        return Err(Error::InvalidParameter(
            "the large-degree estimate needs degree >= 1".into(),
        ));
    }
    let m = degree as f64;
    let root = (x * x - 1.0).sqrt();
    let numerator = ((x + 1.0).sqrt() + (x - 1.0).sqrt()).powi((alpha + beta) as i32)
        * (x + root).powf(m + 0.5);
    let denominator = (2.0 * PI * m).sqrt()
        * (x * x - 1.0).powf(0.25)
        * (x - 1.0).powf(alpha as f64 / 2.0)
        * (x + 1.0).powf(beta as f64 / 2.0);
    Ok(numerator / denominator)
}

/// The estimate above specialized to x = (k^2+1)/(2k) with beta = 0, where
/// every surd collapses: k^m sqrt(2k^2/(k^2-1)) (2k/(k-1))^alpha
/// / sqrt(2 pi m). Needs odd k >= 3 so that x > 1 and (k-1)/2 is integral
/// upstream.
pub fn jacobi_szego_specialized(degree: u64, alpha: u32, k: u32) -> Result<f64> {
    check_odd_k(k)?;
    if degree == 0 {
        return Err(Error::InvalidParameter(
            "the large-degree estimate needs degree >= 1".into(),
        ));
    }
    let m = degree as f64;
    let kf = k as f64;
    Ok(kf.powf(m) * (2.0 * kf * kf / (kf * kf - 1.0)).sqrt()
        * (2.0 * kf / (kf - 1.0)).powi(alpha as i32)
        / (2.0 * PI * m).sqrt())
}

fn check_odd_k(k: u32) -> Result<()> {
    if k < 3 || k.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "the specialization point (k^2+1)/(2k) concerns odd k >= 3, got {k}"
        )));
    }
    Ok(())
}

/// Verifies in exact arithmetic that the surds at x = (k^2+1)/(2k) collapse
/// the way the specialized estimate assumes:
/// x^2 - 1 = ((k^2-1)/(2k))^2, x + sqrt(x^2-1) = k, x - 1 = (k-1)^2/(2k),
/// x + 1 = (k+1)^2/(2k), and (sqrt(x+1) + sqrt(x-1))^2 = 2k.
pub fn szego_specialization_holds(k: u32) -> Result<bool> {
    check_odd_k(k)?;
    let k = BigInt::from(k);
    let rat = |n: BigInt, d: BigInt| BigRational::new(n, d);
    let x = rat(&k * &k + 1, 2 * &k);
    let one = BigRational::from_integer(BigInt::from(1));
    let two = BigRational::from_integer(BigInt::from(2));
    let root = rat(&k * &k - 1, 2 * &k);
    let square_identity = &x * &x - &one == &root * &root;
    let sum_identity = &x + &root == BigRational::from_integer(k.clone());
    let minus_identity = &x - &one == rat((&k - 1) * (&k - 1), 2 * &k);
    let plus_identity = &x + &one == rat((&k + 1) * (&k + 1), 2 * &k);
    // (sqrt(x+1) + sqrt(x-1))^2 = 2x + 2 sqrt(x^2 - 1).
    let doubling_identity =
        &two * &x + &two * &root == BigRational::from_integer(2 * &k);
    Ok(square_identity && sum_identity && minus_identity && plus_identity && doubling_identity)
}

/// An asymptotic claim the crate can measure empirically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    /// Balanced fraction of {1..k}^n for even k.
    KaryEven { k: u32 },
    /// Balanced fraction of {1..k}^n for odd k >= 3.
    KaryOdd { k: u32 },
    /// Balanced fraction of S_n over n = 0, 3 (mod 4).
    Perm,
    /// Jacobi values at the specialization point, degree going to infinity.
    JacobiSzego { k: u32, alpha: u32 },
}

impl Claim {
    pub fn label(&self) -> String {
        match self {
            Claim::KaryEven { k } => format!("kary-even k={k}"),
            Claim::KaryOdd { k } => format!("kary-odd k={k}"),
            Claim::Perm => "perm".into(),
            Claim::JacobiSzego { k, alpha } => format!("jacobi-szego k={k} alpha={alpha}"),
        }
    }

    /// Index schedule a report uses when the caller does not supply one.
    pub fn default_schedule(&self) -> Vec<u64> {
        match self {
            Claim::JacobiSzego { .. } => vec![10, 50, 250],
            _ => vec![8, 40, 200, 1000],
        }
    }
}

/// One measured point: the exact value (converted to f64 for display), the
/// estimate, and |exact/estimate - 1|.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReportRow {
    pub index: u64,
    pub exact: f64,
    pub estimate: f64,
    pub relative_error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub claim: Claim,
    pub rows: Vec<ReportRow>,
}

/// Measures a claim along the given index schedule, computing the exact
/// side with the fast exact routes and the estimate with the float
/// formulas.
pub fn convergence_report(claim: &Claim, schedule: &[u64]) -> Result<ConvergenceReport> {
    if schedule.is_empty() {
        return Err(Error::InvalidParameter("empty index schedule".into()));
    }
    match claim {
        Claim::KaryEven { k } => {
            if *k < 2 || k % 2 == 1 {
                return Err(Error::InvalidParameter(format!(
                    "kary-even needs an even k >= 2, got {k}"
                )));
            }
        }
        Claim::KaryOdd { k } => check_odd_k(*k)?,
        Claim::Perm => {}
        Claim::JacobiSzego { k, .. } => check_odd_k(*k)?,
    }
    let mut rows = Vec::with_capacity(schedule.len());
    for &index in schedule {
        let (exact, estimate) = match claim {
            Claim::KaryEven { k } | Claim::KaryOdd { k } => {
                let n = u32::try_from(index).map_err(|_| {
                    Error::InvalidParameter(format!("index {index} does not fit a word length"))
                })?;
                let params = KaryParams::new(*k, n)?;
                let count = balanced_count_jacobi(&params)?;
                let total = BigInt::from(*k).pow(n);
                let ratio = BigRational::new(count, total);
                (
                    rational_to_f64(&ratio),
                    kary_balanced_asymptotic(*k, index)?,
                )
            }
            Claim::Perm => {
                let ratio = BigRational::new(balanced_count_closed(index), factorial(index));
                (rational_to_f64(&ratio), perm_balanced_asymptotic(index)?)
            }
            Claim::JacobiSzego { k, alpha } => {
                let degree = u32::try_from(index).map_err(|_| {
                    Error::InvalidParameter(format!("index {index} does not fit a degree"))
                })?;
                let big_k = BigInt::from(*k);
                let x = BigRational::new(&big_k * &big_k + 1, 2 * big_k);
                let exact = jacobi_eval(&JacobiQuery::new(degree, *alpha, 0, x.clone()))?;
                (
                    rational_to_f64(&exact),
                    jacobi_large_degree_estimate(index, *alpha, 0, rational_to_f64(&x))?,
                )
            }
        };
        rows.push(ReportRow {
            index,
            exact,
            estimate,
            relative_error: (exact / estimate - 1.0).abs(),
        });
    }
    Ok(ConvergenceReport {
        claim: *claim,
        rows,
    })
}

impl ConvergenceReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,exact,estimate,relative_error\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                row.index, row.exact, row.estimate, row.relative_error
            ));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                json!({
                    "index": row.index,
                    "exact": row.exact,
                    "estimate": row.estimate,
                    "relative_error": row.relative_error,
                })
            })
            .collect();
        json!({ "claim": self.claim.label(), "rows": rows })
    }
}

/// Exact-to-float conversion through an integer quotient carrying about 80
/// bits, so the result is correct to the last few ulps regardless of how
/// large numerator and denominator are. Values beyond f64 range saturate
/// to infinity or zero.
fn rational_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let negative = r.is_negative();
    let num = r.numer().magnitude();
    let den = r.denom().magnitude();
    let shift = 80 - (num.bits() as i64 - den.bits() as i64);
    let q = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let drop = (q.bits() as i64 - 64).max(0);
    let top = (&q >> drop as u64).to_u64().expect("top bits fit u64");
    let exponent = drop - shift;
    let value = if exponent >= i32::MAX as i64 {
        f64::INFINITY
    } else if exponent <= i32::MIN as i64 {
        0.0
    } else {
        top as f64 * 2f64.powi(exponent as i32)
    };
    if negative {
        -value
    } else {
        value
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_conversion_is_sharp() {
        assert_eq!(rational_to_f64(&rat(-7, 8)), -0.875);
        assert_eq!(rational_to_f64(&rat(0, 1)), 0.0);
        assert!((rational_to_f64(&rat(1, 3)) - 1.0 / 3.0).abs() < 1e-16);
        // 2^-100 is a power of two, so conversion must be exact.
        let tiny = BigRational::new(BigInt::from(1), BigInt::from(2).pow(100));
        assert_eq!(rational_to_f64(&tiny), 2f64.powi(-100));
        // Huge values keep full relative precision.
        let huge = BigRational::new(
            BigInt::from(3) * BigInt::from(10).pow(200),
            BigInt::from(7),
        );
        let expected = 3.0 / 7.0 * 1e200;
        assert!((rational_to_f64(&huge) / expected - 1.0).abs() < 1e-12);
        // Beyond f64 range saturates instead of panicking.
        let giant = BigRational::from_integer(BigInt::from(2).pow(40_000));
        assert_eq!(rational_to_f64(&giant), f64::INFINITY);
        assert_eq!(
            rational_to_f64(&(BigRational::from_integer(BigInt::from(1)) / giant)),
            0.0
        );
    }

    #[test]
    fn asymptotic_spot_values() {
        // sqrt(2/(8 pi)) = 1/(2 sqrt(pi)).
        let even = kary_balanced_asymptotic(2, 8).unwrap();
        assert!((even - 0.28209479177387814).abs() < 1e-15);
        // sqrt(8/(8 pi)) = 1/sqrt(pi).
        let perm = perm_balanced_asymptotic(8).unwrap();
        assert!((perm - 0.5641895835477563).abs() < 1e-15);
        let odd = kary_balanced_asymptotic(3, 8).unwrap();
        assert!((odd / even - 3.0 / 8f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn domain_errors() {
        assert!(kary_balanced_asymptotic(1, 10).is_err());
        assert!(kary_balanced_asymptotic(2, 0).is_err());
        assert!(matches!(
            perm_balanced_asymptotic(5),
            Err(Error::VanishingCount { n: 5 })
        ));
        assert!(matches!(
            perm_balanced_asymptotic(6),
            Err(Error::VanishingCount { n: 6 })
        ));
        assert!(perm_balanced_asymptotic(0).is_err());
        assert!(matches!(
            jacobi_large_degree_estimate(10, 0, 0, 1.0),
            Err(Error::ArgumentOutOfRange { .. })
        ));
        assert!(jacobi_large_degree_estimate(0, 0, 0, 1.5).is_err());
        assert!(jacobi_szego_specialized(10, 0, 2).is_err());
        assert!(szego_specialization_holds(2).is_err());
        assert!(szego_specialization_holds(1).is_err());
    }

    #[test]
    fn specialization_identities_hold() {
        for k in [3, 5, 7, 9, 11] {
            assert!(szego_specialization_holds(k).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn specialized_estimate_equals_general_at_the_point() {
        for k in [3u32, 5, 9] {
            for alpha in 0..=1 {
                for degree in [1u64, 10, 40] {
                    let kf = k as f64;
                    let x = (kf * kf + 1.0) / (2.0 * kf);
                    let general =
                        jacobi_large_degree_estimate(degree, alpha, 0, x).unwrap();
                    let special = jacobi_szego_specialized(degree, alpha, k).unwrap();
                    assert!(
                        (general / special - 1.0).abs() < 1e-12,
                        "k = {k}, alpha = {alpha}, degree = {degree}"
                    );
                }
            }
        }
    }

    #[test]
    fn perm_report_matches_calibration() {
        let report = convergence_report(&Claim::Perm, &[8, 40]).unwrap();
        assert_eq!(report.rows.len(), 2);
        assert!((report.rows[0].relative_error - 0.08845231).abs() < 1e-6);
        assert!((report.rows[1].relative_error - 0.01856576).abs() < 1e-6);
        assert!(report.rows[1].relative_error < report.rows[0].relative_error);
    }

    #[test]
    fn kary_report_matches_calibration() {
        let report = convergence_report(&Claim::KaryEven { k: 2 }, &[8]).unwrap();
        assert!((report.rows[0].relative_error - 0.03068930).abs() < 1e-6);
        let report = convergence_report(&Claim::KaryOdd { k: 3 }, &[8]).unwrap();
        assert!((report.rows[0].relative_error - 0.02144329).abs() < 1e-6);
    }

    #[test]
    fn report_validation() {
        assert!(convergence_report(&Claim::KaryEven { k: 3 }, &[8]).is_err());
        assert!(convergence_report(&Claim::KaryOdd { k: 4 }, &[8]).is_err());
        assert!(convergence_report(&Claim::KaryOdd { k: 1 }, &[8]).is_err());
        assert!(convergence_report(&Claim::Perm, &[]).is_err());
        assert!(convergence_report(&Claim::Perm, &[5]).is_err());
    }

    #[test]
    fn report_serialization_shape() {
        let report = convergence_report(
            &Claim::JacobiSzego { k: 3, alpha: 0 },
            &[10],
        )
        .unwrap();
        let csv = report.to_csv();
        assert!(csv.starts_with("index,exact,estimate,relative_error\n"));
        assert_eq!(csv.lines().count(), 2);
        let json = report.to_json();
        assert_eq!(json["claim"], "jacobi-szego k=3 alpha=0");
        assert_eq!(json["rows"][0]["index"], 10);
    }
}
