//! Cross-validation suites behind the `verify` subcommand.
//!
//! Each check compares independent computation routes on deterministic
//! grids plus seeded random spot instances. Route disagreements become
//! failing checks; running out of budget or other resource limits abort
//! the whole run instead, since nothing was actually refuted.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use bwcap::asym::{self, Claim};
use bwcap::kary::{self, EnumOptions, KaryParams, Method};
use bwcap::perm;
use bwcap::special::{
    g_series_coefficient, g_term_stream, jacobi_binomial_sum, jacobi_eval, pochhammer,
    JacobiQuery,
};
use bwcap::{BigInt, BigRational, Error};

use crate::CliError;

pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

pub fn run_suite(suite: &str, seed: u64, opts: &EnumOptions) -> Result<Vec<Check>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match suite {
        "kary" => kary_suite(&mut rng, opts),
        "perm" => perm_suite(&mut rng, opts),
        "identities" => identities_suite(&mut rng),
        "asymptotics" => asymptotics_suite(),
        "all" => {
            let mut checks = kary_suite(&mut rng, opts)?;
            checks.extend(perm_suite(&mut rng, opts)?);
            checks.extend(identities_suite(&mut rng)?);
            checks.extend(asymptotics_suite()?);
            Ok(checks)
        }
        other => Err(CliError::Usage(format!(
            "unknown suite {other:?}; expected kary, perm, identities, asymptotics, or all"
        ))),
    }
}

/// Wraps a check body. Route disagreements and evaluation errors turn
/// into failed checks; resource limits abort the run.
fn run_check<F>(name: &'static str, body: F) -> Result<Check, CliError>
where
    F: FnOnce() -> bwcap::Result<(bool, String)>,
{
    match body() {
        Ok((pass, detail)) => Ok(Check { name, pass, detail }),
        Err(
            e @ (Error::BudgetExceeded { .. }
            | Error::PermanentTooLarge { .. }
            | Error::DegreeCapExceeded { .. }
            | Error::ExpansionBoundExceeded { .. }),
        ) => Err(CliError::Core(e)),
        Err(other) => Ok(Check {
            name,
            pass: false,
            detail: other.to_string(),
        }),
    }
}

fn rational(rng: &mut ChaCha8Rng, num_bound: i64, den_bound: i64) -> BigRational {
    let num = rng.gen_range(-num_bound..=num_bound);
    let den = rng.gen_range(1..=den_bound);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn kary_suite(rng: &mut ChaCha8Rng, opts: &EnumOptions) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();

    checks.push(run_check("kary table routes", || {
        let sum = kary::count_table(Method::Sum, 1..=6, 0..=10, opts)?;
        let jacobi = kary::count_table(Method::Jacobi, 1..=6, 0..=10, opts)?;
        let series = kary::count_table(Method::Series, 1..=6, 0..=10, opts)?;
        let mut disagreements = 0usize;
        for k in 1..=6 {
            for n in 0..=10 {
                if sum.value(k, n) != jacobi.value(k, n) || sum.value(k, n) != series.value(k, n) {
                    disagreements += 1;
                }
            }
        }
        Ok((
            disagreements == 0,
            format!("66 entries, {disagreements} disagreements across sum/jacobi/series"),
        ))
    })?);

    let cells: Vec<(u32, u32)> = (0..10)
        .map(|_| (rng.gen_range(1..=4), rng.gen_range(0..=7)))
        .collect();
    checks.push(run_check("kary four routes", move || {
        let mut bad = 0usize;
        for &(k, n) in &cells {
            let params = KaryParams::new(k, n)?;
            let brute = kary::balanced_count_brute(&params, opts)?;
            let sum = kary::balanced_count_sum(&params);
            let jacobi = kary::balanced_count_jacobi(&params)?;
            let series = kary::balanced_series(k, n)?.pop().expect("nonempty row");
            if brute != sum || sum != jacobi || jacobi != series {
                bad += 1;
            }
        }
        Ok((
            bad == 0,
            format!("{} random cells, {bad} disagreements", cells.len()),
        ))
    })?);

    checks.push(run_check("kary generating function", || {
        let mut bad = 0usize;
        for k in 1..=4u32 {
            let coeffs = kary::generating_function_coefficients(k, 6)?;
            for n in 0..=6u32 {
                let params = KaryParams::new(k, n)?;
                if coeffs[n as usize] != kary::enumerating_polynomial(&params)? {
                    bad += 1;
                }
            }
        }
        Ok((bad == 0, format!("28 coefficients, {bad} disagreements")))
    })?);

    checks.push(run_check("kary series slices", || {
        let mut held = 0usize;
        for k in 2..=6u32 {
            let claims = kary::laurent_claims_check(k, 10)?;
            if claims.holds && claims.numerator_valuation == Some(4) {
                held += 1;
            }
        }
        Ok((held == 5, format!("{held} of 5 alphabets pass")))
    })?);

    let cells: Vec<(u32, u32)> = (0..6)
        .map(|_| (rng.gen_range(1..=4), rng.gen_range(0..=7)))
        .collect();
    checks.push(run_check("kary class partition", move || {
        let mut bad = 0usize;
        for &(k, n) in &cells {
            let params = KaryParams::new(k, n)?;
            let partition = kary::balanced_r_partition(&params, opts)?;
            let mut total = BigInt::from(0);
            for r in 0..=(n.div_ceil(2)) {
                let expected = kary::balanced_class_size(&params, r);
                let observed = partition.get(&r).cloned().unwrap_or_default();
                if expected != observed {
                    bad += 1;
                }
                total += expected;
            }
            if total != kary::balanced_count_sum(&params) {
                bad += 1;
            }
        }
        Ok((
            bad == 0,
            format!("{} random cells, {bad} disagreements", cells.len()),
        ))
    })?);

    Ok(checks)
}

fn perm_suite(rng: &mut ChaCha8Rng, opts: &EnumOptions) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();

    checks.push(run_check("perm three routes", || {
        let mut bad = 0usize;
        for n in 0..=6u32 {
            let brute = perm::enumerating_polynomial_brute(n, opts)?;
            let permanent = perm::permanent_poly(&perm::capacity_matrix(n)?)?;
            let closed = perm::enumerating_polynomial_closed(n)?;
            if brute != permanent || permanent != closed {
                bad += 1;
            }
        }
        Ok((bad == 0, format!("n <= 6, {bad} disagreements")))
    })?);

    checks.push(run_check("perm census", || {
        let mut bad = 0usize;
        for n in 0..=7u32 {
            let brute = perm::displacement_census(n, opts)?;
            let closed = perm::displacement_census_closed(n)?;
            if brute != closed {
                bad += 1;
            }
            for (d, size) in &brute.counts {
                if n >= 1 && size != &perm::displacement_class_formula(n as u64, d / 2 + 1)? {
                    bad += 1;
                }
            }
        }
        Ok((bad == 0, format!("n <= 7, {bad} disagreements")))
    })?);

    checks.push(run_check("perm balanced counts", || {
        let mut bad = 0usize;
        for n in 0..=8u32 {
            let brute = perm::enumerating_polynomial_brute(n, opts)?.balanced_coefficient_sum();
            if brute != perm::balanced_count_closed(n as u64) {
                bad += 1;
            }
        }
        Ok((bad == 0, format!("n <= 8, {bad} disagreements")))
    })?);

    checks.push(run_check("perm egf", || {
        let egf = perm::balanced_egf(20)?;
        let mut bad = 0usize;
        for n in 0..=20u64 {
            let expected = BigRational::new(
                perm::balanced_count_closed(n),
                bwcap::special::factorial(n),
            );
            if egf.coeff(n as usize) != &expected {
                bad += 1;
            }
        }
        Ok((bad == 0, format!("n <= 20, {bad} disagreements")))
    })?);

    let mut instances = Vec::new();
    for _ in 0..20 {
        let n = rng.gen_range(1..=7usize);
        let ones = rng.gen_range(0..=n);
        let mut columns = vec![perm::ColumnKind::Ones; ones];
        columns.extend(vec![perm::ColumnKind::Values; n - ones]);
        // Shuffle the column arrangement; the permanent must not care.
        for i in (1..columns.len()).rev() {
            let j = rng.gen_range(0..=i);
            columns.swap(i, j);
        }
        let values: Vec<BigRational> = (0..n).map(|_| rational(rng, 9, 5)).collect();
        instances.push((columns, values));
    }
    checks.push(run_check("perm structured permanent", move || {
        let mut bad = 0usize;
        let total = instances.len();
        for (columns, values) in instances {
            let matrix = perm::OnesValuesMatrix::new(columns, values)?;
            let fast = perm::ones_values_permanent(&matrix);
            let dense = perm::permanent_scalar(&matrix.dense())?;
            if fast != dense {
                bad += 1;
            }
        }
        Ok((
            bad == 0,
            format!("{total} random instances, {bad} disagreements"),
        ))
    })?);

    Ok(checks)
}

fn identities_suite(rng: &mut ChaCha8Rng) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();

    let queries: Vec<JacobiQuery> = (0..150)
        .map(|_| {
            JacobiQuery::new(
                rng.gen_range(0..=20),
                rng.gen_range(0..=3),
                rng.gen_range(0..=3),
                rational(rng, 60, 25),
            )
        })
        .collect();
    checks.push(run_check("jacobi dual evaluation", move || {
        let total = queries.len();
        for q in &queries {
            // Internally compares the finite sum against the three-term
            // recurrence and errors out on any disagreement.
            jacobi_eval(q)?;
        }
        Ok((true, format!("{total} random evaluations agree")))
    })?);

    let mut shifts = Vec::new();
    for n in 0..=8u32 {
        for alpha in 0..=2u32 {
            for beta in 0..=2u32 {
                for _ in 0..5 {
                    let mut x = rational(rng, 40, 15);
                    while x == BigRational::from_integer(BigInt::from(1)) {
                        x = rational(rng, 40, 15);
                    }
                    shifts.push((n, alpha, beta, x));
                }
            }
        }
    }
    checks.push(run_check("jacobi argument shift", move || {
        let mut bad = 0usize;
        let total = shifts.len();
        let one = BigRational::from_integer(BigInt::from(1));
        for (n, alpha, beta, x) in shifts {
            let lhs = jacobi_binomial_sum(n, alpha, beta, &x);
            let shifted = (&x + &one) / (&x - &one);
            let rhs = (&x - &one).pow(n as i32)
                * jacobi_eval(&JacobiQuery::new(n, alpha, beta, shifted))?;
            if lhs != rhs {
                bad += 1;
            }
        }
        Ok((bad == 0, format!("{total} instances, {bad} disagreements")))
    })?);

    let duplication: Vec<(BigRational, u64)> = (0..40)
        .map(|_| (rational(rng, 30, 10), rng.gen_range(0..=20)))
        .collect();
    checks.push(run_check("pochhammer duplication", move || {
        let mut bad = 0usize;
        let total = duplication.len();
        let two = BigRational::from_integer(BigInt::from(2));
        let one = BigRational::from_integer(BigInt::from(1));
        for (a, m) in duplication {
            let lhs = pochhammer(&a, 2 * m);
            let rhs = BigRational::from_integer(BigInt::from(4).pow(m as u32))
                * pochhammer(&(&a / &two), m)
                * pochhammer(&((&a + &one) / &two), m);
            if lhs != rhs {
                bad += 1;
            }
        }
        Ok((bad == 0, format!("{total} instances, {bad} disagreements")))
    })?);

    checks.push(run_check("szego specialization", || {
        let mut held = 0usize;
        for k in [3u32, 5, 7, 9, 11] {
            if asym::szego_specialization_holds(k)? {
                held += 1;
            }
        }
        Ok((held == 5, format!("{held} of 5 odd alphabets hold exactly")))
    })?);

    checks.push(run_check("hypergeometric term ratio", || {
        let mut bad = 0usize;
        for term in g_term_stream().take(41) {
            if term.value != g_series_coefficient(term.index) {
                bad += 1;
            }
        }
        Ok((bad == 0, format!("41 coefficients, {bad} disagreements")))
    })?);

    Ok(checks)
}

fn asymptotics_suite() -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    let cases: [(&'static str, Claim, Vec<u64>, usize); 5] = [
        (
            "asymptotics kary even",
            Claim::KaryEven { k: 2 },
            vec![8, 40, 200, 1000],
            2,
        ),
        (
            "asymptotics kary odd k=3",
            Claim::KaryOdd { k: 3 },
            vec![8, 40, 200, 1000],
            2,
        ),
        (
            "asymptotics kary odd k=5",
            Claim::KaryOdd { k: 5 },
            vec![8, 40, 200, 1000],
            2,
        ),
        ("asymptotics perm", Claim::Perm, vec![8, 40, 200, 1000], 2),
        (
            "asymptotics jacobi szego",
            Claim::JacobiSzego { k: 3, alpha: 0 },
            vec![10, 50, 250],
            1,
        ),
    ];
    for (name, claim, schedule, mid) in cases {
        checks.push(run_check(name, move || {
            let report = asym::convergence_report(&claim, &schedule)?;
            let errors: Vec<f64> = report.rows.iter().map(|r| r.relative_error).collect();
            let decreasing = errors.windows(2).all(|w| w[1] < w[0]);
            let mid_ok = errors[mid] < 0.05;
            let final_ok = *errors.last().expect("nonempty schedule") < 0.01;
            let rendered: Vec<String> = errors.iter().map(|e| format!("{:.4}%", e * 100.0)).collect();
            Ok((
                decreasing && mid_ok && final_ok,
                format!(
                    "errors {} (decreasing: {decreasing}, mid < 5%: {mid_ok}, final < 1%: {final_ok})",
                    rendered.join(" -> ")
                ),
            ))
        })?);
    }
    Ok(checks)
}

