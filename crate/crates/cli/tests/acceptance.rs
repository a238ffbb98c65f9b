//! Acceptance suite: one test per exit criterion, each comparing
//! independent routes or frozen reference data. Every test finishes by
//! printing a single pass line; a failed assertion marks the criterion
//! failed.

use std::process::Command;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use bwcap::asym::{self, Claim};
use bwcap::kary::{self, EnumOptions, KaryParams, Method};
use bwcap::perm;
use bwcap::special::{factorial, jacobi_binomial_sum, jacobi_eval, pochhammer, JacobiQuery};
use bwcap::{BigInt, BigRational, BivariatePoly, Word};

use bwcap_cli::oeis;

const SEED: u64 = 0x5EED_CA4E;

fn opts(budget: u64, jobs: usize) -> EnumOptions {
    EnumOptions { budget, jobs }
}

fn rational(rng: &mut ChaCha8Rng, num_bound: i64, den_bound: i64) -> BigRational {
    BigRational::new(
        BigInt::from(rng.gen_range(-num_bound..=num_bound)),
        BigInt::from(rng.gen_range(1..=den_bound)),
    )
}

const TABLE_CSV: &str = "k,0,1,2,3,4,5,6,7,8,9,10\n\
1,1,0,1,0,1,0,1,0,1,0,1\n\
2,1,1,2,3,6,10,20,35,70,126,252\n\
3,1,1,5,9,33,73,245,593,1921,4881,15525\n\
4,1,2,8,24,96,320,1280,4480,17920,64512,258048\n\
5,1,2,13,44,241,950,5005,21080,109345,477962,2458573\n\
6,1,3,18,81,486,2430,14580,76545,459270,2480058,14880348\n";

#[test]
fn criterion_01_single_word_cell_counts() {
    let word = Word::new(vec![1, 5, 2, 3, 2, 2]).unwrap();
    let count = word.cell_count();
    assert_eq!(count.black, 7u32.into());
    assert_eq!(count.white, 8u32.into());
    assert!(!word.is_balanced());

    let out = Command::new(env!("CARGO_BIN_EXE_bwcap"))
        .args(["stats", "152322", "--json"])
        .output()
        .unwrap();
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["black"], "7");
    assert_eq!(value["white"], "8");
    println!("criterion 01: pass (152322 -> 7 black, 8 white)");
}

#[test]
fn criterion_02_length_three_permutation_polynomial() {
    let expected = BivariatePoly::from_terms([
        ((4, 2), BigInt::from(2)),
        ((3, 3), BigInt::from(4)),
    ])
    .unwrap();
    let brute = perm::enumerating_polynomial_brute(3, &opts(kary::DEFAULT_BUDGET, 1)).unwrap();
    let closed = perm::enumerating_polynomial_closed(3).unwrap();
    let permanent = perm::permanent_poly(&perm::capacity_matrix(3).unwrap()).unwrap();
    assert_eq!(brute, expected);
    assert_eq!(closed, expected);
    assert_eq!(permanent, expected);
    println!("criterion 02: pass (2 b^4 w^2 + 4 b^3 w^3 by three routes)");
}

#[test]
fn criterion_03_table_reproduction_by_all_methods() {
    // Default CLI output byte-for-byte.
    let out = Command::new(env!("CARGO_BIN_EXE_bwcap"))
        .args(["table1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), TABLE_CSV);

    // All four methods fill identical tables. Brute needs a raised
    // budget: the largest cell alone visits 6^10 > 10^7 words.
    let brute_opts = opts(70_000_000, 4);
    let tables: Vec<_> = Method::ALL
        .iter()
        .map(|&m| kary::count_table(m, 1..=6, 0..=10, &brute_opts).unwrap())
        .collect();
    for pair in tables.windows(2) {
        for k in 1..=6 {
            for n in 0..=10 {
                assert_eq!(pair[0].value(k, n), pair[1].value(k, n), "k={k} n={n}");
            }
        }
    }
    assert_eq!(tables[0].to_csv(), TABLE_CSV);
    println!("criterion 03: pass (66 entries by brute, sum, jacobi, series)");
}

#[test]
fn criterion_04_generating_function_prefix() {
    let enum_opts = opts(kary::DEFAULT_BUDGET, 1);
    for k in 1..=4u32 {
        let coeffs = kary::generating_function_coefficients(k, 8).unwrap();
        for n in 0..=8u32 {
            let params = KaryParams::new(k, n).unwrap();
            let brute = kary::enumerating_polynomial_brute(&params, &enum_opts).unwrap();
            assert_eq!(coeffs[n as usize], brute, "k={k} n={n}");
        }
    }
    println!("criterion 04: pass (series coefficients match enumeration, k <= 4, n <= 8)");
}

#[test]
fn criterion_05_series_slices_and_class_partition() {
    for k in 2..=5u32 {
        let claims = kary::laurent_claims_check(k, 8).unwrap();
        assert!(claims.holds, "k={k}: {claims:?}");
        assert_eq!(claims.numerator_valuation, Some(4), "k={k}");
    }

    let enum_opts = opts(kary::DEFAULT_BUDGET, 1);
    for k in 1..=4u32 {
        for n in 0..=8u32 {
            let params = KaryParams::new(k, n).unwrap();
            let observed = kary::balanced_r_partition(&params, &enum_opts).unwrap();
            let mut total = BigInt::from(0);
            for r in 0..=n {
                let expected = kary::balanced_class_size(&params, r);
                let seen = observed.get(&r).cloned().unwrap_or_default();
                assert_eq!(seen, expected, "k={k} n={n} r={r}");
                total += expected;
            }
            assert_eq!(total, kary::balanced_count_sum(&params), "k={k} n={n}");
        }
    }
    println!("criterion 05: pass (series slice claims k <= 5; class partition k <= 4, n <= 8)");
}

#[test]
fn criterion_06_shifted_jacobi_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let one = BigRational::from_integer(BigInt::from(1));
    let mut instances = 0usize;
    for n in 0..=10u32 {
        for alpha in 0..=3u32 {
            for beta in 0..=3u32 {
                for _ in 0..20 {
                    let mut x = rational(&mut rng, 60, 20);
                    while x == one {
                        x = rational(&mut rng, 60, 20);
                    }
                    let lhs = jacobi_binomial_sum(n, alpha, beta, &x);
                    let shifted = (&x + &one) / (&x - &one);
                    let rhs = (&x - &one).pow(n as i32)
                        * jacobi_eval(&JacobiQuery::new(n, alpha, beta, shifted)).unwrap();
                    assert_eq!(lhs, rhs, "n={n} alpha={alpha} beta={beta} x={x}");
                    instances += 1;
                }
            }
        }
    }
    assert_eq!(instances, 11 * 16 * 20);
    println!("criterion 06: pass ({instances} exact shift instances)");
}

#[test]
fn criterion_07_permutation_triple_agreement() {
    let enum_opts = opts(kary::DEFAULT_BUDGET, 1);
    for n in 0..=8u32 {
        let brute = perm::enumerating_polynomial_brute(n, &enum_opts).unwrap();
        let permanent = perm::permanent_poly(&perm::capacity_matrix(n).unwrap()).unwrap();
        let closed = perm::enumerating_polynomial_closed(n).unwrap();
        assert_eq!(brute, permanent, "n={n}");
        assert_eq!(permanent, closed, "n={n}");
    }
    println!("criterion 07: pass (brute, permanent, closed agree through n = 8)");
}

#[test]
fn criterion_08_structured_permanent_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x08);
    let mut instances = 0usize;

    // Every shape 0 <= m <= n <= 7, sorted and shuffled column orders.
    for n in 0..=7usize {
        for m in 0..=n {
            let values: Vec<BigRational> = (0..n).map(|_| rational(&mut rng, 9, 4)).collect();
            let mut columns = vec![perm::ColumnKind::Ones; m];
            columns.extend(vec![perm::ColumnKind::Values; n - m]);
            let sorted =
                perm::OnesValuesMatrix::new(columns.clone(), values.clone()).unwrap();
            let fast = perm::ones_values_permanent(&sorted);
            assert_eq!(
                fast,
                perm::permanent_scalar(&sorted.dense()).unwrap(),
                "n={n} m={m} sorted"
            );
            // Column permutations must not change the permanent.
            for i in (1..columns.len()).rev() {
                let j = rng.gen_range(0..=i);
                columns.swap(i, j);
            }
            let shuffled = perm::OnesValuesMatrix::new(columns, values).unwrap();
            assert_eq!(
                perm::ones_values_permanent(&shuffled),
                fast,
                "n={n} m={m} formula ignores order"
            );
            assert_eq!(
                perm::permanent_scalar(&shuffled.dense()).unwrap(),
                fast,
                "n={n} m={m} shuffled"
            );
            instances += 1;
        }
    }

    // And 50 fully random instances on top.
    for _ in 0..50 {
        let n = rng.gen_range(1..=7usize);
        let m = rng.gen_range(0..=n);
        let mut columns = vec![perm::ColumnKind::Ones; m];
        columns.extend(vec![perm::ColumnKind::Values; n - m]);
        for i in (1..columns.len()).rev() {
            let j = rng.gen_range(0..=i);
            columns.swap(i, j);
        }
        let values: Vec<BigRational> = (0..n).map(|_| rational(&mut rng, 12, 6)).collect();
        let matrix = perm::OnesValuesMatrix::new(columns, values).unwrap();
        assert_eq!(
            perm::ones_values_permanent(&matrix),
            perm::permanent_scalar(&matrix.dense()).unwrap()
        );
        instances += 1;
    }
    println!("criterion 08: pass ({instances} structured permanents match Ryser)");
}

#[test]
fn criterion_09_balanced_permutation_counts() {
    let expected_prefix: [u64; 9] = [1, 0, 0, 4, 16, 0, 0, 2592, 20736];
    let enum_opts = opts(kary::DEFAULT_BUDGET, 1);
    for n in 0..=8u32 {
        let closed = perm::balanced_count_closed(n as u64);
        let brute = perm::enumerating_polynomial_brute(n, &enum_opts)
            .unwrap()
            .balanced_coefficient_sum();
        assert_eq!(closed, brute, "n={n}");
        assert_eq!(closed, BigInt::from(expected_prefix[n as usize]), "n={n}");
    }

    let egf = perm::balanced_egf(24).unwrap();
    for n in 0..=24u64 {
        let expected = BigRational::new(perm::balanced_count_closed(n), factorial(n));
        assert_eq!(egf.coeff(n as usize), &expected, "n={n}");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x09);
    let two = BigRational::from_integer(BigInt::from(2));
    let one = BigRational::from_integer(BigInt::from(1));
    for m in 0..=20u64 {
        for _ in 0..5 {
            let a = rational(&mut rng, 40, 12);
            let lhs = pochhammer(&a, 2 * m);
            let rhs = BigRational::from_integer(BigInt::from(4).pow(m as u32))
                * pochhammer(&(&a / &two), m)
                * pochhammer(&((&a + &one) / &two), m);
            assert_eq!(lhs, rhs, "a={a} m={m}");
        }
    }
    println!("criterion 09: pass (closed counts, EGF to order 24, duplication to m = 20)");
}

#[test]
fn criterion_10_balance_iff_half_odd_displacements() {
    for n in 1..=8u32 {
        let target = (n as u64).div_ceil(2);
        let mut letters: Vec<u32> = (1..=n).collect();
        let mut balanced_seen = BigInt::from(0);
        loop {
            let word = Word::new(letters.clone()).unwrap();
            let balanced = word.is_balanced();
            let displacements = word.odd_displacements().unwrap();
            assert_eq!(
                balanced,
                displacements == target,
                "n={n} perm={letters:?} oD={displacements}"
            );
            if balanced {
                balanced_seen += 1;
            }
            if !perm::next_permutation(&mut letters) {
                break;
            }
        }
        assert_eq!(balanced_seen, perm::balanced_count_closed(n as u64), "n={n}");

        let census = perm::displacement_census_closed(n).unwrap();
        let closed = perm::balanced_count_closed(n as u64);
        match census.counts.get(&target) {
            Some(size) => assert_eq!(size, &closed, "n={n}"),
            None => assert_eq!(closed, BigInt::from(0), "n={n}"),
        }
    }
    println!("criterion 10: pass (balance equals ceil(n/2) odd displacements through n = 8)");
}

#[test]
fn criterion_11_class_size_triangle() {
    let enum_opts = opts(kary::DEFAULT_BUDGET, 1);
    for n in 1..=8u32 {
        let census = perm::displacement_census(n, &enum_opts).unwrap();
        let classes = (n / 2 + 1) as u64;
        assert_eq!(census.counts.len() as u64, classes, "n={n}");
        for m in 1..=classes {
            let expected = perm::displacement_class_formula(n as u64, m).unwrap();
            let observed = census.counts.get(&(2 * m - 2)).cloned().unwrap_or_default();
            assert_eq!(observed, expected, "n={n} m={m}");
        }
    }

    let report = oeis::check("A226288", 35, false).unwrap();
    assert_eq!(report.compared, 35);
    assert!(report.mismatches.is_empty());
    println!("criterion 11: pass (census classes match the closed triangle and its snapshot)");
}

#[test]
fn criterion_12_asymptotic_convergence() {
    let cases: [(Claim, Vec<u64>, usize); 5] = [
        (Claim::KaryEven { k: 2 }, vec![8, 40, 200, 1000], 2),
        (Claim::KaryOdd { k: 3 }, vec![8, 40, 200, 1000], 2),
        (Claim::KaryOdd { k: 5 }, vec![8, 40, 200, 1000], 2),
        (Claim::Perm, vec![8, 40, 200, 1000], 2),
        (Claim::JacobiSzego { k: 3, alpha: 0 }, vec![10, 50, 250], 1),
    ];
    for (claim, schedule, mid) in cases {
        let report = asym::convergence_report(&claim, &schedule).unwrap();
        let errors: Vec<f64> = report.rows.iter().map(|r| r.relative_error).collect();
        let label = claim.label();
        for pair in errors.windows(2) {
            assert!(pair[1] < pair[0], "{label}: errors not decreasing: {errors:?}");
        }
        assert!(errors[mid] < 0.05, "{label}: {errors:?}");
        assert!(*errors.last().unwrap() < 0.01, "{label}: {errors:?}");
    }
    println!("criterion 12: pass (all five limit claims converge within thresholds)");
}

#[test]
fn criterion_13_oeis_offline_matches() {
    for id in ["A001405", "A084771", "A060899"] {
        let report = oeis::check(id, 30, false).unwrap();
        assert_eq!(report.compared, 30, "{id}");
        assert!(report.mismatches.is_empty(), "{id}");
        assert_eq!(report.source, "snapshot", "{id}");
    }
    println!("criterion 13: pass (three embedded sequences match, 30 terms each, offline)");
}
