//! k-ary words counted by black-white cell capacity.
//!
//! The joint distribution of (black, white) over words in {1..k}^n is a
//! bivariate polynomial f_n. Letters at odd positions contribute the
//! single-letter polynomial g_k(b, w), letters at even positions its mirror
//! g_k(w, b), so f_n is a product of alternating factors. Balanced words
//! (black = white) are the diagonal slice of f_n, and this module computes
//! their count along four independent routes: exhaustive enumeration, a
//! binomial double-count, a Jacobi polynomial closed form, and coefficient
//! extraction from a closed-form generating function with a square-root
//! kernel. The routes share no nontrivial code, which is the point: they
//! cross-check each other.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebra::poly::BivariatePoly;
use crate::algebra::series::{diagonal_slices, RationalSeries};
use crate::bargraph::{column_black, column_white, fragment_cells};
use crate::error::{Error, Result};
use crate::special::{binomial, jacobi_eval, JacobiQuery};

/// Default ceiling on how many items an exhaustive enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Knobs for exhaustive enumeration: the visit budget and how many threads
/// to spread the work over. Results never depend on `jobs`.
#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    pub budget: u64,
    pub jobs: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            budget: DEFAULT_BUDGET,
            jobs: 1,
        }
    }
}

/// Alphabet size k >= 1 and word length n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KaryParams {
    k: u32,
    n: u32,
}

impl KaryParams {
    pub fn new(k: u32, n: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter(
                "alphabet size k must be at least 1".into(),
            ));
        }
        Ok(KaryParams { k, n })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

/// Which route computes a balanced-word count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Brute,
    Sum,
    Jacobi,
    Series,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Brute, Method::Sum, Method::Jacobi, Method::Series];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Sum => "sum",
            Method::Jacobi => "jacobi",
            Method::Series => "series",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(Method::Brute),
            "sum" => Ok(Method::Sum),
            "jacobi" => Ok(Method::Jacobi),
            "series" => Ok(Method::Series),
            other => Err(Error::InvalidParameter(format!(
                "unknown method {other:?}; expected brute, sum, jacobi, or series"
            ))),
        }
    }
}

/// Distribution of a single letter at an odd position:
/// g_k = sum_{h=1}^{k} b^{ceil(h/2)} w^{floor(h/2)}.
/// At even positions the colors swap, i.e. the polynomial is g_k(w, b).
pub fn letter_polynomial(k: u32) -> BivariatePoly {
    let mut g = BivariatePoly::zero();
    for h in 1..=k as u64 {
        // Heights stay far below the degree cap for any practical k.
        let m = BivariatePoly::monomial(
            column_black(1, h) as u32,
            column_white(1, h) as u32,
            BigInt::one(),
        )
        .expect("single letter exceeds the degree cap");
        g = g.add(&m);
    }
    g
}

/// f_n for {1..k}^n as the alternating product g (g~ g)^... grouped into
/// (g g~)^{n/2} with one trailing g when n is odd.
pub fn enumerating_polynomial(params: &KaryParams) -> Result<BivariatePoly> {
    let g = letter_polynomial(params.k);
    let pair = g.mul(&g.swap_vars())?;
    let base = pair.pow(params.n / 2)?;
    if params.n % 2 == 1 {
        base.mul(&g)
    } else {
        Ok(base)
    }
}

/// First `order + 1` coefficients of the generating function
/// F_k(x) = (1 + x g) / (1 - x^2 g g~), extracted through the linear
/// recurrence its denominator imposes: c_0 = 1, c_1 = g,
/// c_n = (g g~) c_{n-2}.
pub fn generating_function_coefficients(k: u32, order: u32) -> Result<Vec<BivariatePoly>> {
    let params = KaryParams::new(k, 0)?;
    let g = letter_polynomial(params.k);
    let pair = g.mul(&g.swap_vars())?;
    let mut coeffs: Vec<BivariatePoly> = Vec::with_capacity(order as usize + 1);
    for n in 0..=order as usize {
        let c = match n {
            0 => BivariatePoly::one(),
            1 => g.clone(),
            _ => pair.mul(&coeffs[n - 2])?,
        };
        coeffs.push(c);
    }
    Ok(coeffs)
}

fn words_to_visit(k: u32, n: u32) -> u128 {
    let mut items: u128 = 1;
    for _ in 0..n {
        items = items.saturating_mul(k as u128);
    }
    items
}

fn check_word_budget(k: u32, n: u32, budget: u64) -> Result<()> {
    let items = words_to_visit(k, n);
    if items > budget as u128 {
        return Err(Error::BudgetExceeded { items, budget });
    }
    Ok(())
}

/// Lexicographic odometer over {1..k}^len for letters occupying positions
/// offset+1 .. offset+len, maintaining cell counts incrementally.
struct FragmentOdometer {
    k: u32,
    offset: usize,
    letters: Vec<u32>,
    black: u64,
    white: u64,
}

impl FragmentOdometer {
    fn new(k: u32, len: usize, offset: usize) -> Self {
        let letters = vec![1u32; len];
        let (black, white) = fragment_cells(&letters, offset);
        FragmentOdometer {
            k,
            offset,
            letters,
            black,
            white,
        }
    }

    /// Steps to the next word; false once the last word has been visited.
    fn advance(&mut self) -> bool {
        for j in (0..self.letters.len()).rev() {
            let pos = (self.offset + j + 1) as u64;
            let h = self.letters[j] as u64;
            self.black -= column_black(pos, h);
            self.white -= column_white(pos, h);
            if self.letters[j] < self.k {
                self.letters[j] += 1;
                self.black += column_black(pos, h + 1);
                self.white += column_white(pos, h + 1);
                return true;
            }
            self.letters[j] = 1;
            self.black += column_black(pos, 1);
            self.white += column_white(pos, 1);
        }
        false
    }
}

/// Visits every word of length n >= 1 whose first letter lies in `first`,
/// in lexicographic order, as (first letter, suffix, black, white).
fn for_each_word<F>(k: u32, n: u32, first: RangeInclusive<u32>, f: &mut F)
where
    F: FnMut(u32, &[u32], u64, u64),
{
    debug_assert!(n >= 1);
    let suffix_len = (n - 1) as usize;
    for h in first {
        let b0 = column_black(1, h as u64);
        let w0 = column_white(1, h as u64);
        let mut odo = FragmentOdometer::new(k, suffix_len, 1);
        loop {
            f(h, &odo.letters, b0 + odo.black, w0 + odo.white);
            if !odo.advance() {
                break;
            }
        }
    }
}

fn split_first_letters(k: u32, jobs: usize) -> Vec<RangeInclusive<u32>> {
    let jobs = (jobs.max(1) as u32).min(k);
    let base = k / jobs;
    let extra = k % jobs;
    let mut chunks = Vec::with_capacity(jobs as usize);
    let mut start = 1u32;
    for j in 0..jobs {
        let len = base + u32::from(j < extra);
        chunks.push(start..=start + len - 1);
        start += len;
    }
    chunks
}

/// Runs `fold` over a partition of the first-letter range, one thread per
/// chunk, and returns the per-chunk results in first-letter order so that
/// merging is deterministic. Callers handle n = 0 themselves. Also used by
/// [`crate::perm`], where the "letters" are the n possible first values.
pub(crate) fn parallel_fold<T, F>(k: u32, jobs: usize, fold: F) -> Vec<T>
where
    T: Send,
    F: Fn(RangeInclusive<u32>) -> T + Sync,
{
    if jobs <= 1 || k == 1 {
        return vec![fold(1..=k)];
    }
    let chunks = split_first_letters(k, jobs);
    std::thread::scope(|scope| {
        let fold = &fold;
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|chunk| scope.spawn(move || fold(chunk)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("enumeration worker panicked"))
            .collect()
    })
}

/// f_n by exhaustive enumeration. Refuses to start when k^n exceeds the
/// budget.
pub fn enumerating_polynomial_brute(
    params: &KaryParams,
    opts: &EnumOptions,
) -> Result<BivariatePoly> {
    check_word_budget(params.k, params.n, opts.budget)?;
    if params.n == 0 {
        return Ok(BivariatePoly::one());
    }
    let maps = parallel_fold(params.k, opts.jobs, |chunk| {
        let mut map: BTreeMap<(u32, u32), u64> = BTreeMap::new();
        for_each_word(params.k, params.n, chunk, &mut |_, _, black, white| {
            *map.entry((black as u32, white as u32)).or_insert(0) += 1;
        });
        map
    });
    let mut total: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    for map in maps {
        for (exp, count) in map {
            *total.entry(exp).or_insert(0) += count;
        }
    }
    BivariatePoly::from_terms(total.into_iter().map(|(e, c)| (e, BigInt::from(c))))
}

/// Number of balanced words in {1..k}^n by exhaustive enumeration.
pub fn balanced_count_brute(params: &KaryParams, opts: &EnumOptions) -> Result<BigInt> {
    check_word_budget(params.k, params.n, opts.budget)?;
    if params.n == 0 {
        return Ok(BigInt::one());
    }
    let counts = parallel_fold(params.k, opts.jobs, |chunk| {
        let mut count = 0u64;
        for_each_word(params.k, params.n, chunk, &mut |_, _, black, white| {
            if black == white {
                count += 1;
            }
        });
        count
    });
    Ok(counts.into_iter().map(u128::from).sum::<u128>().into())
}

/// Balanced words that place odd letters on exactly r odd positions (and
/// then necessarily on r even positions):
/// C(ceil(n/2), r) C(floor(n/2), r) ceil(k/2)^{2r} floor(k/2)^{n-2r},
/// with 0^0 = 1 so that k = 1 degenerates correctly.
pub fn balanced_class_size(params: &KaryParams, r: u32) -> BigInt {
    let n = params.n as u64;
    let r64 = r as u64;
    if 2 * r64 > n {
        return BigInt::zero();
    }
    let odd_positions = n.div_ceil(2);
    let even_positions = n / 2;
    let odd_letters = BigInt::from(params.k.div_ceil(2));
    let even_letters = BigInt::from(params.k / 2);
    let choose = binomial(odd_positions, r as i64) * binomial(even_positions, r as i64);
    if choose.is_zero() {
        return BigInt::zero();
    }
    let pow = |base: &BigInt, e: u64| -> BigInt {
        if e == 0 {
            BigInt::one()
        } else {
            base.pow(e as u32)
        }
    };
    choose * pow(&odd_letters, 2 * r64) * pow(&even_letters, n - 2 * r64)
}

/// Balanced-word count as the sum of the class sizes over r.
pub fn balanced_count_sum(params: &KaryParams) -> BigInt {
    let mut total = BigInt::zero();
    for r in 0..=params.n / 2 {
        total += balanced_class_size(params, r);
    }
    total
}

/// Balanced-word count in closed form. Even k:
/// (k/2)^n C(n, floor(n/2)). Odd k:
/// ((k-1)/2)^{n mod 2} k^{floor(n/2)} P_{floor(n/2)}^{(n mod 2, 0)}((k^2+1)/(2k)),
/// which is guaranteed integral; non-integrality is reported as an internal
/// inconsistency, never rounded.
pub fn balanced_count_jacobi(params: &KaryParams) -> Result<BigInt> {
    let k = params.k as u64;
    let n = params.n as u64;
    if k.is_multiple_of(2) {
        let half = BigInt::from(k / 2);
        let pow = if n == 0 { BigInt::one() } else { half.pow(params.n) };
        return Ok(pow * binomial(n, (n / 2) as i64));
    }
    let alpha = (n % 2) as u32;
    let argument = BigRational::new(BigInt::from(k * k + 1), BigInt::from(2 * k));
    let query = JacobiQuery::new((n / 2) as u32, alpha, 0, argument);
    let jacobi = jacobi_eval(&query)?;
    let odd_factor = if alpha == 0 {
        BigRational::one()
    } else {
        BigRational::from_integer(BigInt::from((k - 1) / 2))
    };
    let k_pow = if n / 2 == 0 {
        BigRational::one()
    } else {
        BigRational::from_integer(BigInt::from(k).pow((n / 2) as u32))
    };
    let value = odd_factor * k_pow * jacobi;
    if !value.is_integer() {
        return Err(Error::Internal {
            context: "balanced_count_jacobi",
            detail: format!(
                "closed form gave the non-integer {value} at k = {k}, n = {n}"
            ),
        });
    }
    Ok(value.to_integer())
}

/// Balanced-word counts for n = 0..=order from the closed generating
/// function. For k = 1 that function is 1/(1 - x^2); for k >= 2 it is
/// (1 + floor(k/2) x + (A - D)/(2 floor(k/2) x)) / D with
/// A = 1 - (floor(k/2)^2 + ceil(k/2)^2) x^2, B = floor(k/2) ceil(k/2) x^2,
/// and D = sqrt(A^2 - 4B^2). Every coefficient must come out a nonnegative
/// integer; anything else is an internal inconsistency.
pub fn balanced_series(k: u32, order: u32) -> Result<Vec<BigInt>> {
    if k == 0 {
        return Err(Error::InvalidParameter(
            "alphabet size k must be at least 1".into(),
        ));
    }
    let order = order as usize;
    if k == 1 {
        return Ok((0..=order)
            .map(|n| {
                if n % 2 == 0 {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            })
            .collect());
    }
    let work = order + 2;
    let (a, b) = kernel_series(k, work);
    let delta = a
        .mul(&a)
        .sub(&b.mul(&b).scale(&BigRational::from_integer(BigInt::from(4))))
        .sqrt()?;
    let lo = BigRational::from_integer(BigInt::from(k / 2));
    let two_lo_x = RationalSeries::monomial(
        &lo * BigRational::from_integer(BigInt::from(2)),
        1,
        work,
    );
    let wrapped = a.sub(&delta).div(&two_lo_x)?;
    let low_part = RationalSeries::one(work).add(&RationalSeries::monomial(lo, 1, work));
    let numerator = low_part.add(&wrapped);
    let series = numerator.div(&delta)?;
    let mut out = Vec::with_capacity(order + 1);
    for i in 0..=order {
        let c = series.coeff(i);
        if !c.is_integer() {
            return Err(Error::Internal {
                context: "balanced_series",
                detail: format!("coefficient of x^{i} is the non-integer {c} at k = {k}"),
            });
        }
        out.push(c.to_integer());
    }
    Ok(out)
}

/// The diagonal kernel pair for k >= 2: A = 1 - (lo^2 + hi^2) x^2 and
/// B = lo hi x^2, where lo = floor(k/2), hi = ceil(k/2).
fn kernel_series(k: u32, order: usize) -> (RationalSeries, RationalSeries) {
    let lo = BigInt::from(k / 2);
    let hi = BigInt::from(k.div_ceil(2));
    let mut a = RationalSeries::one(order);
    a.set_coeff(
        2,
        BigRational::from_integer(-(&lo * &lo + &hi * &hi)),
    );
    let b = RationalSeries::monomial(BigRational::from_integer(&lo * &hi), 2, order);
    (a, b)
}

/// Outcome of replaying the diagonal-extraction claims for the balanced
/// generating function at a given k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentClaims {
    pub order: usize,
    /// x-valuation of A - sqrt(A^2 - 4B^2); the closed form needs 4.
    pub numerator_valuation: Option<usize>,
    /// First power of x where a slice disagrees with its closed form.
    pub first_mismatch: Option<usize>,
    pub holds: bool,
}

/// Expands 1/(A - B(t + 1/t)) geometrically and checks the two claims the
/// closed form rests on: the t^0 slice equals 1/D and the t^{-1} slice
/// equals (A - D)/(2BD), with D = sqrt(A^2 - 4B^2) and A - D vanishing to
/// order exactly 4. Requires k >= 2 (for k = 1 the off-diagonal kernel B is
/// zero and there is nothing to expand).
pub fn laurent_claims_check(k: u32, order: u32) -> Result<LaurentClaims> {
    if k < 2 {
        return Err(Error::InvalidParameter(
            "the diagonal-extraction claims concern k >= 2".into(),
        ));
    }
    // Below order 6 the valuation-4 claim is not even observable.
    let order = (order as usize).max(6);
    let (a, b) = kernel_series(k, order);
    let (c0, c_minus_1) = diagonal_slices(&a, &b, order)?;
    let delta = a
        .mul(&a)
        .sub(&b.mul(&b).scale(&BigRational::from_integer(BigInt::from(4))))
        .sqrt()?;
    let c0_closed = RationalSeries::one(order).div(&delta)?;
    let numerator = a.sub(&delta);
    let numerator_valuation = numerator.valuation();
    let denominator = b
        .scale(&BigRational::from_integer(BigInt::from(2)))
        .mul(&delta);
    let c_minus_1_closed = numerator.div(&denominator)?;

    let mut first_mismatch = None;
    for i in 0..=c0_closed.order() {
        if c0.coeff(i) != c0_closed.coeff(i) {
            first_mismatch = Some(i);
            break;
        }
    }
    if first_mismatch.is_none() {
        for i in 0..=c_minus_1_closed.order() {
            if c_minus_1.coeff(i) != c_minus_1_closed.coeff(i) {
                first_mismatch = Some(i);
                break;
            }
        }
    }
    let holds = first_mismatch.is_none() && numerator_valuation == Some(4);
    Ok(LaurentClaims {
        order,
        numerator_valuation,
        first_mismatch,
        holds,
    })
}

/// Partition of the balanced words by the number r of odd letters on odd
/// positions, by exhaustive enumeration.
pub fn balanced_r_partition(
    params: &KaryParams,
    opts: &EnumOptions,
) -> Result<BTreeMap<u32, BigInt>> {
    check_word_budget(params.k, params.n, opts.budget)?;
    if params.n == 0 {
        let mut map = BTreeMap::new();
        map.insert(0, BigInt::one());
        return Ok(map);
    }
    let maps = parallel_fold(params.k, opts.jobs, |chunk| {
        let mut map: BTreeMap<u32, u64> = BTreeMap::new();
        for_each_word(params.k, params.n, chunk, &mut |first, rest, black, white| {
            if black != white {
                return;
            }
            // Suffix letter j sits at position j + 2, odd iff j is odd.
            let mut r = u32::from(first % 2 == 1);
            for (j, &h) in rest.iter().enumerate() {
                if j % 2 == 1 && h % 2 == 1 {
                    r += 1;
                }
            }
            *map.entry(r).or_insert(0) += 1;
        });
        map
    });
    let mut total: BTreeMap<u32, BigInt> = BTreeMap::new();
    for map in maps {
        for (r, count) in map {
            *total.entry(r).or_insert_with(BigInt::zero) += count;
        }
    }
    Ok(total)
}

/// A rectangle of balanced-word counts, rows indexed by k and columns by n,
/// all produced by one method.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    k_range: RangeInclusive<u32>,
    n_range: RangeInclusive<u32>,
    method: Method,
    rows: Vec<Vec<BigInt>>,
}

/// Fills a table of balanced-word counts with the chosen method.
pub fn count_table(
    method: Method,
    k_range: RangeInclusive<u32>,
    n_range: RangeInclusive<u32>,
    opts: &EnumOptions,
) -> Result<CountTable> {
    if k_range.is_empty() || n_range.is_empty() {
        return Err(Error::InvalidParameter("empty table range".into()));
    }
    if *k_range.start() == 0 {
        return Err(Error::InvalidParameter(
            "alphabet size k must be at least 1".into(),
        ));
    }
    let mut rows = Vec::new();
    for k in k_range.clone() {
        let mut row = Vec::new();
        match method {
            Method::Series => {
                let series = balanced_series(k, *n_range.end())?;
                for n in n_range.clone() {
                    row.push(series[n as usize].clone());
                }
            }
            _ => {
                for n in n_range.clone() {
                    let params = KaryParams::new(k, n)?;
                    let value = match method {
                        Method::Brute => balanced_count_brute(&params, opts)?,
                        Method::Sum => balanced_count_sum(&params),
                        Method::Jacobi => balanced_count_jacobi(&params)?,
                        Method::Series => unreachable!(),
                    };
                    row.push(value);
                }
            }
        }
        rows.push(row);
    }
    Ok(CountTable {
        k_range,
        n_range,
        method,
        rows,
    })
}

impl CountTable {
    pub fn method(&self) -> Method {
        self.method
    }

    pub fn k_range(&self) -> RangeInclusive<u32> {
        self.k_range.clone()
    }

    pub fn n_range(&self) -> RangeInclusive<u32> {
        self.n_range.clone()
    }

    pub fn value(&self, k: u32, n: u32) -> &BigInt {
        assert!(self.k_range.contains(&k) && self.n_range.contains(&n));
        &self.rows[(k - self.k_range.start()) as usize][(n - self.n_range.start()) as usize]
    }

    /// CSV with a header row of n values and one row per k, first cell k.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k");
        for n in self.n_range.clone() {
            out.push(',');
            out.push_str(&n.to_string());
        }
        out.push('\n');
        for (i, k) in self.k_range.clone().enumerate() {
            out.push_str(&k.to_string());
            for value in &self.rows[i] {
                out.push(',');
                out.push_str(&value.to_string());
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().map(BigInt::to_string).collect())
            .collect();
        json!({
            "method": self.method.name(),
            "k_range": [self.k_range.start(), self.k_range.end()],
            "n_range": [self.n_range.start(), self.n_range.end()],
            "counts": rows,
        })
    }
}
