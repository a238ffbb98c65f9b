//! Permutations counted by black-white cell capacity.
//!
//! A permutation of 1..n is a word, so everything from [`crate::bargraph`]
//! applies; what changes is the enumeration universe and the closed forms.
//! The joint distribution over S_n is simultaneously the permanent of an
//! n x n matrix of cell monomials, a two-factorial binomial sum, and (for
//! the balanced slice) a hypergeometric exponential generating function.
//! As in [`crate::kary`], each quantity is computable along several
//! independent routes that are kept strictly separate so they can
//! cross-check each other.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebra::poly::BivariatePoly;
use crate::algebra::series::RationalSeries;
use crate::bargraph::{column_black, column_white, fragment_cells};
use crate::error::{Error, Result};
use crate::kary::{parallel_fold, EnumOptions};
use crate::special::{binomial, factorial, g_term_stream};

/// Largest matrix the scalar permanent will accept (2^n subsets).
pub const SCALAR_PERMANENT_LIMIT: usize = 12;

/// Largest matrix the polynomial permanent will accept; polynomial row sums
/// make each subset far more expensive than in the scalar case.
pub const POLY_PERMANENT_LIMIT: usize = 9;

/// Rearranges the slice into its lexicographic successor; false (leaving
/// the slice sorted ascending) when it already held the last arrangement.
pub fn next_permutation(a: &mut [u32]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        a.reverse();
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

fn permutations_to_visit(n: u32) -> u128 {
    let mut items: u128 = 1;
    for i in 2..=n as u128 {
        items = items.saturating_mul(i);
    }
    items
}

fn check_perm_budget(n: u32, budget: u64) -> Result<()> {
    let items = permutations_to_visit(n);
    if items > budget as u128 {
        return Err(Error::BudgetExceeded { items, budget });
    }
    Ok(())
}

/// Visits the permutations of 1..=n whose first value lies in `first`, in
/// lexicographic order.
fn for_each_permutation<F>(n: u32, first: std::ops::RangeInclusive<u32>, f: &mut F)
where
    F: FnMut(&[u32]),
{
    debug_assert!(n >= 1);
    let mut word: Vec<u32> = Vec::with_capacity(n as usize);
    for v in first {
        word.clear();
        word.push(v);
        word.extend((1..=n).filter(|&x| x != v));
        loop {
            f(&word);
            if !next_permutation(&mut word[1..]) {
                break;
            }
        }
    }
}

/// Joint distribution of (black, white) over S_n by exhaustive enumeration.
pub fn enumerating_polynomial_brute(n: u32, opts: &EnumOptions) -> Result<BivariatePoly> {
    check_perm_budget(n, opts.budget)?;
    if n == 0 {
        return Ok(BivariatePoly::one());
    }
    let maps = parallel_fold(n, opts.jobs, |chunk| {
        let mut map: BTreeMap<(u32, u32), u64> = BTreeMap::new();
        for_each_permutation(n, chunk, &mut |word| {
            let (black, white) = fragment_cells(word, 0);
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

/// The n x n matrix whose (i, j) entry is the cell monomial of value j at
/// position i (both 1-indexed). Its permanent is the joint distribution
/// over S_n, since each diagonal product multiplies one column's worth of
/// cells per position.
pub fn capacity_matrix(n: u32) -> Result<Vec<Vec<BivariatePoly>>> {
    let mut matrix = Vec::with_capacity(n as usize);
    for i in 1..=n as u64 {
        let mut row = Vec::with_capacity(n as usize);
        for j in 1..=n as u64 {
            row.push(BivariatePoly::monomial(
                column_black(i, j) as u32,
                column_white(i, j) as u32,
                BigInt::one(),
            )?);
        }
        matrix.push(row);
    }
    Ok(matrix)
}

fn require_square<T>(matrix: &[Vec<T>]) -> Result<usize> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidParameter(
            "permanent needs a square matrix".into(),
        ));
    }
    Ok(n)
}

/// Permanent of a matrix of polynomials by inclusion-exclusion over column
/// subsets: sum over nonempty S of (-1)^{n-|S|} prod_i (row sum over S).
pub fn permanent_poly(matrix: &[Vec<BivariatePoly>]) -> Result<BivariatePoly> {
    let n = require_square(matrix)?;
    if n > POLY_PERMANENT_LIMIT {
        return Err(Error::PermanentTooLarge {
            n,
            limit: POLY_PERMANENT_LIMIT,
        });
    }
    if n == 0 {
        return Ok(BivariatePoly::one());
    }
    let mut acc = BivariatePoly::zero();
    for mask in 1u32..(1 << n) {
        let mut product = BivariatePoly::one();
        let mut vanished = false;
        for row in matrix {
            let mut row_sum = BivariatePoly::zero();
            for (j, entry) in row.iter().enumerate() {
                if mask & (1 << j) != 0 {
                    row_sum = row_sum.add(entry);
                }
            }
            if row_sum.is_zero() {
                vanished = true;
                break;
            }
            product = product.mul(&row_sum)?;
        }
        if vanished {
            continue;
        }
        if (n as u32 - mask.count_ones()).is_multiple_of(2) {
            acc = acc.add(&product);
        } else {
            acc = acc.sub(&product);
        }
    }
    Ok(acc)
}

/// Permanent of a matrix of rationals, same inclusion-exclusion but with
/// Gray-code updates so each subset costs one column add or remove.
pub fn permanent_scalar(matrix: &[Vec<BigRational>]) -> Result<BigRational> {
    let n = require_square(matrix)?;
    if n > SCALAR_PERMANENT_LIMIT {
        return Err(Error::PermanentTooLarge {
            n,
            limit: SCALAR_PERMANENT_LIMIT,
        });
    }
    if n == 0 {
        return Ok(BigRational::one());
    }
    let mut acc = BigRational::zero();
    let mut row_sums = vec![BigRational::zero(); n];
    let mut prev: u64 = 0;
    for g in 1u64..(1 << n) {
        let mask = g ^ (g >> 1);
        let flipped = mask ^ prev;
        let j = flipped.trailing_zeros() as usize;
        if mask & flipped != 0 {
            for (i, sum) in row_sums.iter_mut().enumerate() {
                *sum += &matrix[i][j];
            }
        } else {
            for (i, sum) in row_sums.iter_mut().enumerate() {
                *sum -= &matrix[i][j];
            }
        }
        prev = mask;
        if row_sums.iter().any(Zero::is_zero) {
            continue;
        }
        let mut product = BigRational::one();
        for sum in &row_sums {
            product *= sum;
        }
        if (n as u32 - mask.count_ones()).is_multiple_of(2) {
            acc += product;
        } else {
            acc -= product;
        }
    }
    Ok(acc)
}

/// Joint distribution over S_n in closed form:
/// (bw)^{floor(n^2/4)} floor(n/2)! ceil(n/2)!
/// sum_r C(floor(n/2), r) C(ceil(n/2), r) b^{ceil(n/2)-r} w^r.
/// The sum form is subtraction-free, so every intermediate is a genuine
/// partial count.
pub fn enumerating_polynomial_closed(n: u32) -> Result<BivariatePoly> {
    let lo = (n / 2) as u64;
    let hi = n.div_ceil(2) as u64;
    let scale = factorial(lo) * factorial(hi);
    let mut sum = BivariatePoly::zero();
    for r in 0..=lo {
        let c = binomial(lo, r as i64) * binomial(hi, r as i64);
        sum = sum.add(&BivariatePoly::monomial(
            (hi - r) as u32,
            r as u32,
            c * &scale,
        )?);
    }
    let corner = (n as u64 * n as u64 / 4) as u32;
    sum.mul_monomial(corner, corner)
}

/// Number of balanced permutations of 1..n:
/// floor(n/2)! c! C(c, c/2) C(floor(n/2), c/2) with c = ceil(n/2) when c is
/// even, and 0 otherwise (the capacity gap 2r - c cannot vanish for odd c).
pub fn balanced_count_closed(n: u64) -> BigInt {
    let c = n.div_ceil(2);
    if c % 2 == 1 {
        return BigInt::zero();
    }
    factorial(n / 2)
        * factorial(c)
        * binomial(c, (c / 2) as i64)
        * binomial(n / 2, (c / 2) as i64)
}

/// Exponential generating function of the balanced counts, as the series
/// ((1 + x) G(x) - 1) / x where G carries the hypergeometric kernel
/// coefficients on powers x^{4m}.
pub fn balanced_egf(order: u32) -> Result<RationalSeries> {
    let work = order as usize + 1;
    let mut g = RationalSeries::zero(work);
    for term in g_term_stream() {
        let pos = match usize::try_from(term.index * 4) {
            Ok(p) if p <= work => p,
            _ => break,
        };
        g.set_coeff(pos, term.value);
    }
    let one_plus_x = RationalSeries::one(work).add(&RationalSeries::monomial(
        BigRational::one(),
        1,
        work,
    ));
    let numerator = one_plus_x.mul(&g).sub(&RationalSeries::one(work));
    let x = RationalSeries::monomial(BigRational::one(), 1, work);
    numerator.div(&x)
}

/// Which kind of column a structured matrix holds at each index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColumnKind {
    /// The all-ones column.
    Ones,
    /// The shared value column v.
    Values,
}

/// An n x n matrix whose columns are each either all ones or one shared
/// column vector v. Permanents of such matrices collapse to elementary
/// symmetric polynomials, which is what makes the closed forms above work.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OnesValuesMatrix {
    columns: Vec<ColumnKind>,
    values: Vec<BigRational>,
}

impl OnesValuesMatrix {
    pub fn new(columns: Vec<ColumnKind>, values: Vec<BigRational>) -> Result<Self> {
        if columns.len() != values.len() {
            return Err(Error::InvalidParameter(format!(
                "{} column kinds for {} rows",
                columns.len(),
                values.len()
            )));
        }
        Ok(OnesValuesMatrix { columns, values })
    }

    pub fn size(&self) -> usize {
        self.values.len()
    }

    pub fn ones_columns(&self) -> usize {
        self.columns
            .iter()
            .filter(|c| **c == ColumnKind::Ones)
            .count()
    }

    /// Materializes the matrix entry by entry.
    pub fn dense(&self) -> Vec<Vec<BigRational>> {
        let n = self.size();
        let mut matrix = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for kind in &self.columns {
                row.push(match kind {
                    ColumnKind::Ones => BigRational::one(),
                    ColumnKind::Values => self.values[i].clone(),
                });
            }
            matrix.push(row);
        }
        matrix
    }
}

fn elementary_symmetric(values: &[BigRational], t: usize) -> BigRational {
    let mut es = vec![BigRational::zero(); t + 1];
    es[0] = BigRational::one();
    for v in values {
        for i in (1..=t).rev() {
            let carry = &es[i - 1] * v;
            es[i] += carry;
        }
    }
    es[t].clone()
}

/// Permanent of a ones/values matrix in closed form: with m ones-columns,
/// m! (n-m)! e_{n-m}(v). Rows mapped to value columns contribute their v_i,
/// everything else only permutes.
pub fn ones_values_permanent(matrix: &OnesValuesMatrix) -> BigRational {
    let n = matrix.size();
    let m = matrix.ones_columns();
    let scale = factorial(m as u64) * factorial((n - m) as u64);
    BigRational::from_integer(scale) * elementary_symmetric(&matrix.values, n - m)
}

/// How many permutations of 1..n sit in each odd-displacement class. Keys
/// are the observed displacement counts (always even).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisplacementCensus {
    pub n: u32,
    pub counts: BTreeMap<u64, BigInt>,
}

impl DisplacementCensus {
    pub fn to_json(&self) -> Value {
        let mut counts = serde_json::Map::new();
        for (d, count) in &self.counts {
            counts.insert(d.to_string(), json!(count.to_string()));
        }
        json!({ "n": self.n, "counts": counts })
    }
}

/// Census by exhaustive enumeration.
pub fn displacement_census(n: u32, opts: &EnumOptions) -> Result<DisplacementCensus> {
    check_perm_budget(n, opts.budget)?;
    if n == 0 {
        let mut counts = BTreeMap::new();
        counts.insert(0, BigInt::one());
        return Ok(DisplacementCensus { n, counts });
    }
    let maps = parallel_fold(n, opts.jobs, |chunk| {
        let mut map: BTreeMap<u64, u64> = BTreeMap::new();
        for_each_permutation(n, chunk, &mut |word| {
            let mut d = 0u64;
            for (j, &h) in word.iter().enumerate() {
                if (j as u64 + 1 + h as u64) % 2 == 1 {
                    d += 1;
                }
            }
            *map.entry(d).or_insert(0) += 1;
        });
        map
    });
    let mut counts: BTreeMap<u64, BigInt> = BTreeMap::new();
    for map in maps {
        for (d, count) in map {
            *counts.entry(d).or_insert_with(BigInt::zero) += count;
        }
    }
    Ok(DisplacementCensus { n, counts })
}

/// Size of the class with displacement count 2(m - 1):
/// floor(n/2)! ceil(n/2)! C(floor(n/2), m-1) C(ceil(n/2), m-1), for n >= 1
/// and m >= 1.
pub fn displacement_class_formula(n: u64, m: u64) -> Result<BigInt> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParameter(
            "displacement classes are indexed by n >= 1 and m >= 1".into(),
        ));
    }
    let lo = n / 2;
    let hi = n.div_ceil(2);
    Ok(factorial(lo)
        * factorial(hi)
        * binomial(lo, (m - 1) as i64)
        * binomial(hi, (m - 1) as i64))
}

/// The whole census from the closed formula, keyed like
/// [`displacement_census`].
pub fn displacement_census_closed(n: u32) -> Result<DisplacementCensus> {
    let mut counts = BTreeMap::new();
    if n == 0 {
        counts.insert(0, BigInt::one());
        return Ok(DisplacementCensus { n, counts });
    }
    for m in 1..=(n as u64 / 2) + 1 {
        let size = displacement_class_formula(n as u64, m)?;
        if !size.is_zero() {
            counts.insert(2 * (m - 1), size);
        }
    }
    Ok(DisplacementCensus { n, counts })
}
