//! Exact combinatorial special functions: factorials, binomials, Pochhammer
//! products, Jacobi polynomial values at rational arguments, and the
//! hypergeometric coefficient stream behind the balanced-permutation
//! exponential generating function.
//!
//! Jacobi values are always computed twice, once from the terminating
//! binomial sum and once from the three-term recurrence. The two routes
//! share no code, so agreement is strong evidence that a value is right;
//! disagreement is reported as an internal inconsistency rather than
//! papered over.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Binomial coefficient with the combinatorial convention: zero whenever r
/// is negative or exceeds n.
pub fn binomial(n: u64, r: i64) -> BigInt {
    if r < 0 || r as u64 > n {
        return BigInt::zero();
    }
    let r = (r as u64).min(n - r as u64);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Rising factorial (a)(a+1)...(a+m-1); the empty product for m = 0.
pub fn pochhammer(a: &BigRational, m: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = a.clone();
    let one = BigRational::one();
    for _ in 0..m {
        acc *= &term;
        term += &one;
    }
    acc
}

/// A Jacobi polynomial evaluation request: degree n, integer parameters
/// alpha and beta, exact rational argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiQuery {
    pub degree: u32,
    pub alpha: u32,
    pub beta: u32,
    pub argument: BigRational,
}

impl JacobiQuery {
    pub fn new(degree: u32, alpha: u32, beta: u32, argument: BigRational) -> Self {
        JacobiQuery {
            degree,
            alpha,
            beta,
            argument,
        }
    }
}

/// Terminating-sum route:
/// P_n^{(a,b)}(x) = sum_s C(n+a, n-s) C(n+b, s) ((x-1)/2)^s ((x+1)/2)^{n-s}.
pub fn jacobi_sum_eval(q: &JacobiQuery) -> BigRational {
    let n = q.degree as u64;
    let two = BigRational::from_integer(BigInt::from(2));
    let minus = (&q.argument - BigRational::one()) / &two;
    let plus = (&q.argument + BigRational::one()) / &two;
    // minus_pows[s] = ((x-1)/2)^s, plus_pows[s] = ((x+1)/2)^s.
    let mut minus_pows = Vec::with_capacity(q.degree as usize + 1);
    let mut plus_pows = Vec::with_capacity(q.degree as usize + 1);
    minus_pows.push(BigRational::one());
    plus_pows.push(BigRational::one());
    for s in 1..=q.degree as usize {
        minus_pows.push(&minus_pows[s - 1] * &minus);
        plus_pows.push(&plus_pows[s - 1] * &plus);
    }
    let mut acc = BigRational::zero();
    for s in 0..=n {
        let c = binomial(n + q.alpha as u64, (n - s) as i64)
            * binomial(n + q.beta as u64, s as i64);
        if c.is_zero() {
            continue;
        }
        acc += BigRational::from_integer(c)
            * &minus_pows[s as usize]
            * &plus_pows[(n - s) as usize];
    }
    acc
}

/// Three-term recurrence route. For m >= 2 and nonnegative integer
/// parameters the leading factor 2m(m+a+b)(2m+a+b-2) never vanishes, so the
/// recurrence is well defined at every step.
pub fn jacobi_recurrence_eval(q: &JacobiQuery) -> BigRational {
    let a = BigInt::from(q.alpha);
    let b = BigInt::from(q.beta);
    let x = &q.argument;
    let p0 = BigRational::one();
    if q.degree == 0 {
        return p0;
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let p1 = BigRational::from_integer(&a + 1)
        + BigRational::from_integer(&a + &b + 2) * (x - BigRational::one()) / &two;
    if q.degree == 1 {
        return p1;
    }
    let mut prev = p0;
    let mut cur = p1;
    for m in 2..=q.degree as u64 {
        let m = BigInt::from(m);
        let s = &m + &a + &b; // m + alpha + beta
        let t = &m + &s; // 2m + alpha + beta
        let lead = BigRational::from_integer(2 * &m * &s * (&t - 2));
        let mid = BigRational::from_integer(&t - 1)
            * (BigRational::from_integer(&t * (&t - 2)) * x
                + BigRational::from_integer(&a * &a - &b * &b));
        let tail = BigRational::from_integer(2 * (&m + &a - 1) * (&m + &b - 1) * &t);
        let next = (mid * &cur - tail * &prev) / lead;
        prev = cur;
        cur = next;
    }
    cur
}

/// Evaluates by both routes and insists they agree.
pub fn jacobi_eval(q: &JacobiQuery) -> Result<BigRational> {
    let by_sum = jacobi_sum_eval(q);
    let by_rec = jacobi_recurrence_eval(q);
    if by_sum != by_rec {
        return Err(Error::Internal {
            context: "jacobi_eval",
            detail: format!(
                "sum route gave {by_sum}, recurrence gave {by_rec} for degree {} alpha {} beta {} at {}",
                q.degree, q.alpha, q.beta, q.argument
            ),
        });
    }
    Ok(by_sum)
}

/// The binomial convolution sum_i C(n+a, i) C(n+b, n-i) x^i, which a
/// classical identity turns into (x-1)^n P_n^{(a,b)}((x+1)/(x-1)).
pub fn jacobi_binomial_sum(n: u32, alpha: u32, beta: u32, x: &BigRational) -> BigRational {
    let n = n as u64;
    let mut acc = BigRational::zero();
    let mut x_pow = BigRational::one();
    for i in 0..=n {
        let c = binomial(n + alpha as u64, i as i64) * binomial(n + beta as u64, (n - i) as i64);
        acc += BigRational::from_integer(c) * &x_pow;
        if i < n {
            x_pow *= x;
        }
    }
    acc
}

/// One term of a hypergeometric series: the index m and the exact value of
/// the m-th coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergeometricTerm {
    pub index: u64,
    pub value: BigRational,
}

fn quarter(k: i64) -> BigRational {
    BigRational::new(BigInt::from(k), BigInt::from(4))
}

/// m-th coefficient of the balanced-permutation kernel series:
/// (1/2)_m^3 / (m! (1/4)_m (3/4)_m).
pub fn g_series_coefficient(m: u64) -> BigRational {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let num = pochhammer(&half, m);
    let num = &num * &num * &num;
    let den = BigRational::from_integer(factorial(m))
        * pochhammer(&quarter(1), m)
        * pochhammer(&quarter(3), m);
    num / den
}

/// Streams the kernel coefficients by their term ratio
/// (m + 1/2)^3 / ((m + 1/4)(m + 3/4)(m + 1)), starting from 1 at index 0.
/// Infinite; callers take as many terms as they need.
pub fn g_term_stream() -> impl Iterator<Item = HypergeometricTerm> {
    let mut next = HypergeometricTerm {
        index: 0,
        value: BigRational::one(),
    };
    std::iter::from_fn(move || {
        let current = next.clone();
        let m = BigRational::from_integer(BigInt::from(current.index));
        let half_shift = &m + BigRational::new(BigInt::one(), BigInt::from(2));
        let ratio = (&half_shift * &half_shift * &half_shift)
            / ((&m + quarter(1)) * (&m + quarter(3)) * (&m + BigRational::one()));
        next = HypergeometricTerm {
            index: current.index + 1,
            value: &current.value * ratio,
        };
        Some(current)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(10, 5), BigInt::from(252));
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(factorial(10), BigInt::from(3628800));
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&rat(1, 4), 3), rat(45, 64));
        assert_eq!(pochhammer(&rat(1, 2), 2), rat(3, 4));
        assert_eq!(pochhammer(&rat(-7, 3), 0), int(1));
        assert_eq!(pochhammer(&int(3), 4), int(3 * 4 * 5 * 6));
    }

    #[test]
    fn jacobi_low_degrees() {
        let q = JacobiQuery::new(0, 2, 1, rat(22, 7));
        assert_eq!(jacobi_eval(&q).unwrap(), int(1));
        let q = JacobiQuery::new(1, 0, 0, rat(5, 3));
        assert_eq!(jacobi_eval(&q).unwrap(), rat(5, 3));
        // P_1^{(1,0)}(x) = (3x + 1)/2.
        let q = JacobiQuery::new(1, 1, 0, int(3));
        assert_eq!(jacobi_eval(&q).unwrap(), int(5));
        // P_2^{(0,0)}(x) = (3x^2 - 1)/2.
        let q = JacobiQuery::new(2, 0, 0, int(2));
        assert_eq!(jacobi_eval(&q).unwrap(), rat(11, 2));
    }

    #[test]
    fn jacobi_at_one_is_binomial() {
        for degree in 0..=6 {
            for alpha in 0..=3 {
                let q = JacobiQuery::new(degree, alpha, 2, int(1));
                assert_eq!(
                    jacobi_eval(&q).unwrap(),
                    BigRational::from_integer(binomial(
                        (degree + alpha) as u64,
                        degree as i64
                    ))
                );
            }
        }
    }

    #[test]
    fn jacobi_routes_agree_on_a_grid() {
        let args = [int(0), int(1), int(-1), rat(5, 3), rat(-7, 2), rat(22, 7)];
        for degree in 0..=8 {
            for alpha in 0..=2 {
                for beta in 0..=2 {
                    for x in &args {
                        let q = JacobiQuery::new(degree, alpha, beta, x.clone());
                        jacobi_eval(&q).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn binomial_sum_examples() {
        // n = 1, alpha = beta = 0: 1 + x.
        assert_eq!(jacobi_binomial_sum(1, 0, 0, &int(2)), int(3));
        // n = 0: the empty convolution is C(alpha, 0) C(beta, 0) = 1.
        assert_eq!(jacobi_binomial_sum(0, 3, 1, &rat(9, 7)), int(1));
    }

    #[test]
    fn kernel_coefficients() {
        let expected = [
            int(1),
            rat(2, 3),
            rat(18, 35),
            rat(100, 231),
            rat(490, 1287),
            rat(15876, 46189),
            rat(30492, 96577),
        ];
        for (m, want) in expected.iter().enumerate() {
            assert_eq!(&g_series_coefficient(m as u64), want, "m = {m}");
        }
    }

    #[test]
    fn kernel_stream_matches_closed_form() {
        for term in g_term_stream().take(13) {
            assert_eq!(
                term.value,
                g_series_coefficient(term.index),
                "index {}",
                term.index
            );
        }
    }
}
