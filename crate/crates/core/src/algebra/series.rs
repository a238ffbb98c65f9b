//! Truncated power series in x with exact rational coefficients.
//!
//! A series carries coefficients for x^0 through x^order inclusive. Binary
//! operations truncate to the smaller operand's order; division by a
//! divisor with valuation v loses v orders of precision and is only allowed
//! when the numerator's leading zeros cover the divisor's, so every
//! computed coefficient is exact. There is no rounding anywhere.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::special::binomial;

/// Most geometric terms a diagonal expansion may sum exactly.
pub const EXPANSION_TERM_BOUND: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    coeffs: Vec<BigRational>,
}

impl RationalSeries {
    pub fn zero(order: usize) -> Self {
        RationalSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        RationalSeries::constant(BigRational::one(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = RationalSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// c * x^power, truncated to `order` (zero when power > order).
    pub fn monomial(c: BigRational, power: usize, order: usize) -> Self {
        let mut s = RationalSeries::zero(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least order 0");
        RationalSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of x^i; i must not exceed the order.
    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn set_coeff(&mut self, i: usize, c: BigRational) {
        self.coeffs[i] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient, None for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Drops coefficients above `order`; a no-op when the series is already
    /// shorter.
    pub fn truncate(&self, order: usize) -> Self {
        if order >= self.order() {
            return self.clone();
        }
        RationalSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|i| &self.coeffs[i] + &other.coeffs[i])
            .collect();
        RationalSeries { coeffs }
    }

    pub fn neg(&self) -> Self {
        RationalSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|i| &self.coeffs[i] - &other.coeffs[i])
            .collect();
        RationalSeries { coeffs }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RationalSeries {
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().take(order + 1).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        RationalSeries { coeffs }
    }

    /// Exact division. A divisor with valuation v > 0 requires the
    /// numerator to vanish to order v as well; the quotient then carries v
    /// fewer orders than the inputs.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let d_val = other.valuation().ok_or(Error::DivisionByZeroSeries)?;
        let order = self.order().min(other.order());
        if order < d_val {
            return Err(Error::InvalidParameter(format!(
                "series order {order} is below the divisor valuation {d_val}"
            )));
        }
        let result_order = order - d_val;
        match self.valuation() {
            None => return Ok(RationalSeries::zero(result_order)),
            Some(n_val) if n_val < d_val => {
                return Err(Error::InexactSeriesDivision {
                    numerator: n_val,
                    divisor: d_val,
                });
            }
            Some(_) => {}
        }
        let num = &self.coeffs[d_val..=order];
        let den = &other.coeffs[d_val..=order];
        let lead = &den[0];
        let mut q = vec![BigRational::zero(); result_order + 1];
        for i in 0..=result_order {
            let mut acc = num[i].clone();
            for j in 1..=i {
                if !den[j].is_zero() {
                    acc -= &den[j] * &q[i - j];
                }
            }
            q[i] = acc / lead;
        }
        Ok(RationalSeries { coeffs: q })
    }

    /// Square root on the branch with constant term 1; any other constant
    /// term is rejected.
    pub fn sqrt(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::SqrtBranchUnsupported {
                found: self.coeffs[0].to_string(),
            });
        }
        let order = self.order();
        let mut s = vec![BigRational::zero(); order + 1];
        s[0] = BigRational::one();
        let two = BigRational::from_integer(BigInt::from(2));
        for n in 1..=order {
            let mut acc = self.coeffs[n].clone();
            for i in 1..n {
                acc -= &s[i] * &s[n - i];
            }
            s[n] = acc / &two;
        }
        Ok(RationalSeries { coeffs: s })
    }

    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self.coeffs.iter().map(|c| json!(c.to_string())).collect();
        json!({ "var": "x", "order": self.order(), "coeffs": coeffs })
    }

    pub fn to_json_string(&self) -> String {
        self.to_json().to_string()
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let malformed = |detail: String| Error::Malformed {
            what: "series",
            detail,
        };
        let obj = value
            .as_object()
            .ok_or_else(|| malformed("not an object".into()))?;
        match obj.get("var").and_then(Value::as_str) {
            Some("x") => {}
            other => return Err(malformed(format!("unexpected var {other:?}"))),
        }
        let order = obj
            .get("order")
            .and_then(Value::as_u64)
            .ok_or_else(|| malformed("missing order".into()))?;
        let coeffs = obj
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| malformed("missing coeffs".into()))?;
        if coeffs.len() as u64 != order + 1 {
            return Err(malformed(format!(
                "order {order} needs {} coefficients, found {}",
                order + 1,
                coeffs.len()
            )));
        }
        let mut out = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            let s = c
                .as_str()
                .ok_or_else(|| malformed("coefficient is not a string".into()))?;
            let r = BigRational::from_str(s)
                .map_err(|e| malformed(format!("bad coefficient {s:?}: {e}")))?;
            out.push(r);
        }
        Ok(RationalSeries { coeffs: out })
    }

    pub fn parse_json(s: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(s).map_err(|e| Error::Malformed {
            what: "series",
            detail: e.to_string(),
        })?;
        RationalSeries::from_json(&value)
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            wrote = true;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

/// Constant (t^0) and t^{-1} slices of 1 / (a - b(t + 1/t)) read as a
/// Laurent series in t whose coefficients are power series in x.
///
/// Expanding geometrically, 1/(a - b(t + 1/t)) = sum_j b^j (t + 1/t)^j /
/// a^{j+1}, and [t^0], [t^{-1}] of (t + 1/t)^j are the central binomial
/// coefficients C(j, j/2) (j even) and C(j, (j+1)/2) (j odd). The sum is
/// finite through order x^order because b must vanish at x = 0; each extra
/// geometric term starts v orders later.
pub fn diagonal_slices(
    a: &RationalSeries,
    b: &RationalSeries,
    order: usize,
) -> Result<(RationalSeries, RationalSeries)> {
    if a.order() < order || b.order() < order {
        return Err(Error::InvalidParameter(format!(
            "diagonal expansion to order {order} needs both inputs to carry that order"
        )));
    }
    if a.coeff(0).is_zero() {
        return Err(Error::InvalidParameter(
            "diagonal expansion needs a unit constant term in the diagonal series".into(),
        ));
    }
    let a = a.truncate(order);
    let inv_a = RationalSeries::one(order).div(&a)?;
    let b = b.truncate(order);
    let v = match b.valuation() {
        None => return Ok((inv_a, RationalSeries::zero(order))),
        Some(0) => {
            return Err(Error::InvalidParameter(
                "diagonal expansion needs the off-diagonal series to vanish at x = 0".into(),
            ));
        }
        Some(v) => v,
    };
    let j_max = order / v;
    if j_max + 1 > EXPANSION_TERM_BOUND {
        return Err(Error::ExpansionBoundExceeded {
            needed: j_max + 1,
            bound: EXPANSION_TERM_BOUND,
        });
    }
    let mut c0 = RationalSeries::zero(order);
    let mut c_minus_1 = RationalSeries::zero(order);
    let mut b_pow = RationalSeries::one(order);
    let mut inv_a_pow = inv_a.clone();
    for j in 0..=j_max {
        let central = if j % 2 == 0 {
            binomial(j as u64, (j / 2) as i64)
        } else {
            binomial(j as u64, j.div_ceil(2) as i64)
        };
        let term = b_pow
            .mul(&inv_a_pow)
            .scale(&BigRational::from_integer(central));
        if j % 2 == 0 {
            c0 = c0.add(&term);
        } else {
            c_minus_1 = c_minus_1.add(&term);
        }
        if j < j_max {
            b_pow = b_pow.mul(&b);
            inv_a_pow = inv_a_pow.mul(&inv_a);
        }
    }
    Ok((c0, c_minus_1))
}
