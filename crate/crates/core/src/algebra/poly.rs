//! Sparse bivariate polynomials in b and w with exact integer coefficients.
//!
//! Terms live in a BTreeMap keyed by (e_b, e_w), so iteration and
//! serialization order is canonical. Zero coefficients are never stored.
//! Products enforce a total-degree cap and fail with a resource error
//! instead of silently truncating; results are never approximate.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Upper bound on the total degree e_b + e_w a product may reach.
pub const DEFAULT_DEGREE_CAP: u32 = 512;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        BivariatePoly::default()
    }

    pub fn one() -> Self {
        BivariatePoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        BivariatePoly { terms }
    }

    /// coeff * b^e_b * w^e_w, rejected when e_b + e_w exceeds the cap.
    pub fn monomial(e_b: u32, e_w: u32, coeff: BigInt) -> Result<Self> {
        let degree = e_b as u64 + e_w as u64;
        if degree > DEFAULT_DEGREE_CAP as u64 {
            return Err(Error::DegreeCapExceeded {
                degree,
                cap: DEFAULT_DEGREE_CAP,
            });
        }
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((e_b, e_w), coeff);
        }
        Ok(BivariatePoly { terms })
    }

    pub fn from_terms<I>(iter: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((u32, u32), BigInt)>,
    {
        let mut p = BivariatePoly::zero();
        for ((e_b, e_w), c) in iter {
            p = p.add(&BivariatePoly::monomial(e_b, e_w, c)?);
        }
        Ok(p)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (e_b, e_w) order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e_b: u32, e_w: u32) -> BigInt {
        self.terms
            .get(&(e_b, e_w))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Largest e_b + e_w over the stored terms; None for the zero
    /// polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms
            .keys()
            .map(|&(e_b, e_w)| e_b as u64 + e_w as u64)
            .max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&exp, c) in &other.terms {
            let entry = terms.entry(exp).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(&exp);
            }
        }
        BivariatePoly { terms }
    }

    pub fn neg(&self) -> Self {
        BivariatePoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return BivariatePoly::zero();
        }
        BivariatePoly {
            terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(BivariatePoly::zero());
        }
        // The cap check is on the worst-case degree so behavior does not
        // depend on coefficient cancellation.
        let degree = self.total_degree().unwrap() + other.total_degree().unwrap();
        if degree > DEFAULT_DEGREE_CAP as u64 {
            return Err(Error::DegreeCapExceeded {
                degree,
                cap: DEFAULT_DEGREE_CAP,
            });
        }
        let mut terms: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for (&(ab, aw), ac) in &self.terms {
            for (&(bb, bw), bc) in &other.terms {
                let exp = (ab + bb, aw + bw);
                let entry = terms.entry(exp).or_insert_with(BigInt::zero);
                *entry += ac * bc;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(BivariatePoly { terms })
    }

    pub fn pow(&self, exp: u32) -> Result<Self> {
        let mut result = BivariatePoly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Multiplies by b^e_b * w^e_w, i.e. shifts every exponent pair.
    pub fn mul_monomial(&self, e_b: u32, e_w: u32) -> Result<Self> {
        if self.is_zero() {
            return Ok(BivariatePoly::zero());
        }
        let degree = self.total_degree().unwrap() + e_b as u64 + e_w as u64;
        if degree > DEFAULT_DEGREE_CAP as u64 {
            return Err(Error::DegreeCapExceeded {
                degree,
                cap: DEFAULT_DEGREE_CAP,
            });
        }
        BivariatePoly::from_terms(
            self.terms
                .iter()
                .map(|(&(ab, aw), c)| ((ab + e_b, aw + e_w), c.clone())),
        )
    }

    /// Exchanges the roles of b and w.
    pub fn swap_vars(&self) -> Self {
        BivariatePoly {
            terms: self
                .terms
                .iter()
                .map(|(&(e_b, e_w), c)| ((e_w, e_b), c.clone()))
                .collect(),
        }
    }

    /// Sum of the coefficients on the diagonal e_b = e_w. Equivalently the
    /// constant term in t after substituting b = t, w = 1/t, which is why
    /// this extracts the balanced slice of an enumerating polynomial.
    pub fn balanced_coefficient_sum(&self) -> BigInt {
        let mut sum = BigInt::zero();
        for (&(e_b, e_w), c) in &self.terms {
            if e_b == e_w {
                sum += c;
            }
        }
        sum
    }

    /// Sum of all coefficients, i.e. the value at b = w = 1.
    pub fn coefficient_sum(&self) -> BigInt {
        let mut sum = BigInt::zero();
        for c in self.terms.values() {
            sum += c;
        }
        sum
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(&(e_b, e_w), c)| json!({ "exp": [e_b, e_w], "coeff": c.to_string() }))
            .collect();
        json!({ "vars": ["b", "w"], "terms": terms })
    }

    pub fn to_json_string(&self) -> String {
        self.to_json().to_string()
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let malformed = |detail: String| Error::Malformed {
            what: "polynomial",
            detail,
        };
        let obj = value
            .as_object()
            .ok_or_else(|| malformed("not an object".into()))?;
        let vars = obj
            .get("vars")
            .and_then(Value::as_array)
            .ok_or_else(|| malformed("missing vars".into()))?;
        if vars.len() != 2 || vars[0] != "b" || vars[1] != "w" {
            return Err(malformed(format!("unexpected vars {vars:?}")));
        }
        let terms = obj
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| malformed("missing terms".into()))?;
        let mut map: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for t in terms {
            let exp = t
                .get("exp")
                .and_then(Value::as_array)
                .ok_or_else(|| malformed("term without exp".into()))?;
            if exp.len() != 2 {
                return Err(malformed("exp must have two entries".into()));
            }
            let e_b = exp[0]
                .as_u64()
                .and_then(|e| u32::try_from(e).ok())
                .ok_or_else(|| malformed("bad exponent".into()))?;
            let e_w = exp[1]
                .as_u64()
                .and_then(|e| u32::try_from(e).ok())
                .ok_or_else(|| malformed("bad exponent".into()))?;
            let coeff = t
                .get("coeff")
                .and_then(Value::as_str)
                .ok_or_else(|| malformed("term without coeff string".into()))?;
            let c = BigInt::from_str(coeff)
                .map_err(|e| malformed(format!("bad coefficient {coeff:?}: {e}")))?;
            if map.contains_key(&(e_b, e_w)) {
                return Err(malformed(format!("duplicate exponent ({e_b}, {e_w})")));
            }
            if !c.is_zero() {
                map.insert((e_b, e_w), c);
            }
        }
        Ok(BivariatePoly { terms: map })
    }

    pub fn parse_json(s: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(s).map_err(|e| Error::Malformed {
            what: "polynomial",
            detail: e.to_string(),
        })?;
        BivariatePoly::from_json(&value)
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(e_b, e_w), c) in &self.terms {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = c.is_one() && (e_b, e_w) != (0, 0);
            if !unit_coeff {
                write!(f, "{c}")?;
            }
            let mut leading = unit_coeff;
            for (var, e) in [("b", e_b), ("w", e_w)] {
                if e == 0 {
                    continue;
                }
                if !leading {
                    write!(f, "*")?;
                }
                leading = false;
                write!(f, "{var}")?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}
