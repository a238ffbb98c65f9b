//! Exact algebra: sparse bivariate polynomials over the integers and
//! truncated power series over the rationals.

pub mod poly;
pub mod series;
