//! One-point function of the shifted power sums as a `q`-series with
//! coefficients depending on a rational point `s = e^{x/2}`, compared with
//! its closed form as a ratio of theta functions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Mul, Sub};

use num_traits::{One, Pow, Signed, Zero};

use crate::arith::{fraction_string, rat, Rational};
use crate::coverings::euler_series;
use crate::error::{Error, Result};
use crate::partitions::enum_int_partitions;

/// Exponents of `q` are stored in units of `1/8`.
const GRADE: i64 = 8;

/// A `q`-series with exponents in `(1/8)Z`, truncated to exponents
/// strictly below `order + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedQSeries {
    order: usize,
    terms: BTreeMap<i64, Rational>,
}

impl GradedQSeries {
    pub fn zero(order: usize) -> Self {
        GradedQSeries {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn limit(&self) -> i64 {
        GRADE * (self.order as i64 + 1)
    }

    /// Adds `c q^{eighths / 8}`; terms beyond the truncation are dropped.
    pub fn add_term(&mut self, eighths: i64, c: Rational) {
        if c.is_zero() || eighths >= self.limit() {
            return;
        }
        let entry = self.terms.entry(eighths).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&eighths);
        }
    }

    pub fn coeff(&self, eighths: i64) -> Rational {
        self.terms
            .get(&eighths)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest-order term as `(eighths, coefficient)`.
    pub fn leading(&self) -> Option<(i64, &Rational)> {
        self.terms.iter().next().map(|(e, c)| (*e, c))
    }
}

impl Mul for &GradedQSeries {
    type Output = GradedQSeries;
    fn mul(self, rhs: &GradedQSeries) -> GradedQSeries {
        let mut out = GradedQSeries::zero(self.order.min(rhs.order));
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Sub for &GradedQSeries {
    type Output = GradedQSeries;
    fn sub(self, rhs: &GradedQSeries) -> GradedQSeries {
        let mut out = GradedQSeries::zero(self.order.min(rhs.order));
        for (e, c) in &self.terms {
            out.add_term(*e, c.clone());
        }
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl fmt::Display for GradedQSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 + O(q^{})", self.order + 1);
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(
                f,
                "({}) q^{}",
                fraction_string(c),
                fraction_string(&rat(*e, GRADE))
            )?;
        }
        write!(f, " + O(q^{})", self.order + 1)
    }
}

/// A rational point `s` at which the one-point function is expanded;
/// `s = 0` and `s = +-1` are excluded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvaluatedPoint {
    s: Rational,
}

impl EvaluatedPoint {
    pub fn new(s: Rational) -> Result<Self> {
        if s.is_zero() || s == Rational::one() || s == -Rational::one() {
            return Err(Error::domain(format!(
                "s = {} is excluded (s must avoid 0 and +-1)",
                fraction_string(&s)
            )));
        }
        Ok(EvaluatedPoint { s })
    }

    pub fn s(&self) -> &Rational {
        &self.s
    }
}

/// `k`-th derivative in `x` of the odd theta function at `s = e^{x/2}`:
/// `sum_n (-1)^n (n + 1/2)^k q^{(2n+1)^2 / 8} s^{2n+1}`.
pub fn theta_series(s: &Rational, k: u32, order: usize) -> Result<GradedQSeries> {
    if s.is_zero() {
        return Err(Error::domain("theta series needs s != 0"));
    }
    let mut out = GradedQSeries::zero(order);
    let limit = GRADE * (order as i64 + 1);
    let mut n = 0i64;
    loop {
        let e = (2 * n + 1) * (2 * n + 1);
        if e >= limit {
            break;
        }
        for m in [n, -1 - n] {
            let sign = if m.rem_euclid(2) == 0 { 1 } else { -1 };
            let half = rat(2 * m + 1, 2);
            let coeff = rat(sign, 1) * Pow::pow(&half, k) * Pow::pow(s, (2 * m + 1) as i32);
            out.add_term(e, coeff);
        }
        n += 1;
    }
    Ok(out)
}

/// `(q)_oo sum_{|lambda| <= order} q^{|lambda|} E_lambda(s)` with
/// `E_lambda(s) = sum_{i <= l} s^{2(lambda_i - i) + 1} + s^{-2l-1} / (1 - s^{-2})`,
/// the generating function of all `p_k(lambda) x^k / k!` summed over `k`.
/// The geometric tail needs `|s| > 1`.
pub fn direct_one_point(point: &EvaluatedPoint, order: usize) -> Result<GradedQSeries> {
    let s = point.s();
    if s.abs() <= Rational::one() {
        return Err(Error::domain(format!(
            "the partition-sum side needs |s| > 1, got s = {}",
            fraction_string(s)
        )));
    }
    let tail_ratio = Rational::one() / (Rational::one() - Pow::pow(s, -2i32));
    let mut sums = Vec::with_capacity(order + 1);
    for d in 0..=order as u32 {
        let mut acc = Rational::zero();
        for lambda in enum_int_partitions(d) {
            let l = lambda.len() as i32;
            for (i, &part) in lambda.parts().iter().enumerate() {
                acc += Pow::pow(s, 2 * (part as i32 - i as i32 - 1) + 1);
            }
            acc += Pow::pow(s, -2 * l - 1) * &tail_ratio;
        }
        sums.push(acc);
    }
    let euler = euler_series(order);
    let mut out = GradedQSeries::zero(order);
    for (i, a) in euler.coeffs().iter().enumerate() {
        for (j, b) in sums.iter().enumerate() {
            if i + j <= order {
                out.add_term(GRADE * (i + j) as i64, a * b);
            }
        }
    }
    Ok(out)
}

/// Outcome of comparing `Theta(s) * F(s)` with `Theta'(0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NpointReport {
    pub order: usize,
    pub lhs: GradedQSeries,
    pub rhs: GradedQSeries,
}

impl NpointReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    /// Lowest exponent (in eighths) where the two sides differ.
    pub fn first_mismatch(&self) -> Option<i64> {
        (&self.lhs - &self.rhs).leading().map(|(e, _)| e)
    }
}

/// Checks the one-point closed form `F(s) = Theta'(0) / Theta(s)` at
/// `point`, multiplied out as `Theta(s) F(s) = Theta'(0)`, through
/// `q^order`.
pub fn verify_one_point(point: &EvaluatedPoint, order: usize) -> Result<NpointReport> {
    let f = direct_one_point(point, order)?;
    let theta = theta_series(point.s(), 0, order)?;
    let lhs = &theta * &f;
    let rhs = theta_series(&Rational::one(), 1, order)?;
    Ok(NpointReport { order, lhs, rhs })
}
