//! The shifted-symmetric side: regularized power sums `p_k`, q-averages
//! over all partitions, and the top-weight expansion of `f_k` in the
//! `p`-basis.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::{fraction_string, int, rat, zeta_neg, Rational};
use crate::coverings::euler_series;
use crate::partitions::{enum_int_partitions, enum_partitions_of_weight, IntPartition};
use crate::series::QSeries;

/// `wt(mu) = |mu| + l(mu)`.
pub fn weight(mu: &IntPartition) -> u32 {
    mu.weight()
}

/// `p_k(lambda) = sum_i [(lambda_i - i + 1/2)^k - (-i + 1/2)^k] + (1 - 2^{-k}) zeta(-k)`.
///
/// Rows with `lambda_i = 0` contribute nothing, so the sum is finite.
pub fn p_eval(k: u32, lambda: &IntPartition) -> Rational {
    assert!(k >= 1, "p_k is defined for k >= 1");
    let half = rat(1, 2);
    let mut acc = Rational::zero();
    for (i, &row) in lambda.parts().iter().enumerate() {
        let shifted = int(-(i as i64 + 1)) + &half;
        let a = &shifted + int(row);
        acc += num_traits::pow(a, k as usize) - num_traits::pow(shifted, k as usize);
    }
    let reg = Rational::one() - Rational::new(BigInt::one(), BigInt::from(2).pow(k));
    acc + reg * zeta_neg(k)
}

/// `p_mu(lambda) = prod_i p_{mu_i}(lambda)`.
pub fn p_monomial_eval(mu: &IntPartition, lambda: &IntPartition) -> Rational {
    mu.parts().iter().map(|&k| p_eval(k, lambda)).product()
}

/// `<p_mu>_q = (q)_inf sum_lambda q^{|lambda|} p_mu(lambda)` up to `q^order`.
pub fn q_average(mu: &IntPartition, order: usize) -> QSeries {
    let raw: Vec<Rational> = (0..=order as u32)
        .into_par_iter()
        .map(|d| {
            enum_int_partitions(d)
                .iter()
                .map(|l| p_monomial_eval(mu, l))
                .sum()
        })
        .collect();
    &euler_series(order) * &QSeries::new(raw)
}

/// `sum c_lambda p_lambda`, keyed by the index partition.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PExpansion {
    terms: BTreeMap<IntPartition, Rational>,
}

impl PExpansion {
    pub fn add_term(&mut self, lambda: IntPartition, c: Rational) {
        let zero = {
            let entry = self
                .terms
                .entry(lambda.clone())
                .or_insert_with(Rational::zero);
            *entry += c;
            entry.is_zero()
        };
        if zero {
            self.terms.remove(&lambda);
        }
    }

    pub fn coeff(&self, lambda: &IntPartition) -> Rational {
        self.terms
            .get(lambda)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms with the largest index partition (lexicographically) first.
    pub fn terms(&self) -> impl Iterator<Item = (&IntPartition, &Rational)> {
        self.terms.iter().rev()
    }

    /// Evaluates the expansion at a partition.
    pub fn eval(&self, lambda: &IntPartition) -> Rational {
        self.terms()
            .map(|(mu, c)| c * p_monomial_eval(mu, lambda))
            .sum()
    }
}

impl fmt::Display for PExpansion {
    /// `1/4 p[4] - 1 p[2,1]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (i, (mu, c)) in self.terms().enumerate() {
            let parts: Vec<String> = mu.parts().iter().map(|p| p.to_string()).collect();
            let mag = fraction_string(&c.abs());
            match (i, c.is_negative()) {
                (0, false) => write!(f, "{mag} p[{}]", parts.join(","))?,
                (0, true) => write!(f, "-{mag} p[{}]", parts.join(","))?,
                (_, false) => write!(f, " + {mag} p[{}]", parts.join(","))?,
                (_, true) => write!(f, " - {mag} p[{}]", parts.join(","))?,
            }
        }
        Ok(())
    }
}

/// Top-weight part of `f_k`:
/// `k^{-1} sum_{wt(lambda) = k+1} (-k)^{l(lambda)-1} / kappa! p_lambda`,
/// where `kappa!` is the product of factorials of part multiplicities.
pub fn f_top_expansion(k: u32) -> PExpansion {
    assert!(k >= 2, "f_k is considered for k >= 2");
    let mut out = PExpansion::default();
    for lambda in enum_partitions_of_weight(k + 1) {
        let sign_pow = num_traits::pow(BigInt::from(-(k as i64)), lambda.len() - 1);
        let c = Rational::new(sign_pow, lambda.multiplicity_factorial() * k);
        out.add_term(lambda, c);
    }
    out
}
