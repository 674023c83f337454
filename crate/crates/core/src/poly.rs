//! Sparse multivariate polynomials with rational coefficients, truncated
//! to exponent vectors below a componentwise bound.

use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num_traits::Zero;

use crate::arith::Rational;

/// A polynomial in a fixed number of variables. Terms whose exponent
/// vector exceeds `bound` in any coordinate are discarded, so products stay
/// exact on the retained box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    bound: Vec<u32>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Poly {
    pub fn zero(bound: Vec<u32>) -> Self {
        Poly {
            bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(bound: Vec<u32>, c: Rational) -> Self {
        let mut p = Poly::zero(bound);
        let exps = vec![0; p.bound.len()];
        p.add_term(exps, c);
        p
    }

    /// The linear form `sum_{i in vars} x_i`.
    pub fn linear_sum(bound: Vec<u32>, vars: &[usize]) -> Self {
        let mut p = Poly::zero(bound);
        for &v in vars {
            let mut e = vec![0; p.bound.len()];
            e[v] = 1;
            p.add_term(e, Rational::from_integer(1.into()));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.bound.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() || exps.iter().zip(&self.bound).any(|(e, b)| e > b) {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&exps);
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        let mut out = Poly::zero(self.bound.clone());
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::constant(self.bound.clone(), Rational::from_integer(1.into()));
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, v) in &rhs.terms {
            out.add_term(e.clone(), v.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.bound, rhs.bound);
        let mut out = Poly::zero(self.bound.clone());
        for (ea, va) in &self.terms {
            for (eb, vb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, va * vb);
            }
        }
        out
    }
}
