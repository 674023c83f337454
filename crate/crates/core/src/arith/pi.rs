use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::rational::{decimal_string, fraction_string, Rational};

/// `pi` to 50 decimal places. Only used for the labeled `--approx`
/// annotations and numeric convergence checks; exact results never touch it.
pub const PI_DIGITS: &str = "3.14159265358979323846264338327950288419716939937510";

/// [`PI_DIGITS`] as an exact rational.
pub fn pi_rational() -> Rational {
    let digits: String = PI_DIGITS.chars().filter(|c| *c != '.').collect();
    let places = PI_DIGITS.len() - PI_DIGITS.find('.').unwrap() - 1;
    Rational::new(
        digits.parse::<BigInt>().unwrap(),
        BigInt::from(10).pow(places as u32),
    )
}

/// An exact rational times a power of `pi`.
///
/// Zero is canonical: a zero coefficient always carries `pi_pow == 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiScalar {
    coeff: Rational,
    pi_pow: u32,
}

impl PiScalar {
    pub fn new(coeff: Rational, pi_pow: u32) -> Self {
        if coeff.is_zero() {
            PiScalar::zero()
        } else {
            PiScalar { coeff, pi_pow }
        }
    }

    pub fn zero() -> Self {
        PiScalar {
            coeff: Rational::zero(),
            pi_pow: 0,
        }
    }

    pub fn one() -> Self {
        PiScalar {
            coeff: Rational::one(),
            pi_pow: 0,
        }
    }

    pub fn rational(coeff: Rational) -> Self {
        PiScalar::new(coeff, 0)
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn pi_pow(&self) -> u32 {
        self.pi_pow
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn scale(&self, r: &Rational) -> PiScalar {
        PiScalar::new(&self.coeff * r, self.pi_pow)
    }

    /// Sum of two scalars, or `None` when both are nonzero with different
    /// powers of `pi`.
    pub fn checked_add(&self, other: &PiScalar) -> Option<PiScalar> {
        if self.is_zero() {
            Some(other.clone())
        } else if other.is_zero() {
            Some(self.clone())
        } else if self.pi_pow == other.pi_pow {
            Some(PiScalar::new(&self.coeff + &other.coeff, self.pi_pow))
        } else {
            None
        }
    }

    /// Value with `pi` replaced by its 50-digit rational approximation.
    pub fn approx_rational(&self) -> Rational {
        let pi = pi_rational();
        let mut acc = self.coeff.clone();
        for _ in 0..self.pi_pow {
            acc *= &pi;
        }
        acc
    }

    pub fn approx_decimal(&self, digits: usize) -> String {
        decimal_string(&self.approx_rational(), digits)
    }
}

impl fmt::Display for PiScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_pow {
            0 => write!(f, "{}", fraction_string(&self.coeff)),
            1 => write!(f, "{} pi", fraction_string(&self.coeff)),
            k => write!(f, "{} pi^{k}", fraction_string(&self.coeff)),
        }
    }
}

/// Serialized as `{"num": "...", "den": "...", "pi_pow": k}` with the
/// integers as decimal strings.
impl Serialize for PiScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("PiScalar", 3)?;
        st.serialize_field("num", &self.coeff.numer().to_string())?;
        st.serialize_field("den", &self.coeff.denom().to_string())?;
        st.serialize_field("pi_pow", &self.pi_pow)?;
        st.end()
    }
}

impl Mul for &PiScalar {
    type Output = PiScalar;
    fn mul(self, rhs: &PiScalar) -> PiScalar {
        PiScalar::new(&self.coeff * &rhs.coeff, self.pi_pow + rhs.pi_pow)
    }
}

impl Mul for PiScalar {
    type Output = PiScalar;
    fn mul(self, rhs: PiScalar) -> PiScalar {
        &self * &rhs
    }
}

impl Neg for PiScalar {
    type Output = PiScalar;
    fn neg(self) -> PiScalar {
        PiScalar::new(-self.coeff, self.pi_pow)
    }
}

/// A finite sum of [`PiScalar`]s keyed by the power of `pi`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PiSum {
    terms: BTreeMap<u32, Rational>,
}

impl PiSum {
    pub fn zero() -> Self {
        PiSum::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = PiScalar> + '_ {
        self.terms.iter().map(|(&k, c)| PiScalar::new(c.clone(), k))
    }

    pub fn coeff(&self, pi_pow: u32) -> Rational {
        self.terms
            .get(&pi_pow)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, term: &PiScalar) {
        if term.is_zero() {
            return;
        }
        let entry = self.terms.entry(term.pi_pow).or_insert_with(Rational::zero);
        *entry += &term.coeff;
        if entry.is_zero() {
            self.terms.remove(&term.pi_pow);
        }
    }

    /// The single term of a `pi`-homogeneous sum; `None` if several powers
    /// of `pi` survive.
    pub fn to_homogeneous(&self) -> Option<PiScalar> {
        match self.terms.len() {
            0 => Some(PiScalar::zero()),
            1 => self.terms().next(),
            _ => None,
        }
    }
}

impl From<PiScalar> for PiSum {
    fn from(s: PiScalar) -> Self {
        let mut out = PiSum::zero();
        out.add_term(&s);
        out
    }
}

impl Add for &PiSum {
    type Output = PiSum;
    fn add(self, rhs: &PiSum) -> PiSum {
        let mut out = self.clone();
        for t in rhs.terms() {
            out.add_term(&t);
        }
        out
    }
}

impl Add for PiSum {
    type Output = PiSum;
    fn add(self, rhs: PiSum) -> PiSum {
        &self + &rhs
    }
}

impl Neg for PiSum {
    type Output = PiSum;
    fn neg(self) -> PiSum {
        PiSum {
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

impl Sub for PiSum {
    type Output = PiSum;
    fn sub(self, rhs: PiSum) -> PiSum {
        self + (-rhs)
    }
}

impl Mul for &PiSum {
    type Output = PiSum;
    fn mul(self, rhs: &PiSum) -> PiSum {
        let mut out = PiSum::zero();
        for a in self.terms() {
            for b in rhs.terms() {
                out.add_term(&(&a * &b));
            }
        }
        out
    }
}

impl Mul for PiSum {
    type Output = PiSum;
    fn mul(self, rhs: PiSum) -> PiSum {
        &self * &rhs
    }
}

impl fmt::Display for PiSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    fn ps(n: i64, d: i64, k: u32) -> PiScalar {
        PiScalar::new(rat(n, d), k)
    }

    #[test]
    fn zero_is_canonical() {
        assert_eq!(ps(0, 1, 6), PiScalar::zero());
        assert_eq!(PiScalar::zero().pi_pow(), 0);
    }

    #[test]
    fn additive_identity() {
        let a = PiSum::from(ps(1, 6, 2));
        assert_eq!(&a + &PiSum::zero(), a);
    }

    #[test]
    fn product_adds_exponents() {
        let a = PiSum::from(ps(1, 6, 2));
        let b = PiSum::from(ps(16, 45, 4));
        assert_eq!((a * b).to_homogeneous().unwrap(), ps(8, 135, 6));
    }

    #[test]
    fn distinct_exponents_stay_separate() {
        let s = PiSum::from(ps(1, 1, 2)) + PiSum::from(ps(1, 1, 4));
        assert_eq!(s.terms().count(), 2);
        assert!(s.to_homogeneous().is_none());
        assert!(ps(1, 1, 2).checked_add(&ps(1, 1, 4)).is_none());
    }

    #[test]
    fn pi_approximation() {
        let pi = pi_rational();
        assert!(pi > rat(314159, 100000) && pi < rat(314160, 100000));
        assert_eq!(ps(1, 1, 1).approx_decimal(10), "3.1415926535");
        assert_eq!(ps(1, 6, 2).to_string(), "1/6 pi^2");
    }

    fn arb_sum() -> impl Strategy<Value = PiSum> {
        prop::collection::vec((-20i64..20, 1i64..12, 0u32..6), 0..4).prop_map(|v| {
            v.into_iter().fold(PiSum::zero(), |acc, (n, d, k)| {
                acc + PiSum::from(ps(n, d, k))
            })
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_sum(), b in arb_sum(), c in arb_sum()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &PiSum::from(PiScalar::one()), a.clone());
            prop_assert!((a.clone() - a).is_zero());
        }
    }
}
