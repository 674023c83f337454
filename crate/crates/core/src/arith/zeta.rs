use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::pi::PiScalar;
use super::rational::{binomial, factorial, int, rat, Rational};
use crate::error::{Error, Result};
use crate::limits::Limits;

static BERNOULLI_MEMO: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

fn extend_bernoulli(table: &mut Vec<Rational>, upto: usize) {
    // sum_{k<=n} C(n+1, k) B_k = 0, solved for B_n
    while table.len() <= upto {
        let n = table.len() as u64;
        if n == 0 {
            table.push(Rational::one());
            continue;
        }
        let mut acc = Rational::zero();
        for (k, b) in table.iter().enumerate() {
            if !b.is_zero() {
                acc += b * int(binomial(n + 1, k as u64));
            }
        }
        table.push(-acc / int(BigInt::from(n + 1)));
    }
}

/// Bernoulli number `B_n` with `B_1 = -1/2`.
///
/// Values up to the configured `bernoulli_max` are memoized process-wide;
/// larger indices are computed on a private copy of the table.
pub fn bernoulli(n: usize) -> Rational {
    if n >= 3 && n % 2 == 1 {
        return Rational::zero();
    }
    if let Some(b) = BERNOULLI_MEMO.read().unwrap().get(n) {
        return b.clone();
    }
    let cap = Limits::current().bernoulli_max;
    if n <= cap {
        let mut table = BERNOULLI_MEMO.write().unwrap();
        extend_bernoulli(&mut table, n);
        return table[n].clone();
    }
    let mut local = BERNOULLI_MEMO.read().unwrap().clone();
    extend_bernoulli(&mut local, n);
    local.swap_remove(n)
}

/// `zeta(k) / pi^k` for even `k >= 2`.
pub fn zeta_even_over_pi(k: u32) -> Result<Rational> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::domain(format!(
            "zeta(k)/pi^k is rational only for even k >= 2, got k = {k}"
        )));
    }
    let j = k / 2;
    let sign = if j % 2 == 1 { 1 } else { -1 };
    let two_pow = int(BigInt::from(2).pow(k));
    Ok(bernoulli(k as usize) * two_pow * int(sign) / int(factorial(k as u64) * 2))
}

/// `zeta(-k) = -B_{k+1} / (k + 1)` for `k >= 1`.
pub fn zeta_neg(k: u32) -> Rational {
    -bernoulli(k as usize + 1) / int(k + 1)
}

/// `frak_z(k) = (2 - 2^{2-k}) zeta(k)` for even `k`, zero for odd `k`.
///
/// These are the Taylor coefficients of `pi x / sin(pi x)`: the coefficient
/// of `x^k` is `frak_z(k)`. In particular `frak_z(0) = 1`, and negative
/// indices (absent coefficients) give zero.
pub fn frak_z(k: i64) -> PiScalar {
    if k < 0 || k % 2 != 0 {
        return PiScalar::zero();
    }
    if k == 0 {
        return PiScalar::one();
    }
    let factor = int(2) - rat(4, 1) / int(BigInt::from(2).pow(k as u32));
    let z = zeta_even_over_pi(k as u32).expect("k is even and positive");
    PiScalar::new(factor * z, k as u32)
}
