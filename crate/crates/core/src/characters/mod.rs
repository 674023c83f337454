//! Irreducible characters of symmetric groups and the central characters
//! `f_m(lambda) = #C chi^lambda(C) / dim lambda` for the class `C` of an
//! `m`-cycle with fixed points.

mod cache;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{factorial, int, Rational};
use crate::error::{Error, Result};
use crate::partitions::IntPartition;

pub use cache::{CharTableCache, CharacterKey, CACHE_ENV, CACHE_FORMAT_VERSION};

/// `dim lambda` by the hook length formula.
pub fn dimension(lambda: &IntPartition) -> BigInt {
    let conj = lambda.conjugate();
    let mut hooks = BigInt::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row as usize {
            let arm = row as usize - j - 1;
            let leg = conj.parts()[j] as usize - i - 1;
            hooks *= arm + leg + 1;
        }
    }
    factorial(lambda.size() as u64) / hooks
}

/// Beta-set (first-column hook lengths) of a partition with `len` rows.
fn beta_set(lambda: &IntPartition) -> Vec<u32> {
    let len = lambda.len() as u32;
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + len - 1 - i as u32)
        .collect()
}

fn from_beta_set(mut beta: Vec<u32>) -> IntPartition {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let len = beta.len() as u32;
    let parts: Vec<u32> = beta
        .iter()
        .enumerate()
        .map(|(i, &b)| b + 1 + i as u32 - len)
        .filter(|&p| p > 0)
        .collect();
    IntPartition::from_sorted(parts)
}

/// Every way to strip a rim hook of length `r` from `lambda`, as
/// `(remaining partition, (-1)^{height})`.
fn strip_rim_hooks(lambda: &IntPartition, r: u32) -> Vec<(IntPartition, i32)> {
    let beta = beta_set(lambda);
    let mut out = Vec::new();
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&c| c > b - r && c < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut next = beta.clone();
        next[idx] = b - r;
        out.push((from_beta_set(next), sign));
    }
    out
}

fn character_uncached(lambda: &IntPartition, rho: &IntPartition) -> BigInt {
    let Some(&first) = rho.parts().first() else {
        return BigInt::one();
    };
    if first == 1 {
        return dimension(lambda);
    }
    let rest = IntPartition::from_sorted(rho.parts()[1..].to_vec());
    let mut acc = BigInt::zero();
    for (mu, sign) in strip_rim_hooks(lambda, first) {
        let v = character(&mu, &rest).expect("sizes match after stripping");
        if sign > 0 {
            acc += v;
        } else {
            acc -= v;
        }
    }
    acc
}

/// `chi^lambda(rho)` by the Murnaghan-Nakayama rule, largest part of `rho`
/// first. Memoized in the process-wide [`CharTableCache`].
pub fn character(lambda: &IntPartition, rho: &IntPartition) -> Result<BigInt> {
    if lambda.size() != rho.size() {
        return Err(Error::domain(format!(
            "character needs |lambda| = |rho|, got {lambda} and {rho}"
        )));
    }
    let key = CharacterKey {
        lambda: lambda.clone(),
        rho: rho.clone(),
    };
    let cache = CharTableCache::global();
    if let Some(v) = cache.get(&key) {
        return Ok(v);
    }
    let v = character_uncached(lambda, rho);
    cache.insert(key, v.clone());
    Ok(v)
}

/// Size of the class of one `m`-cycle and `d - m` fixed points in `S(d)`.
pub fn m_cycle_class_size(d: u32, m: u32) -> BigInt {
    if m > d {
        return BigInt::zero();
    }
    factorial(d as u64) / (factorial((d - m) as u64) * m)
}

/// The cycle type `(m, 1^{d-m})`.
pub fn m_cycle_type(d: u32, m: u32) -> IntPartition {
    let mut parts = vec![m];
    parts.extend(std::iter::repeat_n(1, (d - m) as usize));
    IntPartition::from_sorted(parts)
}

/// Central character `f_m(lambda)`; zero when `m > |lambda|`.
pub fn central_char_f(m: u32, lambda: &IntPartition) -> Rational {
    let d = lambda.size();
    if m > d {
        return Rational::zero();
    }
    let chi = character(lambda, &m_cycle_type(d, m)).expect("sizes agree by construction");
    int(m_cycle_class_size(d, m) * chi) / int(dimension(lambda))
}
