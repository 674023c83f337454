//! Weighted counts of branched coverings of the torus.
//!
//! `Cov_d(m)` counts degree-`d` coverings (possibly disconnected) with one
//! branch point of monodromy type "single `m_i`-cycle" over each of the
//! labeled points `z_1..z_s`, every covering weighted by `1/|Aut|`. The
//! Burnside formula gives it as a sum over partitions `lambda` of `d` of
//! products of central characters. Dividing out `(q)_inf` removes unramified
//! components and a Moebius inversion over set partitions of the branch
//! points isolates connected coverings.

mod brute;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{fraction_string, int, Rational};
use crate::characters::central_char_f;
use crate::error::{Error, Result};
use crate::partitions::{enum_int_partitions, for_each_set_partition, mobius_coeff};
pub use crate::series::QSeries;

pub use brute::brute_force_hom_count;

/// Cycle lengths of the single nontrivial cycle over each labeled branch
/// point. Order is kept as given.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoverProfile {
    m: Vec<u32>,
}

impl CoverProfile {
    pub fn new(m: Vec<u32>) -> Result<Self> {
        if let Some(bad) = m.iter().find(|&&x| x < 2) {
            return Err(Error::domain(format!(
                "branch profile entries must be >= 2, got {bad}"
            )));
        }
        Ok(CoverProfile { m })
    }

    pub fn entries(&self) -> &[u32] {
        &self.m
    }

    pub fn len(&self) -> usize {
        self.m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.m.is_empty()
    }

    /// `|m| = sum m_i`.
    pub fn total(&self) -> u32 {
        self.m.iter().sum()
    }

    fn sorted(&self) -> CoverProfile {
        let mut m = self.m.clone();
        m.sort_unstable_by(|a, b| b.cmp(a));
        CoverProfile { m }
    }

    fn select(&self, idx: &[usize]) -> CoverProfile {
        CoverProfile {
            m: idx.iter().map(|&i| self.m[i]).collect(),
        }
    }
}

impl fmt::Display for CoverProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.m.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for CoverProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(CoverProfile::default());
        }
        let m = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad profile entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        CoverProfile::new(m)
    }
}

/// `Cov_d(m) = sum_{|lambda| = d} prod_i f_{m_i}(lambda)`.
pub fn cov_d(profile: &CoverProfile, d: u32) -> Rational {
    let terms: Vec<Rational> = enum_int_partitions(d)
        .par_iter()
        .map(|lambda| {
            let mut acc = Rational::one();
            for &m in profile.entries() {
                if acc.is_zero() {
                    break;
                }
                acc *= central_char_f(m, lambda);
            }
            acc
        })
        .collect();
    terms.into_iter().sum()
}

/// `(q)_inf = prod_{n >= 1} (1 - q^n)` from the pentagonal number theorem.
pub fn euler_series(order: usize) -> QSeries {
    let mut coeffs = vec![Rational::zero(); order + 1];
    coeffs[0] = Rational::one();
    let mut k = 1usize;
    loop {
        let g1 = k * (3 * k - 1) / 2;
        if g1 > order {
            break;
        }
        let sign = if k % 2 == 1 { -1 } else { 1 };
        coeffs[g1] += int(sign);
        let g2 = k * (3 * k + 1) / 2;
        if g2 <= order {
            coeffs[g2] += int(sign);
        }
        k += 1;
    }
    QSeries::new(coeffs)
}

/// `sum_d Cov_d(m) q^d` up to `q^order`.
pub fn cov_series(profile: &CoverProfile, order: usize) -> QSeries {
    QSeries::new((0..=order as u32).map(|d| cov_d(profile, d)).collect())
}

/// Coverings without unramified components: `(q)_inf * Cov(m)`.
pub fn cov_prime_series(profile: &CoverProfile, order: usize) -> QSeries {
    &euler_series(order) * &cov_series(profile, order)
}

/// Connected coverings, by Moebius inversion over set partitions of the
/// branch points:
/// `Cov°(m) = sum_alpha (-1)^{l-1} (l-1)! prod_k Cov'(m_{alpha_k})`.
pub fn cov_connected_series(profile: &CoverProfile, order: usize) -> Result<QSeries> {
    let s = profile.len();
    if s == 0 {
        return Err(Error::domain(
            "connected counts need at least one branch point",
        ));
    }
    // Cov' is symmetric in the profile, so sub-profiles are memoized sorted
    let mut memo: HashMap<CoverProfile, QSeries> = HashMap::new();
    let mut blocks_seen: Vec<Vec<Vec<usize>>> = Vec::new();
    for_each_set_partition(s, None, |labels, blocks| {
        let mut bl = vec![Vec::new(); blocks];
        for (i, &b) in labels.iter().enumerate() {
            bl[b].push(i);
        }
        blocks_seen.push(bl);
    })?;
    let mut total = QSeries::zero(order);
    for blocks in blocks_seen {
        let mut prod = QSeries::one(order);
        for block in &blocks {
            let key = profile.select(block).sorted();
            let factor = memo
                .entry(key.clone())
                .or_insert_with(|| cov_prime_series(&key, order));
            prod = &prod * factor;
        }
        total = &total + &prod.scale(&int(mobius_coeff(blocks.len())));
    }
    Ok(total)
}

/// `(|m| + 1) D^{-|m|-1} sum_{d <= D} C_d(m)` with `C_d` the connected
/// counts; tends to `c(m)` as `D` grows.
pub fn asymptotic_ratio(profile: &CoverProfile, max_degree: u32) -> Result<Rational> {
    if max_degree == 0 {
        return Err(Error::domain("asymptotic ratio needs D >= 1"));
    }
    let connected = cov_connected_series(profile, max_degree as usize)?;
    let partial: Rational = connected.coeffs()[1..].iter().sum();
    let exp = profile.total() + 1;
    let scale = Rational::new(
        (profile.total() + 1).into(),
        num_bigint::BigInt::from(max_degree).pow(exp),
    );
    Ok(partial * scale)
}

/// Which coverings a count includes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountKind {
    All,
    NoUnramified,
    Connected,
}

impl fmt::Display for CountKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CountKind::All => "all",
            CountKind::NoUnramified => "no-unramified",
            CountKind::Connected => "connected",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCountRecord {
    pub profile: CoverProfile,
    pub d: u32,
    pub count: Rational,
    pub kind: CountKind,
}

impl CoverCountRecord {
    pub const CSV_HEADER: &'static str = "profile;d;kind;count";

    /// `profile;d;kind;count` with the count as `p/q`.
    pub fn csv_row(&self) -> String {
        format!(
            "{};{};{};{}/{}",
            self.profile,
            self.d,
            self.kind,
            self.count.numer(),
            self.count.denom()
        )
    }

    pub fn count_string(&self) -> String {
        fraction_string(&self.count)
    }
}

/// Counts of the requested kind for `d = 0..=max_degree`.
pub fn cover_count_records(
    profile: &CoverProfile,
    max_degree: u32,
    kind: CountKind,
) -> Result<Vec<CoverCountRecord>> {
    let order = max_degree as usize;
    let series = match kind {
        CountKind::All => cov_series(profile, order),
        CountKind::NoUnramified => cov_prime_series(profile, order),
        CountKind::Connected => cov_connected_series(profile, order)?,
    };
    Ok(series
        .coeffs()
        .iter()
        .enumerate()
        .map(|(d, c)| CoverCountRecord {
            profile: profile.clone(),
            d: d as u32,
            count: c.clone(),
            kind,
        })
        .collect())
}
