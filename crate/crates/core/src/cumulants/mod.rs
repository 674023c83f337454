//! Elementary cumulants, the Wick-type reduction of cumulants of power
//! sums, leading constants `c(m)` of connected covering counts, and stratum
//! volumes.

mod elementary;
mod oracle;
mod volume;
mod wick;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use elementary::elementary_cumulant;
pub use oracle::{
    elementary_cumulant_series_oracle, t_poly_closed_form, t_poly_forest_oracle, t_poly_forest_sum,
};
pub use volume::{volume, volume_with, Route, StratumSpec, VolumeOptions, VolumeResult};
pub use wick::{c_const, c_simple, f_cumulant_leading, wick_leading, WickGroups, WickValue};

/// Multiset of positive integers indexing an elementary cumulant
/// `<<m_1, ..., m_n>>`, stored in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CumulantKey {
    parts: Vec<u32>,
}

impl CumulantKey {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::domain("a cumulant key needs at least one entry"));
        }
        if parts.contains(&0) {
            return Err(Error::domain("cumulant key entries must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CumulantKey { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Power of `pi` carried by a nonzero cumulant: `|m| - n + 2`.
    pub fn pi_degree(&self) -> u32 {
        self.total() + 2 - self.len() as u32
    }
}

impl fmt::Display for CumulantKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "<<{}>>", parts.join(","))
    }
}

impl FromStr for CumulantKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        CumulantKey::new(parts)
    }
}
