use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::arith::factorial;
use crate::error::{Error, Result};

/// A partition of an integer: a weakly decreasing tuple of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPartition {
    parts: Vec<u32>,
}

impl IntPartition {
    /// Sorts the parts into decreasing order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::domain("partition parts must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(IntPartition { parts })
    }

    pub(crate) fn from_sorted(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(!parts.contains(&0));
        IntPartition { parts }
    }

    pub fn empty() -> Self {
        IntPartition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|lambda| + l(lambda)`.
    pub fn weight(&self) -> u32 {
        self.size() + self.len() as u32
    }

    /// The transposed (dual) partition.
    pub fn conjugate(&self) -> IntPartition {
        let first = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=first)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        IntPartition { parts }
    }

    /// `(part, multiplicity)` pairs, largest part first.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, c)) if *q == p => *c += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Product of the factorials of the multiplicities.
    pub fn multiplicity_factorial(&self) -> BigInt {
        self.multiplicities()
            .iter()
            .fold(BigInt::one(), |acc, &(_, c)| acc * factorial(c as u64))
    }

    /// Number of permutations with this cycle type.
    pub fn class_size(&self) -> BigInt {
        let mut denom = self.multiplicity_factorial();
        for &p in &self.parts {
            denom *= p;
        }
        factorial(self.size() as u64) / denom
    }

    /// `+1` for even cycle types, `-1` for odd ones.
    pub fn sign(&self) -> i32 {
        let transpositions: u32 = self.parts.iter().map(|p| p - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for IntPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for IntPartition {
    type Err = Error;

    /// Comma-separated parts, e.g. `"3,1"`. The empty string is the empty
    /// partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Ok(IntPartition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("not a nonnegative integer: {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        IntPartition::new(parts)
    }
}

impl Serialize for IntPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

fn push_partitions(rest: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<IntPartition>) {
    if rest == 0 {
        out.push(IntPartition::from_sorted(prefix.clone()));
        return;
    }
    for p in (1..=max_part.min(rest)).rev() {
        prefix.push(p);
        push_partitions(rest - p, p, prefix, out);
        prefix.pop();
    }
}

/// All partitions of `d`, in reverse lexicographic order (`(d)` first).
pub fn enum_int_partitions(d: u32) -> Vec<IntPartition> {
    let mut out = Vec::new();
    push_partitions(d, d, &mut Vec::new(), &mut out);
    out
}

fn push_with_length(
    rest: u32,
    max_part: u32,
    slots: usize,
    prefix: &mut Vec<u32>,
    out: &mut Vec<IntPartition>,
) {
    if slots == 0 {
        if rest == 0 {
            out.push(IntPartition::from_sorted(prefix.clone()));
        }
        return;
    }
    // every remaining slot needs at least 1 and at most `p`
    let hi = max_part.min(rest.saturating_sub(slots as u32 - 1));
    for p in (1..=hi).rev() {
        if (p as u64) * (slots as u64) < rest as u64 {
            break;
        }
        prefix.push(p);
        push_with_length(rest - p, p, slots - 1, prefix, out);
        prefix.pop();
    }
}

/// All partitions `lambda` with `|lambda| + l(lambda) = w`, grouped by
/// increasing length.
pub fn enum_partitions_of_weight(w: u32) -> Vec<IntPartition> {
    let mut out = Vec::new();
    for len in 1..=(w / 2) as usize {
        let size = w - len as u32;
        push_with_length(size, size, len, &mut Vec::new(), &mut out);
    }
    out
}
