use std::fmt;

use num_bigint::BigInt;

use crate::arith::factorial;
use crate::error::{Error, Result};
use crate::limits::Limits;

/// A partition of the ground set `{0..n}` into nonempty blocks.
///
/// Stored as a restricted-growth string: `labels[i]` is the index of the
/// block containing `i`, blocks numbered in order of their minimum element.
/// `Display` prints the blocks 1-based, e.g. `{{1,2},{3}}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    labels: Vec<usize>,
    blocks: usize,
}

impl SetPartition {
    /// Canonicalizes an arbitrary labeling of the ground set.
    fn from_labels(raw: &[usize]) -> Self {
        let mut map: Vec<Option<usize>> = vec![None; raw.iter().max().map_or(0, |m| m + 1)];
        let mut next = 0;
        let labels = raw
            .iter()
            .map(|&r| {
                *map[r].get_or_insert_with(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect();
        SetPartition {
            labels,
            blocks: next,
        }
    }

    /// Builds a partition from explicit blocks of 0-based elements.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut raw = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::domain("set partition blocks must be nonempty"));
            }
            for &i in block {
                if i >= n || raw[i] != usize::MAX {
                    return Err(Error::domain(format!(
                        "blocks must be disjoint and cover 0..{n}"
                    )));
                }
                raw[i] = b;
            }
        }
        if raw.contains(&usize::MAX) {
            return Err(Error::domain(format!("blocks must cover 0..{n}")));
        }
        Ok(SetPartition::from_labels(&raw))
    }

    /// All singletons.
    pub fn discrete(n: usize) -> Self {
        SetPartition {
            labels: (0..n).collect(),
            blocks: n,
        }
    }

    /// The partition with a single block.
    pub fn one_block(n: usize) -> Self {
        SetPartition {
            labels: vec![0; n],
            blocks: usize::from(n > 0),
        }
    }

    /// Consecutive index ranges of the given sizes, e.g. `[2, 1]` gives
    /// `{{0,1},{2}}`.
    pub fn consecutive(sizes: &[usize]) -> Self {
        let labels = sizes
            .iter()
            .enumerate()
            .flat_map(|(b, &s)| std::iter::repeat_n(b, s))
            .collect::<Vec<_>>();
        SetPartition::from_labels(&labels)
    }

    pub fn ground_size(&self) -> usize {
        self.labels.len()
    }

    /// Number of blocks, `l(alpha)`.
    pub fn len(&self) -> usize {
        self.blocks
    }

    pub fn is_empty(&self) -> bool {
        self.blocks == 0
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn block_of(&self, i: usize) -> usize {
        self.labels[i]
    }

    /// Blocks in canonical order, each sorted.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (i, &b) in self.labels.iter().enumerate() {
            out[b].push(i);
        }
        out
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.blocks];
        for &b in &self.labels {
            out[b] += 1;
        }
        out
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                let items: Vec<String> = b.iter().map(|i| (i + 1).to_string()).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        write!(f, "{{{}}}", blocks.join(","))
    }
}

fn check_cap(n: usize) -> Result<()> {
    let cap = Limits::current().set_partition_n;
    if n > cap {
        return Err(Error::resource(format!(
            "set partitions of {n} elements exceed the cap of {cap}"
        )));
    }
    Ok(())
}

fn visit(
    labels: &mut Vec<usize>,
    n: usize,
    used: usize,
    exact: Option<usize>,
    f: &mut dyn FnMut(&[usize], usize),
) {
    let pos = labels.len();
    if pos == n {
        if exact.is_none_or(|k| k == used) {
            f(labels, used);
        }
        return;
    }
    let remaining_after = n - pos - 1;
    let top = match exact {
        Some(k) => used.min(k - 1),
        None => used,
    };
    for v in 0..=top {
        let now_used = used.max(v + 1);
        if let Some(k) = exact {
            if now_used + remaining_after < k {
                continue;
            }
        }
        labels.push(v);
        visit(labels, n, now_used, exact, f);
        labels.pop();
    }
}

/// Streams every set partition of `{0..n}` (or only those with exactly
/// `blocks` blocks) as a restricted-growth string plus its block count.
pub fn for_each_set_partition(
    n: usize,
    blocks: Option<usize>,
    mut f: impl FnMut(&[usize], usize),
) -> Result<()> {
    check_cap(n)?;
    if n == 0 {
        return Err(Error::domain("set partitions need a nonempty ground set"));
    }
    if let Some(k) = blocks {
        if k == 0 || k > n {
            return Ok(());
        }
    }
    let mut labels = Vec::with_capacity(n);
    labels.push(0);
    visit(&mut labels, n, 1, blocks, &mut f);
    Ok(())
}

/// All `Bell(n)` set partitions of `{0..n}` in restricted-growth order.
pub fn enum_set_partitions(n: usize) -> Result<Vec<SetPartition>> {
    let mut out = Vec::new();
    for_each_set_partition(n, None, |labels, blocks| {
        out.push(SetPartition {
            labels: labels.to_vec(),
            blocks,
        })
    })?;
    Ok(out)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn same_ground(a: &SetPartition, b: &SetPartition) -> Result<()> {
    if a.ground_size() != b.ground_size() {
        return Err(Error::domain(format!(
            "set partitions of different ground sets ({} vs {})",
            a.ground_size(),
            b.ground_size()
        )));
    }
    Ok(())
}

/// Number of blocks of the smallest common coarsening of two labelings.
fn meet_len(a: &[usize], b: &[usize], a_blocks: usize, b_blocks: usize) -> usize {
    // union-find over the blocks of `a`, merged through the blocks of `b`
    let mut parent: Vec<usize> = (0..a_blocks).collect();
    let mut rep_of_b = vec![usize::MAX; b_blocks];
    let mut count = a_blocks;
    for (i, &bb) in b.iter().enumerate() {
        let ab = a[i];
        if rep_of_b[bb] == usize::MAX {
            rep_of_b[bb] = ab;
        } else {
            let x = find(&mut parent, rep_of_b[bb]);
            let y = find(&mut parent, ab);
            if x != y {
                parent[x] = y;
                count -= 1;
            }
        }
    }
    count
}

/// `a ^ b`: the smallest partition whose blocks are unions of blocks of
/// `a` and also unions of blocks of `b` (connected components of the
/// combined block relation).
pub fn meet(a: &SetPartition, b: &SetPartition) -> Result<SetPartition> {
    same_ground(a, b)?;
    let mut parent: Vec<usize> = (0..a.blocks).collect();
    let mut rep_of_b = vec![usize::MAX; b.blocks];
    for (i, &bb) in b.labels.iter().enumerate() {
        let ab = a.labels[i];
        if rep_of_b[bb] == usize::MAX {
            rep_of_b[bb] = ab;
        } else {
            let x = find(&mut parent, rep_of_b[bb]);
            let y = find(&mut parent, ab);
            parent[x] = y;
        }
    }
    let raw: Vec<usize> = a.labels.iter().map(|&ab| find(&mut parent, ab)).collect();
    Ok(SetPartition::from_labels(&raw))
}

/// `l(a) + l(b) - l(a ^ b) == n`.
pub fn is_transversal(a: &SetPartition, b: &SetPartition) -> Result<bool> {
    same_ground(a, b)?;
    let m = meet_len(&a.labels, &b.labels, a.blocks, b.blocks);
    Ok(a.blocks + b.blocks == a.ground_size() + m)
}

/// Transversal and `a ^ rho` is the one-block partition.
pub fn is_complementary(a: &SetPartition, rho: &SetPartition) -> Result<bool> {
    same_ground(a, rho)?;
    let n = a.ground_size();
    Ok(a.blocks + rho.blocks == n + 1
        && meet_len(&a.labels, &rho.labels, a.blocks, rho.blocks) == 1)
}

/// Every `alpha` complementary to `rho`. Candidates are restricted to
/// `n - l(rho) + 1` blocks before the meet is tested.
pub fn enum_complementary(rho: &SetPartition) -> Result<Vec<SetPartition>> {
    let n = rho.ground_size();
    let target = n + 1 - rho.blocks;
    let mut out = Vec::new();
    for_each_set_partition(n, Some(target), |labels, blocks| {
        if meet_len(labels, &rho.labels, blocks, rho.blocks) == 1 {
            out.push(SetPartition {
                labels: labels.to_vec(),
                blocks,
            });
        }
    })?;
    Ok(out)
}

/// `mu(alpha, 1) = (-1)^{l-1} (l-1)!` on the lattice of set partitions.
pub fn mobius_coeff(l: usize) -> BigInt {
    assert!(l >= 1, "a set partition has at least one block");
    let f = factorial(l as u64 - 1);
    if l % 2 == 1 {
        f
    } else {
        -f
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeMap, HashSet};

    fn sp(n: usize, blocks: &[&[usize]]) -> SetPartition {
        let blocks: Vec<Vec<usize>> = blocks.iter().map(|b| b.to_vec()).collect();
        SetPartition::from_blocks(n, &blocks).unwrap()
    }

    /// Bell numbers from the Bell triangle.
    fn bell_triangle(max: usize) -> Vec<u64> {
        let mut bells = vec![1u64];
        let mut row = vec![1u64];
        for _ in 0..max {
            let mut next = vec![*row.last().unwrap()];
            for v in &row {
                let last = *next.last().unwrap();
                next.push(last + v);
            }
            bells.push(next[0]);
            row = next;
        }
        bells
    }

    #[test]
    fn bell_counts() {
        let bells = bell_triangle(10);
        assert_eq!(bells[3], 5);
        assert_eq!(bells[4], 15);
        for (n, &bell) in bells.iter().enumerate().take(10).skip(1) {
            let all = enum_set_partitions(n).unwrap();
            assert_eq!(all.len() as u64, bell, "n = {n}");
            let distinct: HashSet<_> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
        }
    }

    #[test]
    fn fixed_block_count_matches_filter() {
        for n in 1..=7 {
            let all = enum_set_partitions(n).unwrap();
            for k in 1..=n {
                let mut got = Vec::new();
                for_each_set_partition(n, Some(k), |l, b| got.push((l.to_vec(), b))).unwrap();
                let want = all.iter().filter(|a| a.len() == k).count();
                assert_eq!(got.len(), want);
                assert!(got.iter().all(|(_, b)| *b == k));
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(enum_set_partitions(13), Err(Error::Resource(_))));
        assert!(matches!(enum_set_partitions(0), Err(Error::Domain(_))));
    }

    #[test]
    fn meet_examples() {
        let a = sp(3, &[&[0, 1], &[2]]);
        let b = sp(3, &[&[0], &[1, 2]]);
        assert_eq!(meet(&a, &b).unwrap(), SetPartition::one_block(3));
        assert_eq!(meet(&a, &a).unwrap(), a);
        assert_eq!(meet(&SetPartition::discrete(3), &b).unwrap(), b);
        assert!(matches!(
            meet(&a, &SetPartition::discrete(4)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn transversal_examples() {
        let a = sp(3, &[&[0, 2], &[1]]);
        let rho = sp(3, &[&[0, 1], &[2]]);
        assert!(is_transversal(&a, &rho).unwrap());
        assert!(
            is_transversal(&SetPartition::discrete(5), &sp(5, &[&[0, 3], &[1, 2, 4]])).unwrap()
        );
        let c = sp(4, &[&[0, 1], &[2, 3]]);
        assert!(!is_transversal(&c, &c).unwrap());
    }

    #[test]
    fn complementary_examples() {
        let rho = sp(3, &[&[0, 1], &[2]]);
        let got = enum_complementary(&rho).unwrap();
        assert_eq!(got, vec![sp(3, &[&[0, 2], &[1]]), sp(3, &[&[0], &[1, 2]])]);
        for a in &got {
            assert!(is_complementary(a, &rho).unwrap());
        }
        assert_eq!(
            enum_complementary(&SetPartition::one_block(3)).unwrap(),
            vec![SetPartition::discrete(3)]
        );
        assert_eq!(
            enum_complementary(&SetPartition::discrete(2)).unwrap(),
            vec![SetPartition::one_block(2)]
        );
        assert_eq!(
            enum_complementary(&SetPartition::discrete(4)).unwrap(),
            vec![SetPartition::one_block(4)]
        );
    }

    #[test]
    fn transversality_bound() {
        for n in 1..=6 {
            let all = enum_set_partitions(n).unwrap();
            for a in &all {
                for b in &all {
                    let m = meet(a, b).unwrap();
                    assert!(a.len() + b.len() <= n + m.len());
                }
            }
        }
    }

    #[test]
    fn complementary_count_depends_on_block_sizes_only() {
        let n = 6;
        let mut by_shape: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        for rho in enum_set_partitions(n).unwrap() {
            let mut shape = rho.block_sizes();
            shape.sort_unstable();
            let count = enum_complementary(&rho).unwrap().len();
            let prev = *by_shape.entry(shape).or_insert(count);
            assert_eq!(prev, count);
        }
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius_coeff(1), BigInt::from(1));
        assert_eq!(mobius_coeff(2), BigInt::from(-1));
        assert_eq!(mobius_coeff(4), BigInt::from(-6));
    }

    #[test]
    fn display_is_one_based() {
        assert_eq!(sp(3, &[&[0, 2], &[1]]).to_string(), "{{1,3},{2}}");
        assert_eq!(SetPartition::consecutive(&[2, 1]), sp(3, &[&[0, 1], &[2]]));
    }
}
