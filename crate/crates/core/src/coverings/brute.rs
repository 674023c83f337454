//! Direct enumeration of monodromy tuples in `S(d)`.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::CoverProfile;
use crate::arith::{factorial, Rational};
use crate::error::{Error, Result};
use crate::limits::Limits;

type Perm = Vec<u8>;

fn all_perms(d: usize) -> Vec<Perm> {
    fn go(prefix: &mut Perm, used: &mut [bool], out: &mut Vec<Perm>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v as u8);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(d), &mut vec![false; d], &mut out);
    out
}

/// `(p * q)(i) = p(q(i))`.
fn compose(p: &[u8], q: &[u8]) -> Perm {
    q.iter().map(|&i| p[i as usize]).collect()
}

fn inverse(p: &[u8]) -> Perm {
    let mut out = vec![0u8; p.len()];
    for (i, &v) in p.iter().enumerate() {
        out[v as usize] = i as u8;
    }
    out
}

fn cycle_lengths(p: &[u8]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i] as usize;
            len += 1;
        }
        out.push(len);
    }
    out
}

/// Permutations with one `m`-cycle and `d - m` fixed points.
fn m_cycle_class(perms: &[Perm], m: usize) -> Vec<usize> {
    perms
        .iter()
        .enumerate()
        .filter(|(_, p)| {
            let lens = cycle_lengths(p);
            lens.iter().filter(|&&l| l == m).count() == 1 && lens.iter().all(|&l| l == m || l == 1)
        })
        .map(|(i, _)| i)
        .collect()
}

fn is_transitive(d: usize, gens: &[&[u8]]) -> bool {
    let mut parent: Vec<usize> = (0..d).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = d;
    for g in gens {
        for (i, &j) in g.iter().enumerate() {
            let (x, y) = (find(&mut parent, i), find(&mut parent, j as usize));
            if x != y {
                parent[x] = y;
                components -= 1;
            }
        }
    }
    components == 1
}

/// `#{(a, b, g_1..g_s) : a b a^-1 b^-1 g_1 ... g_s = 1, g_i in C_i} / d!`,
/// with `C_i` the class of one `m_i`-cycle. With `connected_only`, only
/// tuples generating a transitive subgroup are counted, which weights each
/// connected covering by `1/|Aut|`.
pub fn brute_force_hom_count(
    profile: &CoverProfile,
    d: u32,
    connected_only: bool,
) -> Result<Rational> {
    let cap = Limits::current().brute_force_d;
    if d as usize > cap {
        return Err(Error::resource(format!(
            "brute-force enumeration in S({d}) exceeds the degree cap of {cap}"
        )));
    }
    if d == 0 {
        return Err(Error::domain("brute-force enumeration needs degree d >= 1"));
    }
    let d = d as usize;
    let perms = all_perms(d);
    let index: HashMap<&[u8], usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i))
        .collect();

    // pairs (a, b) grouped by their commutator
    let mut by_commutator: Vec<Vec<(usize, usize)>> = vec![Vec::new(); perms.len()];
    let inverses: Vec<Perm> = perms.iter().map(|p| inverse(p)).collect();
    for (ai, a) in perms.iter().enumerate() {
        for (bi, b) in perms.iter().enumerate() {
            let c = compose(&compose(a, b), &compose(&inverses[ai], &inverses[bi]));
            by_commutator[index[c.as_slice()]].push((ai, bi));
        }
    }

    let classes: Vec<Vec<usize>> = profile
        .entries()
        .iter()
        .map(|&m| {
            if m as usize > d {
                Vec::new()
            } else {
                m_cycle_class(&perms, m as usize)
            }
        })
        .collect();
    if classes.iter().any(Vec::is_empty) {
        return Ok(Rational::from_integer(0.into()));
    }

    let identity: Perm = (0..d as u8).collect();
    let mut count = BigInt::from(0);
    let mut choice = vec![0usize; classes.len()];
    loop {
        let product = choice
            .iter()
            .zip(&classes)
            .fold(identity.clone(), |acc, (&c, class)| {
                compose(&acc, &perms[class[c]])
            });
        let target = index[inverse(&product).as_slice()];
        let pairs = &by_commutator[target];
        if connected_only {
            let gs: Vec<&[u8]> = choice
                .iter()
                .zip(&classes)
                .map(|(&c, class)| perms[class[c]].as_slice())
                .collect();
            for &(a, b) in pairs {
                let mut gens = vec![perms[a].as_slice(), perms[b].as_slice()];
                gens.extend(&gs);
                if is_transitive(d, &gens) {
                    count += 1;
                }
            }
        } else {
            count += pairs.len();
        }

        // odometer over the class product
        let mut k = 0;
        loop {
            if k == choice.len() {
                return Ok(Rational::new(count, factorial(d as u64)));
            }
            choice[k] += 1;
            if choice[k] < classes[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}
