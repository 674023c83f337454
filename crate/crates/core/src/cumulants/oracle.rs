//! Independent recomputations used to cross-check the elementary cumulant
//! formula: a direct generating-series extraction and the spanning-forest
//! description of the `T` polynomials.

use num_traits::{One, Zero};

use super::CumulantKey;
use crate::arith::{factorial, int, PiScalar, PiSum, Rational};
use crate::error::{Error, Result};
use crate::partitions::{enum_set_partitions, SetPartition};
use crate::poly::Poly;

const SERIES_ORACLE_MAX_N: usize = 4;
const FOREST_ORACLE_MAX_N: usize = 5;

/// Taylor coefficients of `u / sin(u)` up to `u^deg`, obtained by inverting
/// the series of `sin(u) / u`.
fn inverse_sinc(deg: usize) -> Vec<Rational> {
    let mut sinc = vec![Rational::zero(); deg + 1];
    for k in (0..=deg).step_by(2) {
        let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
        sinc[k] = int(sign) / int(factorial(k as u64 + 1));
    }
    let mut inv = vec![Rational::zero(); deg + 1];
    inv[0] = Rational::one();
    for j in 1..=deg {
        let mut acc = Rational::zero();
        for i in 1..=j {
            acc += &sinc[i] * &inv[j - i];
        }
        inv[j] = -acc;
    }
    inv
}

/// `sum_j z_j pi^j y^{j + shift}` with `y` the linear form on `vars`;
/// `pi` is the last variable of the ambient ring.
fn zeta_block(bound: &[u32], vars: &[usize], shift: i64, coeffs: &[Rational]) -> Poly {
    let nv = bound.len();
    let y = Poly::linear_sum(bound.to_vec(), vars);
    let mut out = Poly::zero(bound.to_vec());
    let mut power = Poly::constant(bound.to_vec(), Rational::one());
    let mut power_exp = 0i64;
    for (j, c) in coeffs.iter().enumerate() {
        let e = j as i64 + shift;
        if e < 0 || c.is_zero() {
            continue;
        }
        while power_exp < e {
            power = &power * &y;
            power_exp += 1;
        }
        let mut pi = vec![0; nv];
        pi[nv - 1] = j as u32;
        let mut pi_term = Poly::zero(bound.to_vec());
        pi_term.add_term(pi, c.clone());
        out = &out + &(&power * &pi_term);
    }
    out
}

/// Recomputes `<<m>>` as `m! [x^m] sum_alpha S_alpha(x) T_alpha(x)` with
/// all series expanded explicitly and `pi` carried as a formal variable.
/// Restricted to at most four entries.
pub fn elementary_cumulant_series_oracle(key: &CumulantKey) -> Result<PiScalar> {
    let m = key.parts();
    let n = m.len();
    if n > SERIES_ORACLE_MAX_N {
        return Err(Error::resource(format!(
            "series oracle is limited to {SERIES_ORACLE_MAX_N} entries, got {n}"
        )));
    }
    let total = key.total();
    let mut bound: Vec<u32> = m.to_vec();
    bound.push(total + 2);
    let coeffs = inverse_sinc(total as usize + 2);
    let all: Vec<usize> = (0..n).collect();

    let mut acc = Poly::zero(bound.clone());
    for alpha in enum_set_partitions(n)? {
        let l = alpha.len();
        let term = if l == 1 {
            zeta_block(&bound, &all, n as i64 - 2, &coeffs)
        } else {
            let sign = if l % 2 == 1 { 1 } else { -1 };
            let mut t = Poly::linear_sum(bound.clone(), &all)
                .pow(l as u32 - 2)
                .scale(&int(sign));
            for block in alpha.blocks() {
                let b = zeta_block(&bound, &block, block.len() as i64 - 1, &coeffs);
                t = &t * &b;
            }
            t
        };
        acc = &acc + &term;
    }

    let scale: Rational = m.iter().map(|&k| int(factorial(k as u64))).product();
    let mut sum = PiSum::zero();
    for (e, c) in acc.terms() {
        if e[..n] == *m {
            sum.add_term(&PiScalar::new(c * &scale, e[n]));
        }
    }
    sum.to_homogeneous().ok_or_else(|| {
        Error::Verification(format!(
            "series expansion of {key} is not pi-homogeneous: {sum}"
        ))
    })
}

fn sign(l: usize) -> Rational {
    int(if l % 2 == 1 { 1 } else { -1 })
}

/// `T_rho = (-1)^{l-1} (x_1 + ... + x_n)^{l-2} prod_k y_k`, with `y_k` the
/// sum of the variables in block `k` and `T_rho = 1` for one block.
pub fn t_poly_closed_form(rho: &SetPartition) -> Poly {
    let n = rho.ground_size();
    let bound = vec![n as u32; n];
    let l = rho.len();
    if l == 1 {
        return Poly::constant(bound, Rational::one());
    }
    let all: Vec<usize> = (0..n).collect();
    let mut t = Poly::linear_sum(bound.clone(), &all)
        .pow(l as u32 - 2)
        .scale(&sign(l));
    for block in rho.blocks() {
        t = &t * &Poly::linear_sum(bound.clone(), &block);
    }
    t
}

/// `(-1)^{l-1} sum_F prod_{(i,j) in F} x_i x_j`, over edge sets `F` of the
/// complete graph on `{0..n}` that project to a spanning tree of the
/// quotient by `rho`.
pub fn t_poly_forest_sum(rho: &SetPartition) -> Poly {
    let n = rho.ground_size();
    let bound = vec![n as u32; n];
    let l = rho.len();
    let labels = rho.labels();
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| labels[i] != labels[j])
        .collect();
    let mut out = Poly::zero(bound);
    let mut chosen = Vec::with_capacity(l);
    choose_edges(&edges, 0, l - 1, &mut chosen, &mut |set| {
        let mut parent: Vec<usize> = (0..l).collect();
        for &(i, j) in set {
            let a = root(&mut parent, labels[i]);
            let b = root(&mut parent, labels[j]);
            if a == b {
                return;
            }
            parent[a] = b;
        }
        let mut e = vec![0; n];
        for &(i, j) in set {
            e[i] += 1;
            e[j] += 1;
        }
        out.add_term(e, sign(l));
    });
    out
}

fn root(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        x = parent[x];
    }
    x
}

type EdgeVisitor<'a> = dyn FnMut(&[(usize, usize)]) + 'a;

fn choose_edges(
    edges: &[(usize, usize)],
    start: usize,
    left: usize,
    chosen: &mut Vec<(usize, usize)>,
    f: &mut EdgeVisitor<'_>,
) {
    if left == 0 {
        f(chosen);
        return;
    }
    for i in start..edges.len() {
        if edges.len() - i < left {
            break;
        }
        chosen.push(edges[i]);
        choose_edges(edges, i + 1, left - 1, chosen, f);
        chosen.pop();
    }
}

/// Whether the closed form and the spanning-forest sum agree for `rho`.
/// Restricted to ground sets of at most five elements.
pub fn t_poly_forest_oracle(rho: &SetPartition) -> Result<bool> {
    if rho.ground_size() > FOREST_ORACLE_MAX_N {
        return Err(Error::resource(format!(
            "forest oracle is limited to n <= {FOREST_ORACLE_MAX_N}"
        )));
    }
    Ok(t_poly_closed_form(rho) == t_poly_forest_sum(rho))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frak_z, rat};
    use crate::cumulants::elementary_cumulant;

    #[test]
    fn inverse_sinc_matches_frak_z() {
        let inv = inverse_sinc(12);
        for (j, c) in inv.iter().enumerate() {
            assert_eq!(c, frak_z(j as i64).coeff(), "j={j}");
        }
    }

    #[test]
    fn series_oracle_small_keys() {
        for parts in [
            vec![1],
            vec![2, 2],
            vec![4, 2],
            vec![3, 1, 1],
            vec![2, 2, 2, 1],
        ] {
            let key = CumulantKey::new(parts).unwrap();
            assert_eq!(
                elementary_cumulant_series_oracle(&key).unwrap(),
                elementary_cumulant(&key).unwrap(),
                "{key}"
            );
        }
        let key = CumulantKey::new(vec![2, 2]).unwrap();
        assert_eq!(
            elementary_cumulant_series_oracle(&key).unwrap(),
            PiScalar::new(rat(16, 45), 4)
        );
    }

    #[test]
    fn forest_identity_small() {
        for n in 1..=4 {
            for rho in enum_set_partitions(n).unwrap() {
                assert!(t_poly_forest_oracle(&rho).unwrap(), "{rho}");
            }
        }
    }

    #[test]
    fn oracle_caps() {
        let key = CumulantKey::new(vec![1; 5]).unwrap();
        assert!(elementary_cumulant_series_oracle(&key).is_err());
        assert!(t_poly_forest_oracle(&SetPartition::discrete(6)).is_err());
    }
}
