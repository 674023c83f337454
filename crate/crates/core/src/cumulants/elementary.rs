use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::CumulantKey;
use crate::arith::{factorial, frak_z, int, PiScalar, Rational};
use crate::error::Result;
use crate::partitions::for_each_set_partition;

static MEMO: OnceLock<RwLock<HashMap<CumulantKey, PiScalar>>> = OnceLock::new();

fn memo() -> &'static RwLock<HashMap<CumulantKey, PiScalar>> {
    MEMO.get_or_init(Default::default)
}

/// Per-block data: `(|m_{alpha_k}|, |alpha_k|)`. The summand for a set
/// partition only depends on the sorted list of these pairs.
type BlockShape = Vec<(u32, u32)>;

/// `sum_d prod_k |m_k|! frak_z(|m_k| - |alpha_k| - d_k + 1) / d_k!` over
/// tuples with `sum d_k = l - 2`, returned as the coefficient of
/// `pi^{target}`.
fn d_tuple_sum(shape: &BlockShape, target: u32) -> Rational {
    let budget = shape.len() as u32 - 2;
    // d_k must have the parity of a_k = |m_k| - |alpha_k| + 1 and d_k <= a_k
    let caps: Vec<u32> = shape.iter().map(|&(m, s)| m + 1 - s).collect();
    let mut total = Rational::zero();
    let mut d = vec![0u32; shape.len()];

    fn rec(k: usize, left: u32, caps: &[u32], d: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
        if k == caps.len() {
            if left == 0 {
                f(d);
            }
            return;
        }
        let mut dk = caps[k] % 2;
        while dk <= caps[k].min(left) {
            d[k] = dk;
            rec(k + 1, left - dk, caps, d, f);
            dk += 2;
        }
    }

    rec(0, budget, &caps, &mut d, &mut |d| {
        let mut coeff = Rational::from_integer(1.into());
        let mut pi_pow = 0;
        for (k, &(m, _)) in shape.iter().enumerate() {
            let z = frak_z((caps[k] - d[k]) as i64);
            if z.is_zero() {
                return;
            }
            pi_pow += z.pi_pow();
            coeff *= z.coeff() * int(factorial(m as u64)) / int(factorial(d[k] as u64));
        }
        assert_eq!(
            pi_pow, target,
            "elementary cumulant terms are pi-homogeneous"
        );
        total += coeff;
    });
    total
}

fn compute(key: &CumulantKey) -> Result<PiScalar> {
    let m = key.parts();
    let n = m.len();
    let target = key.pi_degree();

    let mut shapes: HashMap<BlockShape, u64> = HashMap::new();
    let mut sums = vec![(0u32, 0u32); n];
    for_each_set_partition(n, None, |labels, blocks| {
        if blocks == 1 {
            return;
        }
        for s in sums.iter_mut().take(blocks) {
            *s = (0, 0);
        }
        for (i, &b) in labels.iter().enumerate() {
            sums[b].0 += m[i];
            sums[b].1 += 1;
        }
        let mut shape: BlockShape = sums[..blocks].to_vec();
        shape.sort_unstable();
        *shapes.entry(shape).or_insert(0) += 1;
    })?;

    let mut shapes: Vec<(BlockShape, u64)> = shapes.into_iter().collect();
    shapes.sort_unstable();
    let parts: Vec<Rational> = shapes
        .par_iter()
        .map(|(shape, count)| {
            let l = shape.len();
            let sign = if l % 2 == 1 { 1 } else { -1 };
            let prefactor = int(factorial(l as u64 - 2) * BigInt::from(*count) * sign);
            prefactor * d_tuple_sum(shape, target)
        })
        .collect();
    let mut coeff: Rational = parts.into_iter().sum();

    // the one-block term: |m|! frak_z(|m| - n + 2)
    let top = frak_z(target as i64);
    coeff += top.coeff() * int(factorial(key.total() as u64));
    Ok(PiScalar::new(coeff, target))
}

/// `<<m_1, ..., m_n>>`: coefficient of the leading power of `1/hbar` in
/// the cumulant `<p_{m_1} | ... | p_{m_n}>`, as an exact multiple of
/// `pi^{|m| - n + 2}`. Memoized per key.
pub fn elementary_cumulant(key: &CumulantKey) -> Result<PiScalar> {
    if let Some(v) = memo().read().unwrap().get(key) {
        return Ok(v.clone());
    }
    let v = compute(key)?;
    memo().write().unwrap().insert(key.clone(), v.clone());
    Ok(v)
}
