use num_bigint::BigInt;
use rayon::prelude::*;

use super::{elementary_cumulant, CumulantKey};
use crate::arith::{double_factorial_odd, factorial, frak_z, int, PiScalar, PiSum, Rational};
use crate::coverings::CoverProfile;
use crate::error::{Error, Result};
use crate::partitions::{enum_complementary, enum_int_partitions, IntPartition, SetPartition};
use crate::shifted::{f_top_expansion, weight};

/// A product of power sums per group: group `i` stands for
/// `p_{mu^(i)} = prod_j p_{mu^(i)_j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WickGroups {
    groups: Vec<IntPartition>,
}

impl WickGroups {
    pub fn new(groups: Vec<IntPartition>) -> Result<Self> {
        if groups.is_empty() {
            return Err(Error::domain("at least one group is required"));
        }
        if groups.iter().any(|g| g.is_empty()) {
            return Err(Error::domain("groups must be nonempty"));
        }
        Ok(WickGroups { groups })
    }

    pub fn groups(&self) -> &[IntPartition] {
        &self.groups
    }

    /// All entries, group after group.
    pub fn flattened(&self) -> Vec<u32> {
        self.groups
            .iter()
            .flat_map(|g| g.parts().iter().copied())
            .collect()
    }

    /// The set partition of the flattened entries into consecutive groups.
    pub fn rho(&self) -> SetPartition {
        let sizes: Vec<usize> = self.groups.iter().map(|g| g.len()).collect();
        SetPartition::consecutive(&sizes)
    }

    /// `sum_i wt(mu^(i))`.
    pub fn weight(&self) -> u32 {
        self.groups.iter().map(weight).sum()
    }
}

/// Leading coefficient of a cumulant together with the power of `1/hbar`
/// at which it appears.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WickValue {
    pub value: PiScalar,
    pub hbar_inverse_power: u32,
}

/// Leading `1/hbar` coefficient of `<p_{mu^(1)} | ... | p_{mu^(s)}>`: the
/// sum over set partitions `alpha` complementary to the grouping of
/// products of elementary cumulants over the blocks of `alpha`.
pub fn wick_leading(groups: &WickGroups) -> Result<WickValue> {
    let entries = groups.flattened();
    let rho = groups.rho();
    let hbar = groups.weight() + 1 - rho.len() as u32;
    let mut sum = PiSum::zero();
    for alpha in enum_complementary(&rho)? {
        let mut term = PiScalar::one();
        let mut power = 0;
        for block in alpha.blocks() {
            let key = CumulantKey::new(block.iter().map(|&i| entries[i]).collect())?;
            power += key.total() + 1;
            term = &term * &elementary_cumulant(&key)?;
        }
        if power != hbar {
            return Err(Error::Verification(format!(
                "hbar exponent {power} of {alpha} disagrees with {hbar}"
            )));
        }
        sum.add_term(&term);
    }
    let value = sum
        .to_homogeneous()
        .ok_or_else(|| Error::Verification(format!("cumulant is not pi-homogeneous: {sum}")))?;
    Ok(WickValue {
        value,
        hbar_inverse_power: hbar,
    })
}

/// Leading coefficient of `<f_{m_1} | ... | f_{m_s}>`, obtained by
/// expanding each `f_{m_i}` to its top-weight part and applying
/// [`wick_leading`] to every product of terms.
pub fn f_cumulant_leading(m: &[u32]) -> Result<WickValue> {
    if m.is_empty() || m.contains(&0) {
        return Err(Error::domain("entries must be positive and nonempty"));
    }
    let expansions: Vec<Vec<(IntPartition, Rational)>> = m
        .iter()
        .map(|&k| {
            f_top_expansion(k)
                .terms()
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect()
        })
        .collect();
    let mut combos: Vec<(Vec<IntPartition>, Rational)> = vec![(Vec::new(), int(1))];
    for terms in &expansions {
        let mut next = Vec::with_capacity(combos.len() * terms.len());
        for (groups, c) in &combos {
            for (p, d) in terms {
                let mut g = groups.clone();
                g.push(p.clone());
                next.push((g, c * d));
            }
        }
        combos = next;
    }
    let hbar = m.iter().sum::<u32>() + 1;
    let values: Vec<PiScalar> = combos
        .into_par_iter()
        .map(|(groups, c)| {
            let w = wick_leading(&WickGroups::new(groups)?)?;
            debug_assert_eq!(w.hbar_inverse_power, hbar);
            Ok(w.value.scale(&c))
        })
        .collect::<Result<_>>()?;
    let mut sum = PiSum::zero();
    for v in &values {
        sum.add_term(v);
    }
    let value = sum.to_homogeneous().ok_or_else(|| {
        Error::Verification(format!(
            "cumulant of f-functions is not pi-homogeneous: {sum}"
        ))
    })?;
    Ok(WickValue {
        value,
        hbar_inverse_power: hbar,
    })
}

/// `c(m)`: the constant with `Cov°_d(m) ~ c(m) d^{|m|}` as `d -> oo`.
pub fn c_const(profile: &CoverProfile) -> Result<PiScalar> {
    let mut m = profile.entries().to_vec();
    m.sort_unstable_by(|a, b| b.cmp(a));
    let lead = f_cumulant_leading(&m)?;
    let total: u32 = m.iter().sum();
    Ok(lead.value.scale(&(int(1) / int(factorial(total as u64)))))
}

/// Closed form for `c(2, ..., 2)` with `n` entries: a single sum over
/// partitions of `n + 2` into even parts. Zero for odd `n`.
pub fn c_simple(n: u32) -> Result<PiScalar> {
    if n == 0 {
        return Err(Error::domain("the number of entries must be at least 1"));
    }
    if n % 2 == 1 {
        return Ok(PiScalar::zero());
    }
    let mut sum = PiSum::zero();
    for nu in enum_int_partitions((n + 2) / 2) {
        let l = nu.len() as u64;
        let sign = if l % 2 == 1 { 1 } else { -1 };
        let denom = nu.multiplicity_factorial() * factorial(2 * n as u64 + 2 - l);
        let mut term = PiScalar::rational(int(sign) / int(denom));
        for &half in nu.parts() {
            let part = 2 * half as i64;
            let df: BigInt = double_factorial_odd(2 * part - 3);
            term = (&term * &frak_z(part)).scale(&int(df));
        }
        sum.add_term(&term);
    }
    let value = sum.to_homogeneous().unwrap_or_else(PiScalar::zero);
    Ok(value.scale(&int(factorial(n as u64))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn profile(m: &[u32]) -> CoverProfile {
        CoverProfile::new(m.to_vec()).unwrap()
    }

    #[test]
    fn worked_example_constants() {
        let lead = f_cumulant_leading(&[4, 2]).unwrap();
        assert_eq!(lead.value, PiScalar::new(rat(128, 945), 6));
        assert_eq!(lead.hbar_inverse_power, 7);
        assert_eq!(
            c_const(&profile(&[4, 2])).unwrap(),
            PiScalar::new(rat(8, 42525), 6)
        );
        assert_eq!(
            c_const(&profile(&[2, 4])).unwrap(),
            PiScalar::new(rat(8, 42525), 6)
        );
        assert_eq!(
            c_const(&profile(&[2, 2])).unwrap(),
            PiScalar::new(rat(1, 270), 4)
        );
        assert_eq!(
            c_const(&profile(&[3])).unwrap(),
            PiScalar::new(rat(1, 240), 4)
        );
    }

    #[test]
    fn simple_closed_form_agrees() {
        assert_eq!(c_simple(2).unwrap(), PiScalar::new(rat(1, 270), 4));
        assert!(c_simple(3).unwrap().is_zero());
        for n in 1..=4u32 {
            let general = c_const(&profile(&vec![2; n as usize])).unwrap();
            assert_eq!(c_simple(n).unwrap(), general, "n={n}");
        }
    }

    #[test]
    fn wick_single_group_is_elementary() {
        let g = WickGroups::new(vec![IntPartition::new(vec![3]).unwrap()]).unwrap();
        let w = wick_leading(&g).unwrap();
        let key = CumulantKey::new(vec![3]).unwrap();
        assert_eq!(w.value, elementary_cumulant(&key).unwrap());
        assert_eq!(w.hbar_inverse_power, 4);
        assert!(!w.value.is_zero());
    }

    #[test]
    fn domain_errors() {
        assert!(c_simple(0).is_err());
        assert!(f_cumulant_leading(&[]).is_err());
        assert!(WickGroups::new(vec![IntPartition::empty()]).is_err());
    }
}
