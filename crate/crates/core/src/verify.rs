//! Named self-check suites, run by `stratavol verify <suite>`. Each suite
//! compares a production code path with an independent computation over a
//! fixed range of inputs.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{int, rat, Rational};
use crate::characters::character;
use crate::coverings::{
    brute_force_hom_count, cov_connected_series, cov_series, euler_series, CoverProfile,
};
use crate::cumulants::{
    c_const, c_simple, elementary_cumulant, elementary_cumulant_series_oracle,
    t_poly_forest_oracle, CumulantKey,
};
use crate::error::{Error, Result};
use crate::npoint::{verify_one_point, EvaluatedPoint};
use crate::partitions::{
    enum_int_partitions, enum_set_partitions, is_transversal, meet, IntPartition,
};
use crate::series::QSeries;
use crate::shifted::q_average;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Oracles,
    Parity,
    Orthogonality,
    Transversality,
    Forests,
    Coverings,
    OnePoint,
    QSeries,
    Simple,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Oracles,
        Suite::Parity,
        Suite::Orthogonality,
        Suite::Transversality,
        Suite::Forests,
        Suite::Coverings,
        Suite::OnePoint,
        Suite::QSeries,
        Suite::Simple,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Oracles => "oracles",
            Suite::Parity => "parity",
            Suite::Orthogonality => "orthogonality",
            Suite::Transversality => "transversality",
            Suite::Forests => "forests",
            Suite::Coverings => "coverings",
            Suite::OnePoint => "one-point",
            Suite::QSeries => "qseries",
            Suite::Simple => "simple",
        }
    }

    pub fn run(self) -> Result<SuiteReport> {
        let mut r = SuiteReport::new(self.name());
        match self {
            Suite::Oracles => oracles(&mut r)?,
            Suite::Parity => parity(&mut r)?,
            Suite::Orthogonality => orthogonality(&mut r)?,
            Suite::Transversality => transversality(&mut r)?,
            Suite::Forests => forests(&mut r)?,
            Suite::Coverings => coverings(&mut r)?,
            Suite::OnePoint => one_point(&mut r)?,
            Suite::QSeries => qseries(&mut r),
            Suite::Simple => simple(&mut r)?,
        }
        Ok(r)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        SuiteReport {
            name,
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} checks", self.name, self.checks)?;
        if !self.passed() {
            write!(f, ", {} failed", self.failures.len())?;
        }
        f.write_str(")")?;
        for failure in &self.failures {
            write!(f, "\n  {failure}")?;
        }
        Ok(())
    }
}

/// Multisets of positive integers with `n` entries and total at most
/// `max_total`, in decreasing order.
fn keys(n: usize, max_total: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let rest = (n - cur.len() - 1) as u32;
        for v in (1..=cap.min(left.saturating_sub(rest))).rev() {
            cur.push(v);
            rec(n, left - v, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_total, max_total, &mut Vec::new(), &mut out);
    out
}

fn oracles(r: &mut SuiteReport) -> Result<()> {
    for n in 1..=3 {
        for parts in keys(n, 8) {
            let key = CumulantKey::new(parts)?;
            let a = elementary_cumulant(&key)?;
            let b = elementary_cumulant_series_oracle(&key)?;
            r.check(a == b, || format!("{key}: formula {a}, series {b}"));
        }
    }
    Ok(())
}

fn parity(r: &mut SuiteReport) -> Result<()> {
    for n in 1..=4 {
        for parts in keys(n, 10) {
            let key = CumulantKey::new(parts)?;
            let v = elementary_cumulant(&key)?;
            let degree = key.pi_degree();
            let ok = if degree % 2 == 1 {
                v.is_zero()
            } else {
                v.is_zero() || v.pi_pow() == degree
            };
            r.check(ok, || {
                format!("{key} = {v}, expected a multiple of pi^{degree}")
            });
        }
    }
    Ok(())
}

fn orthogonality(r: &mut SuiteReport) -> Result<()> {
    for d in 1..=6 {
        let parts = enum_int_partitions(d);
        for a in &parts {
            for b in &parts {
                let mut sum = BigInt::zero();
                for lambda in &parts {
                    sum += character(lambda, a)? * character(lambda, b)?;
                }
                let want = if a == b {
                    crate::arith::factorial(d as u64) / a.class_size()
                } else {
                    BigInt::zero()
                };
                r.check(sum == want, || {
                    format!("columns {a}, {b}: got {sum}, want {want}")
                });
            }
        }
    }
    Ok(())
}

fn transversality(r: &mut SuiteReport) -> Result<()> {
    for n in 1..=6 {
        let all = enum_set_partitions(n)?;
        for a in &all {
            for b in &all {
                let m = meet(a, b)?;
                let ok = a.len() + b.len() <= n + m.len()
                    && is_transversal(a, b)? == (a.len() + b.len() == n + m.len());
                r.check(ok, || format!("{a} and {b} with meet {m}"));
            }
        }
    }
    Ok(())
}

fn forests(r: &mut SuiteReport) -> Result<()> {
    for n in 1..=5 {
        for rho in enum_set_partitions(n)? {
            let ok = t_poly_forest_oracle(&rho)?;
            r.check(ok, || format!("forest expansion differs for {rho}"));
        }
    }
    Ok(())
}

fn coverings(r: &mut SuiteReport) -> Result<()> {
    let entries = [2u32, 3, 4];
    let mut profiles = Vec::new();
    for a in entries {
        profiles.push(vec![a]);
        for b in entries.iter().filter(|&&b| b <= a) {
            profiles.push(vec![a, *b]);
            for c in entries.iter().filter(|&&c| c <= *b) {
                profiles.push(vec![a, *b, *c]);
            }
        }
    }
    for m in profiles {
        let profile = CoverProfile::new(m)?;
        let all = cov_series(&profile, 4);
        let connected = cov_connected_series(&profile, 4)?;
        for d in 1..=4u32 {
            let brute = brute_force_hom_count(&profile, d, false)?;
            let got = all.coeff(d as usize);
            r.check(*got == brute, || {
                format!("Cov_{d}({profile}): {got} vs {brute}")
            });
            let brute = brute_force_hom_count(&profile, d, true)?;
            let got = connected.coeff(d as usize);
            r.check(*got == brute, || {
                format!("connected Cov_{d}({profile}): {got} vs {brute}")
            });
        }
    }
    Ok(())
}

fn one_point(r: &mut SuiteReport) -> Result<()> {
    for s in [rat(2, 1), rat(3, 1), rat(5, 2)] {
        let point = EvaluatedPoint::new(s.clone())?;
        let report = verify_one_point(&point, 30)?;
        r.check(report.holds(), || {
            format!(
                "s = {s}: first mismatch at q^({}/8)",
                report.first_mismatch().unwrap_or(-1)
            )
        });
    }
    Ok(())
}

fn sigma(n: usize) -> Rational {
    int((1..=n).filter(|d| n.is_multiple_of(*d)).sum::<usize>())
}

fn qseries(r: &mut SuiteReport) {
    const ORDER: usize = 20;
    let p1 = IntPartition::new(vec![1]).expect("valid");
    let p2 = IntPartition::new(vec![2]).expect("valid");
    let mut g2 = vec![rat(-1, 24)];
    g2.extend((1..=ORDER).map(sigma));
    let g2 = QSeries::new(g2);
    let avg = q_average(&p1, ORDER);
    r.check(avg == g2, || format!("<p1>_q = {avg}"));
    let avg = q_average(&p2, ORDER);
    r.check(avg.is_zero(), || format!("<p2>_q = {avg}"));
    let counts: Vec<Rational> = (0..=ORDER as u32)
        .map(|d| int(enum_int_partitions(d).len()))
        .collect();
    let product = &euler_series(ORDER) * &QSeries::new(counts);
    r.check(product == QSeries::one(ORDER), || {
        format!("(q)_oo * partitions = {product}")
    });
}

fn simple(r: &mut SuiteReport) -> Result<()> {
    for n in 1..=8u32 {
        let closed = c_simple(n)?;
        let general = c_const(&CoverProfile::new(vec![2; n as usize])?)?;
        r.check(closed == general, || {
            format!("n = {n}: closed form {closed}, general {general}")
        });
    }
    Ok(())
}
