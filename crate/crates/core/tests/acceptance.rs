//! Acceptance suite. Each criterion prints one `PASS`/`FAIL` line with its
//! runtime; the process exits nonzero if any criterion fails or overruns
//! its time budget.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use stratavol::arith::{rat, PiScalar};
use stratavol::characters::character;
use stratavol::coverings::{
    asymptotic_ratio, brute_force_hom_count, cov_connected_series, cov_series, euler_series,
    CoverProfile, QSeries,
};
use stratavol::cumulants::{
    c_const, c_simple, elementary_cumulant, elementary_cumulant_series_oracle, f_cumulant_leading,
    t_poly_forest_oracle, volume, wick_leading, CumulantKey, StratumSpec, WickGroups,
};
use stratavol::npoint::{verify_one_point, EvaluatedPoint};
use stratavol::partitions::{enum_int_partitions, enum_set_partitions, IntPartition, SetPartition};
use stratavol::shifted::{f_top_expansion, q_average};

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pi(coeff: BigRational, pow: u32) -> PiScalar {
    PiScalar::new(coeff, pow)
}

fn key(parts: &[u32]) -> CumulantKey {
    CumulantKey::new(parts.to_vec()).unwrap()
}

fn partition(parts: &[u32]) -> IntPartition {
    IntPartition::new(parts.to_vec()).unwrap()
}

fn factorial(n: u32) -> BigRational {
    BigRational::from_integer((1..=n).map(BigInt::from).product())
}

/// `[u^j] u / sin(u)` by inverting the sine series; the coefficient of
/// `pi^j` in the Taylor expansion of `pi x / sin(pi x)`.
fn inverse_sinc(deg: usize) -> Vec<BigRational> {
    let mut sinc = vec![BigRational::zero(); deg + 1];
    for k in (0..=deg).step_by(2) {
        let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
        sinc[k] = BigRational::from_integer(sign.into()) / factorial(k as u32 + 1);
    }
    let mut inv = vec![BigRational::zero(); deg + 1];
    inv[0] = BigRational::one();
    for j in 1..=deg {
        let acc: BigRational = (1..=j).map(|i| &sinc[i] * &inv[j - i]).sum();
        inv[j] = -acc;
    }
    inv
}

/// Decreasing tuples with `n` positive entries and total at most `max`.
fn keys(n: usize, max: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, left: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let rest = (n - cur.len() - 1) as u32;
        for v in 1..=cap.min(left.saturating_sub(rest)) {
            cur.push(v);
            rec(n, left - v, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max, max, &mut Vec::new(), &mut out);
    out
}

fn worked_examples() -> Outcome {
    let cases = [
        (vec![1], pi(rat(1, 6), 2)),
        (vec![2], PiScalar::zero()),
        (vec![2, 2], pi(rat(16, 45), 4)),
        (vec![4, 2], pi(rat(416, 315), 6)),
    ];
    for (parts, want) in cases {
        let got = elementary_cumulant(&key(&parts)).map_err(|e| e.to_string())?;
        ensure(got == want, || {
            format!("<<{parts:?}>> = {got}, want {want}")
        })?;
    }

    // <f4|f2> = 1/8 <p4|p2> - 1/2 <p2 p1|p2> at leading order
    let groups = |a: &[u32], b: &[u32]| WickGroups::new(vec![partition(a), partition(b)]).unwrap();
    let first = wick_leading(&groups(&[4], &[2])).unwrap();
    let second = wick_leading(&groups(&[2, 1], &[2])).unwrap();
    ensure(
        first.hbar_inverse_power == 7 && second.hbar_inverse_power == 7,
        || "both terms should sit at hbar^-7".into(),
    )?;
    let by_hand = first
        .value
        .scale(&rat(1, 8))
        .checked_add(&second.value.scale(&rat(-1, 2)))
        .ok_or("terms have different powers of pi")?;
    let want = pi(rat(128, 945), 6);
    ensure(by_hand == want, || format!("<f4|f2> by hand = {by_hand}"))?;
    let pipeline = f_cumulant_leading(&[4, 2]).unwrap();
    ensure(pipeline.value == want, || {
        format!("<f4|f2> = {}", pipeline.value)
    })?;

    let c = c_const(&CoverProfile::new(vec![4, 2]).unwrap()).unwrap();
    ensure(c == pi(rat(8, 42525), 6), || format!("c(4,2) = {c}"))?;
    let v = volume(&StratumSpec::new(vec![3, 1]).unwrap()).unwrap();
    ensure(v.volume == pi(rat(8, 297675), 6), || {
        format!("volume(3,1) = {}", v.volume)
    })
}

fn expansions() -> Outcome {
    let f2 = f_top_expansion(2);
    ensure(
        f2.len() == 1 && f2.coeff(&partition(&[2])) == rat(1, 2),
        || format!("f2 = {f2}"),
    )?;
    let f4 = f_top_expansion(4);
    ensure(
        f4.len() == 2
            && f4.coeff(&partition(&[4])) == rat(1, 4)
            && f4.coeff(&partition(&[2, 1])) == rat(-1, 1),
        || format!("f4 = {f4}"),
    )?;
    ensure(f4.to_string() == "1/4 p[4] - 1 p[2,1]", || {
        format!("f4 renders as {f4}")
    })
}

fn dual_route() -> Outcome {
    for n in 1..=8u32 {
        let closed = c_simple(n).unwrap();
        let general = c_const(&CoverProfile::new(vec![2; n as usize]).unwrap()).unwrap();
        ensure(closed == general, || {
            format!("n = {n}: {closed} vs {general}")
        })?;
    }
    Ok(())
}

fn cumulant_oracles() -> Outcome {
    for n in 1..=3 {
        for parts in keys(n, 8) {
            let k = key(&parts);
            let a = elementary_cumulant(&k).unwrap();
            let b = elementary_cumulant_series_oracle(&k).unwrap();
            ensure(a == b, || format!("{k}: {a} vs series {b}"))?;
        }
    }
    // <<k,l>> = (k+l)! z(k+l) - k! l! z(k) z(l), z from the series of u/sin u
    let z = inverse_sinc(12);
    for k in 1..=6u32 {
        for l in 1..=6u32 {
            let s = (k + l) as usize;
            let joint = factorial(k + l) * &z[s];
            let split = factorial(k) * factorial(l) * &z[k as usize] * &z[l as usize];
            let want = pi(joint - split, k + l);
            let got = elementary_cumulant(&key(&[k, l])).unwrap();
            ensure(got == want, || format!("<<{k},{l}>> = {got}, want {want}"))?;
        }
    }
    Ok(())
}

fn covering_oracles() -> Outcome {
    let entries = [2u32, 3, 4];
    let mut profiles = Vec::new();
    for &a in &entries {
        profiles.push(vec![a]);
        for &b in entries.iter().filter(|&&b| b <= a) {
            profiles.push(vec![a, b]);
            for &c in entries.iter().filter(|&&c| c <= b) {
                profiles.push(vec![a, b, c]);
            }
        }
    }
    for m in profiles {
        let profile = CoverProfile::new(m).unwrap();
        let all = cov_series(&profile, 4);
        let connected = cov_connected_series(&profile, 4).unwrap();
        for d in 1..=4u32 {
            let brute = brute_force_hom_count(&profile, d, false).unwrap();
            ensure(*all.coeff(d as usize) == brute, || {
                format!(
                    "Cov_{d}({profile}) = {}, brute force {brute}",
                    all.coeff(d as usize)
                )
            })?;
            let brute = brute_force_hom_count(&profile, d, true).unwrap();
            ensure(*connected.coeff(d as usize) == brute, || {
                format!(
                    "connected Cov_{d}({profile}) = {}, brute force {brute}",
                    connected.coeff(d as usize)
                )
            })?;
        }
    }
    Ok(())
}

fn pi_50() -> BigRational {
    let digits = "314159265358979323846264338327950288419716939937510";
    BigRational::new(digits.parse().unwrap(), BigInt::from(10).pow(50))
}

fn convergence() -> Outcome {
    let profile = CoverProfile::new(vec![2, 2]).unwrap();
    let pi4 = {
        let p = pi_50();
        &p * &p * &p * &p
    };
    let target = pi4 / BigRational::from_integer(270.into());
    let err = |d: u32| -> BigRational {
        let r = asymptotic_ratio(&profile, d).unwrap() / &target;
        (r - BigRational::one()).abs()
    };
    let e20 = err(20);
    let e40 = err(40);
    ensure(e40 < rat(3, 10), || {
        format!("relative error at D = 40 is {e40}")
    })?;
    ensure(e40 < e20, || {
        format!("no improvement from D = 20 ({e20}) to D = 40 ({e40})")
    })
}

fn qseries_identities() -> Outcome {
    const N: usize = 20;
    let mut g2 = vec![rat(-1, 24)];
    for n in 1..=N {
        let sigma: usize = (1..=n).filter(|d| n % d == 0).sum();
        g2.push(rat(sigma as i64, 1));
    }
    let p1 = q_average(&partition(&[1]), N);
    ensure(p1 == QSeries::new(g2), || format!("<p1>_q = {p1}"))?;
    let p2 = q_average(&partition(&[2]), N);
    ensure(p2.is_zero(), || format!("<p2>_q = {p2}"))?;
    // partition numbers by the coin-change recurrence
    let mut counts = vec![BigInt::zero(); N + 1];
    counts[0] = BigInt::one();
    for part in 1..=N {
        for total in part..=N {
            let add = counts[total - part].clone();
            counts[total] += add;
        }
    }
    let counts = QSeries::new(counts.into_iter().map(BigRational::from_integer).collect());
    let product = &euler_series(N) * &counts;
    ensure(product == QSeries::one(N), || {
        format!("(q)_oo * partitions = {product}")
    })
}

fn one_point() -> Outcome {
    for s in [rat(2, 1), rat(3, 1), rat(5, 2)] {
        let report = verify_one_point(&EvaluatedPoint::new(s.clone()).unwrap(), 30).unwrap();
        ensure(report.holds(), || {
            format!(
                "s = {s}: sides differ first at q^({:?}/8)",
                report.first_mismatch()
            )
        })?;
    }
    Ok(())
}

/// Number of blocks of the finest common coarsening of two labelings.
fn coarsening_blocks(a: &SetPartition, b: &SetPartition) -> usize {
    let n = a.ground_size();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for i in 0..n {
        for j in 0..i {
            if a.block_of(i) == a.block_of(j) || b.block_of(i) == b.block_of(j) {
                let (x, y) = (find(&mut parent, i), find(&mut parent, j));
                parent[x] = y;
            }
        }
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count()
}

fn properties() -> Outcome {
    for n in 1..=4 {
        for parts in keys(n, 10) {
            let k = key(&parts);
            let v = elementary_cumulant(&k).unwrap();
            let degree = parts.iter().sum::<u32>() + 2 - n as u32;
            ensure(v.is_zero() || v.pi_pow() == degree, || {
                format!("{k} = {v} is not of degree {degree}")
            })?;
            ensure(degree.is_multiple_of(2) || v.is_zero(), || {
                format!("{k} = {v} should vanish by parity")
            })?;
        }
    }

    for d in 1..=6u32 {
        let parts = enum_int_partitions(d);
        for a in &parts {
            for b in &parts {
                let sum: BigInt = parts
                    .iter()
                    .map(|l| character(l, a).unwrap() * character(l, b).unwrap())
                    .sum();
                let centralizer: BigInt = if a == b {
                    let mut z = BigInt::one();
                    for i in 1..=d {
                        let mult = a.parts().iter().filter(|&&p| p == i).count() as u32;
                        z *= BigInt::from(i).pow(mult) * factorial(mult).to_integer();
                    }
                    z
                } else {
                    BigInt::zero()
                };
                ensure(sum == centralizer, || {
                    format!("columns {a}, {b}: {sum} vs {centralizer}")
                })?;
            }
        }
    }

    for n in 1..=6 {
        let all = enum_set_partitions(n).unwrap();
        for a in &all {
            for b in &all {
                let m = coarsening_blocks(a, b);
                ensure(a.len() + b.len() <= n + m, || {
                    format!("bound fails for {a}, {b}")
                })?;
            }
        }
    }

    for n in 1..=5 {
        for rho in enum_set_partitions(n).unwrap() {
            ensure(t_poly_forest_oracle(&rho).unwrap(), || {
                format!("forest identity fails for {rho}")
            })?;
        }
    }

    let strata: [&[u32]; 10] = [
        &[2],
        &[1, 1],
        &[4],
        &[3, 1],
        &[2, 2],
        &[2, 1, 1],
        &[1, 1, 1, 1],
        &[6],
        &[5, 1],
        &[3, 3],
    ];
    for mu in strata {
        let v = volume(&StratumSpec::new(mu.to_vec()).unwrap()).unwrap();
        ensure(
            !v.volume.is_zero() && v.volume.pi_pow() == 2 * v.genus,
            || format!("volume{mu:?} = {} with genus {}", v.volume, v.genus),
        )?;
    }
    Ok(())
}

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

const CRITERIA: [Criterion; 9] = [
    Criterion {
        id: 1,
        title: "worked-example values",
        budget: Duration::from_secs(1),
        run: worked_examples,
    },
    Criterion {
        id: 2,
        title: "f2 and f4 top-weight expansions",
        budget: Duration::from_secs(1),
        run: expansions,
    },
    Criterion {
        id: 3,
        title: "closed form for c(2,...,2), n = 1..8",
        budget: Duration::from_secs(300),
        run: dual_route,
    },
    Criterion {
        id: 4,
        title: "elementary cumulants vs series and two-part oracles",
        budget: Duration::from_secs(120),
        run: cumulant_oracles,
    },
    Criterion {
        id: 5,
        title: "covering counts vs monodromy enumeration",
        budget: Duration::from_secs(600),
        run: covering_oracles,
    },
    Criterion {
        id: 6,
        title: "asymptotic ratio for (2,2) at D = 20, 40",
        budget: Duration::from_secs(600),
        run: convergence,
    },
    Criterion {
        id: 7,
        title: "q-series identities to q^20",
        budget: Duration::from_secs(600),
        run: qseries_identities,
    },
    Criterion {
        id: 8,
        title: "one-point theta identity, s in {2, 3, 5/2}, N = 30",
        budget: Duration::from_secs(600),
        run: one_point,
    },
    Criterion {
        id: 9,
        title: "property suites",
        budget: Duration::from_secs(600),
        run: properties,
    },
];

fn main() {
    // run each criterion once; ignore libtest-style arguments
    let mut failed = 0;
    for c in &CRITERIA {
        let start = Instant::now();
        let result =
            catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let verdict = match result {
            Ok(()) if elapsed <= c.budget => Ok(()),
            Ok(()) => Err(format!("over time budget of {:?}", c.budget)),
            Err(e) => Err(e),
        };
        match verdict {
            Ok(()) => println!("PASS criterion {}: {} ({:.2?})", c.id, c.title, elapsed),
            Err(e) => {
                failed += 1;
                println!(
                    "FAIL criterion {}: {} ({:.2?}): {e}",
                    c.id, c.title, elapsed
                );
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        CRITERIA.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
