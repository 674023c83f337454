use std::fmt;

use serde::Serialize;

use super::{c_const, c_simple};
use crate::arith::{int, PiScalar};
use crate::coverings::CoverProfile;
use crate::error::{Error, Result};
use crate::partitions::IntPartition;

/// Zero orders `mu_1, ..., mu_n >= 1` of a stratum of abelian
/// differentials; `|mu|` must be even.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumSpec {
    mu: IntPartition,
}

impl StratumSpec {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::domain("a stratum needs at least one zero"));
        }
        if parts.contains(&0) {
            return Err(Error::domain("zero orders must be positive"));
        }
        let mu = IntPartition::new(parts)?;
        if mu.size() % 2 == 1 {
            return Err(Error::domain(format!(
                "|μ| must be even, got |μ| = {}",
                mu.size()
            )));
        }
        Ok(StratumSpec { mu })
    }

    pub fn mu(&self) -> &IntPartition {
        &self.mu
    }

    pub fn genus(&self) -> u32 {
        self.mu.size() / 2 + 1
    }

    /// Complex dimension `2g + n - 1`.
    pub fn dim(&self) -> u32 {
        2 * self.genus() + self.mu.len() as u32 - 1
    }

    /// The ramification profile `mu + 1`.
    pub fn profile(&self) -> CoverProfile {
        CoverProfile::new(self.mu.parts().iter().map(|m| m + 1).collect())
            .expect("entries are at least 2")
    }

    fn is_simple(&self) -> bool {
        self.mu.parts().iter().all(|&m| m == 1)
    }
}

impl fmt::Display for StratumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H{}", self.mu)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    General,
    SimpleClosedForm,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::General => "general",
            Route::SimpleClosedForm => "simple-closed-form",
        })
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VolumeOptions {
    /// For strata with all zeros simple, also run the general pipeline and
    /// fail if the two disagree.
    pub cross_check: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VolumeResult {
    pub mu: IntPartition,
    pub genus: u32,
    pub dim: u32,
    #[serde(rename = "c")]
    pub c_const: PiScalar,
    pub volume: PiScalar,
    pub route: Route,
}

/// Volume of the stratum with labeled zeros, `c(mu + 1) / dim`.
pub fn volume(spec: &StratumSpec) -> Result<VolumeResult> {
    volume_with(spec, VolumeOptions::default())
}

pub fn volume_with(spec: &StratumSpec, opts: VolumeOptions) -> Result<VolumeResult> {
    let (c, route) = if spec.is_simple() {
        let c = c_simple(spec.mu.len() as u32)?;
        if opts.cross_check {
            let general = c_const(&spec.profile())?;
            if general != c {
                return Err(Error::Verification(format!(
                    "{spec}: closed form gives {c}, general pipeline gives {general}"
                )));
            }
        }
        (c, Route::SimpleClosedForm)
    } else {
        (c_const(&spec.profile())?, Route::General)
    };
    let dim = spec.dim();
    let volume = c.scale(&(int(1) / int(dim)));
    Ok(VolumeResult {
        mu: spec.mu.clone(),
        genus: spec.genus(),
        dim,
        c_const: c,
        volume,
        route,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn worked_examples() {
        let v = volume(&StratumSpec::new(vec![3, 1]).unwrap()).unwrap();
        assert_eq!((v.genus, v.dim), (3, 7));
        assert_eq!(v.volume, PiScalar::new(rat(8, 297675), 6));
        assert_eq!(v.route, Route::General);

        let spec = StratumSpec::new(vec![1, 1]).unwrap();
        let v = volume_with(&spec, VolumeOptions { cross_check: true }).unwrap();
        assert_eq!(v.volume, PiScalar::new(rat(1, 1350), 4));
        assert_eq!(v.route, Route::SimpleClosedForm);
    }

    #[test]
    fn rejects_bad_strata() {
        assert!(StratumSpec::new(vec![2, 1]).is_err());
        assert!(StratumSpec::new(vec![]).is_err());
        assert!(StratumSpec::new(vec![2, 0]).is_err());
    }

    #[test]
    fn json_shape() {
        let v = volume(&StratumSpec::new(vec![3, 1]).unwrap()).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(
            s,
            r#"{"mu":[3,1],"genus":3,"dim":7,"c":{"num":"8","den":"42525","pi_pow":6},"volume":{"num":"8","den":"297675","pi_pow":6},"route":"general"}"#
        );
    }
}
