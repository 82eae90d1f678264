//! Rigidity matrices, equilibrium stresses and the randomized decision
//! procedures built on them.

mod checks;
mod diagnostics;
mod framework;
mod stress;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use checks::{
    check_global, check_local, oracle_check_global_rational, oracle_check_local_rational, Outcome,
};
pub use diagnostics::{
    check_dimension_one, check_hendrickson, dot_space_dim, k_min_estimate, k_sh_estimate,
    Hendrickson, KMin, KSh,
};
pub use framework::{rigidity_matrix, Framework};
pub use stress::{
    stress_basis, stress_matrix_from_vector, stress_sample, verify_stress_matrix,
    verify_stress_vector, StressMatrix, StressSample, StressVector, StressViolation,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error("{v} vertices is the small-graph regime for dimension {d} (need v >= d + 1)")]
    SmallGraph { v: usize, d: usize },
    #[error("framework has {got} points in dimension {got_dim}, graph needs {want} in dimension {want_dim}")]
    FrameworkShape {
        want: usize,
        want_dim: usize,
        got: usize,
        got_dim: usize,
    },
}

/// Why a round could not produce a generic stress. Rejections are ordinary
/// values and count as "no" rounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[serde(rename_all = "snake_case", tag = "reason")]
pub enum Rejection {
    #[error("fewer edges ({e}) than the generic rigidity rank ({t})")]
    TooFewEdges { e: usize, t: usize },
    #[error("rigidity matrix rank {rank} below {t}")]
    RigidityRank { rank: usize, t: usize },
    #[error("extended stress system has rank {rank} below {e}")]
    ExtendedRank { rank: usize, e: usize },
    #[error("every round was rejected")]
    AllRoundsRejected,
    #[error("not defined for {v} vertices in dimension {d}")]
    SmallGraph { v: usize, d: usize },
}

/// `t = vd - d(d+1)/2` (generic rank of an infinitesimally rigid framework's
/// rigidity matrix) and `s = v - d - 1` (maximal stress-matrix rank).
pub fn constants(v: usize, d: usize) -> Result<(usize, usize), EngineError> {
    if d == 0 || v < d + 1 {
        return Err(EngineError::SmallGraph { v, d });
    }
    Ok((v * d - d * (d + 1) / 2, v - d - 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerdictKind {
    GloballyRigid,
    NotGloballyRigid,
    LocallyRigid,
    NotLocallyRigid,
}

impl VerdictKind {
    pub fn is_yes(self) -> bool {
        matches!(self, VerdictKind::GloballyRigid | VerdictKind::LocallyRigid)
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            VerdictKind::GloballyRigid => "GloballyRigid",
            VerdictKind::NotGloballyRigid => "NotGloballyRigid",
            VerdictKind::LocallyRigid => "LocallyRigid",
            VerdictKind::NotLocallyRigid => "NotLocallyRigid",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certainty {
    CertainYes,
    ProbabilisticNo,
}

/// Which branch of the procedure produced the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// `v <= d + 1`: rigid iff complete, exact in both directions.
    SmallGraph,
    /// `e < t`: cannot be locally rigid.
    EdgeCount,
    Randomized,
}

/// An exact probability, serialized as `"num/den"`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Probability(pub BigRational);

impl Probability {
    pub fn zero() -> Self {
        Probability(BigRational::zero())
    }

    pub fn one() -> Self {
        Probability(BigRational::one())
    }

    /// `(num/den)^k`, clamped to at most one.
    pub fn power(num: u64, den: u64, k: u32) -> Self {
        let base = BigRational::new(BigInt::from(num), BigInt::from(den));
        let base = if base > BigRational::one() {
            BigRational::one()
        } else {
            base
        };
        Probability(num_traits::pow(base, k as usize))
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(0.0)
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Probability {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let r: BigRational = s
            .parse()
            .map_err(|e| format!("bad probability {s:?}: {e}"))?;
        if r < BigRational::zero() || r > BigRational::one() {
            return Err(format!("probability {s} outside [0, 1]"));
        }
        Ok(Probability(r))
    }
}

impl Serialize for Probability {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Probability {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Evidence {
    pub rule: Rule,
    /// Coordinates and random rows are drawn from `[1, sample_bound]`.
    pub sample_bound: Option<u64>,
    pub pool_size: Option<usize>,
    pub rounds_run: u32,
    /// Rank each round must reach for a "yes" (`t` local, `s` global).
    pub target_rank: Option<usize>,
    pub best_rank: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub certainty: Certainty,
    pub false_no_bound: Probability,
    pub evidence: Evidence,
}

impl Verdict {
    fn yes(kind: VerdictKind, evidence: Evidence) -> Self {
        Verdict {
            kind,
            certainty: Certainty::CertainYes,
            false_no_bound: Probability::zero(),
            evidence,
        }
    }

    fn no(kind: VerdictKind, bound: Probability, evidence: Evidence) -> Self {
        Verdict {
            kind,
            certainty: Certainty::ProbabilisticNo,
            false_no_bound: bound,
            evidence,
        }
    }

    pub fn is_yes(&self) -> bool {
        self.kind.is_yes()
    }
}

/// What one randomized round observed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoundRecord {
    pub round: u32,
    /// `None` for exact-rational rounds.
    pub prime: Option<u64>,
    pub rigidity_rank: usize,
    pub extended_rank: Option<usize>,
    pub stress_rank: Option<usize>,
    pub rejected: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_examples() {
        assert_eq!(constants(10, 3), Ok((24, 6)));
        assert_eq!(constants(6, 2), Ok((9, 3)));
        assert_eq!(constants(4, 2), Ok((5, 1)));
        assert_eq!(constants(3, 2), Ok((3, 0)));
        assert!(constants(2, 2).is_err());
        assert!(constants(5, 0).is_err());
    }

    #[test]
    fn probability_round_trips_as_string() {
        let p = Probability::power(1, 2, 40);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, "\"1/1099511627776\"");
        let back: Probability = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert_eq!(Probability::zero().to_string(), "0/1");
        assert!("3/2".parse::<Probability>().is_err());
    }

    #[test]
    fn probability_clamps() {
        assert_eq!(Probability::power(5, 4, 3), Probability::one());
    }
}
