//! Full analysis of one graph and its serialized report.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::config::{ConfigError, Mode, TestConfig};
use crate::engine::{
    check_dimension_one, check_global, check_hendrickson, check_local, constants, dot_space_dim,
    k_min_estimate, k_sh_estimate, oracle_check_global_rational, oracle_check_local_rational,
    Hendrickson, Probability, Rejection, RoundRecord, Verdict,
};
use crate::graph::{generate, Family, Graph, GraphError};

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: GraphError },
    #[error("bad generator spec {spec:?}: {reason}")]
    Spec { spec: String, reason: String },
    #[error(transparent)]
    Generate(#[from] GraphError),
}

/// Parses `"gen:<family>[:<n>,<m>,...]"`.
pub fn parse_gen_spec(spec: &str) -> Result<(Family, Vec<usize>), InputError> {
    let bad = |reason: &str| InputError::Spec {
        spec: spec.to_string(),
        reason: reason.to_string(),
    };
    let body = spec
        .strip_prefix("gen:")
        .ok_or_else(|| bad("missing gen: prefix"))?;
    let (name, params) = body.split_once(':').unwrap_or((body, ""));
    let family: Family = name.parse()?;
    let params = parse_params(params.split(',')).map_err(|_| bad("parameters must be integers"))?;
    Ok((family, params))
}

pub fn parse_params<'a>(
    parts: impl IntoIterator<Item = &'a str>,
) -> Result<Vec<usize>, std::num::ParseIntError> {
    parts
        .into_iter()
        .flat_map(|p| p.split(','))
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(str::parse)
        .collect()
}

/// Loads a graph from an edge-list file or an inline `gen:` spec.
pub fn load_graph(source: &str) -> Result<Graph, InputError> {
    if source.starts_with("gen:") {
        let (family, params) = parse_gen_spec(source)?;
        return Ok(generate(family, &params)?);
    }
    read_graph_file(Path::new(source))
}

pub fn read_graph_file(path: &Path) -> Result<Graph, InputError> {
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Graph::parse(&text).map_err(|source| InputError::Parse {
        path: path.display().to_string(),
        source,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSummary {
    pub v: usize,
    pub e: usize,
    pub hash: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoundRecords {
    pub local: Vec<RoundRecord>,
    pub global: Vec<RoundRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Verdicts {
    pub local: Verdict,
    pub global: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Diagnostics {
    pub k_min: Option<usize>,
    /// Rank of the stress matrix that realized `k_min`.
    pub stress_rank: Option<usize>,
    pub k_sh: Option<usize>,
    pub gauss_rank: Option<usize>,
    pub stress_basis_dim: Option<usize>,
    pub dot_space_dim: Option<usize>,
    /// Why the stress diagnostics are absent, when they are.
    pub stress_rejection: Option<Rejection>,
    pub hendrickson: Hendrickson,
    /// 2-connectivity, reported for `d = 1` and `v >= 3`.
    pub dim_one: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RigidityReport {
    pub graph: GraphSummary,
    pub d: usize,
    pub t: Option<usize>,
    pub s: Option<usize>,
    pub mode: Mode,
    pub round_records: RoundRecords,
    pub verdicts: Verdicts,
    pub diagnostics: Diagnostics,
    pub seed: u64,
    pub rounds: u32,
    /// False-negative bound of the global verdict; zero when it is a yes.
    pub false_no_bound: Probability,
    pub wall_time_ms: u64,
}

/// Runs the local and global tests, the stress diagnostics and Hendrickson's
/// conditions on `g`.
pub fn analyze(g: &Graph, cfg: &TestConfig) -> Result<RigidityReport, ConfigError> {
    cfg.validate(g.vertex_count())?;
    let start = Instant::now();
    let d = cfg.dim;
    let (v, e) = (g.vertex_count(), g.edge_count());
    let (t, s) = match constants(v, d) {
        Ok((t, s)) => (Some(t), Some(s)),
        Err(_) => (None, None),
    };

    let (local, global) = match cfg.mode {
        Mode::Modular => (check_local(g, d, cfg), check_global(g, d, cfg)),
        Mode::Rational => (
            oracle_check_local_rational(g, d, cfg),
            oracle_check_global_rational(g, d, cfg),
        ),
    };

    let mut diagnostics = Diagnostics {
        k_min: None,
        stress_rank: None,
        k_sh: None,
        gauss_rank: None,
        stress_basis_dim: None,
        dot_space_dim: None,
        stress_rejection: None,
        hendrickson: check_hendrickson(g, d, cfg),
        dim_one: (d == 1 && v >= 3).then(|| check_dimension_one(g)),
    };
    match k_min_estimate(g, d, cfg) {
        Ok(k) => {
            diagnostics.k_min = Some(k.k_min);
            diagnostics.stress_rank = Some(k.stress_rank);
            diagnostics.dot_space_dim = Some(dot_space_dim(g, &k.witness));
        }
        Err(r) => diagnostics.stress_rejection = Some(r),
    }
    match k_sh_estimate(g, d, cfg) {
        Ok(k) => {
            diagnostics.k_sh = Some(k.k_sh);
            diagnostics.gauss_rank = Some(k.gauss_rank);
            diagnostics.stress_basis_dim = Some(k.basis_dim);
        }
        Err(r) => {
            diagnostics.stress_rejection.get_or_insert(r);
        }
    }

    Ok(RigidityReport {
        graph: GraphSummary {
            v,
            e,
            hash: g.canonical_hash(),
        },
        d,
        t,
        s,
        mode: cfg.mode,
        round_records: RoundRecords {
            local: local.rounds,
            global: global.rounds,
        },
        false_no_bound: global.verdict.false_no_bound.clone(),
        verdicts: Verdicts {
            local: local.verdict,
            global: global.verdict,
        },
        diagnostics,
        seed: cfg.seed,
        rounds: cfg.rounds,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

impl RigidityReport {
    /// 0 when globally rigid, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.verdicts.global.is_yes() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Copy with the wall-time field zeroed, for byte comparisons.
    pub fn without_wall_time(&self) -> Self {
        RigidityReport {
            wall_time_ms: 0,
            ..self.clone()
        }
    }

    pub fn to_text(&self) -> String {
        let opt = |x: Option<usize>| x.map_or("-".to_string(), |x| x.to_string());
        let mut out = String::new();
        let g = &self.graph;
        let _ = writeln!(out, "graph      v={} e={} hash={}", g.v, g.e, &g.hash[..16]);
        let _ = writeln!(
            out,
            "params     d={} t={} s={} mode={:?} seed={} rounds={}",
            self.d,
            opt(self.t),
            opt(self.s),
            self.mode,
            self.seed,
            self.rounds
        );
        for (label, v) in [
            ("local", &self.verdicts.local),
            ("global", &self.verdicts.global),
        ] {
            let _ = writeln!(
                out,
                "{label:<10} {} ({:?}, false-no bound {}, {} rounds)",
                v.kind, v.certainty, v.false_no_bound, v.evidence.rounds_run
            );
        }
        let dg = &self.diagnostics;
        let _ = writeln!(
            out,
            "stress     k_min={} k_sh={} gauss_rank={} basis_dim={} dot_space_dim={}",
            opt(dg.k_min),
            opt(dg.k_sh),
            opt(dg.gauss_rank),
            opt(dg.stress_basis_dim),
            opt(dg.dot_space_dim)
        );
        if let Some(r) = &dg.stress_rejection {
            let _ = writeln!(out, "           ({r})");
        }
        let _ = writeln!(
            out,
            "hendrickson connected={} redundant={}",
            dg.hendrickson.connectivity_ok, dg.hendrickson.redundant_ok
        );
        if let Some(b) = dg.dim_one {
            let _ = writeln!(out, "dim-one    2-connected={b}");
        }
        let _ = writeln!(out, "time       {} ms", self.wall_time_ms);
        out
    }
}
