//! Runs the full analysis over many graphs concurrently.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::TestConfig;
use crate::engine::VerdictKind;
use crate::report::{analyze, load_graph, RigidityReport};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatchEntry {
    pub name: String,
    pub report: Option<RigidityReport>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatchSummary {
    pub total: usize,
    pub globally_rigid: usize,
    /// Locally but not globally rigid.
    pub not_globally_rigid: usize,
    pub not_locally_rigid: usize,
    pub errors: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatchReport {
    pub entries: Vec<BatchEntry>,
    pub summary: BatchSummary,
}

/// Regular files in `dir`, sorted by file name.
pub fn collect_dir(dir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let entry = entry?;
        if entry.file_type()?.is_file() {
            files.push(entry.path());
        }
    }
    files.sort_by(|a, b| a.file_name().cmp(&b.file_name()));
    Ok(files)
}

/// Analyzes every source (file path or `gen:` spec). Failures are recorded
/// per entry; entries come back in input order regardless of scheduling.
pub fn run_batch(sources: &[String], cfg: &TestConfig) -> BatchReport {
    let entries: Vec<BatchEntry> = sources
        .par_iter()
        .map(|src| {
            let name = Path::new(src)
                .file_name()
                .filter(|_| !src.starts_with("gen:"))
                .map_or_else(|| src.clone(), |n| n.to_string_lossy().into_owned());
            let result = load_graph(src)
                .map_err(|e| e.to_string())
                .and_then(|g| analyze(&g, cfg).map_err(|e| e.to_string()));
            match result {
                Ok(report) => BatchEntry {
                    name,
                    report: Some(report),
                    error: None,
                },
                Err(error) => BatchEntry {
                    name,
                    report: None,
                    error: Some(error),
                },
            }
        })
        .collect();

    let mut summary = BatchSummary {
        total: entries.len(),
        ..Default::default()
    };
    for entry in &entries {
        match &entry.report {
            None => summary.errors += 1,
            Some(r) if r.verdicts.global.is_yes() => summary.globally_rigid += 1,
            Some(r) if r.verdicts.local.kind == VerdictKind::NotLocallyRigid => {
                summary.not_locally_rigid += 1
            }
            Some(_) => summary.not_globally_rigid += 1,
        }
    }
    BatchReport { entries, summary }
}

impl BatchReport {
    pub fn without_wall_time(&self) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|e| BatchEntry {
                report: e.report.as_ref().map(RigidityReport::without_wall_time),
                ..e.clone()
            })
            .collect();
        BatchReport {
            entries,
            summary: self.summary.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("batch report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<28} {:>4} {:>5}  {:<16} {:<18} HC",
            "graph", "v", "e", "local", "global"
        );
        for entry in &self.entries {
            match (&entry.report, &entry.error) {
                (Some(r), _) => {
                    let h = &r.diagnostics.hendrickson;
                    let _ = writeln!(
                        out,
                        "{:<28} {:>4} {:>5}  {:<16} {:<18} {}/{}",
                        entry.name,
                        r.graph.v,
                        r.graph.e,
                        r.verdicts.local.kind.to_string(),
                        r.verdicts.global.kind.to_string(),
                        h.connectivity_ok,
                        h.redundant_ok
                    );
                }
                (None, err) => {
                    let _ = writeln!(
                        out,
                        "{:<28} ERROR {}",
                        entry.name,
                        err.as_deref().unwrap_or("unknown")
                    );
                }
            }
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "total {}: {} globally rigid, {} not globally rigid, {} not locally rigid, {} errors",
            s.total, s.globally_rigid, s.not_globally_rigid, s.not_locally_rigid, s.errors
        );
        out
    }
}
