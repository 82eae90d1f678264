use serde::{Deserialize, Serialize};

pub const DEFAULT_ROUNDS: u32 = 40;
/// Largest vertex count the exact-rational mode accepts without `force`.
pub const RATIONAL_VERTEX_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Modular,
    Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("dimension must be at least 1")]
    ZeroDim,
    #[error("rounds must be at least 1")]
    ZeroRounds,
    #[error("sample bound must be at least 2")]
    SampleBound,
    #[error(
        "rational mode is limited to {limit} vertices (graph has {v}); pass --force to override"
    )]
    RationalTooLarge { v: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestConfig {
    pub dim: usize,
    pub rounds: u32,
    pub seed: u64,
    pub mode: Mode,
    /// Replaces the default Schwartz-Zippel sample bound when set.
    pub sample_bound: Option<u64>,
    pub format: ReportFormat,
    pub force: bool,
}

impl TestConfig {
    pub fn new(dim: usize) -> Self {
        TestConfig {
            dim,
            rounds: DEFAULT_ROUNDS,
            seed: 0,
            mode: Mode::Modular,
            sample_bound: None,
            format: ReportFormat::Text,
            force: false,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_rounds(mut self, rounds: u32) -> Self {
        self.rounds = rounds;
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn validate(&self, v: usize) -> Result<(), ConfigError> {
        if self.dim == 0 {
            return Err(ConfigError::ZeroDim);
        }
        if self.rounds == 0 {
            return Err(ConfigError::ZeroRounds);
        }
        if matches!(self.sample_bound, Some(n) if n < 2) {
            return Err(ConfigError::SampleBound);
        }
        if self.mode == Mode::Rational && v > RATIONAL_VERTEX_LIMIT && !self.force {
            return Err(ConfigError::RationalTooLarge {
                v,
                limit: RATIONAL_VERTEX_LIMIT,
            });
        }
        Ok(())
    }
}
