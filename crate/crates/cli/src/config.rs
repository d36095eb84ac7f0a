use clap::ValueEnum;
use hypervel_core::params::DEFAULT_TOL;
use hypervel_core::{Error, Params, Result};
use serde::Serialize;

pub const DEFAULT_SAMPLES: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunConfig {
    pub c: f64,
    /// Residual bound for the laws whose precision class is the loose one
    /// (field laws, transports through saturating maps).
    pub tol: f64,
    pub seed: u64,
    pub samples: u64,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            c: 1.0,
            tol: DEFAULT_TOL,
            seed: 0,
            samples: DEFAULT_SAMPLES,
            format: OutputFormat::Json,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples < 1 {
            return Err(Error::InvalidParams("samples must be at least 1".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidParams(format!("tol must be positive, got {}", self.tol)));
        }
        Params::with_tol(self.c, self.tol).map(|_| ())
    }

    pub fn params(&self) -> Params {
        Params::with_tol(self.c, self.tol).expect("validated configuration")
    }
}
