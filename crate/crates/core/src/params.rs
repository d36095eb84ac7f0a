use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Comparison tolerance used when none is given.
pub const DEFAULT_TOL: f64 = 1e-9;

/// The speed limit `c` together with a comparison tolerance.
///
/// Every Einstein-number value carries the `Params` it was built with;
/// binary operations assume both operands share them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    c: f64,
    tol: f64,
}

impl Params {
    pub fn new(c: f64) -> Result<Self> {
        Self::with_tol(c, DEFAULT_TOL)
    }

    pub fn with_tol(c: f64, tol: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidParams(format!("c must be positive and finite, got {c}")));
        }
        if !(tol.is_finite() && tol >= 0.0) {
            return Err(Error::InvalidParams(format!("tol must be nonnegative, got {tol}")));
        }
        Ok(Self { c, tol })
    }

    /// Unit speed limit, `c = 1`.
    pub fn unit() -> Self {
        Self {
            c: 1.0,
            tol: DEFAULT_TOL,
        }
    }

    #[inline]
    pub fn c(&self) -> f64 {
        self.c
    }

    #[inline]
    pub fn tol(&self) -> f64 {
        self.tol
    }
}

impl Default for Params {
    fn default() -> Self {
        Self::unit()
    }
}
