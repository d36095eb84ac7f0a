//! Seeded law suites, one per module.
//!
//! Tolerances: each law carries its own bound. Laws in the loose class (field
//! laws and transports through saturating maps) use `RunConfig::tol`, scaled
//! by `c` where the quantity has units of velocity. Tight bounds are fixed.

use clap::ValueEnum;
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::report::PropertyReport;
use crate::rng::{law_rng, LawRng};

mod ball;
mod gyro;
mod meanlike;
mod multidim;
mod scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Scalar,
    Ball,
    Gyro,
    Multidim,
    Meanlike,
    All,
}

type LawFn = Box<dyn Fn(&Ctx) -> PropertyReport + Send + Sync>;

/// A named law and the function that samples it.
pub struct Law {
    pub name: String,
    run: LawFn,
}

impl Law {
    pub fn new(name: impl Into<String>, run: impl Fn(&Ctx) -> PropertyReport + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            run: Box::new(run),
        }
    }
}

/// What a law sees while running.
pub struct Ctx<'a> {
    pub cfg: &'a RunConfig,
    pub law: &'a str,
}

impl Ctx<'_> {
    pub fn rng(&self) -> LawRng {
        law_rng(self.cfg.seed, self.law)
    }

    pub fn c(&self) -> f64 {
        self.cfg.c
    }

    pub fn samples(&self) -> u64 {
        self.cfg.samples
    }

    /// Loose bound scaled by c.
    pub fn loose_c(&self) -> f64 {
        self.cfg.tol * self.cfg.c
    }

    pub fn loose(&self) -> f64 {
        self.cfg.tol
    }
}

pub fn laws(suite: Suite) -> Vec<Law> {
    match suite {
        Suite::Scalar => scalar::laws(),
        Suite::Ball => ball::laws(),
        Suite::Gyro => gyro::laws(),
        Suite::Multidim => multidim::laws(),
        Suite::Meanlike => meanlike::laws(),
        Suite::All => [
            Suite::Scalar,
            Suite::Ball,
            Suite::Gyro,
            Suite::Multidim,
            Suite::Meanlike,
        ]
        .into_iter()
        .flat_map(laws)
        .collect(),
    }
}

/// Runs every law of `suite` in parallel; report order is the law order.
pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Vec<PropertyReport> {
    laws(suite)
        .par_iter()
        .map(|law| (law.run)(&Ctx { cfg, law: &law.name }))
        .collect()
}

/// Exit status for a finished verification: 1 beats 3 beats 0.
pub fn exit_code(reports: &[PropertyReport]) -> i32 {
    use crate::report::Verdict;
    if reports.iter().any(|r| r.verdict == Verdict::ViolatedUnexpectedly) {
        1
    } else if reports.iter().any(PropertyReport::missed_expected) {
        3
    } else {
        0
    }
}

/// Draws until `target` samples pass `accept` or ten times as many attempts
/// are spent. Used by laws that exclude a region of the input space.
pub(crate) fn sample_filtered<T>(
    rng: &mut LawRng,
    target: u64,
    mut draw: impl FnMut(&mut LawRng) -> T,
    mut accept: impl FnMut(&T) -> bool,
    mut each: impl FnMut(T),
) -> u64 {
    let (mut taken, mut attempts) = (0, 0);
    while taken < target && attempts < target.saturating_mul(10) {
        attempts += 1;
        let x = draw(rng);
        if accept(&x) {
            taken += 1;
            each(x);
        }
    }
    attempts - taken
}

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub(crate) fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
