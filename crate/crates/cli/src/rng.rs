//! Per-law sampling streams.
//!
//! Every law draws from ChaCha8 keyed by the run seed, on a stream chosen by
//! the 64-bit FNV-1a hash of the law name. Laws are therefore independent of
//! evaluation order and of each other.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type LawRng = ChaCha8Rng;

pub fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

pub fn law_rng(seed: u64, law: &str) -> LawRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(fnv1a(law.as_bytes()));
    rng
}

/// Uniform on `[lo, hi)`.
pub fn uniform(rng: &mut LawRng, lo: f64, hi: f64) -> f64 {
    if lo >= hi {
        return lo;
    }
    rng.random_range(lo..hi)
}

/// Magnitude uniform on `[lo, hi)` with a random sign.
pub fn signed(rng: &mut LawRng, lo: f64, hi: f64) -> f64 {
    let m = uniform(rng, lo, hi);
    if rng.random_bool(0.5) {
        -m
    } else {
        m
    }
}

pub fn chance(rng: &mut LawRng, p: f64) -> bool {
    rng.random_bool(p)
}

pub fn direction(rng: &mut LawRng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// A vector with uniformly random direction and norm uniform on `[lo, hi)`.
pub fn ball_point(rng: &mut LawRng, dim: usize, lo: f64, hi: f64) -> Vec<f64> {
    let r = uniform(rng, lo, hi);
    direction(rng, dim).into_iter().map(|x| x * r).collect()
}

pub fn ball_point3(rng: &mut LawRng, lo: f64, hi: f64) -> [f64; 3] {
    let v = ball_point(rng, 3, lo, hi);
    [v[0], v[1], v[2]]
}
