//! Einstein numbers and their generalisations.
//!
//! - [`scalar`]: the interval `(-c, c]` with Einstein addition, the absorbing
//!   element `c`, and the transported product on `(-c, c)`.
//! - [`ball`]: addition carried to the open `c`-ball of `R^n` through the
//!   radial tanh map, and the field structure on the complex disc.
//! - [`gyro`]: relativistic velocity addition (cross-product and
//!   inner-product forms), the gamma factor, and Möbius addition.
//! - [`multidim`]: chained-bijection maps, the monoid on `H_n` and the
//!   split-complex semi-field on `H_2^0`.
//! - [`meanlike`]: pair aggregation whose second coordinate is a weighted
//!   arithmetic or harmonic mean in rapidity space.
//!
//! All arithmetic is binary64. Values are immutable and every operation is
//! a pure function.

#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod ball;
pub mod error;
pub mod gyro;
pub mod meanlike;
pub mod multidim;
pub mod params;
pub mod scalar;

pub use ball::{BallVector, ComplexBallPoint, Euclidean, Norm};
pub use error::{Error, Result};
pub use gyro::{GyroVector3, UnitBallVector};
pub use meanlike::{ActionSystem, Aggregation, Eta, MeanPair, ScalarSystem};
pub use multidim::{BijectionDescriptor, ConePoint, DPoint, H2Point, HPoint};
pub use params::Params;
pub use scalar::{EScalar, ExtendedReal};
