//! Relativistic (gyro) velocity addition in the `c`-ball.
//!
//! Two evaluations of the same sum are provided: the three-dimensional form
//! with the double cross product `u x (u x v)`, and the inner-product form
//! that works in any dimension. They agree in `R^3` by the Lagrange identity.
//! The operation is neither associative nor commutative.
//!
//! The module also carries the Möbius addition of the real unit ball and
//! its involutions `z -> w (+) (-z)`.

use serde::Serialize;

use crate::ball::BallVector;
use crate::error::{Error, Result};
use crate::params::Params;

/// Relative margin below `c` enforced on [`GyroVector3`] so that the gamma
/// factor stays finite.
pub const GAMMA_GUARD: f64 = 1e-15;

/// Denominators of Möbius addition below this magnitude are rejected.
pub const MOEBIUS_SINGULAR: f64 = 1e-14;

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[inline]
fn gamma_from_norm_sq(norm_sq: f64, c: f64) -> f64 {
    1.0 / (1.0 - norm_sq / (c * c)).sqrt()
}

/// A velocity in the open 3-ball of radius `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GyroVector3 {
    v: [f64; 3],
    params: Params,
}

impl GyroVector3 {
    pub fn new(x: f64, y: f64, z: f64, params: Params) -> Result<Self> {
        Self::from_array([x, y, z], params)
    }

    pub fn from_array(v: [f64; 3], params: Params) -> Result<Self> {
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite(format!("vector {v:?}")));
        }
        let n = norm(&v);
        let bound = params.c() * (1.0 - GAMMA_GUARD);
        if n >= bound {
            return Err(Error::NormOutOfBall { norm: n, bound });
        }
        Ok(Self { v, params })
    }

    pub fn zero(params: Params) -> Self {
        Self { v: [0.0; 3], params }
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.v
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn norm(&self) -> f64 {
        norm(&self.v)
    }
}

pub fn gamma(u: &GyroVector3) -> f64 {
    gamma_from_norm_sq(dot(&u.v, &u.v), u.params.c())
}

/// Gyro-addition evaluated with the cross-product form; valid only in `R^3`.
pub fn gyro_add_cross(u: &GyroVector3, v: &GyroVector3) -> GyroVector3 {
    let c2 = u.params.c() * u.params.c();
    let g = gamma(u);
    let k = g / (1.0 + g) / c2;
    let uuv = cross(&u.v, &cross(&u.v, &v.v));
    let denom = 1.0 + dot(&u.v, &v.v) / c2;
    let mut out = [0.0; 3];
    for i in 0..3 {
        out[i] = (u.v[i] + v.v[i] + k * uuv[i]) / denom;
    }
    GyroVector3 {
        v: out,
        params: u.params,
    }
}

/// Gyro-addition evaluated with inner products only, in any dimension.
pub fn gyro_add_inner_raw(u: &[f64], v: &[f64], c: f64) -> Result<Vec<f64>> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    let c2 = c * c;
    let uv = dot(u, v);
    let g = gamma_from_norm_sq(dot(u, u), c);
    let k = g / (1.0 + g) * uv / c2;
    let denom = 1.0 + uv / c2;
    Ok(u.iter().zip(v).map(|(a, b)| (a + b / g + k * a) / denom).collect())
}

pub fn gyro_add_inner(u: &BallVector, v: &BallVector) -> Result<BallVector> {
    let out = gyro_add_inner_raw(u.components(), v.components(), u.params().c())?;
    Ok(BallVector::from_raw(out, u.params()))
}

pub fn gyro_neg(u: &GyroVector3) -> GyroVector3 {
    GyroVector3 {
        v: u.v.map(|x| -x),
        params: u.params,
    }
}

/// `| a x (b x c) - (b <a|c> - c <a|b>) |`.
pub fn lagrange_check(a: &[f64; 3], b: &[f64; 3], c: &[f64; 3]) -> f64 {
    let lhs = cross(a, &cross(b, c));
    let ac = dot(a, c);
    let ab = dot(a, b);
    let diff: Vec<f64> = (0..3).map(|i| lhs[i] - (b[i] * ac - c[i] * ab)).collect();
    norm(&diff)
}

/// `| gamma(u (+) v) - gamma(u) gamma(v) (1 + <u|v>/c^2) |`.
pub fn gamma_identity_residual(u: &GyroVector3, v: &GyroVector3) -> f64 {
    let c2 = u.params.c() * u.params.c();
    let lhs = gamma(&gyro_add_cross(u, v));
    let rhs = gamma(u) * gamma(v) * (1.0 + dot(&u.v, &v.v) / c2);
    (lhs - rhs).abs()
}

/// A point of the open real unit ball.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnitBallVector {
    components: Vec<f64>,
}

impl UnitBallVector {
    pub fn new(components: Vec<f64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::DomainViolation("unit-ball vectors need dimension >= 1".into()));
        }
        if components.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite(format!("vector {components:?}")));
        }
        let n = norm(&components);
        if n >= 1.0 {
            return Err(Error::NormOutOfBall { norm: n, bound: 1.0 });
        }
        Ok(Self { components })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            components: vec![0.0; dim.max(1)],
        }
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn norm(&self) -> f64 {
        norm(&self.components)
    }

    pub fn neg(&self) -> Self {
        Self {
            components: self.components.iter().map(|x| -x).collect(),
        }
    }
}

pub fn moebius_add(w: &UnitBallVector, z: &UnitBallVector) -> Result<UnitBallVector> {
    if w.dim() != z.dim() {
        return Err(Error::DimensionMismatch {
            left: w.dim(),
            right: z.dim(),
        });
    }
    let w2 = dot(&w.components, &w.components);
    if w2 == 0.0 {
        return Ok(z.clone());
    }
    let wz = dot(&w.components, &z.components);
    let denom = 1.0 + wz;
    if denom.abs() < MOEBIUS_SINGULAR {
        return Err(Error::SingularDenominator(denom));
    }
    let s = (1.0 - w2).sqrt();
    let kw = 1.0 + wz / w2 * (1.0 - s);
    let components = w
        .components
        .iter()
        .zip(&z.components)
        .map(|(a, b)| (kw * a + s * b) / denom)
        .collect();
    Ok(UnitBallVector { components })
}

/// The self-map `z -> w (+) (-z)` of the ball; it is its own inverse.
pub fn moebius_involution(w: &UnitBallVector, z: &UnitBallVector) -> Result<UnitBallVector> {
    moebius_add(w, &z.neg())
}
