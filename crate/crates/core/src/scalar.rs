//! One-dimensional Einstein numbers.
//!
//! The carrier is the half-open interval `(-c, c]`. The open part `(-c, c)`
//! is the image of the real line under `x -> c * tanh(x)`; the endpoint `c`
//! is the image of the extra point at infinity and absorbs everything under
//! addition.
//!
//! Addition is evaluated with the rational form `(u + v) / (1 + uv / c^2)`,
//! never through `atanh`, so it stays accurate next to the boundary.
//! Multiplication is the transported product
//! `c * tanh(atanh(u / c) * atanh(v / c))` and is only defined on `(-c, c)`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::Params;

/// A real number or the single point at infinity of the projective line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ExtendedReal {
    Finite(f64),
    Infinity,
}

impl ExtendedReal {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedReal::Infinity)
    }

    pub fn finite(&self) -> Option<f64> {
        match *self {
            ExtendedReal::Finite(v) => Some(v),
            ExtendedReal::Infinity => None,
        }
    }
}

impl From<f64> for ExtendedReal {
    fn from(v: f64) -> Self {
        ExtendedReal::Finite(v)
    }
}

/// An element of `(-c, c]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EScalar {
    value: f64,
    params: Params,
}

impl EScalar {
    pub fn new(value: f64, params: Params) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::NonFinite(format!("scalar value {value}")));
        }
        let c = params.c();
        if value <= -c || value > c {
            return Err(Error::OutOfInterval { value, c });
        }
        Ok(Self { value, params })
    }

    /// The absorbing element `c`.
    pub fn boundary(params: Params) -> Self {
        Self {
            value: params.c(),
            params,
        }
    }

    pub fn zero(params: Params) -> Self {
        Self { value: 0.0, params }
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.value
    }

    #[inline]
    pub fn params(&self) -> Params {
        self.params
    }

    #[inline]
    pub fn is_boundary(&self) -> bool {
        self.value == self.params.c()
    }

    /// Rapidity `atanh(value / c)`; `None` for the boundary element.
    pub fn rapidity(&self) -> Option<f64> {
        if self.is_boundary() {
            None
        } else {
            Some((self.value / self.params.c()).atanh())
        }
    }
}

/// Pulls a value that rounding pushed onto `±c` back into the open interval.
#[inline]
pub(crate) fn clamp_open(x: f64, c: f64) -> f64 {
    if x >= c {
        c.next_down()
    } else if x <= -c {
        (-c).next_up()
    } else {
        x
    }
}

/// Einstein sum of two values of the open interval `(-c, c)`.
///
/// This is the single code path for scalar addition; [`e_add`] and the
/// mean-like first coordinate both go through it.
///
/// With opposite signs the denominator `1 + uv/c^2` cancels as both operands
/// near the boundary, so it is rewritten through the gaps `c - |u|` and
/// `c - |v|`, which are exact there.
#[inline]
pub fn add_open(u: f64, v: f64, c: f64) -> f64 {
    let denom = if u * v < 0.0 {
        let (du, dv) = (c - u.abs(), c - v.abs());
        (du + dv - du * dv / c) / c
    } else {
        1.0 + u * v / (c * c)
    };
    clamp_open((u + v) / denom, c)
}

/// Transported product on `(-c, c)`.
#[inline]
pub fn mul_open(u: f64, v: f64, c: f64) -> f64 {
    clamp_open(c * ((u / c).atanh() * (v / c).atanh()).tanh(), c)
}

/// `c * tanh(v)` for finite `v`, and exactly `c` for infinity.
///
/// A finite argument never lands on `c`: when `tanh` rounds to one the
/// result is the largest float below `c`.
pub fn phi(v: ExtendedReal, p: Params) -> EScalar {
    let c = p.c();
    match v {
        ExtendedReal::Infinity => EScalar::boundary(p),
        ExtendedReal::Finite(x) => EScalar {
            value: clamp_open(c * x.tanh(), c),
            params: p,
        },
    }
}

pub fn phi_inv(u: EScalar) -> ExtendedReal {
    match u.rapidity() {
        Some(r) => ExtendedReal::Finite(r),
        None => ExtendedReal::Infinity,
    }
}

pub fn e_add(u: EScalar, v: EScalar) -> EScalar {
    let p = u.params;
    if u.is_boundary() || v.is_boundary() {
        return EScalar::boundary(p);
    }
    EScalar {
        value: add_open(u.value, v.value, p.c()),
        params: p,
    }
}

/// Group inverse on `(-c, c)`.
pub fn e_neg(u: EScalar) -> Result<EScalar> {
    if u.is_boundary() {
        return Err(Error::BoundaryNotInvertible);
    }
    Ok(EScalar {
        value: -u.value,
        params: u.params,
    })
}

pub fn e_mul(u: EScalar, v: EScalar) -> Result<EScalar> {
    if u.is_boundary() || v.is_boundary() {
        return Err(Error::BoundaryNotInvertible);
    }
    let p = u.params;
    Ok(EScalar {
        value: mul_open(u.value, v.value, p.c()),
        params: p,
    })
}

/// Multiplicative identity of [`e_mul`], the point with rapidity one.
pub fn mul_identity(p: Params) -> EScalar {
    EScalar {
        value: p.c() * 1f64.tanh(),
        params: p,
    }
}

/// Inverse with respect to [`e_mul`]; undefined for zero and for `c`.
pub fn e_mul_inverse(u: EScalar) -> Result<EScalar> {
    match u.rapidity() {
        None => Err(Error::BoundaryNotInvertible),
        Some(0.0) => Err(Error::InverseUndefined),
        Some(r) => {
            let c = u.params.c();
            Ok(EScalar {
                value: clamp_open(c * r.recip().tanh(), c),
                params: u.params,
            })
        }
    }
}

/// Order inherited from the reals; `c` is the maximum.
pub fn e_compare(u: EScalar, v: EScalar) -> Ordering {
    u.value.total_cmp(&v.value)
}

impl PartialOrd for EScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(e_compare(*self, *other))
    }
}
