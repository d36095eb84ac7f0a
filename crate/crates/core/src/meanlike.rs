//! Mean-like aggregation of pairs `(a, b)`.
//!
//! The first coordinates are added in a field `(A, (+), (.))`. The second
//! coordinates are averaged in `B` through a bijection `zeta`, each weighted
//! by its share `a_i (.) (a_1 (+) a_2)^-1` of the combined first coordinate:
//!
//! ```text
//! (a1, b1) (+) (a2, b2) = (a1 (+) a2, zeta^-1[ w1 [.] zeta(b1) [+] w2 [.] zeta(b2) ])
//! ```
//!
//! The operation is associative whenever the relevant first-coordinate sums
//! are nonzero, and commutative when `[+]` is.
//!
//! For Einstein numbers with `A = [0, c)` and `B = (-c, c)` the rapidity of
//! the second coordinate becomes `eta^-1` of a weighted mean of `eta` applied
//! to the rapidities, with weights proportional to the rapidities of the
//! first coordinates. `eta(x) = x` gives an arithmetic mean and
//! `eta(x) = 1/x` (with `eta(0) = 0`) a harmonic one.

use std::fmt::Debug;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::multidim::BijectionDescriptor;
use crate::params::Params;
use crate::scalar::{add_open, clamp_open, mul_open};

/// A field `(A, (+), (.))`, possibly restricted to a domain.
pub trait ScalarSystem {
    type Elem: Copy + Debug;

    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn mul_inverse(&self, a: Self::Elem) -> Option<Self::Elem>;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: Self::Elem) -> bool;
    fn contains(&self, a: Self::Elem) -> bool;

    /// `a (.) b^-1`. Implementations may evaluate it more accurately than
    /// the composition.
    fn div(&self, a: Self::Elem, b: Self::Elem) -> Option<Self::Elem> {
        Some(self.mul(a, self.mul_inverse(b)?))
    }
}

/// The operations `[+]: B x B -> B`, `[.]: A x B -> B` and the bijection
/// `zeta: B -> B`.
pub trait ActionSystem<S: ScalarSystem> {
    type Elem: Copy + Debug;

    fn boxplus(&self, x: Self::Elem, y: Self::Elem) -> Self::Elem;
    fn boxdot(&self, p: S::Elem, x: Self::Elem) -> Self::Elem;
    fn zeta(&self, x: Self::Elem) -> Self::Elem;
    fn zeta_inv(&self, y: Self::Elem) -> Self::Elem;
    fn contains(&self, x: Self::Elem) -> bool;
}

/// The generic aggregation built from a scalar field and an action.
#[derive(Debug, Clone)]
pub struct Aggregation<S: ScalarSystem, A: ActionSystem<S>> {
    scalar: S,
    action: A,
    designated_b: A::Elem,
}

impl<S: ScalarSystem, A: ActionSystem<S>> Aggregation<S, A> {
    /// `designated_b` is returned as second coordinate when the first
    /// coordinates sum to zero.
    pub fn new(scalar: S, action: A, designated_b: A::Elem) -> Self {
        Self {
            scalar,
            action,
            designated_b,
        }
    }

    pub fn scalar(&self) -> &S {
        &self.scalar
    }

    pub fn action(&self) -> &A {
        &self.action
    }

    pub fn designated_b(&self) -> A::Elem {
        self.designated_b
    }

    pub fn agg_add(&self, p: (S::Elem, A::Elem), q: (S::Elem, A::Elem)) -> Result<(S::Elem, A::Elem)> {
        let sys = &self.scalar;
        let act = &self.action;
        let total = sys.add(p.0, q.0);
        if sys.is_zero(total) {
            return Ok((sys.zero(), self.designated_b));
        }
        let w1 = sys.div(p.0, total).ok_or(Error::InverseUndefined)?;
        let w2 = sys.div(q.0, total).ok_or(Error::InverseUndefined)?;
        let mixed = act.boxplus(act.boxdot(w1, act.zeta(p.1)), act.boxdot(w2, act.zeta(q.1)));
        Ok((total, act.zeta_inv(mixed)))
    }
}

/// The real field with ordinary arithmetic.
#[derive(Debug, Clone, Copy, Default)]
pub struct RealField;

impl ScalarSystem for RealField {
    type Elem = f64;

    fn add(&self, a: f64, b: f64) -> f64 {
        a + b
    }
    fn mul(&self, a: f64, b: f64) -> f64 {
        a * b
    }
    fn mul_inverse(&self, a: f64) -> Option<f64> {
        (a != 0.0).then(|| a.recip())
    }
    fn zero(&self) -> f64 {
        0.0
    }
    fn one(&self) -> f64 {
        1.0
    }
    fn is_zero(&self, a: f64) -> bool {
        a == 0.0
    }
    fn contains(&self, a: f64) -> bool {
        a.is_finite()
    }
    fn div(&self, a: f64, b: f64) -> Option<f64> {
        (b != 0.0).then(|| a / b)
    }
}

/// Reals acted on by real scalars, averaged through a bijection.
#[derive(Debug, Clone)]
pub struct RealAction {
    zeta: BijectionDescriptor,
}

impl RealAction {
    pub fn new(zeta: BijectionDescriptor) -> Self {
        Self { zeta }
    }
}

impl ActionSystem<RealField> for RealAction {
    type Elem = f64;

    fn boxplus(&self, x: f64, y: f64) -> f64 {
        x + y
    }
    fn boxdot(&self, p: f64, x: f64) -> f64 {
        p * x
    }
    fn zeta(&self, x: f64) -> f64 {
        self.zeta.forward(x)
    }
    fn zeta_inv(&self, y: f64) -> f64 {
        self.zeta.inverse(y)
    }
    fn contains(&self, x: f64) -> bool {
        self.zeta.in_domain(x)
    }
}

/// The Einstein field on `(-c, c)` with the transported product.
#[derive(Debug, Clone, Copy)]
pub struct EinsteinField {
    params: Params,
}

impl EinsteinField {
    pub fn new(params: Params) -> Self {
        Self { params }
    }

    #[inline]
    fn rapidity(&self, a: f64) -> f64 {
        (a / self.params.c()).atanh()
    }
}

impl ScalarSystem for EinsteinField {
    type Elem = f64;

    fn add(&self, a: f64, b: f64) -> f64 {
        add_open(a, b, self.params.c())
    }
    fn mul(&self, a: f64, b: f64) -> f64 {
        mul_open(a, b, self.params.c())
    }
    fn mul_inverse(&self, a: f64) -> Option<f64> {
        let c = self.params.c();
        (a != 0.0).then(|| clamp_open(c * self.rapidity(a).recip().tanh(), c))
    }
    fn zero(&self) -> f64 {
        0.0
    }
    fn one(&self) -> f64 {
        self.params.c() * 1f64.tanh()
    }
    fn is_zero(&self, a: f64) -> bool {
        a == 0.0
    }
    fn contains(&self, a: f64) -> bool {
        a.is_finite() && a.abs() < self.params.c()
    }
    // the quotient of rapidities; composing with mul_inverse loses it to
    // tanh saturation when the divisor is small
    fn div(&self, a: f64, b: f64) -> Option<f64> {
        let c = self.params.c();
        (b != 0.0).then(|| clamp_open(c * (self.rapidity(a) / self.rapidity(b)).tanh(), c))
    }
}

/// The map `eta` with `zeta(x) = c tanh(eta(atanh(x / c)))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Eta {
    /// `eta(x) = x`: arithmetic-mean-like.
    Identity,
    /// `eta(x) = 1/x`, `eta(0) = 0`: harmonic-mean-like. Its own inverse.
    Reciprocal,
}

impl Eta {
    #[inline]
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Eta::Identity => x,
            Eta::Reciprocal if x == 0.0 => 0.0,
            Eta::Reciprocal => x.recip(),
        }
    }

    #[inline]
    pub fn invert(self, y: f64) -> f64 {
        // both shipped maps are involutions
        self.apply(y)
    }
}

/// Einstein action on `B = (-c, c)`: `[+]` is Einstein addition, `[.]` the
/// transported product and `zeta` is built from `eta`.
#[derive(Debug, Clone, Copy)]
pub struct EinsteinAction {
    params: Params,
    eta: Eta,
}

impl EinsteinAction {
    pub fn new(params: Params, eta: Eta) -> Self {
        Self { params, eta }
    }
}

impl ActionSystem<EinsteinField> for EinsteinAction {
    type Elem = f64;

    fn boxplus(&self, x: f64, y: f64) -> f64 {
        add_open(x, y, self.params.c())
    }
    fn boxdot(&self, p: f64, x: f64) -> f64 {
        mul_open(p, x, self.params.c())
    }
    fn zeta(&self, x: f64) -> f64 {
        let c = self.params.c();
        clamp_open(c * self.eta.apply((x / c).atanh()).tanh(), c)
    }
    fn zeta_inv(&self, y: f64) -> f64 {
        let c = self.params.c();
        clamp_open(c * self.eta.invert((y / c).atanh()).tanh(), c)
    }
    fn contains(&self, x: f64) -> bool {
        x.is_finite() && x.abs() < self.params.c()
    }
}

/// The Einstein instantiation of [`Aggregation`] with `designated_b = 0`.
pub fn einstein_aggregation(params: Params, eta: Eta) -> Aggregation<EinsteinField, EinsteinAction> {
    Aggregation::new(EinsteinField::new(params), EinsteinAction::new(params, eta), 0.0)
}

/// An element of `[0, c) x (-c, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanPair {
    a: f64,
    b: f64,
    #[serde(skip)]
    params: Params,
}

impl MeanPair {
    pub fn new(a: f64, b: f64, params: Params) -> Result<Self> {
        let c = params.c();
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::NonFinite(format!("pair ({a}, {b})")));
        }
        if !(0.0..c).contains(&a) {
            return Err(Error::DomainViolation(format!("first coordinate {a} outside [0, {c})")));
        }
        if b <= -c || b >= c {
            return Err(Error::DomainViolation(format!(
                "second coordinate {b} outside (-{c}, {c})"
            )));
        }
        Ok(Self { a, b, params })
    }

    pub fn zero(params: Params) -> Self {
        Self { a: 0.0, b: 0.0, params }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn params(&self) -> Params {
        self.params
    }
}

/// Mean-like sum for a given `eta`, evaluated in rapidity space.
///
/// A zero first coordinate carries zero weight, so `(a, b) (+) (0, b')` is
/// `(a, b)` exactly. For the reciprocal `eta` a zero second coordinate
/// contributes `eta(0) = 0` to the weighted sum.
pub fn mean_add(eta: Eta, p: MeanPair, q: MeanPair) -> MeanPair {
    let params = p.params;
    let c = params.c();
    if p.a == 0.0 && q.a == 0.0 {
        return MeanPair::zero(params);
    }
    if q.a == 0.0 {
        return p;
    }
    if p.a == 0.0 {
        return q;
    }
    let a = add_open(p.a, q.a, c);
    let (ra, rb) = ((p.a / c).atanh(), (q.a / c).atanh());
    let total = ra + rb;
    let mixed = (ra / total) * eta.apply((p.b / c).atanh()) + (rb / total) * eta.apply((q.b / c).atanh());
    let b = clamp_open(c * eta.invert(mixed).tanh(), c);
    MeanPair { a, b, params }
}

/// Second coordinate: `c tanh` of the arithmetic mean of the rapidities of
/// `b_i`, weighted by the rapidities of `a_i`.
pub fn mean_add_arithmetic(p: MeanPair, q: MeanPair) -> MeanPair {
    mean_add(Eta::Identity, p, q)
}

/// Second coordinate: `c tanh` of the weighted harmonic mean of the
/// rapidities of `b_i`.
pub fn mean_add_harmonic(p: MeanPair, q: MeanPair) -> MeanPair {
    mean_add(Eta::Reciprocal, p, q)
}
