//! Multi-dimensional transports built from chains of scalar bijections.
//!
//! Given bijections `f_0, f_1, ..., f_n` the chain map sends
//! `(x_1, ..., x_n)` to `(f_0(x_1), f_2(x_2)/f_1(x_1), ..., f_n(x_n)/f_{n-1}(x_{n-1}))`
//! and is undone by partial products of the ratio coordinates. With every
//! `f_i = tanh` the coordinatewise sum on the ordered cone
//! `D_n = {0 < x_n <= ... <= x_1} ∪ [0, inf) x {0}^(n-1)` becomes a commutative
//! monoid on `H_n = (0,1) x (0,1]^(n-1) ∪ [0,1) x {0}^(n-1)`.
//!
//! In two dimensions the larger cone `|x_2| < x_1` (plus the origin) is
//! closed under split-complex multiplication, which yields a semi-field with
//! zero on its image.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::add_open;

type RealMap = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type RealPredicate = Arc<dyn Fn(f64) -> bool + Send + Sync>;

/// A scalar bijection `f: D -> H` with its inverse.
///
/// Bijectivity is a caller contract; [`BijectionDescriptor::spot_check`]
/// samples it.
#[derive(Clone)]
pub struct BijectionDescriptor {
    name: String,
    forward: RealMap,
    inverse: RealMap,
    domain: RealPredicate,
    codomain: RealPredicate,
}

impl fmt::Debug for BijectionDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BijectionDescriptor")
            .field("name", &self.name)
            .finish_non_exhaustive()
    }
}

impl BijectionDescriptor {
    pub fn new<F, G, D, H>(name: impl Into<String>, forward: F, inverse: G, domain: D, codomain: H) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        G: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> bool + Send + Sync + 'static,
        H: Fn(f64) -> bool + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            forward: Arc::new(forward),
            inverse: Arc::new(inverse),
            domain: Arc::new(domain),
            codomain: Arc::new(codomain),
        }
    }

    /// Builds a descriptor and spot-checks `inverse(forward(x)) == x` on
    /// `samples` from the domain.
    #[allow(clippy::too_many_arguments)]
    pub fn checked<F, G, D, H>(
        name: impl Into<String>,
        forward: F,
        inverse: G,
        domain: D,
        codomain: H,
        samples: &[f64],
        tol: f64,
    ) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        G: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> bool + Send + Sync + 'static,
        H: Fn(f64) -> bool + Send + Sync + 'static,
    {
        let d = Self::new(name, forward, inverse, domain, codomain);
        d.spot_check(samples, tol)?;
        Ok(d)
    }

    pub fn identity() -> Self {
        Self::new("identity", |x| x, |y| y, f64::is_finite, f64::is_finite)
    }

    pub fn tanh() -> Self {
        Self::new("tanh", f64::tanh, f64::atanh, f64::is_finite, |y: f64| y.abs() < 1.0)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn forward(&self, x: f64) -> f64 {
        (self.forward)(x)
    }

    pub fn inverse(&self, y: f64) -> f64 {
        (self.inverse)(y)
    }

    pub fn in_domain(&self, x: f64) -> bool {
        (self.domain)(x)
    }

    pub fn in_codomain(&self, y: f64) -> bool {
        (self.codomain)(y)
    }

    pub fn spot_check(&self, samples: &[f64], tol: f64) -> Result<()> {
        for &x in samples.iter().filter(|&&x| self.in_domain(x)) {
            let back = self.inverse(self.forward(x));
            let err = (back - x).abs();
            if err.is_nan() || err > tol {
                return Err(Error::DomainViolation(format!(
                    "{}: inverse(forward({x})) = {back}",
                    self.name
                )));
            }
        }
        Ok(())
    }
}

/// `n + 1` copies of the same bijection, as needed for an `n`-coordinate chain.
pub fn uniform_family(f: BijectionDescriptor, n: usize) -> Vec<BijectionDescriptor> {
    vec![f; n + 1]
}

fn check_family(fs: &[BijectionDescriptor], n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::DomainViolation("chain maps need at least one coordinate".into()));
    }
    if fs.len() != n + 1 {
        return Err(Error::DomainViolation(format!(
            "{n} coordinates need {} bijections, got {}",
            n + 1,
            fs.len()
        )));
    }
    Ok(())
}

/// The ratio chain `(f_0(x_1), f_2(x_2)/f_1(x_1), ..., f_n(x_n)/f_{n-1}(x_{n-1}))`.
pub fn chain_forward(fs: &[BijectionDescriptor], x: &[f64]) -> Result<Vec<f64>> {
    let n = x.len();
    check_family(fs, n)?;
    if !fs[0].in_domain(x[0]) {
        return Err(Error::DomainViolation(format!("x_1 = {} outside domain of f_0", x[0])));
    }
    let mut out = Vec::with_capacity(n);
    out.push(fs[0].forward(x[0]));
    if n == 1 {
        return Ok(out);
    }
    let mut prev = 0.0;
    for i in 1..=n {
        let xi = x[i - 1];
        if !fs[i].in_domain(xi) {
            return Err(Error::DomainViolation(format!("x_{i} = {xi} outside domain of f_{i}")));
        }
        let fi = fs[i].forward(xi);
        if i >= 2 {
            out.push(fi / prev);
        }
        if i < n && fi == 0.0 {
            return Err(Error::DivisionByZero(i));
        }
        prev = fi;
    }
    Ok(out)
}

/// Inverse of [`chain_forward`] through partial products
/// `a y_2 ... y_i` with `a = f_1(f_0^{-1}(y_1))`.
pub fn chain_inverse(fs: &[BijectionDescriptor], y: &[f64]) -> Result<Vec<f64>> {
    let n = y.len();
    check_family(fs, n)?;
    if !fs[0].in_codomain(y[0]) {
        return Err(Error::DomainViolation(format!(
            "y_1 = {} outside codomain of f_0",
            y[0]
        )));
    }
    let first = fs[0].inverse(y[0]);
    let mut out = Vec::with_capacity(n);
    out.push(first);
    if n == 1 {
        return Ok(out);
    }
    let mut partial = fs[1].forward(first);
    for i in 2..=n {
        partial *= y[i - 1];
        if !fs[i].in_codomain(partial) {
            return Err(Error::DomainViolation(format!(
                "partial product {partial} at position {i} outside codomain of f_{i}"
            )));
        }
        out.push(fs[i].inverse(partial));
    }
    Ok(out)
}

/// Largest value below one; `tanh` saturates to exactly one for big inputs.
#[inline]
fn below_one(x: f64) -> f64 {
    if x >= 1.0 {
        1f64.next_down()
    } else if x <= -1.0 {
        (-1f64).next_up()
    } else {
        x
    }
}

/// A point of the ordered cone `D_n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DPoint {
    coords: Vec<f64>,
}

impl DPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() || coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::DomainViolation(format!("{coords:?} is not a point of D_n")));
        }
        let trailing_zero = coords[1..].iter().all(|&x| x == 0.0);
        let ordered = coords.last().is_some_and(|&x| x > 0.0) && coords.windows(2).all(|w| w[1] <= w[0]);
        if (trailing_zero && coords[0] >= 0.0) || ordered {
            Ok(Self { coords })
        } else {
            Err(Error::DomainViolation(format!("{coords:?} is not a point of D_n")))
        }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

/// A point of `H_n`, the image of `D_n` under the tanh chain.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HPoint {
    coords: Vec<f64>,
}

impl HPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() || coords.iter().any(|x| !x.is_finite()) {
            return Err(Error::DomainViolation(format!("{coords:?} is not a point of H_n")));
        }
        let first = coords[0];
        let rest = &coords[1..];
        let degenerate = (0.0..1.0).contains(&first) && rest.iter().all(|&x| x == 0.0);
        let regular = first > 0.0 && first < 1.0 && rest.iter().all(|&x| x > 0.0 && x <= 1.0);
        if degenerate || regular {
            Ok(Self { coords })
        } else {
            Err(Error::DomainViolation(format!("{coords:?} is not a point of H_n")))
        }
    }

    pub fn zero(n: usize) -> Self {
        Self {
            coords: vec![0.0; n.max(1)],
        }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0.0)
    }

    /// True when some ratio coordinate sits exactly on one.
    pub fn touches_one(&self) -> bool {
        self.coords[1..].contains(&1.0)
    }
}

/// The tanh chain `D_n -> H_n`.
pub fn tanh_chain_forward(x: &DPoint) -> HPoint {
    let c = &x.coords;
    let mut out = vec![0.0; c.len()];
    out[0] = below_one(c[0].tanh());
    if c.last().is_some_and(|&v| v > 0.0) && c.len() > 1 {
        for i in 1..c.len() {
            out[i] = (c[i].tanh() / c[i - 1].tanh()).min(1.0);
        }
    }
    HPoint { coords: out }
}

/// `(atanh x_1, atanh(x_1 x_2), ..., atanh(x_1 ... x_n))`, zeros on the degenerate branch.
pub fn tanh_chain_inverse(h: &HPoint) -> DPoint {
    let mut partial = 1.0;
    let coords = h
        .coords
        .iter()
        .map(|&y| {
            partial *= y;
            partial.atanh()
        })
        .collect();
    DPoint { coords }
}

/// Monoid operation on `H_n`: the coordinatewise sum of `D_n` carried over
/// by the tanh chain.
///
/// Coordinate `i > 1` is `(x_1..x_i (+) y_1..y_i) / (x_1..x_{i-1} (+) y_1..y_{i-1})`,
/// with `(+)` the unit Einstein sum and `0/0` read as `0`.
pub fn h_add(x: &HPoint, y: &HPoint) -> Result<HPoint> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    if y.is_zero() {
        return Ok(x.clone());
    }
    if x.is_zero() {
        return Ok(y.clone());
    }
    let n = x.dim();
    let mut out = Vec::with_capacity(n);
    let (mut px, mut py) = (x.coords[0], y.coords[0]);
    let mut prev = add_open(px, py, 1.0);
    out.push(prev);
    for i in 1..n {
        px *= x.coords[i];
        py *= y.coords[i];
        let num = add_open(px, py, 1.0);
        out.push(if num == 0.0 { 0.0 } else { (num / prev).min(1.0) });
        prev = num;
    }
    Ok(HPoint { coords: out })
}

/// A point of `D_2^0`: the open cone `|b| < a` together with the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConePoint {
    a: f64,
    b: f64,
}

impl ConePoint {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if (a == 0.0 && b == 0.0) || (b.abs() < a && a.is_finite()) {
            Ok(Self { a, b })
        } else {
            Err(Error::DomainViolation(format!("({a}, {b}) is not in the cone |b| < a")))
        }
    }

    pub fn origin() -> Self {
        Self { a: 0.0, b: 0.0 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn is_origin(&self) -> bool {
        self.a == 0.0 && self.b == 0.0
    }

    /// Membership check for values produced by arithmetic.
    pub fn in_cone(a: f64, b: f64) -> bool {
        (a == 0.0 && b == 0.0) || b.abs() < a
    }
}

/// Split-complex product `(a, b)(c, d) = (ac + bd, ad + bc)`.
pub fn hyperbolic_mul(p: ConePoint, q: ConePoint) -> ConePoint {
    ConePoint {
        a: p.a * q.a + p.b * q.b,
        b: p.a * q.b + p.b * q.a,
    }
}

/// `(a, -b) / (a^2 - b^2)`; the origin has no inverse.
pub fn hyperbolic_inverse(p: ConePoint) -> Result<ConePoint> {
    if p.is_origin() {
        return Err(Error::InverseUndefined);
    }
    let det = (p.a - p.b) * (p.a + p.b);
    Ok(ConePoint {
        a: p.a / det,
        b: -p.b / det,
    })
}

/// A point of `H_2^0`: `0 < y_1 < 1, |y_2| < 1`, or the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct H2Point {
    y1: f64,
    y2: f64,
}

impl H2Point {
    pub fn new(y1: f64, y2: f64) -> Result<Self> {
        let origin = y1 == 0.0 && y2 == 0.0;
        if origin || (y1 > 0.0 && y1 < 1.0 && y2.abs() < 1.0) {
            Ok(Self { y1, y2 })
        } else {
            Err(Error::DomainViolation(format!("({y1}, {y2}) is not a point of H_2^0")))
        }
    }

    pub fn zero() -> Self {
        Self { y1: 0.0, y2: 0.0 }
    }

    pub fn y1(&self) -> f64 {
        self.y1
    }

    pub fn y2(&self) -> f64 {
        self.y2
    }

    pub fn is_zero(&self) -> bool {
        self.y1 == 0.0 && self.y2 == 0.0
    }

    fn raw(y1: f64, y2: f64) -> Self {
        Self {
            y1: below_one(y1),
            y2: below_one(y2),
        }
    }
}

/// `F_2: D_2^0 -> H_2^0`, branching on the first coordinate.
pub fn cone_forward(p: ConePoint) -> H2Point {
    if p.a == 0.0 {
        return H2Point::zero();
    }
    let t = p.a.tanh();
    H2Point::raw(t, p.b.tanh() / t)
}

pub fn cone_inverse(h: H2Point) -> ConePoint {
    if h.is_zero() {
        return ConePoint::origin();
    }
    ConePoint {
        a: h.y1.atanh(),
        b: (h.y1 * h.y2).atanh(),
    }
}

pub fn h2_add(x: H2Point, y: H2Point) -> H2Point {
    if y.is_zero() {
        return x;
    }
    if x.is_zero() {
        return y;
    }
    let first = add_open(x.y1, y.y1, 1.0);
    let second = add_open(x.y1 * x.y2, y.y1 * y.y2, 1.0) / first;
    H2Point::raw(first, second)
}

/// Split-complex multiplication carried to `H_2^0` by `F_2`.
pub fn h2_mul(x: H2Point, y: H2Point) -> H2Point {
    if x.is_zero() || y.is_zero() {
        return H2Point::zero();
    }
    let (ax, bx) = (x.y1.atanh(), (x.y1 * x.y2).atanh());
    let (ay, by) = (y.y1.atanh(), (y.y1 * y.y2).atanh());
    let first = (ax * ay + bx * by).tanh();
    let second = (ay * bx + ax * by).tanh() / first;
    H2Point::raw(first, second)
}

/// `F_2(1, 0) = (tanh 1, 0)`.
pub fn h2_mul_identity() -> H2Point {
    H2Point {
        y1: 1f64.tanh(),
        y2: 0.0,
    }
}

pub fn h2_mul_inverse(x: H2Point) -> Result<H2Point> {
    Ok(cone_forward(hyperbolic_inverse(cone_inverse(x))?))
}
