//! Addition transported to the open `c`-ball of a finite-dimensional normed
//! space, and the matching field structure on the complex disc.
//!
//! A point `u` of the ball corresponds to the vector `atanh(|u|/c) u/|u|`
//! of the whole space (its rapidity vector). Sums and, in the complex case,
//! products are formed there and mapped back with `c tanh(|x|) x/|x|`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::Params;

/// Below this rapidity norm `tanh(r)/r` is replaced by its series.
pub const SERIES_THRESHOLD: f64 = 1e-8;

/// A norm on coordinate vectors. The ball maps only need the norm and
/// scalar multiplication, so any norm can be plugged in.
pub trait Norm {
    fn norm(&self, v: &[f64]) -> f64;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Euclidean;

impl Norm for Euclidean {
    fn norm(&self, v: &[f64]) -> f64 {
        v.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

#[inline]
fn scaled(v: &[f64], k: f64) -> Vec<f64> {
    v.iter().map(|x| k * x).collect()
}

/// `c tanh(|a|) a / |a|` for an arbitrary vector `a`.
pub fn to_ball<N: Norm>(norm: &N, a: &[f64], c: f64) -> Vec<f64> {
    let r = norm.norm(a);
    if r == 0.0 {
        return vec![0.0; a.len()];
    }
    let mut out = if r < SERIES_THRESHOLD {
        scaled(a, c * (1.0 - r * r / 3.0))
    } else {
        let radius = (c * r.tanh()).min(c.next_down());
        scaled(a, radius / r)
    };
    // rounding in the rescale can still land on the sphere
    while norm.norm(&out) >= c {
        out.iter_mut().for_each(|x| *x *= 1.0 - f64::EPSILON);
    }
    out
}

/// `atanh(|u|/c) u / |u|` for a point of the ball.
pub fn from_ball<N: Norm>(norm: &N, u: &[f64], c: f64) -> Vec<f64> {
    let r = norm.norm(u);
    if r == 0.0 {
        return vec![0.0; u.len()];
    }
    scaled(u, (r / c).atanh() / r)
}

/// A point of the open `c`-ball in `R^n` under the Euclidean norm.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BallVector {
    components: Vec<f64>,
    params: Params,
}

impl BallVector {
    pub fn new(components: Vec<f64>, params: Params) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::DomainViolation("ball vectors need dimension >= 1".into()));
        }
        if components.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite(format!("vector {components:?}")));
        }
        let norm = Euclidean.norm(&components);
        if norm >= params.c() {
            return Err(Error::NormOutOfBall {
                norm,
                bound: params.c(),
            });
        }
        Ok(Self { components, params })
    }

    pub fn zero(dim: usize, params: Params) -> Self {
        Self {
            components: vec![0.0; dim.max(1)],
            params,
        }
    }

    pub(crate) fn from_raw(components: Vec<f64>, params: Params) -> Self {
        Self { components, params }
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn into_components(self) -> Vec<f64> {
        self.components
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn norm(&self) -> f64 {
        Euclidean.norm(&self.components)
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|&x| x == 0.0)
    }
}

pub fn ball_phi(u: &[f64], p: Params) -> Result<BallVector> {
    if u.is_empty() {
        return Err(Error::DomainViolation("ball vectors need dimension >= 1".into()));
    }
    if u.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite(format!("vector {u:?}")));
    }
    Ok(BallVector::from_raw(to_ball(&Euclidean, u, p.c()), p))
}

pub fn ball_phi_inv(u: &BallVector) -> Vec<f64> {
    from_ball(&Euclidean, &u.components, u.params.c())
}

/// Sum computed in rapidity space, for any norm.
pub fn ball_add_with<N: Norm>(norm: &N, u: &[f64], v: &[f64], c: f64) -> Result<Vec<f64>> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    if u.iter().all(|&x| x == 0.0) {
        return Ok(v.to_vec());
    }
    if v.iter().all(|&x| x == 0.0) {
        return Ok(u.to_vec());
    }
    let a: Vec<f64> = from_ball(norm, u, c)
        .into_iter()
        .zip(from_ball(norm, v, c))
        .map(|(x, y)| x + y)
        .collect();
    Ok(to_ball(norm, &a, c))
}

pub fn ball_add(u: &BallVector, v: &BallVector) -> Result<BallVector> {
    let sum = ball_add_with(&Euclidean, &u.components, &v.components, u.params.c())?;
    Ok(BallVector::from_raw(sum, u.params))
}

pub fn ball_neg(u: &BallVector) -> BallVector {
    BallVector::from_raw(u.components.iter().map(|x| -x).collect(), u.params)
}

/// A point of the open disc `|z| < c` in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexBallPoint {
    z: Complex64,
    params: Params,
}

impl ComplexBallPoint {
    pub fn new(re: f64, im: f64, params: Params) -> Result<Self> {
        if !(re.is_finite() && im.is_finite()) {
            return Err(Error::NonFinite(format!("complex point ({re}, {im})")));
        }
        let z = Complex64::new(re, im);
        let norm = z.norm();
        if norm >= params.c() {
            return Err(Error::NormOutOfBall {
                norm,
                bound: params.c(),
            });
        }
        Ok(Self { z, params })
    }

    pub fn from_polar(r: f64, theta: f64, params: Params) -> Result<Self> {
        let z = Complex64::from_polar(r, theta);
        Self::new(z.re, z.im, params)
    }

    pub fn zero(params: Params) -> Self {
        Self {
            z: Complex64::new(0.0, 0.0),
            params,
        }
    }

    pub fn re(&self) -> f64 {
        self.z.re
    }

    pub fn im(&self) -> f64 {
        self.z.im
    }

    pub fn value(&self) -> Complex64 {
        self.z
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn modulus(&self) -> f64 {
        self.z.norm()
    }

    pub fn arg(&self) -> f64 {
        self.z.arg()
    }

    fn rapidity(&self) -> Complex64 {
        let r = self.z.norm();
        if r == 0.0 {
            return self.z;
        }
        self.z * ((r / self.params.c()).atanh() / r)
    }

    fn from_rapidity(a: Complex64, params: Params) -> Self {
        let v = to_ball(&Euclidean, &[a.re, a.im], params.c());
        Self {
            z: Complex64::new(v[0], v[1]),
            params,
        }
    }
}

pub fn complex_add(u: ComplexBallPoint, v: ComplexBallPoint) -> ComplexBallPoint {
    let sum = ball_add_with(&Euclidean, &[u.z.re, u.z.im], &[v.z.re, v.z.im], u.params.c())
        .expect("both operands are two-dimensional");
    ComplexBallPoint {
        z: Complex64::new(sum[0], sum[1]),
        params: u.params,
    }
}

pub fn complex_neg(u: ComplexBallPoint) -> ComplexBallPoint {
    ComplexBallPoint {
        z: -u.z,
        params: u.params,
    }
}

/// Product transported from complex multiplication. Moduli compose as the
/// scalar transported product and arguments add.
pub fn complex_mul(u: ComplexBallPoint, v: ComplexBallPoint) -> ComplexBallPoint {
    if u.z.norm() == 0.0 || v.z.norm() == 0.0 {
        return ComplexBallPoint::zero(u.params);
    }
    ComplexBallPoint::from_rapidity(u.rapidity() * v.rapidity(), u.params)
}

/// Multiplicative identity: modulus `c tanh 1` at angle zero.
pub fn complex_mul_identity(p: Params) -> ComplexBallPoint {
    ComplexBallPoint {
        z: Complex64::new(p.c() * 1f64.tanh(), 0.0),
        params: p,
    }
}

/// Inverse for [`complex_mul`]; zero has none.
pub fn complex_mul_inverse(u: ComplexBallPoint) -> Result<ComplexBallPoint> {
    if u.z.norm() == 0.0 {
        return Err(Error::InverseUndefined);
    }
    Ok(ComplexBallPoint::from_rapidity(u.rapidity().inv(), u.params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{e_add, EScalar};
    use approx::assert_abs_diff_eq;

    fn unit() -> Params {
        Params::unit()
    }

    fn bv(c: &[f64]) -> BallVector {
        BallVector::new(c.to_vec(), unit()).unwrap()
    }

    #[test]
    fn rejects_points_outside_ball() {
        assert!(matches!(
            BallVector::new(vec![0.6, 0.8], unit()),
            Err(Error::NormOutOfBall { .. })
        ));
        assert!(BallVector::new(vec![], unit()).is_err());
        assert!(BallVector::new(vec![0.5, f64::NAN], unit()).is_err());
        assert!(ComplexBallPoint::new(1.0, 0.0, unit()).is_err());
    }

    #[test]
    fn phi_spot_values() {
        assert_eq!(ball_phi(&[0.0, 0.0], unit()).unwrap().components(), &[0.0, 0.0]);
        let u = ball_phi(&[1.0, 0.0], unit()).unwrap();
        assert_abs_diff_eq!(u.components()[0], 0.761594155955764888, epsilon = 1e-15);
        assert_eq!(u.components()[1], 0.0);
        // mpmath: 3/5 tanh 5, 4/5 tanh 5
        let w = ball_phi(&[3.0, 4.0], unit()).unwrap();
        assert_abs_diff_eq!(w.components()[0], 0.599945522557557079, epsilon = 1e-15);
        assert_abs_diff_eq!(w.components()[1], 0.799927363410076105, epsilon = 1e-15);
    }

    #[test]
    fn phi_of_huge_vector_stays_inside() {
        let u = ball_phi(&[300.0, -400.0, 1.0], unit()).unwrap();
        assert!(u.norm() < 1.0);
    }

    #[test]
    fn phi_inv_spot_values() {
        assert_eq!(ball_phi_inv(&bv(&[0.0, 0.0])), vec![0.0, 0.0]);
        let back = ball_phi_inv(&bv(&[1f64.tanh(), 0.0]));
        assert_abs_diff_eq!(back[0], 1.0, epsilon = 1e-15);
        let r = ball_phi_inv(&bv(&[0.8, 0.0]));
        assert_abs_diff_eq!(r[0], 1.098612288668109691, epsilon = 1e-15);
    }

    #[test]
    fn add_identity_inverse_and_collinear() {
        let u = bv(&[0.3, -0.2, 0.5]);
        assert_eq!(ball_add(&u, &BallVector::zero(3, unit())).unwrap(), u);
        let z = ball_add(&u, &ball_neg(&u)).unwrap();
        assert!(z.norm() <= 1e-15);
        let s = ball_add(&bv(&[0.5, 0.0]), &bv(&[0.5, 0.0])).unwrap();
        assert_abs_diff_eq!(s.components()[0], 0.8, epsilon = 1e-15);
        assert_eq!(s.components()[1], 0.0);
    }

    #[test]
    fn add_dimension_mismatch() {
        let e = ball_add(&bv(&[0.1]), &bv(&[0.1, 0.2])).unwrap_err();
        assert_eq!(e, Error::DimensionMismatch { left: 1, right: 2 });
    }

    #[test]
    fn tiny_rapidity_uses_series() {
        let u = bv(&[1e-10, 0.0]);
        let v = bv(&[-0.5e-10, 1e-11]);
        let s = ball_add(&u, &v).unwrap();
        assert_abs_diff_eq!(s.components()[0], 0.5e-10, epsilon = 1e-24);
        assert_abs_diff_eq!(s.components()[1], 1e-11, epsilon = 1e-24);
    }

    #[test]
    fn dimension_one_matches_scalar() {
        let p = unit();
        for &(a, b) in &[(0.5, 0.5), (-0.3, 0.9), (0.99, -0.98), (0.1, 0.2)] {
            let s = ball_add(&bv(&[a]), &bv(&[b])).unwrap();
            let e = e_add(EScalar::new(a, p).unwrap(), EScalar::new(b, p).unwrap());
            assert_abs_diff_eq!(s.components()[0], e.value(), epsilon = 1e-14);
        }
    }

    #[test]
    fn complex_spot_values() {
        let p = unit();
        let z = ComplexBallPoint::new(0.3, 0.2, p).unwrap();
        assert_eq!(complex_add(z, ComplexBallPoint::zero(p)), z);
        let s = complex_add(
            ComplexBallPoint::new(0.5, 0.0, p).unwrap(),
            ComplexBallPoint::new(0.5, 0.0, p).unwrap(),
        );
        assert_abs_diff_eq!(s.re(), 0.8, epsilon = 1e-15);
        assert_eq!(s.im(), 0.0);
        let n = complex_add(z, ComplexBallPoint::new(-0.3, -0.2, p).unwrap());
        assert!(n.modulus() < 1e-15);
    }

    #[test]
    fn complex_mul_spot_values() {
        let p = unit();
        let h = ComplexBallPoint::new(0.5, 0.0, p).unwrap();
        let m = complex_mul(h, h);
        assert_abs_diff_eq!(m.re(), 0.292901619409905089, epsilon = 1e-15);
        assert_eq!(m.arg(), 0.0);

        let u = ComplexBallPoint::from_polar(0.3, std::f64::consts::FRAC_PI_4, p).unwrap();
        let e = complex_mul(u, complex_mul_identity(p));
        assert_abs_diff_eq!(e.re(), u.re(), epsilon = 1e-15);
        assert_abs_diff_eq!(e.im(), u.im(), epsilon = 1e-15);

        assert_eq!(complex_mul(u, ComplexBallPoint::zero(p)).modulus(), 0.0);
    }

    #[test]
    fn complex_inverse() {
        let p = unit();
        let u = ComplexBallPoint::from_polar(0.7, 2.0, p).unwrap();
        let one = complex_mul(u, complex_mul_inverse(u).unwrap());
        let id = complex_mul_identity(p);
        assert_abs_diff_eq!(one.re(), id.re(), epsilon = 1e-14);
        assert_abs_diff_eq!(one.im(), 0.0, epsilon = 1e-14);
        assert_eq!(
            complex_mul_inverse(ComplexBallPoint::zero(p)),
            Err(Error::InverseUndefined)
        );
    }
}
