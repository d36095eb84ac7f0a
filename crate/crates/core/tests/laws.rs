//! Algebraic laws checked with proptest, against oracles written out here
//! independently of the library's evaluation paths.

#![allow(clippy::excessive_precision)]
use hypervel_core::ball::{self, BallVector, ComplexBallPoint};
use hypervel_core::gyro::{self, GyroVector3, UnitBallVector};
use hypervel_core::meanlike::{self, MeanPair};
use hypervel_core::multidim::{self, ConePoint, H2Point, HPoint};
use hypervel_core::scalar::{self, EScalar, ExtendedReal};
use hypervel_core::Params;
use proptest::prelude::*;

fn unit() -> Params {
    Params::unit()
}

fn s(v: f64) -> EScalar {
    EScalar::new(v, unit()).unwrap()
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// Radial tanh map written directly from its definition.
fn oracle_phi(u: &[f64], c: f64) -> Vec<f64> {
    let r = u.iter().map(|x| x * x).sum::<f64>().sqrt();
    if r == 0.0 {
        return u.to_vec();
    }
    u.iter().map(|x| c * r.tanh() / r * x).collect()
}

fn oracle_phi_inv(u: &[f64], c: f64) -> Vec<f64> {
    let r = u.iter().map(|x| x * x).sum::<f64>().sqrt();
    if r == 0.0 {
        return u.to_vec();
    }
    u.iter().map(|x| (r / c).atanh() / r * x).collect()
}

fn ball_point(dim: usize, max: f64) -> impl Strategy<Value = Vec<f64>> {
    (prop::collection::vec(-1.0f64..1.0, dim), 0.0..max).prop_map(move |(dir, r)| {
        let n = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n < 1e-9 {
            return vec![0.0; dir.len()];
        }
        dir.iter().map(|x| x / n * r).collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn scalar_add_is_commutative_bitwise(u in -0.999f64..0.999, v in -0.999f64..0.999) {
        prop_assert_eq!(scalar::e_add(s(u), s(v)).value(), scalar::e_add(s(v), s(u)).value());
    }

    #[test]
    fn scalar_add_is_associative(u in -0.99f64..0.99, v in -0.99f64..0.99, w in -0.99f64..0.99) {
        let l = scalar::e_add(scalar::e_add(s(u), s(v)), s(w)).value();
        let r = scalar::e_add(s(u), scalar::e_add(s(v), s(w))).value();
        prop_assert!((l - r).abs() <= 1e-12);
    }

    #[test]
    fn scalar_closure_and_absorption(u in -0.999999f64..=1.0, v in -0.999999f64..=1.0) {
        let r = scalar::e_add(s(u), s(v));
        prop_assert!(r.value() > -1.0 && r.value() <= 1.0);
        prop_assert_eq!(r.is_boundary(), u == 1.0 || v == 1.0);
    }

    #[test]
    fn scalar_isomorphism_transport(x in -5.0f64..5.0, y in -5.0f64..5.0) {
        let p = unit();
        let lhs = scalar::e_add(scalar::phi(x.into(), p), scalar::phi(y.into(), p)).value();
        prop_assert!((lhs - (x + y).tanh()).abs() <= 1e-12);
    }

    #[test]
    fn scalar_distributivity(u in -0.9f64..0.9, v in -0.9f64..0.9, w in -0.9f64..0.9) {
        let l = scalar::e_mul(s(u), scalar::e_add(s(v), s(w))).unwrap().value();
        let r = scalar::e_add(scalar::e_mul(s(u), s(v)).unwrap(), scalar::e_mul(s(u), s(w)).unwrap()).value();
        prop_assert!((l - r).abs() <= 1e-9);
    }

    #[test]
    fn scalar_phi_round_trip(u in -0.99f64..0.99, c in 0.1f64..100.0) {
        let p = Params::new(c).unwrap();
        let e = EScalar::new(u * c, p).unwrap();
        let back = scalar::phi(scalar::phi_inv(e), p).value();
        prop_assert!((back - e.value()).abs() <= 1e-12 * c);
    }

    #[test]
    fn scalar_newtonian_limit(u in -10.0f64..10.0, v in -10.0f64..10.0) {
        let c = 1e6 * u.abs().max(v.abs()).max(1e-3);
        let p = Params::new(c).unwrap();
        let r = scalar::e_add(EScalar::new(u, p).unwrap(), EScalar::new(v, p).unwrap()).value();
        prop_assert!((r - (u + v)).abs() <= 1e-9 * (u.abs() + v.abs()));
    }

    #[test]
    fn ball_add_matches_brute_force(u in ball_point(3, 0.95), v in ball_point(3, 0.95)) {
        let bu = BallVector::new(u.clone(), unit()).unwrap();
        let bv = BallVector::new(v.clone(), unit()).unwrap();
        let sum = ball::ball_add(&bu, &bv).unwrap();
        let a: Vec<f64> = oracle_phi_inv(&u, 1.0).iter().zip(oracle_phi_inv(&v, 1.0)).map(|(x, y)| x + y).collect();
        prop_assert!(dist(sum.components(), &oracle_phi(&a, 1.0)) <= 1e-12);
        prop_assert!(sum.norm() < 1.0);
    }

    #[test]
    fn ball_group_laws(u in ball_point(7, 0.9), v in ball_point(7, 0.9), w in ball_point(7, 0.9)) {
        let (bu, bv, bw) = (
            BallVector::new(u, unit()).unwrap(),
            BallVector::new(v, unit()).unwrap(),
            BallVector::new(w, unit()).unwrap(),
        );
        let l = ball::ball_add(&ball::ball_add(&bu, &bv).unwrap(), &bw).unwrap();
        let r = ball::ball_add(&bu, &ball::ball_add(&bv, &bw).unwrap()).unwrap();
        prop_assert!(dist(l.components(), r.components()) <= 1e-9);
        let uv = ball::ball_add(&bu, &bv).unwrap();
        let vu = ball::ball_add(&bv, &bu).unwrap();
        prop_assert!(dist(uv.components(), vu.components()) <= 1e-12);
        prop_assert!(ball::ball_add(&bu, &ball::ball_neg(&bu)).unwrap().norm() <= 1e-12);
    }

    #[test]
    fn ball_collinear_norm_composition(d in ball_point(4, 1.0), r1 in 0.0f64..0.99, r2 in 0.0f64..0.99) {
        let n = d.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assume!(n > 1e-3);
        let unit_dir: Vec<f64> = d.iter().map(|x| x / n).collect();
        let u = BallVector::new(unit_dir.iter().map(|x| x * r1).collect(), unit()).unwrap();
        let v = BallVector::new(unit_dir.iter().map(|x| x * r2).collect(), unit()).unwrap();
        let sum = ball::ball_add(&u, &v).unwrap();
        prop_assert!((sum.norm() - (r1 + r2) / (1.0 + r1 * r2)).abs() <= 1e-12);
    }

    #[test]
    fn complex_field_laws(
        (r1, t1) in (0.01f64..0.9, -3.1f64..3.1),
        (r2, t2) in (0.01f64..0.9, -3.1f64..3.1),
        (r3, t3) in (0.01f64..0.9, -3.1f64..3.1),
    ) {
        let p = unit();
        let u = ComplexBallPoint::from_polar(r1, t1, p).unwrap();
        let v = ComplexBallPoint::from_polar(r2, t2, p).unwrap();
        let w = ComplexBallPoint::from_polar(r3, t3, p).unwrap();
        let l = ball::complex_mul(u, ball::complex_add(v, w));
        let r = ball::complex_add(ball::complex_mul(u, v), ball::complex_mul(u, w));
        prop_assert!((l.value() - r.value()).norm() <= 1e-9);
        // polar form: modulus tanh(atanh r1 * atanh r2), argument t1 + t2
        let m = ball::complex_mul(u, v);
        prop_assert!((m.modulus() - (r1.atanh() * r2.atanh()).tanh()).abs() <= 1e-12);
        let diff = (m.arg() - (t1 + t2)).rem_euclid(std::f64::consts::TAU);
        prop_assert!(diff.min(std::f64::consts::TAU - diff) <= 1e-12);
    }

    #[test]
    fn gyro_forms_agree(u in ball_point(3, 0.95), v in ball_point(3, 0.95)) {
        let p = unit();
        let gu = GyroVector3::from_array([u[0], u[1], u[2]], p).unwrap();
        let gv = GyroVector3::from_array([v[0], v[1], v[2]], p).unwrap();
        let cross = gyro::gyro_add_cross(&gu, &gv);
        let inner = gyro::gyro_add_inner_raw(&u, &v, 1.0).unwrap();
        prop_assert!(dist(&cross.as_array(), &inner) <= 1e-12);
        prop_assert!(cross.norm() < 1.0);
    }

    #[test]
    fn gyro_gamma_identity(u in ball_point(3, 0.9), v in ball_point(3, 0.9)) {
        let p = unit();
        let gu = GyroVector3::from_array([u[0], u[1], u[2]], p).unwrap();
        let gv = GyroVector3::from_array([v[0], v[1], v[2]], p).unwrap();
        prop_assert!(gyro::gamma_identity_residual(&gu, &gv) <= 1e-12);
    }

    #[test]
    fn gyro_parallel_reduction(d in ball_point(3, 1.0), r1 in 0.0f64..0.95, r2 in 0.0f64..0.95) {
        let n = d.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assume!(n > 1e-3);
        let p = unit();
        let e: Vec<f64> = d.iter().map(|x| x / n).collect();
        let u = GyroVector3::from_array([e[0] * r1, e[1] * r1, e[2] * r1], p).unwrap();
        let v = GyroVector3::from_array([e[0] * r2, e[1] * r2, e[2] * r2], p).unwrap();
        let expected: Vec<f64> = e.iter().map(|x| x * (r1 + r2) / (1.0 + r1 * r2)).collect();
        prop_assert!(dist(&gyro::gyro_add_cross(&u, &v).as_array(), &expected) <= 1e-12);
    }

    #[test]
    fn moebius_involution_twice(w in ball_point(2, 0.9), z in ball_point(2, 0.9)) {
        let w = UnitBallVector::new(w).unwrap();
        let z = UnitBallVector::new(z).unwrap();
        let twice = gyro::moebius_involution(&w, &gyro::moebius_involution(&w, &z).unwrap()).unwrap();
        prop_assert!(dist(twice.components(), z.components()) <= 1e-10);
    }

    #[test]
    fn h_add_is_the_transport(x in prop::collection::vec(0.1f64..0.9, 3), y in prop::collection::vec(0.1f64..0.9, 3)) {
        let hx = HPoint::new(x.clone()).unwrap();
        let hy = HPoint::new(y.clone()).unwrap();
        // F^-1 by partial products, coordinatewise sum, F by tanh ratios
        let inv = |h: &[f64]| -> Vec<f64> {
            let mut acc = 1.0;
            h.iter().map(|v| { acc *= v; f64::atanh(acc) }).collect()
        };
        let d: Vec<f64> = inv(&x).iter().zip(inv(&y)).map(|(a, b)| a + b).collect();
        let mut expected = vec![d[0].tanh()];
        for i in 1..d.len() {
            expected.push(d[i].tanh() / d[i - 1].tanh());
        }
        let sum = multidim::h_add(&hx, &hy).unwrap();
        prop_assert!(dist(sum.coords(), &expected) <= 1e-9);
        let rev = multidim::h_add(&hy, &hx).unwrap();
        prop_assert!(dist(sum.coords(), rev.coords()) <= 1e-9);
    }

    #[test]
    fn cone_is_closed(a in 0.01f64..10.0, fb in -0.99f64..0.99, c in 0.01f64..10.0, fd in -0.99f64..0.99) {
        let p = ConePoint::new(a, a * fb).unwrap();
        let q = ConePoint::new(c, c * fd).unwrap();
        let r = multidim::hyperbolic_mul(p, q);
        prop_assert!(ConePoint::in_cone(r.a(), r.b()));
    }

    #[test]
    fn h2_semifield_distributes(
        (x1, fx) in (0.1f64..0.8, -0.9f64..0.9),
        (y1, fy) in (0.1f64..0.8, -0.9f64..0.9),
        (z1, fz) in (0.1f64..0.8, -0.9f64..0.9),
    ) {
        let pt = |a: f64, f: f64| multidim::cone_forward(ConePoint::new(a, a * f).unwrap());
        let (x, y, z) = (pt(x1, fx), pt(y1, fy), pt(z1, fz));
        let l = multidim::h2_mul(x, multidim::h2_add(y, z));
        let r = multidim::h2_add(multidim::h2_mul(x, y), multidim::h2_mul(x, z));
        prop_assert!((l.y1() - r.y1()).abs() <= 1e-9 && (l.y2() - r.y2()).abs() <= 1e-9);
    }

    #[test]
    fn mean_matches_closed_displays(
        a1 in 0.05f64..0.9, b1 in -0.9f64..0.9, a2 in 0.05f64..0.9, b2 in -0.9f64..0.9,
    ) {
        prop_assume!(b1.abs() > 1e-3 && b2.abs() > 1e-3);
        let p = unit();
        let (ra1, ra2, rb1, rb2) = (a1.atanh(), a2.atanh(), b1.atanh(), b2.atanh());
        let m = meanlike::mean_add_arithmetic(MeanPair::new(a1, b1, p).unwrap(), MeanPair::new(a2, b2, p).unwrap());
        prop_assert_eq!(m.a(), (a1 + a2) / (1.0 + a1 * a2));
        prop_assert!((m.b() - ((rb1 * ra1 + rb2 * ra2) / (ra1 + ra2)).tanh()).abs() <= 1e-12);
        let h = meanlike::mean_add_harmonic(MeanPair::new(a1, b1, p).unwrap(), MeanPair::new(a2, b2, p).unwrap());
        prop_assert!((h.b() - ((ra1 + ra2) / (ra1 / rb1 + ra2 / rb2)).tanh()).abs() <= 1e-12);
    }
}

#[test]
fn scalar_zero_one_table() {
    let p = unit();
    let zero = EScalar::zero(p);
    let c = EScalar::boundary(p);
    assert_eq!(scalar::e_add(zero, zero), zero);
    assert_eq!(scalar::e_add(zero, c), c);
    assert_eq!(scalar::e_add(c, zero), c);
    assert_eq!(scalar::e_add(c, c), c);
    assert_eq!(scalar::phi_inv(c), ExtendedReal::Infinity);
}

#[test]
fn gyro_witnesses() {
    let p = unit();
    let e1 = GyroVector3::new(0.5, 0.0, 0.0, p).unwrap();
    let e2 = GyroVector3::new(0.0, 0.5, 0.0, p).unwrap();
    let l = gyro::gyro_add_cross(&gyro::gyro_add_cross(&e1, &e2), &e1);
    let r = gyro::gyro_add_cross(&e1, &gyro::gyro_add_cross(&e2, &e1));
    // mpmath: 0.041138313073937
    let gap = dist(&l.as_array(), &r.as_array());
    assert!((gap - 0.041138313073937).abs() < 1e-12, "gap {gap}");
    let uv = gyro::gyro_add_cross(&e1, &e2);
    let vu = gyro::gyro_add_cross(&e2, &e1);
    assert!(dist(&uv.as_array(), &vu.as_array()) > 1e-3);
}

#[test]
fn h2_inverse_and_identity() {
    let one = multidim::h2_mul_identity();
    for &(a, f) in &[(0.5, 0.2), (0.9, -0.45), (0.7, 0.0)] {
        let x = multidim::cone_forward(ConePoint::new(a, a * f).unwrap());
        let prod = multidim::h2_mul(x, multidim::h2_mul_inverse(x).unwrap());
        assert!((prod.y1() - one.y1()).abs() <= 1e-9 && prod.y2().abs() <= 1e-9);
    }
    assert!(H2Point::new(one.y1(), one.y2()).is_ok());
}
