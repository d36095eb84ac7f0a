use std::f64::consts::PI;

use hypervel_core::ball::{
    ball_add, ball_neg, ball_phi, ball_phi_inv, complex_add, complex_mul, complex_mul_identity, complex_mul_inverse,
};
use hypervel_core::scalar::{add_open, mul_open};
use hypervel_core::{BallVector, ComplexBallPoint, Params};
use serde_json::json;

use super::{dist, Ctx, Law};
use crate::report::{PropertyReport, Tally};
use crate::rng::{ball_point, signed, uniform, LawRng};

const M: &str = "ball";
const DIMS: [usize; 4] = [1, 2, 3, 7];

fn bv(v: Vec<f64>, p: Params) -> BallVector {
    BallVector::new(v, p).expect("sampled inside the ball")
}

fn sample(rng: &mut LawRng, dim: usize, p: Params, bound: f64) -> BallVector {
    bv(ball_point(rng, dim, 0.0, bound * p.c()), p)
}

fn add(u: &BallVector, v: &BallVector) -> BallVector {
    ball_add(u, v).expect("equal dimensions")
}

fn gap(a: &BallVector, b: &BallVector) -> f64 {
    dist(a.components(), b.components())
}

fn associativity(ctx: &Ctx, dim: usize) -> PropertyReport {
    let p = ctx.cfg.params();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, ctx.loose_c());
    for _ in 0..ctx.samples() {
        let (u, v, w) = (
            sample(&mut rng, dim, p, 0.9),
            sample(&mut rng, dim, p, 0.9),
            sample(&mut rng, dim, p, 0.9),
        );
        let l = add(&add(&u, &v), &w);
        let r = add(&u, &add(&v, &w));
        t.check(gap(&l, &r), || json!([u.components(), v.components(), w.components()]));
    }
    t.finish()
}

fn commutativity(ctx: &Ctx, dim: usize) -> PropertyReport {
    let p = ctx.cfg.params();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 1e-12 * p.c());
    for _ in 0..ctx.samples() {
        let (u, v) = (sample(&mut rng, dim, p, 0.9), sample(&mut rng, dim, p, 0.9));
        t.check(gap(&add(&u, &v), &add(&v, &u)), || {
            json!([u.components(), v.components()])
        });
    }
    t.finish()
}

fn identity_and_inverse(ctx: &Ctx, dim: usize) -> PropertyReport {
    let p = ctx.cfg.params();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 1e-12 * p.c());
    let zero = BallVector::zero(dim, p);
    for _ in 0..ctx.samples() {
        let u = sample(&mut rng, dim, p, 0.9);
        let res = gap(&add(&u, &zero), &u)
            .max(gap(&add(&zero, &u), &u))
            .max(add(&u, &ball_neg(&u)).norm())
            .max(add(&ball_neg(&u), &u).norm());
        t.check(res, || json!([u.components()]));
    }
    t.finish()
}

fn closure(ctx: &Ctx, dim: usize) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 0.0);
    for _ in 0..ctx.samples() {
        // all the way out to the boundary, where rounding would reach c
        let (u, v) = (sample(&mut rng, dim, p, 1.0), sample(&mut rng, dim, p, 1.0));
        let s = add(&u, &v);
        t.check_that(s.norm() < c && s.components().iter().all(|x| x.is_finite()), || {
            json!([u.components(), v.components()])
        });
    }
    t.finish()
}

fn phi_round_trip(ctx: &Ctx, dim: usize) -> PropertyReport {
    let p = ctx.cfg.params();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 1e-12 * p.c());
    for _ in 0..ctx.samples() {
        let u = sample(&mut rng, dim, p, 0.99);
        let back = ball_phi(&ball_phi_inv(&u), p).expect("finite preimage");
        t.check(gap(&back, &u), || json!([u.components()]));
    }
    t.finish()
}

fn dim1_agreement(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 1e-12 * c);
    for _ in 0..ctx.samples() {
        let (u, v) = (signed(&mut rng, 0.0, 0.99 * c), signed(&mut rng, 0.0, 0.99 * c));
        let s = add(&bv(vec![u], p), &bv(vec![v], p)).components()[0];
        t.check((s - add_open(u, v, c)).abs(), || json!([u, v]));
    }
    t.finish()
}

fn collinear_norms(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 1e-12 * c);
    for _ in 0..ctx.samples() {
        let dir = ball_point(&mut rng, 3, 1.0, 1.0);
        let (a, b) = (uniform(&mut rng, 0.0, 0.99 * c), uniform(&mut rng, 0.0, 0.99 * c));
        let u = bv(dir.iter().map(|x| x * a).collect(), p);
        let v = bv(dir.iter().map(|x| x * b).collect(), p);
        t.check((add(&u, &v).norm() - add_open(u.norm(), v.norm(), c)).abs(), || {
            json!([u.components(), v.components()])
        });
    }
    t.finish()
}

fn cp(rng: &mut LawRng, p: Params, lo: f64, hi: f64) -> ComplexBallPoint {
    let r = uniform(rng, lo * p.c(), hi * p.c());
    let theta = uniform(rng, -PI, PI);
    ComplexBallPoint::from_polar(r, theta, p).expect("inside the disc")
}

fn cgap(a: ComplexBallPoint, b: ComplexBallPoint) -> f64 {
    (a.value() - b.value()).norm()
}

fn cj(z: ComplexBallPoint) -> serde_json::Value {
    json!([z.re(), z.im()])
}

fn complex_matches_ball(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 1e-12 * p.c());
    for _ in 0..ctx.samples() {
        let (u, v) = (cp(&mut rng, p, 0.0, 0.99), cp(&mut rng, p, 0.0, 0.99));
        let s = complex_add(u, v);
        let b = add(&bv(vec![u.re(), u.im()], p), &bv(vec![v.re(), v.im()], p));
        t.check(dist(&[s.re(), s.im()], b.components()), || json!([cj(u), cj(v)]));
    }
    t.finish()
}

fn complex_distributivity(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, ctx.loose_c());
    for _ in 0..ctx.samples() {
        let (u, v, w) = (
            cp(&mut rng, p, 0.0, 0.9),
            cp(&mut rng, p, 0.0, 0.9),
            cp(&mut rng, p, 0.0, 0.9),
        );
        let l = complex_mul(u, complex_add(v, w));
        let r = complex_add(complex_mul(u, v), complex_mul(u, w));
        t.check(cgap(l, r), || json!([cj(u), cj(v), cj(w)]));
    }
    t.finish()
}

fn complex_mul_laws(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, ctx.loose_c());
    for _ in 0..ctx.samples() {
        let (u, v, w) = (
            cp(&mut rng, p, 0.0, 0.9),
            cp(&mut rng, p, 0.0, 0.9),
            cp(&mut rng, p, 0.0, 0.9),
        );
        let assoc = cgap(complex_mul(complex_mul(u, v), w), complex_mul(u, complex_mul(v, w)));
        let comm = cgap(complex_mul(u, v), complex_mul(v, u));
        t.check(assoc.max(comm), || json!([cj(u), cj(v), cj(w)]));
    }
    t.finish()
}

fn complex_mul_identity_inverse(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, ctx.loose_c());
    let one = complex_mul_identity(p);
    t.check_that(
        complex_mul_inverse(ComplexBallPoint::zero(p)).is_err(),
        || json!({"z": [0.0, 0.0]}),
    );
    for _ in 0..ctx.samples() {
        // moduli below 0.25c would need inverse rapidities where tanh saturates
        let u = cp(&mut rng, p, 0.25, 0.9);
        let inv = complex_mul_inverse(u).expect("nonzero");
        t.check(cgap(complex_mul(u, one), u).max(cgap(complex_mul(u, inv), one)), || {
            json!([cj(u)])
        });
    }
    t.finish()
}

fn polar(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let mut rng = ctx.rng();
    // radians, and moduli against the scalar product in units of c
    let mut t = Tally::new(M, ctx.law, 1e-12);
    for _ in 0..ctx.samples() {
        let (r1, r2) = (
            uniform(&mut rng, 0.05 * c, 0.9 * c),
            uniform(&mut rng, 0.05 * c, 0.9 * c),
        );
        let (t1, t2) = (
            uniform(&mut rng, -PI / 2.0, PI / 2.0),
            uniform(&mut rng, -PI / 2.0, PI / 2.0),
        );
        let u = ComplexBallPoint::from_polar(r1, t1, p).expect("inside");
        let v = ComplexBallPoint::from_polar(r2, t2, p).expect("inside");
        let m = complex_mul(u, v);
        let want = t1 + t2;
        let d = (m.arg() - want).rem_euclid(2.0 * PI);
        let arg_gap = d.min(2.0 * PI - d);
        let mod_gap = (m.modulus() - mul_open(u.modulus(), v.modulus(), c)).abs() / c;
        t.check(arg_gap.max(mod_gap), || json!({"r": [r1, r2], "theta": [t1, t2]}));
    }
    t.finish()
}

pub fn laws() -> Vec<Law> {
    let mut v = Vec::new();
    for d in DIMS {
        v.push(Law::new(format!("ball.dim{d}.associativity"), move |ctx: &Ctx| {
            associativity(ctx, d)
        }));
        v.push(Law::new(format!("ball.dim{d}.commutativity"), move |ctx: &Ctx| {
            commutativity(ctx, d)
        }));
        v.push(Law::new(format!("ball.dim{d}.identity_inverse"), move |ctx: &Ctx| {
            identity_and_inverse(ctx, d)
        }));
        v.push(Law::new(format!("ball.dim{d}.closure"), move |ctx: &Ctx| {
            closure(ctx, d)
        }));
        v.push(Law::new(format!("ball.dim{d}.phi_round_trip"), move |ctx: &Ctx| {
            phi_round_trip(ctx, d)
        }));
    }
    v.push(Law::new("ball.dim1.scalar_agreement", dim1_agreement));
    v.push(Law::new("ball.collinear_norms", collinear_norms));
    v.push(Law::new("ball.complex.matches_ball_add", complex_matches_ball));
    v.push(Law::new("ball.complex.distributivity", complex_distributivity));
    v.push(Law::new("ball.complex.mul_assoc_comm", complex_mul_laws));
    v.push(Law::new(
        "ball.complex.mul_identity_inverse",
        complex_mul_identity_inverse,
    ));
    v.push(Law::new("ball.complex.polar", polar));
    v
}
