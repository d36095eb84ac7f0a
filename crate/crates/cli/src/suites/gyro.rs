use hypervel_core::gyro::{
    gamma, gamma_identity_residual, gyro_add_cross, gyro_add_inner_raw, lagrange_check, moebius_add, moebius_involution,
};
use hypervel_core::scalar::add_open;
use hypervel_core::{GyroVector3, Params, UnitBallVector};
use serde_json::json;

use super::{dist, Ctx, Law};
use crate::report::{PropertyReport, Tally, WitnessSearch};
use crate::rng::{ball_point, ball_point3, uniform, LawRng};

const M: &str = "gyro";

fn g3(v: [f64; 3], p: Params) -> GyroVector3 {
    GyroVector3::from_array(v, p).expect("sampled inside the ball")
}

fn sample(rng: &mut LawRng, p: Params, bound: f64) -> GyroVector3 {
    g3(ball_point3(rng, 0.0, bound * p.c()), p)
}

fn gap(a: &GyroVector3, b: &GyroVector3) -> f64 {
    dist(&a.as_array(), &b.as_array())
}

fn cross_inner_agreement(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 1e-12 * p.c());
    for _ in 0..ctx.samples() {
        let (u, v) = (sample(&mut rng, p, 0.95), sample(&mut rng, p, 0.95));
        let cross = gyro_add_cross(&u, &v).as_array();
        let inner = gyro_add_inner_raw(&u.as_array(), &v.as_array(), p.c()).expect("same dimension");
        t.check(dist(&cross, &inner), || json!([u.as_array(), v.as_array()]));
    }
    t.finish()
}

fn closure(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 0.0);
    for _ in 0..ctx.samples() {
        let (u, v) = (sample(&mut rng, p, 0.99), sample(&mut rng, p, 0.99));
        let s = gyro_add_cross(&u, &v);
        t.check_that(s.norm() < c, || json!([u.as_array(), v.as_array()]));
    }
    t.finish()
}

fn gamma_identity(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 1e-12);
    for _ in 0..ctx.samples() {
        let (u, v) = (sample(&mut rng, p, 0.9), sample(&mut rng, p, 0.9));
        t.check(gamma_identity_residual(&u, &v), || json!([u.as_array(), v.as_array()]));
    }
    t.finish()
}

fn gamma_spot(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let mut t = Tally::new(M, ctx.law, 1e-15);
    for axis in 0..3 {
        for (k, want) in [(0.6, 1.25), (0.8, 5.0 / 3.0), (0.0, 1.0)] {
            let mut v = [0.0; 3];
            v[axis] = k * c;
            let got = gamma(&g3(v, p));
            t.check(got - want, || json!({"u": v, "gamma": got, "want": want}));
        }
    }
    t.finish()
}

fn parallel_reduction(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 1e-12 * c);
    for _ in 0..ctx.samples() {
        let dir = ball_point3(&mut rng, 1.0, 1.0);
        let (a, b) = (
            uniform(&mut rng, -0.99 * c, 0.99 * c),
            uniform(&mut rng, -0.99 * c, 0.99 * c),
        );
        let s = gyro_add_cross(&g3(dir.map(|x| x * a), p), &g3(dir.map(|x| x * b), p));
        let want = dir.map(|x| x * add_open(a, b, c));
        t.check(dist(&s.as_array(), &want), || json!({"direction": dir, "a": a, "b": b}));
    }
    t.finish()
}

fn inner_scalar_agreement(ctx: &Ctx) -> PropertyReport {
    let c = ctx.c();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 1e-12 * c);
    for _ in 0..ctx.samples() {
        let (u, v) = (
            uniform(&mut rng, -0.99 * c, 0.99 * c),
            uniform(&mut rng, -0.99 * c, 0.99 * c),
        );
        let s = gyro_add_inner_raw(&[u], &[v], c).expect("same dimension")[0];
        t.check(s - add_open(u, v, c), || json!([u, v]));
    }
    t.finish()
}

fn inner_closure_dim7(ctx: &Ctx) -> PropertyReport {
    let c = ctx.c();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 0.0);
    for _ in 0..ctx.samples() {
        let (u, v) = (
            ball_point(&mut rng, 7, 0.0, 0.99 * c),
            ball_point(&mut rng, 7, 0.0, 0.99 * c),
        );
        let s = gyro_add_inner_raw(&u, &v, c).expect("same dimension");
        let n = s.iter().map(|x| x * x).sum::<f64>().sqrt();
        t.check_that(n < c, || json!([u, v]));
    }
    t.finish()
}

fn lagrange(ctx: &Ctx) -> PropertyReport {
    let mut rng = ctx.rng();
    // relative to the cube of the largest operand norm
    let mut t = Tally::new(M, ctx.law, 1e-12);
    for _ in 0..ctx.samples() {
        let s = 10f64.powf(uniform(&mut rng, -2.0, 2.0));
        let a = ball_point3(&mut rng, 0.0, s);
        let b = ball_point3(&mut rng, 0.0, s);
        let cc = ball_point3(&mut rng, 0.0, s);
        let scale = [a, b, cc]
            .iter()
            .map(|v| v.iter().map(|x| x * x).sum::<f64>().sqrt())
            .fold(0.0, f64::max);
        let r = if scale == 0.0 {
            0.0
        } else {
            lagrange_check(&a, &b, &cc) / scale.powi(3)
        };
        t.check(r, || json!([a, b, cc]));
    }
    t.finish()
}

/// The canonical triple goes first so that even one sample finds a witness.
fn non_associativity(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let mut rng = ctx.rng();
    let mut w = WitnessSearch::new(M, ctx.law, 1e-3 * c);
    let canonical = (
        g3([0.5 * c, 0.0, 0.0], p),
        g3([0.0, 0.5 * c, 0.0], p),
        g3([0.5 * c, 0.0, 0.0], p),
    );
    for i in 0..ctx.samples() {
        let (u, v, x) = if i == 0 {
            canonical
        } else {
            (
                sample(&mut rng, p, 0.9),
                sample(&mut rng, p, 0.9),
                sample(&mut rng, p, 0.9),
            )
        };
        let l = gyro_add_cross(&gyro_add_cross(&u, &v), &x);
        let r = gyro_add_cross(&u, &gyro_add_cross(&v, &x));
        w.record(gap(&l, &r), || {
            json!({"u": u.as_array(), "v": v.as_array(), "w": x.as_array(), "left": l.as_array(), "right": r.as_array()})
        });
    }
    w.finish()
}

fn non_commutativity(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let mut rng = ctx.rng();
    let mut w = WitnessSearch::new(M, ctx.law, 1e-3 * c);
    let canonical = (g3([0.5 * c, 0.0, 0.0], p), g3([0.0, 0.5 * c, 0.0], p));
    for i in 0..ctx.samples() {
        let (u, v) = if i == 0 {
            canonical
        } else {
            (sample(&mut rng, p, 0.9), sample(&mut rng, p, 0.9))
        };
        let (l, r) = (gyro_add_cross(&u, &v), gyro_add_cross(&v, &u));
        w.record(
            gap(&l, &r),
            || json!({"u": u.as_array(), "v": v.as_array(), "uv": l.as_array(), "vu": r.as_array()}),
        );
    }
    w.finish()
}

fn unit(rng: &mut LawRng, dim: usize, bound: f64) -> UnitBallVector {
    UnitBallVector::new(ball_point(rng, dim, 0.0, bound)).expect("inside the unit ball")
}

fn moebius_involution_law(ctx: &Ctx, dim: usize) -> PropertyReport {
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 1e-10);
    for _ in 0..ctx.samples() {
        let (w, z) = (unit(&mut rng, dim, 0.9), unit(&mut rng, dim, 0.9));
        let res = moebius_involution(&w, &z)
            .and_then(|once| moebius_involution(&w, &once))
            .map(|twice| dist(twice.components(), z.components()))
            .unwrap_or(f64::INFINITY);
        t.check(res, || json!({"w": w.components(), "z": z.components()}));
    }
    t.finish()
}

fn moebius_identity_inverse(ctx: &Ctx) -> PropertyReport {
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 1e-12);
    for _ in 0..ctx.samples() {
        let w = unit(&mut rng, 3, 0.9);
        let zero = UnitBallVector::zero(3);
        let id = moebius_add(&w, &zero).map(|r| dist(r.components(), w.components()));
        let inv = moebius_add(&w, &w.neg()).map(|r| r.norm());
        let res = id.and_then(|a| inv.map(|b| a.max(b))).unwrap_or(f64::INFINITY);
        t.check(res, || json!({"w": w.components()}));
    }
    t.finish()
}

pub fn laws() -> Vec<Law> {
    vec![
        Law::new("gyro.cross_inner_agreement", cross_inner_agreement),
        Law::new("gyro.closure", closure),
        Law::new("gyro.gamma_identity", gamma_identity),
        Law::new("gyro.gamma_spot", gamma_spot),
        Law::new("gyro.parallel_reduction", parallel_reduction),
        Law::new("gyro.inner_dim1_scalar_agreement", inner_scalar_agreement),
        Law::new("gyro.inner_dim7_closure", inner_closure_dim7),
        Law::new("gyro.lagrange", lagrange),
        Law::new("gyro.non_associativity", non_associativity),
        Law::new("gyro.non_commutativity", non_commutativity),
        Law::new("gyro.moebius_involution.dim2", |ctx: &Ctx| {
            moebius_involution_law(ctx, 2)
        }),
        Law::new("gyro.moebius_involution.dim3", |ctx: &Ctx| {
            moebius_involution_law(ctx, 3)
        }),
        Law::new("gyro.moebius_identity_inverse", moebius_identity_inverse),
    ]
}
