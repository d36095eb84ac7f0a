use hypervel_core::meanlike::{
    einstein_aggregation, mean_add, ActionSystem, Aggregation, EinsteinAction, EinsteinField, RealAction, RealField,
    ScalarSystem,
};
use hypervel_core::scalar::add_open;
use hypervel_core::{BijectionDescriptor, Eta, MeanPair, Params};
use serde_json::{json, Value};

use super::{sample_filtered, Ctx, Law};
use crate::report::{PropertyReport, Tally};
use crate::rng::{chance, signed, uniform, LawRng};

const M: &str = "meanlike";
/// Sums of first coordinates below this multiple of c are excluded from the
/// associativity check.
pub const EXCLUSION_BAND: f64 = 0.01;

fn eta_name(eta: Eta) -> &'static str {
    match eta {
        Eta::Identity => "arithmetic",
        Eta::Reciprocal => "harmonic",
    }
}

/// Second coordinates for one sampled group: arithmetic anywhere in the
/// band, harmonic with a shared sign so the weighted harmonic mean stays
/// between its inputs.
fn b_sampler(eta: Eta, c: f64, rng: &mut LawRng) -> impl FnMut(&mut LawRng) -> f64 {
    let negative = chance(rng, 0.5);
    move |rng| match eta {
        Eta::Identity => signed(rng, 0.0, 0.9 * c),
        Eta::Reciprocal => {
            let m = uniform(rng, 0.01 * c, 0.9 * c);
            if negative {
                -m
            } else {
                m
            }
        }
    }
}

fn pairs(rng: &mut LawRng, eta: Eta, p: Params, k: usize) -> Vec<MeanPair> {
    let c = p.c();
    let mut b = b_sampler(eta, c, rng);
    (0..k)
        .map(|_| {
            let a = if chance(rng, 0.02) {
                0.0
            } else {
                uniform(rng, 0.0, 0.9 * c)
            };
            MeanPair::new(a, b(rng), p).expect("sampled in [0, c) x (-c, c)")
        })
        .collect()
}

fn pj(x: &MeanPair) -> Value {
    json!([x.a(), x.b()])
}

fn pgap(x: MeanPair, y: MeanPair) -> f64 {
    (x.a() - y.a()).abs().max((x.b() - y.b()).abs())
}

fn banded(a: &[f64], c: f64) -> bool {
    let band = EXCLUSION_BAND * c;
    add_open(a[0], a[1], c).abs() > band
        && add_open(a[1], a[2], c).abs() > band
        && add_open(add_open(a[0], a[1], c), a[2], c).abs() > band
}

fn associativity(ctx: &Ctx, eta: Eta) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, ctx.loose_c());
    let f = |x, y| mean_add(eta, x, y);
    let excluded = sample_filtered(
        &mut rng,
        ctx.samples(),
        |rng| pairs(rng, eta, p, 3),
        |v| banded(&[v[0].a(), v[1].a(), v[2].a()], c),
        |v| {
            let l = f(f(v[0], v[1]), v[2]);
            let r = f(v[0], f(v[1], v[2]));
            t.check(pgap(l, r), || json!([pj(&v[0]), pj(&v[1]), pj(&v[2])]));
        },
    );
    if excluded > 0 {
        t.note(format!("{excluded} triples fell inside the exclusion band"));
    }
    t.finish()
}

fn commutativity(ctx: &Ctx, eta: Eta) -> PropertyReport {
    let p = ctx.cfg.params();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 1e-12 * p.c());
    for _ in 0..ctx.samples() {
        let v = pairs(&mut rng, eta, p, 2);
        t.check(pgap(mean_add(eta, v[0], v[1]), mean_add(eta, v[1], v[0])), || {
            json!([pj(&v[0]), pj(&v[1])])
        });
    }
    t.finish()
}

/// `(0, 0)` is neutral for every pair with `a > 0`. A pair `(0, b)` with
/// `b != 0` meets the both-weights-zero rule instead and collapses to
/// `(0, 0)`; that collapse is checked here as well.
fn identity(ctx: &Ctx, eta: Eta) -> PropertyReport {
    let p = ctx.cfg.params();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 1e-12 * p.c());
    let zero = MeanPair::zero(p);
    t.check(pgap(mean_add(eta, zero, zero), zero), || {
        json!([[0.0, 0.0], [0.0, 0.0]])
    });
    for _ in 0..ctx.samples() {
        let v = pairs(&mut rng, eta, p, 2);
        let weightless = MeanPair::new(0.0, v[1].b(), p).expect("valid pair");
        // what the neutral element should give back
        let want = if v[0].a() == 0.0 { zero } else { v[0] };
        let res = pgap(mean_add(eta, v[0], zero), want)
            .max(pgap(mean_add(eta, zero, v[0]), want))
            .max(pgap(mean_add(eta, v[0], weightless), want));
        t.check(res, || json!([pj(&v[0]), pj(&weightless)]));
    }
    t.finish()
}

fn closure_first_coordinate(ctx: &Ctx, eta: Eta) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 0.0);
    for _ in 0..ctx.samples() {
        let v = pairs(&mut rng, eta, p, 2);
        let s = mean_add(eta, v[0], v[1]);
        let closed = MeanPair::new(s.a(), s.b(), p).is_ok();
        let first = if v[0].a() == 0.0 && v[1].a() == 0.0 {
            0.0
        } else {
            add_open(v[0].a(), v[1].a(), c)
        };
        t.check_that(closed && s.a() == first, || json!([pj(&v[0]), pj(&v[1])]));
    }
    t.finish()
}

fn fixed_point(ctx: &Ctx, eta: Eta) -> PropertyReport {
    let p = ctx.cfg.params();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 1e-12 * p.c());
    for _ in 0..ctx.samples() {
        let v = pairs(&mut rng, eta, p, 2);
        if v[0].a() == 0.0 && v[1].a() == 0.0 {
            continue;
        }
        let q = MeanPair::new(v[1].a(), v[0].b(), p).expect("valid pair");
        t.check(mean_add(eta, v[0], q).b() - v[0].b(), || json!([pj(&v[0]), pj(&q)]));
    }
    t.finish()
}

fn premises(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let (field, action) = (EinsteinField::new(p), EinsteinAction::new(p, Eta::Identity));
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, ctx.loose_c());
    for _ in 0..ctx.samples() {
        let s: Vec<f64> = (0..4).map(|_| signed(&mut rng, 0.0, 0.9 * c)).collect();
        let (a, q, x, y) = (s[0], s[1], s[2], s[3]);
        let distributive =
            action.boxdot(a, action.boxplus(x, y)) - action.boxplus(action.boxdot(a, x), action.boxdot(a, y));
        let compatible = action.boxdot(a, action.boxdot(q, x)) - action.boxdot(field.mul(a, q), x);
        let unital = action.boxdot(field.one(), x) - x;
        t.check(
            distributive.abs().max(compatible.abs()).max(unital.abs()),
            || json!({"p": a, "q": q, "x": x, "y": y}),
        );
    }
    t.finish()
}

fn field_laws(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let f = EinsteinField::new(p);
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, ctx.loose_c());
    for _ in 0..ctx.samples() {
        let (a, b, d) = (
            signed(&mut rng, 0.0, 0.9 * c),
            signed(&mut rng, 0.0, 0.9 * c),
            signed(&mut rng, 0.0, 0.9 * c),
        );
        let inv_base = signed(&mut rng, 0.25 * c, 0.9 * c);
        let res = [
            f.add(f.add(a, b), d) - f.add(a, f.add(b, d)),
            f.add(a, b) - f.add(b, a),
            f.mul(f.mul(a, b), d) - f.mul(a, f.mul(b, d)),
            f.mul(a, b) - f.mul(b, a),
            f.mul(f.mul_inverse(inv_base).expect("nonzero"), inv_base) - f.one(),
        ]
        .iter()
        .fold(0.0f64, |m, r| m.max(r.abs()));
        t.check(res, || json!({"a": a, "b": b, "d": d, "inverted": inv_base}));
    }
    t.finish()
}

fn generic_associativity<S, A>(
    ctx: &Ctx,
    agg: &Aggregation<S, A>,
    band: f64,
    tol: f64,
    mut draw: impl FnMut(&mut LawRng) -> [(f64, f64); 3],
) -> PropertyReport
where
    S: ScalarSystem<Elem = f64>,
    A: ActionSystem<S, Elem = f64>,
{
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, tol);
    let sys = agg.scalar();
    let ok = |x: &[(f64, f64); 3]| {
        sys.add(x[0].0, x[1].0).abs() > band
            && sys.add(x[1].0, x[2].0).abs() > band
            && sys.add(sys.add(x[0].0, x[1].0), x[2].0).abs() > band
    };
    let excluded = sample_filtered(&mut rng, ctx.samples(), &mut draw, ok, |x| {
        let res = agg
            .agg_add(x[0], x[1])
            .and_then(|l| agg.agg_add(l, x[2]))
            .and_then(|l| {
                let r = agg.agg_add(x[0], agg.agg_add(x[1], x[2])?)?;
                let comm = agg.agg_add(x[1], x[0])?;
                let lr = agg.agg_add(x[0], x[1])?;
                Ok((l.0 - r.0).abs().max((l.1 - r.1).abs()).max((comm.1 - lr.1).abs()))
            })
            .unwrap_or(f64::INFINITY);
        t.check(res, || json!(x));
    });
    if excluded > 0 {
        t.note(format!("{excluded} triples fell inside the exclusion band"));
    }
    t.finish()
}

fn generic_real(ctx: &Ctx) -> PropertyReport {
    let sinh = BijectionDescriptor::new(
        "sinh",
        f64::sinh,
        f64::asinh,
        |x: f64| x.is_finite(),
        |y: f64| y.is_finite(),
    );
    let agg = Aggregation::new(RealField, RealAction::new(sinh), 0.0);
    // signed weights: the real field has no sign restriction on A
    generic_associativity(ctx, &agg, EXCLUSION_BAND, ctx.loose(), |rng| {
        std::array::from_fn(|_| (uniform(rng, -1.0, 1.0), uniform(rng, -2.0, 2.0)))
    })
}

fn generic_einstein(ctx: &Ctx, eta: Eta) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let agg = einstein_aggregation(p, eta);
    generic_associativity(ctx, &agg, EXCLUSION_BAND * c, ctx.loose_c(), |rng| {
        let v = match eta {
            // the reciprocal zeta needs rapidities well away from zero
            Eta::Reciprocal => {
                let neg = chance(rng, 0.5);
                std::array::from_fn(|_| {
                    let b = uniform(rng, 0.3 * c, 0.9 * c);
                    (0.0, if neg { -b } else { b })
                })
            }
            Eta::Identity => std::array::from_fn(|_| (0.0, signed(rng, 0.0, 0.9 * c))),
        };
        v.map(|(_, b)| (uniform(rng, 0.0, 0.9 * c), b))
    })
}

fn generic_matches_closed(ctx: &Ctx, eta: Eta) -> PropertyReport {
    let p = ctx.cfg.params();
    let agg = einstein_aggregation(p, eta);
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, ctx.loose_c());
    for _ in 0..ctx.samples() {
        let v = pairs(&mut rng, eta, p, 2);
        if eta == Eta::Reciprocal && v.iter().any(|x| x.b().abs() < 0.3 * p.c()) {
            continue;
        }
        let closed = mean_add(eta, v[0], v[1]);
        let res = agg
            .agg_add((v[0].a(), v[0].b()), (v[1].a(), v[1].b()))
            .map(|(a, b)| (a - closed.a()).abs().max((b - closed.b()).abs()))
            .unwrap_or(f64::INFINITY);
        t.check(res, || json!([pj(&v[0]), pj(&v[1])]));
    }
    t.finish()
}

pub fn laws() -> Vec<Law> {
    let mut v = Vec::new();
    for eta in [Eta::Identity, Eta::Reciprocal] {
        let n = eta_name(eta);
        v.push(Law::new(format!("meanlike.{n}.associativity"), move |ctx: &Ctx| {
            associativity(ctx, eta)
        }));
        v.push(Law::new(format!("meanlike.{n}.commutativity"), move |ctx: &Ctx| {
            commutativity(ctx, eta)
        }));
        v.push(Law::new(format!("meanlike.{n}.identity"), move |ctx: &Ctx| {
            identity(ctx, eta)
        }));
        v.push(Law::new(format!("meanlike.{n}.closure"), move |ctx: &Ctx| {
            closure_first_coordinate(ctx, eta)
        }));
        v.push(Law::new(format!("meanlike.{n}.fixed_point"), move |ctx: &Ctx| {
            fixed_point(ctx, eta)
        }));
        v.push(Law::new(
            format!("meanlike.{n}.generic_associativity"),
            move |ctx: &Ctx| generic_einstein(ctx, eta),
        ));
        v.push(Law::new(
            format!("meanlike.{n}.generic_matches_closed"),
            move |ctx: &Ctx| generic_matches_closed(ctx, eta),
        ));
    }
    v.push(Law::new("meanlike.einstein.premises", premises));
    v.push(Law::new("meanlike.einstein.field_laws", field_laws));
    v.push(Law::new("meanlike.real.generic_associativity", generic_real));
    v
}
