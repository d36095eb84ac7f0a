use hypervel_core::scalar::{e_add, e_compare, e_mul, e_mul_inverse, e_neg, mul_identity, phi, phi_inv};
use hypervel_core::{EScalar, ExtendedReal, Params};
use serde_json::json;

use super::{Ctx, Law};
use crate::report::{PropertyReport, Tally};
use crate::rng::{chance, signed, uniform, LawRng};

const M: &str = "scalar";

fn es(x: f64, p: Params) -> EScalar {
    EScalar::new(x, p).expect("sampled inside (-c, c]")
}

/// Open-interval value with |u| < bound·c.
fn open(rng: &mut LawRng, c: f64, bound: f64) -> f64 {
    signed(rng, 0.0, bound * c)
}

/// Like [`open`] but lands on c one time in eight.
fn closed(rng: &mut LawRng, c: f64, bound: f64) -> f64 {
    if chance(rng, 0.125) {
        c
    } else {
        open(rng, c, bound)
    }
}

fn diff(a: EScalar, b: EScalar) -> f64 {
    (a.value() - b.value()).abs()
}

fn spot_values(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let mut t = Tally::new(M, ctx.law, 0.0);
    // the rational form at c = 1 gives exactly 0.8; other c carry rounding
    // from the scale only
    let got = e_add(es(0.5 * c, p), es(0.5 * c, p)).value();
    let slack = if c == 1.0 { 0.0 } else { 4.0 * f64::EPSILON * c };
    t.check(
        ((got - 0.8 * c).abs() - slack).max(0.0),
        || json!({"op": "e_add", "u": 0.5 * c, "v": 0.5 * c, "got": got}),
    );
    // the boundary table is exact for every c
    for (u, v, want) in [(0.0, 0.0, 0.0), (0.0, c, c), (c, 0.0, c), (c, c, c)] {
        let got = e_add(es(u, p), es(v, p)).value();
        t.check(
            (got - want).abs(),
            || json!({"op": "e_add", "u": u, "v": v, "got": got, "want": want}),
        );
    }
    let id = mul_identity(p).value();
    t.check(
        (id - c * 1f64.tanh()).abs(),
        || json!({"op": "mul_identity", "got": id}),
    );
    t.finish()
}

fn closure(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 0.0);
    for _ in 0..ctx.samples() {
        let (u, v) = (closed(&mut rng, c, 1.0), closed(&mut rng, c, 1.0));
        let r = e_add(es(u, p), es(v, p)).value();
        let boundary = u == c || v == c;
        let ok = r > -c && r <= c && ((r == c) == boundary);
        t.check_that(ok, || json!({"u": u, "v": v, "sum": r}));
    }
    t.finish()
}

fn associativity(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 1e-12 * c);
    for _ in 0..ctx.samples() {
        let (u, v, w) = (
            closed(&mut rng, c, 0.99),
            closed(&mut rng, c, 0.99),
            closed(&mut rng, c, 0.99),
        );
        let (eu, ev, ew) = (es(u, p), es(v, p), es(w, p));
        let l = e_add(e_add(eu, ev), ew);
        let r = e_add(eu, e_add(ev, ew));
        let mut res = diff(l, r);
        if u == c || v == c || w == c {
            // absorbing rule: both bracketings are exactly c
            res = if l.value() == c && r.value() == c {
                0.0
            } else {
                f64::INFINITY
            };
        }
        t.check(
            res,
            || json!({"u": u, "v": v, "w": w, "left": l.value(), "right": r.value()}),
        );
    }
    t.finish()
}

fn commutativity(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let mut rng = ctx.rng();
    // bitwise: the rational form is symmetric operation by operation
    let mut t = Tally::new(M, ctx.law, 0.0);
    for _ in 0..ctx.samples() {
        let (u, v) = (closed(&mut rng, c, 1.0), closed(&mut rng, c, 1.0));
        let l = e_add(es(u, p), es(v, p)).value();
        let r = e_add(es(v, p), es(u, p)).value();
        let res = if l.to_bits() == r.to_bits() {
            0.0
        } else {
            (l - r).abs().max(f64::MIN_POSITIVE)
        };
        t.check(res, || json!({"u": u, "v": v, "uv": l, "vu": r}));
    }
    t.finish()
}

fn identity(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 0.0);
    let zero = EScalar::zero(p);
    for _ in 0..ctx.samples() {
        let u = closed(&mut rng, c, 1.0);
        let eu = es(u, p);
        let res = diff(e_add(eu, zero), eu).max(diff(e_add(zero, eu), eu));
        t.check(res, || json!({"u": u}));
    }
    t.finish()
}

fn absorbing(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 0.0);
    let b = EScalar::boundary(p);
    for _ in 0..ctx.samples() {
        let u = closed(&mut rng, c, 1.0);
        let eu = es(u, p);
        let ok = e_add(eu, b).value() == c && e_add(b, eu).value() == c;
        t.check_that(ok, || json!({"u": u}));
    }
    t.finish()
}

fn group_inverse(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 0.0);
    t.check_that(
        e_neg(EScalar::boundary(p)).is_err(),
        || json!({"u": c, "expected": "no inverse"}),
    );
    for _ in 0..ctx.samples() {
        let u = open(&mut rng, c, 1.0);
        let eu = es(u, p);
        let n = e_neg(eu).expect("open interval");
        let res = e_add(eu, n).value().abs().max(e_add(n, eu).value().abs());
        t.check(res, || json!({"u": u}));
    }
    t.finish()
}

fn distributivity(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, ctx.loose_c());
    for _ in 0..ctx.samples() {
        let (u, v, w) = (open(&mut rng, c, 0.9), open(&mut rng, c, 0.9), open(&mut rng, c, 0.9));
        let (eu, ev, ew) = (es(u, p), es(v, p), es(w, p));
        let l = e_mul(eu, e_add(ev, ew)).expect("open operands");
        let r = e_add(e_mul(eu, ev).expect("open"), e_mul(eu, ew).expect("open"));
        t.check(diff(l, r), || json!({"u": u, "v": v, "w": w}));
    }
    t.finish()
}

fn mul_associativity(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, ctx.loose_c());
    for _ in 0..ctx.samples() {
        let (u, v, w) = (open(&mut rng, c, 0.9), open(&mut rng, c, 0.9), open(&mut rng, c, 0.9));
        let (eu, ev, ew) = (es(u, p), es(v, p), es(w, p));
        let l = e_mul(e_mul(eu, ev).expect("open"), ew).expect("open");
        let r = e_mul(eu, e_mul(ev, ew).expect("open")).expect("open");
        t.check(diff(l, r), || json!({"u": u, "v": v, "w": w}));
    }
    t.finish()
}

fn mul_commutativity(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, ctx.loose_c());
    for _ in 0..ctx.samples() {
        let (u, v) = (open(&mut rng, c, 0.99), open(&mut rng, c, 0.99));
        let (eu, ev) = (es(u, p), es(v, p));
        t.check(
            diff(e_mul(eu, ev).expect("open"), e_mul(ev, eu).expect("open")),
            || json!({"u": u, "v": v}),
        );
    }
    t.finish()
}

fn mul_identity_law(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 1e-12 * c);
    let one = mul_identity(p);
    for _ in 0..ctx.samples() {
        let u = open(&mut rng, c, 0.99);
        let eu = es(u, p);
        t.check(diff(e_mul(eu, one).expect("open"), eu), || json!({"u": u}));
    }
    t.finish()
}

fn mul_inverse(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, ctx.loose_c());
    t.check_that(
        e_mul_inverse(EScalar::zero(p)).is_err(),
        || json!({"u": 0.0, "expected": "no inverse"}),
    );
    let one = mul_identity(p);
    // below 0.25c the inverse rapidity exceeds 4 and tanh saturates
    for _ in 0..ctx.samples() {
        let u = signed(&mut rng, 0.25 * c, 0.9 * c);
        let eu = es(u, p);
        let inv = e_mul_inverse(eu).expect("nonzero");
        t.check(diff(e_mul(eu, inv).expect("open"), one), || json!({"u": u}));
    }
    t.finish()
}

fn isomorphism(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 1e-12 * c);
    let f = |x: f64| phi(ExtendedReal::Finite(x), p);
    for _ in 0..ctx.samples() {
        let (x, y) = (uniform(&mut rng, -5.0, 5.0), uniform(&mut rng, -5.0, 5.0));
        t.check(diff(e_add(f(x), f(y)), f(x + y)), || json!({"x": x, "y": y}));
    }
    t.finish()
}

fn phi_round_trip(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 1e-12 * c);
    let b = EScalar::boundary(p);
    let ends = phi_inv(b) == ExtendedReal::Infinity && phi(ExtendedReal::Infinity, p).value() == c;
    t.check_that(ends, || json!({"u": c, "expected": "phi_inv(c) = infinity"}));
    for _ in 0..ctx.samples() {
        let u = open(&mut rng, c, 0.99);
        let eu = es(u, p);
        t.check(diff(phi(phi_inv(eu), p), eu), || json!({"u": u}));
    }
    t.finish()
}

fn order(ctx: &Ctx) -> PropertyReport {
    let p = ctx.cfg.params();
    let c = p.c();
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 0.0);
    let b = EScalar::boundary(p);
    for _ in 0..ctx.samples() {
        let (u, v) = (closed(&mut rng, c, 1.0), closed(&mut rng, c, 1.0));
        let ok = e_compare(es(u, p), es(v, p)) == u.total_cmp(&v) && es(u, p) <= b;
        t.check_that(ok, || json!({"u": u, "v": v}));
    }
    t.finish()
}

fn newtonian_limit(ctx: &Ctx) -> PropertyReport {
    let mut rng = ctx.rng();
    // relative bound; independent of the configured c
    let mut t = Tally::new(M, ctx.law, 1e-9);
    for _ in 0..ctx.samples() {
        let (u, v) = (signed(&mut rng, 1e-3, 1.0), signed(&mut rng, 1e-3, 1.0));
        let p = Params::new(1e6 * u.abs().max(v.abs())).expect("positive c");
        let s = e_add(es(u, p), es(v, p)).value();
        t.check(
            (s - (u + v)).abs() / (u.abs() + v.abs()),
            || json!({"u": u, "v": v, "c": p.c()}),
        );
    }
    t.finish()
}

pub fn laws() -> Vec<Law> {
    vec![
        Law::new("scalar.spot_values", spot_values),
        Law::new("scalar.closure", closure),
        Law::new("scalar.associativity", associativity),
        Law::new("scalar.commutativity", commutativity),
        Law::new("scalar.identity", identity),
        Law::new("scalar.absorbing_c", absorbing),
        Law::new("scalar.group_inverse", group_inverse),
        Law::new("scalar.distributivity", distributivity),
        Law::new("scalar.mul_associativity", mul_associativity),
        Law::new("scalar.mul_commutativity", mul_commutativity),
        Law::new("scalar.mul_identity", mul_identity_law),
        Law::new("scalar.mul_inverse", mul_inverse),
        Law::new("scalar.isomorphism", isomorphism),
        Law::new("scalar.phi_round_trip", phi_round_trip),
        Law::new("scalar.order", order),
        Law::new("scalar.newtonian_limit", newtonian_limit),
    ]
}
