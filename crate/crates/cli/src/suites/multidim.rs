//! Multidimensional laws live on the unit-speed sets `H_n` and `H_2^0`; the
//! configured `c` does not enter.

use hypervel_core::multidim::{
    chain_forward, chain_inverse, h2_add, h2_mul, h2_mul_identity, h2_mul_inverse, h_add, hyperbolic_mul,
    tanh_chain_inverse, uniform_family,
};
use hypervel_core::{BijectionDescriptor, ConePoint, H2Point, HPoint};
use serde_json::json;

use super::{max_abs_diff, Ctx, Law};
use crate::report::{PropertyReport, Tally};
use crate::rng::{chance, signed, uniform, LawRng};

const M: &str = "multidim";
const ROUND_TRIP_DIMS: [usize; 4] = [1, 2, 3, 5];
const MONOID_DIMS: [usize; 3] = [2, 3, 5];

#[derive(Clone, Copy)]
enum Family {
    Identity,
    Tanh,
}

impl Family {
    fn descriptor(self) -> BijectionDescriptor {
        match self {
            Family::Identity => BijectionDescriptor::identity(),
            Family::Tanh => BijectionDescriptor::tanh(),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Family::Identity => "identity",
            Family::Tanh => "tanh",
        }
    }

    fn sample(self, rng: &mut LawRng) -> f64 {
        match self {
            Family::Identity => signed(rng, 0.5, 5.0),
            Family::Tanh => signed(rng, 0.1, 1.8),
        }
    }
}

fn round_trip(ctx: &Ctx, family: Family, n: usize) -> PropertyReport {
    let fs = uniform_family(family.descriptor(), n);
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 1e-12);
    for _ in 0..ctx.samples() {
        let x: Vec<f64> = (0..n).map(|_| family.sample(&mut rng)).collect();
        let res = chain_forward(&fs, &x)
            .and_then(|y| {
                let back = chain_inverse(&fs, &y)?;
                let again = chain_forward(&fs, &back)?;
                Ok(max_abs_diff(&back, &x).max(max_abs_diff(&again, &y)))
            })
            .unwrap_or(f64::INFINITY);
        t.check(res, || json!({"family": family.name(), "x": x}));
    }
    t.finish()
}

fn hpoint(rng: &mut LawRng, n: usize) -> HPoint {
    HPoint::new((0..n).map(|_| uniform(rng, 0.1, 0.9)).collect()).expect("coordinates in (0, 1)")
}

fn hadd(x: &HPoint, y: &HPoint) -> HPoint {
    h_add(x, y).expect("equal dimensions")
}

fn h_transport(ctx: &Ctx, n: usize) -> PropertyReport {
    let tanh = uniform_family(BijectionDescriptor::tanh(), n);
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, ctx.loose());
    for _ in 0..ctx.samples() {
        let (x, y) = (hpoint(&mut rng, n), hpoint(&mut rng, n));
        let (dx, dy) = (tanh_chain_inverse(&x), tanh_chain_inverse(&y));
        let sum: Vec<f64> = dx.coords().iter().zip(dy.coords()).map(|(a, b)| a + b).collect();
        let res = chain_forward(&tanh, &sum)
            .map(|want| max_abs_diff(hadd(&x, &y).coords(), &want))
            .unwrap_or(f64::INFINITY);
        t.check(res, || json!([x.coords(), y.coords()]));
    }
    t.finish()
}

fn h_monoid(ctx: &Ctx, n: usize) -> PropertyReport {
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, ctx.loose());
    let mut touching = 0u64;
    for _ in 0..ctx.samples() {
        let (x, y, z) = (hpoint(&mut rng, n), hpoint(&mut rng, n), hpoint(&mut rng, n));
        let l = hadd(&hadd(&x, &y), &z);
        let r = hadd(&x, &hadd(&y, &z));
        let comm = max_abs_diff(hadd(&x, &y).coords(), hadd(&y, &x).coords());
        touching += u64::from(l.touches_one() || r.touches_one());
        t.check(max_abs_diff(l.coords(), r.coords()).max(comm), || {
            json!([x.coords(), y.coords(), z.coords()])
        });
    }
    if touching > 0 {
        t.note(format!("{touching} sums had a ratio coordinate equal to 1"));
    }
    t.finish()
}

fn h_identity_closure(ctx: &Ctx, n: usize) -> PropertyReport {
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 0.0);
    let zero = HPoint::zero(n);
    for _ in 0..ctx.samples() {
        let (x, y) = (hpoint(&mut rng, n), hpoint(&mut rng, n));
        let id =
            max_abs_diff(hadd(&x, &zero).coords(), x.coords()).max(max_abs_diff(hadd(&zero, &x).coords(), x.coords()));
        let closed = HPoint::new(hadd(&x, &y).coords().to_vec()).is_ok();
        t.check(if closed { id } else { f64::INFINITY }, || {
            json!([x.coords(), y.coords()])
        });
    }
    t.finish()
}

fn cone_closure(ctx: &Ctx) -> PropertyReport {
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 0.0);
    let cone = |rng: &mut LawRng| {
        if chance(rng, 0.02) {
            return ConePoint::origin();
        }
        let a = uniform(rng, 1e-3, 5.0);
        ConePoint::new(a, a * signed(rng, 0.0, 0.999)).expect("strictly inside the cone")
    };
    for _ in 0..ctx.samples() {
        let (p, q) = (cone(&mut rng), cone(&mut rng));
        let r = hyperbolic_mul(p, q);
        let ok = if p.is_origin() || q.is_origin() {
            r.is_origin()
        } else {
            ConePoint::in_cone(r.a(), r.b())
        };
        t.check_that(ok, || json!([[p.a(), p.b()], [q.a(), q.b()]]));
    }
    t.finish()
}

// Independent transport through the cone: F_2(a, b) = (tanh a, tanh b / tanh a).
fn f2(a: f64, b: f64) -> [f64; 2] {
    if a == 0.0 {
        [0.0, 0.0]
    } else {
        [a.tanh(), b.tanh() / a.tanh()]
    }
}

fn f2_inv(h: H2Point) -> (f64, f64) {
    (h.y1().atanh(), (h.y1() * h.y2()).atanh())
}

fn h2(rng: &mut LawRng) -> H2Point {
    H2Point::new(uniform(rng, 0.1, 0.7), uniform(rng, -0.7, 0.7)).expect("inside H_2^0")
}

fn hv(h: H2Point) -> [f64; 2] {
    [h.y1(), h.y2()]
}

fn h2_gap(a: H2Point, b: H2Point) -> f64 {
    max_abs_diff(&hv(a), &hv(b))
}

fn h2_transport(ctx: &Ctx) -> PropertyReport {
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, ctx.loose());
    for _ in 0..ctx.samples() {
        let (x, y) = (h2(&mut rng), h2(&mut rng));
        let ((ax, bx), (ay, by)) = (f2_inv(x), f2_inv(y));
        let add = max_abs_diff(&hv(h2_add(x, y)), &f2(ax + ay, bx + by));
        let mul = max_abs_diff(&hv(h2_mul(x, y)), &f2(ax * ay + bx * by, ax * by + bx * ay));
        t.check(add.max(mul), || json!([hv(x), hv(y)]));
    }
    t.finish()
}

fn h2_semifield(ctx: &Ctx) -> PropertyReport {
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, ctx.loose());
    for _ in 0..ctx.samples() {
        let (x, y, z) = (h2(&mut rng), h2(&mut rng), h2(&mut rng));
        let dist = h2_gap(h2_mul(x, h2_add(y, z)), h2_add(h2_mul(x, y), h2_mul(x, z)));
        let add_assoc = h2_gap(h2_add(h2_add(x, y), z), h2_add(x, h2_add(y, z)));
        let mul_assoc = h2_gap(h2_mul(h2_mul(x, y), z), h2_mul(x, h2_mul(y, z)));
        let comm = h2_gap(h2_add(x, y), h2_add(y, x)).max(h2_gap(h2_mul(x, y), h2_mul(y, x)));
        t.check(dist.max(add_assoc).max(mul_assoc).max(comm), || {
            json!([hv(x), hv(y), hv(z)])
        });
    }
    t.finish()
}

fn h2_identities(ctx: &Ctx) -> PropertyReport {
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, 1e-12);
    let (zero, one) = (H2Point::zero(), h2_mul_identity());
    for _ in 0..ctx.samples() {
        let x = h2(&mut rng);
        let res = h2_gap(h2_add(x, zero), x)
            .max(h2_gap(h2_mul(x, one), x))
            .max(hv(h2_mul(x, zero)).iter().map(|v| v.abs()).fold(0.0, f64::max));
        t.check(res, || json!([hv(x)]));
    }
    t.finish()
}

fn h2_inverse(ctx: &Ctx) -> PropertyReport {
    let mut rng = ctx.rng();
    let mut t = Tally::new(M, ctx.law, ctx.loose());
    t.check_that(
        h2_mul_inverse(H2Point::zero()).is_err(),
        || json!({"x": [0.0, 0.0], "expected": "no inverse"}),
    );
    let one = h2_mul_identity();
    // cone coordinates X1 in [0.5, 1], |X2| <= X1/2 keep the inverse's
    // rapidities below 3, short of tanh saturation
    for _ in 0..ctx.samples() {
        let a = uniform(&mut rng, 0.5, 1.0);
        let b = a * uniform(&mut rng, -0.5, 0.5);
        let [y1, y2] = f2(a, b);
        let x = H2Point::new(y1, y2).expect("image of the cone");
        let res = h2_mul_inverse(x)
            .map(|inv| h2_gap(h2_mul(x, inv), one))
            .unwrap_or(f64::INFINITY);
        t.check(res, || json!({"cone": [a, b], "x": hv(x)}));
    }
    t.finish()
}

pub fn laws() -> Vec<Law> {
    let mut v = Vec::new();
    for family in [Family::Identity, Family::Tanh] {
        for n in ROUND_TRIP_DIMS {
            v.push(Law::new(
                format!("multidim.round_trip.{}.n{n}", family.name()),
                move |ctx: &Ctx| round_trip(ctx, family, n),
            ));
        }
    }
    for n in MONOID_DIMS {
        v.push(Law::new(format!("multidim.h_add.n{n}.transport"), move |ctx: &Ctx| {
            h_transport(ctx, n)
        }));
        v.push(Law::new(format!("multidim.h_add.n{n}.assoc_comm"), move |ctx: &Ctx| {
            h_monoid(ctx, n)
        }));
        v.push(Law::new(
            format!("multidim.h_add.n{n}.identity_closure"),
            move |ctx: &Ctx| h_identity_closure(ctx, n),
        ));
    }
    v.push(Law::new("multidim.cone_closure", cone_closure));
    v.push(Law::new("multidim.h2.transport", h2_transport));
    v.push(Law::new("multidim.h2.semifield", h2_semifield));
    v.push(Law::new("multidim.h2.identities", h2_identities));
    v.push(Law::new("multidim.h2.mul_inverse", h2_inverse));
    v
}
