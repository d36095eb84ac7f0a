//! `hypervel eval`: one operation on JSON operands.

use std::cmp::Ordering;

use hypervel_core::ball::{
    ball_add, ball_neg, ball_phi, ball_phi_inv, complex_add, complex_mul, complex_mul_identity, complex_mul_inverse,
    complex_neg,
};
use hypervel_core::gyro::{
    gamma, gamma_identity_residual, gyro_add_cross, gyro_add_inner, gyro_neg, lagrange_check, moebius_add,
    moebius_involution,
};
use hypervel_core::meanlike::{mean_add_arithmetic, mean_add_harmonic};
use hypervel_core::multidim::{
    chain_forward, chain_inverse, cone_forward, cone_inverse, h2_add, h2_mul, h2_mul_identity, h2_mul_inverse, h_add,
    hyperbolic_inverse, hyperbolic_mul, tanh_chain_forward, tanh_chain_inverse, uniform_family,
};
use hypervel_core::scalar::{e_add, e_compare, e_mul, e_mul_inverse, e_neg, mul_identity, phi, phi_inv};
use hypervel_core::{
    BallVector, BijectionDescriptor, ComplexBallPoint, ConePoint, DPoint, EScalar, ExtendedReal, GyroVector3, H2Point,
    HPoint, MeanPair, Params, UnitBallVector,
};
use serde_json::{json, Value};
use thiserror::Error;

use crate::config::RunConfig;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("unknown operation `{0}` (see `hypervel eval --help` for the list)")]
    UnknownOp(String),
    #[error("operands are not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{op}: {msg}")]
    Operands { op: String, msg: String },
    #[error("{op}: precondition violated: {source}")]
    Precondition {
        op: String,
        #[source]
        source: hypervel_core::Error,
    },
}

/// Every operation `eval` understands, with its operand shape.
pub const OPERATIONS: &[(&str, &str)] = &[
    ("phi", "[x]  x a number or \"inf\""),
    ("phi_inv", "[u]"),
    ("e_add", "[u, v]"),
    ("e_neg", "[u]"),
    ("e_mul", "[u, v]"),
    ("e_mul_inverse", "[u]"),
    ("mul_identity", "[]"),
    ("e_compare", "[u, v]"),
    ("ball_phi", "[vector]"),
    ("ball_phi_inv", "[vector]"),
    ("ball_add", "[u, v]"),
    ("ball_neg", "[u]"),
    ("complex_add", "[[re, im], [re, im]]"),
    ("complex_neg", "[[re, im]]"),
    ("complex_mul", "[[re, im], [re, im]]"),
    ("complex_mul_identity", "[]"),
    ("complex_mul_inverse", "[[re, im]]"),
    ("gamma", "[u3]"),
    ("gyro_add", "[u, v]  any dimension"),
    ("gyro_add_cross", "[u3, v3]"),
    ("gyro_add_inner", "[u, v]"),
    ("gyro_neg", "[u3]"),
    ("gamma_identity_residual", "[u3, v3]"),
    ("lagrange_check", "[a3, b3, c3]"),
    ("moebius_add", "[w, z]  unit ball"),
    ("moebius_involution", "[w, z]  unit ball"),
    ("chain_forward", "[\"identity\"|\"tanh\", x]"),
    ("chain_inverse", "[\"identity\"|\"tanh\", y]"),
    ("tanh_chain_forward", "[x]"),
    ("tanh_chain_inverse", "[y]"),
    ("h_add", "[x, y]"),
    ("hyperbolic_mul", "[[a, b], [a, b]]"),
    ("hyperbolic_inverse", "[[a, b]]"),
    ("cone_forward", "[[a, b]]"),
    ("cone_inverse", "[[y1, y2]]"),
    ("h2_add", "[[y1, y2], [y1, y2]]"),
    ("h2_mul", "[[y1, y2], [y1, y2]]"),
    ("h2_mul_identity", "[]"),
    ("h2_mul_inverse", "[[y1, y2]]"),
    ("mean_add_arithmetic", "[[a, b], [a, b]]"),
    ("mean_add_harmonic", "[[a, b], [a, b]]"),
];

struct Args<'a> {
    op: &'a str,
    items: Vec<Value>,
}

impl<'a> Args<'a> {
    fn err(&self, msg: impl Into<String>) -> EvalError {
        EvalError::Operands {
            op: self.op.to_string(),
            msg: msg.into(),
        }
    }

    fn arity(&self, n: usize) -> Result<(), EvalError> {
        if self.items.len() == n {
            Ok(())
        } else {
            Err(self.err(format!("expected {n} operand(s), got {}", self.items.len())))
        }
    }

    fn num(&self, i: usize) -> Result<f64, EvalError> {
        self.items[i]
            .as_f64()
            .ok_or_else(|| self.err(format!("operand {i} must be a number")))
    }

    fn extended(&self, i: usize) -> Result<ExtendedReal, EvalError> {
        match &self.items[i] {
            Value::String(s) if matches!(s.as_str(), "inf" | "infinity" | "+inf" | "∞") => Ok(ExtendedReal::Infinity),
            _ => self.num(i).map(ExtendedReal::Finite),
        }
    }

    fn vec(&self, i: usize) -> Result<Vec<f64>, EvalError> {
        let bad = || self.err(format!("operand {i} must be an array of numbers"));
        self.items[i]
            .as_array()
            .ok_or_else(bad)?
            .iter()
            .map(|x| x.as_f64().ok_or_else(bad))
            .collect()
    }

    fn vec3(&self, i: usize) -> Result<[f64; 3], EvalError> {
        let v = self.vec(i)?;
        v.try_into()
            .map_err(|_| self.err(format!("operand {i} must have 3 components")))
    }

    fn pair(&self, i: usize) -> Result<(f64, f64), EvalError> {
        match self.vec(i)?.as_slice() {
            [a, b] => Ok((*a, *b)),
            _ => Err(self.err(format!("operand {i} must have 2 components"))),
        }
    }

    fn family(&self, i: usize, n: usize) -> Result<Vec<BijectionDescriptor>, EvalError> {
        let f = match self.items[i].as_str() {
            Some("identity") => BijectionDescriptor::identity(),
            Some("tanh") => BijectionDescriptor::tanh(),
            _ => return Err(self.err(format!("operand {i} must be \"identity\" or \"tanh\""))),
        };
        Ok(uniform_family(f, n))
    }

    fn pre(&self, e: hypervel_core::Error) -> EvalError {
        EvalError::Precondition {
            op: self.op.to_string(),
            source: e,
        }
    }
}

fn extended_json(x: ExtendedReal) -> Value {
    match x {
        ExtendedReal::Finite(v) => json!(v),
        ExtendedReal::Infinity => json!("infinity"),
    }
}

fn complex_json(z: ComplexBallPoint) -> Value {
    json!([z.re(), z.im()])
}

fn h2_json(h: H2Point) -> Value {
    json!([h.y1(), h.y2()])
}

/// Parses `operands` and evaluates `op`. A bare non-array operand is taken as
/// the single argument of a unary operation.
pub fn cmd_eval(op: &str, operands: &str, cfg: &RunConfig) -> Result<Value, EvalError> {
    if !OPERATIONS.iter().any(|(name, _)| *name == op) {
        return Err(EvalError::UnknownOp(op.to_string()));
    }
    let parsed: Value = serde_json::from_str(operands)?;
    let items = match parsed {
        Value::Array(items) => items,
        other => vec![other],
    };
    let a = Args { op, items };
    let p = Params::with_tol(cfg.c, cfg.tol).map_err(|e| a.pre(e))?;
    let scalar = |i: usize| -> Result<EScalar, EvalError> { EScalar::new(a.num(i)?, p).map_err(|e| a.pre(e)) };
    let ball = |i: usize| -> Result<BallVector, EvalError> { BallVector::new(a.vec(i)?, p).map_err(|e| a.pre(e)) };
    let complex = |i: usize| -> Result<ComplexBallPoint, EvalError> {
        let (re, im) = a.pair(i)?;
        ComplexBallPoint::new(re, im, p).map_err(|e| a.pre(e))
    };
    let gyro =
        |i: usize| -> Result<GyroVector3, EvalError> { GyroVector3::from_array(a.vec3(i)?, p).map_err(|e| a.pre(e)) };
    let unit = |i: usize| -> Result<UnitBallVector, EvalError> { UnitBallVector::new(a.vec(i)?).map_err(|e| a.pre(e)) };
    let hpoint = |i: usize| -> Result<HPoint, EvalError> { HPoint::new(a.vec(i)?).map_err(|e| a.pre(e)) };
    let cone = |i: usize| -> Result<ConePoint, EvalError> {
        let (x, y) = a.pair(i)?;
        ConePoint::new(x, y).map_err(|e| a.pre(e))
    };
    let h2 = |i: usize| -> Result<H2Point, EvalError> {
        let (x, y) = a.pair(i)?;
        H2Point::new(x, y).map_err(|e| a.pre(e))
    };
    let mean = |i: usize| -> Result<MeanPair, EvalError> {
        let (x, y) = a.pair(i)?;
        MeanPair::new(x, y, p).map_err(|e| a.pre(e))
    };

    let out = match op {
        "phi" => {
            a.arity(1)?;
            json!(phi(a.extended(0)?, p).value())
        }
        "phi_inv" => {
            a.arity(1)?;
            extended_json(phi_inv(scalar(0)?))
        }
        "e_add" => {
            a.arity(2)?;
            json!(e_add(scalar(0)?, scalar(1)?).value())
        }
        "e_neg" => {
            a.arity(1)?;
            json!(e_neg(scalar(0)?).map_err(|e| a.pre(e))?.value())
        }
        "e_mul" => {
            a.arity(2)?;
            json!(e_mul(scalar(0)?, scalar(1)?).map_err(|e| a.pre(e))?.value())
        }
        "e_mul_inverse" => {
            a.arity(1)?;
            json!(e_mul_inverse(scalar(0)?).map_err(|e| a.pre(e))?.value())
        }
        "mul_identity" => {
            a.arity(0)?;
            json!(mul_identity(p).value())
        }
        "e_compare" => {
            a.arity(2)?;
            json!(match e_compare(scalar(0)?, scalar(1)?) {
                Ordering::Less => "less",
                Ordering::Equal => "equal",
                Ordering::Greater => "greater",
            })
        }
        "ball_phi" => {
            a.arity(1)?;
            json!(ball_phi(&a.vec(0)?, p).map_err(|e| a.pre(e))?.components())
        }
        "ball_phi_inv" => {
            a.arity(1)?;
            json!(ball_phi_inv(&ball(0)?))
        }
        "ball_add" => {
            a.arity(2)?;
            json!(ball_add(&ball(0)?, &ball(1)?).map_err(|e| a.pre(e))?.components())
        }
        "ball_neg" => {
            a.arity(1)?;
            json!(ball_neg(&ball(0)?).components())
        }
        "complex_add" => {
            a.arity(2)?;
            complex_json(complex_add(complex(0)?, complex(1)?))
        }
        "complex_neg" => {
            a.arity(1)?;
            complex_json(complex_neg(complex(0)?))
        }
        "complex_mul" => {
            a.arity(2)?;
            complex_json(complex_mul(complex(0)?, complex(1)?))
        }
        "complex_mul_identity" => {
            a.arity(0)?;
            complex_json(complex_mul_identity(p))
        }
        "complex_mul_inverse" => {
            a.arity(1)?;
            complex_json(complex_mul_inverse(complex(0)?).map_err(|e| a.pre(e))?)
        }
        "gamma" => {
            a.arity(1)?;
            json!(gamma(&gyro(0)?))
        }
        "gyro_add" | "gyro_add_inner" => {
            a.arity(2)?;
            json!(gyro_add_inner(&ball(0)?, &ball(1)?).map_err(|e| a.pre(e))?.components())
        }
        "gyro_add_cross" => {
            a.arity(2)?;
            json!(gyro_add_cross(&gyro(0)?, &gyro(1)?).as_array())
        }
        "gyro_neg" => {
            a.arity(1)?;
            json!(gyro_neg(&gyro(0)?).as_array())
        }
        "gamma_identity_residual" => {
            a.arity(2)?;
            json!(gamma_identity_residual(&gyro(0)?, &gyro(1)?))
        }
        "lagrange_check" => {
            a.arity(3)?;
            json!(lagrange_check(&a.vec3(0)?, &a.vec3(1)?, &a.vec3(2)?))
        }
        "moebius_add" => {
            a.arity(2)?;
            json!(moebius_add(&unit(0)?, &unit(1)?).map_err(|e| a.pre(e))?.components())
        }
        "moebius_involution" => {
            a.arity(2)?;
            json!(moebius_involution(&unit(0)?, &unit(1)?)
                .map_err(|e| a.pre(e))?
                .components())
        }
        "chain_forward" | "chain_inverse" => {
            a.arity(2)?;
            let x = a.vec(1)?;
            let fs = a.family(0, x.len())?;
            let r = if op == "chain_forward" {
                chain_forward(&fs, &x)
            } else {
                chain_inverse(&fs, &x)
            };
            json!(r.map_err(|e| a.pre(e))?)
        }
        "tanh_chain_forward" => {
            a.arity(1)?;
            let d = DPoint::new(a.vec(0)?).map_err(|e| a.pre(e))?;
            json!(tanh_chain_forward(&d).coords())
        }
        "tanh_chain_inverse" => {
            a.arity(1)?;
            json!(tanh_chain_inverse(&hpoint(0)?).coords())
        }
        "h_add" => {
            a.arity(2)?;
            json!(h_add(&hpoint(0)?, &hpoint(1)?).map_err(|e| a.pre(e))?.coords())
        }
        "hyperbolic_mul" => {
            a.arity(2)?;
            let r = hyperbolic_mul(cone(0)?, cone(1)?);
            json!([r.a(), r.b()])
        }
        "hyperbolic_inverse" => {
            a.arity(1)?;
            let r = hyperbolic_inverse(cone(0)?).map_err(|e| a.pre(e))?;
            json!([r.a(), r.b()])
        }
        "cone_forward" => {
            a.arity(1)?;
            h2_json(cone_forward(cone(0)?))
        }
        "cone_inverse" => {
            a.arity(1)?;
            let r = cone_inverse(h2(0)?);
            json!([r.a(), r.b()])
        }
        "h2_add" => {
            a.arity(2)?;
            h2_json(h2_add(h2(0)?, h2(1)?))
        }
        "h2_mul" => {
            a.arity(2)?;
            h2_json(h2_mul(h2(0)?, h2(1)?))
        }
        "h2_mul_identity" => {
            a.arity(0)?;
            h2_json(h2_mul_identity())
        }
        "h2_mul_inverse" => {
            a.arity(1)?;
            h2_json(h2_mul_inverse(h2(0)?).map_err(|e| a.pre(e))?)
        }
        "mean_add_arithmetic" | "mean_add_harmonic" => {
            a.arity(2)?;
            let f = if op == "mean_add_arithmetic" {
                mean_add_arithmetic
            } else {
                mean_add_harmonic
            };
            let r = f(mean(0)?, mean(1)?);
            json!([r.a(), r.b()])
        }
        _ => unreachable!("listed in OPERATIONS"),
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(op: &str, operands: &str) -> Result<Value, EvalError> {
        cmd_eval(op, operands, &RunConfig::default())
    }

    #[test]
    fn spot_values() {
        assert_eq!(run("e_add", "[0.5, 0.5]").unwrap(), json!(0.8));
        assert_eq!(run("e_add", "[0.3, 1.0]").unwrap(), json!(1.0));
        assert_eq!(run("phi_inv", "[1]").unwrap(), json!("infinity"));
        assert_eq!(run("phi", "[\"inf\"]").unwrap(), json!(1.0));
        assert_eq!(run("e_neg", "0.25").unwrap(), json!(-0.25));
    }

    #[test]
    fn every_listed_operation_is_dispatched() {
        for (op, _) in OPERATIONS {
            // wrong arity must surface as an operand error, never a panic
            let r = run(op, "[[0.1, 0.2], [0.1, 0.2], [0.1, 0.2], [0.1, 0.2]]");
            assert!(matches!(r, Err(EvalError::Operands { .. })), "{op}: {r:?}");
        }
    }

    #[test]
    fn preconditions_are_reported() {
        let e = run("ball_add", "[[0.6, 0.8], [0, 0]]").unwrap_err();
        assert!(matches!(e, EvalError::Precondition { .. }));
        assert!(e.to_string().contains("norm"));
        assert!(matches!(run("e_neg", "[1]"), Err(EvalError::Precondition { .. })));
        assert!(matches!(run("e_add", "[1.5, 0]"), Err(EvalError::Precondition { .. })));
        assert!(matches!(run("nope", "[]"), Err(EvalError::UnknownOp(_))));
    }

    #[test]
    fn chain_literal_ratios() {
        assert_eq!(
            run("chain_forward", "[\"identity\", [2, 6, 12]]").unwrap(),
            json!([2.0, 3.0, 2.0])
        );
    }
}
