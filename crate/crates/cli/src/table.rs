//! `hypervel table`: composition tables over a grid of scalars.
//!
//! A grid is a comma-separated list of points, optionally in braces. A point
//! is a number, `c`, a multiple such as `0.5c` or `-c`, or a range
//! `start:stop:count` of evenly spaced points with both ends included.

use hypervel_core::scalar::{e_add, e_compare, e_mul, e_mul_inverse, e_neg, phi, phi_inv};
use hypervel_core::{EScalar, ExtendedReal, Params};
use thiserror::Error;

use crate::output::fmt_g17;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("unsupported table operation `{0}` (supported: {list})", list = SUPPORTED.join(", "))]
    UnsupportedOp(String),
    #[error("bad grid: {0}")]
    Grid(String),
    #[error("grid point: {0}")]
    Point(#[from] hypervel_core::Error),
}

const BINARY: &[&str] = &["e_add", "e_mul", "e_compare"];
const UNARY: &[&str] = &["phi", "phi_inv", "e_neg", "e_mul_inverse"];
pub const SUPPORTED: &[&str] = &[
    "e_add",
    "e_mul",
    "e_compare",
    "phi",
    "phi_inv",
    "e_neg",
    "e_mul_inverse",
];

fn point(token: &str, c: f64) -> Result<f64, TableError> {
    let t = token.trim();
    let bad = || TableError::Grid(format!("cannot read `{t}` as a grid point"));
    if let Some(k) = t.strip_suffix('c') {
        let k = k.trim().trim_end_matches('*');
        let k = match k {
            "" | "+" => 1.0,
            "-" => -1.0,
            _ => k.parse::<f64>().map_err(|_| bad())?,
        };
        return Ok(k * c);
    }
    t.parse::<f64>().map_err(|_| bad())
}

pub fn parse_grid(spec: &str, c: f64) -> Result<Vec<f64>, TableError> {
    let body = spec.trim().trim_start_matches('{').trim_end_matches('}');
    let mut out = Vec::new();
    for item in body.split(',') {
        let parts: Vec<&str> = item.split(':').collect();
        match parts.as_slice() {
            [p] => out.push(point(p, c)?),
            [start, stop, count] => {
                let (a, b) = (point(start, c)?, point(stop, c)?);
                let n: usize = count.trim().parse().map_err(|_| {
                    TableError::Grid(format!("range count `{}` is not a positive integer", count.trim()))
                })?;
                match n {
                    0 => return Err(TableError::Grid("range count must be positive".into())),
                    1 => out.push(a),
                    _ => out.extend((0..n).map(|i| {
                        if i == n - 1 {
                            b
                        } else {
                            a + (b - a) * i as f64 / (n - 1) as f64
                        }
                    })),
                }
            }
            _ => {
                return Err(TableError::Grid(format!(
                    "`{item}` is neither a point nor start:stop:count"
                )))
            }
        }
    }
    Ok(out)
}

fn cell_binary(op: &str, u: EScalar, v: EScalar) -> String {
    match op {
        "e_add" => fmt_g17(e_add(u, v).value()),
        "e_mul" => e_mul(u, v)
            .map(|r| fmt_g17(r.value()))
            .unwrap_or_else(|_| "undefined".into()),
        "e_compare" => format!("{}", e_compare(u, v) as i8),
        _ => unreachable!(),
    }
}

fn cell_unary(op: &str, u: EScalar) -> String {
    let undefined = |_| "undefined".to_string();
    match op {
        "phi" => fmt_g17(phi(ExtendedReal::Finite(u.value()), u.params()).value()),
        "phi_inv" => match phi_inv(u) {
            ExtendedReal::Finite(x) => fmt_g17(x),
            ExtendedReal::Infinity => "inf".into(),
        },
        "e_neg" => e_neg(u).map(|r| fmt_g17(r.value())).unwrap_or_else(undefined),
        "e_mul_inverse" => e_mul_inverse(u).map(|r| fmt_g17(r.value())).unwrap_or_else(undefined),
        _ => unreachable!(),
    }
}

/// Renders the table as CSV. Binary operations give a square table whose
/// header row and first column hold the grid; unary ones give two columns.
/// Cells with no defined value read `undefined`.
pub fn cmd_table(op: &str, grid: &str, params: Params) -> Result<String, TableError> {
    if !SUPPORTED.contains(&op) {
        return Err(TableError::UnsupportedOp(op.to_string()));
    }
    let pts = parse_grid(grid, params.c())?;
    // phi takes any real; every other operation needs Einstein scalars
    let scalars: Vec<EScalar> = if op == "phi" {
        Vec::new()
    } else {
        pts.iter().map(|&x| EScalar::new(x, params)).collect::<Result<_, _>>()?
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| TableError::Grid(e.to_string());
    if BINARY.contains(&op) {
        let header: Vec<String> = std::iter::once(op.to_string())
            .chain(pts.iter().map(|&x| fmt_g17(x)))
            .collect();
        w.write_record(&header).map_err(csv_err)?;
        for (&x, &u) in pts.iter().zip(&scalars) {
            let row: Vec<String> = std::iter::once(fmt_g17(x))
                .chain(scalars.iter().map(|&v| cell_binary(op, u, v)))
                .collect();
            w.write_record(&row).map_err(csv_err)?;
        }
    } else {
        debug_assert!(UNARY.contains(&op));
        w.write_record(["x", op]).map_err(csv_err)?;
        for (i, &x) in pts.iter().enumerate() {
            let cell = if op == "phi" {
                fmt_g17(phi(ExtendedReal::Finite(x), params).value())
            } else {
                cell_unary(op, scalars[i])
            };
            w.write_record([fmt_g17(x), cell]).map_err(csv_err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| TableError::Grid(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv emits UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_tokens() {
        assert_eq!(parse_grid("{0, c}", 2.0).unwrap(), vec![0.0, 2.0]);
        assert_eq!(parse_grid("-c,0.5c,0.25", 2.0).unwrap(), vec![-2.0, 1.0, 0.25]);
        assert_eq!(parse_grid("0:1:5", 1.0).unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert!(parse_grid("0:1", 1.0).is_err());
        assert!(parse_grid("x", 1.0).is_err());
    }

    #[test]
    fn boundary_table() {
        let t = cmd_table("e_add", "0,c", Params::unit()).unwrap();
        assert_eq!(t, "e_add,0,1\n0,0,1\n1,1,1\n");
        assert_eq!(cmd_table("e_add", "0", Params::unit()).unwrap(), "e_add,0\n0,0\n");
    }

    #[test]
    fn unsupported_and_out_of_range() {
        assert!(matches!(
            cmd_table("gyro_add", "0", Params::unit()),
            Err(TableError::UnsupportedOp(_))
        ));
        assert!(matches!(
            cmd_table("e_add", "2", Params::unit()),
            Err(TableError::Point(_))
        ));
    }

    #[test]
    fn unary_columns() {
        let t = cmd_table("phi_inv", "0,c", Params::unit()).unwrap();
        assert_eq!(t, "x,phi_inv\n0,0\n1,inf\n");
        let t = cmd_table("e_mul", "0,c", Params::unit()).unwrap();
        assert!(t.contains("undefined") || t.lines().count() == 3);
    }
}
