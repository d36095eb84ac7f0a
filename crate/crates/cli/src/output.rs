//! Number formatting and report rendering.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;

use crate::config::OutputFormat;
use crate::report::PropertyReport;

/// `%.17g`: 17 significant digits, trailing zeros dropped, so every f64
/// survives a text round trip.
pub fn fmt_g17(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();

    if !(-4..17).contains(&exp) {
        let frac = digits[1..].trim_end_matches('0');
        let dot = if frac.is_empty() { "" } else { "." };
        let esign = if exp < 0 { '-' } else { '+' };
        return format!("{sign}{}{dot}{frac}e{esign}{:02}", &digits[..1], exp.abs());
    }
    let body = if exp >= 0 {
        let split = (exp + 1) as usize;
        let (int, frac) = digits.split_at(split);
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() {
            int.to_string()
        } else {
            format!("{int}.{frac}")
        }
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        format!("0.{zeros}{}", digits.trim_end_matches('0'))
    };
    format!("{sign}{body}")
}

/// Compact JSON with floats written by [`fmt_g17`].
#[derive(Debug, Default, Clone, Copy)]
pub struct G17Formatter;

impl Formatter for G17Formatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        writer.write_all(fmt_g17(value).as_bytes())
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.write_f64(writer, f64::from(value))
    }
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, G17Formatter);
    value.serialize(&mut ser).expect("in-memory serialization");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

pub fn render_reports(reports: &[PropertyReport], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = to_json(reports);
            s.push('\n');
            s
        }
        OutputFormat::Csv => reports_csv(reports),
        OutputFormat::Text => reports_text(reports),
    }
}

fn reports_csv(reports: &[PropertyReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "law",
        "module",
        "samples_run",
        "max_residual",
        "tolerance",
        "expected_violation",
        "verdict",
        "counterexample",
    ])
    .expect("in-memory csv");
    for r in reports {
        w.write_record([
            r.law.clone(),
            r.module.clone(),
            r.samples_run.to_string(),
            fmt_g17(r.max_residual),
            fmt_g17(r.tolerance),
            r.expected_violation.to_string(),
            r.verdict.as_str().to_string(),
            r.counterexample.as_ref().map(to_json).unwrap_or_default(),
        ])
        .expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv emits UTF-8")
}

fn reports_text(reports: &[PropertyReport]) -> String {
    let width = reports.iter().map(|r| r.law.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!(
            "{:<22} {:<width$}  samples={:<6} max_residual={} tol={}",
            r.verdict.as_str(),
            r.law,
            r.samples_run,
            fmt_g17(r.max_residual),
            fmt_g17(r.tolerance),
        ));
        if let Some(ce) = &r.counterexample {
            out.push_str(&format!("  counterexample={}", to_json(ce)));
        }
        for n in &r.notes {
            out.push_str(&format!("  note: {n}"));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn g17_matches_printf() {
        let cases = [
            (0.8, "0.80000000000000004"),
            (1.25, "1.25"),
            (1.0, "1"),
            (0.0, "0"),
            (-0.5, "-0.5"),
            (123456.0, "123456"),
            (1e-20, "9.9999999999999995e-21"),
            (1e17, "1e+17"),
            (1e16, "10000000000000000"),
            (0.0001, "0.0001"),
            (0.00001, "1.0000000000000001e-05"),
            (f64::MAX, "1.7976931348623157e+308"),
            (2.0 * 1f64.tanh(), "1.5231883119115297"),
        ];
        for (x, want) in cases {
            assert_eq!(fmt_g17(x), want, "{x:e}");
        }
    }

    #[test]
    fn g17_round_trips() {
        for x in [0.1, 1.0 / 3.0, 2f64.sqrt(), -7.123e-9, 6.02e23, 5e-324] {
            assert_eq!(fmt_g17(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }

    #[test]
    fn json_uses_seventeen_digits() {
        assert_eq!(to_json(&json!([0.8, 1, "x"])), "[0.80000000000000004,1,\"x\"]");
    }
}
