//! End-to-end acceptance run against the built binary. Prints one PASS/FAIL
//! line per criterion and exits nonzero if any fails.

use std::process::{Command, Output};

use serde_json::Value;

fn hypervel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypervel"))
        .args(args)
        .env_remove("HYPERVEL_SEED")
        .output()
        .expect("spawn hypervel")
}

struct Run {
    code: i32,
    reports: Vec<Value>,
}

fn verify(suite: &str) -> Result<Run, String> {
    let out = hypervel(&["verify", suite, "--seed", "42", "--format", "json"]);
    let code = out.status.code().ok_or("killed by signal")?;
    let parsed: Value = serde_json::from_slice(&out.stdout).map_err(|e| format!("bad JSON: {e}"))?;
    let reports = parsed.as_array().ok_or("reports are not an array")?.clone();
    Ok(Run { code, reports })
}

fn find<'a>(run: &'a Run, law: &str) -> Result<&'a Value, String> {
    run.reports
        .iter()
        .find(|r| r["law"] == law)
        .ok_or_else(|| format!("no report for {law}"))
}

fn num(r: &Value, key: &str) -> f64 {
    r[key].as_f64().unwrap_or(f64::NAN)
}

/// The law holds over at least `min_samples` with a residual within `bound`.
fn holds(run: &Run, law: &str, bound: f64, min_samples: u64) -> Result<(), String> {
    let r = find(run, law)?;
    if r["verdict"] != "holds" {
        return Err(format!("{law}: verdict {}", r["verdict"]));
    }
    let (res, tol) = (num(r, "max_residual"), num(r, "tolerance"));
    if tol > bound * (1.0 + 1e-12) || res > bound {
        return Err(format!("{law}: residual {res:e} / tolerance {tol:e} above {bound:e}"));
    }
    let n = r["samples_run"].as_u64().unwrap_or(0);
    if n < min_samples {
        return Err(format!("{law}: only {n} samples"));
    }
    Ok(())
}

fn all_hold(run: &Run) -> Result<(), String> {
    if run.code != 0 {
        return Err(format!("exit code {}", run.code));
    }
    match run.reports.iter().find(|r| r["verdict"] == "violated-unexpectedly") {
        Some(r) => Err(format!("{} violated: {}", r["law"], r["counterexample"])),
        None => Ok(()),
    }
}

const N: u64 = 10_000;

fn criterion_1() -> Result<(), String> {
    let run = verify("scalar")?;
    all_hold(&run)?;
    holds(&run, "scalar.associativity", 1e-12, N)?;
    holds(&run, "scalar.commutativity", 0.0, N)?;
    holds(&run, "scalar.identity", 0.0, N)?;
    holds(&run, "scalar.absorbing_c", 0.0, N)?;
    holds(&run, "scalar.group_inverse", 0.0, N)?;
    holds(&run, "scalar.distributivity", 1e-9, N)?;
    holds(&run, "scalar.spot_values", 0.0, 1)?;

    let out = hypervel(&["eval", "e_add", "[0.5, 0.5]"]);
    let text = String::from_utf8_lossy(&out.stdout);
    let v: f64 = text.trim().parse().map_err(|_| format!("eval printed {text:?}"))?;
    if !out.status.success() || v != 0.8 || text.trim() != "0.80000000000000004" {
        return Err(format!("e_add(0.5, 0.5) printed {text:?}"));
    }
    let out = hypervel(&["table", "e_add", "--grid", "{0,c}"]);
    let table = String::from_utf8_lossy(&out.stdout);
    if !out.status.success() || table != "e_add,0,1\n0,0,1\n1,1,1\n" {
        return Err(format!("{{0,c}} table was {table:?}"));
    }
    Ok(())
}

fn criterion_2() -> Result<(), String> {
    let run = verify("ball")?;
    all_hold(&run)?;
    for d in [1, 2, 3, 7] {
        holds(&run, &format!("ball.dim{d}.associativity"), 1e-9, N)?;
        holds(&run, &format!("ball.dim{d}.commutativity"), 1e-9, N)?;
        holds(&run, &format!("ball.dim{d}.identity_inverse"), 1e-9, N)?;
    }
    holds(&run, "ball.dim1.scalar_agreement", 1e-12, N)?;
    holds(&run, "ball.complex.distributivity", 1e-9, N)?;
    holds(&run, "ball.complex.mul_assoc_comm", 1e-9, N)?;
    holds(&run, "ball.complex.mul_identity_inverse", 1e-9, N)?;
    holds(&run, "ball.complex.polar", 1e-12, N)
}

fn witness(run: &Run, law: &str) -> Result<(), String> {
    let r = find(run, law)?;
    if r["verdict"] != "violated-as-expected" || r["counterexample"].is_null() || num(r, "max_residual") <= 1e-3 {
        return Err(format!("{law}: no witness with gap above 1e-3 c ({r})"));
    }
    Ok(())
}

fn criterion_3() -> Result<(), String> {
    let run = verify("gyro")?;
    all_hold(&run)?;
    witness(&run, "gyro.non_associativity")?;
    witness(&run, "gyro.non_commutativity")?;
    holds(&run, "gyro.cross_inner_agreement", 1e-12, N)?;
    holds(&run, "gyro.gamma_identity", 1e-12, N)?;
    holds(&run, "gyro.gamma_spot", 1e-15, 1)?;
    holds(&run, "gyro.moebius_involution.dim2", 1e-10, N)?;
    holds(&run, "gyro.moebius_involution.dim3", 1e-10, N)?;
    let out = hypervel(&["eval", "gamma", "[[0.6, 0, 0]]"]);
    let g: f64 = String::from_utf8_lossy(&out.stdout)
        .trim()
        .parse()
        .map_err(|_| "gamma not a number")?;
    if (g - 1.25).abs() > 1e-15 {
        return Err(format!("gamma(0.6c) = {g}"));
    }
    Ok(())
}

fn criterion_4() -> Result<(), String> {
    let run = verify("multidim")?;
    all_hold(&run)?;
    for family in ["identity", "tanh"] {
        for n in [1, 2, 3, 5] {
            holds(&run, &format!("multidim.round_trip.{family}.n{n}"), 1e-12, N)?;
        }
    }
    for n in [2, 3, 5] {
        holds(&run, &format!("multidim.h_add.n{n}.transport"), 1e-9, N)?;
        holds(&run, &format!("multidim.h_add.n{n}.assoc_comm"), 1e-9, N)?;
        holds(&run, &format!("multidim.h_add.n{n}.identity_closure"), 0.0, N)?;
    }
    holds(&run, "multidim.cone_closure", 0.0, N)?;
    holds(&run, "multidim.h2.semifield", 1e-9, N)?;
    holds(&run, "multidim.h2.mul_inverse", 1e-9, N)
}

fn criterion_5() -> Result<(), String> {
    let run = verify("meanlike")?;
    all_hold(&run)?;
    for m in ["arithmetic", "harmonic"] {
        holds(&run, &format!("meanlike.{m}.associativity"), 1e-9, N)?;
        holds(&run, &format!("meanlike.{m}.commutativity"), 1e-12, N)?;
        holds(&run, &format!("meanlike.{m}.identity"), 1e-12, N)?;
        holds(&run, &format!("meanlike.{m}.fixed_point"), 1e-12, N / 2)?;
        holds(&run, &format!("meanlike.{m}.generic_associativity"), 1e-9, N)?;
    }
    holds(&run, "meanlike.einstein.premises", 1e-9, N)?;
    holds(&run, "meanlike.real.generic_associativity", 1e-9, N)
}

fn criterion_6() -> Result<(), String> {
    let args = ["verify", "all", "--seed", "42", "--format", "json"];
    let (a, b) = (hypervel(&args), hypervel(&args));
    if a.stdout.is_empty() || a.stdout != b.stdout {
        return Err("two runs differ".into());
    }
    let env = Command::new(env!("CARGO_BIN_EXE_hypervel"))
        .args(["verify", "all", "--format", "json"])
        .env("HYPERVEL_SEED", "42")
        .output()
        .map_err(|e| e.to_string())?;
    if env.stdout != a.stdout {
        return Err("HYPERVEL_SEED=42 differs from --seed 42".into());
    }
    Ok(())
}

type Check = fn() -> Result<(), String>;

fn main() {
    let criteria: [(&str, Check); 6] = [
        ("scalar laws and spot values", criterion_1),
        ("ball group and complex field", criterion_2),
        ("gyro witnesses and identities", criterion_3),
        ("multidim chains and semi-field", criterion_4),
        ("mean-like aggregation", criterion_5),
        ("byte-identical reports", criterion_6),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("PASS criterion {}: {name}", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
