//! End-to-end runs of the `biscv` binary: exit codes, determinism, schema
//! conformance and configuration plumbing.

use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn biscv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biscv"))
        .args(args)
        .env_remove("BISCV_GRID_POINTS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    let text = std::fs::read_to_string(&path).unwrap();
    let value: Value = serde_json::from_str(&text).unwrap();
    jsonschema::JSONSchema::compile(&value).unwrap()
}

fn assert_valid(name: &str, doc: &Value) {
    let s = schema(name);
    let msgs: Vec<String> = match s.validate(doc) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("{name} document violates its schema: {msgs:#?}");
}

#[test]
fn check_passes_for_normal_mixture_at_edge() {
    let out = biscv(&["check", "--dist", "normmix:delta=1.34", "--s", "0", "--method", "all"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["result"]["verdict"], "pass");
    let certs = doc["result"]["certificates"].as_array().unwrap();
    assert_eq!(certs.len(), 3);
    assert!(certs.iter().all(|c| c["verdict"] == "pass"));
    assert_valid("check", &doc);
}

#[test]
fn check_fails_with_witness() {
    let out = biscv(&["check", "--dist", "t:r=1", "--s", "0.5"]);
    assert_eq!(code(&out), 2);
    let doc = json(&out);
    assert_eq!(doc["result"]["verdict"], "fail");
    let iv = &doc["result"]["certificates"][0];
    assert_eq!(iv["condition"], "deriv_ineq_iv");
    assert!(iv["witness"]["x"].is_number());
    assert!(iv["margin"].as_f64().unwrap() < 0.0);
    assert_valid("check", &doc);
}

#[test]
fn single_method_yields_one_certificate() {
    for (method, cond) in [("iv", "deriv_ineq_iv"), ("iii", "hazard_mono_iii"), ("midpoint", "midpoint_def")] {
        let out = biscv(&["check", "--dist", "normal:mu=0,sigma=1", "--s", "0", "--method", method]);
        assert_eq!(code(&out), 0, "{method}");
        let doc = json(&out);
        assert_eq!(doc["result"]["certificates"].as_array().unwrap().len(), 1);
        assert_eq!(doc["result"]["certificates"][0]["condition"], cond);
    }
}

#[test]
fn gamma_of_cauchy() {
    let out = biscv(&["gamma", "--dist", "t:r=1", "--s", "-0.5"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    let r = &doc["result"];
    assert!((r["gamma"].as_f64().unwrap() - 2.0).abs() < 1e-6);
    assert_eq!(r["theoretical_cap"].as_f64().unwrap(), 2.0);
    assert_valid("gamma", &doc);
}

#[test]
fn s_star_is_equivalent_to_s() {
    let a = biscv(&["gamma", "--dist", "t:r=1", "--s", "-0.5"]);
    let b = biscv(&["gamma", "--dist", "t:r=1", "--s-star", "-1"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn infinite_index_accepted() {
    let out = biscv(&["check", "--dist", "uniform:lo=0,hi=1", "--s", "inf"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["config"]["s"], "inf");
    assert_eq!(doc["config"]["s_star"], 1.0);
    assert_valid("check", &doc);
}

#[test]
fn max_s_and_threshold() {
    let out = biscv(&["max-s", "--dist", "t:r=1", "--lo", "-0.9", "--hi", "0"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert!((doc["result"]["max_s"].as_f64().unwrap() + 0.5).abs() < 2e-4);
    assert_valid("max-s", &doc);

    let out = biscv(&["threshold", "--family", "normmix", "--s", "0", "--lo", "1", "--hi", "2"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    let d = doc["result"]["delta_star"].as_f64().unwrap();
    assert!(d > 1.34 && d < 1.35, "{d}");
    assert_valid("threshold", &doc);
}

#[test]
fn envelope_csv_and_json() {
    let out = biscv(&["envelope", "--dist", "t:r=1", "--s", "-0.5", "--grid-points", "50"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,F,F_L,F_U,f,FL_prime,FU_prime,f_prime,fp_lo,fp_hi"));
    assert_eq!(lines.count(), 50);

    let out = biscv(&["envelope", "--dist", "gpow:r=1", "--s", "2", "--grid-points", "50", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    let rows = doc["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 50);
    assert!(rows.iter().all(|r| r["F_U_clamped"].as_f64().unwrap() <= 1.0));
    assert_valid("envelope", &doc);
}

#[test]
fn fisher_reports() {
    let out = biscv(&["fisher", "--dist", "normal:mu=0,sigma=1", "--s", "0"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert!((doc["result"]["I_f"].as_f64().unwrap() - 1.0).abs() < 1e-7);
    assert_eq!(doc["result"]["holds"], true);
    assert_valid("fisher", &doc);

    let out = biscv(&["fisher", "--dist", "gpow:r=2", "--s", "1"]);
    assert_eq!(code(&out), 0);
    let doc = json(&out);
    assert_eq!(doc["result"]["I_f"], "inf");
    assert_eq!(doc["result"]["all_infinite"], true);
    assert_valid("fisher", &doc);
}

#[test]
fn catalog_metadata() {
    for (spec, max_s) in [
        ("pareto:a=2,b=1", Value::from(-1.0 / 3.0)),
        ("uniform:lo=0,hi=1", Value::from("inf")),
        ("normmix:delta=2", Value::from("unknown")),
    ] {
        let out = biscv(&["catalog", "--dist", spec]);
        assert_eq!(code(&out), 0, "{spec}");
        let doc = json(&out);
        assert_eq!(doc["result"]["spec"], spec);
        assert_eq!(doc["result"]["max_known_s"], max_s, "{spec}");
        assert_valid("catalog", &doc);
    }
}

#[test]
fn numerical_errors_exit_one_with_json() {
    let cases: [(&str, &[&str], &str); 2] = [
        ("max-s", &["max-s", "--dist", "t:r=1", "--lo", "0", "--hi", "1"], "bracket_invalid"),
        ("fisher", &["fisher", "--dist", "t:r=1", "--s", "0.5"], "precondition"),
    ];
    for (name, args, kind) in cases {
        let out = biscv(args);
        assert_eq!(code(&out), 1, "{args:?}");
        let doc = json(&out);
        assert_eq!(doc["error"]["kind"], kind);
        assert!(doc["error"]["message"].as_str().unwrap().len() > 10);
        assert!(!out.stderr.is_empty());
        assert_valid(name, &doc);
    }
}

#[test]
fn usage_errors_exit_64() {
    let cases: &[&[&str]] = &[
        &[],
        &["frobnicate"],
        &["gamma", "--dist", "t:r=1"],
        &["gamma", "--dist", "t:r=1", "--s", "0", "--s-star", "0"],
        &["gamma", "--dist", "t:r=-1", "--s", "0"],
        &["gamma", "--dist", "cauchy", "--s", "0"],
        &["gamma", "--dist", "t:r=1", "--s", "-1"],
        &["gamma", "--dist", "t:r=1", "--s-star", "2"],
        &["gamma", "--dist", "t:r=1", "--s", "abc"],
        &["gamma", "--dist", "t:r=1", "--s", "0", "--grid-points", "15"],
        &["gamma", "--dist", "t:r=1", "--s", "0", "--eps", "0.1"],
        &["gamma", "--dist", "t:r=1", "--s", "0", "--tol", "-1"],
        &["gamma", "--dist", "t:r=1", "--s", "0", "--format", "csv"],
        &["check", "--dist", "t:r=1", "--s", "0", "--method", "v"],
        &["threshold", "--family", "tmix", "--s", "0", "--lo", "1", "--hi", "2"],
        &["threshold", "--family", "normmix", "--r", "1", "--s", "0", "--lo", "1", "--hi", "2"],
        &["max-s", "--dist", "t:r=1", "--lo", "1", "--hi", "0"],
    ];
    for args in cases {
        let out = biscv(args);
        assert_eq!(code(&out), 64, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&biscv(&["--help"])), 0);
    assert_eq!(code(&biscv(&["--version"])), 0);
    assert_eq!(code(&biscv(&["check", "--help"])), 0);
}

#[test]
fn output_is_deterministic() {
    let runs: &[&[&str]] = &[
        &["check", "--dist", "tmix:r=1,delta=0.5", "--s", "-0.5"],
        &["gamma", "--dist", "fdist:a=4,b=6", "--s", "-0.2"],
        &["envelope", "--dist", "normal:mu=0,sigma=1", "--s", "0"],
    ];
    for args in runs {
        let a = biscv(args);
        let b = biscv(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(code(&a), code(&b));
    }
}

#[test]
fn grid_size_from_environment() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_biscv"));
        cmd.args(["check", "--dist", "normal:mu=0,sigma=1", "--s", "0", "--method", "iv"]).args(extra);
        match env {
            Some(v) => cmd.env("BISCV_GRID_POINTS", v),
            None => cmd.env_remove("BISCV_GRID_POINTS"),
        };
        cmd.output().unwrap()
    };
    let doc = json(&run(None, &[]));
    assert_eq!(doc["config"]["grid_points"], 2000);

    let doc = json(&run(Some("100"), &[]));
    assert_eq!(doc["config"]["grid_points"], 100);
    assert_eq!(doc["result"]["certificates"][0]["grid"]["count"], 100);

    // the flag wins over the environment
    let doc = json(&run(Some("100"), &["--grid-points", "64"]));
    assert_eq!(doc["config"]["grid_points"], 64);

    assert_eq!(code(&run(Some("3"), &[])), 64);
}

#[test]
fn defaults_recorded_in_config() {
    let doc = json(&biscv(&["check", "--dist", "normal:mu=0,sigma=1", "--s", "0"]));
    let cfg = &doc["config"];
    assert_eq!(cfg["eps"], 1e-8);
    assert_eq!(cfg["tol"], 1e-9);
    assert_eq!(cfg["method"], "all");
    assert_eq!(cfg["format"], "json");
    assert_eq!(cfg["dist"], "normal:mu=0,sigma=1");
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gamma.json");
    let out = biscv(&["gamma", "--dist", "t:r=4", "--s", "-0.2", "--output", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_valid("gamma", &doc);

    let bad = dir.path().join("missing").join("x.json");
    let out = biscv(&["gamma", "--dist", "t:r=4", "--s", "-0.2", "--output", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
}
