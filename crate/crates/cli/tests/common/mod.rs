#![allow(dead_code)]

use std::process::{Command, Output};

use serde_json::Value;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}):\n{}", self.stdout))
    }
}

pub fn qes(args: &[&str]) -> Run {
    let Output { status, stdout, stderr } = Command::new(env!("CARGO_BIN_EXE_qes"))
        .args(args)
        .output()
        .expect("spawn qes");
    Run {
        code: status.code().expect("exit code"),
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

/// `--model ... --l 0 <fixed flags>` for the reference configuration of each
/// model.
pub fn anchor_args(model: &'static str) -> Vec<&'static str> {
    let rest: &[&'static str] = match model {
        "screened-coulomb" => &["--gamma", "-0.5", "--delta", "-0.9"],
        "singular-power" => &["--lambda", "-1", "--xi", "1", "--tau", "0.5"],
        "singular-anharmonic" => &["--omega", "0.5", "--sigma", "1", "--chi", "0.5"],
        "non-polynomial" => &["--beta", "1"],
        other => panic!("unknown model {other}"),
    };
    let mut v = vec!["--model", model, "--l", "0"];
    v.extend_from_slice(rest);
    v
}

pub const MODELS: [&str; 4] = ["non-polynomial", "screened-coulomb", "singular-power", "singular-anharmonic"];

pub fn with(cmd: &str, base: &[&'static str], extra: &[&str]) -> Vec<String> {
    std::iter::once(cmd)
        .chain(base.iter().copied())
        .chain(extra.iter().copied())
        .map(String::from)
        .collect()
}

pub fn run(args: &[String]) -> Run {
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    qes(&refs)
}

pub fn f(v: &Value) -> f64 {
    v.as_f64().unwrap_or_else(|| panic!("not a number: {v}"))
}

/// Parses CSV text into rows of fields, header dropped.
pub fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().skip(1).map(|l| l.split(',').map(String::from).collect()).collect()
}
