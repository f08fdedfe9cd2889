#![allow(dead_code)]

use std::process::Command;

use ctindex::report::{Comparison, Report};
use serde_json::Value;

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command in-process.
pub fn run(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ctindex").chain(args.iter().copied());
    let code = ctindex::run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

/// Runs the built binary.
pub fn run_binary(args: &[&str]) -> Output {
    let o = Command::new(env!("CARGO_BIN_EXE_ctindex"))
        .args(args)
        .output()
        .expect("binary runs");
    Output {
        code: o.status.code().unwrap_or(-1),
        stdout: String::from_utf8(o.stdout).unwrap(),
        stderr: String::from_utf8(o.stderr).unwrap(),
    }
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(o.code, 0, "{args:?} failed: {}", o.stderr);
    o.stdout
}

pub fn report(args: &[&str]) -> Report {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    serde_json::from_str(&ok(&full)).expect("a report")
}

pub fn comparison(args: &[&str]) -> Comparison {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    serde_json::from_str(&ok(&full)).expect("a comparison")
}

/// `[betti, torsion...]` per degree, dropping trailing zero groups.
pub fn homology(gs: &[ctindex::report::Group]) -> Vec<Vec<i64>> {
    let mut v: Vec<Vec<i64>> = gs
        .iter()
        .map(|g| {
            std::iter::once(g.betti as i64)
                .chain(g.torsion.iter().map(|t| t.as_i64().unwrap()))
                .collect()
        })
        .collect();
    while v.last().is_some_and(|g| g == &[0]) {
        v.pop();
    }
    v
}

pub fn ints(v: &[Vec<Value>]) -> Vec<Vec<i64>> {
    v.iter().map(|r| r.iter().map(|x| x.as_i64().unwrap()).collect()).collect()
}
