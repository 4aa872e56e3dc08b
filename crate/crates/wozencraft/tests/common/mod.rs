use std::path::Path;
use std::process::{Command, Output};

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wozencraft"))
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

pub fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

pub fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

pub fn code_of(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

/// Writes the canonical q=2, k'=11 parameter file and returns its path.
pub fn write_params11(dir: &Path) -> String {
    let path = dir.join("p11.params");
    let out = run(&[
        "params",
        "--q",
        "2",
        "--min-k",
        "10",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code_of(&out), 0, "params generation failed: {}", stderr_of(&out));
    path.to_str().unwrap().to_string()
}
