#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// Run the binary from the crate root; stdout and stderr joined, then the exit line.
pub fn run(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_tvcat")).args(args).current_dir(root()).output().expect("spawn tvcat");
    let code = out.status.code().unwrap_or(-1);
    let mut text = String::from_utf8_lossy(&out.stdout).into_owned();
    text.push_str(&String::from_utf8_lossy(&out.stderr));
    (text, code)
}

pub fn transcript(args: &[&str]) -> String {
    let (text, code) = run(args);
    format!("{text}exit {code}\n")
}

pub struct Case {
    pub name: String,
    pub args: Vec<String>,
    pub expected: String,
}

pub fn golden_cases() -> Vec<Case> {
    let dir = root().join("tests/golden");
    let list = std::fs::read_to_string(dir.join("cases.txt")).expect("cases.txt");
    list.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (name, args) = l.split_once(':').expect("name: args");
            let name = name.trim().to_string();
            let expected = std::fs::read_to_string(dir.join(format!("{name}.out"))).expect("golden output");
            Case { name, args: args.split_whitespace().map(String::from).collect(), expected }
        })
        .collect()
}

pub fn fixtures(dir: &str) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(root().join(dir))
        .expect("fixture dir")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "tv"))
        .collect();
    v.sort();
    v
}

pub fn rel(p: &Path) -> String {
    p.strip_prefix(root()).unwrap_or(p).display().to_string()
}
