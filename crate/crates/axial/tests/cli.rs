//! End-to-end checks of the command-line interface.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_axial")
}

fn write_fixture(dir: &std::path::Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(bin()).args(args).output().expect("binary runs")
}

fn fixtures() -> (tempdir::TempDirLike, PathBuf, PathBuf) {
    let dir = tempdir::TempDirLike::new();
    let alg = write_fixture(
        dir.path(),
        "twob.json",
        r#"{"dim":2,"basis":["a0","a1"],"params":["a"],
            "products":{"a0,a0":{"a0":"1"},"a1,a1":{"a1":"1"},
                        "a0,a1":{"a0":"a","a1":"a"}},
            "exclusions":["a-1"]}"#,
    );
    let law = write_fixture(
        dir.path(),
        "law.json",
        r#"{"labels":["1","a"],
            "table":{"1,1":["1"],"1,a":["a"],"a,a":["1","a"]}}"#,
    );
    (dir, alg, law)
}

// minimal scoped temp dir so the test has no extra dependencies
mod tempdir {
    use std::path::{Path, PathBuf};

    pub struct TempDirLike(PathBuf);

    impl TempDirLike {
        pub fn new() -> TempDirLike {
            let p = std::env::temp_dir().join(format!(
                "axial-cli-test-{}-{:?}",
                std::process::id(),
                std::thread::current().id()
            ));
            std::fs::create_dir_all(&p).unwrap();
            TempDirLike(p)
        }

        pub fn path(&self) -> &Path {
            &self.0
        }
    }

    impl Drop for TempDirLike {
        fn drop(&mut self) {
            let _ = std::fs::remove_dir_all(&self.0);
        }
    }
}

#[test]
fn check_axis_passes_and_fails_by_law() {
    let (_d, alg, law) = fixtures();
    let out = run(&[
        "check-axis",
        "--algebra",
        alg.to_str().unwrap(),
        "--law",
        law.to_str().unwrap(),
        "--axis",
        "0",
    ]);
    assert!(out.status.success(), "{:?}", out);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("PASS"));
}

#[test]
fn grading_json_is_deterministic() {
    let (_d, _alg, law) = fixtures();
    let args = ["grading", "--law", law.to_str().unwrap(), "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "identical inputs give identical reports");
}

#[test]
fn relators_report_counts() {
    let (_d, alg, law) = fixtures();
    let out = run(&[
        "relators",
        "--algebra",
        alg.to_str().unwrap(),
        "--law",
        law.to_str().unwrap(),
        "--max-len",
        "2",
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{:?}", out);
    let v: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("json report");
    // 2 axes * (1 + 5 words + 4 label pairs * 25 word pairs)
    assert_eq!(v["total"], 212);
    assert_eq!(v["failed"], 0);
}

#[test]
fn specialize_refuses_excluded_points() {
    let (_d, alg, _law) = fixtures();
    let refused = run(&[
        "specialize",
        "--algebra",
        alg.to_str().unwrap(),
        "--params",
        "a=1",
    ]);
    assert!(!refused.status.success());
    assert!(String::from_utf8_lossy(&refused.stderr).contains("refusing"));

    let ok = run(&[
        "specialize",
        "--algebra",
        alg.to_str().unwrap(),
        "--params",
        "a=-1",
    ]);
    assert!(ok.status.success(), "{:?}", ok);
    let v: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["products"]["a0,a1"]["a0"], "-1");
    assert!(v["params"].as_array().unwrap().is_empty());
}

#[test]
fn quotient_emits_the_quotient_algebra() {
    let (_d, alg, _law) = fixtures();
    // quotient by the whole algebra exercises the degenerate zero quotient
    let out = run(&[
        "quotient",
        "--algebra",
        alg.to_str().unwrap(),
        "--gens",
        "1,0;0,1",
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{:?}", out);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["ideal_dim"], 2);
    assert_eq!(v["quotient"]["dim"], 0);
}
