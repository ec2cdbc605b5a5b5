use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use clifford_prym::fibration::format::{parse_fibration, serialize_curve};
use clifford_prym::fibration::ParamCurve;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_clifford-prym"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("clifford-prym-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn demo(dir: &Path, seed: &str) -> PathBuf {
    let path = dir.join(format!("demo-{seed}.txt"));
    let out = run(&["demo", "--seed", seed, "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

/// Keys of every object appear in increasing order.
fn keys_sorted(text: &str) -> bool {
    let mut stack: Vec<Option<String>> = Vec::new();
    for line in text.lines() {
        let t = line.trim();
        if let Some(rest) = t.strip_prefix('"') {
            if let Some(end) = rest.find("\":") {
                let key = rest[..end].to_string();
                if let Some(Some(prev)) = stack.last() {
                    if *prev >= key {
                        return false;
                    }
                }
                if let Some(top) = stack.last_mut() {
                    *top = Some(key);
                }
            }
        }
        if t.ends_with('{') {
            stack.push(None);
        } else if t.starts_with('}') {
            stack.pop();
        }
    }
    true
}

#[test]
fn demo_pipeline_counts() {
    let dir = scratch("pipeline");
    let fib = demo(&dir, "0");
    let fib = fib.to_str().unwrap();
    let disc = json(&run(&["discriminant", "--in", fib]));
    assert_eq!(disc["degree"], 5);
    assert_eq!(disc["schema"], 1);
    let one = json(&run(&["intersect", "--in", fib, "--d", "1"]));
    assert_eq!(one["count"], 5);
    let two = json(&run(&["intersect", "--in", fib, "--d", "2"]));
    assert_eq!(two["count"], 10);
    assert_eq!(two["intersection"]["points"].as_array().unwrap().len(), 10);
    let lift = json(&run(&["lift", "--in", fib, "--d", "2", "--lambda", "1100000000", "--e", "4"]));
    assert_eq!(lift["pass"], true);
    assert_eq!(lift["module"]["twist"], 1);
    let parity = json(&run(&["parity", "--in", fib, "--e", "-1"]));
    assert_eq!(parity["pass"], true);
}

#[test]
fn reports_are_deterministic_and_sorted() {
    let dir = scratch("determinism");
    let a = std::fs::read(demo(&dir, "7")).unwrap();
    let b = std::fs::read(demo(&dir, "7")).unwrap();
    assert_eq!(a, b);
    let fib = dir.join("demo-7.txt");
    let fib = fib.to_str().unwrap();
    for args in [
        vec!["discriminant", "--in", fib],
        vec!["intersect", "--in", fib, "--d", "2", "--seed", "3"],
        vec!["lift", "--in", fib, "--seed", "3"],
        vec!["spectral", "--s", "1,2,0,1", "--lb", "pullback:3,1"],
    ] {
        let x = run(&args);
        let y = run(&args);
        assert!(x.status.success(), "{args:?}: {}", String::from_utf8_lossy(&x.stderr));
        assert_eq!(x.stdout, y.stdout, "{args:?}");
        assert!(keys_sorted(&String::from_utf8_lossy(&x.stdout)), "{args:?}");
    }
}

#[test]
fn spectral_report() {
    let out = json(&run(&["spectral", "--s", "0,1,0,1", "--lb", "ramification:0,1"]));
    assert_eq!(out["pass"], true);
    assert_eq!(out["ramification_kernel_dims"], serde_json::json!([1, 1, 1]));
    let out = json(&run(&["spectral", "--field", "5,2", "--s", "1,0,1"]));
    assert_eq!(out["pass"], true);
}

#[test]
fn parse_errors_exit_2_with_position() {
    let dir = scratch("parse");
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "field 13\ntwists 0 0 1 1\n1 1 0 0\n1 x 0 0\n").unwrap();
    let out = run(&["discriminant", "--in", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 4") && err.contains("column"), "{err}");
}

#[test]
fn degree_mismatch_names_the_entry() {
    let dir = scratch("degree");
    let fib = demo(&dir, "0");
    let text = std::fs::read_to_string(&fib).unwrap();
    // replace the (1,2) entry, of degree 2, by a linear form
    let mut lines: Vec<&str> = text.lines().collect();
    lines[6] = "1 1 0 0";
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, lines.join("\n")).unwrap();
    let out = run(&["discriminant", "--in", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("(1,2)"));
}

#[test]
fn empty_entry_is_zero() {
    let dir = scratch("empty");
    let path = dir.join("f.txt");
    std::fs::write(&path, "field 7\ntwists 0 0 0 1\n1 1 0 0\n\n\n1 0 1 0\n\n1 0 0 1\n").unwrap();
    let fib = parse_fibration(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(fib.entry(0, 1).is_zero());
    let out = json(&run(&["discriminant", "--in", path.to_str().unwrap()]));
    assert_eq!(out["degree"], 3);
}

#[test]
fn missing_input_and_field_mismatch_exit_2() {
    let out = run(&["discriminant", "--in", "/nonexistent/fibration.txt"]);
    assert_eq!(out.status.code(), Some(2));
    let dir = scratch("mismatch");
    let fib = demo(&dir, "0");
    let out = run(&["discriminant", "--in", fib.to_str().unwrap(), "--field", "7"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["demo", "--d", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn math_errors_exit_3_with_name() {
    let out = run(&["spectral", "--s", "0,0,1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cover-singular"));
    let out = run(&["demo", "--field", "4"]);
    assert_ne!(out.status.code(), Some(0));

    // a line meeting the discriminant non-transversally
    let dir = scratch("tangent");
    let path = demo(&dir, "0");
    let fib = parse_fibration(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let line = (0..20_000)
        .map(|_| ParamCurve::random(fib.field(), 1, &mut rng).unwrap())
        .find(|c| fib.intersect(c).map(|i| !i.transversal()).unwrap_or(false))
        .expect("a tangent line");
    let curve = dir.join("line.txt");
    std::fs::write(&curve, serialize_curve(&line)).unwrap();
    let out = run(&["lift", "--in", path.to_str().unwrap(), "--curve", curve.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("outside-U_d"));
}

#[test]
fn verify_passes() {
    let out = run(&["verify"]);
    let v = json(&out);
    assert_eq!(v["pass"], true);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["suites"].as_array().unwrap().len(), 25);
}
