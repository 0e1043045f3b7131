use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn vdtool(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vdtool"))
        .args(args)
        .output()
        .expect("spawn vdtool")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad json ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn equiv_accepts_factor_list() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.txt", "x1 - x2\nx1 - x3\nx2 - x3\n");
    let out = vdtool(&["equiv", "--forms", s(&f)]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["status"], "exact_equivalence");
    assert_eq!(v["n"], 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("exact_equivalence"));
}

#[test]
fn equiv_rejects_without_rational_scalar() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.txt", "x1^2*x2 + 2*x1*x2^2\n");
    let out = vdtool(&["equiv", "--poly", s(&p)]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    assert_eq!(v["status"], "reject");
    assert_eq!(v["reason"], "no_rational_scalar");
}

#[test]
fn equiv_inputs_are_exclusive_and_required() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.txt", "x1 - x2\n");
    assert_eq!(code(&vdtool(&["equiv"])), 2);
    assert_eq!(code(&vdtool(&["equiv", "--forms", s(&f), "--poly", s(&f)])), 2);
}

#[test]
fn generated_instance_round_trips_through_equiv() {
    let dir = TempDir::new().unwrap();
    let forms = dir.path().join("forms.txt");
    let poly = dir.path().join("poly.txt");
    let out = vdtool(&[
        "--seed", "7", "gen", "instance", "--n", "4",
        "--forms-out", s(&forms), "--poly-out", s(&poly),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["factors"].as_array().unwrap().len(), 6);
    for (flag, path) in [("--forms", &forms), ("--poly", &poly)] {
        let out = vdtool(&["--seed", "7", "equiv", flag, s(path)]);
        assert_eq!(code(&out), 0, "{flag}");
        assert_eq!(json(&out)["status"], "exact_equivalence");
    }
    let sz = vdtool(&["equiv", "--poly", s(&poly), "--verify", "sz"]);
    assert_eq!(code(&sz), 0);
}

#[test]
fn perturbed_instance_is_rejected() {
    let dir = TempDir::new().unwrap();
    let forms = dir.path().join("forms.txt");
    let out = vdtool(&[
        "gen", "instance", "--n", "4", "--mode", "perturbed", "--forms-out", s(&forms),
    ]);
    assert_eq!(code(&out), 0);
    let out = vdtool(&["equiv", "--forms", s(&forms)]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["status"], "reject");
}

#[test]
fn factor_lists_linear_factors() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "p.txt", "x1^2 - x2^2");
    let out = vdtool(&["factor", "--poly", s(&p)]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["factors"], serde_json::json!(["x1 + x2", "x1 - x2"]));
    assert_eq!(v["constant"], "1");
}

#[test]
fn pit_gadget_and_test() {
    let dir = TempDir::new().unwrap();
    let zero = write(&dir, "z.txt", "x1*x2 - x2*x1");
    let nonzero = write(&dir, "n.txt", "x1^2 - x2^2");

    let out = vdtool(&["pit-gadget", "--poly", s(&zero), "--n", "2"]);
    assert_eq!(json(&out)["gadget"], "x1 - x2");
    assert_eq!(json(&out)["input_is_zero"], true);

    let out = vdtool(&["pit-test", "--poly", s(&zero), "--range", "200"]);
    assert_eq!(code(&out), 0);
    let out = vdtool(&["pit-test", "--poly", s(&nonzero), "--range", "200"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["status"], "nonzero");
    let out = vdtool(&["pit-test", "--poly", s(&nonzero), "--range", "200", "--via-gadget", "2"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn symmetry_commands() {
    let dir = TempDir::new().unwrap();
    let swap = write(&dir, "swap.txt", "0 1 0\n1 0 0\n0 0 1\n");
    let cycle = write(&dir, "cycle.txt", "0 1 0\n0 0 1\n1 0 0\n");

    assert_eq!(code(&vdtool(&["sym", "check", "--matrix", s(&swap), "--n", "3"])), 1);
    assert_eq!(code(&vdtool(&["sym", "check", "--matrix", s(&cycle), "--n", "3"])), 0);

    let out = vdtool(&["sym", "decompose", "--matrix", s(&cycle)]);
    let v = json(&out);
    assert_eq!(v["member"], true);
    assert_eq!(v["parity"], "even");

    let out = vdtool(&["--seed", "3", "sym", "sample", "--n", "4"]);
    let sampled = write(&dir, "sampled.txt", json(&out)["text"].as_str().unwrap());
    assert_eq!(code(&vdtool(&["sym", "check", "--matrix", s(&sampled), "--n", "4"])), 0);
}

#[test]
fn lie_commands() {
    let dir = TempDir::new().unwrap();
    // v⊗1 with sum(v) = 0 lies in the algebra.
    let a = write(&dir, "a.txt", "1 1\n-1 -1\n");
    let b = write(&dir, "b.txt", "2 2\n0 0\n");
    let out = vdtool(&["lie", "check", "--matrix", s(&a), "--n", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["structural"], true);

    let out = vdtool(&["lie", "bracket", "--a", s(&a), "--b", s(&b)]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["bracket"].as_array().unwrap().len(), 2);
}

#[test]
fn decompose_commands() {
    let dir = TempDir::new().unwrap();
    let out = vdtool(&["decompose", "univariate", "--coeffs", "1,-2,0,5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["terms"], 4);
    assert_eq!(json(&out)["verified"], true);

    let out = vdtool(&["decompose", "powsym", "--n", "3", "--d", "3"]);
    assert_eq!(json(&out)["verified"], true);

    let out = vdtool(&["decompose", "fischer", "--d", "3"]);
    assert_eq!(json(&out)["verified"], true);

    let p = write(&dir, "p.txt", "x1*x2");
    let out = vdtool(&["decompose", "aff", "--poly", s(&p), "--explain"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["class"], "aff");
    assert_eq!(v["homo_obstruction_degree"], 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("C(m,2)"));
}

#[test]
fn measure_commands_json_and_csv() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.txt", "x1*x2*x3 + x1*x2");
    let g = write(&dir, "g.txt", "x1^2 - x2^2");

    let out = vdtool(&["red", "--poly", s(&f), "--subset", "1,2"]);
    assert_eq!(json(&out)["value"], 4);

    let out = vdtool(&["red-subadd", "--f", s(&f), "--g", s(&g), "--subset", "1,2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["pass"], true);

    let out = vdtool(&["pderiv-dim", "--poly", s(&f), "--order", "1"]);
    assert_eq!(json(&out)["value"], 3);

    let out = vdtool(&["--output", "csv", "fanin-bound", "--k", "10"]);
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "n,k,measure,value,bound,pass\n0,10,fanin_lower_bound,9,1023,true\n"
    );

    let out = vdtool(&["--field", "prime:101", "red", "--poly", s(&f), "--subset", "3"]);
    assert_eq!(json(&out)["field"], "prime:101");
}

#[test]
fn generators() {
    let out = vdtool(&["gen", "sym", "--n", "3", "--k", "2"]);
    assert_eq!(json(&out)["polynomial"], "x1*x2 + x1*x3 + x2*x3");
    let out = vdtool(&["gen", "powsym", "--n", "2", "--d", "3"]);
    assert_eq!(json(&out)["polynomial"], "x1^3 + x2^3");
}

#[test]
fn errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "f.txt", "x1 + ");
    let ok = write(&dir, "ok.txt", "x1");
    for args in [
        vec!["red", "--poly", "/nonexistent/p.txt", "--subset", "1"],
        vec!["red", "--poly", s(&ok), "--subset", "0"],
        vec!["factor", "--poly", s(&f)],
        vec!["--field", "prime:8", "red", "--poly", s(&ok), "--subset", "1"],
        vec!["--field", "prime:7", "factor", "--poly", s(&ok)],
    ] {
        let out = vdtool(&args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("error"), "{args:?}");
    }
}

#[test]
fn seed_makes_runs_reproducible() {
    let a = vdtool(&["--seed", "11", "sym", "sample", "--n", "5"]);
    let b = vdtool(&["--seed", "11", "sym", "sample", "--n", "5"]);
    assert_eq!(a.stdout, b.stdout);
}
