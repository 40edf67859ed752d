use std::path::{Path, PathBuf};
use std::process::Command;

use lierinehart::constructions::{builtin, BUILTIN_NAMES};
use lierinehart_cli::format::{decode_algebra, encode_algebra, parse_document, read_document, to_text, FormatError};
use serde_json::{json, Value};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn fx(name: &str) -> String {
    fixture(name).display().to_string()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run_with(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lierinehart"));
    cmd.args(args).env_remove("LIERINEHART_MAX_DEGREE");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    run_with(args, &[])
}

fn json_of(args: &[&str]) -> Value {
    let r = run(args);
    assert_eq!(r.code, 0, "{args:?}: {}", r.stderr);
    serde_json::from_str(r.stdout.trim()).unwrap()
}

#[test]
fn builtins_round_trip_through_the_file_format() {
    for name in BUILTIN_NAMES {
        let l = builtin(name).unwrap();
        let text = to_text(&encode_algebra(&l));
        let doc = parse_document(Path::new(name), &text).unwrap();
        assert_eq!(decode_algebra(&doc).unwrap(), l, "{name}");
    }
}

#[test]
fn shipped_algebra_fixtures_match_builtins() {
    let dual = decode_algebra(&read_document(&fixture("dual_numbers.json")).unwrap()).unwrap();
    assert_eq!(dual.dim(), 2);
    assert!(dual.validate().is_valid());
    for name in ["dual_numbers", "sl2", "heisenberg", "sl2_v"] {
        let l = decode_algebra(&read_document(&fixture(&format!("{name}.json"))).unwrap()).unwrap();
        assert_eq!(l, builtin(name).unwrap(), "{name}");
    }
}

#[test]
fn malformed_files_are_usage_errors() {
    let err = decode_algebra(&read_document(&fixture("bad_unit.json")).unwrap()).unwrap_err();
    assert!(
        matches!(&err, FormatError::Dimension { at, expected: 2, found: 3 } if at == "base.unit"),
        "{err}"
    );
    let err = decode_algebra(&read_document(&fixture("bad_scalar.json")).unwrap()).unwrap_err();
    assert!(
        matches!(&err, FormatError::Scalar { value, .. } if value == "x"),
        "{err}"
    );

    for file in ["bad_unit.json", "bad_scalar.json"] {
        let r = run(&["check", &fx(file)]);
        assert_eq!(r.code, 2, "{file}");
        assert!(r.stderr.contains("error:"), "{file}");
    }
    let err = parse_document(Path::new("inline"), "{\n  \"base\": [1,\n}").unwrap_err();
    assert!(matches!(err, FormatError::Syntax { line: 3, .. }), "{err}");
}

#[test]
fn check_reports_validity_with_exit_codes() {
    let r = run(&["check", "--builtin", "sl2"]);
    assert_eq!((r.code, r.stdout.trim()), (0, "valid"));
    let r = run(&["check", &fx("broken_sl2.json"), "--json"]);
    assert_eq!(r.code, 1);
    let v: Value = serde_json::from_str(r.stdout.trim()).unwrap();
    assert_eq!(v["valid"], json!(false));
    assert_eq!(v["violations"][0]["axiom"], json!("lr.antisymmetry"));
    let v = json_of(&["check", &fx("sl2_modules.json"), "--json"]);
    assert_eq!(v["modules"], json!({ "standard": "valid", "trivial": "valid" }));
    assert_eq!(run(&["check", "--builtin", "nope"]).code, 2);
    assert_eq!(run(&["check"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
}

#[test]
fn uce_and_cohomology_goldens() {
    assert_eq!(
        json_of(&["uce", "--builtin", "sl2", "--json"]),
        json!({ "quotient_dim": 3, "kernel_dim": 0, "perfect": true })
    );
    assert_eq!(
        json_of(&[
            "cohomology",
            "--builtin",
            "sl2",
            "--trivial-module",
            "1",
            "--degree",
            "2",
            "--json"
        ]),
        json!({ "dim": 0 })
    );
    assert_eq!(
        json_of(&["uce", "--builtin", "sl2", "--full", "--json"]),
        json!({ "quotient_dim": 3, "kernel_dim": 0, "perfect": true, "central": true, "image_is_commutator": true })
    );
    assert_eq!(
        json_of(&["cohomology", "--builtin", "heisenberg", "--json"]),
        json!({ "dims": [1, 2, 2, 1] })
    );
    assert_eq!(
        json_of(&["homology", &fx("sl2.json"), "--json"]),
        json!({ "dims": [1, 0, 0, 1] })
    );
    let standard = format!("{}#standard", fx("sl2_modules.json"));
    assert_eq!(
        json_of(&["cohomology", &fx("sl2_modules.json"), "--module", &standard, "--json"]),
        json!({ "dims": [0, 0, 0, 0] })
    );
}

#[test]
fn structure_queries() {
    assert_eq!(
        json_of(&["center", "--builtin", "heisenberg", "--json"]),
        json!({ "dim": 1, "basis": [[0, 0, 1]] })
    );
    let v = json_of(&["commutator", "--builtin", "sl2", "--json"]);
    assert_eq!((v["dim"].clone(), v["perfect"].clone()), (json!(3), json!(true)));
    let v = json_of(&["compare-ce", "--lie", "heisenberg", "--base", "dual_numbers", "--json"]);
    assert_eq!(v["agree"], json!(true));
    assert_eq!(v["ce"], json!([1, 2, 2, 1]));
}

#[test]
fn degree_cap_comes_from_the_environment() {
    let args = ["cohomology", "--builtin", "sl2", "--degree", "4", "--json"];
    assert_eq!(run(&args).code, 2);
    let r = run_with(&args, &[("LIERINEHART_MAX_DEGREE", "4")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(
        serde_json::from_str::<Value>(r.stdout.trim()).unwrap(),
        json!({ "dim": 0 })
    );
}

#[test]
fn tensor_products() {
    assert_eq!(
        json_of(&["tensor", "builtin:sl2", "--hat", "--json"]),
        json!({ "dim": 3, "mu_rank": 3, "nu_rank": 3, "central": true, "uce_iso": true })
    );
    let explicit = json_of(&[
        "tensor",
        &fx("heisenberg.json"),
        &fx("heisenberg.json"),
        "--actions",
        &fx("heisenberg_actions.json"),
        "--json",
    ]);
    assert_eq!(explicit, json_of(&["tensor", "builtin:heisenberg", "--json"]));
    assert_eq!(explicit["dim"], json!(6));
    assert_eq!(run(&["tensor", "builtin:heisenberg", "--hat"]).code, 1);
    assert_eq!(run(&["tensor", "builtin:sl2", "builtin:heisenberg"]).code, 2);
}

#[test]
fn lifting_commands() {
    let chevalley = format!("{}#chevalley", fx("sl2_symmetries.json"));
    let v = json_of(&["lift-aut", "universal", &chevalley, "--json"]);
    assert_eq!(v["lifted"], json!(true));
    let v = json_of(&["lift-der", "universal", &fx("sl2_symmetries.json"), "--json"]);
    assert_eq!(v["lifted"], json!(true));

    let covering = format!("{}#covering", fx("sl2_2v_covering.json"));
    let swap = format!("{}#swap", fx("sl2_2v_covering.json"));
    let v = json_of(&["lift-aut", &covering, &swap, "--json"]);
    assert_eq!(v["lifted"], json!(false));
    assert_ne!(v["witness"], v["image"]);
    let v = json_of(&["lift-der", &covering, &fx("sl2_2v_mix.json"), "--json"]);
    assert_eq!(v["lifted"], json!(false));
}

#[test]
fn pullback_and_split_sequences() {
    let maps = fx("sl2_times_q_maps.json");
    assert_eq!(
        json_of(&[
            "pullback",
            &format!("{maps}#projection"),
            &format!("{maps}#identity"),
            "--json"
        ]),
        json!({ "dim": 4, "kernel_dim": 1, "central": true })
    );
    let split = fx("sl2xsl2_split.json");
    let v = json_of(&[
        "split-uce",
        &format!("{split}#f"),
        &format!("{split}#g"),
        &format!("{split}#s"),
        "--json",
    ]);
    assert_eq!(v["passed"], json!(true));
    assert_eq!(v["dims"], json!([3, 6, 3]));
    assert_eq!(run(&["split-uce", &split, &split, &split]).code, 2);
}

#[test]
fn export_writes_a_parseable_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sl2xsl2.json");
    let r = run(&["export", "--builtin", "sl2xsl2", "-o", path.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let l = decode_algebra(&read_document(&path).unwrap()).unwrap();
    assert_eq!(l, builtin("sl2xsl2").unwrap());
    assert_eq!(run(&["check", path.to_str().unwrap()]).stdout.trim(), "valid");
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "tensor",
        "builtin:transformation(sl2,dual_numbers,0)",
        "--hat",
        "--json",
    ];
    let first = run(&args).stdout;
    assert_eq!(first, run(&args).stdout);
    let v: Value = serde_json::from_str(first.trim()).unwrap();
    assert_eq!(v["uce_iso"], json!(true));
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}
