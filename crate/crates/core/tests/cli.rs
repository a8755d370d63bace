use std::fs;
use std::path::Path;
use std::process::Command;

use itder::algebra::{Field, Gf2};
use itder::cli::{run, EXIT_BAD_INPUT, EXIT_DIGEST, EXIT_OK, EXIT_SUITE_FAILED};
use itder::construct::{construct, ChoiceSpec};
use itder::hd::HdData;
use itder::io::{hd_from_json, hd_to_json, parse_elem, HdFile};
use itder::verify::{run_suite, Suite, VerifyOptions};
use tempfile::TempDir;

fn itder(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let argv = std::iter::once("itder").chain(args.iter().copied());
    let code = run(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn write(dir: &Path, name: &str, content: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, content).unwrap();
    p.to_str().unwrap().to_string()
}

fn sample_file(dir: &Path, order: &str) -> String {
    let choices = write(dir, "choices.json", r#"["s", "0", "0", "0", "0"]"#);
    let out = dir.join(format!("hd{order}.json"));
    let (code, _) = itder(&[
        "construct",
        "-n",
        order,
        "--choices",
        &choices,
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    out.to_str().unwrap().to_string()
}

#[test]
fn construct_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let a = fs::read(sample_file(dir.path(), "8")).unwrap();
    let choices = dir.path().join("choices.json");
    let (code, stdout) = itder(&[
        "construct",
        "--order",
        "8",
        "--choices",
        choices.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(stdout.as_bytes(), &a[..]);
}

#[test]
fn round_trip_verifies_like_the_original() {
    let dir = TempDir::new().unwrap();
    let path = sample_file(dir.path(), "8");
    let loaded = hd_from_json(&fs::read_to_string(&path).unwrap()).unwrap();
    let original = construct(8, &ChoiceSpec::<Gf2>::sample()).unwrap();
    assert_eq!(loaded.xi_table(), original.xi_table());
    assert_eq!(loaded.zc_table(), original.zc_table());
    let opts = VerifyOptions::default();
    for suite in [Suite::Iteration, Suite::Rho, Suite::Thm51] {
        let a = run_suite(&loaded, suite, &opts).unwrap();
        let b = run_suite(&original, suite, &opts).unwrap();
        let ids = |r: &itder::verify::Report| {
            r.checks
                .iter()
                .map(|c| (c.id.clone(), c.status))
                .collect::<Vec<_>>()
        };
        assert_eq!(ids(&a), ids(&b));
    }
    let (code, text) = itder(&["verify", "--in", &path, "--suite", "iteration,rho,thm51"]);
    assert_eq!(code, EXIT_OK, "{text}");
    assert!(text.ends_with("overall: PASS\n"));
}

#[test]
fn json_report_format() {
    let dir = TempDir::new().unwrap();
    let path = sample_file(dir.path(), "4");
    let (code, text) = itder(&["verify", "--in", &path, "--suite", "rho", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v[0]["suite"], "rho");
    assert!(v[0]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] == "pass"));
}

#[test]
fn tampered_table_with_fresh_digest_fails_verification() {
    let dir = TempDir::new().unwrap();
    let hd = construct(4, &ChoiceSpec::<Gf2>::sample()).unwrap();
    let mut xi = hd.xi_table().to_vec();
    // drop the t term of xi_2
    xi[1] = parse_elem("t^4*x^2+t^10").unwrap();
    let bad = HdData::from_table_unchecked(xi, hd.choices().to_vec()).unwrap();
    let path = write(dir.path(), "bad.json", &hd_to_json(&bad));
    let (code, text) = itder(&[
        "verify",
        "--in",
        &path,
        "--suite",
        "iteration",
        "--format",
        "json",
    ]);
    assert_eq!(code, EXIT_SUITE_FAILED);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let failed: Vec<_> = v[0]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .collect();
    assert!(!failed.is_empty());
    let first = &failed[0]["counterexample"];
    assert_eq!((first["i"].as_u64(), first["j"].as_u64()), (Some(1), Some(2)));
}

#[test]
fn hand_edit_without_digest_is_rejected() {
    let dir = TempDir::new().unwrap();
    let path = sample_file(dir.path(), "4");
    let text = fs::read_to_string(&path).unwrap();
    let edited = text.replacen("t^4*x^2+t^10+t", "t^4*x^2+t^10", 1);
    assert_ne!(text, edited);
    let path = write(dir.path(), "edited.json", &edited);
    assert_eq!(itder(&["verify", "--in", &path]).0, EXIT_DIGEST);
}

#[test]
fn bad_inputs_exit_2() {
    let dir = TempDir::new().unwrap();
    let choices = write(dir.path(), "c.json", r#"["s^"]"#);
    assert_eq!(
        itder(&["construct", "-n", "4", "--choices", &choices]).0,
        EXIT_BAD_INPUT
    );
    let choices = write(dir.path(), "c2.json", r#"{"not": "an array"}"#);
    assert_eq!(
        itder(&["construct", "-n", "4", "--choices", &choices]).0,
        EXIT_BAD_INPUT
    );
    assert_eq!(itder(&["construct", "-n", "0"]).0, EXIT_BAD_INPUT);
    assert_eq!(
        itder(&["verify", "--in", "/nonexistent/file.json"]).0,
        EXIT_BAD_INPUT
    );
    let path = sample_file(dir.path(), "2");
    assert_eq!(
        itder(&["verify", "--in", &path, "--suite", "bogus"]).0,
        EXIT_BAD_INPUT
    );
    assert_eq!(
        itder(&["point", "add", "(1,1)", "(0,0)", "--gf", "2^2"]).0,
        EXIT_BAD_INPUT
    );
    assert_eq!(itder(&["point", "neg", "(0,0)", "--gf", "2^9"]).0, EXIT_BAD_INPUT);
    assert_eq!(itder(&["frobnicate"]).0, EXIT_BAD_INPUT);
}

#[test]
fn point_commands() {
    let (code, out) = itder(&["point", "sub", "(1,w)", "(1,w+1)", "--gf", "2^2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), "(w+1, w+1)");
    let (code, out) = itder(&["point", "mul", "3", "(1,w)", "--gf", "4", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim(), r#"{"x":"0","z":"0"}"#);
    let (code, _) = itder(&["point", "on-curve", "(0,1)", "--gf", "2^2"]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn negative_control_exit_1() {
    let dir = TempDir::new().unwrap();
    let hd =
        HdData::<Gf2>::from_table_unchecked(vec![itder::FieldElem::t(), itder::FieldElem::zero()], vec![])
            .unwrap();
    let path = write(dir.path(), "neg.json", &hd_to_json(&hd));
    let (code, text) = itder(&["verify", "--in", &path, "--suite", "iteration"]);
    assert_eq!(code, EXIT_SUITE_FAILED);
    assert!(text.ends_with("overall: FAIL\n"));
}

#[test]
fn config_file_supplies_defaults() {
    let dir = TempDir::new().unwrap();
    let choices = write(dir.path(), "choices.json", r#"["s"]"#);
    let out = dir.path().join("from_config.json");
    let config = write(
        dir.path(),
        "itder.toml",
        &format!(
            "order = 4\nchoices = {choices:?}\nout = {:?}\n",
            out.to_str().unwrap()
        ),
    );
    assert_eq!(itder(&["--config", &config, "construct"]).0, EXIT_OK);
    let hd = hd_from_json(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(hd.order(), 4);
    assert_eq!(hd.xi(1), &parse_elem("t^2").unwrap());
    let bad = write(dir.path(), "bad.toml", "colour = \"blue\"\n");
    assert_eq!(itder(&["--config", &bad, "construct"]).0, EXIT_BAD_INPUT);
}

#[test]
fn bench_telemetry_is_stable() {
    let columns = |csv: &str| -> Vec<String> {
        csv.lines()
            .map(|l| {
                let f: Vec<&str> = l.split(',').collect();
                format!("{},{}", f[0], f[2..].join(","))
            })
            .collect()
    };
    let (code, a) = itder(&["bench", "--orders", "4,8"]);
    assert_eq!(code, EXIT_OK);
    let (_, b) = itder(&["bench", "--orders", "4,8"]);
    assert!(a.starts_with("order,millis,"));
    assert_eq!(columns(&a), columns(&b));
    assert_eq!(a.lines().count(), 3);
}

#[test]
fn out_dir_override_via_binary() {
    let dir = TempDir::new().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_itder"))
        .args(["construct", "-n", "2", "--out", "nested/hd.json"])
        .env("ITDER_OUT_DIR", dir.path())
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(EXIT_OK));
    let written = fs::read_to_string(dir.path().join("nested/hd.json")).unwrap();
    let hd = HdFile::from_json(&written).unwrap();
    assert_eq!(hd.n, 2);
    assert!(hd.xi.iter().all(|e| e.a == "0" && e.b == "0"));

    let out = Command::new(env!("CARGO_BIN_EXE_itder"))
        .args(["verify", "--in", "/nonexistent.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_BAD_INPUT));
    assert!(!out.stderr.is_empty());
}
