use std::path::PathBuf;

use cubic_moduli_cli::{run, EXIT_CHECK_FAILED, EXIT_IO, EXIT_OK, EXIT_USAGE};

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cubic-moduli").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name).display().to_string()
}

#[test]
fn verify_twisted_cubic() {
    let (code, out, _) = cli(&["verify", "--input", &fixture("FIX-TC.json")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "pass: exact, stable, non-planar, Hilbert 3m+1\n");
}

#[test]
fn tangent_of_nodal_fixture() {
    let (code, out, _) = cli(&["tangent", "--input", "FIX-PN"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("moduli tangent dimension = 14 (stratum planar, singular)"), "{out}");
    let (_, json, _) = cli(&["tangent", "--input", "FIX-PN", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["dim_moduli"], 14);
    assert_eq!(v["dim_stab"], 2);
}

#[test]
fn classify_and_normal_form() {
    let (_, out, _) = cli(&["classify", "--input", "FIX-PS"]);
    assert!(out.starts_with("stratum: planar, non-singular\n"), "{out}");
    let (code, json, _) = cli(&["normal-form", "--input", "FIX-TC", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["stratum"], "NonPlanar");
    assert_eq!(v["normal_form"]["A"][0], serde_json::json!(["0", "1"]));
}

#[test]
fn fitting_minors() {
    let (_, out, _) = cli(&["fitting", "--input", "FIX-PN"]);
    assert_eq!(out.lines().count(), 6);
    assert!(out.contains("rows 0,1: x3^2"), "{out}");
}

#[test]
fn chow_betti_and_ring() {
    let (code, out, _) = cli(&["chow", "betti", "--space", "M"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.trim_end().ends_with("euler 154"), "{out}");
    let (_, md, _) = cli(&["chow", "betti", "--space", "M0capM1", "--format", "md"]);
    assert!(md.contains("| b_i(M0capM1) | 1 | 3 | 6 | 9 | 11 | 12 | 12 | 11 | 9 | 6 | 3 | 1 | 84 |"), "{md}");
    let (_, json, _) = cli(&["chow", "ring", "--space", "M1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["euler"], 108);
    assert!(v["relation"].as_str().unwrap().starts_with("u^9 - 3*t*u^8 + 10*s*u^8"));
    assert_eq!(v["matches_printed"], false);
}

#[test]
fn deform_and_net_defaults() {
    let (code, out, _) = cli(&["deform"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("t = 0: exact, planar, singular"));
    let (code, out, _) = cli(&["net", "--input", &fixture("net-N1.json")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("dim F_Q = 12, dim T'_Q = 5, intersection 0, dim T_Q N = 12"), "{out}");
}

#[test]
fn deform_rejects_zero_data() {
    let dir = std::env::temp_dir().join(format!("cubic-moduli-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("zero.json");
    std::fs::write(&path, r#"{"w":"x3","l1":"x1","l2":"x2","a1":"0","b1":"0","a2":"0","b2":"0"}"#).unwrap();
    let (code, out, _) = cli(&["deform", "--input", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_CHECK_FAILED, "{out}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(cli(&["chow", "betti", "--space", "X"]).0, EXIT_USAGE);
    assert_eq!(cli(&["verify", "--input", "/nonexistent/pair.json"]).0, EXIT_IO);
    let (code, _, err) = cli(&["chow", "ring", "--space", "M"]);
    assert_eq!(code, EXIT_CHECK_FAILED);
    assert!(err.contains("no ring presentation"));
}

#[test]
fn malformed_and_unstable_inputs() {
    let dir = std::env::temp_dir().join(format!("cubic-moduli-cli-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let garbage = dir.join("garbage.json");
    std::fs::write(&garbage, "{ not json").unwrap();
    assert_eq!(cli(&["verify", "--input", garbage.to_str().unwrap()]).0, EXIT_IO);
    let inexact = dir.join("inexact.json");
    std::fs::write(
        &inexact,
        r#"{"B": [["0", "x3", "-x1", "x0"], ["0", "x3", "-x2", "x1"]],
            "A": [["0", "1"], ["x0*x2 - x1^2", "0"], ["x0*x3 - x1*x2", "0"], ["x1*x3 - x2^2", "0"]]}"#,
    )
    .unwrap();
    let (code, _, err) = cli(&["verify", "--input", inexact.to_str().unwrap()]);
    assert_eq!(code, EXIT_CHECK_FAILED);
    assert!(!err.is_empty());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reproduce_is_deterministic_and_reports_failures() {
    let args = ["reproduce", "--format", "json", "--samples", "2"];
    let (code, first, _) = cli(&args);
    let (_, second, _) = cli(&args);
    assert_eq!(first, second);
    assert_eq!(code, EXIT_CHECK_FAILED);
    let reports: Vec<serde_json::Value> = serde_json::from_str(&first).unwrap();
    let failed: Vec<&str> =
        reports.iter().filter(|r| r["status"] == "fail").map(|r| r["check"].as_str().unwrap()).collect();
    assert_eq!(failed, ["chow: relation of A*(M1)"]);
    assert!(reports.iter().all(|r| r.get("elapsed_ms").is_none()));
}

#[test]
fn reproduce_with_corrupted_fixture() {
    let dir = std::env::temp_dir().join(format!("cubic-moduli-cli-fix-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(
        dir.join("FIX-PN.json"),
        r#"{"B": [["-x0*x2", "-x1", "x3", "0"], ["-x1^2", "-x2", "0", "x3"]],
            "A": [["x3", "0"], ["0", "x3"], ["x0*x2", "x1"], ["x1^2", "x2"]]}"#,
    )
    .unwrap();
    let (code, json, _) =
        cli(&["reproduce", "--format", "json", "--samples", "0", "--fixtures", dir.to_str().unwrap()]);
    assert_eq!(code, EXIT_CHECK_FAILED);
    let reports: Vec<serde_json::Value> = serde_json::from_str(&json).unwrap();
    let fitting = reports.iter().find(|r| r["check"] == "FIX-PN: Fitting ideal").unwrap();
    assert_eq!(fitting["status"], "fail");
    assert!(fitting["actual"].as_str().unwrap().starts_with("degree 3:"));
    std::fs::remove_dir_all(&dir).unwrap();
}
