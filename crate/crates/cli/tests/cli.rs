use std::fs;
use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dgroups"))
}

fn fixture(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dgroups-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path
}

const COMMUTING: &str = "letters: a b c\nrel: ab = ba\nrel: ac = ca\nrel: bc = cb\n";
const ABSORBING: &str =
    "letters: a b c p\nrel: ap = a\nrel: pc = c\nrel: bp = b\nrel: pb = b\n";

#[test]
fn explore_reports_the_hexagon() {
    let p = fixture("commuting.txt", COMMUTING);
    let out = bin()
        .arg("explore")
        .arg("--presentation")
        .arg(&p)
        .args(["--word", "abc", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["component"]["vertex_count"], 6);
    assert_eq!(v["component"]["edge_count"], 6);
    assert_eq!(v["component"]["complete"], true);
    assert_eq!(v["first_betti_number"], 1);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let p = fixture("commuting.txt", COMMUTING);
    for verb in ["explore", "pi1", "pathology", "freeness"] {
        let run = || {
            bin()
                .arg(verb)
                .arg("--presentation")
                .arg(&p)
                .args(["--word", "abc", "--json"])
                .output()
                .unwrap()
        };
        let first = run();
        let second = run();
        assert!(first.status.success(), "{verb} failed");
        assert_eq!(first.stdout, second.stdout, "{verb} output drifted");
    }
}

#[test]
fn witness_survives_the_file_round_trip() {
    let p = fixture("commuting.txt", COMMUTING);
    let report_path = fixture("report.json", "");
    let status = bin()
        .arg("freeness")
        .arg("--presentation")
        .arg(&p)
        .args(["--word", "aabbcc", "--json", "--out"])
        .arg(&report_path)
        .status()
        .unwrap();
    assert!(status.success());
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report["verdict"], "not-free");
    assert!(report["dimension_lower_bound"].as_u64().unwrap() >= 2);
    let witness_path = fixture("witness.json", &report["z2_witness"].to_string());
    let out = bin()
        .arg("verify-witness")
        .arg("--presentation")
        .arg(&p)
        .arg("--witness")
        .arg(&witness_path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("witness verified"), "got: {stdout}");

    // a tampered witness is rejected
    let mut forged = report["z2_witness"].clone();
    forged["left_word"] = serde_json::json!("ab");
    let forged_path = fixture("forged.json", &forged.to_string());
    let out = bin()
        .arg("verify-witness")
        .arg("--presentation")
        .arg(&p)
        .arg("--witness")
        .arg(&forged_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn truncated_class_stays_unknown_with_evidence() {
    let p = fixture("absorbing.txt", ABSORBING);
    let out = bin()
        .arg("freeness")
        .arg("--presentation")
        .arg(&p)
        .args(["--word", "abc", "--max-word-length", "13", "--json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "unknown");
    assert_eq!(v["dimension_lower_bound"], 1);
    assert_eq!(v["class_complete"], false);
    assert!(v["dimension_one"].is_object());
    assert!(v["z2_witness"].is_null());
    let notes = v["notes"].as_array().unwrap();
    assert!(notes.iter().any(|n| n.as_str().unwrap().contains("truncated")));
}

#[test]
fn usage_and_data_errors_exit_one() {
    let p = fixture("commuting.txt", COMMUTING);
    // undeclared letter in the word
    let out = bin()
        .arg("explore")
        .arg("--presentation")
        .arg(&p)
        .args(["--word", "xyz"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(!String::from_utf8(out.stderr).unwrap().is_empty());
    // missing required flag
    let out = bin()
        .arg("explore")
        .arg("--presentation")
        .arg(&p)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    // unreadable presentation path
    let out = bin()
        .arg("explore")
        .args(["--presentation", "/nonexistent/nope.txt", "--word", "abc"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    // malformed presentation file
    let bad = fixture("bad.txt", "rel: ab = ba\n");
    let out = bin()
        .arg("explore")
        .arg("--presentation")
        .arg(&bad)
        .args(["--word", "abc"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn help_and_version_exit_zero() {
    assert!(bin().arg("--help").status().unwrap().success());
    assert!(bin().arg("--version").status().unwrap().success());
    assert!(bin().args(["freeness", "--help"]).status().unwrap().success());
}
