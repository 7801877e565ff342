//! The `pgauto` front end: subcommands, output formats and exit codes.

use std::process::Command;

use pgauto::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("pgauto").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn catalog_list_names_every_entry() {
    let (code, out, _) = call(&["catalog", "list"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.starts_with("heis27 ")));
    assert_eq!(out.lines().count(), pgauto::catalog::bundled_catalog().len());
}

#[test]
fn analyze_profile_as_json() {
    let (code, out, _) = call(&["--json", "analyze", "m27"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["profile"]["dG"], 2);
    assert_eq!(v["profile"]["is_powerful"], true);
    assert!(v["checks"].as_object().unwrap().is_empty());
}

#[test]
fn analyze_reads_group_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c9.json");
    std::fs::write(&path, r#"{"format":"pc","p":3,"rank":2,"powers":{"1":[0,1]}}"#).unwrap();
    let (code, out, _) = call(&["analyze", path.to_str().unwrap(), "--checks", "all"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("c9: order 3^2, class 1"));
    assert!(out.contains("berkovich: skipped"));
}

#[test]
fn derivations_and_modules() {
    let (code, out, _) = call(&["--json", "derivations", "heis27", "--module", "center"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["order"], 9);
    assert_eq!(v["aut_correspondence"]["aut_order"], 9);

    // Element 1 generates a non-normal subgroup of the Heisenberg group.
    let (code, _, err) = call(&["derivations", "heis27", "--module", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("not normal"));
    let (code, _, _) = call(&["derivations", "heis27", "--module", "1,x"]);
    assert_eq!(code, 2);
}

#[test]
fn fullness_per_maximal() {
    let (code, out, _) = call(&["--json", "fullness", "heis27", "--wrt", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["maximals"].as_array().unwrap().len(), 1);
    assert_eq!(v["maximals"][0]["full"], true);
    let (code, _, _) = call(&["fullness", "heis27", "--wrt", "9"]);
    assert_eq!(code, 2);
}

#[test]
fn exactness_refuses_out_of_scope_modules() {
    let (code, out, _) = call(&["exactness", "heis27", "--module", "center"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("refused:"));
    let (code, out, _) = call(&["exactness", "m27", "--module", "omega1-center"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("refused:"));
}

#[test]
fn berkovich_witness_and_refusal() {
    let (code, out, _) = call(&["--json", "berkovich", "cc2_729_main"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["branch"], "coclass2_main");
    assert_eq!(v["witness"]["order"], 3);
    assert_eq!(v["counts"]["derG_H1"], 81);
    assert_eq!(v["counts"]["inner_part"], 27);

    let (code, out, _) = call(&["berkovich", "heis27"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "refused: coclass 1");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&["analyze", "no-such-group"]).0, 2);
    assert_eq!(call(&["analyze", "heis27", "--checks", "nonsense"]).0, 2);
    assert_eq!(call(&["--max-order", "81", "analyze", "cc2_243_pow"]).0, 2);
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn binary_batch_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_pgauto"))
        .args(["--jobs", "2", "batch", "--all", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    // cc2_729_wide meets every hypothesis of the order-p argument but has
    // |H1/Z1| = p^2, so its count findings make the batch exit 1.
    assert_eq!(status.status.code(), Some(1), "{}", String::from_utf8_lossy(&status.stdout));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    let summary = summary.as_object().unwrap();
    assert_eq!(summary.len(), pgauto::catalog::bundled_catalog().len());
    let failing: Vec<_> = summary.iter().filter(|(_, v)| *v != "pass").map(|(k, _)| k.as_str()).collect();
    assert_eq!(failing, ["cc2_729_wide"]);
    let heis: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("heis27.json")).unwrap()).unwrap();
    for key in ["version", "group", "profile", "checks", "findings", "timings"] {
        assert!(heis.get(key).is_some(), "{key}");
    }
    assert_eq!(heis["checks"]["berkovich"]["verdict"], "skipped");
}
