use std::process::Command;
use std::time::{Duration, Instant};

use cjones_cli::{
    check, pretzel, read_csv, resolve_knot, run, BatchJob, CheckKind, CliError, BUNDLED_TABLE,
};
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cjones"))
}

fn check_named<'a>(knot: &'a Value, name: &str) -> &'a Value {
    knot["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["check"] == name)
        .unwrap()
}

#[test]
fn bundled_csv_is_the_library_table() {
    assert_eq!(BUNDLED_TABLE, cjones::table::batch_csv());
    assert_eq!(read_csv(BUNDLED_TABLE).unwrap().len(), 10);
}

#[test]
fn figure_eight_job() {
    let (name, d) = resolve_knot("4_1").unwrap();
    let report = run(&BatchJob::new(vec![(name, d)], 6)).unwrap();
    assert_eq!(report["schema"], 1);
    let k = &report["knots"][0];
    assert_eq!(k["model"]["js"], serde_json::json!(["4"]));
    assert_eq!(k["model"]["js_star"], serde_json::json!(["-4"]));
    assert_eq!(check_named(k, "eq1")["witness"], "4");
    assert_eq!(check_named(k, "match")["witness"], "4_1");
    assert_eq!(check_named(k, "howie")["verdict"], "holds");
    assert_eq!(check_named(k, "gordon")["verdict"], "holds");
}

#[test]
fn unknot_job() {
    let doc = check("U", 5, None).unwrap();
    let k = &doc["knot"];
    for row in k["degrees"].as_array().unwrap() {
        let n = row["n"].as_i64().unwrap();
        let half = if (n - 1) % 2 == 0 {
            ((n - 1) / 2).to_string()
        } else {
            format!("{}/2", n - 1)
        };
        assert_eq!(row["d_plus"], half.as_str());
    }
    assert_eq!(check_named(k, "eq1")["witness"], "0");
    assert_eq!(check_named(k, "match")["witness"], "unknot");
    assert_eq!(check_named(k, "howie")["verdict"], "not-applicable");
}

#[test]
fn pretzel_closed_form_eq2() {
    let doc = pretzel(-1, 3, 3, 6, None).unwrap();
    assert_eq!(doc["closed_form_eq2"]["witness"], "6");
    assert_eq!(doc["adequacy"]["adequate"], false);
    // the engine sees the diagram's actual knot, which the closed form does not describe
    assert_eq!(doc["engine_agrees_with_closed_form"], false);
    let err = pretzel(-2, 3, 7, 4, None).unwrap();
    assert!(err["closed_form"].is_null());
    assert!(err["closed_form_error"].as_str().unwrap().contains("-2r"));
}

#[test]
fn cold_and_warm_cache_reports_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.json");
    let inputs = read_csv(BUNDLED_TABLE).unwrap()[..4].to_vec();
    let mut job = BatchJob::new(inputs, 5);
    let plain = serde_json::to_string(&run(&job).unwrap()).unwrap();
    job.cache_path = Some(cache.clone());
    let cold = serde_json::to_string(&run(&job).unwrap()).unwrap();
    assert!(cache.exists());
    let warm = serde_json::to_string(&run(&job).unwrap()).unwrap();
    assert_eq!(plain, cold);
    assert_eq!(cold, warm);
}

#[test]
fn bundled_batch_within_budget() {
    let t = Instant::now();
    let report = run(&BatchJob::new(read_csv(BUNDLED_TABLE).unwrap(), 8)).unwrap();
    assert!(t.elapsed() < Duration::from_secs(120), "{:?}", t.elapsed());
    let names: Vec<_> = report["knots"]
        .as_array()
        .unwrap()
        .iter()
        .map(|k| k["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        [
            "3_1",
            "4_1",
            "5_1",
            "5_2",
            "6_1",
            "6_2",
            "6_3",
            "7_1",
            "P(-1,3,3)",
            "P(-2,3,7)"
        ]
    );
    // every alternating table knot is recognized
    for k in &report["knots"].as_array().unwrap()[..8] {
        assert_eq!(check_named(k, "eq1")["verdict"], "holds", "{}", k["name"]);
    }
}

#[test]
fn check_subset_and_errors() {
    let mut job = BatchJob::new(vec![resolve_knot("3_1").unwrap()], 5);
    job.checks = [CheckKind::Gordon].into_iter().collect();
    let report = run(&job).unwrap();
    assert_eq!(report["knots"][0]["checks"].as_array().unwrap().len(), 1);
    assert!(matches!(resolve_knot("X[1,2,3]"), Err(CliError::Parse(_))));
    assert!(matches!(read_csv("a,b,c\n"), Err(CliError::Parse(_))));
    assert!(matches!(
        run(&BatchJob::new(vec![resolve_knot("3_1").unwrap()], 11)),
        Err(CliError::Resource(_))
    ));
}

#[test]
fn binary_exit_codes() {
    let ok = bin()
        .args(["--json", "compute", "4_1", "--n", "2"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["degrees"]["d_plus"], "5/2");

    let parse = bin()
        .args(["compute", "X[1,2,3,4]", "--n", "2"])
        .output()
        .unwrap();
    assert_eq!(parse.status.code(), Some(2));
    let cap = bin()
        .args(["--max-n", "11", "degrees", "3_1"])
        .output()
        .unwrap();
    assert_eq!(cap.status.code(), Some(3));
}

#[test]
fn binary_text_rendering() {
    let out = bin()
        .args([
            "--max-n",
            "4",
            "degrees",
            "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.trim_start().starts_with("n ")
        && l.contains("d_minus")
        && l.contains("d_plus")));
    let surf = bin()
        .args(["--json", "surface", "4_1", "--state", "AAAA"])
        .output()
        .unwrap();
    let doc: Value = serde_json::from_slice(&surf.stdout).unwrap();
    assert_eq!(doc["surface"]["euler_char"], -1);
    let pz = bin()
        .args(["--json", "--max-n", "5", "pretzel", "-1", "3", "3"])
        .output()
        .unwrap();
    assert!(
        pz.status.success(),
        "{}",
        String::from_utf8_lossy(&pz.stderr)
    );
}
