//! End-to-end runs of the `gdof` binary.

use std::path::Path;
use std::process::{Command, Output};

use gdof_core::io::RegionDocument;
use gdof_core::rational::ratio;
use gdof_core::{delayed_region, perfect_csit_region, dof_region_delayed, Alpha, AntennaConfig, GdofPoint};
use serde_json::Value;

fn gdof(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gdof"))
        .args(args)
        .env_remove("GDOF_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn region_json_contains_weak_corner() {
    let o = gdof(&["region", "--config", "2,2,3,2", "--alpha", "2/5", "--csit", "delayed", "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let doc = RegionDocument::from_json(&stdout(&o)).unwrap();
    assert!(doc.vertices.contains(&GdofPoint::new(ratio(8, 5), ratio(2, 1))));
}

#[test]
fn emitted_regions_round_trip() {
    for c in ["2,2,3,2", "1,2,1,1", "2,4,3,3", "1,2,1,2"] {
        for a in ["0", "0.3", "1", "7/5", "2.5"] {
            for csit in ["delayed", "perfect", "dof", "tin"] {
                let o = gdof(&["region", "--config", c, "--alpha", a, "--csit", csit]);
                assert!(o.status.success(), "{}", stderr(&o));
                let doc = RegionDocument::from_json(&stdout(&o)).unwrap();
                let r = doc.region().unwrap();
                if csit == "delayed" {
                    let cfg: AntennaConfig = c.parse().unwrap();
                    let alpha: Alpha = a.parse().unwrap();
                    assert_eq!(r, delayed_region(&cfg, alpha));
                }
            }
        }
    }
}

#[test]
fn region_csv_lists_vertices() {
    let o = gdof(&["region", "--config", "1,2,1,1", "--alpha", "0.4", "--format", "csv"]);
    let s = stdout(&o);
    assert!(s.starts_with("d1,d2\n"));
    assert!(s.contains("4/5,1/1"));
}

#[test]
fn sum_series_agree_then_diverge() {
    let o = gdof(&["sum", "--config", "1,2,1,2", "--alpha-grid", "0:3:0.1", "--csit", "delayed,perfect"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = json(&o);
    let series = v["series"].as_array().unwrap();
    assert_eq!(series[0]["csit"], "delayed");
    assert_eq!(series[1]["csit"], "perfect");
    let (d, p) = (series[0]["points"].as_array().unwrap(), series[1]["points"].as_array().unwrap());
    let mut diverged = false;
    for (i, (x, y)) in d.iter().zip(p).enumerate() {
        if i <= 10 {
            assert_eq!(x["sum"], y["sum"], "at alpha {}", x["alpha"]);
        } else if x["sum"] != y["sum"] {
            diverged = true;
        }
    }
    assert!(diverged);
}

#[test]
fn verify_small_sweep_exits_zero() {
    let o = gdof(&["verify", "--max-antennas", "4", "--alpha-grid", "0:3:0.25"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 256 * 13);
    assert!(lines.iter().all(|l| l["status"] != "fail"));
    assert!(lines.iter().any(|l| l["status"] == "unverified"));
    assert!(lines.iter().any(|l| l["status"] == "pass"));
}

#[test]
fn verify_reports_non_canonical_as_unverified() {
    let o = gdof(&["verify", "--config", "3,1,2,1", "--config", "1,1,1,1", "--alpha-grid", "1/2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines[0]["status"], "unverified");
    assert_eq!(lines[1]["status"], "pass");
}

#[test]
fn compare_verdict_matches_region_relations() {
    for (c, a) in [("1,2,1,1", "0.4"), ("2,2,3,2", "0.6"), ("2,4,3,3", "1.4"), ("1,2,1,2", "0.6")] {
        let o = gdof(&["compare", "--config", c, "--alpha", a, "--csit", "delayed,perfect,dof"]);
        assert!(o.status.success(), "{}", stderr(&o));
        let v = json(&o);
        let cfg: AntennaConfig = c.parse().unwrap();
        let alpha: Alpha = a.parse().unwrap();
        let d = delayed_region(&cfg, alpha);
        let p = perfect_csit_region(&cfg, alpha).unwrap();
        let f = dof_region_delayed(&cfg).unwrap();
        let expect = |l: &gdof_core::Region2D, r: &gdof_core::Region2D| {
            if l.equals(r) {
                "equal"
            } else if l.subset(r) {
                "strict-subset"
            } else if r.subset(l) {
                "strict-superset"
            } else {
                "incomparable"
            }
        };
        let rel = v["relations"].as_array().unwrap();
        assert_eq!(rel[0]["relation"], expect(&d, &p), "{c} {a}");
        assert_eq!(rel[1]["relation"], expect(&d, &f), "{c} {a}");
        assert_eq!(rel[2]["relation"], expect(&p, &f), "{c} {a}");
    }
}

#[test]
fn compare_writes_overlay() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("o.svg");
    let o = gdof(&["compare", "--config", "1,2,1,1", "--alpha", "0.4", "--svg", svg.to_str().unwrap()]);
    assert!(o.status.success());
    let s = std::fs::read_to_string(svg).unwrap();
    assert!(s.starts_with("<svg") || s.starts_with("<?xml"));
    assert!(s.contains("stroke-dasharray"));
}

#[test]
fn corners_report_case_and_allocations() {
    let o = gdof(&["corners", "--config", "2,2,3,2", "--alpha", "1.4"]);
    let v = json(&o);
    assert_eq!(v["case"], "II");
    assert_eq!(v["corners"].as_array().unwrap().len(), 2);
    assert_eq!(v["corners"][0]["point"][0], "9/5");
}

#[test]
fn usage_errors_exit_one_and_name_the_flag() {
    let cases: [&[&str]; 5] = [
        &["region", "--config", "2,2,3", "--alpha", "1"],
        &["region", "--config", "2,2,3,2", "--alpha", "-1"],
        &["sum", "--config", "2,2,3,2", "--alpha-grid", "0:1:0"],
        &["corners", "--config", "3,1,2,1", "--alpha", "1"],
        &["validate", "--config", "1,2,1,1", "--term", "private-r2", "--samples", "10"],
    ];
    let flags = ["--config", "--alpha", "--alpha-grid", "--config", "--samples"];
    for (args, flag) in cases.iter().zip(flags) {
        let o = gdof(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(stderr(&o).contains(flag), "{args:?}: {}", stderr(&o));
    }
    assert_eq!(gdof(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(gdof(&["--help"]).status.code(), Some(0));
}

#[test]
fn alpha_is_parsed_exactly() {
    let o = gdof(&["region", "--config", "1,1,1,1", "--alpha", "0.1"]);
    assert_eq!(json(&o)["alpha"], "1/10");
}

#[test]
fn rank_oracle_summary() {
    let o = gdof(&["oracle", "rank", "--max-antennas", "3", "--max-m2", "4", "--alpha-grid", "0:2:1/4"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["checked"], 3 * 4 * 3 * 3 * 9);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn validate_emits_slope_document() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("means.csv");
    let o = gdof(&[
        "validate", "--config", "1,2,1,1", "--alpha", "0.4", "--a2", "0.2", "--term", "private-r2",
        "--seed", "5", "--samples", "60", "--csv", csv.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["term"], "private-r2");
    assert_eq!(v["prediction"], "1/1");
    assert_eq!(v["samples"], 60);
    assert_eq!(v["ladder"].as_array().unwrap().len(), 7);
    assert!((v["slope"].as_f64().unwrap() - 1.0).abs() < 0.05);
    let means = std::fs::read_to_string(csv).unwrap();
    assert_eq!(means.lines().count(), 8);

    let again = gdof(&[
        "validate", "--config", "1,2,1,1", "--alpha", "0.4", "--a2", "0.2", "--term", "private-r2",
        "--seed", "5", "--samples", "60",
    ]);
    assert_eq!(json(&again)["mean_rates"], v["mean_rates"]);
}

#[test]
fn validate_generic_term() {
    let o = gdof(&["validate", "--fterm", "3,0.6,4,1,2", "--samples", "50"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(json(&o)["prediction"], "13/5");
}

#[test]
fn svg_is_deterministic() {
    let runs: [&[&str]; 4] = [
        &["plot", "--figure", "alpha-family"],
        &["plot", "--figure", "tin-gap"],
        &["plot", "--config", "2,4,3,3", "--alpha", "0.6", "--csit", "delayed,perfect"],
        &["plot", "--config", "1,2,1,2", "--sum", "--csit", "delayed,perfect"],
    ];
    for args in runs {
        let a = gdof(args);
        let b = gdof(args);
        assert!(a.status.success(), "{args:?}: {}", stderr(&a));
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn out_dir_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_gdof"))
        .args(["plot", "--figure", "case-ii"])
        .env("GDOF_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert!(Path::new(&dir.path().join("case-ii.svg")).exists());

    let explicit = dir.path().join("nested/r.json");
    let o = Command::new(env!("CARGO_BIN_EXE_gdof"))
        .args(["region", "--config", "1,1,1,1", "--alpha", "1", "--out", explicit.to_str().unwrap()])
        .env("GDOF_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(explicit.exists());
}

#[test]
fn named_figures_show_the_intended_case() {
    use gdof_core::achievability::case_id;
    use gdof_core::CaseId;
    let c: AntennaConfig = "1,2,3,2".parse().unwrap();
    assert_eq!(case_id(&c, "0.5".parse().unwrap()).unwrap(), CaseId::I);
    let c: AntennaConfig = "2,2,3,2".parse().unwrap();
    assert_eq!(case_id(&c, "0.4".parse().unwrap()).unwrap(), CaseId::II);
}

#[test]
fn slope_outside_tolerance_exits_two() {
    let o = gdof(&["validate", "--fterm", "2,0.8,1,0.2,1", "--ladder", "1,2,3,4", "--fit-top", "4", "--samples", "50"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["within_tolerance"], false);
    assert!(stderr(&o).contains("differs from prediction"));
}
