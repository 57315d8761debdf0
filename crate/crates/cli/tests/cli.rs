use std::process::{Command, Output};

use approx::assert_relative_eq;
use quadbound_core::bounds::{new_lower_ellipse, new_lower_gamma, BoundRecord};
use quadbound_core::extremal::{jplus_exact, AdversaryDescriptor};
use quadbound_core::{Map, Scheme, Weight};

fn quadbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadbound")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_records(args: &[&str]) -> Vec<BoundRecord> {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = quadbound(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn value(records: &[BoundRecord], name: &str, n: f64) -> f64 {
    records
        .iter()
        .find(|r| r.name == name && r.params.get("n").or_else(|| r.params.get("N")) == Some(&n))
        .unwrap_or_else(|| panic!("no row {name} n={n}"))
        .value
}

#[test]
fn bounds_rows_for_both_weights() {
    let leb = json_records(&["bounds", "--ellipse", "c=2", "--n", "4", "--weight", "lebesgue"]);
    assert_relative_eq!(value(&leb, "new_lower_ellipse", 4.0), new_lower_ellipse(2.0, 4).unwrap(), max_relative = 1e-15);
    assert_relative_eq!(value(&leb, "new_lower_ellipse", 4.0), 2.853e-6, max_relative = 1e-3);
    let cheb = json_records(&["bounds", "--ellipse", "c=2", "--n", "4", "--weight", "chebyshev"]);
    assert_relative_eq!(value(&cheb, "osipenko", 4.0), 2.0 * std::f64::consts::PI / 256.0, max_relative = 1e-14);
    assert!(cheb.iter().all(|r| r.name != "new_lower_ellipse"));
}

#[test]
fn csv_header_and_columns() {
    let o = quadbound(&["bounds", "--ellipse", "c=2", "--n", "4"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("name,kind,c,n,N,weight,value,provenance"));
    let row = lines.find(|l| l.starts_with("new_lower_ellipse,")).unwrap();
    assert!(row.starts_with("new_lower_ellipse,lower,2,,4,lebesgue,2.85"), "{row}");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bounds", "--n", "4"][..],
        &["bounds", "--ellipse", "c=1", "--n", "4"],
        &["bounds", "--ellipse", "c=2", "--n", "0"],
        &["bounds", "--ellipse", "c=2"],
        &["bounds", "--ellipse", "circle", "--n", "4"],
        &["bounds", "--ellipse", "c=2", "--n", "4", "--weight", "legendre"],
        &["bounds", "--ellipse", "c=2", "--n", "4", "--tol", "0"],
        &["bounds", "--ellipse", "c=2", "--n", "4", "--eps", "2"],
        &["adversary", "--ellipse", "c=2", "--n", "4", "--M", "-1"],
        &["frobnicate"],
    ] {
        assert_eq!(quadbound(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn adversary_meets_its_guarantee() {
    let recs = json_records(&["adversary", "--ellipse", "c=1.5", "--n", "1,8"]);
    let delta = (1.5f64 * 1.5 - 1.0) / 3.0;
    assert!(value(&recs, "adversary_measured", 8.0) >= new_lower_gamma(delta, 8, true).unwrap());
    let single = jplus_exact(&Map::for_ellipse(1.5).unwrap(), &Weight::lebesgue(), &Scheme::simple(vec![0.0]).unwrap(), 1e-12).unwrap();
    assert_relative_eq!(value(&recs, "adversary_measured", 1.0), single, max_relative = 1e-10);
}

#[test]
fn adversary_scales_with_m() {
    let one = json_records(&["adversary", "--ellipse", "c=1.2", "--n", "4", "--weight", "chebyshev"]);
    let ten = json_records(&["adversary", "--ellipse", "c=1.2", "--n", "4", "--weight", "chebyshev", "--M", "10"]);
    for name in ["adversary_measured", "adversary_guaranteed"] {
        assert_relative_eq!(value(&ten, name, 4.0), 10.0 * value(&one, name, 4.0), max_relative = 1e-9);
    }
}

#[test]
fn adversary_export_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let o = quadbound(&["adversary", "--ellipse", "c=2", "--n", "3", "--export", path, "--samples", "11"]);
    assert_eq!(o.status.code(), Some(0));
    let desc: AdversaryDescriptor<f64> =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("adversary_c2_n3_lebesgue.json")).unwrap()).unwrap();
    assert_eq!(desc.nodes.len(), 3);
    assert_eq!(desc.mults, vec![1, 1, 1]);
    assert_eq!(desc.bound, 1.0);
    let table = std::fs::read_to_string(dir.path().join("adversary_c2_n3_lebesgue.csv")).unwrap();
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines[0], "x,f0");
    assert_eq!(lines.len(), 12);
    // The middle Gauss node is a zero of the adversary.
    let mid: Vec<f64> = lines[6].split(',').map(|s| s.parse().unwrap()).collect();
    assert_eq!(mid[0], 0.0);
    assert!(mid[1].abs() < 1e-12);
}

#[test]
fn sweep_is_sorted_and_deterministic() {
    let a = quadbound(&["sweep", "--ellipse", "c=1.5,2", "--n", "2,3", "--N", "1,2", "--seed", "3"]);
    let b = quadbound(&["sweep", "--ellipse", "c=2", "--ellipse", "c=1.5", "--n", "3,2", "--N", "2,1", "--seed", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let names: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert!(names.windows(2).all(|w| w[0] <= w[1]));
    assert!(names.contains(&"jplus_min") && names.contains(&"adversary_measured"));
}

#[test]
fn json_round_trips() {
    let recs = json_records(&["sweep", "--ellipse", "moderate", "--n", "2", "--eps", "1e-6"]);
    let again: Vec<BoundRecord> = serde_json::from_str(&serde_json::to_string(&recs).unwrap()).unwrap();
    assert_eq!(recs, again);
    assert!(recs.iter().any(|r| r.name == "nodes_lower_exact"));
}

#[test]
fn verify_reports_every_criterion() {
    let o = quadbound(&["verify"]);
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("[PASS]") || l.starts_with("[FAIL]")).count(), 10);
    // The Lebesgue Bakhvalov window is not met by the formula itself.
    let failing: Vec<&str> = text.lines().filter(|l| l.starts_with("[FAIL]")).collect();
    assert_eq!(failing.len(), 1, "{text}");
    assert!(failing[0].contains("bakhvalov"));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn perturbed_gamma_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("verify.json");
    let o = quadbound(&["verify", "--perturb-gamma", "--format", "json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let rows: Vec<serde_json::Value> = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[0]["passed"], serde_json::Value::Bool(false));
}
