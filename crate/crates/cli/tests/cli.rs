use std::process::{Command, Output};

fn hstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hstab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_reports_indefinite_torus() {
    let o = hstab(&["analyze", "--catalog-id", "torus:n=2,r=1,2,p=1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(json["label"], "indefinite");
    assert_eq!(json["witnesses"].as_array().unwrap().len(), 2);
}

#[test]
fn analyze_output_is_reproducible() {
    let args = ["analyze", "--catalog-id", "hyperbola:n=3,r=1,1,1,eps=+,+,+"];
    assert_eq!(hstab(&args).stdout, hstab(&args).stdout);
}

#[test]
fn csv_output_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tubes.csv");
    let o = hstab(&["tube-table", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 17, "header plus 16 cells");
}

#[test]
fn sweep_over_modes() {
    let o = hstab(&["sweep", "--catalog-id", "torus:n=2,r=1,1,p=1", "--sweep", "k=1:4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 5);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["analyze", "--catalog-id", "nosuch:thing"][..],
        &["analyze", "--catalog-id", "torus:n=2,r=1"],
        &["sweep", "--catalog-id", "torus:n=2,r=1,1,p=1", "--sweep", "radius=1:2:3"],
        &["sweep", "--catalog-id", "hyperbola:n=1,r=1,eps=+", "--sweep", "k=1:3"],
        &["analyze", "--catalog-id", "torus:n=1,r=1,p=0", "--grid", "4"],
        &["analyze", "--catalog-id", "torus:n=1,r=1,p=0", "--format", "xml"],
        &["frobnicate"],
    ] {
        let o = hstab(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn verify_paper_reports_every_check() {
    let o = hstab(&["verify-paper"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks = json["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 17);
    let failed = checks.iter().filter(|c| c["passed"] == false).count();
    assert_eq!(o.status.code(), Some(if failed == 0 { 0 } else { 1 }));
}
