use std::process::{Command, Output};

fn run(args: &[&str], cache: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fusionforge"))
        .args(args)
        .env("FUSIONFORGE_CACHE", cache)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn analyze_text_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["analyze", "M11", "-p", "2"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("|Out(F)| = 2"), "{}", text);
    assert!(text.contains("essential classes: 2"), "{}", text);

    let o = run(&["analyze", "m11", "--prime", "2", "--json"], dir.path());
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["group"], "M11");
    assert_eq!(v["aut_f"]["status"], "done");
    assert_eq!(v["aut_f"]["value"]["out_f_order"], 2);
    // the first run filled the cache
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn cached_and_fresh_reports_agree() {
    let dir = tempfile::tempdir().unwrap();
    let a = stdout(&run(&["analyze", "J1", "-p", "2", "--json"], dir.path()));
    let b = stdout(&run(&["analyze", "J1", "-p", "2", "--json"], dir.path()));
    let c = stdout(&run(&["analyze", "J1", "-p", "2", "--json", "--no-cache"], dir.path()));
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn lattice_bound_accepts_powers() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["analyze", "HS", "-p", "2", "--max-lattice", "2^8", "--json", "--no-cache"], dir.path());
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["options"]["max_lattice"], 256);
    assert_eq!(v["essential_classes"]["status"], "skipped");
    let o = run(&["analyze", "HS", "-p", "2", "--max-lattice", "2^x"], dir.path());
    assert!(!o.status.success());
}

#[test]
fn unknown_names_fail() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["analyze", "Co1", "-p", "2"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown group"));
    let o = run(&["verify", "everything"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_paper_small_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["verify", "paper-small", "--json"], dir.path());
    assert!(o.status.success(), "{}", stdout(&o));
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| r["pass"] == true));
}

#[test]
fn catalog_check_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.grp");
    std::fs::write(&path, "[group]\nname = Bad\ndegree = 4\ngen = (1 2\n").unwrap();
    let o = run(&["catalog", "check", path.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));

    let good = dir.path().join("s4.grp");
    std::fs::write(&good, "[group]\nname = S4\ndegree = 4\norder = 24\ngen = (1 2 3 4)\ngen = (1 2)\n").unwrap();
    let o = run(&["catalog", "check", good.to_str().unwrap()], dir.path());
    assert!(o.status.success());
    assert!(stdout(&o).contains("S4: degree 4, order 24"));
}
