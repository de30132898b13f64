use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thue-bounds"))
        .args(args)
        .current_dir(dir)
        .env_remove("THUE_BOUNDS_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp() -> tempfile::TempDir {
    tempfile::tempdir().unwrap()
}

fn row_value(text: &str, name: &str) -> Vec<String> {
    text.lines()
        .find(|l| l.split_whitespace().next() == Some(name))
        .unwrap_or_else(|| panic!("no {name} row"))
        .split_whitespace()
        .skip(1)
        .map(String::from)
        .collect()
}

#[test]
fn bounds_examples() {
    let d = tmp();
    let o = run(&["bounds", "--n", "6", "--d0", "0", "--a", "0.18", "--b", "0.29"], d.path());
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(row_value(&s, "T"), ["10", "10"]);
    assert_eq!(row_value(&s, "Z"), ["4", "4"]);
    for q in ["K_d", "Q1", "L", "D", "A", "E", "chi_n", "pi_n"] {
        row_value(&s, q);
    }

    let o = run(&["bounds", "--n", "507", "--asymptotic"], d.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("T = 2, Z = 2, all estimates hold: true"));

    let o = run(&["bounds", "--n", "5"], d.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("n = 5"));

    let o = run(&["bounds", "--n", "6", "--d0", "0", "--a", "0.3", "--b", "0.2"], d.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("violates a < b"));

    let o = run(&["bounds", "--n", "6", "--d0", "0"], d.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    let d = tmp();
    assert_eq!(run(&["frobnicate"], d.path()).status.code(), Some(2));
    assert_eq!(run(&["optimize", "--n-min", "6"], d.path()).status.code(), Some(2));
    assert_eq!(run(&["gap-demo", "--l", "2", "--t", "9", "--p", "3", "--ell", "2"], d.path()).status.code(), Some(2));
    std::fs::write(d.path().join("bad.toml"), "unknown_key = 1\n").unwrap();
    assert_eq!(run(&["--config", "bad.toml", "ztable", "--n-max", "9"], d.path()).status.code(), Some(2));
    assert_eq!(run(&["--workers", "0", "ztable", "--n-max", "9"], d.path()).status.code(), Some(2));
}

#[test]
fn optimize_tables() {
    let d = tmp();
    let o = run(&["optimize", "--n-min", "6", "--n-max", "9", "--format", "csv"], d.path());
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("n,d0,d,a,b,T,Z"));
    let tz: Vec<(String, String)> = lines
        .map(|l| {
            let c: Vec<&str> = l.split(',').collect();
            (c[5].to_string(), c[6].to_string())
        })
        .collect();
    let t: Vec<&str> = tz.iter().map(|x| x.0.as_str()).collect();
    assert_eq!(t, ["10", "7", "7", "6"]);

    let s = stdout(&run(&["optimize", "--n-min", "39", "--n-max", "40", "--format", "csv"], d.path()));
    assert!(s.lines().skip(1).all(|l| l.ends_with(",2,3")));
    assert_eq!(s.lines().count(), 3);

    let o = run(&["optimize", "--n-min", "10", "--n-max", "9", "--format", "csv"], d.path());
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n,d0,d,a,b,T,Z\n");
}

#[test]
fn ztable_rows() {
    let d = tmp();
    let s = stdout(&run(&["ztable"], d.path()));
    let row = |label: &str| row_value(&s, label);
    assert_eq!(row("6")[..2], ["15", "16"]);
    assert_eq!(row(">=")[..], ["219", "4", "5", "32/40", "38/48"]);
    assert_eq!(row("17-37")[..2], ["6", "6"]);
    assert_eq!(row("38")[..2], ["6", "5"]);
    assert!(s.contains("n = 5"));
}

#[test]
fn enumerate_writes_published_layout() {
    let d = tmp();
    let o = run(&["--out-dir", "out", "enumerate", "--degree", "6", "--height", "1", "--box", "200"], d.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("maximum number of solutions: 8"));
    let bytes = std::fs::read(d.path().join("out/degree_6_height_1_thue_equations.csv")).unwrap();
    let header = b"\"Number of Solutions to |F(x,y)| = 1\",Leading Coefficient,Middle Coefficient,Constant Coefficient,Middle Degree,\"List of Solutions to |F(x,y)| = 1\"\r\n";
    assert!(bytes.starts_with(header));
    let text = String::from_utf8(bytes).unwrap();
    assert_eq!(text.matches("\r\n").count(), 21);
    assert_eq!(text.matches('\n').count(), 21);
    assert!(text.contains("8,1,-1,-1,1,\"[[-1, -1], [-1, 0], [-1, 1], [0, -1], [0, 1], [1, -1], [1, 0], [1, 1]]\"\r\n"));

    // A cross-check file that agrees, then one that lists an extra solution.
    let ours = d.path().join("out/degree_6_height_1_thue_equations.csv");
    let o = run(&["--out-dir", "again", "enumerate", "--degree", "6", "--height", "1", "--box", "200", "--compare", ours.to_str().unwrap()], d.path());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 mismatches"));
    let altered = text.replacen("\"[[-1, -1], [-1, 0], [-1, 1], [0, -1], [0, 1], [1, -1], [1, 0], [1, 1]]\"", "\"[[-1, -1], [-1, 0], [-1, 1], [0, -1], [0, 1], [1, -1], [1, 0], [1, 1], [5, 3]]\"", 1).replacen("\r\n8,1,-1,-1,1,", "\r\n9,1,-1,-1,1,", 1);
    assert_ne!(altered, text);
    std::fs::write(d.path().join("theirs.csv"), altered).unwrap();
    let o = run(&["--out-dir", "again", "enumerate", "--degree", "6", "--height", "1", "--box", "200", "--compare", "theirs.csv"], d.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("1 mismatches"));
}

#[test]
fn env_and_config_choose_output_directory() {
    let d = tmp();
    let bin = env!("CARGO_BIN_EXE_thue-bounds");
    let status = Command::new(bin)
        .args(["enumerate", "--degree", "7", "--height", "1", "--box", "20"])
        .current_dir(d.path())
        .env("THUE_BOUNDS_OUT_DIR", "from-env")
        .output()
        .unwrap()
        .status;
    assert!(status.success());
    assert!(d.path().join("from-env/degree_7_height_1_thue_equations.csv").exists());
    std::fs::write(d.path().join("run.toml"), "out_dir = \"from-config\"\nbox_radius = 20\n").unwrap();
    let status = Command::new(bin)
        .args(["--config", "run.toml", "enumerate", "--degree", "7", "--height", "1"])
        .current_dir(d.path())
        .env("THUE_BOUNDS_OUT_DIR", "from-env")
        .output()
        .unwrap()
        .status;
    assert!(status.success());
    assert!(d.path().join("from-config/degree_7_height_1_thue_equations.csv").exists());
}

#[test]
fn output_is_independent_of_workers() {
    let d = tmp();
    let mut outputs = Vec::new();
    for w in ["1", "3"] {
        let dir = format!("w{w}");
        let o = run(&["--workers", w, "--out-dir", &dir, "enumerate", "--degree", "8", "--height", "2", "--box", "300"], d.path());
        assert!(o.status.success());
        let csv = std::fs::read(d.path().join(&dir).join("degree_8_height_2_thue_equations.csv")).unwrap();
        let v = run(
            &["--workers", w, "--seed", "11", "verify", "--n-min", "6", "--n-max", "6", "--h-max", "1", "--box", "100", "--gap-instances", "3000", "--sharp-instances", "200"],
            d.path(),
        );
        assert!(v.status.success());
        let opt = run(&["--workers", w, "optimize", "--n-min", "6", "--n-max", "12", "--format", "json"], d.path());
        outputs.push((csv, v.stdout, opt.stdout));
    }
    assert!(outputs[0] == outputs[1]);
}

#[test]
fn verify_reports_json() {
    let d = tmp();
    let o = run(
        &["verify", "--n-min", "6", "--n-max", "7", "--h-max", "1", "--box", "500", "--gap-instances", "2000", "--sharp-instances", "100", "--report", "r.json"],
        d.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["cells"].as_array().unwrap().len(), 2);
    assert!(v["invariants"].as_array().unwrap().iter().all(|t| t["checked"] == t["passed"]));
    assert_eq!(v["gap_soundness"]["violations"], 0);
    assert_eq!(std::fs::read(d.path().join("r.json")).unwrap(), o.stdout);

    let o = run(&["verify", "--n-min", "7", "--n-max", "6", "--gap-instances", "0", "--sharp-instances", "0"], d.path());
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn gap_demo_prints_chain_and_bounds() {
    let d = tmp();
    let o = run(&["gap-demo", "--l", "2", "--t", "1", "--p", "3", "--ell", "3"], d.path());
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("y_3 = 256"));
    assert!(s.contains("bound (binary64)       = 3"));
    assert!(s.contains("longest chain (oracle) = 3"));
}
