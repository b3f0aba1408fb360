use std::process::{Command, Output};

fn ncpk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncpk")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = ncpk(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn headline_numbers() {
    assert_eq!(stdout(&["count", "--k", "2", "--n", "3"]), "30\n");
    assert_eq!(stdout(&["chains", "--k", "2", "--n", "3"]), "49\n");
    assert_eq!(stdout(&["count", "--k", "3", "--n", "4"]), "340\n");
    assert_eq!(stdout(&["count", "--k", "2", "--n", "3", "--rank", "1"]), "14\n");
    assert_eq!(stdout(&["mobius", "--k", "2", "--n", "3"]), "-22\n");
    assert_eq!(stdout(&["zeta", "--k", "2", "--n", "3", "--q", "-1"]), "-22\n");
}

#[test]
fn verify_passes() {
    let out = ncpk(&["verify", "--max-n", "3", "--max-k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.lines().any(|l| l.starts_with("FAIL")));
    assert!(text.trim_end().ends_with("0 FAIL, 0 OPEN"), "{text}");
}

#[test]
fn usage_and_bound_errors_exit_2() {
    assert_eq!(ncpk(&["count", "--k", "2"]).status.code(), Some(2));
    assert_eq!(ncpk(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ncpk(&["count", "--k", "0", "--n", "3"]).status.code(), Some(2));
    assert_eq!(ncpk(&["count", "--k", "2", "--n", "3", "--format", "dot"]).status.code(), Some(2));
    assert_eq!(ncpk(&["bijection", "--k", "2", "--n", "3", "--element", "(1 3)"]).status.code(), Some(2));
    assert_eq!(ncpk(&["hurwitz", "--k", "1", "--n", "8", "--max-states", "100"]).status.code(), Some(2));
}

#[test]
fn formats() {
    let json: serde_json::Value = serde_json::from_str(&stdout(&["enumerate", "--k", "2", "--n", "2", "--format", "json"])).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 7);
    let csv = stdout(&["poset", "--k", "2", "--n", "3", "--format", "csv"]);
    assert_eq!(csv, "rank,observed,closed_form\n0,1,1\n1,14,14\n2,14,14\n3,1,1\n");
    let dot = stdout(&["poset", "--k", "1", "--n", "3", "--format", "dot"]);
    assert!(dot.starts_with("digraph") && dot.matches(" -> ").count() > 0);
    let cambrian = stdout(&["cambrian", "--k", "1", "--n", "3", "--format", "dot"]);
    assert_eq!(cambrian.matches(" -> ").count(), 16);
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "--max-n", "3", "--max-k", "2", "--format", "csv"];
    assert_eq!(stdout(&args), stdout(&args));
    let out = Command::new(env!("CARGO_BIN_EXE_ncpk")).args(args).env("NCPK_THREADS", "1").output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), stdout(&args));
}

#[test]
fn bijections_round_trip_through_the_cli() {
    let forward = stdout(&["bijection", "--k", "2", "--n", "2", "--parking", "1,1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&forward).unwrap();
    let fact = v["factorization"].as_str().unwrap();
    assert_eq!(fact, "(1 4 5)|(1 2 3)");
    let back: serde_json::Value =
        serde_json::from_str(&stdout(&["bijection", "--k", "2", "--n", "2", "--factorization", fact, "--format", "json"])).unwrap();
    assert_eq!(back["parking_function"], "1,1");
}

#[test]
fn mdiv_and_typeb_reports() {
    let text = stdout(&["mdiv", "--k", "1", "--n", "2", "--m", "2", "--q", "2"]);
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(' ').collect();
        assert_eq!(cols[1], cols[2], "{line}");
    }
    let typeb = stdout(&["typeb-orbit", "--k", "2", "--n", "2"]);
    assert!(typeb.starts_with("product preserved true"));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("ncpk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("count.txt");
    stdout(&["count", "--k", "1", "--n", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "14\n");
    std::fs::remove_dir_all(&dir).unwrap();
}
