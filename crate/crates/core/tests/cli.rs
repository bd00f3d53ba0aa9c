use std::path::Path;
use std::process::{Command, Output};

fn prodfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prodfree"))
        .args(args)
        .env_remove("PRODFREE_BUDGET")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn odd_a(dir: &Path) -> String {
    let file = dir.join("odd_a.dfa");
    let o = prodfree(&["construct", "odd-occurrence", "--gamma=a", "--out", path(&file)]);
    assert_eq!(o.status.code(), Some(0));
    path(&file).to_owned()
}

#[test]
fn check_reports_product_freeness() {
    let dir = tempfile::tempdir().unwrap();
    let dfa = odd_a(dir.path());
    assert_eq!(prodfree(&["check", "--dfa", &dfa]).status.code(), Some(0));

    let set = dir.path().join("bad.words");
    std::fs::write(&set, "alphabet: ab\na\nb\nab\n").unwrap();
    let o = prodfree(&["check", "--set", path(&set), "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["witness"]["z"], "ab");
}

#[test]
fn density_csv_has_exact_halves() {
    let dir = tempfile::tempdir().unwrap();
    let dfa = odd_a(dir.path());
    let o = prodfree(&["density", "--dfa", &dfa, "--horizon", "64"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,count,total,density_num,density_den"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 64);
    for (i, row) in rows.iter().enumerate() {
        let f: Vec<&str> = row.split(',').collect();
        assert_eq!(f[0], (i + 1).to_string());
        assert_eq!((f[3], f[4]), ("1", "2"));
    }
}

#[test]
fn search_emits_json_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let witness = dir.path().join("best.words");
    let stats = dir.path().join("stats.jsonl");
    let o = prodfree(&[
        "--stats",
        path(&stats),
        "search",
        "--alphabet",
        "ab",
        "--horizon",
        "2",
        "--budget=1e8",
        "--witness",
        path(&witness),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["value"], "5/8");
    assert!(v.get("nodes").is_none());
    let s: serde_json::Value = serde_json::from_str(std::fs::read_to_string(&stats).unwrap().trim()).unwrap();
    assert!(s["nodes"].as_u64().unwrap() > 0);
    // the witness file is a valid input
    assert_eq!(prodfree(&["check", "--set", path(&witness)]).status.code(), Some(0));
    let again = prodfree(&["search", "--alphabet", "ab", "--horizon", "2"]);
    assert_eq!(stdout(&again), stdout(&o));
}

#[test]
fn budget_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_prodfree"))
        .args(["search", "--alphabet", "ab", "--horizon", "4"])
        .env("PRODFREE_BUDGET", "50")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["proof"], false);
    let o = Command::new(env!("CARGO_BIN_EXE_prodfree"))
        .args(["search", "--alphabet", "ab", "--horizon", "4"])
        .env("PRODFREE_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn emitted_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("asym");
    let o = prodfree(&["construct", "asymmetric", "--n=4", "--eps=1/10", "--out-dir", path(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["w_size"], 9);
    assert_eq!(v["xy_meets_z"], false);
    for f in ["x.dfa", "y.dfa", "z.dfa"] {
        let file = out.join(f);
        let text = std::fs::read_to_string(&file).unwrap();
        let copy = dir.path().join(format!("copy-{f}"));
        let dfa = prodfree::Dfa::parse(&text).unwrap();
        std::fs::write(&copy, dfa.to_text()).unwrap();
        assert_eq!(std::fs::read_to_string(&copy).unwrap(), text);
        let d1 = prodfree(&["density", "--dfa", path(&file), "--horizon", "12"]);
        let d2 = prodfree(&["density", "--dfa", path(&copy), "--horizon", "12"]);
        assert_eq!(stdout(&d1), stdout(&d2));
    }
    let words = out.join("w.words");
    let list = prodfree::words::WordList::parse(&std::fs::read_to_string(&words).unwrap()).unwrap();
    assert_eq!(list.words.len(), 9);

    let random = dir.path().join("r.words");
    let o = prodfree(&["construct", "random", "--horizon", "6", "--seed", "4", "--out", path(&random)]);
    assert_eq!(o.status.code(), Some(0));
    let printed = prodfree(&["construct", "random", "--horizon", "6", "--seed", "4"]);
    assert_eq!(stdout(&printed), std::fs::read_to_string(&random).unwrap());
    assert_eq!(prodfree(&["check", "--set", path(&random)]).status.code(), Some(0));
}

#[test]
fn proof_commands() {
    let dir = tempfile::tempdir().unwrap();
    let dfa = odd_a(dir.path());
    let o = prodfree(&["verify-prop", "--dfa", &dfa, "--lengths", "1,3", "--n", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["ok"], true);

    let full = dir.path().join("full.dfa");
    std::fs::write(&full, "alphabet: ab\nstates: 1\nstart: 0\naccept: 0\ntrans: 0 a 0\ntrans: 0 b 0\n").unwrap();
    let o = prodfree(&["verify-prop", "--dfa", path(&full), "--lengths", "1", "--n", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(prodfree(&["phi-levelset", "--dfa", path(&full), "--horizon", "8"]).status.code(), Some(1));

    let o = prodfree(&["certify", "--dfa", &dfa, "--horizon", "64"]);
    assert_eq!(o.status.code(), Some(0));
    let last: serde_json::Value = serde_json::from_str(stdout(&o).lines().last().unwrap()).unwrap();
    assert_eq!(last["certificate"]["violations"].as_array().unwrap().len(), 0);

    let o = prodfree(&["phi-levelset", "--dfa", &dfa]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn malformed_input_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.dfa");
    std::fs::write(&bad, "alphabet: ab\nstates: 1\nstart: 0\naccept: 0\ntrans: 0 a 0\ntrans: 0 c 0\n").unwrap();
    let o = prodfree(&["check", "--dfa", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 6"), "{err}");
    assert_eq!(prodfree(&["check", "--dfa", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(prodfree(&["density"]).status.code(), Some(2));
    assert_eq!(prodfree(&["construct", "pathology", "--c", "4", "--horizon", "10"]).status.code(), Some(2));
}
