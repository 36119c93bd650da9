use std::path::PathBuf;
use std::process::{Command, Output};

fn hilbgw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hilbgw"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = hilbgw(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hilbgw-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn invariant_values() {
    let t4 = vec!["4"; 13].join(",");
    let v = json(&["invariant", "--class", "1,4", "--insertions", &t4]);
    assert_eq!(v["result"]["value"], "27");
    assert_eq!(v["schema_version"], 1);
    let v = json(&["invariant", "--class", "3,1", "--insertions", "3,8"]);
    assert_eq!(v["result"]["value"], "0");
    let out = hilbgw(&["invariant", "--class", "1,1", "--insertions", "6,7"]);
    assert_eq!(stdout(&out), "I_(1,1)(T6,T7) = 2\n");
}

#[test]
fn fractions_print_exactly_and_float_is_marked() {
    let v = json(&["invariant", "--class", "3,0", "--insertions", "3", "--float"]);
    assert_eq!(v["result"]["value"], "1/3");
    assert!(v["result"]["approx"].as_f64().unwrap() > 0.33);
    let out = hilbgw(&["invariant", "--class", "3,0", "--insertions", "3"]);
    assert_eq!(stdout(&out), "I_(3,0)(T3) = 1/3\n");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["invariant", "--class", "0,0", "--insertions", "4"],
        vec!["invariant", "--class", "1,1", "--insertions", "9"],
        vec!["invariant", "--class", "1", "--insertions", "4"],
        vec!["hyperelliptic", "--degree", "1"],
        vec!["hyperelliptic", "--degree", "3", "--pairs", "4"],
        vec!["tables", "--max-degree", "8"],
        vec!["oracle", "--nd", "0"],
        vec!["frobnicate"],
    ] {
        assert_eq!(hilbgw(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn hyperelliptic_csv_and_json() {
    let out = hilbgw(&["hyperelliptic", "--degree", "2", "--pairs", "2", "--csv"]);
    assert_eq!(stdout(&out), "d,l,g,I,E\n2,2,0,1,1\n2,2,1,0,0\n");
    let v = json(&["hyperelliptic", "--degree", "5"]);
    let e: Vec<&str> = v["result"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["E"].as_str().unwrap())
        .collect();
    assert_eq!(e, ["0", "0", "36855", "135", "0"]);
    let v = json(&["hyperelliptic", "--degree", "3", "--pairs", "1"]);
    assert_eq!(v["result"]["rows"][1]["I"], "1");
}

#[test]
fn tables_pass_and_tampering_exits_4() {
    let out = hilbgw(&["tables", "--paper", "--max-degree", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("PASS: 6 tables, degrees 2..=4"));

    let mut tables = hilbgw::tables::paper_tables();
    tables[1].rows[2][2] = Some(28);
    let path = scratch("tampered.json");
    std::fs::write(&path, serde_json::to_string(&tables).unwrap()).unwrap();
    let out = hilbgw(&["tables", "--max-degree", "4", "--fixture", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    let text = stdout(&out);
    assert!(text.contains("mismatch in E(d,g) at d=4 g=2: expected 28, computed 27"), "{text}");
}

#[test]
fn qcoh_passes() {
    let out = hilbgw(&["qcoh", "--n1", "4", "--n2", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches("PASS").count(), 11, "{text}");
    let v = json(&["qcoh"]);
    assert_eq!(v["result"]["pass"], true);
}

#[test]
fn oracle_counts() {
    let out = hilbgw(&["oracle", "--nd", "6"]);
    assert_eq!(stdout(&out), "N_6 = 26312976\n");
    let v = json(&["oracle", "--nd", "5", "--check"]);
    assert_eq!(v["result"]["engine"], "87304");
    assert_eq!(v["result"]["agree"], true);
}

#[test]
fn cache_round_trip_is_byte_identical() {
    let first = scratch("first.json");
    let second = scratch("second.json");
    let out = hilbgw(&["cache", "export", first.to_str().unwrap(), "--max-degree", "3"]);
    assert!(out.status.success());
    let out = hilbgw(&[
        "cache",
        "import",
        first.to_str().unwrap(),
        "--export",
        second.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(std::fs::read(&first).unwrap(), std::fs::read(&second).unwrap());

    // a preloaded cache gives the same answers
    let v = json(&["--load-cache", first.to_str().unwrap(), "hyperelliptic", "--degree", "3", "--pairs", "2"]);
    assert_eq!(v["result"]["rows"][0]["E"], "12");
}

#[test]
fn bad_cache_files_exit_2() {
    let path = scratch("bad.json");
    std::fs::write(&path, "{\"target\": \"hilb2p2\"}").unwrap();
    assert_eq!(hilbgw(&["cache", "import", path.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(
        &path,
        r#"{"target":"hilb2p2","entries":[{"a":1,"b":2,"ins":[4,4],"num":"1","den":"1"}]}"#,
    )
    .unwrap();
    assert_eq!(hilbgw(&["cache", "import", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn output_is_independent_of_thread_count() {
    let one = hilbgw(&["--threads", "1", "hyperelliptic", "--degree", "4", "--pairs", "1", "--json"]);
    let four = hilbgw(&["--threads", "4", "hyperelliptic", "--degree", "4", "--pairs", "1", "--json"]);
    let strip = |o: &Output| {
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v["command"] = serde_json::Value::Null;
        v
    };
    assert_eq!(strip(&one), strip(&four));
}

#[test]
fn datum_dump() {
    let v = json(&["datum"]);
    assert_eq!(v["result"]["target"], "hilb2p2");
    assert_eq!(v["result"]["duals"], serde_json::json!([8, 7, 6, 5, 4, 3, 2, 1, 0]));
    let v = json(&["datum", "--target", "p2"]);
    assert_eq!(v["result"]["dim"], 2);
}
