use std::process::{Command, Output};

use hankelfrac::hfrac::hankel_from_hfrac;
use hankelfrac::report::{ExpansionReport, QuadraticReport};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hankelfrac"))
        .args(args)
        .env_remove("HANKELFRAC_DEPTH")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{:?}: {}", args, String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

const F5_ARGS: &[&str] = &["hfrac-quadratic", "--field", "F5", "--A", "-1", "--B", "1-x^4", "--C", "-x+x^5"];

#[test]
fn quadratic_report_over_f5() {
    let text = stdout(F5_ARGS);
    assert!(text.contains("periodic: m = 1, t = 7"), "{}", text);
    assert!(text.contains("bound = 32"));
    assert!(text.contains("hankel: (1,1,1,2,0,2,4,1,4,1,4,2,0,2,1,1)*"));

    let mut args = F5_ARGS.to_vec();
    args.extend(["--format", "json"]);
    let r: QuadraticReport = serde_json::from_str(&stdout(&args)).unwrap();
    assert_eq!(r.hankel.unwrap().period.len(), 16);
    assert_eq!(r.period_bound.unwrap().pi, 2);
}

#[test]
fn reports_are_deterministic() {
    assert_eq!(stdout(F5_ARGS), stdout(F5_ARGS));
    let args = ["expand", "--named", "distinct-partitions", "--format", "json", "--quotients", "12"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn json_fraction_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let p = path.to_str().unwrap();
    stdout(&["expand", "--field", "F3", "--num", "1+x", "--den", "1-x-x^3", "--format", "json", "--out", p]);
    let r: ExpansionReport = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let h = r.fraction.to_fraction().unwrap();
    let again: Vec<String> = hankel_from_hfrac(&h, r.hankel.len() - 1)
        .unwrap()
        .iter()
        .map(|c| c.to_string())
        .collect();
    assert_eq!(again, r.hankel);
}

#[test]
fn oracle_over_the_integers() {
    let csv = stdout(&["oracle", "--named", "stern", "--nmax", "20", "--ring", "Z", "--format", "csv"]);
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "n,H_n");
    assert_eq!(rows.len(), 22);
    assert_eq!(&rows[1..5], ["0,1", "1,1", "2,1", "3,-2"]);
    // 2^(n-2) divides H_n
    for row in &rows[3..] {
        let (n, h) = row.split_once(',').unwrap();
        let (n, h): (u32, i128) = (n.parse().unwrap(), h.parse().unwrap());
        assert_eq!(h % (1i128 << (n - 2)), 0, "n = {}", n);
    }
}

#[test]
fn hankel_matches_oracle() {
    let certified = stdout(&["hankel", "--named", "rudin-shapiro:1", "--nmax", "30", "--format", "csv"]);
    let oracle = stdout(&["oracle", "--named", "rudin-shapiro:1", "--nmax", "30", "--format", "csv"]);
    assert_eq!(certified, oracle);
}

#[test]
fn reproduce_table() {
    let text = stdout(&["reproduce", "--table", "paperfolding-table"]);
    assert!(text.starts_with("PASS paperfolding-table"), "{}", text);
    let json: Value = serde_json::from_str(&stdout(&["reproduce", "rudin-shapiro-periods", "--format", "json"])).unwrap();
    assert_eq!(json[0]["passed"], Value::Bool(true));
    assert_eq!(stdout(&["reproduce", "--list"]).lines().count(), 11);
}

#[test]
fn series_json_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("series.json");
    std::fs::write(
        &path,
        r#"{"field": "F2", "source": {"kind": "named", "name": "paperfolding", "a": 0, "b": 2}}"#,
    )
    .unwrap();
    let arg = format!("@{}", path.display());
    let text = stdout(&["hankel", "--series-json", &arg, "--nmax", "9"]);
    assert!(text.contains("certified: (1,1,1,0,0,1,0,0,1,1)*"), "{}", text);
}

#[test]
fn depth_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_hankelfrac"))
        .args(["expand", "--named", "cube-root-f2", "--format", "json"])
        .env("HANKELFRAC_DEPTH", "16")
        .output()
        .unwrap();
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["fraction"]["tail"]["kind"], "truncated");
    assert!(r["fraction"]["quotients"].as_array().unwrap().len() <= 4);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code();
    // input errors
    assert_eq!(code(&["expand", "--field", "F7", "--num", "1+", "--den", "1"]), Some(1));
    assert_eq!(code(&["expand", "--field", "F6", "--num", "1", "--den", "1-x"]), Some(1));
    assert_eq!(code(&["oracle", "--named", "no-such-thing"]), Some(1));
    assert_eq!(code(&["reproduce", "no-such-id"]), Some(1));
    assert_eq!(code(&["frobnicate"]), Some(1));
    assert_eq!(code(&["hfrac-quadratic", "--field", "F5"]), Some(1));
    // unsupported cases
    assert_eq!(code(&["hfrac-quadratic", "--field", "F2", "--A", "1+x", "--B", "0", "--C", "1"]), Some(2));
    assert_eq!(code(&["hfrac-quadratic", "--field", "Q", "--A", "-1", "--B", "1", "--C", "x"]), Some(2));
    assert_eq!(code(&["oracle", "--named", "paperfolding:0,2", "--ring", "Z"]), Some(2));
    assert_eq!(code(&["--help"]), Some(0));
}
