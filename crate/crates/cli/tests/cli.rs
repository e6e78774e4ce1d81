use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_basechange"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn chartable_csv_has_a_row_per_character() {
    let o = run(&["chartable", "sl2", "--q", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 8);
    assert!(lines[1..].iter().all(|l| l.starts_with("chi")));
}

#[test]
fn chartable_json() {
    let o = run(&["chartable", "gl2", "--q", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], 48);
    assert_eq!(v["classes"].as_array().unwrap().len(), 8);
}

#[test]
fn cuspidal_u2_matches_oracle() {
    let o = run(&["cuspidal", "u2", "--q", "3", "--theta", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        v["characters"][0]["oracle_matches"]
            .as_array()
            .unwrap()
            .len(),
        1
    );
}

#[test]
fn heis_reports_sign() {
    let o = run(&[
        "heis",
        "--p",
        "3",
        "--a",
        "1",
        "--d",
        "4",
        "--realization",
        "nonsplit",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("ε = -1"));
}

#[test]
fn verify_writes_report_file() {
    let path = std::env::temp_dir().join(format!("basechange-cli-{}.json", std::process::id()));
    let o = run(&[
        "verify",
        "level0",
        "--q",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["suite"], "level0");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "bogus"][..],
        &["chartable", "sl2", "--q", "3", "--frobnicate"],
        &["chartable", "sl2", "--q", "4"],
        &["cuspidal", "sl2", "--q", "3", "--theta", "2"],
        &[
            "heis",
            "--p",
            "3",
            "--a",
            "1",
            "--d",
            "5",
            "--realization",
            "split",
        ],
        &[
            "heis",
            "--p",
            "3",
            "--a",
            "1",
            "--d",
            "4",
            "--realization",
            "maybe",
        ],
        &["verify", "heisenberg", "--params", "(3,1)"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}
