use std::process::{Command, Output};

use lgb_core::{LgbResult, Tier};

fn lgb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lgb"))
        .args(args)
        .output()
        .expect("run lgb")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = lgb(args);
    assert!(
        out.status.success(),
        "{args:?} exited {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

const TOY: [&str; 6] = ["-n", "3", "-m", "4", "-d", "2,2,3,4"];

fn with<'a>(head: &[&'a str], tail: &[&'a str]) -> Vec<&'a str> {
    head.iter().chain(TOY.iter()).chain(tail).copied().collect()
}

#[test]
fn compute_toy_text() {
    let text = ok(&with(&["compute"], &[]));
    assert!(text.contains("7 leading monomials"));
    assert!(text.contains("degree 2 (2): x1^2, x1*x2"));
    let last_group = text.lines().find(|l| l.contains("degree 4")).unwrap();
    assert!(last_group.trim_end().ends_with("x3^4"));
}

#[test]
fn compute_single_variable() {
    let json = ok(&[
        "compute", "-n", "1", "-m", "1", "-d", "5", "--format", "json",
    ]);
    let r: LgbResult = serde_json::from_str(&json).unwrap();
    let gens: Vec<String> = r
        .leading_monomials
        .generators()
        .iter()
        .map(|g| g.to_string())
        .collect();
    assert_eq!(gens, ["x1^5"]);
}

#[test]
fn compute_json_round_trips() {
    let json = ok(&with(&["compute"], &["--format", "json"]));
    let r: LgbResult = serde_json::from_str(&json).unwrap();
    assert_eq!(r.degree_bound, 4);
    assert_eq!(r.leading_monomials.len(), 7);
    assert_eq!(
        serde_json::to_string_pretty(&r).unwrap().trim_end(),
        json.trim_end()
    );
}

#[test]
fn compute_csv_trace() {
    let csv = ok(&with(&["compute"], &["--format", "csv"]));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], lgb_cli::TRACE_HEADER.join(","));
    assert_eq!(
        &lines[1..],
        ["1,1,3,0,0", "2,3,6,2,0", "3,4,5,2,1", "4,3,3,3,1"]
    );
}

#[test]
fn threads_do_not_change_output() {
    let one = ok(&["compute", "-n", "8", "-d", "2^9", "--format", "json"]);
    let four = ok(&[
        "compute",
        "-n",
        "8",
        "-d",
        "2^9",
        "--format",
        "json",
        "--threads",
        "4",
    ]);
    assert_eq!(one, four);
}

#[test]
fn hilbert_toy_and_infinite() {
    let text = ok(&with(&["hilbert"], &[]));
    assert_eq!(text, "1 + 3z + 4z^2 + 3z^3\nfinite: true\n");

    let json = ok(&[
        "hilbert", "-n", "14", "-m", "10", "-d", "2^10", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["finite"], false);
    assert_eq!(v["coeffs"].as_array().unwrap().len(), 12);

    let text = ok(&["hilbert", "-n", "2", "-d", "1", "--cap", "5"]);
    assert_eq!(text, "1 + z + z^2 + z^3 + z^4 + z^5 + ...\nfinite: false\n");
}

#[test]
fn invalid_input_exits_2() {
    for args in [
        vec!["compute", "-n", "3", "-m", "3", "-d", "2,2,3,4"],
        vec!["compute", "-n", "2", "-m", "0", "-d", ""],
        vec!["compute", "-n", "0", "-d", "2"],
        vec!["compute", "-n", "3", "-d", "2,0"],
        vec!["compute", "-n", "3", "-d", "2", "--tier", "5"],
        vec!["compute", "-n", "3", "-d", "2^x"],
        vec!["hilbert", "-n", "3", "-d", "2", "--format", "csv"],
        vec!["verify", "-n", "3", "-d", "2", "--format", "csv"],
        vec!["verify", "-n", "3", "-d", "2", "--prime", "4"],
        vec!["stats", "-n", "3", "-d", "2", "--tiers", "1,7"],
        vec!["frobnicate"],
    ] {
        let out = lgb(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn stats_toy_tier4() {
    let csv = ok(&with(&["stats"], &["--tiers", "4"]));
    assert_eq!(
        csv,
        "d,tier4_candidates_checked,tier4_relevant_generators\n1,1,0\n2,3,0\n3,4,1\n4,3,1\n"
    );
}

#[test]
fn stats_case2_generator_columns() {
    let csv = ok(&[
        "stats", "-n", "14", "-m", "10", "-d", "2^10", "--tiers", "3,4",
    ]);
    let rows: Vec<Vec<u64>> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 11);
    let t3: Vec<u64> = rows[1..].iter().map(|r| r[2]).collect();
    let t4: Vec<u64> = rows[1..].iter().map(|r| r[4]).collect();
    assert_eq!(t3, [0, 10, 30, 69, 132, 216, 306, 381, 416, 425]);
    assert_eq!(t4, [0, 0, 4, 25, 48, 42, 132, 207, 242, 251]);
}

#[test]
fn stats_json_keys() {
    let json = ok(&with(&["stats"], &["--tiers", "0,2", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["tier0"].as_array().unwrap().len(), 4);
    assert_eq!(v["tier2"][3]["candidates_checked"], 3);
}

#[test]
fn verify_toy_all_match() {
    let out = ok(&with(&["verify"], &[]));
    let lines: Vec<serde_json::Value> = out
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 6);
    for (line, seed) in lines.iter().zip(1..=5) {
        assert_eq!(line["seed"], seed);
        assert_eq!(line["match"], true);
        assert_eq!(line["lgb_lm"], line["oracle_lm"]);
    }
    assert_eq!(lines[5]["passed"], true);
}

#[test]
fn verify_two_quadrics_text() {
    let out = ok(&[
        "verify", "-n", "2", "-m", "2", "-d", "2,2", "--seeds", "1..5", "--format", "text",
    ]);
    assert_eq!(out.lines().filter(|l| l.ends_with(" match")).count(), 5);
    assert!(out.lines().last().unwrap().starts_with("PASS"));
}

#[test]
fn verify_refuses_oversized_spec() {
    let out = lgb(&["verify", "-n", "18", "-m", "19", "-d", "2^19"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn verify_mismatch_exits_4() {
    // Over F_3 these draws are not generic, retries included.
    let out = lgb(&["verify", "-n", "3", "-d", "2,2,2", "--prime", "3"]);
    assert_eq!(out.status.code(), Some(4));
    let lines: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 11);
    assert_eq!(lines[5]["kind"], "retry");
    assert_eq!(lines[5]["seed"], 6);
    assert_eq!(lines[10]["passed"], false);
}

fn bench_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

#[test]
fn bench_single_tier_one_row() {
    let csv = ok(&with(&["bench"], &["--tiers", "3"]));
    let header = csv.lines().next().unwrap();
    assert_eq!(
        header,
        "tier,wall_seconds,total_candidates_checked,total_divisibility_checks,peak_candidate_set_size,generators"
    );
    assert_eq!(bench_rows(&csv).len(), 1);
}

#[test]
fn bench_tier4_checks_fewer_and_is_deterministic() {
    let args = [
        "bench", "-n", "18", "-m", "19", "-d", "2^19", "--tiers", "0,4",
    ];
    let a = bench_rows(&ok(&args));
    let b = bench_rows(&ok(&args));
    let checks = |rows: &[Vec<String>], i: usize| rows[i][3].parse::<u64>().unwrap();
    assert!(checks(&a, 1) < checks(&a, 0));
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x[0], y[0]);
        assert_eq!(x[2..], y[2..]);
    }
}

#[test]
fn bench_monotone_across_tiers() {
    let rows = bench_rows(&ok(&["bench", "-n", "14", "-m", "10", "-d", "2^10"]));
    let checks: Vec<u64> = rows.iter().map(|r| r[3].parse().unwrap()).collect();
    assert_eq!(rows.len(), Tier::ALL.len());
    assert!(checks.windows(2).all(|w| w[1] <= w[0]), "{checks:?}");
}
