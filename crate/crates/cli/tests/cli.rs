//! End-to-end runs of the installed binary: exit codes, record wire shape,
//! format resolution order, config files, and output routing.

use std::process::Command;

fn run_with_env(args: &[&str], envs: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_binomlab"));
    cmd.args(args);
    // The ambient environment must never steer a test.
    cmd.env_remove("BINOMLAB_FORMAT");
    for (key, value) in envs {
        cmd.env(key, value);
    }
    let out = cmd.output().expect("binary must run");
    (
        out.status.code().expect("no exit code"),
        String::from_utf8(out.stdout).expect("stdout is utf-8"),
        String::from_utf8(out.stderr).expect("stderr is utf-8"),
    )
}

fn binomlab(args: &[&str]) -> (i32, String, String) {
    run_with_env(args, &[])
}

fn parse_line(line: &str) -> serde_json::Value {
    serde_json::from_str(line).unwrap_or_else(|e| panic!("bad json line {line:?}: {e}"))
}

#[test]
fn isprime_exit_codes_and_records() {
    let (code, stdout, _) = binomlab(&["isprime", "7"]);
    assert_eq!(code, 0);
    let record = parse_line(stdout.trim());
    assert_eq!(record["extra"]["verdict"], "prime");
    assert_eq!(record["holds"], true);

    let (code, stdout, _) = binomlab(&["isprime", "12"]);
    assert_eq!(code, 3);
    let record = parse_line(stdout.trim());
    assert_eq!(record["lhs"], "3");
    assert_eq!(record["rhs"], "1");
    assert_eq!(record["modulus"], "4");
    assert_eq!(record["extra"]["witness_n"], "14");
    assert_eq!(record["extra"]["verdict"], "composite");

    let (code, stdout, stderr) = binomlab(&["isprime", "1"]);
    assert_eq!(code, 1);
    assert!(stdout.is_empty(), "errors must not emit records: {stdout}");
    assert!(stderr.contains("p > 1 required"), "got: {stderr}");
}

#[test]
fn check_exit_three_only_when_the_congruence_fails() {
    // Composite modulus that happens to satisfy the congruence at this n.
    let (code, stdout, _) = binomlab(&["check", "thm21", "--n", "100", "--p", "9"]);
    assert_eq!(code, 0);
    assert_eq!(parse_line(stdout.trim())["holds"], true);

    let (code, stdout, _) = binomlab(&["check", "thm21", "--n", "25", "--p", "10"]);
    assert_eq!(code, 3);
    let record = parse_line(stdout.trim());
    assert_eq!(record["lhs"], "0");
    assert_eq!(record["rhs"], "2");
    assert_eq!(record["holds"], false);
}

#[test]
fn check_hypothesis_violations_are_usage_errors() {
    let (code, _, stderr) = binomlab(&["check", "bailey-np-rp", "--n", "2", "--r", "1", "--p", "3"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("p >= 5"), "got: {stderr}");

    let (code, _, stderr) = binomlab(&["check", "thm22", "--n", "1", "--p", "2"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("unknown theorem id"), "got: {stderr}");

    let (code, _, stderr) = binomlab(&["check", "thm21", "--n", "5"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("requires --p"), "got: {stderr}");
}

#[test]
fn check_mestrovic_flags_counterexamples_with_exit_three() {
    let (code, stdout, _) = binomlab(&["check", "mestrovic", "--d", "2", "--q", "3"]);
    assert_eq!(code, 3);
    let record = parse_line(stdout.trim());
    assert_eq!(record["extra"]["counterexample_n"], "2");
    assert_eq!(record["extra"]["counterexample_m"], "1");

    let (code, stdout, _) = binomlab(&["check", "mestrovic", "--d", "4", "--q", "2"]);
    assert_eq!(code, 0);
    assert_eq!(parse_line(stdout.trim())["holds"], true);
}

#[test]
fn format_resolution_order() {
    let (_, stdout, _) = run_with_env(
        &["check", "thm21", "--n", "10", "--p", "7"],
        &[("BINOMLAB_FORMAT", "csv")],
    );
    assert!(stdout.starts_with("theorem,"), "env var must select csv: {stdout}");

    let (_, stdout, _) = run_with_env(
        &["check", "thm21", "--n", "10", "--p", "7", "--format", "json-lines"],
        &[("BINOMLAB_FORMAT", "csv")],
    );
    assert!(stdout.starts_with('{'), "flag must beat the env var: {stdout}");

    let (code, _, stderr) = run_with_env(
        &["check", "thm21", "--n", "10", "--p", "7"],
        &[("BINOMLAB_FORMAT", "xml")],
    );
    assert_eq!(code, 1);
    assert!(stderr.contains("BINOMLAB_FORMAT"), "got: {stderr}");
}

#[test]
fn output_flag_routes_the_body_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.jsonl");
    let (code, stdout, _) = binomlab(&[
        "check", "thm21", "--n", "10", "--p", "7",
        "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty(), "body must go to the file: {stdout}");
    let body = std::fs::read_to_string(&path).unwrap();
    assert_eq!(parse_line(body.trim())["theorem"], "thm21");
}

#[test]
fn sweep_keeps_records_on_stdout_and_summary_on_stderr() {
    let (code, stdout, stderr) = binomlab(&[
        "sweep", "--theorem", "thm21", "--p-min", "2", "--p-max", "10", "--n-max", "20",
    ]);
    assert_eq!(code, 0, "expected composite failures, exit stays 0: {stderr}");
    assert_eq!(stdout.lines().count(), 9 * 21);
    assert!(stdout.lines().all(|l| l.starts_with('{')));
    let summary = stderr.trim();
    assert!(
        summary.starts_with("checked=189 held=") && summary.contains("unexpected=0"),
        "got: {summary}"
    );
    // Composite moduli in [2,10] must fail somewhere.
    assert!(summary.contains("failed="), "got: {summary}");
    let failed: u64 = summary
        .split("failed=")
        .nth(1)
        .unwrap()
        .split_whitespace()
        .next()
        .unwrap()
        .parse()
        .unwrap();
    assert!(failed > 0, "no composite failure in {summary}");
}

#[test]
fn sweep_config_file_supplies_settings_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.conf");
    std::fs::write(
        &path,
        "# floor-congruence grid\ntheorem = thm21\np-min = 2\np-max = 5\nn-max = 4\nformat = csv\n",
    )
    .unwrap();

    let (code, stdout, _) = binomlab(&["sweep", "--config", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("theorem,n,p,"), "config format ignored: {stdout}");
    assert_eq!(stdout.lines().count(), 1 + 4 * 5, "header plus one row per cell");

    // Flags beat the file: narrower n range, json-lines again.
    let (_, stdout, _) = binomlab(&[
        "sweep", "--config", path.to_str().unwrap(),
        "--n-max", "1", "--format", "json-lines",
    ]);
    assert_eq!(stdout.lines().count(), 4 * 2);
    assert!(stdout.starts_with('{'));
}

#[test]
fn witness_needs_a_composite() {
    let (code, stdout, _) = binomlab(&["witness", "100"]);
    assert_eq!(code, 3, "a constructed refutation reports the failed congruence");
    let record = parse_line(stdout.trim());
    assert_eq!(record["extra"]["witness_n"], "102");
    assert_eq!(record["holds"], false);

    let (code, _, stderr) = binomlab(&["witness", "7"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("prime"), "got: {stderr}");
}

#[test]
fn binom_mod_reports_route_and_residue() {
    let (code, stdout, _) = binomlab(&["binom-mod", "1000", "300", "13"]);
    assert_eq!(code, 0);
    let record = parse_line(stdout.trim());
    assert_eq!(record["lhs"], "10");
    assert_eq!(record["extra"]["route"], "digit-product");

    let (_, stdout, _) = binomlab(&["binom-mod", "14", "12", "12"]);
    let record = parse_line(stdout.trim());
    assert_eq!(record["lhs"], "7");
    assert_eq!(record["extra"]["route"], "exact-product");

    let (_, stdout, _) = binomlab(&["binom-mod", "5", "9", "6"]);
    let record = parse_line(stdout.trim());
    assert_eq!(record["lhs"], "0", "k > n is zero by convention");
}

#[test]
fn caps_are_flag_adjustable_refusals() {
    let (code, _, stderr) = binomlab(&["isprime", "1000003", "--max-p", "1000"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("--max-p"), "got: {stderr}");

    // Raising the cap admits the same input.
    let (code, _, _) = binomlab(&["isprime", "1009", "--max-p", "2000"]);
    assert_eq!(code, 0);

    let (code, _, stderr) = binomlab(&["binom-mod", "60000", "30000", "15", "--max-n", "100", "--max-rows", "100"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("--max-n") && stderr.contains("--max-rows"), "got: {stderr}");
}

#[test]
fn json_lines_records_round_trip_through_serde() {
    let (_, stdout, _) = binomlab(&[
        "sweep", "--theorem", "mestrovic",
        "--d-min", "2", "--d-max", "4", "--q-min", "2", "--q-max", "4",
    ]);
    for line in stdout.lines() {
        let value = parse_line(line);
        let reserialized = serde_json::to_string(&value).unwrap();
        let reparsed: serde_json::Value = serde_json::from_str(&reserialized).unwrap();
        assert_eq!(value, reparsed);
        assert_eq!(value["theorem"], "mestrovic");
        assert!(value["params"]["d"].is_string(), "numbers ride as strings");
    }
}

#[test]
fn help_and_version_exit_zero() {
    let (code, stdout, _) = binomlab(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("sweep"));

    let (code, _, _) = binomlab(&["--version"]);
    assert_eq!(code, 0);

    let (code, _, _) = binomlab(&["frobnicate"]);
    assert_eq!(code, 1, "unknown subcommand is a usage error");
}
