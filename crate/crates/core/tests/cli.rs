//! End-to-end checks of the binary: frozen outputs, machine formats,
//! determinism, and exit codes.

use std::io::Write as _;
use std::process::{Command, Output, Stdio};

use sturm::bijection::IntervalPartition;
use sturm::QuadraticNumber;

fn sturm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sturm"))
        .args(args)
        .output()
        .expect("binary spawns")
}

fn stdout_of(args: &[&str]) -> String {
    let out = sturm(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("output is utf-8")
}

#[test]
fn generate_frozen_outputs() {
    assert_eq!(
        stdout_of(&["generate", "--alpha", "fib", "--length", "21"]),
        "abaababaabaababaababa\n"
    );
    assert_eq!(stdout_of(&["generate", "--alpha", "fib", "--length", "0"]), "");
    assert_eq!(
        stdout_of(&["generate", "--alpha", "quad:-2,1,1,5", "--length", "10"]),
        "bbbabbbabb\n"
    );
}

#[test]
fn fibword_agrees_with_generate() {
    assert_eq!(stdout_of(&["fibword", "7"]), "abaababaabaababaababa\n");
    assert_eq!(stdout_of(&["fibword", "0"]), "b\n");
    assert_eq!(stdout_of(&["fibword", "1"]), "a\n");
}

#[test]
fn period_reports_minimal_factorizations() {
    let out = stdout_of(&["period", "abaab", "--format", "csv"]);
    assert_eq!(out.lines().next().unwrap(), "m,h,blocks,tail,exponent,exponent_dec,block_parikh");
    assert_eq!(out.lines().nth(1).unwrap(), "2,1,2,0,5/2,2.500,\"(1, 1)\"");

    let out = stdout_of(&["period", "a", "--format", "csv"]);
    assert!(out.lines().nth(1).unwrap().starts_with("1,0,"));

    // the 7th Fibonacci word has minimal abelian period 5
    let fib7 = stdout_of(&["fibword", "7"]);
    let out = stdout_of(&["period", fib7.trim(), "--format", "csv"]);
    assert!(out.lines().nth(1).unwrap().starts_with("5,0,4,1,21/5,"));

    // repetition tier needs exponent >= 2, which "ab" cannot reach
    assert_eq!(stdout_of(&["period", "ab", "--tier", "repetition"]), "none\n");
}

#[test]
fn period_reads_stdin_when_no_argument() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sturm"))
        .args(["period", "--format", "csv"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(b"abaab\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().nth(1).unwrap(), "2,1,2,0,5/2,2.500,\"(1, 1)\"");
}

#[test]
fn bijection_flags_exactly_the_interval_containing_alpha() {
    let out = stdout_of(&["bijection", "--alpha", "fib", "-m", "6", "--format", "csv"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 8, "header plus m+1 rows");
    let flagged: Vec<&&str> = lines[1..].iter().filter(|l| l.ends_with(",yes")).collect();
    assert_eq!(flagged.len(), 1);
    assert!(flagged[0].starts_with("4,"));
    assert!(flagged[0].contains(",abaaba,"));

    let out = stdout_of(&["bijection", "--alpha", "fib", "-m", "1"]);
    assert_eq!(out.lines().count(), 3, "two intervals at m = 1");

    // endpoint renderings fixed by the default three digits
    let out = stdout_of(&["bijection", "--alpha", "fib", "-m", "2", "--format", "csv"]);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[1].contains(",0.382,") && lines[1].contains(",ba,"));
    assert!(lines[2].contains(",0.764,") && lines[2].contains(",ab,"));
    assert!(lines[3].ends_with(",aa,v1,no"));
}

#[test]
fn prefix_and_scan_report_known_exact_values() {
    let out = stdout_of(&["prefix", "--alpha", "fib", "-m", "2", "--format", "csv"]);
    assert_eq!(out.lines().nth(1).unwrap(), "8,2,1,3,1,4/1,4.000,\"(1, 1)\"");

    let out = stdout_of(&["scan", "--length", "1000", "--max-m", "5", "--format", "csv"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "m,exponent,exponent_dec,length,start,head,blocks,tail");
    assert!(lines[1].starts_with("1,2/1,"));
    assert!(lines[5].starts_with("5,63/5,"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let cases: [&[&str]; 4] = [
        &["verify", "table2", "--format", "json"],
        &["scan", "--length", "300", "--max-m", "5"],
        &["bijection", "--alpha", "quad:-1,1,1,2", "-m", "9", "--format", "csv"],
        &["verify", "corollary5", "--format", "csv"],
    ];
    for args in cases {
        let first = sturm(args);
        let second = sturm(args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert_eq!(first.status.code(), second.status.code(), "{args:?}");
    }
}

#[test]
fn json_output_reparses_to_the_exact_library_values() {
    let out = stdout_of(&["bijection", "--alpha", "fib", "-m", "6", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_str(&out).expect("valid json");
    let rows = rows.as_array().unwrap();
    let partition = IntervalPartition::new(&QuadraticNumber::golden_slope(), 6).unwrap();
    assert_eq!(rows.len(), 7);
    for (k, row) in rows.iter().enumerate() {
        let (expected_left, expected_right) = partition.interval(k).unwrap();
        let left: QuadraticNumber = row["left"].as_str().unwrap().parse().unwrap();
        let right: QuadraticNumber = row["right"].as_str().unwrap().parse().unwrap();
        assert_eq!(&left, expected_left, "k = {k}");
        assert_eq!(&right, expected_right, "k = {k}");
        assert_eq!(
            row["factor"].as_str().unwrap(),
            partition.factor(k).unwrap().to_string()
        );
        assert_eq!(row["k"].as_u64().unwrap(), k as u64);
    }
}

#[test]
fn exit_codes_separate_usage_errors_from_success() {
    // rational slope without the periodic opt-in
    let out = sturm(&["generate", "--alpha", "ratio:1/3", "--length", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--periodic"));

    // with the opt-in the same slope works
    assert_eq!(
        stdout_of(&["generate", "--alpha", "ratio:2/5", "--length", "10", "--periodic"]),
        "bababbabab\n"
    );

    let out = sturm(&["verify", "bogus"]);
    assert_eq!(out.status.code(), Some(2));

    let out = sturm(&["verify", "identity", "--j", "1..500"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1..200"));

    let out = sturm(&["verify", "identity", "--j", "1..6"]);
    assert_eq!(out.status.code(), Some(0));

    // clap-level usage error: unknown subcommand
    let out = sturm(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}
