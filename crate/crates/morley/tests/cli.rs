//! End-to-end tests of the command-line interface: exit codes, output
//! formats, environment handling, and agreement with the library's own
//! rendering of the same sweeps.

use std::path::PathBuf;
use std::process::{Command, Output};

use morley::grid::{self, VerifyRequest};
use morley::report::{self, ReportFormat};
use morley::congruence::ClaimId;

fn binary(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_morley"))
        .args(args)
        .output()
        .expect("binary launches")
}

fn binary_with_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_morley"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary launches")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn code(output: &Output) -> i32 {
    output.status.code().expect("binary exits normally")
}

fn temp_path(tag: &str) -> PathBuf {
    std::env::temp_dir().join(format!("morley-cli-{}-{tag}", std::process::id()))
}

#[test]
fn verify_passing_sweep_exits_zero_with_summary() {
    let output = binary(&["verify", "--claim", "th2", "--n", "3..19", "--k", "1..2"]);
    assert_eq!(code(&output), 0);
    let text = stdout(&output);
    assert!(text.lines().any(|l| l.starts_with("ok   th2 n=3 k=1")), "{text}");
    assert!(text.trim_end().ends_with("total 34 passed 18 failed 0 skipped 16"), "{text}");
}

#[test]
fn verify_failing_sweep_exits_one_and_prints_the_cells() {
    let output = binary(&[
        "verify", "--claim", "th3_1", "--variant", "statement", "--n", "5..7", "--k", "1",
    ]);
    assert_eq!(code(&output), 1);
    let text = stdout(&output);
    assert!(
        text.contains("FAIL th3_1 n=5 k=1 variant=statement | 4 != 54 (mod 125)"),
        "{text}"
    );
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["verify", "--claim", "bogus", "--n", "3..9"],
        &["verify", "--claim", "th2", "--n", "9..3"],
        &["verify", "--claim", "th2", "--n", "wat"],
        &["verify", "--claim", "th2", "--n", "3..9", "--format", "yaml"],
        &["compute", "nonsense", "--n", "5"],
        &["compute", "beta", "--n", "7"],
        &["selftest", "--only", "nonexistent"],
    ];
    for args in cases {
        let output = binary(args);
        assert_eq!(code(&output), 2, "args {args:?}: {}", stderr(&output));
    }
}

#[test]
fn written_reports_match_the_library_and_parse_back() {
    let mut request = VerifyRequest::new(ClaimId::Th2, (3, 61));
    request.k_range = Some((1, 2));
    let reference = grid::run(&request);

    for (name, format) in [("json", ReportFormat::Json), ("csv", ReportFormat::Csv)] {
        let path = temp_path(&format!("roundtrip-{name}"));
        let path_str = path.to_str().unwrap();
        let output = binary(&[
            "verify", "--claim", "th2", "--n", "3..61", "--k", "1..2",
            "--format", name, "--output", path_str,
        ]);
        assert_eq!(code(&output), 0);
        // With --output the report goes to the file and only the summary
        // stays on stdout.
        assert_eq!(stdout(&output).trim_end(), report::summary_line(&reference));

        let written = std::fs::read_to_string(&path).expect("report written");
        std::fs::remove_file(&path).ok();
        assert_eq!(written, report::render(&reference, format), "{name} bytes");

        let parsed = report::parse_results(&written, format).expect("parses back");
        let originals: Vec<_> = reference.results().cloned().collect();
        assert_eq!(parsed, originals, "{name} round-trip");
    }
}

#[test]
fn jobs_environment_variable_is_honored() {
    let args = ["verify", "--claim", "th2", "--n", "3..101", "--k", "1", "--format", "csv"];
    let flag = binary(&["verify", "--claim", "th2", "--n", "3..101", "--k", "1", "--format", "csv", "--jobs", "2"]);
    let env = binary_with_env(&args, "CONGRUENCE_JOBS", "2");
    assert_eq!(code(&flag), 0);
    assert_eq!(code(&env), 0);
    assert_eq!(stdout(&flag), stdout(&env));

    let garbled = binary_with_env(&args, "CONGRUENCE_JOBS", "three");
    assert_eq!(code(&garbled), 0, "an unreadable value falls back gracefully");
    assert!(stderr(&garbled).contains("CONGRUENCE_JOBS"), "{}", stderr(&garbled));
    assert_eq!(stdout(&garbled), stdout(&flag));
}

#[test]
fn compute_prints_exact_values() {
    let cases: &[(&[&str], &str)] = &[
        (&["compute", "beta", "--n", "7", "--e", "3"], "4 (mod 7)"),
        (&["compute", "euler-number", "--m", "6"], "-61"),
        (&["compute", "bernoulli", "--v", "12"], "-691/2730"),
        (&["compute", "bernoulli-poly", "--v", "3", "--x", "1/2"], "0"),
        (&["compute", "euler-quotient", "--r", "2", "--n", "7", "--w", "1"], "2 (mod 7)"),
        (&["compute", "totient", "--n", "45"], "24"),
        (
            &["compute", "combined-totient", "--n", "35", "--e", "4"],
            "-9321739789445367837195858155293200",
        ),
        (&["compute", "floor-totient", "--n", "35", "--e", "4"], "6"),
        (&["compute", "jacobi", "--n", "35", "--e", "4"], "-1"),
        (&["compute", "a-e", "--n", "7", "--e", "3"], "4 (mod 7)"),
        (&["compute", "sum", "--n", "7", "--e", "3"], "3 (mod 7)"),
        (&["compute", "t-product", "--n", "7", "--e", "2", "--k", "1"], "20 (mod 343)"),
    ];
    for (args, expected) in cases {
        let output = binary(args);
        assert_eq!(code(&output), 0, "args {args:?}: {}", stderr(&output));
        assert_eq!(stdout(&output).trim_end(), *expected, "args {args:?}");
    }

    let undefined = binary(&["compute", "jacobi", "--n", "6", "--e", "3"]);
    assert_eq!(code(&undefined), 1);
    assert!(stderr(&undefined).contains("not congruent"), "{}", stderr(&undefined));
}

#[test]
fn search_reports_only_failures() {
    let clean = binary(&["search", "--claim", "th2", "--n", "3..101", "--k", "1..2"]);
    assert_eq!(code(&clean), 0);
    assert!(stdout(&clean).is_empty(), "{}", stdout(&clean));

    let witnesses = binary(&[
        "search", "--claim", "th3_3", "--variant", "statement", "--n", "5..65", "--k", "1",
    ]);
    assert_eq!(code(&witnesses), 1);
    let text = stdout(&witnesses);
    assert!(text.lines().all(|l| l.starts_with("FAIL th3_3")), "{text}");
    assert!(text.lines().count() >= 2, "several witnesses in range: {text}");
}

#[test]
fn selftest_replays_the_frozen_examples() {
    let all = binary(&["selftest"]);
    assert_eq!(code(&all), 0);
    let text = stdout(&all);
    assert!(text.contains("mismatches"), "{text}");
    assert!(text.contains(" 0 mismatches"), "{text}");

    let listing = binary(&["selftest", "--list"]);
    assert_eq!(code(&listing), 0);
    for group in ["modular", "bernoulli", "harmonic", "products", "claims"] {
        assert!(stdout(&listing).contains(group), "missing group {group}");
    }

    let subset = binary(&["selftest", "--only", "bernoulli"]);
    assert_eq!(code(&subset), 0);
    let full_count: usize = stdout(&all)
        .split_whitespace()
        .next()
        .and_then(|w| w.parse().ok())
        .expect("count leads the summary");
    let subset_count: usize = stdout(&subset)
        .split_whitespace()
        .next()
        .and_then(|w| w.parse().ok())
        .expect("count leads the summary");
    assert!(subset_count < full_count, "{subset_count} < {full_count}");
    assert!(subset_count > 0);
}
