//! End-to-end tests of the command-line binary: exit codes, readable
//! output, JSON envelopes, and byte-stability of the bundled graphs.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use zarank::builtin::BuiltinId;
use zarank::certificate::{FifteenSquareReport, RankCertificate};
use zarank::conditions::ConditionReport;
use zarank::form::{canonical_decomposition, BiquadraticForm};
use zarank::graph::to_canonical_json;
use zarank::report::{Report, ReportKind};
use zarank::search::{SearchResult, FLAG_BUDGET_EXHAUSTED, FLAG_EXCEEDS_PUBLISHED};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zarank"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn parse_report(out: &Output) -> Report {
    let text = stdout_of(out);
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("bad report envelope: {e}\n{text}"))
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().expect("temp file");
    f.write_all(contents.as_bytes()).expect("write temp file");
    f
}

#[test]
fn verify_passes_on_the_valid_builtins() {
    for name in ["builtin:g53", "builtin:g55", "builtin:q55"] {
        let out = run(&["verify", name]);
        assert_eq!(exit_code(&out), 0, "{name}: {}", stderr_of(&out));
        let text = stdout_of(&out);
        assert!(text.contains("result: PASS"), "{name}:\n{text}");
        assert!(!text.contains("FAIL "), "{name}:\n{text}");
    }
}

#[test]
fn verify_rejects_the_6x4_builtin_with_exit_one() {
    let out = run(&["verify", "builtin:g64"]);
    assert_eq!(exit_code(&out), 1);
    let text = stdout_of(&out);
    assert!(text.contains("FAIL  three-edge-saturation on 3-edge (2, 2)+(5, 3)+(6, 1)"));
    assert!(text.contains("(2, 1), (2, 3), (5, 1), (5, 2), (6, 2), (6, 3)"));
    assert!(text.contains("FAIL  three-edge-extension on 3-edge (2, 2)+(5, 3)+(6, 1)"));
    assert!(text.contains("result: FAIL (2 of 9 checks failed)"));
    assert!(
        text.contains("rows doubling as K4 edge labels: 1=12 2=13 3=14 4=23 5=24 6=34"),
        "both row labelings should be shown:\n{text}"
    );
}

#[test]
fn verify_scope_flag_switches_the_opposite_cell_rule() {
    let literal = run(&["verify", "builtin:g55"]);
    assert_eq!(exit_code(&literal), 0);
    let occupancy = run(&["verify", "builtin:g55", "--opposite-scope", "any-edge"]);
    assert_eq!(
        exit_code(&occupancy),
        1,
        "counting 3-edge halves as occupied makes a 5x5 opposite cell pair fully blocked"
    );
    assert!(stdout_of(&occupancy).contains("FAIL  two-edge-restriction"));
}

#[test]
fn verify_json_envelope_carries_every_condition_report() {
    let out = run(&["verify", "builtin:g55", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let report = parse_report(&out);
    assert_eq!(report.kind, ReportKind::Verify);
    assert_eq!(report.claims.len(), 1);
    let reports: Vec<ConditionReport> = report.payload_as().expect("payload shape");
    assert_eq!(reports.len(), 9);
    assert!(reports.iter().all(|r| r.passed));
}

#[test]
fn certify_reports_the_expected_ranks() {
    for (name, rank) in [("builtin:g53", 10), ("builtin:g55", 16)] {
        let out = run(&["certify", name, "--json"]);
        assert_eq!(exit_code(&out), 0, "{name}: {}", stderr_of(&out));
        let report = parse_report(&out);
        assert_eq!(report.kind, ReportKind::Certify);
        let cert: RankCertificate = report.payload_as().expect("payload shape");
        assert!(cert.valid);
        assert_eq!(cert.claimed_rank, Some(rank));
        assert_eq!(cert.decomposition_rank, Some(rank));
    }
}

#[test]
fn certify_declines_a_rank_claim_for_the_6x4_builtin() {
    let out = run(&["certify", "builtin:g64"]);
    assert_eq!(exit_code(&out), 1);
    let text = stdout_of(&out);
    assert!(text.contains("conditions: 2 FAILED"));
    assert!(
        text.contains("decomposition rank: 16 (edge count 16)"),
        "the algebra still holds even though a condition fails:\n{text}"
    );
    assert!(text.contains("expansion: verified exactly"));
    assert!(text.contains("certificate: INVALID (no rank claim)"));
}

#[test]
fn certify_q55_emits_the_fifteen_square_report() {
    let out = run(&["certify", "builtin:q55"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("squares: 15"));
    assert!(text.contains("independent rank: 15"));
    assert!(text.contains("base subspace dimension: 14"));
    assert!(text.contains("report: VALID"));

    let out = run(&["certify", "builtin:q55", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let q: FifteenSquareReport = parse_report(&out).payload_as().expect("payload shape");
    assert!(q.valid && q.expansion_equal && q.extra_vector_outside_base);
    assert_eq!((q.square_count, q.independent_rank), (15, 15));
    assert_eq!((q.base_rank, q.stacked_rank), (14, 15));
}

#[test]
fn compute_prints_known_values() {
    let out = run(&["compute", "z", "5", "5"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout_of(&out).contains("z(5,5) = 12 (exhaustive)"));

    let out = run(&["compute", "z3l", "5", "3"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout_of(&out).contains("z3l(5,3) = 10 (exhaustive)"));
}

#[test]
fn compute_guards_oversized_grids_with_exit_two() {
    let out = run(&["compute", "z3a", "9", "9"]);
    assert_eq!(exit_code(&out), 2);
    let err = stderr_of(&out);
    assert!(err.contains("81 cells"), "{err}");
}

#[test]
fn compute_json_payload_is_a_search_result_with_seed_and_flags() {
    let out = run(&["compute", "zl", "5", "3", "--json", "--seed", "7"]);
    assert_eq!(exit_code(&out), 0);
    let report = parse_report(&out);
    assert_eq!(report.kind, ReportKind::Search);
    assert_eq!(report.seed, Some(7));
    assert_eq!(report.claims, vec!["zl(5,3) = 10".to_string()]);
    let result: SearchResult = report.payload_as().expect("payload shape");
    assert_eq!(result.value, 10);
    assert!(result.exhaustive);
    assert!(result.flags.iter().any(|f| f == FLAG_EXCEEDS_PUBLISHED));
}

#[test]
fn compute_budget_flag_downgrades_the_claim_to_a_bound() {
    let out = run(&["compute", "z3a", "4", "4", "--budget-nodes", "10", "--json"]);
    assert_eq!(exit_code(&out), 0);
    let report = parse_report(&out);
    assert_eq!(report.claims.len(), 1);
    assert!(report.claims[0].starts_with("z3a(4,4) >= "), "{:?}", report.claims);
    let result: SearchResult = report.payload_as().expect("payload shape");
    assert!(!result.exhaustive);
    assert!(result.flags.iter().any(|f| f == FLAG_BUDGET_EXHAUSTED));
}

#[test]
fn expand_prints_exact_polynomial_text() {
    let file = temp_file(r#"{"m":1,"n":1,"e1":[[1,1]],"e2":[],"e3":[]}"#);
    let out = run(&["expand", file.path().to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_of(&out).trim(), "x1^2 y1^2");

    let out = run(&["expand", "builtin:g53"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("2 x2 x3 y1 y2"), "2-edge cross term:\n{text}");
    assert!(text.contains("2 x2 x5 y2 y3"), "3-edge cross term:\n{text}");
    assert!(text.contains("x4^2 y1^2"), "1-edge square term:\n{text}");
}

#[test]
fn expand_accepts_a_decomposition_array() {
    let g = BuiltinId::G53.graph();
    let d = canonical_decomposition(&g).expect("decomposes");
    let file = temp_file(&serde_json::to_string(&d).expect("serializes"));

    let from_decomposition = run(&["expand", file.path().to_str().unwrap(), "--json"]);
    assert_eq!(exit_code(&from_decomposition), 0);
    let from_graph = run(&["expand", "builtin:g53", "--json"]);

    let a: BiquadraticForm = parse_report(&from_decomposition)
        .payload_as()
        .expect("payload shape");
    let b: BiquadraticForm = parse_report(&from_graph).payload_as().expect("payload shape");
    assert_eq!(a, b);
}

#[test]
fn expand_rejects_a_graph_with_reused_cells() {
    let file = temp_file(r#"{"m":2,"n":2,"e1":[[1,1]],"e2":[[[1,1],[2,2]]],"e3":[]}"#);
    let out = run(&["expand", file.path().to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_of(&out).contains("cannot expand"));
}

#[test]
fn malformed_json_reports_the_position_and_exits_two() {
    let file = temp_file(r#"{"m":2,"n":2,"e1":[[1,"#);
    let out = run(&["verify", file.path().to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    let err = stderr_of(&out);
    assert!(
        err.contains("line") && err.contains("column"),
        "parse errors must locate the problem: {err}"
    );
}

#[test]
fn unknown_builtins_and_missing_files_exit_two() {
    let out = run(&["verify", "builtin:g99"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_of(&out).contains("unknown builtin"));

    let out = run(&["certify", "/no/such/file.json"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_of(&out).contains("cannot read"));
}

#[test]
fn usage_errors_from_the_parser_exit_two() {
    let out = run(&["compute", "zq", "5", "3"]);
    assert_eq!(exit_code(&out), 2);

    let out = run(&["frobnicate"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn repeated_invocations_print_identical_bytes() {
    let args = ["compute", "z3l", "5", "3", "--json"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(exit_code(&first), 0);
    assert_eq!(first.stdout, second.stdout);

    let threaded = run(&["compute", "z3l", "5", "3", "--json", "--threads", "2"]);
    let first_report = parse_report(&first);
    let threaded_report = parse_report(&threaded);
    let a: SearchResult = first_report.payload_as().expect("payload shape");
    let b: SearchResult = threaded_report.payload_as().expect("payload shape");
    assert_eq!(a.value, b.value);
    assert_eq!(a.witnesses, b.witnesses);
    assert_eq!(a.nodes_explored, b.nodes_explored);
}

fn golden_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"))
}

#[test]
fn builtin_serializations_match_the_golden_files() {
    for id in BuiltinId::ALL {
        let json = to_canonical_json(&id.graph());
        let path = golden_path(id.name());
        if std::env::var_os("UPDATE_GOLDEN").is_some() {
            std::fs::write(&path, &json).expect("write golden file");
        }
        let want = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("missing golden file {}: {e}", path.display()));
        assert_eq!(
            json, want,
            "serialization of builtin {id} drifted; inspect tests/golden/{}.json",
            id.name()
        );
    }
}
