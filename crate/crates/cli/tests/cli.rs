//! End-to-end tests of the `midspec` binary: exit codes, output goldens,
//! determinism, and file payloads.

use midspec::graphs::build_middle_cube;
use midspec::hamiltonian::{verify_cycle, CycleCertificate};
use midspec::linalg::RationalMatrix;
use std::process::{Command, Output};

/// Invocation helper; scrubs the MIDSPEC_* environment so test runs do not
/// depend on the caller's shell.
fn midspec(args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_midspec"));
    cmd.env_remove("MIDSPEC_MAX_K");
    cmd.env_remove("MIDSPEC_BUDGET");
    cmd.args(args);
    cmd.output().expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

const TABLE_KMAX4: &str = concat!(
    "n  -5  -4  -3  -2  -1   1   2   3  4  5\n",
    "3               1   2   2   1\n",
    "5           1   4   5   5   4   1\n",
    "7       1   6  14  14  14  14   6  1\n",
    "9   1   8  27  48  42  42  48  27  8  1\n",
);

#[test]
fn table_grid_matches_golden() {
    let out = midspec(&["table", "--kmax", "4"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_str(&out), TABLE_KMAX4);
}

#[test]
fn table_oeis_prefix_matches() {
    let out = midspec(&["table", "--kmax", "3", "--oeis"]);
    let text = stdout_str(&out);
    assert!(text.contains("sequence: 1 2 1 4 5 1 6 14 14"));
    assert!(text.contains("oeis_prefix_match: true"));
}

#[test]
fn spectrum_csv_golden() {
    let out = midspec(&["spectrum", "--k", "2", "--format", "csv"]);
    assert_eq!(
        stdout_str(&out),
        "eigenvalue,multiplicity\n-3,1\n-2,4\n-1,5\n1,5\n2,4\n3,1\n"
    );
}

#[test]
fn spectrum_json_shape() {
    let out = midspec(&["spectrum", "--k", "1", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["order"], 6);
    let entries = doc["eigenvalues"].as_array().unwrap();
    assert_eq!(entries.len(), 4);
    // Values ascend and multiplicities are decimal strings.
    let values: Vec<i64> = entries.iter().map(|e| e["value"].as_i64().unwrap()).collect();
    assert_eq!(values, vec![-2, -1, 1, 2]);
    assert!(entries.iter().all(|e| e["multiplicity"].is_string()));
}

#[test]
fn spectrum_johnson_family() {
    let out = midspec(&[
        "spectrum", "--family", "johnson", "--n", "5", "--m", "2", "--format", "csv",
    ]);
    assert_eq!(
        stdout_str(&out),
        "eigenvalue,multiplicity\n-2,5\n1,4\n6,1\n"
    );
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(exit_code(&midspec(&["spectrum", "--k", "0"])), 1);
    assert_eq!(exit_code(&midspec(&["spectrum", "--family", "johnson"])), 1);
    assert_eq!(exit_code(&midspec(&["table", "--kmax", "0"])), 1);
    assert_eq!(exit_code(&midspec(&["eigenbasis", "--k", "2", "--r", "3"])), 1);
    assert_eq!(exit_code(&midspec(&["no-such-command"])), 1);
    assert_eq!(exit_code(&midspec(&["table"])), 1); // missing required flag
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(exit_code(&midspec(&["--help"])), 0);
    assert_eq!(exit_code(&midspec(&["--version"])), 0);
    assert_eq!(exit_code(&midspec(&["verify", "--help"])), 0);
}

#[test]
fn verify_all_checks_pass_for_small_k() {
    let out = midspec(&["verify", "--k", "1"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_str(&out);
    for name in ["eigen", "msq", "moments", "rank", "charpoly"] {
        assert!(text.contains(&format!("{name}: pass")), "missing {name}: {text}");
    }
    assert!(text.contains("result: pass"));
}

#[test]
fn verify_over_cap_skips_and_allow_skip_downgrades() {
    let out = midspec(&["verify", "--k", "6", "--checks", "charpoly"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stdout_str(&out).contains("skipped: over cap"));

    let out = midspec(&["verify", "--k", "6", "--checks", "charpoly", "--allow-skip"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout_str(&out).contains("skipped: over cap"));
}

#[test]
fn verify_json_report_shape_and_determinism() {
    let run = || {
        let out = midspec(&["verify", "--k", "1", "--format", "json"]);
        assert_eq!(exit_code(&out), 0);
        let mut doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
        assert_eq!(doc["command"], "verify");
        assert_eq!(doc["parameters"]["k"], "1");
        assert!(doc["checks"].as_array().is_some_and(|c| !c.is_empty()));
        assert_eq!(doc["result"], "pass");
        assert!(doc["elapsed_ms"].is_number());
        // elapsed_ms is the one nondeterministic field; drop it before
        // comparing runs.
        doc.as_object_mut().unwrap().remove("elapsed_ms");
        doc
    };
    assert_eq!(run(), run());
}

#[test]
fn verify_csv_lists_checks() {
    let out = midspec(&["verify", "--k", "1", "--checks", "msq,rank", "--format", "csv"]);
    let text = stdout_str(&out);
    assert!(text.starts_with("check,status,detail\n"));
    assert!(text.contains("msq,pass,"));
    assert!(text.contains("rank,pass,"));
    assert!(text.ends_with("result,pass,\n"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = midspec(&["table", "--kmax", "3"]);
    let b = midspec(&["table", "--kmax", "3"]);
    assert_eq!(a.stdout, b.stdout);

    let a = midspec(&["hamilton", "--k", "2", "--quiet"]);
    let b = midspec(&["hamilton", "--k", "2", "--quiet"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn quiet_drops_elapsed_line() {
    let noisy = stdout_str(&midspec(&["verify", "--k", "1", "--checks", "msq"]));
    let quiet = stdout_str(&midspec(&["verify", "--k", "1", "--checks", "msq", "--quiet"]));
    assert!(noisy.contains("elapsed_ms:"));
    assert!(!quiet.contains("elapsed_ms:"));
}

#[test]
fn eigenbasis_block_file_roundtrips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("block.txt");
    let out = midspec(&["eigenbasis", "--k", "3", "--r", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let body = std::fs::read_to_string(&path).unwrap();
    let (header, matrix_text) = body.split_once('\n').unwrap();
    assert_eq!(header, "3 2 2 14 70");
    let m = RationalMatrix::from_text(matrix_text).unwrap();
    assert_eq!((m.rows(), m.cols()), (14, 70));
}

#[test]
fn eigenbasis_negative_block_reflects_eigenvalue() {
    let out = midspec(&["eigenbasis", "--k", "2", "--r", "2", "--negative", "--quiet"]);
    let text = stdout_str(&out);
    let header: Vec<&str> = text.lines().next().unwrap().split(' ').collect();
    // k r eigenvalue rows cols
    assert_eq!(header, vec!["2", "2", "-1", "5", "20"]);
}

#[test]
fn eigenbasis_base_row_is_all_ones() {
    let out = midspec(&["eigenbasis", "--k", "1", "--r", "0", "--quiet"]);
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "1 0 2 1 6");
    assert_eq!(lines[1], "1 6");
    assert_eq!(lines[2], "1 1 1 1 1 1");
}

#[test]
fn hamilton_certificate_file_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cycle.json");
    let out = midspec(&[
        "hamilton", "--k", "2", "--labels", "--quiet", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let vertices: Vec<u32> = doc["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap() as u32)
        .collect();
    let cert = CycleCertificate {
        vertices,
        graph_order: doc["graph_order"].as_u64().unwrap() as usize,
    };
    let g = build_middle_cube(2).unwrap();
    assert!(verify_cycle(&g, &cert));

    // The label walk is a revolving door: consecutive subsets differ by
    // exactly one element, cyclically.
    let labels: Vec<u64> = doc["labels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|set| {
            set.as_array()
                .unwrap()
                .iter()
                .fold(0u64, |mask, e| mask | 1 << (e.as_u64().unwrap() - 1))
        })
        .collect();
    assert_eq!(labels.len(), 20);
    for i in 0..labels.len() {
        let step = labels[i] ^ labels[(i + 1) % labels.len()];
        assert_eq!(step.count_ones(), 1, "step {i} changes exactly one element");
    }
}

#[test]
fn hamilton_budget_exhaustion_exits_two() {
    let out = midspec(&["hamilton", "--k", "3", "--budget", "1"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stdout_str(&out).contains("unknown: budget exhausted"));
}

#[test]
fn env_budget_is_honored_and_flag_wins() {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_midspec"));
    cmd.env_remove("MIDSPEC_MAX_K");
    cmd.env("MIDSPEC_BUDGET", "1");
    cmd.args(["hamilton", "--k", "2", "--quiet"]);
    let out = cmd.output().unwrap();
    assert_eq!(exit_code(&out), 2);

    let mut cmd = Command::new(env!("CARGO_BIN_EXE_midspec"));
    cmd.env_remove("MIDSPEC_MAX_K");
    cmd.env("MIDSPEC_BUDGET", "1");
    cmd.args(["hamilton", "--k", "2", "--budget", "100000", "--quiet"]);
    let out = cmd.output().unwrap();
    assert_eq!(exit_code(&out), 0);
}

#[test]
fn env_max_k_caps_eigenbasis() {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_midspec"));
    cmd.env_remove("MIDSPEC_BUDGET");
    cmd.env("MIDSPEC_MAX_K", "2");
    cmd.args(["eigenbasis", "--k", "3", "--r", "1"]);
    let out = cmd.output().unwrap();
    assert_eq!(exit_code(&out), 1);
}

#[test]
fn export_headers_match_expected_sizes() {
    let middle = stdout_str(&midspec(&["export", "--family", "middle", "--k", "1"]));
    assert!(middle.starts_with("p 6 6\n"));
    let johnson = stdout_str(&midspec(&["export", "--family", "johnson", "--n", "5", "--m", "2"]));
    assert!(johnson.starts_with("p 10 30\n"));
    let cube = stdout_str(&midspec(&["export", "--family", "hypercube", "--n", "3"]));
    assert!(cube.starts_with("p 8 12\n"));
}

#[test]
fn export_csv_and_json_formats() {
    let csv = stdout_str(&midspec(&[
        "export", "--family", "middle", "--k", "1", "--format", "csv",
    ]));
    assert!(csv.starts_with("u,v\n0,3\n"));
    assert_eq!(csv.lines().count(), 7); // header + 6 edges

    let json = stdout_str(&midspec(&[
        "export", "--family", "middle", "--k", "1", "--format", "json",
    ]));
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(doc["num_vertices"], 6);
    assert_eq!(doc["num_edges"], 6);
    assert_eq!(doc["edges"].as_array().unwrap().len(), 6);
    assert_eq!(doc["bipartition"].as_array().unwrap().len(), 6);
}

#[test]
fn out_file_matches_stdout_payload() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spectrum.csv");
    let direct = stdout_str(&midspec(&["spectrum", "--k", "2", "--format", "csv"]));
    let filed = midspec(&[
        "spectrum", "--k", "2", "--format", "csv", "--quiet", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&filed), 0);
    assert!(filed.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct);
}
