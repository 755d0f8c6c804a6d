use std::path::PathBuf;
use std::process::{Command, Output};

use isospec::report::{Report, Status};

fn isospec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isospec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_ring_passes() {
    let o = isospec(&["verify", "--suite", "ring", "--genus", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 fail"));
}

#[test]
fn verify_matrix_lists_the_trace_flag() {
    let o = isospec(&["verify", "--suite", "matrix"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("[FLAGGED]     matrix.ch.trace"));
    assert!(out.contains("flagged: matrix.ch.trace"));
}

#[test]
fn structured_output_round_trips() {
    let o = isospec(&["verify", "--suite", "all", "--format", "structured", "--genus", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let report = Report::from_json_lines(&text).expect("parses");
    assert_eq!(report.to_json_lines(), text);
    assert!(report.results.iter().all(|c| c.is_well_formed()));
    assert_eq!(report.count(Status::Fail), 0);
    assert_eq!(report.count(Status::Flagged), 2);
}

#[test]
fn runs_are_deterministic_given_the_seed() {
    let a = stdout(&isospec(&[
        "verify",
        "--suite",
        "ring",
        "--seed",
        "7",
        "--format",
        "structured",
    ]));
    let b = stdout(&isospec(&[
        "verify",
        "--suite",
        "ring",
        "--seed",
        "7",
        "--format",
        "structured",
    ]));
    let c = stdout(&isospec(&[
        "verify",
        "--suite",
        "ring",
        "--seed",
        "8",
        "--format",
        "structured",
    ]));
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["verify", "--genus", "1"][..],
        &["verify", "--trunc", "3"],
        &["verify", "--suite", "nope"],
        &["strata", "--group", "sp4", "--genus", "2"],
        &["strata", "--group", "so4", "--genus", "2", "--dprime", "4"],
        &["isogeny", "--phi1", "1,0,0,1", "--phi2", "a,b,c"],
        &["isogeny", "--phi1", "a,b", "--phi2", "a,b,c"],
        &["isogeny", "--phi1", "a+,b,c", "--phi2", "a,b,c"],
        &["analyze", "--spec", "/nonexistent/file.spec"],
        &["bogus"],
    ] {
        assert_eq!(isospec(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn analyze_fixtures() {
    let cases = [
        ("generic.spec", 0, "nodal S12, normalization certified at each node"),
        ("diagonal.spec", 0, "Sigma ∪ S' decomposition"),
        ("ribbon.spec", 0, "2S, blow-up at ramification"),
        ("double_point.spec", 0, "nodal: S; singular points: 1 node"),
        ("bad_expect.spec", 1, "[FAIL]        analyze.classification"),
    ];
    for (name, code, phrase) in cases {
        let o = isospec(&["analyze", "--spec", &fixture(name)]);
        assert_eq!(o.status.code(), Some(code), "{name}");
        assert!(stdout(&o).contains(phrase), "{name}: {}", stdout(&o));
    }
    let o = isospec(&["analyze", "--spec", &fixture("malformed.spec")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn strata_tables() {
    let o = isospec(&["strata", "--group", "so4", "--genus", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<String> = stdout(&o)
        .lines()
        .filter(|l| l.ends_with(" ok"))
        .map(String::from)
        .collect();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r.split_whitespace().rev().nth(1) == Some("6")));

    for (g, total, n) in [("2", "15", 5), ("3", "30", 9)] {
        let o = isospec(&["strata", "--group", "sl4", "--genus", g, "--format", "structured"]);
        assert_eq!(o.status.code(), Some(0));
        let out = stdout(&o);
        assert_eq!(out.lines().count(), n);
        for line in out.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            assert_eq!(v["total_dim"].to_string(), total);
        }
    }
}

#[test]
fn isogeny_outputs() {
    let o = isospec(&["isogeny", "--phi1", "a,b,c", "--phi2", "-a,-b,-c"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("beta = [-c, 2*a, b]"));

    let o = isospec(&["isogeny", "--phi1", "1,0,0", "--phi2", "-1,0,0"]);
    assert!(stdout(&o).contains("char_poly = eta^4 - 4*eta^2\n"));

    let o = isospec(&["isogeny", "--phi1", "0,0,0", "--phi2", "0,0,0"]);
    let out = stdout(&o);
    assert!(out.contains("Phi = [0, 0, 0, 0; 0, 0, 0, 0; 0, 0, 0, 0; 0, 0, 0, 0]"));
    assert!(out.contains("char_poly = eta^4\n"));
}
