use std::process::{Command, Output};

fn abcvote(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abcvote"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(name: &str, text: &str) -> String {
    let path = format!("{}/{name}", env!("CARGO_TARGET_TMPDIR"));
    std::fs::write(&path, text).unwrap();
    path
}

const EXAMPLE: &str = "3 2\n0 1\n0 1\n2\n2\n";

#[test]
fn compute_prints_committee_and_score() {
    let input = write("compute.prof", EXAMPLE);
    let o = abcvote(&["compute", "--rule", "pav", "--input", &input]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("W = {0,2}"), "{out}");
    assert!(out.contains("PAV score 4/1"), "{out}");
}

#[test]
fn k_override_changes_committee_size() {
    let input = write("override.prof", EXAMPLE);
    let o = abcvote(&[
        "compute", "--rule", "seqpav", "--input", &input, "--k", "3", "--json",
    ]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["committee"].as_array().unwrap().len(), 3);
    assert_eq!(doc["k"], 3);
}

#[test]
fn jr_violation_exits_one_with_witness() {
    let input = write("jr.prof", "3 2\n2\n2\n0\n1\n");
    let o = abcvote(&[
        "check",
        "--axiom",
        "jr",
        "--input",
        &input,
        "--committee",
        "0,1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("jr violated"), "{}", stdout(&o));
    let o = abcvote(&[
        "check",
        "--axiom",
        "jr",
        "--input",
        &input,
        "--committee",
        "0,1",
        "--json",
    ]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["satisfied"], false);
    let o = abcvote(&[
        "check",
        "--axiom",
        "jr",
        "--input",
        &input,
        "--committee",
        "0,2",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn score_is_exact() {
    let input = write("score.prof", EXAMPLE);
    let o = abcvote(&["score", "--input", &input, "--committee", "0,2"]);
    assert_eq!(stdout(&o).trim(), "4/1");
    let input = write("score2.prof", "3 2\n0 1\n0 2\n2\n");
    let o = abcvote(&["score", "--input", &input, "--committee", "0,2"]);
    assert_eq!(stdout(&o).trim(), "7/2");
}

#[test]
fn bad_input_exits_two() {
    let input = write("bad.prof", EXAMPLE);
    let cases: [&[&str]; 4] = [
        &["score", "--input", &input, "--committee", "1,0"],
        &["score", "--input", &input, "--committee", "0,9"],
        &["compute", "--rule", "pav", "--input", &input, "--k", "9"],
        &["compute", "--rule", "nope", "--input", &input],
    ];
    for args in cases {
        assert_eq!(abcvote(args).status.code(), Some(2), "{args:?}");
    }
    let missing = write("garbage.prof", "2 1\n0 5\n");
    assert_eq!(
        abcvote(&["compute", "--rule", "pav", "--input", &missing])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn exhausted_budget_exits_three() {
    let o = abcvote(&[
        "verify", "--rule", "pav", "--axiom", "ejr", "--n-max", "3", "--m-max", "3", "--k-max",
        "3", "--limit", "100",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn gen_is_seeded() {
    let run = |seed: &str| {
        stdout(&abcvote(&[
            "gen", "--model", "random", "--n", "6", "--m", "5", "--k", "2", "--seed", seed,
        ]))
    };
    assert_eq!(run("3"), run("3"));
    assert_ne!(run("3"), run("4"));
    let polar = abcvote(&[
        "gen",
        "--model",
        "polarized",
        "--m",
        "6",
        "--k",
        "3",
        "--groups",
        "3:2,2:3",
        "--seed",
        "1",
    ]);
    assert_eq!(polar.status.code(), Some(0));
    let input = write("polar.prof", &stdout(&polar));
    assert_eq!(
        abcvote(&["compute", "--rule", "gspav", "--input", &input])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn json_is_thread_independent() {
    let run = |threads: &str| {
        abcvote(&[
            "verify",
            "--rule",
            "lspav",
            "--axiom",
            "ejr",
            "--n-max",
            "3",
            "--m-max",
            "3",
            "--k-max",
            "2",
            "--threads",
            threads,
            "--json",
        ])
        .stdout
    };
    assert_eq!(run("1"), run("4"));
    let input = write("det.prof", EXAMPLE);
    let compute = || {
        abcvote(&[
            "compute", "--rule", "phragmen", "--input", &input, "--trace", "--json",
        ])
        .stdout
    };
    assert_eq!(compute(), compute());
}

#[test]
fn search_reports_empty_strict_core() {
    let o = abcvote(&[
        "search",
        "--mode",
        "emptystrictcore",
        "--n-max",
        "4",
        "--m-max",
        "3",
        "--k-max",
        "2",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        doc["instance"]["profile"]["ballots"],
        serde_json::json!([[], [0], [1], [2]])
    );
    assert_eq!(doc["instance"]["k"], 2);
}

#[test]
fn fixture_files_are_accepted_as_input() {
    let path = format!(
        "{}/../core/fixtures/seqpav_jr_k7.fixture",
        env!("CARGO_MANIFEST_DIR")
    );
    let o = abcvote(&[
        "check",
        "--axiom",
        "jr",
        "--input",
        &path,
        "--committee",
        "0,1,2,3,4,5,6",
    ]);
    assert_eq!(o.status.code(), Some(1));
}
