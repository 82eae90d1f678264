use std::process::{Command, Output};

use rigidity::batch::BatchReport;
use rigidity::engine::VerdictKind;
use rigidity::report::RigidityReport;
use rigidity::Graph;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rigidity"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_prism_json() {
    let out = run(&["check", "gen:prism", "--dim", "2", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let report = RigidityReport::from_json(&stdout(&out)).unwrap();
    assert_eq!(report.verdicts.local.kind, VerdictKind::LocallyRigid);
    assert_eq!(report.verdicts.global.kind, VerdictKind::NotGloballyRigid);
    assert!(report.diagnostics.hendrickson.connectivity_ok);
    assert!(!report.diagnostics.hendrickson.redundant_ok);
}

#[test]
fn json_top_level_fields_are_fixed() {
    let out = run(&["check", "gen:complete:4", "--json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let mut keys: Vec<&str> = value
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    keys.sort();
    assert_eq!(
        keys,
        [
            "d",
            "diagnostics",
            "false_no_bound",
            "graph",
            "mode",
            "round_records",
            "rounds",
            "s",
            "seed",
            "t",
            "verdicts",
            "wall_time_ms"
        ]
    );
}

#[test]
fn check_k55_text() {
    let out = run(&["check", "gen:complete_bipartite:5,5", "--dim", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("NotGloballyRigid"));
    assert!(text.contains("k_min=8"));
}

#[test]
fn check_globally_rigid_exits_zero() {
    let out = run(&["check", "gen:cycle:6", "--dim", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let rational = run(&[
        "check",
        "gen:wheel:5",
        "--dim",
        "2",
        "--mode",
        "rational",
        "--rounds",
        "5",
    ]);
    assert_eq!(rational.status.code(), Some(0));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(
        run(&["check", "missing.txt", "--dim", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["check", "gen:nothing"]).status.code(), Some(2));
    assert_eq!(
        run(&["check", "gen:cycle:4", "--rounds", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["check", "gen:cycle:13", "--dim", "1", "--mode", "rational"])
            .status
            .code(),
        Some(2)
    );
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.g");
    std::fs::write(&bad, "2 1\n0 0\n").unwrap();
    let out = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn gen_writes_files_and_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = dir.path().join("c5.g");
    assert!(run(&["gen", "cycle", "5", c5.to_str().unwrap()])
        .status
        .success());
    let g = Graph::parse(&std::fs::read_to_string(&c5).unwrap()).unwrap();
    assert_eq!((g.vertex_count(), g.edge_count()), (5, 5));

    let k4 = dir.path().join("k4.g");
    assert!(run(&["gen", "complete", "4", k4.to_str().unwrap()])
        .status
        .success());
    let g = Graph::parse(&std::fs::read_to_string(&k4).unwrap()).unwrap();
    assert_eq!(g.edge_count(), 6);

    let out = run(&["gen", "prism", "-"]);
    assert!(out.status.success());
    assert_eq!(Graph::parse(&stdout(&out)).unwrap().edge_count(), 9);

    let bip = run(&["gen", "complete_bipartite", "5,5", "-"]);
    assert_eq!(Graph::parse(&stdout(&bip)).unwrap().edge_count(), 25);

    assert_eq!(run(&["gen", "cycle", "2", "-"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "blob", "-"]).status.code(), Some(2));
}

#[test]
fn check_out_flag_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("r.json");
    let out = run(&[
        "check",
        "gen:complete:4",
        "--json",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let report = RigidityReport::from_json(&std::fs::read_to_string(out_path).unwrap()).unwrap();
    assert_eq!(report.verdicts.global.kind, VerdictKind::GloballyRigid);
}

#[test]
fn batch_over_directory() {
    let dir = tempfile::tempdir().unwrap();
    for (name, family, params) in [
        ("a_k4.g", "complete", "4"),
        ("b_prism.g", "prism", ""),
        ("c_tripod.g", "complete_bipartite", "1,3"),
    ] {
        let path = dir.path().join(name);
        let mut args = vec!["gen", family];
        if !params.is_empty() {
            args.push(params);
        }
        args.push(path.to_str().unwrap());
        assert!(run(&args).status.success());
    }
    std::fs::write(dir.path().join("d_bad.g"), "nonsense\n").unwrap();

    let out = run(&[
        "batch",
        dir.path().to_str().unwrap(),
        "--dim",
        "2",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let b: BatchReport = serde_json::from_str(&stdout(&out)).unwrap();
    let names: Vec<&str> = b.entries.iter().map(|e| e.name.as_str()).collect();
    assert_eq!(names, ["a_k4.g", "b_prism.g", "c_tripod.g", "d_bad.g"]);
    let kind = |i: usize| b.entries[i].report.as_ref().unwrap().verdicts.clone();
    assert_eq!(kind(0).global.kind, VerdictKind::GloballyRigid);
    assert_eq!(kind(1).global.kind, VerdictKind::NotGloballyRigid);
    assert_eq!(kind(1).local.kind, VerdictKind::LocallyRigid);
    assert_eq!(kind(2).local.kind, VerdictKind::NotLocallyRigid);
    assert!(b.entries[3].error.is_some());
    assert_eq!(b.summary.errors, 1);

    let text = run(&["batch", dir.path().to_str().unwrap(), "--dim", "2"]);
    assert!(stdout(&text).contains("total 4"));
}

#[test]
fn batch_over_empty_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["batch", dir.path().to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let b: BatchReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(b.entries.is_empty());
    assert_eq!(b.summary.total, 0);
}

#[test]
fn reports_are_reproducible_across_processes() {
    let args = [
        "check",
        "gen:wheel:6",
        "--dim",
        "2",
        "--seed",
        "42",
        "--json",
    ];
    let a = RigidityReport::from_json(&stdout(&run(&args))).unwrap();
    let b = RigidityReport::from_json(&stdout(&run(&args))).unwrap();
    assert_eq!(
        a.without_wall_time().to_json(),
        b.without_wall_time().to_json()
    );
}
