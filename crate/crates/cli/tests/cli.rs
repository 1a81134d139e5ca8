//! End-to-end checks of the command-line contract: exit codes, output
//! determinism, and that reduction outputs re-read to the same graph.

use std::path::Path;
use std::process::{Command, Output};

fn domatic(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_domatic"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, content: &str) {
    std::fs::write(dir.join(name), content).unwrap();
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

const K3: &str = "p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n";

#[test]
fn solve_delta_on_k3() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "k3.dimacs", K3);
    let out = domatic(&["solve", "delta", "--in", "k3.dimacs"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "3");
}

#[test]
fn solve_srp_prints_no_with_success_exit() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "k3.dimacs", K3);
    let out = domatic(
        &["solve", "srp", "--k", "2", "--sigma", "0", "--rho", "N", "--in", "k3.dimacs"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "NO");
}

#[test]
fn solve_srp_witness_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "k3.dimacs", K3);
    let out = domatic(
        &["solve", "srp", "--k", "3", "--sigma", "0", "--rho", "N", "--in", "k3.dimacs", "--witness", "w.json"],
        dir.path(),
    );
    assert_eq!(stdout(&out), "YES");
    let w: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("w.json")).unwrap()).unwrap();
    assert_eq!(w["k"], 3);
    assert_eq!(w["class_of"].as_array().unwrap().len(), 3);
}

#[test]
fn decide_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "k3.dimacs", K3);
    let yes = domatic(&["decide", "dnp-odd", "--in", "k3.dimacs"], dir.path());
    assert_eq!((yes.status.code(), stdout(&yes).as_str()), (Some(0), "YES"));

    let no = domatic(&["decide", "exact-domatic", "--set", "2", "--in", "k3.dimacs"], dir.path());
    assert_eq!((no.status.code(), stdout(&no).as_str()), (Some(1), "NO"));

    let err = domatic(&["decide", "exact-domatic", "--set", "2,3", "--in", "k3.dimacs"], dir.path());
    assert_eq!(err.status.code(), Some(2));

    let non_monotone = domatic(
        &["decide", "exact-srp", "--k", "2", "--sigma", "1", "--rho", "1", "--in", "k3.dimacs"],
        dir.path(),
    );
    assert_eq!(non_monotone.status.code(), Some(2));
}

#[test]
fn decide_two_graph_kinds() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "k3.dimacs", K3);
    write(dir.path(), "c4.dimacs", "p edge 4 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n");
    write(dir.path(), "k2.dimacs", "p edge 2 1\ne 1 2\n");
    let equ = domatic(&["decide", "dnp-equ", "--a", "c4.dimacs", "--b", "k2.dimacs"], dir.path());
    assert_eq!((equ.status.code(), stdout(&equ).as_str()), (Some(0), "YES"));
    let geq = domatic(&["decide", "dnp-geq", "--a", "k2.dimacs", "--b", "k3.dimacs"], dir.path());
    assert_eq!((geq.status.code(), stdout(&geq).as_str()), (Some(1), "NO"));
}

#[test]
fn parse_error_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "bad.dimacs", "p edge 2 1\ne 1 3\n");
    let out = domatic(&["solve", "delta", "--in", "bad.dimacs"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reduce_output_rereads_identically() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "k3.dimacs", K3);
    let out = domatic(&["reduce", "ks", "--in", "k3.dimacs", "--out", "image"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let dimacs = std::fs::read_to_string(dir.path().join("image.dimacs")).unwrap();
    let g = domatic_core::dimacs::read_dimacs(&dimacs).unwrap();
    assert_eq!((g.n(), g.edge_count()), (6, 9));
    let sidecar: domatic_core::graph::DecoratedGraph =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("image.json")).unwrap())
            .unwrap();
    assert!(sidecar.graph().same_structure(&g));
    assert_eq!(sidecar.triangles().len(), 3);

    // the sidecar feeds the pair gadget; its image has the composed level
    let join = domatic(
        &["reduce", "thm1", "--a", "image.json", "--b", "image.json", "--out", "joined"],
        dir.path(),
    );
    assert_eq!(join.status.code(), Some(0));
    let yes = domatic(
        &["decide", "exact-domatic", "--set", "5,7", "--in", "joined.dimacs", "--budget-seconds", "300"],
        dir.path(),
    );
    assert_eq!((yes.status.code(), stdout(&yes).as_str()), (Some(1), "NO"));
    let six = domatic(
        &["decide", "exact-domatic", "--set", "6", "--in", "joined.dimacs", "--budget-seconds", "300"],
        dir.path(),
    );
    assert_eq!((six.status.code(), stdout(&six).as_str()), (Some(0), "YES"));
}

#[test]
fn reduce_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "k3.dimacs", K3);
    for out in ["one", "two"] {
        let r = domatic(&["reduce", "ks", "--in", "k3.dimacs", "--out", out], dir.path());
        assert_eq!(r.status.code(), Some(0));
    }
    assert_eq!(
        std::fs::read(dir.path().join("one.dimacs")).unwrap(),
        std::fs::read(dir.path().join("two.dimacs")).unwrap()
    );
    assert_eq!(
        std::fs::read(dir.path().join("one.json")).unwrap(),
        std::fs::read(dir.path().join("two.json")).unwrap()
    );
}

#[test]
fn gen_is_deterministic_and_oracle_safe() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.json", "b.json"] {
        let out = domatic(
            &["gen", "graph", "--n", "6", "--p", "0.5", "--seed", "7", "--out", name],
            dir.path(),
        );
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(
        std::fs::read(dir.path().join("a.json")).unwrap(),
        std::fs::read(dir.path().join("b.json")).unwrap()
    );
    let too_big = domatic(
        &["gen", "graph", "--n", "12", "--seed", "7", "--out", "c.json", "--oracle-safe"],
        dir.path(),
    );
    assert_eq!(too_big.status.code(), Some(2));
    let m = domatic(
        &["gen", "matrix", "--n", "3", "--m", "3", "--density", "0.6", "--seed", "7", "--out", "m.json"],
        dir.path(),
    );
    assert_eq!(m.status.code(), Some(0));
    let f = domatic(
        &["gen", "cnf3", "--vars", "4", "--clauses", "3", "--seed", "7", "--out", "f.json"],
        dir.path(),
    );
    assert_eq!(f.status.code(), Some(0));
    let parsed: domatic_core::sat::Cnf3 =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("f.json")).unwrap()).unwrap();
    assert_eq!((parsed.num_vars, parsed.clauses.len()), (4, 3));
}

#[test]
fn solve_cfsp_with_oracle_flag_and_start() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "m.json", r#"{"n":2,"m":2,"rows":["11","11"]}"#);
    let fast = domatic(&["solve", "cfsp", "--in", "m.json", "--witness", "s.json"], dir.path());
    assert_eq!((fast.status.code(), stdout(&fast).as_str()), (Some(0), "1"));
    let oracle = domatic(&["solve", "cfsp", "--in", "m.json", "--oracle"], dir.path());
    assert_eq!(stdout(&oracle), "1");
    // starting on the wrong machine costs one extra switch
    let started = domatic(&["solve", "cfsp", "--in", "m.json", "--start", "1"], dir.path());
    assert_eq!(stdout(&started), "2");
    let schedule: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("s.json")).unwrap()).unwrap();
    assert_eq!(schedule["tasks"].as_array().unwrap().len(), 4);
}

#[test]
fn verify_campaign_reports_and_exit() {
    let dir = tempfile::tempdir().unwrap();
    let out = domatic(
        &["verify", "thm10-k1", "--seed", "1", "--format", "json", "--out", "report.json"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap())
            .unwrap();
    assert_eq!(report["campaign"], "thm10-k1");
    let records = report["records"].as_array().unwrap();
    let summary = &report["summary"];
    assert_eq!(summary["ok"].as_u64().unwrap() as usize, records.len());
    assert_eq!(summary["fail"], 0);
    // determinism: same seed, same report
    let again = domatic(&["verify", "thm10-k1", "--seed", "1", "--format", "json"], dir.path());
    assert_eq!(stdout(&out), stdout(&again));

    let unknown = domatic(&["verify", "nope", "--seed", "1"], dir.path());
    assert_eq!(unknown.status.code(), Some(2));
}
