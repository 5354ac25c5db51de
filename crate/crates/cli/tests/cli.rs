use std::path::Path;
use std::process::{Command, Output};

use cyclepack::{BuildTrace, Packing};
use cyclepack_cli::formats::{PackingFile, VerdictDoc};
use cyclepack_cli::sweep::read_csv;

fn cyclepack(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclepack"))
        .args(args)
        .env_remove("CYCLEPACK_NODE_BUDGET")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read_packing(p: &Path) -> Packing {
    let text = std::fs::read_to_string(p).unwrap();
    serde_json::from_str::<PackingFile>(&text).unwrap().to_packing().unwrap()
}

#[test]
fn check_reports_verdicts() {
    let o = cyclepack(&["check", "--lambda", "1", "--v", "5", "--lengths", "4,5"]);
    assert_eq!(code(&o), 1);
    let doc: VerdictDoc = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc.failed, vec!["ii"]);
    assert_eq!(doc.delta, 1);

    let o = cyclepack(&["check", "--lambda", "1", "--v", "5", "--lengths", "3,3"]);
    assert_eq!(code(&o), 0);
    let doc: VerdictDoc = serde_json::from_slice(&o.stdout).unwrap();
    assert!(doc.feasible && doc.failed.is_empty());
    assert_eq!(doc.epsilon, Some(4));

    assert_eq!(code(&cyclepack(&["check", "--lambda", "0", "--v", "5", "--lengths", "3"])), 2);
    assert_eq!(code(&cyclepack(&["check", "--lambda", "1", "--v", "5", "--lengths", "3,x"])), 2);
    assert_eq!(code(&cyclepack(&["check", "--lambda", "1"])), 2);
}

#[test]
fn build_writes_packing_and_trace() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.json");
    let o = cyclepack(&["build", "--lambda", "2", "--v", "3", "--lengths", "2,2,2", "--out", path_str(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let p = read_packing(&out);
    assert_eq!(p.cycles().len(), 3);
    assert!(p.leave().is_empty());

    let o = cyclepack(&["build", "--lambda", "1", "--v", "5", "--lengths", "3,5"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("infeasible"));

    let trace = dir.path().join("t.log");
    let o = cyclepack(&[
        "build", "--lambda", "1", "--v", "4", "--lengths", "3", "--out", path_str(&out), "--trace",
        path_str(&trace),
    ]);
    assert_eq!(code(&o), 0);
    let t: BuildTrace = std::fs::read_to_string(&trace).unwrap().parse().unwrap();
    assert_eq!(t.replay().unwrap().sorted(), read_packing(&out));
}

#[test]
fn build_prints_to_stdout_without_out() {
    let o = cyclepack(&["build", "--lambda", "1", "--v", "3", "--lengths", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        String::from_utf8(o.stdout).unwrap(),
        "{\"lambda\":1,\"v\":3,\"cycles\":[[0,1,2]],\"leave\":[]}\n"
    );
}

#[test]
fn build_budget_failure_exits_3() {
    let o = cyclepack(&["build", "--lambda", "1", "--v", "7", "--lengths", "3,3,3,3,3,3,3", "--budget", "1"]);
    assert_eq!(code(&o), 3);
    let o = Command::new(env!("CARGO_BIN_EXE_cyclepack"))
        .args(["build", "--lambda", "1", "--v", "7", "--lengths", "3,3,3,3,3,3,3"])
        .env("CYCLEPACK_NODE_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn verify_accepts_valid_and_rejects_bad_files() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("i.json");
    let pack = dir.path().join("p.json");
    std::fs::write(&inst, "{\"lambda\":1,\"v\":4,\"lengths\":[3]}\n").unwrap();
    assert_eq!(code(&cyclepack(&["build", "--lambda", "1", "--v", "4", "--lengths", "3", "--out", path_str(&pack)])), 0);
    let o = cyclepack(&["verify", path_str(&inst), path_str(&pack)]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "valid\n");

    std::fs::write(&inst, "{\"lambda\":1,\"v\":4,\"lengths\":[3,3]}\n").unwrap();
    std::fs::write(&pack, "{\"lambda\":1,\"v\":4,\"cycles\":[[0,1,2],[0,1,3]],\"leave\":[]}\n").unwrap();
    let o = cyclepack(&["verify", path_str(&inst), path_str(&pack)]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("OverusedEdge"));

    std::fs::write(&pack, "{\"lambda\":1,\"v\":4,\"cyc").unwrap();
    assert_eq!(code(&cyclepack(&["verify", path_str(&inst), path_str(&pack)])), 2);
    assert_eq!(code(&cyclepack(&["verify", path_str(&inst), "/nonexistent/p.json"])), 2);

    std::fs::write(&inst, "{\"lambda\":1,\"v\":4,\"lengths\":[3]}\n").unwrap();
    std::fs::write(&pack, "{\"lambda\":1,\"v\":4,\"cycles\":[[0,1,2]],\"leave\":[]}\n").unwrap();
    let o = cyclepack(&["verify", path_str(&inst), path_str(&pack)]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("leave"));
}

#[test]
fn decompose_exit_codes() {
    let o = cyclepack(&["decompose", "--lambda", "1", "--v", "5", "--lengths", "5,5"]);
    assert_eq!(code(&o), 0);
    let f: PackingFile = serde_json::from_slice(&o.stdout).unwrap();
    assert!(f.to_packing().unwrap().leave().is_empty());

    assert_eq!(code(&cyclepack(&["decompose", "--lambda", "2", "--v", "4", "--lengths", "2,2,2,2,4"])), 1);

    let o = cyclepack(&["decompose", "--lambda", "1", "--v", "6", "--lengths", "3,3,3,3", "--one-factor"]);
    assert_eq!(code(&o), 0);
    let f: PackingFile = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(f.leave, vec![[0, 1], [2, 3], [4, 5]]);

    assert_eq!(code(&cyclepack(&["decompose", "--lambda", "1", "--v", "5", "--lengths", "5,5", "--one-factor"])), 2);
    assert_eq!(
        code(&cyclepack(&["decompose", "--lambda", "1", "--v", "7", "--lengths", "3,3,3,3,3,3,3", "--budget", "1"])),
        3
    );
}

#[test]
fn sweep_reports_agreement() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.csv");
    let o = cyclepack(&["sweep", "--lambda", "1", "--v", "4", "--oracle", "--construct", "--out", path_str(&out)]);
    assert_eq!(code(&o), 0);
    let rows = read_csv(std::fs::File::open(&out).unwrap()).unwrap();
    assert!(rows.iter().all(|r| r.agree));
    assert!(String::from_utf8_lossy(&o.stderr).contains("disagreements=0"));

    let o = cyclepack(&["sweep", "--lambda", "2", "--v", "3", "--oracle"]);
    assert_eq!(code(&o), 0);
    let rows = read_csv(o.stdout.as_slice()).unwrap();
    let row = rows.iter().find(|r| r.lengths == "2+2+2").unwrap();
    assert!(row.predicate_feasible);
    assert!(rows.iter().all(|r| r.lengths != "2+2+2+2"));

    let o = cyclepack(&["sweep", "--lambda", "3", "--v", "6", "--sample", "200", "--seed", "7", "--oracle"]);
    assert_eq!(code(&o), 0);
    let first = read_csv(o.stdout.as_slice()).unwrap();
    assert_eq!(first.len(), 200);
    let again = cyclepack(&["sweep", "--lambda", "3", "--v", "6", "--sample", "200", "--seed", "7"]);
    let again = read_csv(again.stdout.as_slice()).unwrap();
    let key = |rows: &[cyclepack_cli::sweep::Row]| rows.iter().map(|r| r.lengths.clone()).collect::<Vec<_>>();
    assert_eq!(key(&first), key(&again));

    let o = cyclepack(&["sweep", "--lambda", "1", "--v", "7", "--oracle", "--budget", "1"]);
    assert_eq!(code(&o), 4);
    assert_eq!(code(&cyclepack(&["sweep", "--lambda", "0", "--v", "4"])), 2);
}
