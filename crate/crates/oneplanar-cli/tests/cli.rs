use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_oneplanar"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../oneplanar/fixtures/planar_code").join(name)
}

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const K2222: &str = "G]~v~w\n";
const K6: &str = "E~~w\n";
const K7: &str = "F~~~w\n";

#[test]
fn counts() {
    let o = run(&["count", "--sizes", "3,total"], K2222);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "32 81\n");
    assert_eq!(stdout(&run(&["count", "--sizes", "0"], K6)), "1\n");
    let o = run(&["count"], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "");
    let o = run(&["count", "--format", "json", "--sizes", "2"], K6);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["schema"], "v1");
    assert_eq!(v["counts"]["2"], 15);
}

#[test]
fn bad_input_exits_2() {
    let o = run(&["count"], "C~\n\nC\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(run(&["count", "--unknown-flag"], "").status.code(), Some(2));
    assert_eq!(run(&["gen", "--family", "apollonian", "--n", "10"], "").status.code(), Some(2));
    assert_eq!(run(&["decide", "--max-tests", "0"], K6).status.code(), Some(2));
}

#[test]
fn formulas() {
    assert_eq!(stdout(&run(&["formula", "--n", "10", "--total"], "")), "128\n");
    assert_eq!(stdout(&run(&["formula", "--n", "2", "--t", "3"], "")), "0\n");
    assert_eq!(stdout(&run(&["formula", "--n", "8", "--t", "3"], "")), "32\n");
}

#[test]
fn verify_tables_small() {
    let o = run(&["verify-tables", "--max-n", "12"], "");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 5 * 10);
    assert!(text.lines().all(|l| l.ends_with(" ok")));
}

#[test]
fn decide_and_witness() {
    let o = run(&["decide"], K7);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "not-one-planar\n");
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("k6.drawing");
    let o = run(&["decide", "--witness", w.to_str().unwrap()], K6);
    assert_eq!(stdout(&o), "one-planar 3\n");
    let o = run(&["validate-drawing", w.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("valid n=6 m=15 crossings=3 simple=true"));
    let o = run(&["decide", "--max-tests", "3"], K2222);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stdout(&o), "budget-exceeded\n");
}

#[test]
fn generation() {
    let o = run(&["gen", "--class", "e3", "--n", "11"], "");
    assert_eq!(stdout(&o).lines().count(), 3);
    let strip = stdout(&run(&["gen", "--family", "strip", "--n", "9"], ""));
    assert_eq!(stdout(&run(&["count", "--sizes", "3,6,total"], &strip)), "39 2 120\n");
    let g = stdout(&run(&["gen", "--family", "gstar", "--n", "12"], ""));
    assert_eq!(g.lines().count(), 1);
    // The capped strip at 12 vertices has 8 nontrivial 3-separators.
    assert_eq!(stdout(&run(&["count-separators"], &g)), "8\n");
    let a = stdout(&run(&["gen", "--family", "apollonian", "--n", "10", "--seed", "7"], ""));
    assert_eq!(stdout(&run(&["count", "--sizes", "3,4"], &a)), "22 7\n");
}

#[test]
fn tree_decompositions() {
    let dir = tempfile::tempdir().unwrap();
    let g = stdout(&run(&["gen", "--class", "e3", "--n", "12"], ""));
    let o = run(&["td", "--class", "e3"], &g);
    assert_eq!(o.status.code(), Some(0));
    let td: String = stdout(&o).lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    let (gp, tp) = (dir.path().join("g.g6"), dir.path().join("g.td"));
    std::fs::write(&gp, &g).unwrap();
    std::fs::write(&tp, &td).unwrap();
    let o = run(&["verify-td", gp.to_str().unwrap(), tp.to_str().unwrap(), "--class", "e3"], "");
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "valid\n".to_string()));
    std::fs::write(&tp, td.replace("edge 0 1", "edge 1 2")).unwrap();
    assert_eq!(run(&["verify-td", gp.to_str().unwrap(), tp.to_str().unwrap(), "--class", "e3"], "").status.code(), Some(1));
    assert_eq!(run(&["td", "--class", "e"], K2222).status.code(), Some(1));
}

#[test]
fn skeleton_scans() {
    let cube = fixture("quad_c3_n8.pc");
    let o = run(&["skeleton-scan", "--quad", "--n", "8", "--three-connected", cube.to_str().unwrap()], "");
    assert_eq!(stdout(&o), "index,n,m,face_profile,three_connected,sep3_count,flags\n0,8,12,4:6,true,8,quadrangulation|bipartite\n");
    let f = fixture("planar_c3_n11_e19.pc");
    let args = ["skeleton-scan", f.to_str().unwrap(), "--n", "11", "--three-connected", "--max-face-degree", "4", "--faces", "4:8", "--min-separators", "15", "--format", "json"];
    let text = stdout(&run(&args, ""));
    assert_eq!(text.lines().count(), 3);
    for l in text.lines() {
        let v: serde_json::Value = serde_json::from_str(l).unwrap();
        assert_eq!(v["schema"], "v1");
        assert_eq!(v["sep3_count"], 15);
    }
    let q = fixture("quad_c3_n14.pc");
    let o = run(&["separator-bound", q.to_str().unwrap(), "--n", "14"], "");
    assert_eq!(stdout(&o), "n=14 graphs=11 max_observed=14 required=20 below_required=true\n");
    assert_eq!(run(&["separator-bound", q.to_str().unwrap(), "--n", "13"], "").status.code(), Some(2));
    let o = run(&["maximiser-report", q.to_str().unwrap(), "--n", "14"], "");
    assert!(stdout(&o).contains("argmax_in_gstar=true gstar_in_argmax=true"));
}

#[test]
fn deterministic_across_job_counts() {
    for args in [&["gen", "--class", "e6", "--n", "14"][..], &["verify-tables", "--max-n", "11", "--format", "json"][..]] {
        let a = run(args, "");
        let mut with_jobs = vec!["--jobs", "1"];
        with_jobs.extend_from_slice(args);
        let b = run(&with_jobs, "");
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.stdout, run(args, "").stdout);
    }
}
