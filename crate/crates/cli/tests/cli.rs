use std::io::Write;
use std::process::{Command, Output, Stdio};

fn syzlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_syzlab")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const TWISTED_CUBIC: &str = "ring: p=32003 vars=[x0,x1,x2,x3] order=grevlex\ngens:\nx0*x2 - x1^2\nx0*x3 - x1*x2\nx1*x3 - x2^2\n";

#[test]
fn betti_diagram_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tc.ideal");
    std::fs::write(&path, TWISTED_CUBIC).unwrap();
    for method in ["koszul", "schreyer"] {
        let o = syzlab(&["betti", path.to_str().unwrap(), "--method", method]);
        assert!(o.status.success());
        assert_eq!(stdout(&o), "       0 1 2\ntotal: 1 3 2\n    0: 1 . .\n    1: . 3 2\n");
    }
}

#[test]
fn json_property_report() {
    let o = syzlab(&["betti", "rational_quartic", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["regularity"], 3);
    assert_eq!(v["n0"], false);
    assert_eq!(v["normality_from"], 2);
    assert_eq!(v["complete"], true);
}

#[test]
fn checks() {
    assert_eq!(stdout(&syzlab(&["check", "veronese(3,2)", "--np"])), "N_p: 5\n");
    assert_eq!(stdout(&syzlab(&["check", "complete_intersection([2,3],4)", "--n2p"])), "N_2,p: 0\n");
    assert_eq!(stdout(&syzlab(&["check", "rational_quartic", "--normality", "1"])), "1-normal: false\n");
    assert_eq!(stdout(&syzlab(&["check", "rational_quartic", "--regularity"])), "regularity: 3\n");
    assert!(stdout(&syzlab(&["check", "rational_quartic", "--n0"])).starts_with("N_0: false"));
    // exactly one property per call
    assert!(!syzlab(&["check", "twisted_cubic", "--np", "--n0"]).status.success());
}

#[test]
fn veronese_output_parses_back_through_stdin() {
    let o = syzlab(&["veronese", "twisted_cubic", "--power", "2"]);
    let text = stdout(&o);
    let header: serde_json::Value = serde_json::from_str(text.lines().next().unwrap().trim_start_matches("# ")).unwrap();
    assert_eq!(header["dimV_ell"], 7);
    assert_eq!(header["N_full"], 10);
    let mut child = Command::new(env!("CARGO_BIN_EXE_syzlab"))
        .args(["check", "-", "--np"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(stdout(&out), "N_p: inf\n");
}

#[test]
fn corpus_commands() {
    let list = stdout(&syzlab(&["corpus", "list"]));
    assert!(list.contains("twisted_cubic") && list.contains("veronese(3,2)"));
    let emitted = stdout(&syzlab(&["corpus", "emit", "quadric(3,4)", "--prime", "101"]));
    assert!(emitted.starts_with("ring: p=101 vars=[x0,x1,x2,x3]"));
    assert_eq!(syzlab(&["corpus", "emit", "k3(4)"]).status.code(), Some(2));
}

#[test]
fn verify_reports_and_exit_codes() {
    let o = syzlab(&["verify", "ci", "complete_intersection([3,3],4)", "--ells", "1,2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("[pass] N_1 iff 2l >= d_e (ell=1): predicted N_1 fails"));
    let o = syzlab(&["verify", "main1", "nodal_cubic", "--lmax", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["literature_failures"], 0);
    assert_eq!(syzlab(&["verify", "ci", "twisted_cubic"]).status.code(), Some(2));
}

#[test]
fn run_job_with_cache() {
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("job.json");
    std::fs::write(
        &job,
        r#"{"entries": ["twisted_cubic", "nodal_cubic"], "checks": [{"kind": "expectations"}, {"kind": "imply", "ell": 3, "p": 4}]}"#,
    )
    .unwrap();
    let out = dir.path().join("out");
    let cache = dir.path().join("cache");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_syzlab"))
            .args(["run", job.to_str().unwrap(), "--out", out.to_str().unwrap()])
            .env("SYZLAB_CACHE_DIR", &cache)
            .output()
            .unwrap()
    };
    let first = run();
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
    assert!(stdout(&first).starts_with("4 items, 0 from cache, 0 failed"));
    let second = run();
    assert!(stdout(&second).starts_with("4 items, 4 from cache"));
    assert!(out.join("report.json").is_file() && out.join("report.txt").is_file());
}
