use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_transvect"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Writes `text` to a file unique to this test run.
fn fixture(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("transvect-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const SP23: &str = "format: 1\nprime: 3\ndim: 2\ngen\n1 1\n0 1\ngen\n1 0\n1 1\n";

fn gen_random(args: &[&str]) -> String {
    let mut all = vec!["gen-random"];
    all.extend_from_slice(args);
    let o = run(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

#[test]
fn classify_sp23() {
    let path = fixture("sp23.txt", SP23);
    let o = run(&["classify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("order: 24\n"), "{out}");
    assert!(out.contains("verdict: contains-full-sp\n"));
}

#[test]
fn random_block_instance_classifies_as_planted() {
    let text = gen_random(&[
        "--blocks", "2", "--dimw", "2", "--prime", "5", "--seed", "1", "--with-swap", "--with-transvection",
    ]);
    let path = fixture("s2.txt", &text);
    let out = stdout(&run(&["classify", path.to_str().unwrap()]));
    assert!(out.contains("verdict: block-imprimitive 2 2\n"), "{out}");
    assert!(out.contains("(1 2)"));

    let text = gen_random(&["--blocks", "1", "--dimw", "2", "--ell", "5"]);
    let path = fixture("s1.txt", &text);
    let out = stdout(&run(&["classify", path.to_str().unwrap()]));
    assert!(out.contains("verdict: contains-full-sp\n"), "{out}");
}

#[test]
fn generation_and_reports_are_deterministic() {
    let args = ["--blocks", "3", "--dimw", "2", "--prime", "3", "--seed", "9", "--with-swap"];
    let a = gen_random(&args);
    assert_eq!(a, gen_random(&args));
    let path = fixture("det.txt", &a);
    let r1 = run(&["classify", path.to_str().unwrap()]);
    let r2 = run(&["classify", path.to_str().unwrap()]);
    assert_eq!(r1.stdout, r2.stdout);
    assert!(stdout(&r1).contains("verdict: block-imprimitive 3 2\n"));
}

#[test]
fn jobs_preserve_order() {
    let a = fixture("jobs-a.txt", SP23);
    let b = fixture("jobs-b.txt", &gen_random(&["--blocks", "2", "--dimw", "2", "--prime", "3", "--with-swap"]));
    let paths = [a.to_str().unwrap(), b.to_str().unwrap(), a.to_str().unwrap()];
    let mut seq = vec!["classify"];
    seq.extend(paths);
    let mut par = seq.clone();
    par.extend(["--jobs", "3"]);
    let (s, p) = (run(&seq), run(&par));
    assert!(s.status.success());
    assert_eq!(s.stdout, p.stdout);
}

#[test]
fn malformed_input_exits_with_two() {
    let path = fixture("bad.txt", "format: 1\nprime: 3\ndim: 2\ngen\n1 1\n0\n");
    let o = run(&["classify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 6"));
    let o = run(&["classify", "/nonexistent/instance.txt"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cap_is_a_verdict() {
    let path = fixture("cap.txt", SP23);
    let o = run(&["classify", "--cap", "10", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: not-applicable cap-exceeded\n"));
}

#[test]
fn amplitude_command() {
    let path = fixture("amp.txt", "format: 1\nprime: 7\ndim: 2\ngen\n1 1\n0 1\namplitude 1\n2 0\n0 4\n");
    let o = run(&["amplitude", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("amplitude: 4\n"), "{out}");
    assert!(out.contains("summand 1: degree 1 exponent 4 digits [4] amplitude 4\n"));

    let path = fixture("amp-none.txt", SP23);
    assert_eq!(run(&["amplitude", path.to_str().unwrap()]).status.code(), Some(2));
    let path = fixture("amp-unipotent.txt", "format: 1\nprime: 5\ndim: 2\ngen\n1 1\n0 1\namplitude 1\n1 1\n0 1\n");
    let o = run(&["amplitude", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("divisible by the characteristic"));
}

#[test]
fn toric_command() {
    let path = fixture(
        "toric.txt",
        "format: 1\nprime: 5\ndim: 4\ngen\n1 0 1 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\ngen\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n",
    );
    let out = stdout(&run(&["toric", path.to_str().unwrap()]));
    assert!(out.contains("gen 1: drop 1 toric 1 semistable-unipotent yes\n"), "{out}");
    assert!(out.contains("gen 2: drop 0 toric 0 semistable-unipotent yes\n"));
}

#[test]
fn sp_order_command() {
    let out = stdout(&run(&["sp-order", "2", "3"]));
    assert!(out.contains("formula: 24\nenumerated: 24\nmatch: yes\n"), "{out}");
    let out = stdout(&run(&["sp-order", "4", "5"]));
    assert!(out.contains("formula: 9360000\nenumerated: cap-exceeded 1000000\n"), "{out}");
    assert_eq!(run(&["sp-order", "3", "5"]).status.code(), Some(2));
}
