use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn rootcast(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rootcast")).args(args).env_remove("ROOTCAST_SEED").output().unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rootcast"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    // The tool may exit on a bad flag before reading its input.
    let _ = child.stdin.take().unwrap().write_all(input.as_bytes());
    child.wait_with_output().unwrap()
}

fn file(name: &str, text: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

const LINE5: &str = "0 1\n1 2\n2 3\n3 4\n";

#[test]
fn centrality_on_a_path() {
    let path = file("line5.edges", LINE5);
    let out = rootcast(&["centrality", "--measure", "closeness", "--input", &path]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<(String, String)> = stdout(&out)
        .lines()
        .map(|l| {
            let (v, s) = l.split_once('\t').unwrap();
            (v.to_string(), s.to_string())
        })
        .collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[2], ("2".to_string(), "1/6".to_string()));
    assert!(stderr(&out).starts_with("# rootcast --seed 0 centrality --measure closeness"));
}

#[test]
fn float_scores_have_twelve_digits() {
    let out = with_stdin(&["centrality", "--measure", "pagerank:alpha=0.85", "--input", "-"], LINE5);
    assert_eq!(out.status.code(), Some(0));
    let first = stdout(&out).lines().next().unwrap().split('\t').nth(1).unwrap().to_string();
    let digits = first.chars().filter(char::is_ascii_digit).collect::<String>();
    assert!(digits.trim_start_matches('0').len() <= 12, "{first}");
}

#[test]
fn verify_reports_degree_failure() {
    let out = rootcast(&["verify", "--property", "rooting", "--measure", "degree", "--max-n", "6"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("verdict: fail"));
    let record = text.lines().last().unwrap();
    assert!(record.starts_with('{') && record.contains("\"pass\":false") && record.contains("\"edges\""));
}

#[test]
fn verify_passes_and_is_deterministic() {
    let args = ["--seed", "5", "verify", "--property", "rooting", "--measure", "closeness", "--max-n", "5", "--random", "50"];
    let a = rootcast(&args);
    let b = rootcast(&[&["--jobs", "1"], &args[..]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stderr(&a).contains("--seed 5"));
}

#[test]
fn seed_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_rootcast"))
        .args(["enumerate", "--n", "2"])
        .env("ROOTCAST_SEED", "42")
        .output()
        .unwrap();
    assert!(stderr(&out).starts_with("# rootcast --seed 42"));
}

#[test]
fn enumerate_four() {
    let out = rootcast(&["enumerate", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let blocks: Vec<&str> = text.split("\n\n").collect();
    assert_eq!(blocks.len(), 16);
    assert!(blocks.iter().all(|b| b.trim().lines().count() == 3));
}

#[test]
fn find_root_variants() {
    let path = file("line4.edges", "10 11\n11 12\n12 13\n");
    let both = rootcast(&["find-root", "--potential", "closeness", "--both", "--input", &path]);
    assert_eq!(stdout(&both), "11\t4\n12\t4\n");
    let one = rootcast(&["find-root", "--potential", "all-subgraphs", "--logspace", "--input", &path]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(stdout(&one).lines().count(), 1);
    let abc = rootcast(&["find-root", "--potential", "abc:a=2,b=1,c=0.5", "--both", "--input", &path]);
    assert_eq!(abc.status.code(), Some(0));
}

#[test]
fn usage_and_input_errors_exit_two() {
    assert_eq!(rootcast(&["centrality", "--measure", "closeness", "--bogus"]).status.code(), Some(2));
    assert_eq!(rootcast(&["find-root", "--potential", "closeness", "--exact", "--logspace", "--input", "x"]).status.code(), Some(2));

    let missing = rootcast(&["centrality", "--measure", "closeness", "--input", "/nonexistent/tree.edges"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(stderr(&missing).contains("/nonexistent/tree.edges"));

    let bad = with_stdin(&["centrality", "--measure", "degree", "--input", "-"], "0 1\n1 2\n2 0\n");
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("cycle"));

    let garbage = with_stdin(&["centrality", "--measure", "degree", "--input", "-"], "0 1\nfoo\n");
    assert!(stderr(&garbage).contains("line 2"));

    let name = rootcast(&["verify", "--property", "rooting", "--measure", "nope"]);
    assert_eq!(name.status.code(), Some(2));
    assert!(stderr(&name).contains("--measure"));

    let region = with_stdin(&["find-root", "--potential", "abc:a=0.5,b=1,c=1", "--input", "-"], LINE5);
    assert_eq!(region.status.code(), Some(2));
    let degree = with_stdin(&["find-root", "--potential", "degree", "--input", "-"], LINE5);
    assert_eq!(degree.status.code(), Some(2));
    let logspace = with_stdin(&["find-root", "--potential", "closeness", "--logspace", "--input", "-"], LINE5);
    assert_eq!(logspace.status.code(), Some(2));
    assert_eq!(rootcast(&["enumerate", "--n", "9"]).status.code(), Some(2));
}

#[test]
fn lone_vertex_input() {
    let out = with_stdin(&["centrality", "--measure", "degree", "--input", "-"], "v 7\n");
    assert_eq!(stdout(&out), "7\t0\n");
}

#[test]
fn bench_emits_tsv() {
    let out = rootcast(&["bench", "--sizes", "50,100", "--potential", "all-subgraphs", "--logspace", "--trees", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n\talgo1_ms\tnaive_ms"));
    assert_eq!(lines.filter(|l| l.split('\t').count() == 3).count(), 2);
}

#[test]
fn cstar_demo() {
    let out = rootcast(&["demo-cstar", "--max-n", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("holds"));
}
