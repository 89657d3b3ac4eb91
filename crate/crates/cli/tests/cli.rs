use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const EXAMPLE_UNION: &str = "\
type: nfa
alphabet: a b
states: 6
initial: 0 3
final: 0 3
trans: 0 a 1
trans: 1 a 2
trans: 2 a 0
trans: 3 b 4
trans: 4 b 5
trans: 5 b 3
";

const EXAMPLE_UNION_CERT: &str = "\
fooling: extended
claimed: 7
u: bbb
v: aaa
A:
pair: a aa
pair: aa a
pair: aaa aaa
B:
pair: b bb
pair: bb b
pair: bbb bbb
";

const CHAIN: &str = "\
type: idfa
alphabet: a b
states: 2
initial: 0
final: 0 1
trans: 0 a 1
trans: 1 b 0
";

fn pclang(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pclang"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn workdir() -> TempDir {
    tempfile::tempdir().expect("temp dir")
}

#[test]
fn bound_union_isc_is_tight() {
    let dir = workdir();
    let out = pclang(&["bound", "union-isc", "3", "4"], dir.path());
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("upper=19 achieved=19"), "{text}");
    assert!(text.contains("status=tight"), "{text}");
}

#[test]
fn bound_star_nsc_single_state() {
    let dir = workdir();
    let out = pclang(&["bound", "star-nsc", "1"], dir.path());
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("upper=1 achieved=1"));
}

#[test]
fn bound_complement_nsc_json() {
    let dir = workdir();
    let out = pclang(&["--format", "json-lines", "bound", "complement-nsc", "5"], dir.path());
    assert_eq!(code(&out), 0);
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).expect("json");
    assert_eq!(value["upper"], 32);
    assert_eq!(value["achieved"], 32);
    assert_eq!(value["status"], "tight");
}

#[test]
fn bound_rejects_bad_parameters() {
    let dir = workdir();
    assert_eq!(code(&pclang(&["bound", "union-isc", "3"], dir.path())), 3);
    assert_eq!(code(&pclang(&["bound", "concat-isc", "1", "1"], dir.path())), 3);
}

#[test]
fn example_union_certificate_checks() {
    let dir = workdir();
    fs::write(dir.path().join("l.aut"), EXAMPLE_UNION).unwrap();
    fs::write(dir.path().join("c.txt"), EXAMPLE_UNION_CERT).unwrap();
    let out = pclang(&["fooling", "check", "l.aut", "c.txt"], dir.path());
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("nsc >= 7"), "{}", stdout(&out));

    let without_split: String = EXAMPLE_UNION_CERT
        .lines()
        .filter(|l| l.starts_with("pair:"))
        .map(|l| format!("{l}\n"))
        .collect();
    fs::write(dir.path().join("plain.txt"), format!("fooling: plain\nclaimed: 7\n{without_split}")).unwrap();
    let out = pclang(&["fooling", "check", "l.aut", "plain.txt"], dir.path());
    assert_eq!(code(&out), 4);
    assert!(stdout(&out).contains("invalid"));
}

#[test]
fn empty_certificate_is_valid_with_bound_zero() {
    let dir = workdir();
    fs::write(dir.path().join("l.aut"), CHAIN).unwrap();
    fs::write(dir.path().join("c.txt"), "fooling: plain\n").unwrap();
    let out = pclang(&["fooling", "check", "l.aut", "c.txt"], dir.path());
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("valid, bound 0"));
}

#[test]
fn corrupted_complement_certificate_is_rejected() {
    let dir = workdir();
    let p = dir.path();
    assert_eq!(code(&pclang(&["witness", "complement-nsc", "--n", "3", "--emit", "l.aut"], p)), 0);
    assert_eq!(code(&pclang(&["ops", "complement", "l.aut", "--nfa", "--out", "c.aut"], p)), 0);
    assert_eq!(code(&pclang(&["fooling", "emit", "complement", "--n", "3", "--out", "f.txt"], p)), 0);

    let good = pclang(&["fooling", "check", "c.aut", "f.txt"], p);
    assert_eq!(code(&good), 0);
    assert!(stdout(&good).contains("nsc >= 8"));

    let text = fs::read_to_string(p.join("f.txt")).unwrap();
    let pairs: Vec<&str> = text.lines().filter(|l| l.starts_with("pair:")).collect();
    let corrupted = text.replacen(pairs[1], pairs[0], 1);
    fs::write(p.join("bad.txt"), corrupted).unwrap();
    let bad = pclang(&["fooling", "check", "c.aut", "bad.txt"], p);
    assert_eq!(code(&bad), 4);
    assert!(stdout(&bad).contains("invalid"));
}

#[test]
fn fooling_search_finds_certificate() {
    let dir = workdir();
    fs::write(dir.path().join("l.aut"), EXAMPLE_UNION).unwrap();
    let out = pclang(
        &["fooling", "search", "l.aut", "--extended", "--out", "s.txt"],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("bound=7"), "{}", stdout(&out));
    let check = pclang(&["fooling", "check", "l.aut", "s.txt"], dir.path());
    assert_eq!(code(&check), 0);
}

#[test]
fn census_csv_for_four_states() {
    let dir = workdir();
    let out = pclang(&["census", "--n", "4", "--out", "census.csv"], dir.path());
    assert_eq!(code(&out), 0);
    let csv = fs::read_to_string(dir.path().join("census.csv")).unwrap();
    let expected = "sc_star,count\n1,161\n2,1\n3,48\n4,30\n5,6\ntotal,246\naverage_exact,457/246\naverage_3dp,1.857\n";
    assert_eq!(csv, expected);
}

#[test]
fn ops_on_deterministic_inputs() {
    let dir = workdir();
    fs::write(dir.path().join("k.aut"), CHAIN).unwrap();
    let out = pclang(&["ops", "star", "k.aut", "--out", "s.aut"], dir.path());
    assert_eq!(code(&out), 0);
    let check = pclang(&["check-prefix-closed", "s.aut"], dir.path());
    assert_eq!(code(&check), 0);
    assert!(stdout(&check).contains("prefix_closed=true"));

    let out = pclang(&["ops", "concat", "k.aut", "k.aut"], dir.path());
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("operation=concatenation"));
}

#[test]
fn complexity_reports_sizes() {
    let dir = workdir();
    fs::write(dir.path().join("l.aut"), EXAMPLE_UNION).unwrap();
    let out = pclang(&["complexity", "l.aut"], dir.path());
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("isc=7"), "{text}");
    assert!(text.contains("sc=8"), "{text}");
    assert!(text.contains("prefix_closed=false"), "{text}");
}

#[test]
fn check_prefix_closed_reports_counterexample() {
    let dir = workdir();
    fs::write(dir.path().join("l.aut"), EXAMPLE_UNION).unwrap();
    let out = pclang(&["check-prefix-closed", "l.aut"], dir.path());
    assert_eq!(code(&out), 4);
    assert!(stdout(&out).contains("but its prefix"));
}

#[test]
fn exit_codes_for_bad_input() {
    let dir = workdir();
    let p = dir.path();
    fs::write(p.join("broken.aut"), "type: idfa\nalphabet: a\nstates: x\n").unwrap();
    assert_eq!(code(&pclang(&["complexity", "broken.aut"], p)), 2);

    fs::write(p.join("l.aut"), EXAMPLE_UNION).unwrap();
    assert_eq!(code(&pclang(&["ops", "star", "l.aut", "--nfa"], p)), 3);
    assert_eq!(code(&pclang(&["complexity", "missing.aut"], p)), 1);
}

#[test]
fn witness_emits_both_operands() {
    let dir = workdir();
    let p = dir.path();
    let out = pclang(&["witness", "concat-isc", "--m", "3", "--n", "3", "--emit", "w.aut", "--validate"], p);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(p.join("w.k.aut").exists());
    assert!(p.join("w.l.aut").exists());
}

#[test]
fn random_harness_passes() {
    let dir = workdir();
    let out = pclang(&["random", "--cases", "200", "--seed", "7"], dir.path());
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert_eq!(stdout(&out).matches("failures=0").count(), 4);
}
