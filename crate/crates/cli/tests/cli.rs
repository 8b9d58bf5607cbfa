use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(rel: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus", rel].iter().collect();
    p.display().to_string()
}

fn probmem(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_probmem")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn result_line(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", stderr(o));
    stdout(o).lines().find(|l| l.starts_with("result: ")).expect("result line").to_string()
}

/// The report with timing lines removed.
fn untimed(s: &str) -> String {
    s.lines().filter(|l| !l.starts_with("time:")).collect::<Vec<_>>().join("\n")
}

#[test]
fn palindromes_on_uniform_length_three() {
    let o = probmem(&[
        "eval",
        "--grammar",
        &corpus("grammars/unambiguous/palindromes.cfg"),
        "--word",
        &corpus("words/uniform3_ab.pw"),
        "--verify",
    ]);
    assert_eq!(result_line(&o), "result: 1/2");
    assert!(stdout(&o).contains("verify: ok"));
}

#[test]
fn ambiguous_grammar_on_dirac_word() {
    let o = probmem(&[
        "eval",
        "--grammar",
        &corpus("grammars/ambiguous/gamma0.cfg"),
        "--word",
        &corpus("words/l0_witness.pw"),
    ]);
    assert_eq!(result_line(&o), "result: 1");
}

#[test]
fn automaton_and_builtin_eval() {
    let dir = tempfile::tempdir().unwrap();
    let word = dir.path().join("w.pw");
    fs::write(&word, "alphabet: a b\nuniform\nuniform\nuniform\nuniform\n").unwrap();
    let word = word.display().to_string();
    let o = probmem(&["eval", "--automaton", &corpus("automata/anbn.ca"), "--word", &word, "--verify"]);
    // ε is not of length 4, so only aabb
    assert_eq!(result_line(&o), "result: 1/16");
    let o = probmem(&["eval", "--builtin", "primitive", "--word", &word, "--verify"]);
    assert_eq!(result_line(&o), "result: 3/4");
}

#[test]
fn malformed_grammar_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("bad.cfg");
    fs::write(&g, "alphabet: a b\nS -> a S\nT => b\n").unwrap();
    let o = probmem(&["eval", "--grammar", &g.display().to_string(), "--word", &corpus("words/uniform3_ab.pw")]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("line 3"), "stderr: {}", stderr(&o));
}

#[test]
fn compile_then_evaluate_circuits() {
    let dir = tempfile::tempdir().unwrap();
    let word = dir.path().join("u.pw");
    let circ = dir.path().join("c.circ");
    let (word_s, circ_s) = (word.display().to_string(), circ.display().to_string());

    let o = probmem(&["compile", "--builtin", "l3", "--n", "4", "--verify", "-o", &circ_s]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("verify: ok (7 words)"));

    fs::write(&word, "alphabet: a b\nuniform\nuniform\nuniform\nuniform\n").unwrap();
    probmem(&["compile", "--builtin", "primitive", "--n", "4", "-o", &circ_s]);
    let o = probmem(&["eval-circuit", "--circuit", &circ_s, "--word", &word_s, "--verify"]);
    assert_eq!(result_line(&o), "result: 3/4");

    fs::write(&word, "alphabet: a b\nuniform\nuniform\n").unwrap();
    probmem(&["compile", "--builtin", "pal2", "--n", "2", "-o", &circ_s]);
    let o = probmem(&["eval-circuit", "--circuit", &circ_s, "--word", &word_s]);
    assert_eq!(result_line(&o), "result: 1");

    // the circuit on stdout, the report on stderr
    let o = probmem(&["compile", "--grammar", &corpus("grammars/unambiguous/dyck.cfg"), "--n", "4"]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("command: compile"));
    assert!(!stdout(&o).contains("command:"));
}

#[test]
fn eval_circuit_rejects_length_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let circ = dir.path().join("c.circ");
    let word = dir.path().join("u.pw");
    fs::write(&word, "alphabet: a b\nuniform\n").unwrap();
    probmem(&["compile", "--builtin", "primitive", "--n", "3", "-o", &circ.display().to_string()]);
    let o = probmem(&["eval-circuit", "--circuit", &circ.display().to_string(), "--word", &word.display().to_string()]);
    assert!(!o.status.success());
}

#[test]
fn reduce_single_clause() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.pp2dnf");
    fs::write(&f, "x: 1\ny: 1\nx1 y1\n").unwrap();
    let o = probmem(&["reduce", "--formula", &f.display().to_string(), "--target", "l0", "--verify"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).lines().any(|l| l == "??#11#"), "{}", stdout(&o));
    assert!(stderr(&o).contains("normalization: 4"));
    assert!(stderr(&o).contains("verify: ok (1 accepted completions)"));

    fs::write(&f, "x: 2\ny: 1\n").unwrap();
    let o = probmem(&["reduce", "--formula", &f.display().to_string(), "--target", "counter"]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("warning"));
}

#[test]
fn verify_passes_and_detects_faults() {
    let o = probmem(&["verify", "--max-n", "5"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
    let o = probmem(&["verify", "--max-n", "4", "--inject-fault"]);
    assert!(!o.status.success());
    assert!(!stdout(&o).lines().any(|l| l.starts_with("PASS")));
}

#[test]
fn bench_prints_table_and_slopes() {
    let o = probmem(&["bench", "--builtin", "pal2", "--from", "2", "--to", "16"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("n\tgates\twires\tsize\tcompile_ms\teval_ms\n"));
    assert_eq!(out.lines().filter(|l| !l.starts_with('#')).count(), 5);
    assert!(out.contains("# slope(size)"));
}

#[test]
fn slice_lists_words() {
    let o = probmem(&["slice", "--grammar", &corpus("grammars/ambiguous/bounded.cfg"), "--n", "4", "--verify"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), 6);
    assert!(stderr(&o).contains("verify: ok"));
}

#[test]
fn output_is_deterministic_apart_from_timing() {
    let args =
        ["eval", "--grammar", &corpus("grammars/unambiguous/palindromes.cfg"), "--word", &corpus("words/mixed4_ab.pw")];
    let (a, b) = (probmem(&args), probmem(&args));
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(untimed(&stdout(&a)), untimed(&stdout(&b)));
    let (a, b) =
        (probmem(&["verify", "--seed", "7", "--max-n", "3"]), probmem(&["verify", "--seed", "7", "--max-n", "3"]));
    assert_eq!(stdout(&a), stdout(&b));
}
