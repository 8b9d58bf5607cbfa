mod bench;
mod report;
mod verify;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use probmem::circuit::{parse_circuit, write_circuit, Circuit};
use probmem::compile::{compile_ucfg, enumerate_bounded_slice, l3_alphabet, wordlist_to_circuit, Builtin};
use probmem::counterauto::{layered_to_circuit, parse_automaton, slice_automaton, CounterAutomaton, DEFAULT_NODE_CAP};
use probmem::grammar::{normalize, normalize_for_slices, parse_grammar, Cfg};
use probmem::oracle::{
    brute_prob, brute_slice, builtin_predicate, raw_member, simulate_automaton, MembershipPredicate,
};
use probmem::probword::text::{parse_probword, write_partial_word};
use probmem::probword::{Alphabet, ProbWord, Probability};
use probmem::reductions::{
    count_pp2dnf, encode_counter, encode_l0, encode_l0prime, match_l0, match_l0prime, match_l1, parse_pp2dnf,
};
use probmem::wcyk::prob_membership_ucfg;

use report::RunReport;

/// Exact probabilistic membership for context-free and counter languages.
#[derive(Parser)]
#[command(name = "probmem", version)]
struct Cli {
    /// Cross-check results against brute force when the instance is small enough.
    #[arg(long, global = true)]
    verify: bool,

    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Size cap for bounded slices (words) and sliced automata (nodes).
    #[arg(long, global = true)]
    cap: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Probability that a probabilistic word lies in a language.
    Eval(EvalArgs),
    /// Compile the length-n slice of a language into a circuit.
    Compile(CompileArgs),
    /// Evaluate a circuit file on a probabilistic word.
    EvalCircuit(EvalCircuitArgs),
    /// Encode a PP2DNF formula as a partial word.
    Reduce(ReduceArgs),
    /// Run the oracle-equivalence suites.
    Verify(verify::VerifyArgs),
    /// Time compilation and evaluation over a range of lengths.
    Bench(bench::BenchArgs),
    /// List the words of length n of a bounded (polyslender) grammar.
    Slice(SliceArgs),
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Language {
    /// Grammar file.
    #[arg(long)]
    grammar: Option<PathBuf>,
    /// Counter automaton file.
    #[arg(long)]
    automaton: Option<PathBuf>,
    /// Builtin language: primitive, pal2, l3, mk:K or order:K.
    #[arg(long)]
    builtin: Option<Builtin>,
}

#[derive(Args)]
struct EvalArgs {
    #[command(flatten)]
    language: Language,
    /// Probabilistic word file.
    #[arg(long)]
    word: PathBuf,
}

#[derive(Args)]
struct CompileArgs {
    #[command(flatten)]
    language: Language,
    /// Slice length.
    #[arg(long)]
    n: usize,
    /// Alphabet letters for builtins, written compactly.
    #[arg(long, default_value = "ab")]
    alphabet: String,
    /// Treat the grammar as bounded and possibly ambiguous: enumerate its slice.
    #[arg(long)]
    bounded: bool,
    /// Circuit output file; the circuit goes to stdout and the report to stderr otherwise.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalCircuitArgs {
    #[arg(long)]
    circuit: PathBuf,
    #[arg(long)]
    word: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    L0,
    L0prime,
    Counter,
}

#[derive(Args)]
struct ReduceArgs {
    /// PP2DNF formula file.
    #[arg(long)]
    formula: PathBuf,
    #[arg(long, value_enum)]
    target: Target,
    /// Partial word output file; stdout otherwise, with the report on stderr.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SliceArgs {
    #[arg(long)]
    grammar: PathBuf,
    #[arg(long)]
    n: usize,
}

struct Global {
    verify: bool,
    seed: u64,
    cap: Option<usize>,
}

fn read(path: &Path, report: &mut RunReport) -> Result<String> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    report.input(path, &bytes);
    String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))
}

fn load_grammar(path: &Path, report: &mut RunReport) -> Result<Cfg> {
    parse_grammar(&read(path, report)?).with_context(|| format!("in grammar {}", path.display()))
}

fn load_automaton(path: &Path, report: &mut RunReport) -> Result<CounterAutomaton> {
    parse_automaton(&read(path, report)?).with_context(|| format!("in automaton {}", path.display()))
}

fn alphabet_for(b: Builtin, letters: &str) -> Result<Alphabet> {
    if b == Builtin::L3 {
        return Ok(l3_alphabet());
    }
    Ok(Alphabet::from_chars(letters)?)
}

fn circuit_for_automaton(a: &CounterAutomaton, n: usize, cap: Option<usize>) -> Result<Circuit> {
    let m = slice_automaton(a, n, cap.unwrap_or(DEFAULT_NODE_CAP))?;
    Ok(layered_to_circuit(&m)?)
}

/// Reports whether `got` equals the brute-force probability, when feasible.
fn cross_check(report: &mut RunReport, pred: &MembershipPredicate, p: &ProbWord, got: &Probability) -> Result<()> {
    match brute_prob(pred, p) {
        Ok(want) if &want == got => report.note("verify", "ok (brute force)"),
        Ok(want) => bail!("verification failed: brute force gives {want}, computed {got}"),
        Err(e) => report.note("verify", format!("skipped ({e})")),
    }
    Ok(())
}

fn cmd_eval(g: &Global, args: &EvalArgs) -> Result<RunReport> {
    let mut report = RunReport::new("eval");
    let lang = &args.language;
    let start = Instant::now();
    let (pred, source) = if let Some(path) = &lang.grammar {
        let cfg = load_grammar(path, &mut report)?;
        let raw = cfg.clone();
        (MembershipPredicate::new("grammar", move |_, w| raw_member(&raw, w)), Source::Grammar(cfg))
    } else if let Some(path) = &lang.automaton {
        let a = load_automaton(path, &mut report)?;
        let sim = a.clone();
        (MembershipPredicate::new("automaton", move |_, w| simulate_automaton(&sim, w)), Source::Automaton(a))
    } else {
        let b = lang.builtin.expect("clap enforces one language");
        let pred = builtin_predicate(&b.to_string()).ok_or_else(|| anyhow!("no predicate for {b}"))?;
        (pred, Source::Builtin(b))
    };
    let p =
        parse_probword(&read(&args.word, &mut report)?).with_context(|| format!("in word {}", args.word.display()))?;
    report.time("parse", start.elapsed());
    let start = Instant::now();
    let result = match &source {
        Source::Grammar(cfg) => {
            let ng = normalize(cfg)?;
            prob_membership_ucfg(&ng, &p)?
        }
        Source::Automaton(a) => {
            if a.alphabet() != p.alphabet() {
                bail!("automaton alphabet {} differs from word alphabet {}", a.alphabet(), p.alphabet());
            }
            let c = circuit_for_automaton(a, p.len(), g.cap)?;
            report.stats = Some(c.stats());
            c.evaluate(&p)?
        }
        Source::Builtin(b) => {
            let c = b.compile(p.len(), p.alphabet())?;
            report.stats = Some(c.stats());
            c.evaluate(&p)?
        }
    };
    report.time("compute", start.elapsed());
    if g.verify {
        cross_check(&mut report, &pred, &p, &result)?;
    }
    report.result = Some(result);
    Ok(report)
}

enum Source {
    Grammar(Cfg),
    Automaton(CounterAutomaton),
    Builtin(Builtin),
}

fn cmd_compile(g: &Global, args: &CompileArgs) -> Result<RunReport> {
    let mut report = RunReport::new("compile");
    let lang = &args.language;
    let n = args.n;
    let start = Instant::now();
    let (circuit, pred) = if let Some(path) = &lang.grammar {
        let cfg = load_grammar(path, &mut report)?;
        let c = if args.bounded {
            let ng = normalize_for_slices(&cfg);
            let words = enumerate_bounded_slice(&ng, n, g.cap.unwrap_or(100_000))?;
            report.note("words", words.len());
            wordlist_to_circuit(&words, n, cfg.alphabet())?
        } else {
            compile_ucfg(&normalize(&cfg)?, n)?
        };
        (c, MembershipPredicate::new("grammar", move |_, w| raw_member(&cfg, w)))
    } else if let Some(path) = &lang.automaton {
        let a = load_automaton(path, &mut report)?;
        let c = circuit_for_automaton(&a, n, g.cap)?;
        (c, MembershipPredicate::new("automaton", move |_, w| simulate_automaton(&a, w)))
    } else {
        let b = lang.builtin.expect("clap enforces one language");
        let c = b.compile(n, &alphabet_for(b, &args.alphabet)?)?;
        (c, builtin_predicate(&b.to_string()).ok_or_else(|| anyhow!("no predicate for {b}"))?)
    };
    report.time("compile", start.elapsed());
    report.stats = Some(circuit.stats());
    report.note("length", n);
    if g.verify {
        circuit.validate_structure()?;
        match brute_slice(&pred, n, circuit.alphabet()) {
            Ok(want) => {
                let got = circuit.accepted_words()?;
                if got != want {
                    bail!("verification failed: circuit has {} words, brute force {}", got.len(), want.len());
                }
                if let Some(v) = circuit.check_disjointness()? {
                    bail!("verification failed: union gate {} is not disjoint", v.gate);
                }
                report.note("verify", format!("ok ({} words)", got.len()));
            }
            Err(e) => report.note("verify", format!("skipped ({e})")),
        }
    }
    let text = write_circuit(&circuit);
    match &args.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(report)
}

fn cmd_eval_circuit(g: &Global, args: &EvalCircuitArgs) -> Result<RunReport> {
    let mut report = RunReport::new("eval-circuit");
    let start = Instant::now();
    let c = parse_circuit(&read(&args.circuit, &mut report)?)
        .with_context(|| format!("in circuit {}", args.circuit.display()))?;
    let p =
        parse_probword(&read(&args.word, &mut report)?).with_context(|| format!("in word {}", args.word.display()))?;
    report.time("parse", start.elapsed());
    c.validate_structure().context("circuit fails validation")?;
    let start = Instant::now();
    let result = c.evaluate(&p)?;
    report.time("evaluate", start.elapsed());
    report.stats = Some(c.stats());
    if g.verify {
        let words = c.accepted_words()?;
        let want: Probability =
            words.iter().map(|w| p.prob_of_word(w)).collect::<probmem::Result<Vec<_>>>()?.into_iter().sum();
        if want != result {
            bail!("verification failed: enumeration gives {want}, evaluation {result}");
        }
        report.note("verify", format!("ok ({} accepted assignments)", words.len()));
    }
    report.result = Some(result);
    Ok(report)
}

fn cmd_reduce(g: &Global, args: &ReduceArgs) -> Result<RunReport> {
    let mut report = RunReport::new("reduce");
    let f = parse_pp2dnf(&read(&args.formula, &mut report)?)
        .with_context(|| format!("in formula {}", args.formula.display()))?;
    if f.clauses().is_empty() {
        eprintln!("warning: the formula has no clauses, so no completion is accepted");
    }
    let (out, matcher): (_, fn(&str) -> bool) = match args.target {
        Target::L0 => (encode_l0(&f), match_l0),
        Target::L0prime => (encode_l0prime(&f), match_l0prime),
        Target::Counter => (encode_counter(&f), match_l1),
    };
    report.note("wildcards", out.word.wildcard_count());
    report.note("normalization", out.normalization());
    if g.verify {
        let got = out.count_completions(matcher)?;
        let want = count_pp2dnf(&f)?;
        if got != want {
            bail!("verification failed: {got} accepted completions, {want} satisfying valuations");
        }
        report.note("verify", format!("ok ({got} accepted completions)"));
    }
    let text = write_partial_word(&out.word, &out.sub);
    match &args.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(report)
}

fn cmd_slice(g: &Global, args: &SliceArgs) -> Result<RunReport> {
    let mut report = RunReport::new("slice");
    let cfg = load_grammar(&args.grammar, &mut report)?;
    let start = Instant::now();
    let words = enumerate_bounded_slice(&normalize_for_slices(&cfg), args.n, g.cap.unwrap_or(100_000))?;
    report.time("enumerate", start.elapsed());
    report.note("length", args.n);
    report.note("words", words.len());
    if g.verify {
        let raw = cfg.clone();
        let pred = MembershipPredicate::new("grammar", move |_, w| raw_member(&raw, w));
        match brute_slice(&pred, args.n, cfg.alphabet()) {
            Ok(want) if want.iter().eq(words.iter()) => report.note("verify", "ok (brute force)"),
            Ok(want) => bail!("verification failed: {} words enumerated, brute force {}", words.len(), want.len()),
            Err(e) => report.note("verify", format!("skipped ({e})")),
        }
    }
    for w in &words {
        println!("{}", cfg.alphabet().format_word(w));
    }
    Ok(report)
}

fn run(cli: Cli) -> Result<()> {
    let g = Global { verify: cli.verify, seed: cli.seed, cap: cli.cap };
    // commands whose artifact goes to stdout send the report to stderr
    let (report, to_stderr) = match &cli.command {
        Command::Eval(a) => (cmd_eval(&g, a)?, false),
        Command::Compile(a) => (cmd_compile(&g, a)?, a.out.is_none()),
        Command::EvalCircuit(a) => (cmd_eval_circuit(&g, a)?, false),
        Command::Reduce(a) => (cmd_reduce(&g, a)?, a.out.is_none()),
        Command::Slice(a) => (cmd_slice(&g, a)?, true),
        Command::Verify(a) => return verify::run(a, g.seed),
        Command::Bench(a) => return bench::run(a, g.seed),
    };
    if to_stderr {
        eprint!("{report}");
    } else {
        print!("{report}");
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
