use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use probmem::circuit::Circuit;
use probmem::compile::{compile_ucfg, Builtin};
use probmem::counterauto::{layered_to_circuit, parse_automaton, slice_automaton, DEFAULT_NODE_CAP};
use probmem::grammar::{normalize, parse_grammar, Cfg};
use probmem::oracle::{
    brute_prob, brute_slice, builtin_predicate, random_dyadic_probword, raw_member, simulate_automaton,
    MembershipPredicate,
};
use probmem::probword::Alphabet;
use probmem::reductions::{
    count_pp2dnf, encode_counter, encode_l0, encode_l0prime, match_l0, match_l0prime, match_l1, parse_pp2dnf,
    pp2dnf_random, Pp2dnf,
};

const GRAMMARS: &[(&str, &str)] = &[
    ("palindromes", include_str!("../../../corpus/grammars/unambiguous/palindromes.cfg")),
    ("dyck", include_str!("../../../corpus/grammars/unambiguous/dyck.cfg")),
    ("anbn", include_str!("../../../corpus/grammars/unambiguous/anbn.cfg")),
    ("balanced", include_str!("../../../corpus/grammars/unambiguous/balanced.cfg")),
    ("ends_ab", include_str!("../../../corpus/grammars/unambiguous/ends_ab.cfg")),
    ("even_a", include_str!("../../../corpus/grammars/unambiguous/even_a.cfg")),
    ("l0_exact", include_str!("../../../corpus/grammars/unambiguous/l0_exact.cfg")),
    ("l0_tail", include_str!("../../../corpus/grammars/unambiguous/l0_tail.cfg")),
    ("optional", include_str!("../../../corpus/grammars/unambiguous/optional.cfg")),
];

const AUTOMATA: &[(&str, &str)] = &[
    ("abc", include_str!("../../../corpus/automata/abc.ca")),
    ("anbn", include_str!("../../../corpus/automata/anbn.ca")),
    ("same_count", include_str!("../../../corpus/automata/same_count.ca")),
];

const GAMMA0: &str = include_str!("../../../corpus/grammars/ambiguous/gamma0.cfg");
const FORMULA: &str = include_str!("../../../corpus/formulas/two_clauses.pp2dnf");

/// Random words drawn per (language, length) pair.
const SAMPLES: usize = 3;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scope {
    All,
    Grammar,
    Builtin,
    Reductions,
    Automata,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    scope: Scope,
    /// Largest slice length checked.
    #[arg(long, default_value_t = 6)]
    max_n: usize,
    /// Deliberately corrupt every computation; each check must then fail.
    #[arg(long)]
    inject_fault: bool,
}

struct Suite {
    rng: ChaCha8Rng,
    max_n: usize,
    fault: bool,
    passed: usize,
    failed: usize,
}

impl Suite {
    fn record(&mut self, name: &str, outcome: Result<String>) {
        match outcome {
            Ok(detail) => {
                self.passed += 1;
                println!("PASS {name} {detail}");
            }
            Err(e) => {
                self.failed += 1;
                println!("FAIL {name} {e:#}");
            }
        }
    }

    /// Complements the output gate when a fault is requested.
    fn corrupt(&self, mut c: Circuit) -> Result<Circuit> {
        if self.fault {
            let out = c.output()?;
            let neg = c.complement(out)?;
            c.set_output(neg)?;
        }
        Ok(c)
    }

    /// Compares a circuit with a predicate on its whole slice and on random
    /// dyadic words of length `n`.
    fn check_circuit(&mut self, c: &Circuit, pred: &MembershipPredicate, n: usize) -> Result<usize> {
        let alphabet = c.alphabet().clone();
        let want = brute_slice(pred, n, &alphabet)?;
        let got = c.accepted_words()?;
        if got != want {
            bail!("slice has {} words, brute force {}", got.len(), want.len());
        }
        for _ in 0..SAMPLES {
            let p = random_dyadic_probword(n, &alphabet, 3, &mut self.rng);
            let (got, want) = (c.evaluate(&p)?, brute_prob(pred, &p)?);
            if got != want {
                bail!("probability {got}, brute force {want}");
            }
        }
        Ok(want.len())
    }

    fn grammars(&mut self) {
        for (name, text) in GRAMMARS {
            let outcome = (|| {
                let cfg = parse_grammar(text)?;
                let ng = normalize(&cfg)?;
                let pred = grammar_predicate(&cfg);
                let mut words = 0;
                for n in 0..=self.max_n {
                    let c = self.corrupt(compile_ucfg(&ng, n)?)?;
                    words += self.check_circuit(&c, &pred, n)?;
                }
                Ok(format!("(n <= {}, {words} words)", self.max_n))
            })();
            self.record(&format!("grammar/{name}"), outcome);
        }
    }

    fn builtins(&mut self) {
        let ab = Alphabet::from_chars("ab").expect("valid alphabet");
        for b in ["primitive", "pal2", "l3", "mk:2", "mk:3", "order:2"] {
            let outcome = (|| {
                let builtin: Builtin = b.parse()?;
                let pred = builtin_predicate(b).expect("every builtin has a predicate");
                for n in (0..=self.max_n).filter(|&n| defined_at(builtin, n)) {
                    let c = self.corrupt(builtin.compile(n, &ab)?)?;
                    self.check_circuit(&c, &pred, n)?;
                }
                Ok(format!("(n <= {})", self.max_n))
            })();
            self.record(&format!("builtin/{b}"), outcome);
        }
    }

    fn automata(&mut self) {
        for (name, text) in AUTOMATA {
            let outcome = (|| {
                let a = parse_automaton(text)?;
                let sim = a.clone();
                let pred = MembershipPredicate::new(*name, move |_, w| simulate_automaton(&sim, w));
                for n in 0..=self.max_n {
                    let m = slice_automaton(&a, n, DEFAULT_NODE_CAP)?;
                    let c = self.corrupt(layered_to_circuit(&m)?)?;
                    self.check_circuit(&c, &pred, n)?;
                }
                Ok(format!("(n <= {})", self.max_n))
            })();
            self.record(&format!("automaton/{name}"), outcome);
        }
    }

    fn reductions(&mut self) {
        let gamma0 = parse_grammar(GAMMA0).expect("embedded grammar parses");
        let gamma0 = grammar_predicate(&gamma0);
        let mut formulas = vec![("two_clauses".to_string(), parse_pp2dnf(FORMULA).expect("embedded formula parses"))];
        for i in 0..4u64 {
            let n = 1 + (i as usize % 3);
            let f = pp2dnf_random(n, n, n, self.seed_for(i)).expect("feasible parameters");
            formulas.push((format!("random{i}"), f));
        }
        for (name, f) in &formulas {
            let outcome = (|| {
                let want = count_pp2dnf(f)?;
                // the fault drops a clause before encoding, so the counts drift
                let encoded = if self.fault { drop_clause(f)? } else { f.clone() };
                let checks: [(&str, _, fn(&str) -> bool); 3] = [
                    ("l0", encode_l0(&encoded), match_l0),
                    ("l0prime", encode_l0prime(&encoded), match_l0prime),
                    ("counter", encode_counter(&encoded), match_l1),
                ];
                for (target, out, matcher) in checks {
                    let got = out.count_completions(matcher)?;
                    if got != want {
                        bail!("{target}: {got} accepted completions, {want} satisfying valuations");
                    }
                }
                let out = encode_l0(&encoded);
                let a = out.word.alphabet();
                let via_grammar = out.count_completions(|s| a.parse_word(s).is_ok_and(|w| gamma0.test(a, &w)))?;
                if via_grammar != want {
                    bail!("grammar: {via_grammar} accepted completions, {want} satisfying valuations");
                }
                Ok(format!("({want} satisfying valuations)"))
            })();
            self.record(&format!("reduction/{name}"), outcome);
        }
    }

    fn seed_for(&mut self, i: u64) -> u64 {
        use rand::Rng;
        self.rng.gen::<u64>() ^ i
    }
}

/// `mk:K` and `order:K` need `K` to divide a positive length.
fn defined_at(b: Builtin, n: usize) -> bool {
    match b {
        Builtin::Mk(k) | Builtin::Order(k) => n > 0 && n.is_multiple_of(k),
        _ => true,
    }
}

fn grammar_predicate(cfg: &Cfg) -> MembershipPredicate {
    let raw = cfg.clone();
    MembershipPredicate::new("grammar", move |_, w| raw_member(&raw, w))
}

fn drop_clause(f: &Pp2dnf) -> Result<Pp2dnf> {
    let mut clauses = f.clauses().to_vec();
    clauses.pop();
    Ok(Pp2dnf::new(f.n_x(), f.n_y(), clauses)?)
}

pub fn run(args: &VerifyArgs, seed: u64) -> Result<()> {
    let mut suite = Suite {
        rng: ChaCha8Rng::seed_from_u64(seed),
        max_n: args.max_n,
        fault: args.inject_fault,
        passed: 0,
        failed: 0,
    };
    let wants = |s: Scope| args.scope == Scope::All || args.scope == s;
    if wants(Scope::Grammar) {
        suite.grammars();
    }
    if wants(Scope::Builtin) {
        suite.builtins();
    }
    if wants(Scope::Automata) {
        suite.automata();
    }
    if wants(Scope::Reductions) {
        suite.reductions();
    }
    println!("{} passed, {} failed", suite.passed, suite.failed);
    if suite.failed > 0 {
        bail!("{} verification checks failed", suite.failed);
    }
    Ok(())
}
