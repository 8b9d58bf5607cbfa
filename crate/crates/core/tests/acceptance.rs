//! Acceptance suite: one PASS/FAIL line per criterion, with wall time.
//! Runs as a plain binary (`harness = false`) so the lines always print.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use probmem::circuit::Circuit;
use probmem::compile::{
    compile_l3, compile_mndj, compile_order, compile_orders, compile_pal2, compile_pal2_parts, compile_primitive,
    compile_ucfg, divisors, enumerate_bounded_slice, l3_alphabet, wordlist_to_circuit, Builtin,
};
use probmem::counterauto::{check_layered_unambiguous, layered_to_circuit, slice_automaton, DEFAULT_NODE_CAP};
use probmem::grammar::{cyk_member, normalize, normalize_for_slices, NormalizedCfg};
use probmem::oracle::{
    brute_count, brute_prob, brute_slice, builtin_predicate, loglog_slope, mobius_primitive_count,
    random_dyadic_probword, raw_member, simulate_automaton, MembershipPredicate,
};
use probmem::probword::{Alphabet, ProbWord, Probability, Word};
use probmem::reductions::{
    count_pp2dnf, encode_counter, encode_l0, encode_l0prime, match_l0, match_l0prime, match_l1, match_l2, pp2dnf_random,
};
use probmem::wcyk::prob_membership_ucfg;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ab() -> Alphabet {
    Alphabet::from_chars("ab").unwrap()
}

fn abc() -> Alphabet {
    Alphabet::from_chars("abc").unwrap()
}

/// `p · |Σ|ⁿ` for a probability under the uniform word.
fn uniform_count(c: &Circuit, n: usize) -> Result<BigInt, String> {
    let a = c.alphabet();
    let p = c.evaluate(&ProbWord::uniform(n, a)).map_err(err)?;
    let scaled = p * Probability::from_integer(BigInt::from(a.size()).pow(n as u32));
    scaled.to_integer().map(BigInt::from).ok_or_else(|| "uniform probability times |Σ|ⁿ is not an integer".into())
}

fn cyk_predicate(g: &NormalizedCfg) -> MembershipPredicate {
    let g = g.clone();
    MembershipPredicate::new("cyk", move |_, w| cyk_member(&g, w).expect("cyk runs at every stage"))
}

fn c1_weighted_cyk() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let grammars = common::unambiguous_grammars();
    ensure(grammars.len() >= 6, || format!("only {} uCFGs in the corpus", grammars.len()))?;
    let mut cases = 0;
    for (name, g) in &grammars {
        ensure(g.alphabet().size() <= 3, || format!("{name}: alphabet too large"))?;
        let ng = normalize(g).map_err(|e| format!("{name}: {e}"))?;
        let pred = cyk_predicate(&NormalizedCfg::to_2nf(g));
        for t in 0..50 {
            let p = random_dyadic_probword(t % 9, g.alphabet(), 3, &mut rng);
            let got = prob_membership_ucfg(&ng, &p).map_err(|e| format!("{name}: {e}"))?;
            let want = brute_prob(&pred, &p).map_err(err)?;
            ensure(got == want, || format!("{name}, n = {}: {got} vs brute force {want}", p.len()))?;
            cases += 1;
        }
    }
    Ok(format!("{} grammars, {cases} words", grammars.len()))
}

/// Every compiler output with `n ≤ 8`, tagged with its length.
fn compiler_outputs() -> Result<Vec<(String, usize, Circuit)>, String> {
    let mut out = Vec::new();
    for (alphabet, max_n) in [(ab(), 8), (abc(), 6)] {
        for n in 0..=max_n {
            let mut builtins = vec![Builtin::Primitive, Builtin::Pal2];
            if n >= 1 {
                builtins.extend((1..=n).map(Builtin::Mk));
                builtins.extend(divisors(n).into_iter().map(Builtin::Order));
            }
            if alphabet.size() == 2 {
                builtins.push(Builtin::L3);
            }
            for b in builtins {
                let a = if b == Builtin::L3 { l3_alphabet() } else { alphabet.clone() };
                out.push((format!("{b}/{}", a.size()), n, b.compile(n, &a).map_err(err)?));
            }
            for d in divisors(n) {
                for j in 0..n / d {
                    if let Ok(c) = compile_mndj(n, d, j, &alphabet) {
                        out.push((format!("mndj({d},{j})/{}", alphabet.size()), n, c));
                    }
                }
            }
        }
    }
    for (name, g) in common::unambiguous_grammars() {
        let ng = normalize(&g).map_err(err)?;
        for n in 0..=8 {
            out.push((format!("ucfg:{name}"), n, compile_ucfg(&ng, n).map_err(err)?));
        }
    }
    for (name, a) in common::automata() {
        for n in 0..=8 {
            let m = slice_automaton(&a, n, DEFAULT_NODE_CAP).map_err(err)?;
            out.push((format!("automaton:{name}"), n, layered_to_circuit(&m).map_err(err)?));
        }
    }
    let bounded = normalize_for_slices(&common::grammar("bounded"));
    for n in 0..=8 {
        let words = enumerate_bounded_slice(&bounded, n, 10_000).map_err(err)?;
        out.push(("bounded".into(), n, wordlist_to_circuit(&words, n, bounded.cfg().alphabet()).map_err(err)?));
    }
    Ok(out)
}

fn c2_circuit_evaluation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let circuits = compiler_outputs()?;
    for (name, n, c) in &circuits {
        c.validate_structure().map_err(|e| format!("{name}, n = {n}: {e}"))?;
        let words = c.accepted_words().map_err(err)?;
        let mut neg_circuit = c.clone();
        let out = neg_circuit.output().map_err(err)?;
        let neg = neg_circuit.complement(out).map_err(err)?;
        for _ in 0..20 {
            let p = random_dyadic_probword(*n, c.alphabet(), 3, &mut rng);
            let got = c.evaluate(&p).map_err(err)?;
            let want: Probability = words.iter().map(|w| p.prob_of_word(w).unwrap()).sum();
            ensure(got == want, || format!("{name}, n = {n}: {got} vs enumeration {want}"))?;
            let not = neg_circuit.evaluate_gate(neg, &p).map_err(err)?;
            ensure(got.clone() + not.clone() == Probability::one(), || format!("{name}, n = {n}: {got} + {not} != 1"))?;
        }
    }
    Ok(format!("{} circuits x 20 words", circuits.len()))
}

fn c3_ucfg_slices() -> Outcome {
    let mut ambiguous_violations = 0;
    let mut checked = 0;
    let unambiguous: BTreeSet<String> = common::unambiguous_grammars().into_iter().map(|(n, _)| n).collect();
    for (name, g) in common::all_grammars() {
        let ng = normalize_for_slices(&g);
        let two = NormalizedCfg::to_2nf(&g);
        for n in 0..=8 {
            let c = compile_ucfg(&ng, n).map_err(err)?;
            let got = c.enumerate_assignments(c.output().map_err(err)?).map_err(err)?;
            let want: BTreeSet<Word> = g.alphabet().all_words(n).filter(|w| cyk_member(&two, w).unwrap()).collect();
            ensure(got == want, || {
                format!("{name}, n = {n}: circuit slice has {} words, CYK {}", got.len(), want.len())
            })?;
            let violation = c.check_disjointness().map_err(err)?;
            if unambiguous.contains(&name) {
                ensure(violation.is_none(), || format!("{name}, n = {n}: union gate not disjoint"))?;
            } else if violation.is_some() {
                ambiguous_violations += 1;
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} slices; disjoint for every uCFG; {ambiguous_violations} non-disjoint slices from ambiguous grammars"
    ))
}

fn c4_l3() -> Outcome {
    let pred = builtin_predicate("l3").unwrap();
    for k in 0..=8usize {
        let c = compile_l3(2 * k);
        let want = BigInt::from(4).pow(k as u32) - BigInt::from(3).pow(k as u32);
        let got = uniform_count(&c, 2 * k)?;
        ensure(got == want, || format!("k = {k}: {got} vs 4^k - 3^k = {want}"))?;
        if k <= 6 {
            let brute = brute_count(&pred, 2 * k, &l3_alphabet()).map_err(err)?;
            ensure(BigInt::from(brute) == want, || format!("k = {k}: brute force {brute}"))?;
        }
    }
    for n in (1..=15).step_by(2) {
        ensure(uniform_count(&compile_l3(n), n)? == BigInt::from(0), || format!("odd length {n} not empty"))?;
    }
    let points: Vec<(f64, f64)> =
        [8, 16, 32, 64, 128, 256, 512, 1024].iter().map(|&n| (n as f64, compile_l3(n).size() as f64)).collect();
    let slope = loglog_slope(&points);
    ensure(slope <= 1.2, || format!("size slope {slope:.3} > 1.2"))?;
    Ok(format!("size slope {slope:.3}"))
}

fn c5_primitive() -> Outcome {
    let pred = builtin_predicate("primitive").unwrap();
    for (a, sigma) in [(ab(), 2), (abc(), 3)] {
        for n in 1..=12 {
            let got = uniform_count(&compile_primitive(n, &a).map_err(err)?, n)?;
            let mobius = mobius_primitive_count(n, sigma);
            let brute = BigInt::from(brute_count(&pred, n, &a).map_err(err)?);
            ensure(got == mobius && got == brute, || {
                format!("σ = {sigma}, n = {n}: {got}, Möbius {mobius}, brute {brute}")
            })?;
        }
    }
    let p = compile_primitive(6, &ab()).map_err(err)?.evaluate(&ProbWord::uniform(6, &ab())).map_err(err)?;
    ensure(p == Probability::ratio(27, 32), || format!("uniform(6) gives {p}"))?;
    let mut points = Vec::new();
    for n in [8, 12, 16, 24, 32, 48, 64, 96, 128] {
        points.push((n as f64, compile_primitive(n, &ab()).map_err(err)?.size() as f64));
    }
    let slope = loglog_slope(&points);
    ensure(slope <= 2.3, || format!("size slope {slope:.3} > 2.3"))?;
    Ok(format!("size slope {slope:.3}"))
}

fn c6_pal2() -> Outcome {
    let pred = builtin_predicate("pal2").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (a, max_n) in [(ab(), 12), (abc(), 8)] {
        for n in 0..=max_n {
            let (c, parts) = compile_pal2_parts(n, &a).map_err(err)?;
            let got = uniform_count(&c, n)?;
            let brute = BigInt::from(brute_count(&pred, n, &a).map_err(err)?);
            ensure(got == brute, || format!("σ = {}, n = {n}: {got} vs brute force {brute}", a.size()))?;
            // the empty word has no (d, j) decomposition
            if n == 0 {
                continue;
            }
            for p in [ProbWord::uniform(n, &a), random_dyadic_probword(n, &a, 3, &mut rng)] {
                let total = c.evaluate(&p).map_err(err)?;
                let sum: Probability = parts.values().map(|&g| c.evaluate_gate(g, &p).unwrap()).sum();
                ensure(sum == total, || format!("σ = {}, n = {n}: parts sum to {sum}, total {total}", a.size()))?;
            }
        }
    }
    let mut points = Vec::new();
    for n in (8..=64).step_by(8) {
        points.push((n as f64, compile_pal2(n, &ab()).map_err(err)?.size() as f64));
    }
    let slope = loglog_slope(&points);
    ensure(slope <= 3.3, || format!("size slope {slope:.3} > 3.3"))?;
    Ok(format!("size slope {slope:.3}"))
}

fn c7_orders() -> Outcome {
    for n in 1..=12 {
        let u = ProbWord::uniform(n, &ab());
        let mut sum = Probability::zero();
        for d in divisors(n) {
            sum += compile_order(n, d, &ab()).map_err(err)?.evaluate(&u).map_err(err)?;
        }
        ensure(sum.is_one(), || format!("n = {n}: order slices sum to {sum}"))?;
        let (c, gates) = compile_orders(n, &ab()).map_err(err)?;
        let shared: Probability = gates.values().map(|&g| c.evaluate_gate(g, &u).unwrap()).sum();
        ensure(shared.is_one(), || format!("n = {n}: shared order gates sum to {shared}"))?;
    }
    for (a, max_n) in [(ab(), 8), (abc(), 6)] {
        for n in 1..=max_n {
            for d in divisors(n) {
                let got = compile_order(n, d, &a).map_err(err)?.accepted_words().map_err(err)?;
                let want = brute_slice(&builtin_predicate(&format!("order:{d}")).unwrap(), n, &a).map_err(err)?;
                ensure(got == want, || format!("σ = {}, n = {n}, d = {d}: slice mismatch", a.size()))?;
            }
        }
    }
    Ok("n ≤ 12 partition, n ≤ 8 slices".into())
}

fn c8_bounded() -> Outcome {
    let g = common::grammar("bounded");
    let ng = normalize_for_slices(&g);
    let two = NormalizedCfg::to_2nf(&g);
    for n in 0..=10 {
        let words = enumerate_bounded_slice(&ng, n, 10_000).map_err(err)?;
        ensure(words.windows(2).all(|w| w[0] < w[1]), || format!("n = {n}: duplicate or unsorted words"))?;
        let got: BTreeSet<Word> = words.into_iter().collect();
        let want: BTreeSet<Word> = g.alphabet().all_words(n).filter(|w| cyk_member(&two, w).unwrap()).collect();
        ensure(got == want, || format!("n = {n}: {} words vs CYK {}", got.len(), want.len()))?;
    }
    let mut points = Vec::new();
    for n in [4, 8, 16, 32, 64] {
        let words = enumerate_bounded_slice(&ng, n, 10_000).map_err(err)?;
        points.push((n as f64, (words.len() * n) as f64));
    }
    let slope = loglog_slope(&points);
    ensure(slope <= 2.0, || format!("output size slope {slope:.3} > 2"))?;
    Ok(format!("output size (total symbols) slope {slope:.3}"))
}

fn c9_counter_automata() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for name in ["abc", "anbn"] {
        let a = common::automaton(name);
        let aut = a.clone();
        let pred = MembershipPredicate::new(name, move |_, w| simulate_automaton(&aut, w));
        for n in 0..=6 {
            let m = slice_automaton(&a, n, DEFAULT_NODE_CAP).map_err(err)?;
            ensure(check_layered_unambiguous(&m).is_ok(), || format!("{name}, n = {n}: layered NFA ambiguous"))?;
            let bound = a.node_bound(n);
            ensure(m.node_count() as u128 <= bound, || {
                format!("{name}, n = {n}: {} nodes > bound {bound}", m.node_count())
            })?;
            let c = layered_to_circuit(&m).map_err(err)?;
            let mut words = vec![ProbWord::uniform(n, a.alphabet())];
            words.extend((0..10).map(|_| random_dyadic_probword(n, a.alphabet(), 3, &mut rng)));
            for p in words {
                let got = c.evaluate(&p).map_err(err)?;
                let want = brute_prob(&pred, &p).map_err(err)?;
                ensure(got == want, || format!("{name}, n = {n}: {got} vs brute force {want}"))?;
            }
        }
    }
    let a = common::automaton("abc");
    let m = slice_automaton(&a, 3, DEFAULT_NODE_CAP).map_err(err)?;
    let p = layered_to_circuit(&m).map_err(err)?.evaluate(&ProbWord::uniform(3, a.alphabet())).map_err(err)?;
    ensure(p == Probability::ratio(1, 27), || format!("abc uniform(3) gives {p}"))?;
    Ok("abc and anbn, n ≤ 6".into())
}

fn c10_reductions() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut completions = 0usize;
    for seed in 0..120u64 {
        let n_x = rng.gen_range(1..=4);
        let n_y = rng.gen_range(1..=8 - n_x);
        let m = rng.gen_range(0..=n_x * n_y);
        let f = pp2dnf_random(n_x, n_y, m, seed).map_err(err)?;
        let want = count_pp2dnf(&f).map_err(err)?;
        let l0 = encode_l0(&f).count_completions(match_l0).map_err(err)?;
        let l0p = encode_l0prime(&f).count_completions(match_l0prime).map_err(err)?;
        let counter = encode_counter(&f);
        let l1 = counter.count_completions(match_l1).map_err(err)?;
        let l2 = counter.count_completions(match_l2).map_err(err)?;
        ensure(l0 == want && l0p == want && l1 == want && l2 == want, || {
            format!("{f:?}: formula {want}, L0 {l0}, L0' {l0p}, L1 {l1}, L2 {l2}")
        })?;
        for w in counter.completion_strings().map_err(err)? {
            ensure(match_l1(&w) == match_l2(&w), || format!("L1 and L2 disagree on {w}"))?;
            completions += 1;
        }
    }
    Ok(format!("120 formulas, {completions} counter completions"))
}

fn c11_pipeline() -> Outcome {
    let mut checked = 0;
    for (name, g) in common::all_grammars() {
        ensure(g.alphabet().size() <= 3, || format!("{name}: alphabet too large"))?;
        let two = NormalizedCfg::to_2nf(&g);
        let eps = two.clone().eliminate_epsilon();
        let pruned = eps.clone().prune_useless();
        let collapsed = pruned.clone().collapse_unit_sccs();
        let ordered = collapsed.clone().with_unit_order().map_err(|e| format!("{name}: {e}"))?;
        let mut stages = vec![
            ("2nf", two),
            ("eps", eps),
            ("pruned", pruned.clone()),
            ("collapsed", collapsed),
            ("ordered", ordered),
        ];
        if let Ok(direct) = pruned.with_unit_order() {
            stages.push(("unit-order", direct));
        }
        for n in 0..=6 {
            for w in g.alphabet().all_words(n) {
                let want = raw_member(&g, &w);
                for (stage, sg) in &stages {
                    let got = cyk_member(sg, &w).map_err(err)?;
                    ensure(got == want, || {
                        format!("{name} after {stage}: {} misclassified", g.alphabet().format_word(&w))
                    })?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} word/stage checks"))
}

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            title: "weighted CYK equals brute force",
            limit: Some(Duration::from_secs(60)),
            run: c1_weighted_cyk,
        },
        Criterion {
            id: 2,
            title: "circuit evaluation and complement",
            limit: Some(Duration::from_secs(60)),
            run: c2_circuit_evaluation,
        },
        Criterion {
            id: 3,
            title: "uCFG compiler slice fidelity",
            limit: Some(Duration::from_secs(120)),
            run: c3_ucfg_slices,
        },
        Criterion { id: 4, title: "L3 counts and linear size", limit: None, run: c4_l3 },
        Criterion { id: 5, title: "primitive words", limit: None, run: c5_primitive },
        Criterion { id: 6, title: "PAL2 counts, partition and size", limit: None, run: c6_pal2 },
        Criterion { id: 7, title: "order-slice partition", limit: None, run: c7_orders },
        Criterion { id: 8, title: "bounded-CFL enumeration", limit: None, run: c8_bounded },
        Criterion { id: 9, title: "counter-automaton slicing", limit: None, run: c9_counter_automata },
        Criterion { id: 10, title: "hardness reductions", limit: Some(Duration::from_secs(120)), run: c10_reductions },
        Criterion { id: 11, title: "grammar pipeline preservation", limit: None, run: c11_pipeline },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let result = match (result, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.1?}, limit {limit:?}")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("PASS  {:>2}  {:<36} {:>8.2?}  {detail}", c.id, c.title, elapsed),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}  {:<36} {:>8.2?}  {why}", c.id, c.title, elapsed);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
