mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use probmem::counterauto::{
    check_layered_unambiguous, layered_to_circuit, layered_to_ucfg, parse_automaton, slice_automaton, DEFAULT_NODE_CAP,
};
use probmem::grammar::cyk_member;
use probmem::grammar::normalize_for_slices;
use probmem::oracle::{count_runs, random_dyadic_probword, simulate_automaton};
use probmem::Error;

#[test]
fn path_counts_match_run_counts() {
    for (name, a) in common::automata() {
        for n in 0..=6 {
            let m = slice_automaton(&a, n, DEFAULT_NODE_CAP).unwrap();
            let paths = m.path_counts();
            for w in a.alphabet().all_words(n) {
                let runs = count_runs(&a, &w);
                assert_eq!(paths.get(&w).copied().unwrap_or(0), runs, "{name}");
                assert_eq!(runs > 0, simulate_automaton(&a, &w), "{name}");
            }
        }
    }
}

#[test]
fn layered_grammar_recognizes_the_slice() {
    for (name, a) in common::automata() {
        for n in 0..=5 {
            let m = slice_automaton(&a, n, DEFAULT_NODE_CAP).unwrap();
            let (g, _) = layered_to_ucfg(&m);
            let ng = normalize_for_slices(&g);
            for w in a.alphabet().all_words(n) {
                assert_eq!(cyk_member(&ng, &w).unwrap(), simulate_automaton(&a, &w), "{name}");
            }
        }
    }
}

#[test]
fn circuits_from_automata_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, a) in common::automata() {
        let aut = a.clone();
        let pred = probmem::oracle::MembershipPredicate::new(name.clone(), move |_, w| simulate_automaton(&aut, w));
        for n in 0..=6 {
            let m = slice_automaton(&a, n, DEFAULT_NODE_CAP).unwrap();
            let c = layered_to_circuit(&m).unwrap();
            let p = random_dyadic_probword(n, a.alphabet(), 3, &mut rng);
            assert_eq!(c.evaluate(&p).unwrap(), probmem::oracle::brute_prob(&pred, &p).unwrap(), "{name}");
        }
    }
}

const GUESS: &str = "\
states: p q r
alphabet: a b
init: p
counters: 1
p --a/(+1)--> p
p --a/(+1)--> q
q --a/(+1)--> q
p --b/(-1)--> r
q --b/(-1)--> r
r --b/(-1)--> r
accept r [c1=0]
";

#[test]
fn ambiguous_automaton_is_reported_with_a_witness() {
    let a = parse_automaton(GUESS).unwrap();
    let m = slice_automaton(&a, 4, DEFAULT_NODE_CAP).unwrap();
    let w = check_layered_unambiguous(&m).unwrap_err();
    assert_eq!(a.alphabet().format_word(&w), "aabb");
    assert!(matches!(layered_to_circuit(&m), Err(Error::AmbiguousSlice(_))));
}

#[test]
fn node_cap_is_enforced() {
    let a = common::automaton("abc");
    assert!(matches!(slice_automaton(&a, 6, 5), Err(Error::StateSpaceCapExceeded(5))));
}
