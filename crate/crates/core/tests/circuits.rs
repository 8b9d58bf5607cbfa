mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use probmem::circuit::{parse_circuit, write_circuit, Circuit, Gate};
use probmem::compile::{compile_ucfg, divisors, Builtin};
use probmem::grammar::normalize;
use probmem::oracle::{brute_prob, builtin_predicate, random_dyadic_probword};
use probmem::probword::{Alphabet, ProbWord, Probability};
use probmem::wcyk::prob_membership_ucfg;
use probmem::Error;

fn ab() -> Alphabet {
    Alphabet::from_chars("ab").unwrap()
}

fn builtins(n: usize) -> Vec<Builtin> {
    let mut out = vec![Builtin::Primitive, Builtin::Pal2, Builtin::L3];
    out.extend((1..=n).map(Builtin::Mk));
    out.extend(divisors(n).into_iter().map(Builtin::Order));
    out
}

#[test]
fn written_circuits_read_back_and_evaluate_identically() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 1..=7 {
        for b in builtins(n) {
            let c = b.compile(n, &ab()).unwrap();
            let text = write_circuit(&c);
            let back = parse_circuit(&text).unwrap();
            back.validate_structure().unwrap();
            let p = random_dyadic_probword(n, c.alphabet(), 4, &mut rng);
            assert_eq!(back.evaluate(&p).unwrap(), c.evaluate(&p).unwrap(), "{b}, n = {n}");
            assert_eq!(write_circuit(&back), text, "{b}, n = {n}");
        }
    }
}

#[test]
fn builtins_agree_with_their_predicates() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 1..=8 {
        for b in builtins(n) {
            let pred = builtin_predicate(&b.to_string()).unwrap();
            let c = b.compile(n, &ab()).unwrap();
            for _ in 0..5 {
                let p = random_dyadic_probword(n, c.alphabet(), 3, &mut rng);
                assert_eq!(c.evaluate(&p).unwrap(), brute_prob(&pred, &p).unwrap(), "{b}, n = {n}");
            }
        }
    }
}

#[test]
fn ucfg_circuits_agree_with_weighted_cyk() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, g) in common::unambiguous_grammars() {
        let ng = normalize(&g).unwrap();
        for n in 0..=7 {
            let c = compile_ucfg(&ng, n).unwrap();
            for _ in 0..5 {
                let p = random_dyadic_probword(n, g.alphabet(), 3, &mut rng);
                assert_eq!(c.evaluate(&p).unwrap(), prob_membership_ucfg(&ng, &p).unwrap(), "{name}, n = {n}");
            }
        }
    }
}

#[test]
fn evaluation_rejects_mismatched_words() {
    let c = Builtin::Primitive.compile(4, &ab()).unwrap();
    let short = ProbWord::uniform(3, &ab());
    assert!(matches!(c.evaluate(&short), Err(Error::PositionOutOfRange { .. })));
    let other = ProbWord::uniform(4, &Alphabet::from_chars("xy").unwrap());
    assert!(matches!(c.evaluate(&other), Err(Error::AlphabetMismatch)));
}

#[test]
fn non_smooth_union_is_named_by_validation() {
    let text = "alphabet: a b\n0 input 1 a\n1 input 2 a\n7 union 0 1\noutput 7\n";
    // messages use gate indices in file order
    let err = parse_circuit(text).and_then(|c| c.validate_structure()).unwrap_err();
    assert_eq!(err, Error::DomainMismatch(2, 0));
}

fn arb_probword(n: usize) -> impl Strategy<Value = ProbWord> {
    prop::collection::vec(0u64..=8, n).prop_map(move |ws| {
        let a = ab();
        let positions = ws
            .into_iter()
            .map(|k| {
                probmem::probword::Distribution::new(
                    a.clone(),
                    vec![Probability::ratio(k, 8), Probability::ratio(8 - k, 8)],
                )
                .unwrap()
            })
            .collect();
        ProbWord::new(a, positions).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn complement_sums_to_one(n in 1usize..=8, seed in 0u64..1000, p in arb_probword(8)) {
        let b = builtins(n)[seed as usize % builtins(n).len()];
        let mut c: Circuit = b.compile(n, &ab()).unwrap();
        let p = ProbWord::new(ab(), p.positions()[..n].to_vec()).unwrap();
        let out = c.output().unwrap();
        let neg = c.complement(out).unwrap();
        prop_assert!(matches!(c.gate(neg).unwrap(), Gate::Complement(_)));
        let total = c.evaluate_gate(out, &p).unwrap() + c.evaluate_gate(neg, &p).unwrap();
        prop_assert!(total.is_one());
    }
}
