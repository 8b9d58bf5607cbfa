use std::collections::BTreeSet;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::grammar::{Cfg, NonTerminal, NormalizedCfg, Production, Symbol};
use crate::probword::{Alphabet, Word};

/// Sorted, duplicate-free list of the words of length `n` generated by `g`.
/// Works on ambiguous grammars (run [`crate::grammar::normalize_for_slices`]
/// first). Sets `L[X, i]` of words of length `i` derivable from `X` are built
/// bottom-up; any set larger than `cap` aborts with
/// [`Error::SizeCapExceeded`], which signals a language that is not
/// polynomially slender or a cap that is too small.
pub fn enumerate_bounded_slice(g: &NormalizedCfg, n: usize, cap: usize) -> Result<Vec<Word>> {
    let order: Vec<usize> = g.unit_order()?.iter().map(|x| x.index()).collect();
    if n == 0 {
        return Ok(if g.accepts_empty() { vec![Vec::new()] } else { Vec::new() });
    }
    let cfg = g.cfg();
    let nt = cfg.nonterminal_count();
    let mut by_lhs: Vec<Vec<&[Symbol]>> = vec![Vec::new(); nt];
    for p in cfg.productions() {
        by_lhs[p.lhs.index()].push(&p.rhs);
    }
    // sets[len][x], len ≥ 1
    let mut sets: Vec<Vec<BTreeSet<Word>>> = vec![Vec::new(); n + 1];
    for len in 1..=n {
        sets[len] = vec![BTreeSet::new(); nt];
        for &x in &order {
            let mut acc: BTreeSet<Word> = BTreeSet::new();
            for rhs in &by_lhs[x] {
                match *rhs {
                    [Symbol::T(a)] => {
                        if len == 1 {
                            acc.insert(vec![*a]);
                        }
                    }
                    [Symbol::N(y)] => acc.extend(sets[len][y.index()].iter().cloned()),
                    [Symbol::N(y), Symbol::N(z)] => {
                        for k in 1..len {
                            let right = &sets[len - k][z.index()];
                            if right.is_empty() {
                                continue;
                            }
                            for u in &sets[k][y.index()] {
                                for v in right {
                                    let mut w = u.clone();
                                    w.extend_from_slice(v);
                                    acc.insert(w);
                                }
                                if acc.len() > cap {
                                    return Err(Error::SizeCapExceeded(cap));
                                }
                            }
                        }
                    }
                    _ => unreachable!("2NF without epsilon rules"),
                }
                if acc.len() > cap {
                    return Err(Error::SizeCapExceeded(cap));
                }
            }
            sets[len][x] = acc;
        }
    }
    Ok(std::mem::take(&mut sets[n][cfg.axiom().index()]).into_iter().collect())
}

fn check_wordlist(words: &[Word], n: Option<usize>) -> Result<usize> {
    let n = n.or_else(|| words.first().map(Vec::len)).unwrap_or(0);
    let distinct: BTreeSet<&Word> = words.iter().collect();
    if distinct.len() != words.len() {
        return Err(Error::ParameterOutOfRange("word list has duplicates".into()));
    }
    if words.iter().any(|w| w.len() != n) {
        return Err(Error::ParameterOutOfRange(format!("word list mixes lengths (expected {n})")));
    }
    Ok(n)
}

/// The flat grammar `S → w₁ | ... | w_m`, unambiguous since the words are
/// distinct.
pub fn slice_to_ucfg(words: &[Word], alphabet: &Alphabet) -> Result<Cfg> {
    check_wordlist(words, None)?;
    let s = NonTerminal(0);
    let productions = words.iter().map(|w| Production::new(s, w.iter().map(|&a| Symbol::T(a)).collect())).collect();
    Cfg::new(alphabet.clone(), vec!["S".into()], s, productions)
}

/// Disjoint union of one product of inputs per word; the empty slice when
/// `words` is empty.
pub fn wordlist_to_circuit(words: &[Word], n: usize, alphabet: &Alphabet) -> Result<Circuit> {
    check_wordlist(words, Some(n))?;
    let mut c = Circuit::new(alphabet.clone());
    let out = if words.is_empty() {
        c.empty_slice(n)?
    } else {
        let gates = words.iter().map(|w| c.word_gate(w, 0)).collect::<Result<Vec<_>>>()?;
        c.union(gates)?
    };
    c.set_output(out)?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::{normalize_for_slices, parse_grammar};
    use crate::probword::{ProbWord, Probability};
    use crate::wcyk::prob_membership;

    const BOUNDED: &str = "\
alphabet: a b c
S -> A M | P C
A -> a A | eps
M -> b M c | eps
P -> a P b | eps
C -> c C | eps
";

    fn names(a: &Alphabet, ws: &[Word]) -> Vec<String> {
        ws.iter().map(|w| a.format_word(w)).collect()
    }

    #[test]
    fn bounded_examples() {
        let g = normalize_for_slices(&parse_grammar(BOUNDED).unwrap());
        let a = g.cfg().alphabet().clone();
        assert_eq!(names(&a, &enumerate_bounded_slice(&g, 3, 1000).unwrap()), ["aaa", "abc", "ccc"]);
        assert_eq!(enumerate_bounded_slice(&g, 0, 1000).unwrap(), vec![Vec::new()]);
        let g =
            normalize_for_slices(&parse_grammar("alphabet: a b\nS -> A B\nA -> a A | eps\nB -> b B | eps\n").unwrap());
        assert_eq!(names(&a, &enumerate_bounded_slice(&g, 2, 1000).unwrap()), ["aa", "ab", "bb"]);
    }

    #[test]
    fn cap_trips_on_palindromes() {
        let g = normalize_for_slices(&parse_grammar("alphabet: a b\nS -> a S a | b S b | a | b | eps\n").unwrap());
        assert_eq!(enumerate_bounded_slice(&g, 16, 100), Err(Error::SizeCapExceeded(100)));
    }

    #[test]
    fn wrappers() {
        let a = Alphabet::from_chars("ab").unwrap();
        let words = vec![a.parse_word("aa").unwrap(), a.parse_word("ab").unwrap()];
        let g = slice_to_ucfg(&words, &a).unwrap();
        assert_eq!(g.to_string().lines().last().unwrap(), "S -> a a | a b");
        let p = ProbWord::uniform(2, &a);
        assert_eq!(prob_membership(&g, &p).unwrap(), Probability::ratio(1, 2));
        let c = wordlist_to_circuit(&words, 2, &a).unwrap();
        assert_eq!(c.evaluate(&p).unwrap(), Probability::ratio(1, 2));
        assert!(wordlist_to_circuit(&[], 2, &a).unwrap().evaluate(&p).unwrap().is_zero());
        let abc = Alphabet::from_chars("abc").unwrap();
        let w = abc.parse_word("abc").unwrap();
        let c = wordlist_to_circuit(&[w], 3, &abc).unwrap();
        assert!(c.evaluate(&ProbWord::dirac_str("abc", &abc).unwrap()).unwrap().is_one());
        assert!(wordlist_to_circuit(&[words[0].clone(), words[0].clone()], 2, &a).is_err());
    }
}
