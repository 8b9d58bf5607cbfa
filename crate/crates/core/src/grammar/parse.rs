//! Grammar text format:
//!
//! ```text
//! ; palindromes over {a, b}
//! alphabet: a b
//! S -> a S a | b S b | a | b | eps
//! ```
//!
//! Optional headers are `nonterminals: X Y ...` (declares names up front,
//! the first one becoming the default axiom) and `axiom: X`. Without them
//! the first left-hand side is the axiom. Right-hand-side tokens are
//! whitespace-separated; a token that is neither a nonterminal nor a letter
//! but spells a run of single-character letters (`aa`) is read as that run.

use super::{Cfg, NonTerminal, Production, Symbol};
use crate::error::{Error, Result};
use crate::probword::Alphabet;

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, msg: msg.into() }
}

pub fn parse_grammar(text: &str) -> Result<Cfg> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let l = l.split(';').next().unwrap_or("").trim();
            (!l.is_empty()).then_some((i + 1, l))
        })
        .collect();

    let mut alphabet: Option<Alphabet> = None;
    let mut names: Vec<String> = Vec::new();
    let mut axiom_name: Option<(usize, String)> = None;
    let mut rules: Vec<(usize, String, Vec<Vec<String>>)> = Vec::new();

    for &(line, l) in &lines {
        if let Some(rest) = l.strip_prefix("alphabet:") {
            let a = Alphabet::new(rest.split_whitespace()).map_err(|e| syntax(line, e.to_string()))?;
            if a.contains("eps") {
                return Err(syntax(line, "`eps` is reserved for the empty word"));
            }
            alphabet = Some(a);
        } else if let Some(rest) = l.strip_prefix("nonterminals:") {
            for n in rest.split_whitespace() {
                if !names.iter().any(|x| x == n) {
                    names.push(n.to_string());
                }
            }
        } else if let Some(rest) = l.strip_prefix("axiom:") {
            let n = rest.trim();
            if n.is_empty() || n.contains(char::is_whitespace) {
                return Err(syntax(line, "`axiom:` takes one nonterminal"));
            }
            axiom_name = Some((line, n.to_string()));
        } else if let Some((lhs, rhs)) = l.split_once("->") {
            let lhs = lhs.trim();
            if lhs.is_empty() || lhs.contains(char::is_whitespace) {
                return Err(syntax(line, format!("bad left-hand side `{lhs}`")));
            }
            let alts = rhs
                .split('|')
                .map(|alt| alt.split_whitespace().map(String::from).collect::<Vec<_>>())
                .collect::<Vec<_>>();
            if alts.iter().any(Vec::is_empty) {
                return Err(syntax(line, "empty alternative; write `eps` for the empty word"));
            }
            if !names.iter().any(|x| x == lhs) {
                names.push(lhs.to_string());
            }
            rules.push((line, lhs.to_string(), alts));
        } else {
            return Err(syntax(line, format!("expected a header or `X -> ...`, got `{l}`")));
        }
    }

    let alphabet = alphabet.ok_or_else(|| syntax(0, "missing `alphabet:` header"))?;
    if names.is_empty() {
        return Err(syntax(0, "no nonterminals"));
    }
    for n in &names {
        if alphabet.contains(n) {
            return Err(Error::NameClash(n.clone()));
        }
        if n == "eps" {
            return Err(syntax(0, "`eps` cannot be a nonterminal"));
        }
    }
    let nt = |s: &str| names.iter().position(|x| x == s).map(|i| NonTerminal(i as u32));

    let mut productions = Vec::new();
    for (line, lhs, alts) in rules {
        let lhs = nt(&lhs).expect("declared");
        for alt in alts {
            if alt.len() == 1 && (alt[0] == "eps" || alt[0] == "ε") {
                productions.push(Production::new(lhs, Vec::new()));
                continue;
            }
            let mut rhs = Vec::new();
            for tok in alt {
                if tok == "eps" || tok == "ε" {
                    return Err(syntax(line, "`eps` must stand alone in an alternative"));
                }
                if let Some(x) = nt(&tok) {
                    rhs.push(Symbol::N(x));
                } else if let Ok(a) = alphabet.letter(&tok) {
                    rhs.push(Symbol::T(a));
                } else if alphabet.is_compact() && tok.chars().all(|c| alphabet.contains(c.encode_utf8(&mut [0; 4]))) {
                    rhs.extend(alphabet.parse_word(&tok)?.into_iter().map(Symbol::T));
                } else {
                    return Err(Error::UndeclaredSymbol(tok));
                }
            }
            productions.push(Production::new(lhs, rhs));
        }
    }
    let axiom = match axiom_name {
        Some((line, n)) => nt(&n).ok_or_else(|| syntax(line, format!("axiom `{n}` is not a nonterminal")))?,
        None => NonTerminal(0),
    };
    Cfg::new(alphabet, names, axiom, productions)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const GAMMA0: &str = "\
alphabet: 0 1 #
S -> S # | S 0 | S 1 | S1
S1 -> 0 S1 0 | 1 S1 0 | 1 S1 1 | # S2
S2 -> 0 S2 | 1 S2 | # S2 | eps
";

    #[test]
    fn parses_gamma0() {
        let g = parse_grammar(GAMMA0).unwrap();
        assert_eq!(g.nonterminal_count(), 3);
        assert_eq!(g.productions().len(), 12);
        assert_eq!(g.name(g.axiom()), "S");
    }

    #[test]
    fn parses_palindromes() {
        let g = parse_grammar("alphabet: a b\nS -> a S a | b S b | a | b | eps\n").unwrap();
        assert_eq!(g.productions().len(), 5);
        assert!(g.productions().iter().any(|p| p.rhs.is_empty()));
        let again = parse_grammar(&g.to_string()).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn reports_undeclared_and_clashes() {
        assert_eq!(parse_grammar("alphabet: a\nS -> T\n"), Err(Error::UndeclaredSymbol("T".into())));
        assert_eq!(parse_grammar("alphabet: a S\nS -> a\n"), Err(Error::NameClash("S".into())));
        let err = parse_grammar("alphabet: a\nS -> a\nthis is not a rule\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, .. }));
    }

    #[test]
    fn compact_terminal_runs_and_axiom_override() {
        let g = parse_grammar("alphabet: a b\nS -> aa | ab\nT -> S\naxiom: T\n").unwrap();
        assert_eq!(g.name(g.axiom()), "T");
        assert_eq!(g.productions()[0].rhs.len(), 2);
    }
}
