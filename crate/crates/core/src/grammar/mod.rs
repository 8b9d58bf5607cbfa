//! Context-free grammars, the normalization pipeline and a Boolean CYK
//! membership oracle.
//!
//! The pipeline used by the weighted CYK engine and the circuit compiler is
//!
//! ```text
//! Cfg --to_2nf--> NormalizedCfg --eliminate_epsilon--> --prune_useless--> --with_unit_order-->
//! ```
//!
//! with [`normalize`] running all of it. The bounded-slice enumerator runs
//! [`NormalizedCfg::collapse_unit_sccs`] instead of computing a unit order,
//! since its input may be ambiguous.

mod cyk;
mod normalize;
mod parse;

use std::collections::HashSet;
use std::fmt;

pub use cyk::cyk_member;
pub use normalize::{normalize, normalize_for_slices, NormalizedCfg, Stages};
pub use parse::parse_grammar;

use crate::error::{Error, Result};
use crate::probword::{Alphabet, Letter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NonTerminal(pub u32);

impl NonTerminal {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    T(Letter),
    N(NonTerminal),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Production {
    pub lhs: NonTerminal,
    pub rhs: Vec<Symbol>,
}

impl Production {
    pub fn new(lhs: NonTerminal, rhs: Vec<Symbol>) -> Self {
        Production { lhs, rhs }
    }
}

/// A context-free grammar `(N, S, P)` over an alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cfg {
    alphabet: Alphabet,
    nonterminals: Vec<String>,
    axiom: NonTerminal,
    productions: Vec<Production>,
}

impl Cfg {
    /// Validates symbol ranges and name disjointness; duplicate productions
    /// are dropped, keeping the first occurrence.
    pub fn new(
        alphabet: Alphabet,
        nonterminals: Vec<String>,
        axiom: NonTerminal,
        productions: Vec<Production>,
    ) -> Result<Self> {
        for (i, n) in nonterminals.iter().enumerate() {
            if alphabet.contains(n) {
                return Err(Error::NameClash(n.clone()));
            }
            if nonterminals[..i].contains(n) {
                return Err(Error::DuplicateNonterminal(n.clone()));
            }
        }
        let nt_ok = |x: NonTerminal| {
            if x.index() < nonterminals.len() {
                Ok(())
            } else {
                Err(Error::UndeclaredSymbol(format!("N{}", x.0)))
            }
        };
        nt_ok(axiom)?;
        let mut seen = HashSet::new();
        let mut kept = Vec::with_capacity(productions.len());
        for p in productions {
            nt_ok(p.lhs)?;
            for s in &p.rhs {
                match *s {
                    Symbol::T(l) => {
                        alphabet.check(l)?;
                    }
                    Symbol::N(x) => nt_ok(x)?,
                }
            }
            if seen.insert(p.clone()) {
                kept.push(p);
            }
        }
        Ok(Cfg { alphabet, nonterminals, axiom, productions: kept })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn nonterminal_count(&self) -> usize {
        self.nonterminals.len()
    }

    pub fn name(&self, x: NonTerminal) -> &str {
        &self.nonterminals[x.index()]
    }

    pub fn nonterminal(&self, name: &str) -> Option<NonTerminal> {
        self.nonterminals.iter().position(|n| n == name).map(|i| NonTerminal(i as u32))
    }

    pub fn axiom(&self) -> NonTerminal {
        self.axiom
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    pub fn productions_of(&self, x: NonTerminal) -> impl Iterator<Item = &Production> {
        self.productions.iter().filter(move |p| p.lhs == x)
    }

    /// Grammar size `Σ (1 + |rhs|)` over productions.
    pub fn size(&self) -> usize {
        self.productions.iter().map(|p| 1 + p.rhs.len()).sum()
    }

    fn fmt_symbol(&self, s: Symbol) -> &str {
        match s {
            Symbol::T(l) => self.alphabet.name(l),
            Symbol::N(x) => self.name(x),
        }
    }

    pub fn fmt_production(&self, p: &Production) -> String {
        let rhs = if p.rhs.is_empty() {
            "eps".to_string()
        } else {
            p.rhs.iter().map(|&s| self.fmt_symbol(s)).collect::<Vec<_>>().join(" ")
        };
        format!("{} -> {}", self.name(p.lhs), rhs)
    }
}

/// Writes the grammar in the text format accepted by [`parse_grammar`].
impl fmt::Display for Cfg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alphabet: {}", self.alphabet)?;
        writeln!(f, "nonterminals: {}", self.nonterminals.join(" "))?;
        writeln!(f, "axiom: {}", self.name(self.axiom))?;
        for (i, name) in self.nonterminals.iter().enumerate() {
            let alts: Vec<String> = self
                .productions_of(NonTerminal(i as u32))
                .map(|p| {
                    if p.rhs.is_empty() {
                        "eps".to_string()
                    } else {
                        p.rhs.iter().map(|&s| self.fmt_symbol(s)).collect::<Vec<_>>().join(" ")
                    }
                })
                .collect();
            if !alts.is_empty() {
                writeln!(f, "{} -> {}", name, alts.join(" | "))?;
            }
        }
        Ok(())
    }
}

/// Picks `base`, or `base` with a numeric suffix, avoiding `taken` names and
/// alphabet letters. Deterministic for a given input.
pub(crate) fn fresh_name(base: &str, taken: &HashSet<String>, alphabet: &Alphabet) -> String {
    let free = |s: &str| !taken.contains(s) && !alphabet.contains(s) && s != "eps";
    if free(base) {
        return base.to_string();
    }
    (1..).map(|k| format!("{base}_{k}")).find(|s| free(s)).expect("unbounded")
}
