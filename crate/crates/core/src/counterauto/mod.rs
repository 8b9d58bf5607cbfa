//! Counter automata with linear guards and additive updates, sliced into
//! layered NFAs of configurations for a fixed word length.

mod layered;
mod text;

use std::fmt;

pub use layered::{
    check_layered_unambiguous, layered_to_circuit, layered_to_ucfg, slice_automaton, Edge, LayeredNfa, Node,
    DEFAULT_NODE_CAP,
};
pub use text::parse_automaton;

use crate::error::{Error, Result};
use crate::probword::{Alphabet, Letter};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Lt,
    Ge,
    Gt,
    Eq,
    Ne,
}

impl Cmp {
    fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Cmp::Le => lhs <= rhs,
            Cmp::Lt => lhs < rhs,
            Cmp::Ge => lhs >= rhs,
            Cmp::Gt => lhs > rhs,
            Cmp::Eq => lhs == rhs,
            Cmp::Ne => lhs != rhs,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Cmp::Le => "<=",
            Cmp::Lt => "<",
            Cmp::Ge => ">=",
            Cmp::Gt => ">",
            Cmp::Eq => "=",
            Cmp::Ne => "!=",
        }
    }
}

/// `Σ coeffs[i]·c_{i+1}  cmp  rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<i64>,
    pub cmp: Cmp,
    pub rhs: i64,
}

impl Constraint {
    pub fn holds(&self, counters: &[i64]) -> bool {
        let lhs: i64 = self.coeffs.iter().zip(counters).map(|(a, c)| a * c).sum();
        self.cmp.holds(lhs, self.rhs)
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = String::new();
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let sign = if a < 0 {
                "-"
            } else if terms.is_empty() {
                ""
            } else {
                "+"
            };
            let mag = a.unsigned_abs();
            let coef = if mag == 1 { String::new() } else { mag.to_string() };
            terms += &format!("{sign}{coef}c{}", i + 1);
        }
        if terms.is_empty() {
            terms.push('0');
        }
        write!(f, "{terms}{}{}", self.cmp.symbol(), self.rhs)
    }
}

/// Conjunction of constraints; empty means `true`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Guard(pub Vec<Constraint>);

impl Guard {
    pub fn holds(&self, counters: &[i64]) -> bool {
        self.0.iter().all(|c| c.holds(counters))
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" & "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub from: usize,
    pub letter: Letter,
    pub to: usize,
    pub delta: Vec<i64>,
    pub guard: Guard,
}

/// Acceptance condition: final state plus a guard on the counters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Acceptance {
    pub state: usize,
    pub guard: Guard,
}

/// A nondeterministic automaton with `k` integer counters. Transitions fire
/// when their guard holds on the current counters and add their delta.
/// Runs on words of length `n` are assumed to keep every counter within
/// `±B(n)`, with `B` given by nonnegative polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterAutomaton {
    states: Vec<String>,
    alphabet: Alphabet,
    init: usize,
    counters: usize,
    bound: Vec<u64>,
    transitions: Vec<Transition>,
    accept: Vec<Acceptance>,
}

impl CounterAutomaton {
    pub fn new(
        states: Vec<String>,
        alphabet: Alphabet,
        init: usize,
        counters: usize,
        bound: Vec<u64>,
        transitions: Vec<Transition>,
        accept: Vec<Acceptance>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::ParameterOutOfRange(m));
        if states.is_empty() {
            return bad("an automaton needs at least one state".into());
        }
        if init >= states.len() {
            return bad(format!("initial state index {init} out of range"));
        }
        let guard_ok = |g: &Guard| g.0.iter().all(|c| c.coeffs.len() == counters);
        for t in &transitions {
            if t.from >= states.len() || t.to >= states.len() {
                return bad("transition refers to an unknown state".into());
            }
            alphabet.check(t.letter)?;
            if t.delta.len() != counters || !guard_ok(&t.guard) {
                return bad(format!("vectors must have length {counters}"));
            }
        }
        for a in &accept {
            if a.state >= states.len() || !guard_ok(&a.guard) {
                return bad("bad acceptance condition".into());
            }
        }
        Ok(CounterAutomaton { states, alphabet, init, counters, bound, transitions, accept })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn init(&self) -> usize {
        self.init
    }

    pub fn counters(&self) -> usize {
        self.counters
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn acceptance(&self) -> &[Acceptance] {
        &self.accept
    }

    pub fn bound_coefficients(&self) -> &[u64] {
        &self.bound
    }

    /// `B(n)`, saturating.
    pub fn bound(&self, n: usize) -> u64 {
        let mut acc: u64 = 0;
        for &c in self.bound.iter().rev() {
            acc = acc.saturating_mul(n as u64).saturating_add(c);
        }
        acc
    }

    /// Whether a configuration is accepting.
    pub fn accepts(&self, state: usize, counters: &[i64]) -> bool {
        self.accept.iter().any(|a| a.state == state && a.guard.holds(counters))
    }

    /// `(n + 1)·|Q|·(2B(n) + 1)ᵏ`, saturating: the most configurations a
    /// slice can have.
    pub fn node_bound(&self, n: usize) -> u128 {
        let side = 2 * self.bound(n) as u128 + 1;
        let mut total = (n as u128 + 1) * self.states.len() as u128;
        for _ in 0..self.counters {
            total = total.saturating_mul(side);
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constraint_display_and_eval() {
        let c = Constraint { coeffs: vec![1, -2], cmp: Cmp::Ge, rhs: 1 };
        assert_eq!(c.to_string(), "c1-2c2>=1");
        assert!(c.holds(&[3, 1]));
        assert!(!c.holds(&[2, 1]));
        assert_eq!(Guard::default().to_string(), "");
        assert!(Guard::default().holds(&[]));
    }
}
