//! Automaton text format:
//!
//! ```text
//! states: p q r
//! alphabet: a b c
//! init: p
//! counters: 2
//! bound: 0 1                      ; B(n) = n
//! p --a/(+1,0)--> p
//! p --b[c1>=1]/(-1,+1)--> q
//! accept r [c1=0 & c2=0]
//! ```
//!
//! Counters are named `c1 .. ck`. Guards are `&`-separated linear
//! constraints such as `c1-2c2>=1` or `c1 = c2`. A missing delta means no
//! update; a missing `bound:` means `B(n) = n`.

use std::fmt;

use super::{Acceptance, Cmp, Constraint, CounterAutomaton, Guard, Transition};
use crate::error::{Error, Result};
use crate::probword::Alphabet;

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, msg: msg.into() }
}

/// Parses `2c1 - c2 + 3` into coefficients and a constant.
fn linear_expr(s: &str, k: usize) -> std::result::Result<(Vec<i64>, i64), String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty expression".into());
    }
    let mut coeffs = vec![0i64; k];
    let mut constant = 0i64;
    let mut terms: Vec<String> = Vec::new();
    for (i, ch) in s.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 {
            terms.push(String::new());
        }
        if terms.is_empty() {
            terms.push(String::new());
        }
        terms.last_mut().expect("nonempty").push(ch);
    }
    for t in terms {
        let (sign, body) = match t.strip_prefix('-') {
            Some(b) => (-1, b),
            None => (1, t.strip_prefix('+').unwrap_or(&t)),
        };
        match body.find('c') {
            Some(at) => {
                let coef = body[..at].trim_end_matches('*');
                let coef: i64 =
                    if coef.is_empty() { 1 } else { coef.parse().map_err(|_| format!("bad term `{t}`"))? };
                let idx: usize = body[at + 1..].parse().map_err(|_| format!("bad counter in `{t}`"))?;
                if idx == 0 || idx > k {
                    return Err(format!("counter c{idx} out of range (have {k})"));
                }
                coeffs[idx - 1] += sign * coef;
            }
            None => constant += sign * body.parse::<i64>().map_err(|_| format!("bad term `{t}`"))?,
        }
    }
    Ok((coeffs, constant))
}

fn constraint(s: &str, k: usize) -> std::result::Result<Constraint, String> {
    let ops = [
        ("<=", Cmp::Le),
        (">=", Cmp::Ge),
        ("!=", Cmp::Ne),
        ("==", Cmp::Eq),
        ("<", Cmp::Lt),
        (">", Cmp::Gt),
        ("=", Cmp::Eq),
    ];
    for (tok, cmp) in ops {
        if let Some((l, r)) = s.split_once(tok) {
            let (lc, lk) = linear_expr(l, k)?;
            let (rc, rk) = linear_expr(r, k)?;
            let coeffs = lc.iter().zip(&rc).map(|(a, b)| a - b).collect();
            return Ok(Constraint { coeffs, cmp, rhs: rk - lk });
        }
    }
    Err(format!("no comparison in `{s}`"))
}

fn guard(s: &str, k: usize) -> std::result::Result<Guard, String> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Guard::default());
    }
    s.split('&').map(|c| constraint(c, k)).collect::<std::result::Result<Vec<_>, _>>().map(Guard)
}

fn delta(s: &str, k: usize) -> std::result::Result<Vec<i64>, String> {
    let inner = s.trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or("delta must be `(d1,...,dk)`")?;
    let parts: Vec<&str> = inner.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
    if parts.len() != k {
        return Err(format!("delta has {} entries, expected {k}", parts.len()));
    }
    parts
        .iter()
        .map(|p| p.trim_start_matches('+').parse::<i64>().map_err(|_| format!("bad delta entry `{p}`")))
        .collect()
}

pub fn parse_automaton(text: &str) -> Result<CounterAutomaton> {
    let mut states: Option<Vec<String>> = None;
    let mut alphabet: Option<Alphabet> = None;
    let mut init: Option<(usize, String)> = None;
    let mut counters = 0usize;
    let mut bound: Vec<u64> = vec![0, 1];
    let mut body: Vec<(usize, &str)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.split(';').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        if let Some(r) = l.strip_prefix("states:") {
            states = Some(r.split_whitespace().map(String::from).collect());
        } else if let Some(r) = l.strip_prefix("alphabet:") {
            alphabet = Some(Alphabet::new(r.split_whitespace()).map_err(|e| syntax(line, e.to_string()))?);
        } else if let Some(r) = l.strip_prefix("init:") {
            init = Some((line, r.trim().to_string()));
        } else if let Some(r) = l.strip_prefix("counters:") {
            counters = r.trim().parse().map_err(|_| syntax(line, "bad counter count"))?;
        } else if let Some(r) = l.strip_prefix("bound:") {
            bound = r
                .split_whitespace()
                .map(|c| c.parse::<u64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| syntax(line, "bound coefficients are nonnegative integers"))?;
        } else {
            body.push((line, l));
        }
    }
    let states = states.ok_or_else(|| syntax(0, "missing `states:` header"))?;
    let alphabet = alphabet.ok_or_else(|| syntax(0, "missing `alphabet:` header"))?;
    let state = |line: usize, name: &str| {
        states.iter().position(|s| s == name).ok_or_else(|| syntax(line, format!("unknown state `{name}`")))
    };
    let init = match init {
        Some((line, name)) => state(line, &name)?,
        None => 0,
    };
    let mut transitions = Vec::new();
    let mut accept = Vec::new();
    for (line, l) in body {
        if let Some(r) = l.strip_prefix("accept") {
            let r = r.trim();
            let (name, g) = match r.split_once('[') {
                Some((name, g)) => {
                    let g = g.strip_suffix(']').ok_or_else(|| syntax(line, "unclosed `[`"))?;
                    (name.trim(), g)
                }
                None => (r, ""),
            };
            let guard = guard(g, counters).map_err(|m| syntax(line, m))?;
            accept.push(Acceptance { state: state(line, name)?, guard });
            continue;
        }
        let (left, to) =
            l.split_once("-->").ok_or_else(|| syntax(line, format!("expected a transition, got `{l}`")))?;
        let (from, label) = left.split_once("--").ok_or_else(|| syntax(line, "expected `q --label--> q'`"))?;
        let label = label.trim();
        let (head, delta_text) = match label.split_once('/') {
            Some((h, d)) => (h, Some(d)),
            None => (label, None),
        };
        let (letter, guard_text) = match head.split_once('[') {
            Some((a, g)) => (a.trim(), g.strip_suffix(']').ok_or_else(|| syntax(line, "unclosed `[`"))?),
            None => (head.trim(), ""),
        };
        let letter = alphabet.letter(letter).map_err(|e| syntax(line, e.to_string()))?;
        let guard = guard(guard_text, counters).map_err(|m| syntax(line, m))?;
        let delta = match delta_text {
            Some(d) => delta(d, counters).map_err(|m| syntax(line, m))?,
            None => vec![0; counters],
        };
        transitions.push(Transition {
            from: state(line, from.trim())?,
            letter,
            to: state(line, to.trim())?,
            delta,
            guard,
        });
    }
    CounterAutomaton::new(states, alphabet, init, counters, bound, transitions, accept)
}

/// Writes the automaton in the format read by [`parse_automaton`].
impl fmt::Display for CounterAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.states;
        writeln!(f, "states: {}", s.join(" "))?;
        writeln!(f, "alphabet: {}", self.alphabet)?;
        writeln!(f, "init: {}", s[self.init])?;
        writeln!(f, "counters: {}", self.counters)?;
        let b: Vec<String> = self.bound.iter().map(u64::to_string).collect();
        writeln!(f, "bound: {}", b.join(" "))?;
        for t in &self.transitions {
            let g = if t.guard.is_trivial() { String::new() } else { format!("[{}]", t.guard) };
            let d: Vec<String> = t.delta.iter().map(|x| format!("{x:+}")).collect();
            writeln!(f, "{} --{}{}/({})--> {}", s[t.from], self.alphabet.name(t.letter), g, d.join(","), s[t.to])?;
        }
        for a in &self.accept {
            if a.guard.is_trivial() {
                writeln!(f, "accept {}", s[a.state])?;
            } else {
                writeln!(f, "accept {} [{}]", s[a.state], a.guard)?;
            }
        }
        Ok(())
    }
}
