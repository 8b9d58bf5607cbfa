//! Brute-force references: exhaustive membership probability, definitional
//! predicates for the builtin languages, and combinatorial counts.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rand::Rng;

use crate::compile::divisors;
use crate::counterauto::CounterAutomaton;
use crate::error::{Error, Result};
use crate::grammar::{Cfg, NonTerminal, Symbol};
use crate::probword::{Alphabet, Distribution, Letter, ProbWord, Probability, Word};
use crate::reductions::{match_l0, match_l0prime, match_l1, match_l2};

/// Largest `|Σ|^n` [`brute_prob`] will enumerate.
pub const BRUTE_FORCE_GUARD: u128 = 1 << 20;

type PredicateFn = Arc<dyn Fn(&Alphabet, &[Letter]) -> bool + Send + Sync>;

/// A named, total membership test.
#[derive(Clone)]
pub struct MembershipPredicate {
    name: String,
    f: PredicateFn,
}

impl MembershipPredicate {
    pub fn new(name: impl Into<String>, f: impl Fn(&Alphabet, &[Letter]) -> bool + Send + Sync + 'static) -> Self {
        MembershipPredicate { name: name.into(), f: Arc::new(f) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn test(&self, alphabet: &Alphabet, w: &[Letter]) -> bool {
        (self.f)(alphabet, w)
    }

    pub fn always(value: bool) -> Self {
        MembershipPredicate::new(if value { "true" } else { "false" }, move |_, _| value)
    }

    /// Wraps a matcher over the compact string form of the word.
    fn on_text(name: &str, m: fn(&str) -> bool) -> Self {
        MembershipPredicate::new(name, move |a, w| m(&a.format_word(w)))
    }
}

impl fmt::Debug for MembershipPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MembershipPredicate({})", self.name)
    }
}

fn check_guard(sigma: usize, n: usize) -> Result<()> {
    let mut total: u128 = 1;
    for _ in 0..n {
        total = total.saturating_mul(sigma as u128);
        if total > BRUTE_FORCE_GUARD {
            return Err(Error::WordTooLong(n));
        }
    }
    Ok(())
}

/// `Σ_{w ∈ Σⁿ, pred(w)} p(w)`, by depth-first enumeration skipping
/// zero-weight letters.
pub fn brute_prob(pred: &MembershipPredicate, p: &ProbWord) -> Result<Probability> {
    let a = p.alphabet();
    check_guard(a.size(), p.len())?;
    let mut total = Probability::zero();
    let mut w = Vec::with_capacity(p.len());
    dfs(pred, p, &mut w, Probability::one(), &mut total);
    Ok(total)
}

fn dfs(pred: &MembershipPredicate, p: &ProbWord, w: &mut Word, mass: Probability, total: &mut Probability) {
    if w.len() == p.len() {
        if pred.test(p.alphabet(), w) {
            *total = total.clone() + mass;
        }
        return;
    }
    let pos = w.len() + 1;
    for l in p.alphabet().letters() {
        let q = p.weight(pos, l);
        if q.is_zero() {
            continue;
        }
        w.push(l);
        dfs(pred, p, w, mass.clone() * q.clone(), total);
        w.pop();
    }
}

/// The words of length `n` satisfying `pred`.
pub fn brute_slice(pred: &MembershipPredicate, n: usize, alphabet: &Alphabet) -> Result<BTreeSet<Word>> {
    check_guard(alphabet.size(), n)?;
    Ok(alphabet.all_words(n).filter(|w| pred.test(alphabet, w)).collect())
}

pub fn brute_count(pred: &MembershipPredicate, n: usize, alphabet: &Alphabet) -> Result<usize> {
    brute_slice(pred, n, alphabet).map(|s| s.len())
}

pub fn is_palindrome(w: &[Letter]) -> bool {
    w.iter().eq(w.iter().rev())
}

/// `w = uᵏ` for some `u`.
pub fn is_power(w: &[Letter], k: usize) -> bool {
    if k == 0 {
        return w.is_empty();
    }
    if !w.len().is_multiple_of(k) {
        return false;
    }
    let m = w.len() / k;
    (m..w.len()).all(|i| w[i] == w[i - m])
}

/// The largest `k` with `w = uᵏ`; 0 for the empty word.
pub fn order(w: &[Letter]) -> usize {
    let n = w.len();
    (1..=n).filter(|&k| is_power(w, k)).max().unwrap_or(0)
}

/// Nonempty and not a proper power.
pub fn is_primitive(w: &[Letter]) -> bool {
    order(w) == 1
}

/// Some split `w = xy` with both parts palindromes (either may be empty).
pub fn is_pal2(w: &[Letter]) -> bool {
    (0..=w.len()).any(|s| is_palindrome(&w[..s]) && is_palindrome(&w[s..]))
}

/// Even length `2k` with `w[i] = w[k+i] = a` for some `i`, `a` the first
/// letter of the alphabet.
pub fn is_l3(w: &[Letter]) -> bool {
    let n = w.len();
    n.is_multiple_of(2) && (0..n / 2).any(|i| w[i] == Letter(0) && w[i + n / 2] == Letter(0))
}

/// Balanced over the first letter (open) and second letter (close); any
/// other letter rejects.
pub fn is_dyck(w: &[Letter]) -> bool {
    let mut depth: usize = 0;
    for &l in w {
        match l {
            Letter(0) => depth += 1,
            Letter(1) if depth > 0 => depth -= 1,
            _ => return false,
        }
    }
    depth == 0
}

/// Predicate by name: `palindrome`, `primitive`, `pal2`, `l3`, `dyck`,
/// `l0`, `l0prime`, `l1`, `l2`, `mk:K`, `order:K`.
pub fn builtin_predicate(name: &str) -> Option<MembershipPredicate> {
    let param = |prefix: &str| name.strip_prefix(prefix).and_then(|k| k.parse::<usize>().ok());
    let p = match name {
        "palindrome" => MembershipPredicate::new(name, |_, w| is_palindrome(w)),
        "primitive" => MembershipPredicate::new(name, |_, w| is_primitive(w)),
        "pal2" => MembershipPredicate::new(name, |_, w| is_pal2(w)),
        "l3" => MembershipPredicate::new(name, |_, w| is_l3(w)),
        "dyck" => MembershipPredicate::new(name, |_, w| is_dyck(w)),
        "l0" => MembershipPredicate::on_text(name, match_l0),
        "l0prime" => MembershipPredicate::on_text(name, match_l0prime),
        "l1" => MembershipPredicate::on_text(name, match_l1),
        "l2" => MembershipPredicate::on_text(name, match_l2),
        _ => {
            if let Some(k) = param("mk:") {
                MembershipPredicate::new(name, move |_, w| is_power(w, k))
            } else {
                let k = param("order:")?;
                MembershipPredicate::new(name, move |_, w| order(w) == k)
            }
        }
    };
    Some(p)
}

/// The parameter-free builtins plus `mk:2`, `mk:3`, `order:2`.
pub fn builtin_predicates() -> Vec<MembershipPredicate> {
    ["palindrome", "primitive", "pal2", "l3", "dyck", "l0", "l0prime", "l1", "l2", "mk:2", "mk:3", "order:2"]
        .iter()
        .map(|n| builtin_predicate(n).expect("known name"))
        .collect()
}

/// Number of parse trees of `w` in `g`, by exhaustive splitting on the raw
/// grammar (ε and unit rules allowed). Spans are filled shortest first;
/// within a span the counts are iterated to a fixpoint, and `None` means
/// they kept growing, i.e. infinitely many trees.
pub fn count_parse_trees(g: &Cfg, w: &[Letter]) -> Option<BigUint> {
    let n = w.len();
    let k = g.nonterminal_count();
    let mut table: HashMap<(usize, usize, usize), BigUint> = HashMap::new();
    for len in 0..=n {
        for i in 0..=n - len {
            let j = i + len;
            let mut stable = false;
            for _ in 0..=k + 1 {
                let next: Vec<BigUint> = (0..k)
                    .map(|x| g.productions_of(NonTerminal(x as u32)).map(|p| sequence(&table, w, &p.rhs, i, j)).sum())
                    .collect();
                let changed =
                    next.iter().enumerate().any(|(x, c)| table.get(&(x, i, j)).map_or(!c.is_zero(), |o| o != c));
                for (x, c) in next.into_iter().enumerate() {
                    table.insert((x, i, j), c);
                }
                if !changed {
                    stable = true;
                    break;
                }
            }
            if !stable {
                return None;
            }
        }
    }
    Some(table.remove(&(g.axiom().index(), 0, n)).unwrap_or_default())
}

/// Membership in the raw grammar: the Boolean shadow of
/// [`count_parse_trees`], which always reaches its fixpoint.
pub fn raw_member(g: &Cfg, w: &[Letter]) -> bool {
    let n = w.len();
    let k = g.nonterminal_count();
    let mut table: HashMap<(usize, usize, usize), BigUint> = HashMap::new();
    let one = BigUint::from(1u8);
    for len in 0..=n {
        for i in 0..=n - len {
            let j = i + len;
            loop {
                let mut changed = false;
                for x in 0..k {
                    if table.contains_key(&(x, i, j)) {
                        continue;
                    }
                    let derives =
                        g.productions_of(NonTerminal(x as u32)).any(|p| !sequence(&table, w, &p.rhs, i, j).is_zero());
                    if derives {
                        table.insert((x, i, j), one.clone());
                        changed = true;
                    }
                }
                if !changed {
                    break;
                }
            }
        }
    }
    table.contains_key(&(g.axiom().index(), 0, n))
}

fn sequence(
    table: &HashMap<(usize, usize, usize), BigUint>,
    w: &[Letter],
    rhs: &[Symbol],
    i: usize,
    j: usize,
) -> BigUint {
    let Some((first, rest)) = rhs.split_first() else {
        return BigUint::from(u8::from(i == j));
    };
    match *first {
        Symbol::T(a) if i < j && w[i] == a => sequence(table, w, rest, i + 1, j),
        Symbol::T(_) => BigUint::zero(),
        Symbol::N(y) => {
            let mut total = BigUint::zero();
            for m in i..=j {
                let Some(head) = table.get(&(y.index(), i, m)).filter(|c| !c.is_zero()) else {
                    continue;
                };
                total += head * sequence(table, w, rest, m, j);
            }
            total
        }
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Möbius function by trial division.
pub fn mobius(mut n: usize) -> i64 {
    assert!(n >= 1);
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `Σ_{d|n} μ(d)·σ^(n/d)`: the number of primitive words of length `n`.
pub fn mobius_primitive_count(n: usize, sigma: usize) -> BigInt {
    divisors(n).into_iter().map(|d| BigInt::from(mobius(d)) * BigInt::from(sigma).pow((n / d) as u32)).sum()
}

/// A probabilistic word whose weights are multiples of `2^-bits`.
pub fn random_dyadic_probword(n: usize, alphabet: &Alphabet, bits: u32, rng: &mut impl Rng) -> ProbWord {
    let scale = 1u64 << bits;
    let positions = (0..n)
        .map(|_| {
            let mut cuts: Vec<u64> = (1..alphabet.size()).map(|_| rng.gen_range(0..=scale)).collect();
            cuts.push(0);
            cuts.push(scale);
            cuts.sort_unstable();
            let weights = cuts.windows(2).map(|c| Probability::ratio(c[1] - c[0], scale)).collect();
            Distribution::new(alphabet.clone(), weights).expect("weights sum to one")
        })
        .collect();
    ProbWord::new(alphabet.clone(), positions).expect("one alphabet")
}

/// Whether some run of the automaton accepts `w`, searching configurations
/// without any counter bound.
pub fn simulate_automaton(a: &CounterAutomaton, w: &[Letter]) -> bool {
    let mut frontier: HashSet<(usize, Vec<i64>)> = HashSet::from([(a.init(), vec![0; a.counters()])]);
    for &l in w {
        let mut next = HashSet::new();
        for (q, c) in &frontier {
            for t in a.transitions() {
                if t.from == *q && t.letter == l && t.guard.holds(c) {
                    let c2 = c.iter().zip(&t.delta).map(|(x, d)| x + d).collect();
                    next.insert((t.to, c2));
                }
            }
        }
        frontier = next;
    }
    frontier.iter().any(|(q, c)| a.accepts(*q, c))
}

/// Number of accepting runs on `w`.
pub fn count_runs(a: &CounterAutomaton, w: &[Letter]) -> usize {
    fn go(a: &CounterAutomaton, w: &[Letter], q: usize, c: &[i64]) -> usize {
        match w.split_first() {
            None => usize::from(a.accepts(q, c)),
            Some((&l, rest)) => a
                .transitions()
                .iter()
                .filter(|t| t.from == q && t.letter == l && t.guard.holds(c))
                .map(|t| {
                    let c2: Vec<i64> = c.iter().zip(&t.delta).map(|(x, d)| x + d).collect();
                    go(a, rest, t.to, &c2)
                })
                .sum(),
        }
    }
    go(a, w, a.init(), &vec![0; a.counters()])
}
