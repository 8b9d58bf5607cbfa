//! Weighted CYK: exact `Pr(w ∈ L)` for an unambiguous grammar and a
//! probabilistic word.
//!
//! For an unambiguous grammar every word has at most one parse tree, so the
//! chart entry `T[X, i, j] = Pr(w[i..j] derived from X)` is a sum of
//! products of position weights with no double counting. On an ambiguous
//! grammar the same chart computes the expected number of parse trees,
//! which can exceed one; that case is reported when observed at the axiom.

use crate::error::{Error, Result};
use crate::grammar::{normalize, Cfg, NonTerminal, NormalizedCfg, Symbol};
use crate::probword::{Letter, ProbWord, Probability};

/// Exact membership probability. `g` must have been through [`normalize`].
pub fn prob_membership_ucfg(g: &NormalizedCfg, p: &ProbWord) -> Result<Probability> {
    let chart = Chart::fill(g, p)?;
    let v = chart.axiom_value();
    if v.exceeds_one() {
        return Err(Error::AmbiguityDetected(v.to_string()));
    }
    Ok(v)
}

/// Runs the normalization pipeline and then [`prob_membership_ucfg`].
pub fn prob_membership(g: &Cfg, p: &ProbWord) -> Result<Probability> {
    prob_membership_ucfg(&normalize(g)?, p)
}

/// Expected number of parse trees of the (normalized) grammar over `p`.
/// Equal to the membership probability when the grammar is unambiguous.
pub fn expected_tree_count(g: &NormalizedCfg, p: &ProbWord) -> Result<Probability> {
    Ok(Chart::fill(g, p)?.axiom_value())
}

enum Rhs {
    Letter(Letter),
    Unit(usize),
    Pair(usize, usize),
}

struct Chart {
    n: usize,
    nt: usize,
    axiom: usize,
    empty: bool,
    cells: Vec<Probability>,
}

impl Chart {
    fn idx(&self, i: usize, len: usize, x: usize) -> usize {
        (i * (self.n + 1) + len) * self.nt + x
    }

    fn fill(g: &NormalizedCfg, p: &ProbWord) -> Result<Chart> {
        let stages = g.stages();
        if !stages.epsilon_free {
            return Err(Error::PipelineNotRun("eliminate_epsilon"));
        }
        let order: Vec<usize> = g.unit_order()?.iter().map(|x| x.index()).collect();
        let cfg = g.cfg();
        if cfg.alphabet() != p.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        let nt = cfg.nonterminal_count();
        let n = p.len();
        let mut by_lhs: Vec<Vec<Rhs>> = (0..nt).map(|_| Vec::new()).collect();
        for prod in cfg.productions() {
            let rhs = match prod.rhs.as_slice() {
                [Symbol::T(a)] => Rhs::Letter(*a),
                [Symbol::N(y)] => Rhs::Unit(y.index()),
                [Symbol::N(y), Symbol::N(z)] => Rhs::Pair(y.index(), z.index()),
                _ => return Err(Error::PipelineNotRun("to_2nf")),
            };
            by_lhs[prod.lhs.index()].push(rhs);
        }
        let mut chart = Chart {
            n,
            nt,
            axiom: cfg.axiom().index(),
            empty: g.accepts_empty(),
            cells: vec![Probability::zero(); if n == 0 { 0 } else { n * (n + 1) * nt }],
        };
        for len in 1..=n {
            for i in 0..=(n - len) {
                for &x in &order {
                    let mut acc = Probability::zero();
                    for rhs in &by_lhs[x] {
                        match *rhs {
                            Rhs::Letter(a) => {
                                if len == 1 {
                                    acc += p.weight(i + 1, a);
                                }
                            }
                            Rhs::Unit(y) => acc += &chart.cells[chart.idx(i, len, y)],
                            Rhs::Pair(y, z) => {
                                for k in 1..len {
                                    let l = &chart.cells[chart.idx(i, k, y)];
                                    if l.is_zero() {
                                        continue;
                                    }
                                    let r = &chart.cells[chart.idx(i + k, len - k, z)];
                                    if !r.is_zero() {
                                        acc += l * r;
                                    }
                                }
                            }
                        }
                    }
                    let at = chart.idx(i, len, x);
                    chart.cells[at] = acc;
                }
            }
        }
        Ok(chart)
    }

    fn axiom_value(&self) -> Probability {
        if self.n == 0 {
            return if self.empty { Probability::one() } else { Probability::zero() };
        }
        self.cells[self.idx(0, self.n, self.axiom)].clone()
    }
}

/// Chart entry lookup for tests and diagnostics: `Pr(w[i..=j] ∈ L(X))`,
/// positions 1-based.
pub fn span_probability(g: &NormalizedCfg, p: &ProbWord, x: NonTerminal, i: usize, j: usize) -> Result<Probability> {
    let n = p.len();
    if i == 0 || j < i || j > n {
        return Err(Error::PositionOutOfRange { position: j.max(i), len: n });
    }
    let chart = Chart::fill(g, p)?;
    Ok(chart.cells[chart.idx(i - 1, j - i + 1, x.index())].clone())
}
