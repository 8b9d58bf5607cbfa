use std::collections::{HashMap, HashSet};

use petgraph::algo::{tarjan_scc, toposort};
use petgraph::graph::{DiGraph, NodeIndex};

use super::{fresh_name, Cfg, NonTerminal, Production, Symbol};
use crate::error::{Error, Result};

/// Which pipeline stages have been applied.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stages {
    pub two_nf: bool,
    pub epsilon_free: bool,
    pub pruned: bool,
    pub units_collapsed: bool,
    pub unit_ordered: bool,
}

/// A grammar in 2-normal form: every right-hand side is `ε`, a letter, a
/// nonterminal, or a pair of nonterminals. After epsilon elimination the
/// membership of the empty word is carried by [`NormalizedCfg::accepts_empty`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedCfg {
    cfg: Cfg,
    stages: Stages,
    accepts_empty: bool,
    unit_order: Vec<NonTerminal>,
}

/// Full pipeline for the weighted CYK engine and the circuit compiler.
/// Fails with [`Error::UnitCycle`] when the unit graph is cyclic.
pub fn normalize(g: &Cfg) -> Result<NormalizedCfg> {
    NormalizedCfg::to_2nf(g).eliminate_epsilon().prune_useless().with_unit_order()
}

/// Pipeline variant tolerating ambiguity: unit cycles are collapsed instead
/// of reported.
pub fn normalize_for_slices(g: &Cfg) -> NormalizedCfg {
    NormalizedCfg::to_2nf(g)
        .eliminate_epsilon()
        .prune_useless()
        .collapse_unit_sccs()
        .with_unit_order()
        .expect("unit graph is acyclic after collapsing")
}

impl NormalizedCfg {
    /// Rewrites `g` into 2-normal form. Terminals inside binary or longer
    /// right-hand sides are lifted to fresh nonterminals `[a]`; longer
    /// right-hand sides are right-chained through `X'1`, `X'2`, ...
    pub fn to_2nf(g: &Cfg) -> NormalizedCfg {
        let alphabet = g.alphabet().clone();
        let mut names: Vec<String> = g.nonterminals().to_vec();
        let mut taken: HashSet<String> = names.iter().cloned().collect();
        let mut lifted: HashMap<u32, NonTerminal> = HashMap::new();
        let mut out: Vec<Production> = Vec::new();
        let mut chain_counter: HashMap<NonTerminal, usize> = HashMap::new();

        let new_nt = |base: String, names: &mut Vec<String>, taken: &mut HashSet<String>| {
            let name = fresh_name(&base, taken, &alphabet);
            taken.insert(name.clone());
            names.push(name);
            NonTerminal(names.len() as u32 - 1)
        };

        for p in g.productions() {
            let binary = p.rhs.len() == 2 && p.rhs.iter().all(|s| matches!(s, Symbol::N(_)));
            if p.rhs.len() <= 1 || binary {
                out.push(p.clone());
                continue;
            }
            let mut syms: Vec<NonTerminal> = Vec::with_capacity(p.rhs.len());
            for s in &p.rhs {
                syms.push(match *s {
                    Symbol::N(x) => x,
                    Symbol::T(a) => match lifted.get(&a.0) {
                        Some(&x) => x,
                        None => {
                            let x = new_nt(format!("[{}]", g.alphabet().name(a)), &mut names, &mut taken);
                            lifted.insert(a.0, x);
                            out.push(Production::new(x, vec![Symbol::T(a)]));
                            x
                        }
                    },
                });
            }
            let mut lhs = p.lhs;
            for &s in &syms[..syms.len() - 2] {
                let k = chain_counter.entry(p.lhs).or_insert(0);
                *k += 1;
                let base = format!("{}'{}", g.name(p.lhs), k);
                let next = new_nt(base, &mut names, &mut taken);
                out.push(Production::new(lhs, vec![Symbol::N(s), Symbol::N(next)]));
                lhs = next;
            }
            let m = syms.len();
            out.push(Production::new(lhs, vec![Symbol::N(syms[m - 2]), Symbol::N(syms[m - 1])]));
        }
        let cfg = Cfg::new(g.alphabet().clone(), names, g.axiom(), out).expect("2NF rewrite is well formed");
        let nullable = nullable_set(&cfg);
        let accepts_empty = nullable[cfg.axiom().index()];
        NormalizedCfg {
            cfg,
            stages: Stages { two_nf: true, ..Stages::default() },
            accepts_empty,
            unit_order: Vec::new(),
        }
    }

    pub fn cfg(&self) -> &Cfg {
        &self.cfg
    }

    pub fn stages(&self) -> Stages {
        self.stages
    }

    /// Whether `ε ∈ L(G)`.
    pub fn accepts_empty(&self) -> bool {
        self.accepts_empty
    }

    /// Nonterminals ordered so that `Y` precedes `X` whenever `X → Y`.
    pub fn unit_order(&self) -> Result<&[NonTerminal]> {
        if self.stages.unit_ordered {
            Ok(&self.unit_order)
        } else {
            Err(Error::PipelineNotRun("unit_order"))
        }
    }

    /// Nullable nonterminals, as a membership vector indexed by nonterminal.
    pub fn compute_nullable(&self) -> Vec<bool> {
        nullable_set(&self.cfg)
    }

    /// Removes every `X → ε`, adding `X → Z` (resp. `X → Y`) for each
    /// `X → YZ` whose `Y` (resp. `Z`) is nullable.
    pub fn eliminate_epsilon(self) -> NormalizedCfg {
        if self.stages.epsilon_free {
            return self;
        }
        let nullable = self.compute_nullable();
        let mut out = Vec::new();
        for p in self.cfg.productions() {
            match p.rhs.as_slice() {
                [] => {}
                [Symbol::N(y), Symbol::N(z)] => {
                    out.push(p.clone());
                    if nullable[y.index()] {
                        out.push(Production::new(p.lhs, vec![Symbol::N(*z)]));
                    }
                    if nullable[z.index()] {
                        out.push(Production::new(p.lhs, vec![Symbol::N(*y)]));
                    }
                }
                _ => out.push(p.clone()),
            }
        }
        let cfg = self.rebuild(self.cfg.nonterminals().to_vec(), self.cfg.axiom(), out);
        NormalizedCfg {
            cfg,
            stages: Stages { epsilon_free: true, unit_ordered: false, ..self.stages },
            accepts_empty: self.accepts_empty,
            unit_order: Vec::new(),
        }
    }

    /// Drops nonterminals that derive no word, then those unreachable from
    /// the axiom. If the axiom itself is unproductive the result has the
    /// axiom alone and no productions.
    pub fn prune_useless(self) -> NormalizedCfg {
        let n = self.cfg.nonterminal_count();
        let prods = self.cfg.productions();

        let mut productive = vec![false; n];
        loop {
            let mut changed = false;
            for p in prods {
                if !productive[p.lhs.index()]
                    && p.rhs.iter().all(|s| match s {
                        Symbol::T(_) => true,
                        Symbol::N(y) => productive[y.index()],
                    })
                {
                    productive[p.lhs.index()] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let live_prod = |p: &Production| {
            productive[p.lhs.index()]
                && p.rhs.iter().all(|s| match s {
                    Symbol::T(_) => true,
                    Symbol::N(y) => productive[y.index()],
                })
        };

        let axiom = self.cfg.axiom();
        let mut reachable = vec![false; n];
        if productive[axiom.index()] {
            reachable[axiom.index()] = true;
            let mut stack = vec![axiom];
            while let Some(x) = stack.pop() {
                for p in prods.iter().filter(|p| p.lhs == x && live_prod(p)) {
                    for s in &p.rhs {
                        if let Symbol::N(y) = s {
                            if !reachable[y.index()] {
                                reachable[y.index()] = true;
                                stack.push(*y);
                            }
                        }
                    }
                }
            }
        }
        reachable[axiom.index()] = true;

        let mut remap = vec![None; n];
        let mut names = Vec::new();
        for (i, name) in self.cfg.nonterminals().iter().enumerate() {
            if reachable[i] {
                remap[i] = Some(NonTerminal(names.len() as u32));
                names.push(name.clone());
            }
        }
        let map = |x: NonTerminal| remap[x.index()].expect("kept");
        let out: Vec<Production> = prods
            .iter()
            .filter(|p| live_prod(p) && reachable[p.lhs.index()])
            .map(|p| Production::new(map(p.lhs), remap_rhs(&p.rhs, &map)))
            .collect();
        let cfg = self.rebuild(names, map(axiom), out);
        NormalizedCfg {
            cfg,
            stages: Stages { pruned: true, unit_ordered: false, ..self.stages },
            accepts_empty: self.accepts_empty,
            unit_order: Vec::new(),
        }
    }

    /// True when the grammar derives no nonempty word.
    pub fn has_no_nonempty_words(&self) -> bool {
        let reduced = self.clone().eliminate_epsilon().prune_useless();
        reduced.cfg.productions().is_empty()
    }

    fn unit_graph(&self) -> (DiGraph<(), ()>, Vec<NodeIndex>) {
        let mut graph = DiGraph::new();
        let nodes: Vec<NodeIndex> = (0..self.cfg.nonterminal_count()).map(|_| graph.add_node(())).collect();
        for p in self.cfg.productions() {
            if let [Symbol::N(y)] = p.rhs.as_slice() {
                graph.update_edge(nodes[p.lhs.index()], nodes[y.index()], ());
            }
        }
        (graph, nodes)
    }

    /// Computes a topological order of the unit graph. A cycle means the
    /// (epsilon-free, pruned) grammar is ambiguous.
    pub fn with_unit_order(mut self) -> Result<NormalizedCfg> {
        let (graph, _) = self.unit_graph();
        let self_loop = self.cfg.productions().iter().find(|p| p.rhs.as_slice() == [Symbol::N(p.lhs)]);
        if let Some(p) = self_loop {
            return Err(Error::UnitCycle(vec![self.cfg.name(p.lhs).to_string()]));
        }
        match toposort(&graph, None) {
            Ok(order) => {
                self.unit_order = order.into_iter().rev().map(|v| NonTerminal(v.index() as u32)).collect();
                self.stages.unit_ordered = true;
                Ok(self)
            }
            Err(_) => {
                let scc = tarjan_scc(&graph).into_iter().find(|c| c.len() > 1).expect("cycle has an SCC");
                let mut members: Vec<usize> = scc.iter().map(|v| v.index()).collect();
                members.sort_unstable();
                Err(Error::UnitCycle(members.into_iter().map(|i| self.cfg.nonterminals()[i].clone()).collect()))
            }
        }
    }

    /// Merges each strongly connected component of the unit graph into a
    /// single nonterminal and deletes self-unit rules. Language preserving;
    /// ambiguity (tree multiplicity) is not.
    pub fn collapse_unit_sccs(self) -> NormalizedCfg {
        let (graph, _) = self.unit_graph();
        let n = self.cfg.nonterminal_count();
        let mut comp = vec![usize::MAX; n];
        let sccs = tarjan_scc(&graph);
        for (c, members) in sccs.iter().enumerate() {
            for v in members {
                comp[v.index()] = c;
            }
        }
        let mut taken: HashSet<String> = HashSet::new();
        let mut comp_nt: HashMap<usize, NonTerminal> = HashMap::new();
        let mut names = Vec::new();
        for i in 0..n {
            let c = comp[i];
            if comp_nt.contains_key(&c) {
                continue;
            }
            let mut members: Vec<usize> = sccs[c].iter().map(|v| v.index()).collect();
            members.sort_unstable();
            let name = if members.len() == 1 {
                self.cfg.nonterminals()[i].clone()
            } else {
                let joined: Vec<&str> = members.iter().map(|&m| self.cfg.nonterminals()[m].as_str()).collect();
                let mut avoid = taken.clone();
                avoid.extend(self.cfg.nonterminals().iter().cloned());
                fresh_name(&joined.join("+"), &avoid, self.cfg.alphabet())
            };
            taken.insert(name.clone());
            comp_nt.insert(c, NonTerminal(names.len() as u32));
            names.push(name);
        }
        let map = |x: NonTerminal| comp_nt[&comp[x.index()]];
        let out: Vec<Production> = self
            .cfg
            .productions()
            .iter()
            .map(|p| Production::new(map(p.lhs), remap_rhs(&p.rhs, &map)))
            .filter(|p| p.rhs.as_slice() != [Symbol::N(p.lhs)])
            .collect();
        let cfg = self.rebuild(names, map(self.cfg.axiom()), out);
        NormalizedCfg {
            cfg,
            stages: Stages { units_collapsed: true, unit_ordered: false, ..self.stages },
            accepts_empty: self.accepts_empty,
            unit_order: Vec::new(),
        }
    }

    fn rebuild(&self, names: Vec<String>, axiom: NonTerminal, prods: Vec<Production>) -> Cfg {
        Cfg::new(self.cfg.alphabet().clone(), names, axiom, prods).expect("pipeline keeps the grammar well formed")
    }
}

fn remap_rhs(rhs: &[Symbol], map: &impl Fn(NonTerminal) -> NonTerminal) -> Vec<Symbol> {
    rhs.iter()
        .map(|s| match *s {
            Symbol::N(y) => Symbol::N(map(y)),
            t => t,
        })
        .collect()
}

/// Worklist computation, linear in the grammar size.
fn nullable_set(g: &Cfg) -> Vec<bool> {
    let n = g.nonterminal_count();
    let prods = g.productions();
    let mut nullable = vec![false; n];
    let mut pending: Vec<usize> = Vec::with_capacity(prods.len());
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut queue = Vec::new();
    for (pi, p) in prods.iter().enumerate() {
        if p.rhs.iter().any(|s| matches!(s, Symbol::T(_))) {
            pending.push(usize::MAX);
            continue;
        }
        pending.push(p.rhs.len());
        for s in &p.rhs {
            if let Symbol::N(y) = s {
                occurs[y.index()].push(pi);
            }
        }
        if p.rhs.is_empty() && !nullable[p.lhs.index()] {
            nullable[p.lhs.index()] = true;
            queue.push(p.lhs);
        }
    }
    while let Some(y) = queue.pop() {
        for &pi in &occurs[y.index()] {
            pending[pi] -= 1;
            let x = prods[pi].lhs;
            if pending[pi] == 0 && !nullable[x.index()] {
                nullable[x.index()] = true;
                queue.push(x);
            }
        }
    }
    nullable
}
