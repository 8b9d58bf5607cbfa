use std::collections::{BTreeMap, HashMap, HashSet};

use super::CounterAutomaton;
use crate::circuit::{Circuit, GateId};
use crate::error::{Error, Result};
use crate::grammar::{fresh_name, Cfg, NonTerminal, Production, Symbol};
use crate::probword::{Alphabet, Letter, Word};

/// Default hard cap on slice nodes.
pub const DEFAULT_NODE_CAP: usize = 1_000_000;

/// A configuration reached after `layer` letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Node {
    pub layer: usize,
    pub state: usize,
    pub counters: Vec<i64>,
}

/// One transition firing between consecutive layers. Distinct transitions
/// give distinct edges even when endpoints and letter coincide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub letter: Letter,
    pub transition: usize,
}

/// Acyclic NFA over configurations; node 0 is the initial configuration.
#[derive(Clone, Debug)]
pub struct LayeredNfa {
    alphabet: Alphabet,
    length: usize,
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
    accepting: Vec<bool>,
    live: Vec<bool>,
}

/// Forward reachability from `(0, q₀, 0)`, keeping configurations with all
/// counters in `[-B(n), B(n)]`. Fails once more than `cap` nodes exist.
pub fn slice_automaton(a: &CounterAutomaton, n: usize, cap: usize) -> Result<LayeredNfa> {
    let b = a.bound(n).min(i64::MAX as u64) as i64;
    let mut nodes = vec![Node { layer: 0, state: a.init(), counters: vec![0; a.counters()] }];
    let mut edges = Vec::new();
    let mut frontier: Vec<usize> = vec![0];
    for layer in 0..n {
        let mut index: HashMap<(usize, Vec<i64>), usize> = HashMap::new();
        let mut next = Vec::new();
        for &u in &frontier {
            for (ti, t) in a.transitions().iter().enumerate() {
                let node = &nodes[u];
                if t.from != node.state || !t.guard.holds(&node.counters) {
                    continue;
                }
                let counters: Vec<i64> = node.counters.iter().zip(&t.delta).map(|(c, d)| c + d).collect();
                if counters.iter().any(|c| c.abs() > b) {
                    continue;
                }
                let key = (t.to, counters);
                let v = match index.get(&key) {
                    Some(&v) => v,
                    None => {
                        if nodes.len() >= cap {
                            return Err(Error::StateSpaceCapExceeded(cap));
                        }
                        let v = nodes.len();
                        nodes.push(Node { layer: layer + 1, state: key.0, counters: key.1.clone() });
                        index.insert(key, v);
                        next.push(v);
                        v
                    }
                };
                edges.push(Edge { from: u, to: v, letter: t.letter, transition: ti });
            }
        }
        frontier = next;
    }
    let accepting: Vec<bool> = nodes.iter().map(|v| v.layer == n && a.accepts(v.state, &v.counters)).collect();
    let mut out = vec![Vec::new(); nodes.len()];
    for (ei, e) in edges.iter().enumerate() {
        out[e.from].push(ei);
    }
    // co-reachability, scanning nodes from the last layer backwards
    let mut live = accepting.clone();
    for u in (0..nodes.len()).rev() {
        if out[u].iter().any(|&ei| live[edges[ei].to]) {
            live[u] = true;
        }
    }
    Ok(LayeredNfa { alphabet: a.alphabet().clone(), length: n, nodes, edges, out, accepting, live })
}

impl LayeredNfa {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_accepting(&self, u: usize) -> bool {
        self.accepting[u]
    }

    /// Reachable and co-reachable.
    pub fn is_live(&self, u: usize) -> bool {
        self.live[u]
    }

    pub fn live_count(&self) -> usize {
        self.live.iter().filter(|&&b| b).count()
    }

    fn live_out(&self, u: usize) -> impl Iterator<Item = &Edge> + '_ {
        self.out[u].iter().map(|&ei| &self.edges[ei]).filter(|e| self.live[e.to])
    }

    /// Accepted words with their number of accepting paths.
    pub fn path_counts(&self) -> BTreeMap<Word, usize> {
        let mut result = BTreeMap::new();
        if !self.live[0] {
            return result;
        }
        let mut stack: Vec<(usize, Word)> = vec![(0, Vec::new())];
        while let Some((u, w)) = stack.pop() {
            if self.nodes[u].layer == self.length {
                if self.accepting[u] {
                    *result.entry(w).or_insert(0) += 1;
                }
                continue;
            }
            for e in self.live_out(u) {
                let mut w2 = w.clone();
                w2.push(e.letter);
                stack.push((e.to, w2));
            }
        }
        result
    }
}

/// Searches the self-product for two distinct accepting paths on one word.
/// Returns a witness word when the slice is ambiguous.
pub fn check_layered_unambiguous(m: &LayeredNfa) -> std::result::Result<(), Word> {
    if !m.live[0] {
        return Ok(());
    }
    type Pair = (usize, usize, bool);
    let mut parent: HashMap<Pair, (Pair, Letter)> = HashMap::new();
    let mut frontier: Vec<Pair> = vec![(0, 0, false)];
    let mut seen: HashSet<Pair> = frontier.iter().copied().collect();
    for _ in 0..m.length {
        let mut next = Vec::new();
        for &(u, v, diverged) in &frontier {
            for (i, eu) in m.out[u].iter().enumerate() {
                let e1 = &m.edges[*eu];
                if !m.live[e1.to] {
                    continue;
                }
                let start = if u == v && !diverged { i } else { 0 };
                for ev in &m.out[v][start..] {
                    let e2 = &m.edges[*ev];
                    if e2.letter != e1.letter || !m.live[e2.to] {
                        continue;
                    }
                    let pair = (e1.to, e2.to, diverged || eu != ev);
                    if seen.insert(pair) {
                        parent.insert(pair, ((u, v, diverged), e1.letter));
                        next.push(pair);
                    }
                }
            }
        }
        frontier = next;
    }
    let hit = frontier.into_iter().find(|&(u, v, d)| d && m.accepting[u] && m.accepting[v]);
    match hit {
        None => Ok(()),
        Some(mut p) => {
            let mut word = Vec::new();
            while let Some(&(prev, a)) = parent.get(&p) {
                word.push(a);
                p = prev;
            }
            word.reverse();
            Err(word)
        }
    }
}

/// Right-linear grammar with one nonterminal `N<id>` per live node, rules
/// `N<u> → a N<v>` per live edge and `N<u> → ε` for accepting nodes. The
/// flag reports whether [`check_layered_unambiguous`] passed.
pub fn layered_to_ucfg(m: &LayeredNfa) -> (Cfg, bool) {
    let unambiguous = check_layered_unambiguous(m).is_ok();
    let mut names = Vec::new();
    let mut ids: HashMap<usize, NonTerminal> = HashMap::new();
    let mut taken = HashSet::new();
    for u in 0..m.nodes.len() {
        if m.live[u] || u == 0 {
            let name = fresh_name(&format!("N{u}"), &taken, &m.alphabet);
            taken.insert(name.clone());
            ids.insert(u, NonTerminal(names.len() as u32));
            names.push(name);
        }
    }
    let mut productions = Vec::new();
    for u in (0..m.nodes.len()).filter(|&u| m.live[u]) {
        let x = ids[&u];
        if m.accepting[u] {
            productions.push(Production::new(x, Vec::new()));
        }
        for e in m.live_out(u) {
            productions.push(Production::new(x, vec![Symbol::T(e.letter), Symbol::N(ids[&e.to])]));
        }
    }
    let cfg = Cfg::new(m.alphabet.clone(), names, ids[&0], productions).expect("well-formed right-linear grammar");
    (cfg, unambiguous)
}

/// Layered circuit: node `u` in layer `l` becomes a union over live edges
/// of `Input(l+1 : a) × gate(next)`; accepting last-layer nodes are empty
/// products. Refuses ambiguous slices.
pub fn layered_to_circuit(m: &LayeredNfa) -> Result<Circuit> {
    if let Err(w) = check_layered_unambiguous(m) {
        return Err(Error::AmbiguousSlice(m.alphabet.format_word(&w)));
    }
    let mut c = Circuit::new(m.alphabet.clone());
    let mut gate: Vec<Option<GateId>> = vec![None; m.nodes.len()];
    for u in (0..m.nodes.len()).rev() {
        if !m.live[u] {
            continue;
        }
        let layer = m.nodes[u].layer;
        let g = if layer == m.length {
            c.product(Vec::new())?
        } else {
            let mut children = Vec::new();
            for e in m.live_out(u) {
                let input = c.input(layer + 1, e.letter)?;
                let next = gate[e.to].expect("later layers are built first");
                children.push(c.product(vec![input, next])?);
            }
            c.union(children)?
        };
        gate[u] = Some(g);
    }
    let out = match gate[0] {
        Some(g) => g,
        None => c.empty_slice(m.length)?,
    };
    c.set_output(out)?;
    Ok(c)
}
