//! Set circuits over positions of a fixed-length word.
//!
//! A gate denotes a set of assignments `dom(g) → Σ`: an input `i:a` fixes
//! position `i` to `a`, a product joins assignments over disjoint domains,
//! a union takes the union of sets over one common domain, and a complement
//! takes all assignments over its child's domain that the child rejects.
//! When every union has pairwise disjoint children (determinism) the
//! probability of the output under a probabilistic word is computed by
//! one bottom-up pass, see [`Circuit::evaluate`].

mod domain;
mod eval;
mod semantics;
mod text;

use std::collections::HashMap;

pub use domain::Domain;
pub use semantics::{Assignment, Violation};
pub use text::{parse_circuit, write_circuit};

use crate::error::{Error, Result};
use crate::probword::{Alphabet, Letter};

pub type GateId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    /// Position (1-based) and letter.
    Input(usize, Letter),
    Union(Vec<GateId>),
    Product(Vec<GateId>),
    Complement(GateId),
}

impl Gate {
    pub fn children(&self) -> &[GateId] {
        match self {
            Gate::Input(..) => &[],
            Gate::Union(c) | Gate::Product(c) => c,
            Gate::Complement(c) => std::slice::from_ref(c),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Gate::Input(..) => "input",
            Gate::Union(_) => "union",
            Gate::Product(_) => "product",
            Gate::Complement(_) => "not",
        }
    }
}

/// Gate counts by kind plus the number of wires.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CircuitStats {
    pub inputs: usize,
    pub unions: usize,
    pub products: usize,
    pub complements: usize,
    pub wires: usize,
}

impl CircuitStats {
    pub fn gates(&self) -> usize {
        self.inputs + self.unions + self.products + self.complements
    }

    /// Gates plus wires.
    pub fn size(&self) -> usize {
        self.gates() + self.wires
    }
}

#[derive(Clone, Debug)]
pub struct Circuit {
    alphabet: Alphabet,
    gates: Vec<Gate>,
    domains: Vec<Domain>,
    output: Option<GateId>,
    memo: HashMap<(Gate, Domain), GateId>,
}

impl PartialEq for Circuit {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet
            && self.gates == other.gates
            && self.domains == other.domains
            && self.output == other.output
    }
}

impl Eq for Circuit {}

impl Circuit {
    pub fn new(alphabet: Alphabet) -> Self {
        Circuit { alphabet, gates: Vec::new(), domains: Vec::new(), output: None, memo: HashMap::new() }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate(&self, id: GateId) -> Result<&Gate> {
        self.gates.get(id).ok_or(Error::UnknownGate(id))
    }

    pub fn domain(&self, id: GateId) -> Result<&Domain> {
        self.domains.get(id).ok_or(Error::UnknownGate(id))
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn output(&self) -> Result<GateId> {
        self.output.ok_or_else(|| Error::InvalidCircuit("no output gate".into()))
    }

    pub fn set_output(&mut self, id: GateId) -> Result<()> {
        self.gate(id)?;
        self.output = Some(id);
        Ok(())
    }

    fn check_children(&self, children: &[GateId]) -> Result<()> {
        for &c in children {
            self.gate(c)?;
        }
        Ok(())
    }

    fn derived_domain(&self, gate: &Gate) -> Result<Domain> {
        Ok(match gate {
            Gate::Input(pos, _) => Domain::singleton(*pos),
            Gate::Complement(c) => self.domain(*c)?.clone(),
            Gate::Union(cs) | Gate::Product(cs) => {
                let mut d = Domain::empty();
                for &c in cs {
                    d = d.union(self.domain(c)?);
                }
                d
            }
        })
    }

    fn check_gate(&self, gate: &Gate) -> Result<()> {
        match gate {
            Gate::Input(pos, l) => {
                if *pos == 0 {
                    return Err(Error::PositionOutOfRange { position: 0, len: 0 });
                }
                self.alphabet.check(*l)?;
            }
            g => self.check_children(g.children())?,
        }
        Ok(())
    }

    fn intern(&mut self, gate: Gate, dom: Domain) -> GateId {
        let key = (gate, dom);
        if let Some(&id) = self.memo.get(&key) {
            return id;
        }
        let id = self.gates.len();
        self.gates.push(key.0.clone());
        self.domains.push(key.1.clone());
        self.memo.insert(key, id);
        id
    }

    /// Adds `gate` through the hash-consing table; structurally equal gates
    /// share one id. The domain is derived from the children, except for a
    /// childless union, which takes `explicit`. A childless product always
    /// has the empty domain.
    pub fn add(&mut self, gate: Gate, explicit: Option<Domain>) -> Result<GateId> {
        self.check_gate(&gate)?;
        let dom = self.resolve_domain(&gate, explicit)?;
        Ok(self.intern(gate, dom))
    }

    /// Like [`Circuit::add`] but never shares: always appends a new gate.
    /// Used to build deliberately malformed circuits in tests.
    pub fn push_unshared(&mut self, gate: Gate, explicit: Option<Domain>) -> Result<GateId> {
        self.check_gate(&gate)?;
        let dom = self.resolve_domain(&gate, explicit)?;
        let id = self.gates.len();
        self.gates.push(gate);
        self.domains.push(dom);
        Ok(id)
    }

    fn resolve_domain(&self, gate: &Gate, explicit: Option<Domain>) -> Result<Domain> {
        let derived = self.derived_domain(gate)?;
        match (gate, explicit) {
            (Gate::Union(cs), Some(d)) if cs.is_empty() => Ok(d),
            (Gate::Product(cs), Some(d)) if cs.is_empty() && !d.is_empty() => {
                Err(Error::InvalidCircuit("a product without children has the empty domain".into()))
            }
            (_, Some(d)) if d != derived => {
                Err(Error::InvalidCircuit(format!("declared domain {{{d}}} differs from derived {{{derived}}}")))
            }
            _ => Ok(derived),
        }
    }

    pub fn input(&mut self, pos: usize, letter: Letter) -> Result<GateId> {
        self.add(Gate::Input(pos, letter), None)
    }

    /// Union of `children`; a single child is returned as is.
    pub fn union(&mut self, children: Vec<GateId>) -> Result<GateId> {
        if children.len() == 1 {
            self.gate(children[0])?;
            return Ok(children[0]);
        }
        self.add(Gate::Union(children), None)
    }

    /// The union with no children over `dom`: the empty set of assignments.
    pub fn empty_union(&mut self, dom: Domain) -> GateId {
        self.intern(Gate::Union(Vec::new()), dom)
    }

    /// Product of `children`; a single child is returned as is, and no
    /// children give the gate accepting only the empty assignment.
    pub fn product(&mut self, children: Vec<GateId>) -> Result<GateId> {
        if children.len() == 1 {
            self.gate(children[0])?;
            return Ok(children[0]);
        }
        self.add(Gate::Product(children), None)
    }

    pub fn complement(&mut self, child: GateId) -> Result<GateId> {
        self.add(Gate::Complement(child), None)
    }

    /// `L(sup) \ L(sub)` for `L(sub) ⊆ L(sup)` over one domain, built as
    /// `¬(¬sup ⊎ sub)`: three new gates, deterministic by construction.
    pub fn subset_complement(&mut self, sub: GateId, sup: GateId) -> Result<GateId> {
        if self.domain(sub)? != self.domain(sup)? {
            return Err(Error::DomainMismatch(sub, sup));
        }
        let not_sup = self.complement(sup)?;
        let u = self.add(Gate::Union(vec![not_sup, sub]), None)?;
        self.complement(u)
    }

    /// A gate with domain `{1..n}` accepting nothing.
    pub fn empty_slice(&mut self, n: usize) -> Result<GateId> {
        if n == 0 {
            return Ok(self.empty_union(Domain::empty()));
        }
        let first = Letter(0);
        let mut children = (1..=n).map(|i| self.input(i, first)).collect::<Result<Vec<_>>>()?;
        children.push(self.empty_union(Domain::empty()));
        self.add(Gate::Product(children), None)
    }

    /// A gate with domain `{1..n}` accepting every assignment.
    pub fn full_slice(&mut self, n: usize) -> Result<GateId> {
        let letters: Vec<Letter> = self.alphabet.letters().collect();
        let mut factors = Vec::with_capacity(n);
        for i in 1..=n {
            let inputs = letters.iter().map(|&a| self.input(i, a)).collect::<Result<Vec<_>>>()?;
            factors.push(self.union(inputs)?);
        }
        self.add(Gate::Product(factors), None)
    }

    /// Gate `w_1 ... w_n` as a product of inputs over positions
    /// `offset+1 ..= offset+n`.
    pub fn word_gate(&mut self, w: &[Letter], offset: usize) -> Result<GateId> {
        let inputs = w.iter().enumerate().map(|(i, &a)| self.input(offset + i + 1, a)).collect::<Result<Vec<_>>>()?;
        self.product(inputs)
    }

    pub fn stats(&self) -> CircuitStats {
        let mut s = CircuitStats::default();
        for g in &self.gates {
            match g {
                Gate::Input(..) => s.inputs += 1,
                Gate::Union(_) => s.unions += 1,
                Gate::Product(_) => s.products += 1,
                Gate::Complement(_) => s.complements += 1,
            }
            s.wires += g.children().len();
        }
        s
    }

    /// Gates plus wires.
    pub fn size(&self) -> usize {
        self.stats().size()
    }

    /// Checks that every product has pairwise disjoint child domains whose
    /// union is its domain, that every union is smooth (all children share
    /// its domain), and that complements keep their child's domain.
    pub fn validate_structure(&self) -> Result<()> {
        for (id, g) in self.gates.iter().enumerate() {
            let dom = &self.domains[id];
            for &c in g.children() {
                if c >= id {
                    return Err(Error::InvalidCircuit(format!("gate {id} refers forward to {c}")));
                }
            }
            match g {
                Gate::Input(pos, _) => {
                    if *dom != Domain::singleton(*pos) {
                        return Err(Error::InvalidCircuit(format!("input gate {id} has domain {{{dom}}}")));
                    }
                }
                Gate::Product(cs) => {
                    let total: usize = cs.iter().map(|&c| self.domains[c].len()).sum();
                    let derived = self.derived_domain(g)?;
                    if total != derived.len() {
                        return Err(Error::InvalidCircuit(format!("product gate {id} is not decomposable")));
                    }
                    if derived != *dom {
                        return Err(Error::InvalidCircuit(format!("product gate {id} has domain {{{dom}}}")));
                    }
                }
                Gate::Union(cs) => {
                    for &c in cs {
                        if self.domains[c] != *dom {
                            return Err(Error::DomainMismatch(id, c));
                        }
                    }
                }
                Gate::Complement(c) => {
                    if self.domains[*c] != *dom {
                        return Err(Error::DomainMismatch(id, *c));
                    }
                }
            }
        }
        if let Some(o) = self.output {
            self.gate(o)?;
        }
        Ok(())
    }

    /// Ids of gates reachable from `root`, in increasing order.
    pub fn reachable(&self, root: GateId) -> Result<Vec<GateId>> {
        self.gate(root)?;
        let mut seen = vec![false; self.gates.len()];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(g) = stack.pop() {
            for &c in self.gates[g].children() {
                if !seen[c] {
                    seen[c] = true;
                    stack.push(c);
                }
            }
        }
        Ok((0..self.gates.len()).filter(|&i| seen[i]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probword::Alphabet;

    fn ab() -> Circuit {
        Circuit::new(Alphabet::from_chars("ab").unwrap())
    }

    #[test]
    fn hash_consing_shares() {
        let mut c = ab();
        let x = c.input(1, Letter(0)).unwrap();
        let y = c.input(1, Letter(0)).unwrap();
        assert_eq!(x, y);
        let z = c.push_unshared(Gate::Input(1, Letter(0)), None).unwrap();
        assert_ne!(x, z);
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn subset_complement_adds_three_gates() {
        let mut c = ab();
        let all = c.full_slice(2).unwrap();
        let aa = c.word_gate(&[Letter(0), Letter(0)], 0).unwrap();
        let before = c.len();
        let g = c.subset_complement(aa, all).unwrap();
        assert_eq!(c.len(), before + 3);
        c.set_output(g).unwrap();
        c.validate_structure().unwrap();
    }

    #[test]
    fn structure_violations() {
        let mut c = ab();
        let a1 = c.input(1, Letter(0)).unwrap();
        let b1 = c.input(1, Letter(1)).unwrap();
        let p = c.push_unshared(Gate::Product(vec![a1, b1]), None).unwrap();
        assert!(c.validate_structure().is_err());
        let _ = p;

        let mut c = ab();
        let a1 = c.input(1, Letter(0)).unwrap();
        let a2 = c.input(2, Letter(0)).unwrap();
        c.add(Gate::Union(vec![a1, a2]), None).unwrap();
        assert!(matches!(c.validate_structure(), Err(Error::DomainMismatch(..))));
    }

    #[test]
    fn childless_gates() {
        let mut c = ab();
        assert!(c.add(Gate::Product(vec![]), Some(Domain::range(1, 2))).is_err());
        let e = c.empty_union(Domain::range(1, 2));
        assert_eq!(c.domain(e).unwrap().len(), 2);
        let s = c.empty_slice(3).unwrap();
        assert_eq!(*c.domain(s).unwrap(), Domain::range(1, 3));
        c.validate_structure().unwrap();
    }

    #[test]
    fn stats_count_kinds() {
        let mut c = ab();
        let g = c.full_slice(2).unwrap();
        c.complement(g).unwrap();
        let s = c.stats();
        assert_eq!((s.inputs, s.unions, s.products, s.complements), (4, 2, 1, 1));
        assert_eq!(s.wires, 4 + 2 + 1);
        assert_eq!(s.size(), 8 + 7);
    }
}
