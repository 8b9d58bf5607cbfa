//! Reference semantics by explicit enumeration of assignment sets. Only
//! usable on small domains; this is the oracle the evaluator is tested
//! against.

use std::collections::BTreeSet;
use std::rc::Rc;

use super::{Circuit, Gate, GateId};
use crate::error::{Error, Result};
use crate::probword::{Letter, Word};

/// Letters listed in increasing order of the positions of a gate's domain.
pub type Assignment = Vec<Letter>;

/// A union gate with two children that both accept `assignment`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub gate: GateId,
    pub assignment: Assignment,
}

/// Upper bound on `|Σ|^|dom|` for any enumerated gate.
pub const ENUMERATION_GUARD: u64 = 1 << 20;

type Sets = Vec<Option<Rc<BTreeSet<Assignment>>>>;

impl Circuit {
    fn guard(&self, ids: &[GateId]) -> Result<()> {
        let sigma = self.alphabet().size() as u64;
        for &id in ids {
            let d = self.domains[id].len() as u32;
            let fits = sigma.checked_pow(d).is_some_and(|v| v <= ENUMERATION_GUARD);
            if !fits {
                return Err(Error::DomainTooLarge(format!("gate {id}: {sigma}^{d} assignments")));
            }
        }
        Ok(())
    }

    fn assignment_sets(&self, ids: &[GateId]) -> Result<Sets> {
        self.guard(ids)?;
        let letters: Vec<Letter> = self.alphabet().letters().collect();
        let mut sets: Sets = vec![None; self.len()];
        for &id in ids {
            let dom = &self.domains[id];
            let get = |sets: &Sets, c: GateId| sets[c].clone().expect("children first");
            let set: BTreeSet<Assignment> = match &self.gates[id] {
                Gate::Input(_, a) => BTreeSet::from([vec![*a]]),
                Gate::Union(cs) => {
                    let mut out = BTreeSet::new();
                    for &c in cs {
                        if self.domains[c] != *dom {
                            return Err(Error::DomainMismatch(id, c));
                        }
                        out.extend(get(&sets, c).iter().cloned());
                    }
                    out
                }
                Gate::Product(cs) => {
                    let total: usize = cs.iter().map(|&c| self.domains[c].len()).sum();
                    if total != dom.len() {
                        return Err(Error::InvalidCircuit(format!("product gate {id} is not decomposable")));
                    }
                    let mut partial: Vec<Assignment> = vec![vec![Letter(u32::MAX); dom.len()]];
                    for &c in cs {
                        let slots: Vec<usize> =
                            self.domains[c].positions().map(|q| dom.rank(q).expect("child inside parent")).collect();
                        let child = get(&sets, c);
                        let mut next = Vec::with_capacity(partial.len() * child.len());
                        for base in &partial {
                            for asg in child.iter() {
                                let mut v = base.clone();
                                for (k, &s) in slots.iter().enumerate() {
                                    v[s] = asg[k];
                                }
                                next.push(v);
                            }
                        }
                        partial = next;
                    }
                    partial.into_iter().collect()
                }
                Gate::Complement(c) => {
                    let child = get(&sets, *c);
                    all_assignments(&letters, dom.len()).filter(|a| !child.contains(a)).collect()
                }
            };
            sets[id] = Some(Rc::new(set));
        }
        Ok(sets)
    }

    /// Assignments over `dom(root)` accepted by `root`.
    pub fn enumerate_assignments(&self, root: GateId) -> Result<BTreeSet<Assignment>> {
        let ids = self.reachable(root)?;
        let sets = self.assignment_sets(&ids)?;
        Ok(Rc::try_unwrap(sets[root].clone().expect("root")).unwrap_or_else(|rc| (*rc).clone()))
    }

    /// Words accepted by the output gate; its domain must be `{1..n}`.
    pub fn accepted_words(&self) -> Result<BTreeSet<Word>> {
        let out = self.output()?;
        if !self.domains[out].is_prefix() {
            return Err(Error::InvalidCircuit(format!("output domain {{{}}} is not 1..n", self.domains[out])));
        }
        self.enumerate_assignments(out)
    }

    /// First union gate (in id order, among gates reachable from the
    /// output, or all gates without an output) with two children sharing an
    /// accepted assignment.
    pub fn check_disjointness(&self) -> Result<Option<Violation>> {
        let ids = match self.output {
            Some(o) => self.reachable(o)?,
            None => (0..self.len()).collect(),
        };
        let sets = self.assignment_sets(&ids)?;
        for &id in &ids {
            if let Gate::Union(cs) = &self.gates[id] {
                let mut seen: BTreeSet<&Assignment> = BTreeSet::new();
                for &c in cs {
                    for a in sets[c].as_ref().expect("enumerated").iter() {
                        if !seen.insert(a) {
                            return Ok(Some(Violation { gate: id, assignment: a.clone() }));
                        }
                    }
                }
            }
        }
        Ok(None)
    }
}

fn all_assignments(letters: &[Letter], len: usize) -> impl Iterator<Item = Assignment> + '_ {
    let total = letters.len().pow(len as u32);
    (0..total).map(move |mut k| {
        let mut v = vec![letters[0]; len];
        for slot in v.iter_mut().rev() {
            *slot = letters[k % letters.len()];
            k /= letters.len();
        }
        v
    })
}
