use super::{Circuit, Gate, GateId};
use crate::error::{Error, Result};
use crate::probword::{ProbWord, Probability};

impl Circuit {
    /// Probability of the output gate under `p`, in one bottom-up pass.
    /// Exact when the circuit is deterministic and decomposable.
    pub fn evaluate(&self, p: &ProbWord) -> Result<Probability> {
        self.evaluate_gate(self.output()?, p)
    }

    pub fn evaluate_gate(&self, root: GateId, p: &ProbWord) -> Result<Probability> {
        if self.alphabet() != p.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        let n = p.len();
        let order = self.reachable(root)?;
        let mut val: Vec<Option<Probability>> = vec![None; self.len()];
        for id in order {
            let v = match &self.gates[id] {
                Gate::Input(pos, a) => {
                    if *pos > n {
                        return Err(Error::PositionOutOfRange { position: *pos, len: n });
                    }
                    p.weight(*pos, *a).clone()
                }
                Gate::Union(cs) => cs.iter().map(|&c| val[c].as_ref().expect("topological")).sum(),
                Gate::Product(cs) => cs.iter().map(|&c| val[c].as_ref().expect("topological")).product(),
                Gate::Complement(c) => val[*c].as_ref().expect("topological").complement(),
            };
            val[id] = Some(v);
        }
        Ok(val[root].take().expect("root evaluated"))
    }
}

#[cfg(test)]
mod tests {
    use crate::circuit::Circuit;
    use crate::probword::{Alphabet, Letter, ProbWord, Probability};

    #[test]
    fn evaluate_basic_gates() {
        let a = Alphabet::from_chars("ab").unwrap();
        let mut c = Circuit::new(a.clone());
        let all = c.full_slice(3).unwrap();
        let aaa = c.word_gate(&[Letter(0); 3], 0).unwrap();
        let rest = c.subset_complement(aaa, all).unwrap();
        let p = ProbWord::uniform(3, &a);
        assert_eq!(c.evaluate_gate(all, &p).unwrap(), Probability::one());
        assert_eq!(c.evaluate_gate(aaa, &p).unwrap(), Probability::ratio(1, 8));
        assert_eq!(c.evaluate_gate(rest, &p).unwrap(), Probability::ratio(7, 8));
        let e = c.empty_slice(3).unwrap();
        assert!(c.evaluate_gate(e, &p).unwrap().is_zero());
        let short = ProbWord::uniform(2, &a);
        assert!(c.evaluate_gate(all, &short).is_err());
    }
}
