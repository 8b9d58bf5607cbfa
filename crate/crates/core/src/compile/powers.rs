use std::collections::BTreeMap;

use super::divisors;
use crate::circuit::{Circuit, GateId};
use crate::error::{Error, Result};
use crate::probword::{Alphabet, Letter};

/// Gate for `Mₖ ∩ Σⁿ = { vᵏ : |v| = n/k }`, or the empty slice when `k ∤ n`.
fn mk_gate(c: &mut Circuit, n: usize, k: usize) -> Result<GateId> {
    if !n.is_multiple_of(k) {
        return c.empty_slice(n);
    }
    let d = n / k;
    let letters: Vec<Letter> = c.alphabet().letters().collect();
    let mut residues = Vec::with_capacity(d);
    for j in 1..=d {
        let mut per_letter = Vec::with_capacity(letters.len());
        for &a in &letters {
            let inputs = (0..k).map(|p| c.input(j + p * d, a)).collect::<Result<Vec<_>>>()?;
            per_letter.push(c.product(inputs)?);
        }
        residues.push(c.union(per_letter)?);
    }
    c.product(residues)
}

/// Circuit for the `n`-th slice of `Mₖ`, `1 ≤ k ≤ n`.
pub fn compile_mk(n: usize, k: usize, alphabet: &Alphabet) -> Result<Circuit> {
    if k == 0 || k > n {
        return Err(Error::ParameterOutOfRange(format!("k = {k} must satisfy 1 ≤ k ≤ n = {n}")));
    }
    let mut c = Circuit::new(alphabet.clone());
    let g = mk_gate(&mut c, n, k)?;
    c.set_output(g)?;
    Ok(c)
}

/// One shared circuit holding a gate for every order slice `Lᵢ ∩ Σⁿ`
/// (words of length `n` whose primitive root is repeated `i` times), built
/// by downward induction: `Lₙ = Mₙ` and `Lᵢ = Mᵢ ∖ ⊎_{d ≥ 2} L_{d·i}`.
pub fn compile_orders(n: usize, alphabet: &Alphabet) -> Result<(Circuit, BTreeMap<usize, GateId>)> {
    if n == 0 {
        return Err(Error::ParameterOutOfRange("order slices need n ≥ 1".into()));
    }
    let mut c = Circuit::new(alphabet.clone());
    let mut l: BTreeMap<usize, GateId> = BTreeMap::new();
    for &i in divisors(n).iter().rev() {
        let m = mk_gate(&mut c, n, i)?;
        let finer: Vec<GateId> = l.iter().filter(|(&o, _)| o != i && o % i == 0).map(|(_, &g)| g).collect();
        let gate = if finer.is_empty() {
            m
        } else {
            let sub = c.union(finer)?;
            c.subset_complement(sub, m)?
        };
        l.insert(i, gate);
    }
    Ok((c, l))
}

/// Circuit for the words of length `n` and order exactly `k` (`k | n`).
pub fn compile_order(n: usize, k: usize, alphabet: &Alphabet) -> Result<Circuit> {
    if n == 0 || k == 0 || !n.is_multiple_of(k) {
        return Err(Error::ParameterOutOfRange(format!("order {k} must divide n = {n}")));
    }
    let (mut c, l) = compile_orders(n, alphabet)?;
    c.set_output(l[&k])?;
    Ok(c)
}

/// Primitive words of length `n`; the empty word is not primitive.
pub fn compile_primitive(n: usize, alphabet: &Alphabet) -> Result<Circuit> {
    if n == 0 {
        return Ok(super::empty_slice_circuit(0, alphabet));
    }
    compile_order(n, 1, alphabet)
}
