//! Concatenations of two palindromes.
//!
//! Words of `PAL² ∩ Σⁿ` are partitioned by their order `d` and by the
//! offset `j`, the length of the left palindrome in the unique
//! decomposition `xy` (`y` nonempty) of the primitive root. `M[d, j]` holds
//! the words `vᵈ` with `v = xy`, `|x| = j`, `x, y` palindromes, and
//! `L[d, j] = M[d, j] ∖ ⊎_{p > 1, pd | n} L[pd, j mod n/(pd)]`.

use std::collections::BTreeMap;

use super::divisors;
use crate::circuit::{Circuit, GateId};
use crate::error::{Error, Result};
use crate::probword::{Alphabet, Letter};

/// Gate for `M[d, j]`: one free letter per mirror class of the block
/// `v = xy`, each class spread over all `d` repetitions.
fn mndj_gate(c: &mut Circuit, n: usize, d: usize, j: usize) -> Result<GateId> {
    let m = n / d;
    let mirror = |t: usize| if t < j { j - 1 - t } else { j + (m - 1 - t) };
    let letters: Vec<Letter> = c.alphabet().letters().collect();
    let mut classes = Vec::new();
    for t in 0..m {
        let partner = mirror(t);
        if partner < t {
            continue;
        }
        let mut positions: Vec<usize> = Vec::with_capacity(2 * d);
        for b in 0..d {
            positions.push(b * m + t + 1);
            if partner != t {
                positions.push(b * m + partner + 1);
            }
        }
        let mut per_letter = Vec::with_capacity(letters.len());
        for &a in &letters {
            let inputs = positions.iter().map(|&q| c.input(q, a)).collect::<Result<Vec<_>>>()?;
            per_letter.push(c.product(inputs)?);
        }
        classes.push(c.union(per_letter)?);
    }
    c.product(classes)
}

fn check_mndj(n: usize, d: usize, j: usize) -> Result<()> {
    if n == 0 || d == 0 || !n.is_multiple_of(d) || j >= n / d {
        return Err(Error::ParameterOutOfRange(format!(
            "need n ≥ 1, d | n and 0 ≤ j < n/d; got n = {n}, d = {d}, j = {j}"
        )));
    }
    Ok(())
}

/// Circuit for the `n`-th slice of `M[d, j]`.
pub fn compile_mndj(n: usize, d: usize, j: usize, alphabet: &Alphabet) -> Result<Circuit> {
    check_mndj(n, d, j)?;
    let mut c = Circuit::new(alphabet.clone());
    let g = mndj_gate(&mut c, n, d, j)?;
    c.set_output(g)?;
    Ok(c)
}

/// One shared circuit with a gate for each `L[d, j]`, keyed by `(d, j)`,
/// and the output set to their disjoint union. For `n = 0` the output
/// captures the empty word and the map is empty.
pub fn compile_pal2_parts(n: usize, alphabet: &Alphabet) -> Result<(Circuit, BTreeMap<(usize, usize), GateId>)> {
    let mut c = Circuit::new(alphabet.clone());
    let mut l: BTreeMap<(usize, usize), GateId> = BTreeMap::new();
    if n == 0 {
        let eps = c.product(Vec::new())?;
        c.set_output(eps)?;
        return Ok((c, l));
    }
    let divs = divisors(n);
    for &d in divs.iter().rev() {
        for j in 0..n / d {
            let m = mndj_gate(&mut c, n, d, j)?;
            let finer: Vec<GateId> =
                divs.iter().filter(|&&e| e > d && e % d == 0).map(|&e| l[&(e, j % (n / e))]).collect();
            let gate = if finer.is_empty() {
                m
            } else {
                let sub = c.union(finer)?;
                c.subset_complement(sub, m)?
            };
            l.insert((d, j), gate);
        }
    }
    let all: Vec<GateId> = l.values().copied().collect();
    let out = c.union(all)?;
    c.set_output(out)?;
    Ok((c, l))
}

/// Circuit for `PAL² ∩ Σⁿ`.
pub fn compile_pal2(n: usize, alphabet: &Alphabet) -> Result<Circuit> {
    Ok(compile_pal2_parts(n, alphabet)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probword::{ProbWord, Probability};

    fn ab() -> Alphabet {
        Alphabet::from_chars("ab").unwrap()
    }

    fn words(c: &Circuit) -> Vec<String> {
        c.accepted_words().unwrap().iter().map(|w| c.alphabet().format_word(w)).collect()
    }

    #[test]
    fn mndj_examples() {
        assert_eq!(words(&compile_mndj(2, 1, 0, &ab()).unwrap()), ["aa", "bb"]);
        assert_eq!(words(&compile_mndj(2, 1, 1, &ab()).unwrap()).len(), 4);
        assert_eq!(words(&compile_mndj(4, 2, 0, &ab()).unwrap()), ["aaaa", "bbbb"]);
        assert!(compile_mndj(4, 3, 0, &ab()).is_err());
        assert!(compile_mndj(4, 2, 2, &ab()).is_err());
    }

    #[test]
    fn small_slices() {
        assert_eq!(words(&compile_pal2(0, &ab()).unwrap()), [""]);
        assert_eq!(words(&compile_pal2(1, &ab()).unwrap()), ["a", "b"]);
        assert_eq!(words(&compile_pal2(2, &ab()).unwrap()).len(), 4);
        // every binary word of length 3 splits into two palindromes
        assert_eq!(words(&compile_pal2(3, &ab()).unwrap()).len(), 8);
    }

    #[test]
    fn partition_sums_to_total() {
        for n in 1..=8 {
            let (c, parts) = compile_pal2_parts(n, &ab()).unwrap();
            c.validate_structure().unwrap();
            let p = ProbWord::uniform(n, &ab());
            let sum: Probability = parts.values().map(|&g| c.evaluate_gate(g, &p).unwrap()).sum();
            assert_eq!(sum, c.evaluate(&p).unwrap());
            assert_eq!(c.check_disjointness().unwrap(), None);
        }
    }
}
