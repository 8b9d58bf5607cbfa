use crate::circuit::{Circuit, GateId};
use crate::probword::{Alphabet, Letter};

pub fn l3_alphabet() -> Alphabet {
    Alphabet::from_chars("ab").expect("valid alphabet")
}

/// Circuit for words of length `2k` over `{a, b}` having `a` at both
/// positions `i` and `k + i` for some `1 ≤ i ≤ k`; odd lengths give the
/// empty slice. A chain of gates `g_i` over positions `{i..k} ∪ {k+i..2k}`
/// scans the pairs left to right and stops at the first `(a, a)`.
pub fn compile_l3(total_length: usize) -> Circuit {
    let alphabet = l3_alphabet();
    let mut c = Circuit::new(alphabet);
    let out = build(&mut c, total_length).expect("positions are in range");
    c.set_output(out).expect("gate exists");
    c
}

fn build(c: &mut Circuit, total: usize) -> crate::Result<GateId> {
    if total % 2 == 1 || total == 0 {
        return c.empty_slice(total);
    }
    let k = total / 2;
    let (a, b) = (Letter(0), Letter(1));
    // full[i]: every assignment of the pairs i..k, built right to left
    let mut full: Option<GateId> = None;
    let mut chain: Option<GateId> = None;
    for i in (1..=k).rev() {
        let left = [c.input(i, a)?, c.input(i, b)?];
        let right = [c.input(k + i, a)?, c.input(k + i, b)?];
        let mut stop = vec![left[0], right[0]];
        stop.extend(full);
        let mut children = vec![c.product(stop)?];
        if let Some(next) = chain {
            for (x, y) in [(0, 1), (1, 0), (1, 1)] {
                children.push(c.product(vec![left[x], right[y], next])?);
            }
        }
        chain = Some(c.union(children)?);
        let pair = [c.union(left.to_vec())?, c.union(right.to_vec())?];
        let mut rest = pair.to_vec();
        rest.extend(full);
        full = Some(c.product(rest)?);
    }
    Ok(chain.expect("k ≥ 1"))
}
