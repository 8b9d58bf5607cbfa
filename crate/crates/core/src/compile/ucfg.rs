use crate::circuit::{Circuit, Domain, GateId};
use crate::error::Result;
use crate::grammar::{NormalizedCfg, Symbol};

/// Circuit capturing `L(g) ∩ Σⁿ`. One gate `g[X, i, j]` per nonterminal
/// and span with a nonempty language; binary rules become unions over
/// split points of products. Disjointness follows from unambiguity of `g`,
/// which is the caller's obligation (unit cycles are rejected by the
/// pipeline).
pub fn compile_ucfg(g: &NormalizedCfg, n: usize) -> Result<Circuit> {
    let order: Vec<usize> = g.unit_order()?.iter().map(|x| x.index()).collect();
    let cfg = g.cfg();
    let mut c = Circuit::new(cfg.alphabet().clone());
    if n == 0 {
        let out = if g.accepts_empty() { c.product(Vec::new())? } else { c.empty_union(Domain::empty()) };
        c.set_output(out)?;
        return Ok(c);
    }
    let nt = cfg.nonterminal_count();
    let mut by_lhs: Vec<Vec<&[Symbol]>> = vec![Vec::new(); nt];
    for p in cfg.productions() {
        by_lhs[p.lhs.index()].push(&p.rhs);
    }
    // table[(i * (n + 1) + len) * nt + x], i 0-based start
    let mut table: Vec<Option<GateId>> = vec![None; n * (n + 1) * nt];
    let idx = |i: usize, len: usize, x: usize| (i * (n + 1) + len) * nt + x;
    for len in 1..=n {
        for i in 0..=(n - len) {
            for &x in &order {
                let mut children = Vec::new();
                for rhs in &by_lhs[x] {
                    match *rhs {
                        [Symbol::T(a)] => {
                            if len == 1 {
                                children.push(c.input(i + 1, *a)?);
                            }
                        }
                        [Symbol::N(y)] => {
                            if let Some(gy) = table[idx(i, len, y.index())] {
                                children.push(gy);
                            }
                        }
                        [Symbol::N(y), Symbol::N(z)] => {
                            for k in 1..len {
                                let (Some(gy), Some(gz)) =
                                    (table[idx(i, k, y.index())], table[idx(i + k, len - k, z.index())])
                                else {
                                    continue;
                                };
                                children.push(c.product(vec![gy, gz])?);
                            }
                        }
                        _ => unreachable!("2NF without epsilon rules"),
                    }
                }
                if !children.is_empty() {
                    table[idx(i, len, x)] = Some(c.union(children)?);
                }
            }
        }
    }
    let out = match table[idx(0, n, cfg.axiom().index())] {
        Some(gate) => gate,
        None => c.empty_union(Domain::range(1, n)),
    };
    c.set_output(out)?;
    Ok(c)
}
