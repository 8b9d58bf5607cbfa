use super::{Cfg, NormalizedCfg, Symbol};
use crate::error::Result;
use crate::probword::Letter;

/// Boolean CYK membership for a grammar in 2-normal form, at any pipeline
/// stage. Unit and epsilon productions are handled by a per-span fixpoint,
/// so unit cycles are harmless here.
pub fn cyk_member(g: &NormalizedCfg, w: &[Letter]) -> Result<bool> {
    for &l in w {
        g.cfg().alphabet().check(l)?;
    }
    if w.is_empty() {
        return Ok(g.accepts_empty());
    }
    Ok(chart_member(g.cfg(), &g.compute_nullable(), w))
}

fn chart_member(g: &Cfg, nullable: &[bool], w: &[Letter]) -> bool {
    let n = w.len();
    let nt = g.nonterminal_count();
    // chart[(i * (n + 1) + len) * nt + x]
    let mut chart = vec![false; n * (n + 1) * nt];
    let idx = |i: usize, len: usize, x: usize| (i * (n + 1) + len) * nt + x;
    let prods = g.productions();
    for len in 1..=n {
        for i in 0..=(n - len) {
            loop {
                let mut changed = false;
                for p in prods {
                    let x = p.lhs.index();
                    if chart[idx(i, len, x)] {
                        continue;
                    }
                    let hit = match p.rhs.as_slice() {
                        [Symbol::T(a)] => len == 1 && w[i] == *a,
                        [Symbol::N(y)] => chart[idx(i, len, y.index())],
                        [Symbol::N(y), Symbol::N(z)] => {
                            let (y, z) = (y.index(), z.index());
                            (nullable[y] && chart[idx(i, len, z)])
                                || (nullable[z] && chart[idx(i, len, y)])
                                || (1..len).any(|k| chart[idx(i, k, y)] && chart[idx(i + k, len - k, z)])
                        }
                        _ => false,
                    };
                    if hit {
                        chart[idx(i, len, x)] = true;
                        changed = true;
                    }
                }
                if !changed {
                    break;
                }
            }
        }
    }
    chart[idx(0, n, g.axiom().index())]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::{normalize_for_slices, parse_grammar};

    fn member_at_all_stages(text: &str, word: &str) -> Vec<bool> {
        let g = parse_grammar(text).unwrap();
        let w = g.alphabet().parse_word(word).unwrap();
        let s1 = NormalizedCfg::to_2nf(&g);
        let s2 = s1.clone().eliminate_epsilon();
        let s3 = s2.clone().prune_useless();
        let s4 = normalize_for_slices(&g);
        [s1, s2, s3, s4].iter().map(|s| cyk_member(s, &w).unwrap()).collect()
    }

    #[test]
    fn palindromes() {
        let pal = "alphabet: a b\nS -> a S a | b S b | a | b | eps\n";
        for (w, expect) in [("", true), ("a", true), ("ab", false), ("abba", true), ("abab", false)] {
            assert!(member_at_all_stages(pal, w).iter().all(|&b| b == expect), "{w}");
        }
    }

    #[test]
    fn ambiguous_with_unit_cycle() {
        let g = "alphabet: a b\nS -> T | a S b | eps\nT -> S | a\n";
        for (w, expect) in [("", true), ("a", true), ("ab", true), ("aab", true), ("ba", false)] {
            assert!(member_at_all_stages(g, w).iter().all(|&b| b == expect), "{w}");
        }
    }
}
