//! Positive partitioned 2-DNF formulas, their brute-force model counter,
//! and encodings into partial words whose completions accepted by the
//! hard languages `L0`, `L0'`, `L1`, `L2` are counted by the formula's
//! satisfying valuations.

mod encode;
mod matchers;

use std::fmt;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use encode::{encode_counter, encode_l0, encode_l0prime, ReductionOutput};
pub use matchers::{match_l0, match_l0prime, match_l1, match_l2};

use crate::error::{Error, Result};

/// Largest `n_x + n_y` accepted by [`count_pp2dnf`].
pub const MAX_BRUTE_FORCE_VARS: usize = 24;

/// `⋁ (x_i ∧ y_j)` over the clause list, variables 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pp2dnf {
    n_x: usize,
    n_y: usize,
    clauses: Vec<(usize, usize)>,
}

impl Pp2dnf {
    pub fn new(n_x: usize, n_y: usize, clauses: Vec<(usize, usize)>) -> Result<Self> {
        for &(i, j) in &clauses {
            if i == 0 || i > n_x || j == 0 || j > n_y {
                return Err(Error::ParameterOutOfRange(format!("clause (x{i}, y{j}) out of range")));
            }
        }
        Ok(Pp2dnf { n_x, n_y, clauses })
    }

    pub fn n_x(&self) -> usize {
        self.n_x
    }

    pub fn n_y(&self) -> usize {
        self.n_y
    }

    pub fn clauses(&self) -> &[(usize, usize)] {
        &self.clauses
    }

    pub fn variables(&self) -> usize {
        self.n_x + self.n_y
    }

    /// Evaluates under `x`, `y` valuations (index 0 is variable 1).
    pub fn satisfied_by(&self, x: &[bool], y: &[bool]) -> bool {
        self.clauses.iter().any(|&(i, j)| x[i - 1] && y[j - 1])
    }
}

/// Text format: `x: n`, `y: n`, then one clause per line as `x1 y3`.
pub fn parse_pp2dnf(text: &str) -> Result<Pp2dnf> {
    let syntax = |line: usize, msg: String| Error::Syntax { line, msg };
    let (mut n_x, mut n_y) = (None, None);
    let mut clauses = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.split(';').next().unwrap_or("").trim();
        if l.is_empty() {
            continue;
        }
        if let Some(r) = l.strip_prefix("x:") {
            n_x = Some(r.trim().parse().map_err(|_| syntax(line, "bad x count".into()))?);
        } else if let Some(r) = l.strip_prefix("y:") {
            n_y = Some(r.trim().parse().map_err(|_| syntax(line, "bad y count".into()))?);
        } else {
            let toks: Vec<&str> = l.split_whitespace().collect();
            let var = |t: &str, p: char| t.strip_prefix(p).and_then(|d| d.parse::<usize>().ok());
            match toks.as_slice() {
                [a, b] => match (var(a, 'x'), var(b, 'y')) {
                    (Some(i), Some(j)) => clauses.push((i, j)),
                    _ => return Err(syntax(line, format!("expected `xI yJ`, got `{l}`"))),
                },
                _ => return Err(syntax(line, format!("expected `xI yJ`, got `{l}`"))),
            }
        }
    }
    let n_x = n_x.ok_or_else(|| syntax(0, "missing `x:` header".into()))?;
    let n_y = n_y.ok_or_else(|| syntax(0, "missing `y:` header".into()))?;
    Pp2dnf::new(n_x, n_y, clauses)
}

impl fmt::Display for Pp2dnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "x: {}", self.n_x)?;
        writeln!(f, "y: {}", self.n_y)?;
        for (i, j) in &self.clauses {
            writeln!(f, "x{i} y{j}")?;
        }
        Ok(())
    }
}

/// Number of satisfying valuations, by enumeration of all `2^(n_x+n_y)`.
pub fn count_pp2dnf(f: &Pp2dnf) -> Result<BigUint> {
    let n = f.variables();
    if n > MAX_BRUTE_FORCE_VARS {
        return Err(Error::TooManyVariables(n));
    }
    let mut count: u64 = 0;
    for mask in 0u64..(1u64 << n) {
        let x = |i: usize| mask >> (i - 1) & 1 == 1;
        let y = |j: usize| mask >> (f.n_x + j - 1) & 1 == 1;
        if f.clauses.iter().any(|&(i, j)| x(i) && y(j)) {
            count += 1;
        }
    }
    Ok(BigUint::from(count))
}

/// `m` distinct clauses drawn uniformly from the `n_x·n_y` possible ones,
/// sorted; deterministic in `seed`.
pub fn pp2dnf_random(n_x: usize, n_y: usize, m: usize, seed: u64) -> Result<Pp2dnf> {
    if n_x == 0 || n_y == 0 {
        return Err(Error::ParameterOutOfRange("need at least one x and one y variable".into()));
    }
    let available = n_x * n_y;
    if m > available {
        return Err(Error::InfeasibleClauseCount { requested: m, available });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut clauses: Vec<(usize, usize)> =
        rand::seq::index::sample(&mut rng, available, m).into_iter().map(|k| (k / n_y + 1, k % n_y + 1)).collect();
    clauses.sort_unstable();
    Pp2dnf::new(n_x, n_y, clauses)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let f = Pp2dnf::new(2, 2, vec![(1, 1), (2, 1)]).unwrap();
        assert_eq!(count_pp2dnf(&f).unwrap(), BigUint::from(6u32));
        assert_eq!(count_pp2dnf(&Pp2dnf::new(3, 3, vec![]).unwrap()).unwrap(), BigUint::from(0u32));
        assert_eq!(count_pp2dnf(&Pp2dnf::new(1, 1, vec![(1, 1)]).unwrap()).unwrap(), BigUint::from(1u32));
        assert_eq!(count_pp2dnf(&Pp2dnf::new(13, 12, vec![]).unwrap()), Err(Error::TooManyVariables(25)));
    }

    #[test]
    fn random_instances() {
        let f = pp2dnf_random(2, 2, 4, 7).unwrap();
        assert_eq!(f.clauses(), &[(1, 1), (1, 2), (2, 1), (2, 2)]);
        assert_eq!(pp2dnf_random(1, 1, 1, 0).unwrap().clauses(), &[(1, 1)]);
        assert_eq!(pp2dnf_random(4, 3, 5, 42).unwrap(), pp2dnf_random(4, 3, 5, 42).unwrap());
        assert_eq!(pp2dnf_random(2, 2, 5, 0), Err(Error::InfeasibleClauseCount { requested: 5, available: 4 }));
    }

    #[test]
    fn text_round_trip() {
        let f = parse_pp2dnf("x: 2\ny: 3\nx1 y3\nx2 y1 ; comment\n").unwrap();
        assert_eq!(f.clauses(), &[(1, 3), (2, 1)]);
        assert_eq!(parse_pp2dnf(&f.to_string()).unwrap(), f);
        assert!(parse_pp2dnf("x: 1\ny: 1\nx2 y1\n").is_err());
        assert!(matches!(parse_pp2dnf("x: 1\ny: 1\ny1 x1\n"), Err(Error::Syntax { line: 3, .. })));
    }
}
