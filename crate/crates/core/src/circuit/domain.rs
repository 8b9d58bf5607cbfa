use std::fmt;

/// A finite set of word positions (1-based), stored as sorted, disjoint,
/// non-adjacent inclusive runs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Domain {
    runs: Vec<(usize, usize)>,
}

impl Domain {
    pub fn empty() -> Self {
        Domain { runs: Vec::new() }
    }

    pub fn singleton(pos: usize) -> Self {
        Domain { runs: vec![(pos, pos)] }
    }

    /// `{lo, ..., hi}`; empty when `hi < lo`.
    pub fn range(lo: usize, hi: usize) -> Self {
        if hi < lo {
            Domain::empty()
        } else {
            Domain { runs: vec![(lo, hi)] }
        }
    }

    pub fn from_positions(positions: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = positions.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        let mut runs: Vec<(usize, usize)> = Vec::new();
        for p in v {
            match runs.last_mut() {
                Some((_, hi)) if *hi + 1 == p => *hi = p,
                _ => runs.push((p, p)),
            }
        }
        Domain { runs }
    }

    pub fn runs(&self) -> &[(usize, usize)] {
        &self.runs
    }

    pub fn len(&self) -> usize {
        self.runs.iter().map(|(a, b)| b - a + 1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn max(&self) -> Option<usize> {
        self.runs.last().map(|r| r.1)
    }

    pub fn contains(&self, pos: usize) -> bool {
        let i = self.runs.partition_point(|r| r.1 < pos);
        i < self.runs.len() && self.runs[i].0 <= pos
    }

    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.runs.iter().flat_map(|&(a, b)| a..=b)
    }

    /// Rank of `pos` among the positions, if present.
    pub fn rank(&self, pos: usize) -> Option<usize> {
        let mut before = 0;
        for &(a, b) in &self.runs {
            if pos < a {
                return None;
            }
            if pos <= b {
                return Some(before + pos - a);
            }
            before += b - a + 1;
        }
        None
    }

    pub fn union(&self, other: &Domain) -> Domain {
        let mut all: Vec<(usize, usize)> = self.runs.iter().chain(&other.runs).copied().collect();
        all.sort_unstable();
        let mut runs: Vec<(usize, usize)> = Vec::with_capacity(all.len());
        for (a, b) in all {
            match runs.last_mut() {
                Some((_, hi)) if a <= *hi + 1 => *hi = (*hi).max(b),
                _ => runs.push((a, b)),
            }
        }
        Domain { runs }
    }

    /// Whether this is exactly `{1, ..., len}`.
    pub fn is_prefix(&self) -> bool {
        match self.runs.as_slice() {
            [] => true,
            [(1, _)] => true,
            _ => false,
        }
    }
}

/// `1..3 5 7..9`; the empty domain renders as nothing.
impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.runs.iter().map(|&(a, b)| if a == b { a.to_string() } else { format!("{a}..{b}") }).collect();
        write!(f, "{}", parts.join(" "))
    }
}
