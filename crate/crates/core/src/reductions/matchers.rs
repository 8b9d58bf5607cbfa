//! Definitional matchers for the hard languages, by direct scans.

/// `u # Σ* vᴿ Σ*` with `u, v ∈ {0,1}*`, `|u| = |v|` and `v ≤ u` bitwise.
/// `u` is the prefix before the first `#`.
pub fn match_l0(w: &str) -> bool {
    let w = w.as_bytes();
    let Some(h) = w.iter().position(|&c| c == b'#') else {
        return false;
    };
    let u = &w[..h];
    if u.iter().any(|&c| c != b'0' && c != b'1') {
        return false;
    }
    let rest = &w[h + 1..];
    let n = u.len();
    if n == 0 {
        return true;
    }
    // the factor read left to right is vᴿ, so its last letter pairs with u[0]
    rest.windows(n).any(|f| (0..n).all(|t| matches!((f[n - 1 - t], u[t]), (b'0', b'0' | b'1') | (b'1', b'1'))))
}

/// `Σ* # A # Σ* # B # Σ*` with `A, B ∈ {0,1}*`, `|A| = |B|` and `Bᴿ ≤ A`
/// bitwise, the two delimited factors not sharing a `#`.
pub fn match_l0prime(w: &str) -> bool {
    let w = w.as_bytes();
    let hashes: Vec<usize> = w.iter().enumerate().filter(|&(_, &c)| c == b'#').map(|(i, _)| i).collect();
    // factors between consecutive #: only those are {0,1}* and #-delimited
    let factors: Vec<&[u8]> = hashes.windows(2).map(|p| &w[p[0] + 1..p[1]]).collect();
    let binary = |f: &[u8]| f.iter().all(|&c| c == b'0' || c == b'1');
    for (k, a) in factors.iter().enumerate() {
        if !binary(a) {
            continue;
        }
        for b in factors.iter().skip(k + 2) {
            if b.len() == a.len() && binary(b) {
                let n = a.len();
                if (0..n).all(|t| b[n - 1 - t] <= a[t]) {
                    return true;
                }
            }
        }
    }
    false
}

/// Occurrences `(start, end, i)` of `##aⁱ#` (end inclusive).
fn left_blocks(w: &[u8]) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for s in 0..w.len() {
        if w[s] == b'#' && w.get(s + 1) == Some(&b'#') {
            let i = run(w, s + 2);
            if i > 0 && w.get(s + 2 + i) == Some(&b'#') {
                out.push((s, s + 2 + i, i));
            }
        }
    }
    out
}

/// Occurrences `(start, end, i, j)` of `#aⁱ#aʲ#`.
fn middle_blocks(w: &[u8]) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for s in 0..w.len() {
        if w[s] != b'#' {
            continue;
        }
        let i = run(w, s + 1);
        if i == 0 || w.get(s + 1 + i) != Some(&b'#') {
            continue;
        }
        let j = run(w, s + 2 + i);
        if j > 0 && w.get(s + 2 + i + j) == Some(&b'#') {
            out.push((s, s + 2 + i + j, i, j));
        }
    }
    out
}

/// Occurrences `(start, end, j)` of `#aʲ##`.
fn right_blocks(w: &[u8]) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for s in 0..w.len() {
        if w[s] == b'#' {
            let j = run(w, s + 1);
            if j > 0 && w.get(s + 1 + j) == Some(&b'#') && w.get(s + 2 + j) == Some(&b'#') {
                out.push((s, s + 2 + j, j));
            }
        }
    }
    out
}

fn run(w: &[u8], from: usize) -> usize {
    w.iter().skip(from).take_while(|&&c| c == b'a').count()
}

fn match_blocks(w: &str, ok: impl Fn(usize, usize, usize, usize) -> bool) -> bool {
    let w = w.as_bytes();
    let (left, mid, right) = (left_blocks(w), middle_blocks(w), right_blocks(w));
    mid.iter().any(|&(ms, me, i2, j)| {
        left.iter()
            .filter(|l| l.1 < ms)
            .any(|&(_, _, i)| right.iter().filter(|r| r.0 > me).any(|&(_, _, j2)| ok(i, i2, j, j2)))
    })
}

/// `Σ* ##aⁱ# Σ* #aⁱ#aʲ# Σ* #aʲ## Σ*` with `i, j > 0`.
pub fn match_l1(w: &str) -> bool {
    match_blocks(w, |i, i2, j, j2| i == i2 && j == j2)
}

/// `Σ* ##aⁱ# Σ* #a^i'#aʲ# Σ* #a^j'## Σ*` with `i + j = i' + j'`.
pub fn match_l2(w: &str) -> bool {
    match_blocks(w, |i, i2, j, j2| i + j == i2 + j2)
}
