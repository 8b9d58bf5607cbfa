//! Line-oriented text formats for probabilistic and partial words.
//!
//! Probabilistic word:
//!
//! ```text
//! alphabet: a b c
//! dirac a
//! uniform
//! dist a=1/2 b=1/4 c=1/4
//! ```
//!
//! Letters missing from a `dist` line get weight zero. Partial word: an
//! optional `alphabet:` header, an optional `sub:` header, an optional
//! `wildcards:` count (checked), and one line holding the word with `?` as
//! the wildcard. Blank lines and `;` comments are ignored in both formats.

use super::{Alphabet, Distribution, PartialWord, ProbWord, Probability};
use crate::error::{Error, Result};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split(';').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, msg: msg.into() }
}

pub fn parse_probword(text: &str) -> Result<ProbWord> {
    let mut alphabet: Option<Alphabet> = None;
    let mut positions = Vec::new();
    for (line, l) in content_lines(text) {
        if let Some(rest) = l.strip_prefix("alphabet:") {
            if alphabet.is_some() {
                return Err(syntax(line, "duplicate alphabet header"));
            }
            alphabet = Some(Alphabet::new(rest.split_whitespace()).map_err(|e| syntax(line, e.to_string()))?);
            continue;
        }
        let a = alphabet.as_ref().ok_or_else(|| syntax(line, "missing `alphabet:` header"))?;
        let mut parts = l.split_whitespace();
        let d = match parts.next() {
            Some("uniform") => Distribution::uniform(a),
            Some("dirac") => {
                let name = parts.next().ok_or_else(|| syntax(line, "`dirac` needs a letter"))?;
                Distribution::dirac(a, a.letter(name).map_err(|e| syntax(line, e.to_string()))?)?
            }
            Some("dist") => {
                let mut weights = vec![Probability::zero(); a.size()];
                for item in parts.by_ref() {
                    let (name, w) = item
                        .split_once('=')
                        .ok_or_else(|| syntax(line, format!("expected letter=weight, got `{item}`")))?;
                    let l = a.letter(name).map_err(|e| syntax(line, e.to_string()))?;
                    weights[l.index()] = w.parse().map_err(|e: Error| syntax(line, e.to_string()))?;
                }
                Distribution::new(a.clone(), weights).map_err(|e| syntax(line, e.to_string()))?
            }
            Some(other) => return Err(syntax(line, format!("unknown position kind `{other}`"))),
            None => unreachable!(),
        };
        if let Some(extra) = parts.next() {
            return Err(syntax(line, format!("unexpected `{extra}`")));
        }
        positions.push(d);
    }
    let alphabet = alphabet.ok_or_else(|| syntax(0, "missing `alphabet:` header"))?;
    ProbWord::new(alphabet, positions)
}

pub fn write_probword(p: &ProbWord) -> String {
    let a = p.alphabet();
    let mut out = format!("alphabet: {a}\n");
    for d in p.positions() {
        if let Some(l) = d.dirac_letter() {
            out += &format!("dirac {}\n", a.name(l));
        } else if d.is_uniform() {
            out += "uniform\n";
        } else {
            let items: Vec<String> = a
                .letters()
                .filter(|&l| !d.weight(l).is_zero())
                .map(|l| format!("{}={}", a.name(l), d.weight(l)))
                .collect();
            out += &format!("dist {}\n", items.join(" "));
        }
    }
    out
}

/// A parsed partial word together with its completion sub-alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialWordFile {
    pub word: PartialWord,
    pub sub: Alphabet,
}

pub fn parse_partial_word(text: &str) -> Result<PartialWordFile> {
    let mut alphabet: Option<Alphabet> = None;
    let mut sub: Option<Vec<String>> = None;
    let mut wildcards: Option<(usize, usize)> = None;
    let mut body: Option<(usize, String)> = None;
    for (line, l) in content_lines(text) {
        if let Some(rest) = l.strip_prefix("alphabet:") {
            alphabet = Some(Alphabet::new(rest.split_whitespace()).map_err(|e| syntax(line, e.to_string()))?);
        } else if let Some(rest) = l.strip_prefix("sub:") {
            let letters: Vec<String> = rest.split_whitespace().map(String::from).collect();
            if letters.is_empty() {
                return Err(Error::EmptySubalphabet);
            }
            sub = Some(letters);
        } else if let Some(rest) = l.strip_prefix("wildcards:") {
            let k = rest.trim().parse().map_err(|_| syntax(line, "bad wildcard count"))?;
            wildcards = Some((line, k));
        } else if body.is_some() {
            return Err(syntax(line, "more than one word line"));
        } else {
            body = Some((line, l.to_string()));
        }
    }
    let (line, body) = body.unwrap_or((0, String::new()));
    let alphabet = match alphabet {
        Some(a) => a,
        None => {
            // infer: letters of the word plus the sub-alphabet, in first-seen order
            let mut names: Vec<String> = Vec::new();
            let seen = body.chars().filter(|c| !c.is_whitespace() && *c != '?').map(String::from);
            for n in seen.chain(sub.iter().flatten().cloned()) {
                if !names.contains(&n) {
                    names.push(n);
                }
            }
            Alphabet::new(names).map_err(|e| syntax(line, e.to_string()))?
        }
    };
    let word = PartialWord::parse(&alphabet, &body).map_err(|e| syntax(line, e.to_string()))?;
    let sub = match sub {
        Some(names) => {
            for n in &names {
                if !alphabet.contains(n) {
                    return Err(Error::SubalphabetNotContained(n.clone()));
                }
            }
            Alphabet::new(names)?
        }
        None => alphabet.clone(),
    };
    if let Some((line, k)) = wildcards {
        if k != word.wildcard_count() {
            return Err(syntax(line, format!("header says {k} wildcards, word has {}", word.wildcard_count())));
        }
    }
    Ok(PartialWordFile { word, sub })
}

pub fn write_partial_word(w: &PartialWord, sub: &Alphabet) -> String {
    format!("alphabet: {}\nsub: {}\nwildcards: {}\n{}\n", w.alphabet(), sub, w.wildcard_count(), w)
}
