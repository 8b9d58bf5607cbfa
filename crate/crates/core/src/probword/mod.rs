//! Alphabets, exact probabilities and probabilistic words.
//!
//! A [`ProbWord`] of length `n` is a tuple of independent per-position
//! distributions; it induces a distribution on `Σⁿ` where a word's
//! probability is the product of its letters' weights. A [`PartialWord`]
//! with wildcards plus a sub-alphabet maps onto the same model: wildcards
//! become uniform over the sub-alphabet and fixed letters become Dirac.

mod alphabet;
mod probability;
pub mod text;

pub use alphabet::{AllWords, Alphabet, Letter, Word};
pub use probability::Probability;

use crate::error::{Error, Result};

/// A probability distribution over the letters of an alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    alphabet: Alphabet,
    weights: Vec<Probability>,
}

impl Distribution {
    /// Fails unless there is one weight per letter and the weights sum to
    /// exactly one.
    pub fn new(alphabet: Alphabet, weights: Vec<Probability>) -> Result<Self> {
        if weights.len() != alphabet.size() {
            return Err(Error::InvalidDistribution(format!(
                "{} weights for {} letters",
                weights.len(),
                alphabet.size()
            )));
        }
        let total: Probability = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!("weights sum to {total}, not 1")));
        }
        Ok(Distribution { alphabet, weights })
    }

    pub fn uniform(alphabet: &Alphabet) -> Self {
        let w = Probability::ratio(1, alphabet.size() as u64);
        Distribution { alphabet: alphabet.clone(), weights: vec![w; alphabet.size()] }
    }

    /// Uniform over `support`, zero elsewhere.
    pub fn uniform_over(alphabet: &Alphabet, support: &[Letter]) -> Result<Self> {
        let mut weights = vec![Probability::zero(); alphabet.size()];
        let w = Probability::ratio(1, support.len() as u64);
        for &l in support {
            weights[alphabet.check(l)?.index()] = w.clone();
        }
        Distribution::new(alphabet.clone(), weights)
    }

    pub fn dirac(alphabet: &Alphabet, letter: Letter) -> Result<Self> {
        alphabet.check(letter)?;
        let mut weights = vec![Probability::zero(); alphabet.size()];
        weights[letter.index()] = Probability::one();
        Ok(Distribution { alphabet: alphabet.clone(), weights })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn weight(&self, l: Letter) -> &Probability {
        &self.weights[l.index()]
    }

    pub fn weights(&self) -> &[Probability] {
        &self.weights
    }

    /// The letter carrying all the mass, if any.
    pub fn dirac_letter(&self) -> Option<Letter> {
        self.weights.iter().position(Probability::is_one).map(|i| Letter(i as u32))
    }

    pub fn is_uniform(&self) -> bool {
        self.weights.iter().all(|w| w == &self.weights[0])
    }
}

/// Sequence of independent letter distributions over one alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbWord {
    alphabet: Alphabet,
    positions: Vec<Distribution>,
}

impl ProbWord {
    pub fn new(alphabet: Alphabet, positions: Vec<Distribution>) -> Result<Self> {
        if positions.iter().any(|d| d.alphabet != alphabet) {
            return Err(Error::AlphabetMismatch);
        }
        Ok(ProbWord { alphabet, positions })
    }

    pub fn empty(alphabet: &Alphabet) -> Self {
        ProbWord { alphabet: alphabet.clone(), positions: Vec::new() }
    }

    /// Assigns probability one to `w`.
    pub fn dirac(w: &[Letter], alphabet: &Alphabet) -> Result<Self> {
        let positions = w.iter().map(|&l| Distribution::dirac(alphabet, l)).collect::<Result<_>>()?;
        Ok(ProbWord { alphabet: alphabet.clone(), positions })
    }

    /// Dirac word of a textual word.
    pub fn dirac_str(w: &str, alphabet: &Alphabet) -> Result<Self> {
        Self::dirac(&alphabet.parse_word(w)?, alphabet)
    }

    pub fn uniform(n: usize, alphabet: &Alphabet) -> Self {
        ProbWord { alphabet: alphabet.clone(), positions: vec![Distribution::uniform(alphabet); n] }
    }

    /// Wildcards become uniform over `sub`, fixed letters become Dirac. The
    /// number of `sub`-completions of `u` in a language `L` equals
    /// `|sub|^(#wildcards) · p(L)` on the result.
    pub fn from_partial_word(u: &PartialWord, sub: &Alphabet) -> Result<Self> {
        let alphabet = &u.alphabet;
        let support = sub
            .names()
            .iter()
            .map(|s| alphabet.letter(s).map_err(|_| Error::SubalphabetNotContained(s.clone())))
            .collect::<Result<Vec<_>>>()?;
        let wildcard = Distribution::uniform_over(alphabet, &support)?;
        let positions = u
            .symbols
            .iter()
            .map(|s| match s {
                Some(l) => Distribution::dirac(alphabet, *l),
                None => Ok(wildcard.clone()),
            })
            .collect::<Result<_>>()?;
        Ok(ProbWord { alphabet: alphabet.clone(), positions })
    }

    pub fn concat(&self, other: &ProbWord) -> Result<Self> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut positions = self.positions.clone();
        positions.extend(other.positions.iter().cloned());
        Ok(ProbWord { alphabet: self.alphabet.clone(), positions })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[Distribution] {
        &self.positions
    }

    /// Weight of `letter` at 1-based `position`.
    pub fn weight(&self, position: usize, letter: Letter) -> &Probability {
        self.positions[position - 1].weight(letter)
    }

    /// `∏ₖ pₖ(wₖ)`, or zero on a length mismatch.
    pub fn prob_of_word(&self, w: &[Letter]) -> Result<Probability> {
        for &l in w {
            self.alphabet.check(l)?;
        }
        if w.len() != self.len() {
            return Ok(Probability::zero());
        }
        Ok(self.positions.iter().zip(w).map(|(d, &l)| d.weight(l)).product())
    }

    pub fn prob_of_str(&self, w: &str) -> Result<Probability> {
        self.prob_of_word(&self.alphabet.parse_word(w)?)
    }
}

/// A word over `Σ ∪ {?}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialWord {
    alphabet: Alphabet,
    symbols: Vec<Option<Letter>>,
}

impl PartialWord {
    pub fn new(alphabet: Alphabet, symbols: Vec<Option<Letter>>) -> Result<Self> {
        for l in symbols.iter().flatten() {
            alphabet.check(*l)?;
        }
        Ok(PartialWord { alphabet, symbols })
    }

    /// Parses a word where `?` is the wildcard. The alphabet must not
    /// itself contain `?`.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let tokens: Vec<String> = if alphabet.is_compact() {
            text.chars().filter(|c| !c.is_whitespace()).map(String::from).collect()
        } else {
            text.split_whitespace().map(String::from).collect()
        };
        let symbols = tokens
            .iter()
            .map(|t| if t == "?" { Ok(None) } else { alphabet.letter(t).map(Some) })
            .collect::<Result<_>>()?;
        Ok(PartialWord { alphabet: alphabet.clone(), symbols })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn symbols(&self) -> &[Option<Letter>] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn wildcard_count(&self) -> usize {
        self.symbols.iter().filter(|s| s.is_none()).count()
    }

    /// Every completion whose wildcards are drawn from `sub`.
    pub fn completions(&self, sub: &[Letter]) -> Vec<Word> {
        let mut out = vec![Vec::with_capacity(self.len())];
        for s in &self.symbols {
            out = match s {
                Some(l) => out
                    .into_iter()
                    .map(|mut w| {
                        w.push(*l);
                        w
                    })
                    .collect(),
                None => out
                    .into_iter()
                    .flat_map(|w| {
                        sub.iter().map(move |&l| {
                            let mut w = w.clone();
                            w.push(l);
                            w
                        })
                    })
                    .collect(),
            };
        }
        out
    }
}

impl std::fmt::Display for PartialWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sep = if self.alphabet.is_compact() { "" } else { " " };
        let parts: Vec<&str> = self
            .symbols
            .iter()
            .map(|s| match s {
                Some(l) => self.alphabet.name(*l),
                None => "?",
            })
            .collect();
        write!(f, "{}", parts.join(sep))
    }
}
