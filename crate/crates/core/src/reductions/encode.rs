use num_bigint::BigUint;

use super::Pp2dnf;
use crate::error::{Error, Result};
use crate::probword::{Alphabet, PartialWord, ProbWord, Probability};

/// A partial word plus the sub-alphabet its wildcards range over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutput {
    pub word: PartialWord,
    pub sub: Alphabet,
}

impl ReductionOutput {
    fn build(alphabet: &str, sub: &str, text: &str) -> Self {
        let alphabet = Alphabet::from_chars(alphabet).expect("valid alphabet");
        let sub = Alphabet::from_chars(sub).expect("valid alphabet");
        let word = PartialWord::parse(&alphabet, text).expect("encoder emits alphabet letters");
        ReductionOutput { word, sub }
    }

    /// The probabilistic word with wildcards uniform over `sub`.
    pub fn probword(&self) -> ProbWord {
        ProbWord::from_partial_word(&self.word, &self.sub).expect("sub is contained in the alphabet")
    }

    /// `|sub|^(#wildcards)`: converts a membership probability on
    /// [`Self::probword`] into a completion count.
    pub fn normalization(&self) -> BigUint {
        BigUint::from(self.sub.size()).pow(self.word.wildcard_count() as u32)
    }

    /// Completion count from a probability; fails if the product is not an
    /// integer.
    pub fn count_from_probability(&self, p: &Probability) -> Result<BigUint> {
        let scaled = p.clone() * Probability::from_integer(num_bigint::BigInt::from(self.normalization()));
        scaled
            .to_integer()
            .ok_or_else(|| Error::ParameterOutOfRange(format!("{p} is not a multiple of 1/{}", self.normalization())))
    }

    /// Number of completions accepted by `matcher`, by enumeration.
    pub fn count_completions(&self, matcher: impl Fn(&str) -> bool) -> Result<BigUint> {
        let wild = self.word.wildcard_count();
        if wild > 24 {
            return Err(Error::TooManyVariables(wild));
        }
        let a = self.word.alphabet();
        let sub: Vec<_> = self.sub.names().iter().map(|s| a.letter(s)).collect::<Result<_>>()?;
        let count = self.word.completions(&sub).iter().filter(|w| matcher(&a.format_word(w))).count();
        Ok(BigUint::from(count))
    }

    /// The completions as strings.
    pub fn completion_strings(&self) -> Result<Vec<String>> {
        let a = self.word.alphabet();
        let sub: Vec<_> = self.sub.names().iter().map(|s| a.letter(s)).collect::<Result<_>>()?;
        Ok(self.word.completions(&sub).iter().map(|w| a.format_word(w)).collect())
    }
}

/// Clause `(i, j)` as a 0/1 word over the `n_x + n_y` variables, x first.
fn clause_bits(f: &Pp2dnf, (i, j): (usize, usize)) -> Vec<u8> {
    let mut v = vec![b'0'; f.variables()];
    v[i - 1] = b'1';
    v[f.n_x() + j - 1] = b'1';
    v
}

fn reversed(v: &[u8]) -> String {
    v.iter().rev().map(|&b| b as char).collect()
}

/// `u # v₁ᴿ # ⋯ # v_kᴿ #` with `u` all wildcards, over `{0, 1, #}`.
pub fn encode_l0(f: &Pp2dnf) -> ReductionOutput {
    let mut text = "?".repeat(f.variables());
    text.push('#');
    for &c in f.clauses() {
        text += &reversed(&clause_bits(f, c));
        text.push('#');
    }
    ReductionOutput::build("01#", "01", &text)
}

/// `# 0u1 # # 1v₁ᴿ0 # ⋯ 1v_kᴿ0 #`: the guard bits stop two clause blocks
/// from matching each other.
pub fn encode_l0prime(f: &Pp2dnf) -> ReductionOutput {
    let mut text = format!("#0{}1##", "?".repeat(f.variables()));
    for &c in f.clauses() {
        text += &format!("1{}0#", reversed(&clause_bits(f, c)));
    }
    ReductionOutput::build("01#", "01", &text)
}

/// Unary blocks over `{a, $, #}` with `N = n_x + 1`: `$#?aⁱ#$` per x
/// variable, `$#aᶜ#a^(Nd)#$` per clause `(c, d)`, `$#a^(Nj)?#$` per y
/// variable. A wildcard set to `#` makes its variable true.
pub fn encode_counter(f: &Pp2dnf) -> ReductionOutput {
    let big_n = f.n_x() + 1;
    let a = |k: usize| "a".repeat(k);
    let mut text = String::new();
    for i in 1..=f.n_x() {
        text += &format!("$#?{}#$", a(i));
    }
    for &(c, d) in f.clauses() {
        text += &format!("$#{}#{}#$", a(c), a(big_n * d));
    }
    for j in 1..=f.n_y() {
        text += &format!("$#{}?#$", a(big_n * j));
    }
    ReductionOutput::build("a$#", "#$", &text)
}
