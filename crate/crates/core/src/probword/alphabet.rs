use std::fmt;

use crate::error::{Error, Result};

/// Interned letter: an index into its [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(pub u32);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

pub type Word = Vec<Letter>;

/// Ordered, nonempty set of distinct symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(letters: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let letters: Vec<String> = letters.into_iter().map(Into::into).collect();
        if letters.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        for (i, l) in letters.iter().enumerate() {
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(Error::InvalidLetter(l.clone()));
            }
            if letters[..i].contains(l) {
                return Err(Error::DuplicateLetter(l.clone()));
            }
        }
        Ok(Alphabet { letters })
    }

    /// One letter per character of `chars`.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Self::new(chars.chars().map(String::from))
    }

    pub fn size(&self) -> usize {
        self.letters.len()
    }

    pub fn names(&self) -> &[String] {
        &self.letters
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.letters.len() as u32).map(Letter)
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.letters[l.index()]
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.letters
            .iter()
            .position(|x| x == name)
            .map(|i| Letter(i as u32))
            .ok_or_else(|| Error::LetterNotInAlphabet(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.letters.iter().any(|x| x == name)
    }

    pub fn check(&self, l: Letter) -> Result<Letter> {
        if l.index() < self.letters.len() {
            Ok(l)
        } else {
            Err(Error::LetterNotInAlphabet(format!("#{}", l.0)))
        }
    }

    /// True when every letter is a single character, so words can be written
    /// without separators.
    pub fn is_compact(&self) -> bool {
        self.letters.iter().all(|l| l.chars().count() == 1)
    }

    /// Parses a word. Compact alphabets read one letter per non-blank
    /// character; otherwise letters are whitespace-separated.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        if self.is_compact() {
            text.chars().filter(|c| !c.is_whitespace()).map(|c| self.letter(c.encode_utf8(&mut [0; 4]))).collect()
        } else {
            text.split_whitespace().map(|t| self.letter(t)).collect()
        }
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        let sep = if self.is_compact() { "" } else { " " };
        w.iter().map(|&l| self.name(l)).collect::<Vec<_>>().join(sep)
    }

    /// Every word of length `n` in lexicographic letter order.
    pub fn all_words(&self, n: usize) -> AllWords {
        AllWords { sigma: self.size() as u32, current: Some(vec![Letter(0); n]) }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letters.join(" "))
    }
}

/// Odometer over `Σⁿ`.
pub struct AllWords {
    sigma: u32,
    current: Option<Word>,
}

impl Iterator for AllWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let out = self.current.clone()?;
        let mut next = out.clone();
        let mut i = next.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i].0 + 1 < self.sigma {
                next[i].0 += 1;
                for l in &mut next[i + 1..] {
                    *l = Letter(0);
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}
