//! Slice compilers: each produces a circuit whose output captures `L ∩ Σⁿ`
//! for some language `L`, deterministic and decomposable by construction.

mod bounded;
mod l3;
mod pal2;
mod powers;
mod ucfg;

pub use bounded::{enumerate_bounded_slice, slice_to_ucfg, wordlist_to_circuit};
pub use l3::{compile_l3, l3_alphabet};
pub use pal2::{compile_mndj, compile_pal2, compile_pal2_parts};
pub use powers::{compile_mk, compile_order, compile_orders, compile_primitive};
pub use ucfg::compile_ucfg;

use std::fmt;
use std::str::FromStr;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::probword::Alphabet;

/// Circuit with domain `{1..n}` capturing nothing.
pub fn empty_slice_circuit(n: usize, alphabet: &Alphabet) -> Circuit {
    let mut c = Circuit::new(alphabet.clone());
    let g = c.empty_slice(n).expect("positions are in range");
    c.set_output(g).expect("gate exists");
    c
}

/// Circuit with domain `{1..n}` capturing every word of length `n`.
pub fn full_slice_circuit(n: usize, alphabet: &Alphabet) -> Circuit {
    let mut c = Circuit::new(alphabet.clone());
    let g = c.full_slice(n).expect("positions are in range");
    c.set_output(g).expect("gate exists");
    c
}

/// Positive divisors of `n`, increasing.
pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Built-in languages with dedicated compilers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// `{ vᵏ : v ∈ Σ* }`
    Mk(usize),
    /// Words whose primitive root is repeated exactly `k` times.
    Order(usize),
    Primitive,
    /// Concatenations of two palindromes.
    Pal2,
    /// Words of length `2k` with `a` at positions `i` and `i + k` for some `i`.
    L3,
}

impl Builtin {
    pub fn compile(self, n: usize, alphabet: &Alphabet) -> Result<Circuit> {
        match self {
            Builtin::Mk(k) => compile_mk(n, k, alphabet),
            Builtin::Order(k) => compile_order(n, k, alphabet),
            Builtin::Primitive => compile_primitive(n, alphabet),
            Builtin::Pal2 => compile_pal2(n, alphabet),
            Builtin::L3 => {
                if alphabet != &l3_alphabet() {
                    return Err(Error::ParameterOutOfRange("l3 is defined over the alphabet {a, b}".into()));
                }
                Ok(compile_l3(n))
            }
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Mk(k) => write!(f, "mk:{k}"),
            Builtin::Order(k) => write!(f, "order:{k}"),
            Builtin::Primitive => write!(f, "primitive"),
            Builtin::Pal2 => write!(f, "pal2"),
            Builtin::L3 => write!(f, "l3"),
        }
    }
}

/// Accepts `primitive`, `pal2`, `l3`, `mk:K` and `order:K`.
impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParameterOutOfRange(format!("unknown builtin `{s}`"));
        let param = |p: &str| p.parse::<usize>().map_err(|_| bad());
        Ok(match s.split_once(':') {
            None => match s {
                "primitive" => Builtin::Primitive,
                "pal2" => Builtin::Pal2,
                "l3" => Builtin::L3,
                _ => return Err(bad()),
            },
            Some(("mk", k)) => Builtin::Mk(param(k)?),
            Some(("order", k)) => Builtin::Order(param(k)?),
            Some(_) => return Err(bad()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probword::{ProbWord, Probability};

    #[test]
    fn builtin_names_round_trip() {
        for b in [Builtin::Mk(3), Builtin::Order(2), Builtin::Primitive, Builtin::Pal2, Builtin::L3] {
            assert_eq!(b.to_string().parse::<Builtin>().unwrap(), b);
        }
        assert!("mk:x".parse::<Builtin>().is_err());
        assert!("square".parse::<Builtin>().is_err());
    }

    #[test]
    fn slices() {
        let a = Alphabet::from_chars("abc").unwrap();
        let p = ProbWord::uniform(3, &a);
        assert!(empty_slice_circuit(3, &a).evaluate(&p).unwrap().is_zero());
        assert!(full_slice_circuit(3, &a).evaluate(&p).unwrap().is_one());
        let e = ProbWord::empty(&a);
        assert_eq!(full_slice_circuit(0, &a).evaluate(&e).unwrap(), Probability::one());
        assert_eq!(full_slice_circuit(0, &a).accepted_words().unwrap().len(), 1);
    }
}
