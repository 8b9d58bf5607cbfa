use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

/// Exact nonnegative rational in lowest terms.
///
/// Values are not clamped to `[0, 1]`: weighted chart cells and intermediate
/// sums may exceed one, and callers that need a proper probability check
/// [`Probability::exceeds_one`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Probability(BigRational);

impl Probability {
    pub fn zero() -> Self {
        Probability(BigRational::zero())
    }

    pub fn one() -> Self {
        Probability(BigRational::one())
    }

    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let (num, den) = (num.into(), den.into());
        if den.is_zero() {
            return Err(Error::InvalidDistribution("zero denominator".into()));
        }
        let r = BigRational::new(num, den);
        if r.is_negative() {
            return Err(Error::InvalidDistribution(format!("negative weight {r}")));
        }
        Ok(Probability(r))
    }

    pub fn ratio(num: u64, den: u64) -> Self {
        Self::new(num, den).expect("nonzero denominator")
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::new(n, 1).expect("nonnegative integer")
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn exceeds_one(&self) -> bool {
        self.0 > BigRational::one()
    }

    /// `1 − self`; `self` must be at most one.
    pub fn complement(&self) -> Self {
        debug_assert!(!self.exceeds_one(), "complement of {self}");
        Probability(BigRational::one() - &self.0)
    }

    /// `self · kⁿ`, typically used to turn a uniform-word probability back
    /// into a count.
    pub fn scale_pow(&self, k: usize, n: usize) -> Self {
        let f = BigInt::from(k).pow(n as u32);
        Probability(&self.0 * BigRational::from_integer(f))
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<BigUint> {
        if self.0.is_integer() {
            self.0.numer().to_biguint()
        } else {
            None
        }
    }

    /// Decimal rendering rounded to `sig` significant digits (half up).
    pub fn to_decimal(&self, sig: usize) -> String {
        let sig = sig.max(1);
        if self.is_zero() {
            return "0".into();
        }
        let num = self.0.numer().to_biguint().expect("nonnegative");
        let den = self.0.denom().to_biguint().expect("positive");
        let ten = BigUint::from(10u32);
        // exponent e with 10^e ≤ v < 10^(e+1)
        let mut e: i64 = 0;
        if num >= den {
            let mut p = BigUint::one();
            while num >= (&den * &p * &ten) {
                p *= &ten;
                e += 1;
            }
        } else {
            let mut p = BigUint::one();
            while &num * &p < den {
                p *= &ten;
                e -= 1;
            }
        }
        // digits = round(v · 10^(sig−1−e))
        let shift = sig as i64 - 1 - e;
        let (n2, d2) = if shift >= 0 {
            (num * ten.clone().pow(shift as u32), den)
        } else {
            (num, den * ten.clone().pow((-shift) as u32))
        };
        let (q, r) = n2.div_rem(&d2);
        let mut digits = if r * 2u32 >= d2 { q + 1u32 } else { q };
        if digits.to_string().len() > sig {
            digits /= &ten;
            e += 1;
        }
        let s = digits.to_string();
        if (-7..12).contains(&e) {
            if e >= 0 {
                let int_len = (e + 1) as usize;
                if s.len() <= int_len {
                    format!("{}{}", s, "0".repeat(int_len - s.len()))
                } else {
                    format!("{}.{}", &s[..int_len], &s[int_len..])
                }
            } else {
                format!("0.{}{}", "0".repeat((-e - 1) as usize), s)
            }
        } else if s.len() == 1 {
            format!("{s}e{e}")
        } else {
            format!("{}.{}e{}", &s[..1], &s[1..], e)
        }
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Probability {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidDistribution(format!("cannot parse `{s}` as a rational"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Probability::new(n, d)
            }
            None => {
                let n: BigInt = s.trim().parse().map_err(|_| bad())?;
                Probability::new(n, 1)
            }
        }
    }
}

impl Add for Probability {
    type Output = Probability;
    fn add(self, rhs: Probability) -> Probability {
        Probability(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Probability> for &'a Probability {
    type Output = Probability;
    fn add(self, rhs: &Probability) -> Probability {
        Probability(&self.0 + &rhs.0)
    }
}

impl AddAssign<&Probability> for Probability {
    fn add_assign(&mut self, rhs: &Probability) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Probability {
    fn add_assign(&mut self, rhs: Probability) {
        self.0 += rhs.0;
    }
}

impl Mul for Probability {
    type Output = Probability;
    fn mul(self, rhs: Probability) -> Probability {
        Probability(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a Probability> for &'a Probability {
    type Output = Probability;
    fn mul(self, rhs: &Probability) -> Probability {
        Probability(&self.0 * &rhs.0)
    }
}

impl MulAssign<&Probability> for Probability {
    fn mul_assign(&mut self, rhs: &Probability) {
        self.0 *= &rhs.0;
    }
}

/// Saturating at zero is never needed by the engines: subtraction only
/// appears as `1 − π` and in the subset-complement identity.
impl<'a> Sub<&'a Probability> for &'a Probability {
    type Output = Probability;
    fn sub(self, rhs: &Probability) -> Probability {
        let r = &self.0 - &rhs.0;
        assert!(!r.is_negative(), "negative probability {r}");
        Probability(r)
    }
}

impl Sum for Probability {
    fn sum<I: Iterator<Item = Probability>>(iter: I) -> Self {
        iter.fold(Probability::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Probability> for Probability {
    fn sum<I: Iterator<Item = &'a Probability>>(iter: I) -> Self {
        iter.fold(Probability::zero(), |mut a, b| {
            a += b;
            a
        })
    }
}

impl Product for Probability {
    fn product<I: Iterator<Item = Probability>>(iter: I) -> Self {
        iter.fold(Probability::one(), |a, b| a * b)
    }
}

impl<'a> Product<&'a Probability> for Probability {
    fn product<I: Iterator<Item = &'a Probability>>(iter: I) -> Self {
        iter.fold(Probability::one(), |mut a, b| {
            a *= b;
            a
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lowest_terms_and_display() {
        let p = Probability::new(6, 8).unwrap();
        assert_eq!(p.to_string(), "3/4");
        assert_eq!(Probability::one().to_string(), "1");
        assert_eq!("2/4".parse::<Probability>().unwrap(), Probability::ratio(1, 2));
        assert!(Probability::new(-1, 2).is_err());
        assert!(Probability::new(1, 0).is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Probability::ratio(1, 2).to_decimal(12), "0.500000000000");
        assert_eq!(Probability::ratio(1, 3).to_decimal(4), "0.3333");
        assert_eq!(Probability::ratio(2, 3).to_decimal(4), "0.6667");
        assert_eq!(Probability::one().to_decimal(3), "1.00");
        assert_eq!(Probability::ratio(27, 32).to_decimal(12), "0.843750000000");
        assert_eq!(Probability::ratio(1, 1_000_000_000).to_decimal(3), "1.00e-9");
        assert_eq!(Probability::ratio(999, 1000).to_decimal(2), "1.0");
        assert_eq!(Probability::zero().to_decimal(5), "0");
    }

    proptest! {
        #[test]
        fn addition_is_exactly_associative(a in 0u64..1000, b in 1u64..1000, c in 0u64..1000,
                                           d in 1u64..1000, e in 0u64..1000, f in 1u64..1000) {
            let (x, y, z) = (Probability::ratio(a, b), Probability::ratio(c, d), Probability::ratio(e, f));
            let l = (&(&x + &y)) + &z;
            let r = &x + &(&y + &z);
            prop_assert_eq!(l.numer(), r.numer());
            prop_assert_eq!(l.denom(), r.denom());
        }
    }
}
