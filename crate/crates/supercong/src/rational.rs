//! Exact rationals for check parameters (α, β, t).
//!
//! Parameters arrive as strings like `-3`, `1/2`, or `22/7`; denominators
//! must stay coprime to p for the residue lift to exist, which surfaces as
//! `NotInvertible` at lift time rather than parse time.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

use crate::residue::{ArithmeticError, PrimeContext, Residue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// num/den in lowest terms with den > 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rational {
    num: BigInt,
    den: BigInt,
}

impl Rational {
    pub fn new(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "denominator must be nonzero");
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / &g, den / g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Rational { num, den }
    }

    pub fn from_integer(v: i64) -> Self {
        Rational { num: BigInt::from(v), den: BigInt::one() }
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    /// 1 − self, the substitution sending t to its reflection.
    pub fn one_minus(&self) -> Self {
        Rational::new(&self.den - &self.num, self.den.clone())
    }

    pub fn neg(&self) -> Self {
        Rational { num: -&self.num, den: self.den.clone() }
    }

    /// Lift into ℤ/p²ℤ; fails iff p divides the denominator.
    pub fn to_residue(&self, ctx: &PrimeContext) -> Result<Residue, ArithmeticError> {
        ctx.from_rational_big(&self.num, &self.den)
    }
}

impl FromStr for Rational {
    type Err = RationalParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(RationalParseError::Empty);
        }
        let malformed = || RationalParseError::Malformed(s.to_string());
        match s.split_once('/') {
            None => Ok(Rational {
                num: BigInt::from_str(s).map_err(|_| malformed())?,
                den: BigInt::one(),
            }),
            Some((n, d)) => {
                let num = BigInt::from_str(n.trim()).map_err(|_| malformed())?;
                let den = BigInt::from_str(d.trim()).map_err(|_| malformed())?;
                if den.is_zero() {
                    return Err(RationalParseError::ZeroDenominator(s.to_string()));
                }
                Ok(Rational::new(num, den))
            }
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_normalizes() {
        let half: Rational = "1/2".parse().unwrap();
        assert_eq!(half, Rational::new(BigInt::from(1), BigInt::from(2)));
        let neg: Rational = "-3".parse().unwrap();
        assert_eq!(neg, Rational::from_integer(-3));
        let r: Rational = "4/-6".parse().unwrap();
        assert_eq!(r.to_string(), "-2/3");
        assert_eq!("10/5".parse::<Rational>().unwrap().to_string(), "2");
        assert!(matches!("".parse::<Rational>(), Err(RationalParseError::Empty)));
        assert!(matches!("x/2".parse::<Rational>(), Err(RationalParseError::Malformed(_))));
        assert!(matches!("1/0".parse::<Rational>(), Err(RationalParseError::ZeroDenominator(_))));
    }

    #[test]
    fn lifts_to_residues() {
        let c = PrimeContext::new(5).unwrap();
        let half: Rational = "1/2".parse().unwrap();
        assert_eq!(half.to_residue(&c).unwrap().as_u64(), Some(13));
        assert_eq!(half.neg().to_residue(&c).unwrap().as_u64(), Some(12));
        assert_eq!(half.one_minus(), half);
        let bad: Rational = "1/5".parse().unwrap();
        assert!(bad.to_residue(&c).is_err());
        let t: Rational = "2".parse().unwrap();
        assert_eq!(t.one_minus().to_string(), "-1");
    }
}
