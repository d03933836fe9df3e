use crate::{Error, Result};
use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::str::FromStr;

/// An exact rational number, always in lowest terms with a positive
/// denominator. Displays as `p/q`, including when `q = 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Self> {
        let den = denominator.into();
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(ExactRational(BigRational::new(numerator.into(), den)))
    }

    /// `num / den` for counts; `den` must be positive.
    pub fn from_counts(num: &BigUint, den: &BigUint) -> Result<Self> {
        Self::new(
            BigInt::from_biguint(Sign::Plus, num.clone()),
            BigInt::from_biguint(Sign::Plus, den.clone()),
        )
    }

    pub fn one() -> Self {
        ExactRational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for ExactRational {
    fn from(r: BigRational) -> Self {
        ExactRational(r)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    /// Accepts `p/q` or a bare integer `p`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::parse(0, format!("malformed rational `{s}`"));
        let (num, den) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(ExactRational(BigRational::new(num, den)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_display() {
        let r = ExactRational::new(8, 32).unwrap();
        assert_eq!(r.to_string(), "1/4");
        assert_eq!(ExactRational::new(3, -6).unwrap().to_string(), "-1/2");
        assert_eq!(ExactRational::one().to_string(), "1/1");
        assert!(ExactRational::new(1, 0).is_err());
    }

    #[test]
    fn parse() {
        assert_eq!("12/24".parse::<ExactRational>().unwrap().to_string(), "1/2");
        assert_eq!("3".parse::<ExactRational>().unwrap().to_string(), "3/1");
        assert!("1/0".parse::<ExactRational>().is_err());
        assert!("a/b".parse::<ExactRational>().is_err());
    }
}
