//! Exact semirings used for path counts and linear representations.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Commutative semiring with exact arithmetic.
pub trait Semiring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Tag written into linear-representation headers.
    const TAG: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn from_u64(n: u64) -> Self;

    /// Parses one entry of the text format.
    fn parse_entry(s: &str) -> Result<Self>;
}

/// Natural numbers.
pub type Nat = BigUint;

/// Rationals.
pub type Rat = BigRational;

impl Semiring for BigUint {
    const TAG: &'static str = "nat";

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_u64(n: u64) -> Self {
        BigUint::from(n)
    }
    fn parse_entry(s: &str) -> Result<Self> {
        BigUint::from_str(s).map_err(|_| Error::NotNatural(s.to_string()))
    }
}

impl Semiring for BigRational {
    const TAG: &'static str = "rat";

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_u64(n: u64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn parse_entry(s: &str) -> Result<Self> {
        BigRational::from_str(s).map_err(|_| Error::Invalid(format!("bad rational `{s}`")))
    }
}

/// Natural numbers extended with an absorbing infinity, where `0 * inf = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NatInf {
    Fin(BigUint),
    Inf,
}

impl NatInf {
    pub fn is_inf(&self) -> bool {
        matches!(self, NatInf::Inf)
    }

    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            NatInf::Fin(n) => Some(n),
            NatInf::Inf => None,
        }
    }

    /// Replaces infinity by zero.
    pub fn drop_inf(&self) -> BigUint {
        match self {
            NatInf::Fin(n) => n.clone(),
            NatInf::Inf => <BigUint as Zero>::zero(),
        }
    }
}

impl From<BigUint> for NatInf {
    fn from(n: BigUint) -> Self {
        NatInf::Fin(n)
    }
}

impl From<u64> for NatInf {
    fn from(n: u64) -> Self {
        NatInf::Fin(BigUint::from(n))
    }
}

impl fmt::Display for NatInf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NatInf::Fin(n) => write!(f, "{n}"),
            NatInf::Inf => write!(f, "inf"),
        }
    }
}

impl Semiring for NatInf {
    const TAG: &'static str = "natinf";

    fn zero() -> Self {
        NatInf::Fin(<BigUint as Zero>::zero())
    }
    fn one() -> Self {
        NatInf::Fin(<BigUint as One>::one())
    }
    fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (NatInf::Fin(a), NatInf::Fin(b)) => NatInf::Fin(a + b),
            _ => NatInf::Inf,
        }
    }
    fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (NatInf::Fin(a), NatInf::Fin(b)) => NatInf::Fin(a * b),
            (NatInf::Fin(a), NatInf::Inf) | (NatInf::Inf, NatInf::Fin(a)) if Zero::is_zero(a) => {
                NatInf::zero()
            }
            _ => NatInf::Inf,
        }
    }
    fn is_zero(&self) -> bool {
        matches!(self, NatInf::Fin(n) if Zero::is_zero(n))
    }
    fn from_u64(n: u64) -> Self {
        NatInf::Fin(BigUint::from(n))
    }
    fn parse_entry(s: &str) -> Result<Self> {
        if s == "inf" {
            Ok(NatInf::Inf)
        } else {
            BigUint::parse_entry(s).map(NatInf::Fin)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natinf_rules() {
        let inf = NatInf::Inf;
        let zero = NatInf::zero();
        let three = NatInf::from(3);
        assert_eq!(inf.add(&three), NatInf::Inf);
        assert_eq!(three.add(&inf), NatInf::Inf);
        assert_eq!(inf.mul(&three), NatInf::Inf);
        assert_eq!(inf.mul(&zero), zero);
        assert_eq!(zero.mul(&inf), zero);
        assert_eq!(inf.add(&zero), NatInf::Inf);
        assert_eq!(three.mul(&three), NatInf::from(9));
    }

    #[test]
    fn parse_entries() {
        assert_eq!(NatInf::parse_entry("inf").unwrap(), NatInf::Inf);
        assert_eq!(NatInf::parse_entry("12").unwrap(), NatInf::from(12));
        assert!(BigUint::parse_entry("-1").is_err());
        assert_eq!(
            BigRational::parse_entry("-3/6").unwrap(),
            BigRational::new(BigInt::from(-1), BigInt::from(2))
        );
        assert_eq!(BigRational::parse_entry("-3/6").unwrap().to_string(), "-1/2");
    }
}
