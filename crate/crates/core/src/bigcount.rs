//! Exact, arbitrary-precision code counts.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::limits::MAX_COUNT_BITS;

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn one() -> Self {
        BigCount(BigUint::one())
    }

    pub fn inner(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn bits(&self) -> u64 {
        self.0.bits()
    }

    /// `self^e`, refusing results longer than `MAX_COUNT_BITS`.
    pub fn pow(&self, e: &BigUint) -> Result<BigCount> {
        if self.0.is_zero() || self.0.is_one() {
            return Ok(if e.is_zero() { BigCount::one() } else { self.clone() });
        }
        let est = BigUint::from(self.bits()) * e;
        let e64 = e
            .to_u64()
            .filter(|_| est <= BigUint::from(MAX_COUNT_BITS))
            .ok_or_else(|| Error::bound("count bit length", est.to_string(), MAX_COUNT_BITS))?;
        let mut acc = BigUint::one();
        let mut base = self.0.clone();
        let mut e = e64;
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(BigCount(acc))
    }

    /// `base^e` for a small base, bounded like `pow`.
    pub fn power(base: u64, e: u64) -> Result<BigCount> {
        BigCount::from(base).pow(&BigUint::from(e))
    }

    /// `1 + q + ... + q^m`.
    pub fn geometric(q: &BigCount, m: u64) -> Result<BigCount> {
        let mut acc = BigCount::zero();
        let mut term = BigCount::one();
        for i in 0..=m {
            acc = &acc + &term;
            if i < m {
                term = &term * q;
                if term.bits() > MAX_COUNT_BITS {
                    return Err(Error::bound("count bit length", term.bits(), MAX_COUNT_BITS));
                }
            }
        }
        Ok(acc)
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl Add for &BigCount {
    type Output = BigCount;
    fn add(self, rhs: &BigCount) -> BigCount {
        BigCount(&self.0 + &rhs.0)
    }
}

impl Sub for &BigCount {
    type Output = BigCount;
    fn sub(self, rhs: &BigCount) -> BigCount {
        BigCount(&self.0 - &rhs.0)
    }
}

impl Mul for &BigCount {
    type Output = BigCount;
    fn mul(self, rhs: &BigCount) -> BigCount {
        BigCount(&self.0 * &rhs.0)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Counts always serialize as decimal strings.
impl Serialize for BigCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_sums() {
        assert_eq!(BigCount::geometric(&BigCount::from(2), 2).unwrap(), BigCount::from(7));
        assert_eq!(BigCount::geometric(&BigCount::from(8), 0).unwrap(), BigCount::one());
    }

    #[test]
    fn powers_and_bounds() {
        assert_eq!(BigCount::power(3, 4).unwrap(), BigCount::from(81));
        assert_eq!(BigCount::power(1, 1 << 40).unwrap(), BigCount::one());
        assert!(BigCount::power(2, 1 << 40).unwrap_err().is_size_bound());
        let big = BigCount::power(2, 200).unwrap();
        assert_eq!(big.bits(), 201);
        assert_eq!(serde_json::to_string(&BigCount::from(23)).unwrap(), "\"23\"");
    }
}
