//! Unbounded natural numbers.
//!
//! Register numbers, immediate operands and the numeric reading of bit
//! strings are all naturals without an upper bound, so they share this type.
//! Limbs are little-endian `u64` words with no trailing zero limbs; zero is
//! the empty limb vector.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Natural {
    limbs: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid decimal natural {0:?}")]
pub struct ParseNaturalError(pub String);

impl Natural {
    pub const fn zero() -> Self {
        Natural { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Natural::from(1u64)
    }

    /// Builds a natural from little-endian limbs, trimming high zero limbs.
    pub fn from_limbs(mut limbs: Vec<u64>) -> Self {
        while limbs.last() == Some(&0) {
            limbs.pop();
        }
        Natural { limbs }
    }

    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self.limbs.len() {
            0 => Some(0),
            1 => Some(self.limbs[0]),
            _ => None,
        }
    }

    pub fn to_usize(&self) -> Option<usize> {
        self.to_u64().and_then(|v| usize::try_from(v).ok())
    }

    /// Number of significant bits; zero has bit length 0.
    pub fn bit_len(&self) -> usize {
        match self.limbs.last() {
            None => 0,
            Some(&top) => (self.limbs.len() - 1) * 64 + (64 - top.leading_zeros() as usize),
        }
    }

    pub fn bit(&self, i: usize) -> bool {
        self.limbs.get(i / 64).is_some_and(|limb| (limb >> (i % 64)) & 1 == 1)
    }

    pub fn is_odd(&self) -> bool {
        self.bit(0)
    }

    pub fn add(&self, other: &Natural) -> Natural {
        let (long, short) = if self.limbs.len() >= other.limbs.len() {
            (&self.limbs, &other.limbs)
        } else {
            (&other.limbs, &self.limbs)
        };
        let mut out = Vec::with_capacity(long.len() + 1);
        let mut carry = false;
        for (i, &a) in long.iter().enumerate() {
            let b = short.get(i).copied().unwrap_or(0);
            let (s1, c1) = a.overflowing_add(b);
            let (s2, c2) = s1.overflowing_add(carry as u64);
            out.push(s2);
            carry = c1 || c2;
        }
        if carry {
            out.push(1);
        }
        Natural::from_limbs(out)
    }

    /// Proper subtraction: `self ∸ other`, zero when `other > self`.
    pub fn monus(&self, other: &Natural) -> Natural {
        if self <= other {
            return Natural::zero();
        }
        let mut out = Vec::with_capacity(self.limbs.len());
        let mut borrow = false;
        for (i, &a) in self.limbs.iter().enumerate() {
            let b = other.limbs.get(i).copied().unwrap_or(0);
            let (d1, b1) = a.overflowing_sub(b);
            let (d2, b2) = d1.overflowing_sub(borrow as u64);
            out.push(d2);
            borrow = b1 || b2;
        }
        debug_assert!(!borrow);
        Natural::from_limbs(out)
    }

    pub fn mul(&self, other: &Natural) -> Natural {
        if self.is_zero() || other.is_zero() {
            return Natural::zero();
        }
        let mut out = vec![0u64; self.limbs.len() + other.limbs.len()];
        for (i, &a) in self.limbs.iter().enumerate() {
            let mut carry: u128 = 0;
            for (j, &b) in other.limbs.iter().enumerate() {
                let cur = out[i + j] as u128 + (a as u128) * (b as u128) + carry;
                out[i + j] = cur as u64;
                carry = cur >> 64;
            }
            let mut k = i + other.limbs.len();
            while carry != 0 {
                let cur = out[k] as u128 + carry;
                out[k] = cur as u64;
                carry = cur >> 64;
                k += 1;
            }
        }
        Natural::from_limbs(out)
    }

    /// Zero-totalized Euclidean division: `(q, r)` with `n ÷ 0 = 0` and
    /// remainder `n` in that case.
    pub fn div_rem(&self, divisor: &Natural) -> (Natural, Natural) {
        if divisor.is_zero() {
            return (Natural::zero(), self.clone());
        }
        if self < divisor {
            return (Natural::zero(), self.clone());
        }
        if let Some(d) = divisor.to_u64() {
            let (q, r) = self.div_rem_small(d);
            return (q, Natural::from(r));
        }
        // Binary long division over the bits of the dividend.
        let bits = self.bit_len();
        let mut quotient = vec![0u64; self.limbs.len()];
        let mut rem = Natural::zero();
        for i in (0..bits).rev() {
            rem = rem.shl1_with(self.bit(i));
            if rem >= *divisor {
                rem = rem.monus(divisor);
                quotient[i / 64] |= 1 << (i % 64);
            }
        }
        (Natural::from_limbs(quotient), rem)
    }

    pub fn div(&self, divisor: &Natural) -> Natural {
        self.div_rem(divisor).0
    }

    fn div_rem_small(&self, d: u64) -> (Natural, u64) {
        debug_assert!(d != 0);
        let mut out = vec![0u64; self.limbs.len()];
        let mut rem: u128 = 0;
        for i in (0..self.limbs.len()).rev() {
            let cur = (rem << 64) | self.limbs[i] as u128;
            out[i] = (cur / d as u128) as u64;
            rem = cur % d as u128;
        }
        (Natural::from_limbs(out), rem as u64)
    }

    fn shl1_with(&self, low: bool) -> Natural {
        let mut out = Vec::with_capacity(self.limbs.len() + 1);
        let mut carry = low as u64;
        for &limb in &self.limbs {
            out.push((limb << 1) | carry);
            carry = limb >> 63;
        }
        out.push(carry);
        Natural::from_limbs(out)
    }
}

impl From<u64> for Natural {
    fn from(v: u64) -> Self {
        Natural::from_limbs(vec![v])
    }
}

impl From<usize> for Natural {
    fn from(v: usize) -> Self {
        Natural::from(v as u64)
    }
}

impl From<u32> for Natural {
    fn from(v: u32) -> Self {
        Natural::from(v as u64)
    }
}

impl Ord for Natural {
    fn cmp(&self, other: &Self) -> Ordering {
        self.limbs.len().cmp(&other.limbs.len()).then_with(|| self.limbs.iter().rev().cmp(other.limbs.iter().rev()))
    }
}

impl PartialOrd for Natural {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        const CHUNK: u64 = 10_000_000_000_000_000_000;
        let mut chunks = Vec::new();
        let mut cur = self.clone();
        while !cur.is_zero() {
            let (q, r) = cur.div_rem_small(CHUNK);
            chunks.push(r);
            cur = q;
        }
        let mut s = chunks.pop().unwrap().to_string();
        for chunk in chunks.iter().rev() {
            s.push_str(&format!("{chunk:019}"));
        }
        f.write_str(&s)
    }
}

impl fmt::Debug for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Natural {
    type Err = ParseNaturalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseNaturalError(s.to_string()));
        }
        let ten = Natural::from(10u64);
        let mut acc = Natural::zero();
        for b in s.bytes() {
            acc = acc.mul(&ten).add(&Natural::from((b - b'0') as u64));
        }
        Ok(acc)
    }
}

impl Serialize for Natural {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.to_u64() {
            Some(v) => serializer.serialize_u64(v),
            None => serializer.serialize_str(&self.to_string()),
        }
    }
}
