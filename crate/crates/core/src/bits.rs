//! Bit strings read least-significant-bit first, and the operations the
//! RAM instructions perform on them.
//!
//! A bit string may be empty and may carry leading (high-index) zeros; both
//! are observable. `"0"` is the number zero, ε is an unused register.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::natural::Natural;

/// Finite sequence over {0,1}; index 0 is the least significant bit.
///
/// Bits are packed into `u64` words. Bits at positions `>= len` are always
/// zero so that derived equality and hashing are structural.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid bit string {0:?}: expected only '0' and '1'")]
pub struct ParseBitsError(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArithOp {
    Add,
    Monus,
    Mul,
    Div,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BitwiseOp {
    And,
    Or,
    Xor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShiftOp {
    Shl,
    Shr,
    Rol,
    Ror,
}

impl BitString {
    /// The empty bit string ε.
    pub const fn empty() -> Self {
        BitString { words: Vec::new(), len: 0 }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut out = BitString::empty();
        for b in bits {
            out.push(b);
        }
        out
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        (i < self.len).then(|| (self.words[i / 64] >> (i % 64)) & 1 == 1)
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(64) {
            self.words.push(0);
        }
        if bit {
            self.words[self.len / 64] |= 1 << (self.len % 64);
        }
        self.len += 1;
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = bool> + ExactSizeIterator + '_ {
        (0..self.len).map(move |i| (self.words[i / 64] >> (i % 64)) & 1 == 1)
    }

    /// Juxtaposition `self · other`.
    pub fn concat(&self, other: &BitString) -> BitString {
        let mut out = self.clone();
        for b in other.iter() {
            out.push(b);
        }
        out
    }

    /// The string with its high-index zeros removed.
    pub fn strip_leading_zeros(&self) -> BitString {
        let keep = self.iter().rposition(|b| b).map_or(0, |i| i + 1);
        self.truncated(keep)
    }

    fn truncated(&self, len: usize) -> BitString {
        let mut words = self.words[..len.div_ceil(64)].to_vec();
        Self::mask_tail(&mut words, len);
        BitString { words, len }
    }

    fn mask_tail(words: &mut [u64], len: usize) {
        if !len.is_multiple_of(64) {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << (len % 64)) - 1;
            }
        }
    }

    fn from_words(mut words: Vec<u64>, len: usize) -> BitString {
        words.resize(len.div_ceil(64), 0);
        Self::mask_tail(&mut words, len);
        BitString { words, len }
    }

    /// Every bit moved one position up, `fill` entering at index 0; the
    /// length grows by one.
    fn shifted_up(&self, fill: bool) -> BitString {
        let len = self.len + 1;
        let mut words = Vec::with_capacity(len.div_ceil(64));
        let mut carry = fill as u64;
        for &w in &self.words {
            words.push((w << 1) | carry);
            carry = w >> 63;
        }
        words.push(carry);
        BitString::from_words(words, len)
    }

    /// Drops the bit at index 0; the length shrinks by one.
    fn shifted_down(&self) -> BitString {
        if self.len == 0 {
            return BitString::empty();
        }
        let mut words = Vec::with_capacity(self.words.len());
        for (i, &w) in self.words.iter().enumerate() {
            let next = self.words.get(i + 1).copied().unwrap_or(0);
            words.push((w >> 1) | (next << 63));
        }
        BitString::from_words(words, self.len - 1)
    }
}

/// `ntob(0) = "0"`, `ntob(1) = "1"`, `ntob(n) = (n mod 2) · ntob(n ÷ 2)`.
/// Never produces ε and never produces leading zeros.
pub fn ntob(n: &Natural) -> BitString {
    let len = n.bit_len().max(1);
    BitString::from_words(n.limbs().to_vec(), len)
}

/// `bton(ε) = 0`, `bton(b · w) = 2 · bton(w) + b`.
pub fn bton(w: &BitString) -> Natural {
    Natural::from_limbs(w.words.clone())
}

pub fn ntob_u64(n: u64) -> BitString {
    ntob(&Natural::from(n))
}

/// Length of `ntob(n)`; register numbers are measured this way.
pub fn natural_len(n: &Natural) -> usize {
    n.bit_len().max(1)
}

pub fn arith(op: ArithOp, w1: &BitString, w2: &BitString) -> BitString {
    let (a, b) = (bton(w1), bton(w2));
    let r = match op {
        ArithOp::Add => a.add(&b),
        ArithOp::Monus => a.monus(&b),
        ArithOp::Mul => a.mul(&b),
        ArithOp::Div => a.div(&b),
    };
    ntob(&r)
}

/// Pointwise logic with the shorter operand padded by zeros. The result has
/// the length of the longer operand and may carry leading zeros.
pub fn bitwise(op: BitwiseOp, w1: &BitString, w2: &BitString) -> BitString {
    let len = w1.len.max(w2.len);
    let nwords = len.div_ceil(64);
    let words = (0..nwords)
        .map(|i| {
            let a = w1.words.get(i).copied().unwrap_or(0);
            let b = w2.words.get(i).copied().unwrap_or(0);
            match op {
                BitwiseOp::And => a & b,
                BitwiseOp::Or => a | b,
                BitwiseOp::Xor => a ^ b,
            }
        })
        .collect();
    BitString::from_words(words, len)
}

/// Length-preserving complement; `¬ε = ε`.
pub fn bnot(w: &BitString) -> BitString {
    BitString::from_words(w.words.iter().map(|x| !x).collect(), w.len)
}

pub fn shift(op: ShiftOp, w: &BitString) -> BitString {
    if w.is_empty() {
        return BitString::empty();
    }
    match op {
        // shl (b·w) = 0·b·w
        ShiftOp::Shl => w.shifted_up(false),
        // shr (b·w) = w
        ShiftOp::Shr => w.shifted_down(),
        // rol (w·b) = b·w
        ShiftOp::Rol => {
            let last = w.get(w.len - 1).unwrap();
            w.truncated(w.len - 1).shifted_up(last)
        }
        // ror (b·w) = w·b
        ShiftOp::Ror => {
            let first = w.get(0).unwrap();
            let mut out = w.shifted_down();
            out.push(first);
            out
        }
    }
}

impl fmt::Display for BitString {
    /// Bits in index order (least significant first); ε prints as nothing.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("ε")
        } else {
            write!(f, "\"{self}\"")
        }
    }
}

impl FromStr for BitString {
    type Err = ParseBitsError;

    /// Parses `0`/`1` characters in index order; the empty string is ε.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(ParseBitsError(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BitString::from_bits)
    }
}

impl Serialize for BitString {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}
