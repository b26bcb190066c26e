//! RAM memory states and the memory file format.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::bits::{natural_len, BitString};
use crate::natural::Natural;

/// A RAM memory state: every register holds a bit string, all but finitely
/// many hold ε. Only non-ε registers are stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct MemoryState {
    registers: BTreeMap<Natural, BitString>,
}

/// A RAM memory is either operative with a state, or inoperative (↑).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RamMemory {
    Operative(MemoryState),
    Inoperative,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MemoryFileError {
    #[error("line {line}: expected INDEX=BITS")]
    MissingEquals { line: usize },
    #[error("line {line}: invalid register index {text:?}")]
    BadIndex { line: usize, text: String },
    #[error("line {line}: invalid bits {text:?}")]
    BadBits { line: usize, text: String },
    #[error("line {line}: register {index} assigned twice")]
    Duplicate { line: usize, index: Natural },
}

impl MemoryState {
    /// σ_ε, the state in which every register holds ε.
    pub fn new() -> Self {
        MemoryState::default()
    }

    pub fn from_pairs<I, N>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (N, BitString)>,
        N: Into<Natural>,
    {
        let mut m = MemoryState::new();
        for (i, w) in pairs {
            m.set(i.into(), w);
        }
        m
    }

    /// Content of register `i`; ε for registers not in use.
    pub fn read(&self, i: &Natural) -> BitString {
        self.registers.get(i).cloned().unwrap_or_default()
    }

    pub fn get(&self, i: &Natural) -> Option<&BitString> {
        self.registers.get(i)
    }

    /// `σ[i ↦ w]` as a new state.
    pub fn write(&self, i: Natural, w: BitString) -> MemoryState {
        let mut out = self.clone();
        out.set(i, w);
        out
    }

    /// In-place `σ[i ↦ w]`; writing ε frees the register. Returns the
    /// previous content.
    pub fn set(&mut self, i: Natural, w: BitString) -> BitString {
        let old = if w.is_empty() { self.registers.remove(&i) } else { self.registers.insert(i, w) };
        old.unwrap_or_default()
    }

    /// Registers with non-ε content, in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = (&Natural, &BitString)> {
        self.registers.iter()
    }

    pub fn len(&self) -> usize {
        self.registers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.registers.is_empty()
    }

    /// Total number of content bits over all registers.
    pub fn total_bits(&self) -> usize {
        self.registers.values().map(BitString::len).sum()
    }

    /// Σ (len(i) + len(σ(i))) over registers in use that are not in
    /// `1..=input_count`.
    pub fn space(&self, input_count: usize) -> u64 {
        self.registers.iter().filter(|(i, _)| !is_input(i, input_count)).map(|(i, w)| register_space(i, w)).sum()
    }

    /// Registers whose content differs between the two states.
    pub fn differing_registers(&self, other: &MemoryState) -> Vec<Natural> {
        let mut out: Vec<Natural> = self
            .registers
            .iter()
            .filter(|(i, w)| other.registers.get(*i) != Some(*w))
            .map(|(i, _)| i.clone())
            .collect();
        out.extend(other.registers.keys().filter(|i| !self.registers.contains_key(*i)).cloned());
        out.sort();
        out
    }

    /// Renders the state in the `INDEX=BITS` line format.
    pub fn to_file_string(&self) -> String {
        let mut s = String::new();
        for (i, w) in &self.registers {
            s.push_str(&format!("{i}={w}\n"));
        }
        s
    }

    pub fn parse_file(text: &str) -> Result<MemoryState, MemoryFileError> {
        let mut m = MemoryState::new();
        let mut seen = std::collections::BTreeSet::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let body = raw.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            let (idx, bits) = body.split_once('=').ok_or(MemoryFileError::MissingEquals { line })?;
            let index: Natural =
                idx.trim().parse().map_err(|_| MemoryFileError::BadIndex { line, text: idx.trim().to_string() })?;
            let w: BitString =
                bits.trim().parse().map_err(|_| MemoryFileError::BadBits { line, text: bits.trim().to_string() })?;
            if !seen.insert(index.clone()) {
                return Err(MemoryFileError::Duplicate { line, index });
            }
            m.set(index, w);
        }
        Ok(m)
    }
}

pub(crate) fn is_input(i: &Natural, input_count: usize) -> bool {
    !i.is_zero() && i.to_usize().is_some_and(|v| v <= input_count)
}

pub(crate) fn register_space(i: &Natural, w: &BitString) -> u64 {
    (natural_len(i) + w.len()) as u64
}

impl fmt::Debug for MemoryState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.registers.iter()).finish()
    }
}

impl FromStr for MemoryState {
    type Err = MemoryFileError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MemoryState::parse_file(s)
    }
}

impl Serialize for MemoryState {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(self.registers.len()))?;
        for (i, w) in &self.registers {
            map.serialize_entry(&i.to_string(), &w.to_string())?;
        }
        map.end()
    }
}

impl RamMemory {
    pub fn operative(state: MemoryState) -> Self {
        RamMemory::Operative(state)
    }

    pub fn state(&self) -> Option<&MemoryState> {
        match self {
            RamMemory::Operative(s) => Some(s),
            RamMemory::Inoperative => None,
        }
    }

    pub fn is_inoperative(&self) -> bool {
        matches!(self, RamMemory::Inoperative)
    }
}

impl From<MemoryState> for RamMemory {
    fn from(s: MemoryState) -> Self {
        RamMemory::Operative(s)
    }
}
