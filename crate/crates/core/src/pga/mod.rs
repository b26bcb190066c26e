//! Single-pass instruction sequences.
//!
//! A closed instruction-sequence term denotes a non-empty, possibly infinite
//! sequence of primitive instructions with finitely many distinct suffixes.
//! Such a sequence is stored as a finite prefix followed by an optional
//! period repeated forever.

mod normal;
mod syntax;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::isa::SrramInstruction;
use crate::memory::MemoryState;

pub use syntax::{parse_sequence, ParseError, ParseErrorKind};

pub type Predicate = Arc<dyn Fn(&MemoryState) -> bool + Send + Sync>;
pub type Transformer = Arc<dyn Fn(&MemoryState) -> MemoryState + Send + Sync>;

/// A basic RAM instruction given only by name, optionally bound to a reply
/// predicate `p` and a state transformer `q`.
///
/// Two opaque instructions are equal iff their names are equal.
#[derive(Clone)]
pub struct OpaqueInstruction {
    name: Arc<str>,
    semantics: Option<(Predicate, Transformer)>,
}

impl OpaqueInstruction {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn semantics(&self) -> Option<(&Predicate, &Transformer)> {
        self.semantics.as_ref().map(|(p, q)| (p, q))
    }
}

impl PartialEq for OpaqueInstruction {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl Eq for OpaqueInstruction {}

impl std::hash::Hash for OpaqueInstruction {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.name.hash(state);
    }
}

impl fmt::Debug for OpaqueInstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BasicInstruction {
    Symbolic(SrramInstruction),
    Opaque(OpaqueInstruction),
}

impl BasicInstruction {
    /// An opaque instruction with no semantics attached; it can be
    /// normalized, extracted and compared but not executed.
    pub fn named(name: &str) -> Self {
        BasicInstruction::Opaque(OpaqueInstruction { name: name.into(), semantics: None })
    }

    pub fn opaque<P, Q>(name: &str, p: P, q: Q) -> Self
    where
        P: Fn(&MemoryState) -> bool + Send + Sync + 'static,
        Q: Fn(&MemoryState) -> MemoryState + Send + Sync + 'static,
    {
        BasicInstruction::Opaque(OpaqueInstruction { name: name.into(), semantics: Some((Arc::new(p), Arc::new(q))) })
    }

    pub fn as_symbolic(&self) -> Option<&SrramInstruction> {
        match self {
            BasicInstruction::Symbolic(i) => Some(i),
            BasicInstruction::Opaque(_) => None,
        }
    }
}

impl From<SrramInstruction> for BasicInstruction {
    fn from(i: SrramInstruction) -> Self {
        BasicInstruction::Symbolic(i)
    }
}

impl fmt::Display for BasicInstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasicInstruction::Symbolic(i) => write!(f, "{i}"),
            BasicInstruction::Opaque(o) => f.write_str(o.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PrimitiveInstruction {
    Plain(BasicInstruction),
    PosTest(BasicInstruction),
    NegTest(BasicInstruction),
    /// Forward jump; `Jump(0)` is inaction.
    Jump(u64),
    Halt,
}

impl PrimitiveInstruction {
    pub fn basic(&self) -> Option<&BasicInstruction> {
        match self {
            PrimitiveInstruction::Plain(a) | PrimitiveInstruction::PosTest(a) | PrimitiveInstruction::NegTest(a) => {
                Some(a)
            }
            _ => None,
        }
    }
}

impl fmt::Display for PrimitiveInstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimitiveInstruction::Plain(a) => write!(f, "{a}"),
            PrimitiveInstruction::PosTest(a) => write!(f, "+{a}"),
            PrimitiveInstruction::NegTest(a) => write!(f, "-{a}"),
            PrimitiveInstruction::Jump(l) => write!(f, "#{l}"),
            PrimitiveInstruction::Halt => f.write_str("!"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("an instruction sequence must contain at least one instruction")]
pub struct EmptySequence;

/// An eventually periodic instruction sequence: `prefix` followed by
/// `period` repeated forever. An empty period means the sequence is finite.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InstructionSequence {
    prefix: Vec<PrimitiveInstruction>,
    period: Vec<PrimitiveInstruction>,
}

impl InstructionSequence {
    pub fn new(prefix: Vec<PrimitiveInstruction>, period: Vec<PrimitiveInstruction>) -> Result<Self, EmptySequence> {
        if prefix.is_empty() && period.is_empty() {
            return Err(EmptySequence);
        }
        Ok(InstructionSequence { prefix, period })
    }

    pub fn finite(instrs: Vec<PrimitiveInstruction>) -> Result<Self, EmptySequence> {
        Self::new(instrs, Vec::new())
    }

    pub fn single(u: PrimitiveInstruction) -> Self {
        InstructionSequence { prefix: vec![u], period: Vec::new() }
    }

    pub fn prefix(&self) -> &[PrimitiveInstruction] {
        &self.prefix
    }

    pub fn period(&self) -> &[PrimitiveInstruction] {
        &self.period
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// Number of distinct positions in the representation: prefix plus one
    /// copy of the period.
    pub fn positions(&self) -> usize {
        self.prefix.len() + self.period.len()
    }

    /// Maps an arbitrary position of the denoted sequence onto a position of
    /// the representation, or `None` past the end of a finite sequence.
    pub fn fold_position(&self, pos: u128) -> Option<usize> {
        let n = self.prefix.len() as u128;
        if pos < n {
            return Some(pos as usize);
        }
        if self.period.is_empty() {
            return None;
        }
        let m = self.period.len() as u128;
        Some((n + (pos - n) % m) as usize)
    }

    /// Instruction at `pos` of the denoted sequence.
    pub fn instruction_at(&self, pos: u128) -> Option<&PrimitiveInstruction> {
        self.fold_position(pos).map(|p| self.at_folded(p))
    }

    pub(crate) fn at_folded(&self, p: usize) -> &PrimitiveInstruction {
        if p < self.prefix.len() {
            &self.prefix[p]
        } else {
            &self.period[p - self.prefix.len()]
        }
    }

    /// The first `n` instructions (fewer if the sequence is finite and shorter).
    pub fn unfold(&self, n: usize) -> Vec<PrimitiveInstruction> {
        (0..n as u128).map_while(|p| self.instruction_at(p).cloned()).collect()
    }

    /// Concatenation; an infinite left operand absorbs the right one.
    pub fn concat(&self, other: &InstructionSequence) -> InstructionSequence {
        if !self.is_finite() {
            return self.clone();
        }
        let mut prefix = self.prefix.clone();
        prefix.extend(other.prefix.iter().cloned());
        InstructionSequence { prefix, period: other.period.clone() }
    }

    /// Repetition. A finite body becomes the period (reduced to its primitive
    /// root); an infinite sequence repeated is itself.
    pub fn repeat(&self) -> InstructionSequence {
        if !self.is_finite() {
            return self.clone();
        }
        let root = normal::primitive_root(&self.prefix).to_vec();
        InstructionSequence { prefix: Vec::new(), period: root }
    }
}

impl fmt::Display for InstructionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&syntax::print_sequence(self))
    }
}

impl std::str::FromStr for InstructionSequence {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_sequence(s)
    }
}

pub use normal::{canonicalize, jump_normalize, seq_equal, struct_equal};
