//! The semi-realistic RAM instruction set: symbolic instructions with
//! immediate, direct and indirect operands, and their meaning as a reply
//! predicate plus a state transformer.

mod classify;
mod validate;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bits::{arith, bitwise, bnot, bton, ntob, shift, ArithOp, BitString, BitwiseOp, ShiftOp};
use crate::memory::MemoryState;
use crate::natural::Natural;

pub use classify::{classify_program, ProgramClass};
pub use validate::{validate_conditions, Condition, ConditionReport, ValidatorConfig, Violation};

/// Source operand: `#i` immediate, `i` direct, `@i` indirect.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Src {
    Imm(Natural),
    Dir(Natural),
    Ind(Natural),
}

/// Destination operand: `i` direct or `@i` indirect.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dst {
    Dir(Natural),
    Ind(Natural),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    And,
    Or,
    Xor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnOp {
    Not,
    Shl,
    Shr,
    Rol,
    Ror,
    Mov,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CmpOp {
    Eq,
    Gt,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SrramInstruction {
    Binop { op: BinOp, s1: Src, s2: Src, d: Dst },
    Unop { op: UnOp, s1: Src, d: Dst },
    Cmp { op: CmpOp, s1: Src, s2: Src },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstructionParseError {
    #[error("unknown operation {0:?}")]
    UnknownOp(String),
    #[error("{op} expects {expected} operands, found {found}")]
    Arity { op: String, expected: usize, found: usize },
    #[error("malformed operand {0:?}")]
    BadOperand(String),
    #[error("immediate destination {0:?} is not allowed")]
    ImmediateDestination(String),
}

impl BinOp {
    pub const ALL: [BinOp; 7] = [BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div, BinOp::And, BinOp::Or, BinOp::Xor];

    pub fn name(self) -> &'static str {
        match self {
            BinOp::Add => "add",
            BinOp::Sub => "sub",
            BinOp::Mul => "mul",
            BinOp::Div => "div",
            BinOp::And => "and",
            BinOp::Or => "or",
            BinOp::Xor => "xor",
        }
    }

    pub fn eval(self, w1: &BitString, w2: &BitString) -> BitString {
        match self {
            BinOp::Add => arith(ArithOp::Add, w1, w2),
            BinOp::Sub => arith(ArithOp::Monus, w1, w2),
            BinOp::Mul => arith(ArithOp::Mul, w1, w2),
            BinOp::Div => arith(ArithOp::Div, w1, w2),
            BinOp::And => bitwise(BitwiseOp::And, w1, w2),
            BinOp::Or => bitwise(BitwiseOp::Or, w1, w2),
            BinOp::Xor => bitwise(BitwiseOp::Xor, w1, w2),
        }
    }
}

impl UnOp {
    pub const ALL: [UnOp; 6] = [UnOp::Not, UnOp::Shl, UnOp::Shr, UnOp::Rol, UnOp::Ror, UnOp::Mov];

    pub fn name(self) -> &'static str {
        match self {
            UnOp::Not => "not",
            UnOp::Shl => "shl",
            UnOp::Shr => "shr",
            UnOp::Rol => "rol",
            UnOp::Ror => "ror",
            UnOp::Mov => "mov",
        }
    }

    pub fn eval(self, w: &BitString) -> BitString {
        match self {
            UnOp::Not => bnot(w),
            UnOp::Shl => shift(ShiftOp::Shl, w),
            UnOp::Shr => shift(ShiftOp::Shr, w),
            UnOp::Rol => shift(ShiftOp::Rol, w),
            UnOp::Ror => shift(ShiftOp::Ror, w),
            UnOp::Mov => w.clone(),
        }
    }
}

impl CmpOp {
    pub const ALL: [CmpOp; 2] = [CmpOp::Eq, CmpOp::Gt];

    pub fn name(self) -> &'static str {
        match self {
            CmpOp::Eq => "eq",
            CmpOp::Gt => "gt",
        }
    }

    /// Numeric comparison; leading zeros do not matter.
    pub fn eval(self, w1: &BitString, w2: &BitString) -> bool {
        let (a, b) = (bton(w1), bton(w2));
        match self {
            CmpOp::Eq => a == b,
            CmpOp::Gt => a > b,
        }
    }
}

/// `val_σ`: `#i ↦ ntob(i)`, `i ↦ σ(i)`, `@i ↦ σ(bton(σ(i)))`.
pub fn val(sigma: &MemoryState, s: &Src) -> BitString {
    match s {
        Src::Imm(i) => ntob(i),
        Src::Dir(i) => sigma.read(i),
        Src::Ind(i) => sigma.read(&bton(&sigma.read(i))),
    }
}

/// `reg_σ`: `i ↦ i`, `@i ↦ bton(σ(i))`.
pub fn reg(sigma: &MemoryState, d: &Dst) -> Natural {
    match d {
        Dst::Dir(i) => i.clone(),
        Dst::Ind(i) => bton(&sigma.read(i)),
    }
}

/// The single register write an operate instruction performs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Write {
    pub register: Natural,
    pub value: BitString,
}

impl SrramInstruction {
    pub fn is_comparison(&self) -> bool {
        matches!(self, SrramInstruction::Cmp { .. })
    }

    pub fn op_name(&self) -> &'static str {
        match self {
            SrramInstruction::Binop { op, .. } => op.name(),
            SrramInstruction::Unop { op, .. } => op.name(),
            SrramInstruction::Cmp { op, .. } => op.name(),
        }
    }

    /// Reply `p(σ)`: always 1 for operate instructions.
    pub fn reply(&self, sigma: &MemoryState) -> bool {
        match self {
            SrramInstruction::Cmp { op, s1, s2 } => op.eval(&val(sigma, s1), &val(sigma, s2)),
            _ => true,
        }
    }

    /// The write `q` performs on `σ`, if any (comparisons leave σ alone).
    pub fn effect(&self, sigma: &MemoryState) -> Option<Write> {
        match self {
            SrramInstruction::Binop { op, s1, s2, d } => {
                Some(Write { register: reg(sigma, d), value: op.eval(&val(sigma, s1), &val(sigma, s2)) })
            }
            SrramInstruction::Unop { op, s1, d } => {
                Some(Write { register: reg(sigma, d), value: op.eval(&val(sigma, s1)) })
            }
            SrramInstruction::Cmp { .. } => None,
        }
    }

    /// Executes the instruction on `σ` in place and returns the reply.
    pub fn execute(&self, sigma: &mut MemoryState) -> bool {
        let reply = self.reply(sigma);
        if let Some(w) = self.effect(sigma) {
            sigma.set(w.register, w.value);
        }
        reply
    }

    /// `(p(σ), q(σ))`.
    pub fn step(&self, sigma: &MemoryState) -> (bool, MemoryState) {
        let mut next = sigma.clone();
        let reply = self.execute(&mut next);
        (reply, next)
    }
}

impl fmt::Display for Src {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Src::Imm(i) => write!(f, "#{i}"),
            Src::Dir(i) => write!(f, "{i}"),
            Src::Ind(i) => write!(f, "@{i}"),
        }
    }
}

impl fmt::Display for Dst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dst::Dir(i) => write!(f, "{i}"),
            Dst::Ind(i) => write!(f, "@{i}"),
        }
    }
}

impl fmt::Display for SrramInstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SrramInstruction::Binop { op, s1, s2, d } => write!(f, "{}:{s1}:{s2}:{d}", op.name()),
            SrramInstruction::Unop { op, s1, d } => write!(f, "{}:{s1}:{d}", op.name()),
            SrramInstruction::Cmp { op, s1, s2 } => write!(f, "{}:{s1}:{s2}", op.name()),
        }
    }
}

impl FromStr for Src {
    type Err = InstructionParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || InstructionParseError::BadOperand(s.to_string());
        let (ctor, digits): (fn(Natural) -> Src, &str) = if let Some(rest) = s.strip_prefix('#') {
            (Src::Imm, rest)
        } else if let Some(rest) = s.strip_prefix('@') {
            (Src::Ind, rest)
        } else {
            (Src::Dir, s)
        };
        digits.parse().map(ctor).map_err(|_| bad())
    }
}

impl FromStr for Dst {
    type Err = InstructionParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.parse::<Src>()? {
            Src::Imm(_) => Err(InstructionParseError::ImmediateDestination(s.to_string())),
            Src::Dir(i) => Ok(Dst::Dir(i)),
            Src::Ind(i) => Ok(Dst::Ind(i)),
        }
    }
}

impl FromStr for SrramInstruction {
    type Err = InstructionParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut parts = text.split(':');
        let name = parts.next().unwrap_or_default();
        let args: Vec<&str> = parts.collect();
        let arity = |expected: usize| {
            if args.len() == expected {
                Ok(())
            } else {
                Err(InstructionParseError::Arity { op: name.to_string(), expected, found: args.len() })
            }
        };
        if let Some(op) = BinOp::ALL.into_iter().find(|o| o.name() == name) {
            arity(3)?;
            return Ok(SrramInstruction::Binop { op, s1: args[0].parse()?, s2: args[1].parse()?, d: args[2].parse()? });
        }
        if let Some(op) = UnOp::ALL.into_iter().find(|o| o.name() == name) {
            arity(2)?;
            return Ok(SrramInstruction::Unop { op, s1: args[0].parse()?, d: args[1].parse()? });
        }
        if let Some(op) = CmpOp::ALL.into_iter().find(|o| o.name() == name) {
            arity(2)?;
            return Ok(SrramInstruction::Cmp { op, s1: args[0].parse()?, s2: args[1].parse()? });
        }
        Err(InstructionParseError::UnknownOp(name.to_string()))
    }
}
