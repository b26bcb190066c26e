//! Recognizers for semi-realistic, standard and successor RAM programs.

use serde::Serialize;

use super::{BinOp, Src, SrramInstruction, UnOp};
use crate::natural::Natural;
use crate::pga::{canonicalize, BasicInstruction, InstructionSequence, PrimitiveInstruction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ProgramClass {
    pub is_srram: bool,
    pub is_standard: bool,
    pub is_successor: bool,
}

/// Classifies the sequence by the shape of its repeated body.
///
/// A semi-realistic RAM program is `(t₁;…;tₙ)*` where every `tᵢ` is a
/// non-comparison instruction, `+cmp;#l`, `#l`, or `!`. The check is on the
/// denoted sequence, so any term denoting such a sequence qualifies.
pub fn classify_program(s: &InstructionSequence) -> ProgramClass {
    let c = canonicalize(s);
    if !c.prefix().is_empty() || c.period().is_empty() {
        return ProgramClass::default();
    }
    let Some(used) = split_units(c.period()) else {
        return ProgramClass::default();
    };
    ProgramClass {
        is_srram: true,
        is_standard: used.iter().all(|i| is_standard_instruction(i)),
        is_successor: used.iter().all(|i| is_successor_instruction(i)),
    }
}

/// Splits a period into the unit forms above and returns the basic
/// instructions used, or `None` if it does not split.
fn split_units(body: &[PrimitiveInstruction]) -> Option<Vec<&SrramInstruction>> {
    let mut used = Vec::new();
    let mut i = 0;
    while i < body.len() {
        match &body[i] {
            PrimitiveInstruction::Jump(_) | PrimitiveInstruction::Halt => i += 1,
            PrimitiveInstruction::Plain(BasicInstruction::Symbolic(a)) if !a.is_comparison() => {
                used.push(a);
                i += 1;
            }
            PrimitiveInstruction::PosTest(BasicInstruction::Symbolic(a)) if a.is_comparison() => {
                if !matches!(body.get(i + 1), Some(PrimitiveInstruction::Jump(_))) {
                    return None;
                }
                used.push(a);
                i += 2;
            }
            _ => return None,
        }
    }
    Some(used)
}

fn is_standard_instruction(i: &SrramInstruction) -> bool {
    match i {
        SrramInstruction::Binop { op, .. } => matches!(op, BinOp::Add | BinOp::Sub),
        SrramInstruction::Unop { op, .. } => *op == UnOp::Mov,
        SrramInstruction::Cmp { .. } => true,
    }
}

fn is_successor_instruction(i: &SrramInstruction) -> bool {
    match i {
        SrramInstruction::Binop { op: BinOp::Add, s2: Src::Imm(one), .. } => *one == Natural::one(),
        SrramInstruction::Binop { .. } => false,
        SrramInstruction::Unop { op, .. } => *op == UnOp::Mov,
        SrramInstruction::Cmp { .. } => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pga::tests::seq;

    fn class(text: &str) -> (bool, bool, bool) {
        let c = classify_program(&seq(text));
        (c.is_srram, c.is_standard, c.is_successor)
    }

    #[test]
    fn examples() {
        assert_eq!(class("(mov:1:0;!)*"), (true, true, true));
        assert_eq!(class("(mul:1:1:0;!)*"), (true, false, false));
        assert_eq!(class("mov:1:0;!"), (false, false, false));
    }

    #[test]
    fn grammar_edges() {
        // comparison must be a positive test followed by a jump
        assert_eq!(class("(+eq:1:#0;#2;mov:1:0;!)*"), (true, true, true));
        assert_eq!(class("(+eq:1:#0;mov:1:0;!)*"), (false, false, false));
        assert_eq!(class("(eq:1:#0;#2;!)*"), (false, false, false));
        assert_eq!(class("(-eq:1:#0;#2;!)*"), (false, false, false));
        assert_eq!(class("(#2;!;+eq:1:#0)*"), (false, false, false));
        // non-comparison instructions may not be tested
        assert_eq!(class("(+mov:1:0;#1;!)*"), (false, false, false));
        // bare jumps and halts are units on their own
        assert_eq!(class("(#3)*"), (true, true, true));
        // opaque instructions are outside the instruction set
        assert_eq!(class("(a;!)*"), (false, false, false));
        // the successor class only allows adding the constant one
        assert_eq!(class("(add:1:#1:0;!)*"), (true, true, true));
        assert_eq!(class("(add:1:#2:0;!)*"), (true, true, false));
        assert_eq!(class("(sub:1:#1:0;!)*"), (true, true, false));
        assert_eq!(class("(shl:1:0;!)*"), (true, false, false));
        // a term with a prefix that denotes a purely periodic sequence
        assert_eq!(class("mov:1:0;(!;mov:1:0)*"), (true, true, true));
    }
}
