//! Bit-oriented instruction costs.

use crate::bits::{bton, natural_len};
use crate::isa::{BinOp, Src, SrramInstruction};
use crate::memory::MemoryState;

/// Cost of fetching an operand: the length of the register numbers and
/// contents involved.
pub fn boc_src(sigma: &MemoryState, s: &Src) -> u64 {
    let n = match s {
        Src::Imm(i) => natural_len(i),
        Src::Dir(i) => natural_len(i) + sigma.read(i).len(),
        Src::Ind(i) => {
            let w = sigma.read(i);
            natural_len(i) + w.len() + sigma.read(&bton(&w)).len()
        }
    };
    n as u64
}

/// Cost of executing `i` on `σ`: the larger operand cost, or the product of
/// the two for multiplication and division.
pub fn boc_instr(sigma: &MemoryState, i: &SrramInstruction) -> u64 {
    match i {
        SrramInstruction::Binop { op: BinOp::Mul | BinOp::Div, s1, s2, .. } => {
            boc_src(sigma, s1).saturating_mul(boc_src(sigma, s2))
        }
        SrramInstruction::Binop { s1, s2, .. } | SrramInstruction::Cmp { s1, s2, .. } => {
            boc_src(sigma, s1).max(boc_src(sigma, s2))
        }
        SrramInstruction::Unop { s1, .. } => boc_src(sigma, s1),
    }
}
