//! Canonical representatives and jump normalization.

use std::collections::HashSet;

use super::{InstructionSequence, PrimitiveInstruction};

/// Shortest word `r` with `w = rᵏ`.
pub(crate) fn primitive_root<T: PartialEq>(w: &[T]) -> &[T] {
    let len = w.len();
    for d in 1..len {
        if len.is_multiple_of(d) && (d..len).all(|i| w[i] == w[i % d]) {
            return &w[..d];
        }
    }
    w
}

/// The unique representative with primitive period and minimal prefix.
///
/// Once the prefix is minimal the period's rotation is fixed: it is the
/// sequence read from position `|prefix|` onwards.
pub fn canonicalize(s: &InstructionSequence) -> InstructionSequence {
    if s.is_finite() {
        return s.clone();
    }
    let mut period = primitive_root(&s.period).to_vec();
    let mut prefix = s.prefix.clone();
    while !prefix.is_empty() && prefix.last() == period.last() {
        prefix.pop();
        period.rotate_right(1);
    }
    InstructionSequence { prefix, period }
}

/// Equality derivable from associativity, unfolding and repetition laws:
/// both sides denote the same sequence.
pub fn seq_equal(s1: &InstructionSequence, s2: &InstructionSequence) -> bool {
    canonicalize(s1) == canonicalize(s2)
}

/// Chained jumps become single jumps, jumps into `#0` become `#0`, and
/// every jump inside or into the period is made as short as possible.
pub fn jump_normalize(s: &InstructionSequence) -> InstructionSequence {
    let mut current = canonicalize(s);
    // Shortening can expose a shorter period, which can shorten jumps again;
    // each round strictly shrinks the representation or reaches a fixpoint.
    loop {
        let next = canonicalize(&shorten_jumps(&current));
        if next == current {
            return current;
        }
        current = next;
    }
}

/// Full equality under all instruction-sequence axioms.
pub fn struct_equal(s1: &InstructionSequence, s2: &InstructionSequence) -> bool {
    seq_equal(&jump_normalize(s1), &jump_normalize(s2))
}

fn shorten_jumps(s: &InstructionSequence) -> InstructionSequence {
    let rewrite = |p: usize, u: &PrimitiveInstruction| match u {
        PrimitiveInstruction::Jump(l) => PrimitiveInstruction::Jump(shortest_offset(s, p, *l)),
        other => other.clone(),
    };
    let n = s.prefix.len();
    InstructionSequence {
        prefix: s.prefix.iter().enumerate().map(|(p, u)| rewrite(p, u)).collect(),
        period: s.period.iter().enumerate().map(|(p, u)| rewrite(n + p, u)).collect(),
    }
}

/// Offset of the single jump equivalent to the chain starting with `#l` at
/// representation position `p`; 0 when the chain ends in `#0` or cycles.
fn shortest_offset(s: &InstructionSequence, p: usize, l: u64) -> u64 {
    if l == 0 {
        return 0;
    }
    let mut visited = HashSet::from([p]);
    let mut at = p;
    let mut offset = l;
    loop {
        let target = at as u128 + offset as u128;
        let Some(q) = s.fold_position(target) else {
            // Past the end of a finite sequence: keep the combined distance.
            return u64::try_from(target - p as u128).unwrap_or(u64::MAX);
        };
        match s.at_folded(q) {
            PrimitiveInstruction::Jump(0) => return 0,
            PrimitiveInstruction::Jump(next) => {
                if !visited.insert(q) {
                    return 0;
                }
                at = q;
                offset = *next;
            }
            _ => {
                return if q > p {
                    (q - p) as u64
                } else {
                    // Wrapped around inside the period.
                    (q + s.period.len() - p) as u64
                };
            }
        }
    }
}
