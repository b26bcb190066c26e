//! Thread extraction: the behaviour an instruction sequence produces.

use std::collections::HashSet;

use crate::pga::{InstructionSequence, PrimitiveInstruction};
use crate::thread::{Action, Node, RegularThread};

#[derive(Clone, Copy)]
enum Target {
    Stop,
    Dead,
    Position(usize),
}

/// Follows jumps from `pos` to the first position holding a basic or
/// termination instruction. `#0`, running off the end, and jump cycles all
/// mean inaction.
fn resolve(s: &InstructionSequence, pos: u128) -> Target {
    let mut visited = HashSet::new();
    let mut cur = pos;
    loop {
        let Some(p) = s.fold_position(cur) else {
            return Target::Dead;
        };
        match s.at_folded(p) {
            PrimitiveInstruction::Halt => return Target::Stop,
            PrimitiveInstruction::Jump(0) => return Target::Dead,
            PrimitiveInstruction::Jump(l) => {
                if !visited.insert(p) {
                    return Target::Dead;
                }
                cur = p as u128 + *l as u128;
            }
            _ => return Target::Position(p),
        }
    }
}

/// The regular thread `|s|`: one node per reachable basic instruction, plus
/// S and D.
pub fn extract(s: &InstructionSequence) -> RegularThread {
    let n = s.positions();
    let (stop, dead) = (n, n + 1);
    let id = |t: Target| match t {
        Target::Stop => stop,
        Target::Dead => dead,
        Target::Position(p) => p,
    };
    let mut nodes: Vec<Node> = (0..n)
        .map(|p| {
            let next = |k: u128| id(resolve(s, p as u128 + k));
            match s.at_folded(p) {
                PrimitiveInstruction::Plain(a) => {
                    let x = next(1);
                    Node::Branch { action: Action::Basic(a.clone()), then: x, otherwise: x }
                }
                PrimitiveInstruction::PosTest(a) => {
                    Node::Branch { action: Action::Basic(a.clone()), then: next(1), otherwise: next(2) }
                }
                PrimitiveInstruction::NegTest(a) => {
                    Node::Branch { action: Action::Basic(a.clone()), then: next(2), otherwise: next(1) }
                }
                // Jumps and halts never become nodes of their own; they are
                // resolved away and dropped when trimming.
                _ => Node::Dead,
            }
        })
        .collect();
    nodes.push(Node::Stop);
    nodes.push(Node::Dead);
    RegularThread::from_nodes(nodes, id(resolve(s, 0))).expect("extracted ids are in range")
}

/// Whether two instruction sequences produce the same behaviour.
pub fn behaviourally_equivalent(s1: &InstructionSequence, s2: &InstructionSequence) -> bool {
    extract(s1).bisimilar(&extract(s2))
}
