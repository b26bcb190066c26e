//! Bisimilarity of regular threads by partition refinement.
//!
//! Round `k` of the refinement groups exactly the nodes whose depth-`k`
//! projections coincide, so the round in which the two roots first land in
//! different blocks is the least distinguishing projection depth.

use std::collections::HashMap;

use super::{Action, Node, RegularThread};

#[derive(PartialEq, Eq, Hash)]
enum Signature<'a> {
    Stop,
    Dead,
    Branch(&'a Action, usize, usize),
}

pub(super) fn distinguishing_depth(t1: &RegularThread, t2: &RegularThread) -> Option<usize> {
    let offset = t1.len();
    let total = offset + t2.len();
    let thread_of = |id: usize| if id < offset { (t1, id, 0) } else { (t2, id - offset, offset) };
    let (root1, root2) = (0, offset);

    // π₀ is D everywhere, so round 0 has a single block.
    let mut block = vec![0usize; total];
    let mut blocks = 1;
    for round in 1.. {
        let mut ids: HashMap<Signature<'_>, usize> = HashMap::new();
        let mut next = Vec::with_capacity(total);
        for id in 0..total {
            let (t, local, base) = thread_of(id);
            let sig = match t.effective_children(local) {
                Some((a, then, otherwise)) => Signature::Branch(a, block[base + then], block[base + otherwise]),
                None if matches!(t.node(local), Node::Stop) => Signature::Stop,
                None => Signature::Dead,
            };
            let fresh = ids.len();
            next.push(*ids.entry(sig).or_insert(fresh));
        }
        if next[root1] != next[root2] {
            return Some(round);
        }
        let count = ids.len();
        block = next;
        if count == blocks {
            return None;
        }
        blocks = count;
    }
    unreachable!()
}
