//! Threads: the behaviours produced by instruction sequences under execution.
//!
//! A [`RegularThread`] is a finite rooted graph whose nodes are termination
//! (S), inaction (D), or a postconditional composition `x ⊴ α ⊵ y` that
//! performs `α` and continues with `x` on reply 1 and `y` on reply 0.
//! Finite approximations are [`FiniteThread`]s.

mod bisim;
mod equations;
mod finite;
mod format;

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::pga::BasicInstruction;

pub use equations::ThreadTerm;
pub use finite::{FiniteNode, FiniteThread};

pub type NodeId = usize;

/// A basic action or the internal action τ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Action {
    Tau,
    Basic(BasicInstruction),
}

impl Action {
    pub fn is_tau(&self) -> bool {
        matches!(self, Action::Tau)
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Tau => f.write_str("tau"),
            Action::Basic(a) => write!(f, "{a}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Stop,
    Dead,
    Branch { action: Action, then: NodeId, otherwise: NodeId },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThreadError {
    #[error("node {0} is referenced but does not exist")]
    DanglingNode(NodeId),
    #[error("node {0} was reserved but never defined")]
    UndefinedNode(NodeId),
    #[error("recursion variable {0:?} has no equation")]
    UnboundVariable(String),
    #[error("recursion variable {0:?} is defined twice")]
    DuplicateEquation(String),
}

/// A finite-state thread. Every node is reachable from the root, and the
/// root has id 0.
#[derive(Debug, Clone)]
pub struct RegularThread {
    nodes: Vec<Node>,
}

/// Incremental construction of thread graphs, cycles included.
#[derive(Debug, Default)]
pub struct ThreadBuilder {
    nodes: Vec<Option<Node>>,
}

impl ThreadBuilder {
    pub fn new() -> Self {
        ThreadBuilder::default()
    }

    pub fn add(&mut self, node: Node) -> NodeId {
        self.nodes.push(Some(node));
        self.nodes.len() - 1
    }

    pub fn stop(&mut self) -> NodeId {
        self.add(Node::Stop)
    }

    pub fn dead(&mut self) -> NodeId {
        self.add(Node::Dead)
    }

    pub fn branch(&mut self, action: Action, then: NodeId, otherwise: NodeId) -> NodeId {
        self.add(Node::Branch { action, then, otherwise })
    }

    /// Reserves a node to be filled in later with [`ThreadBuilder::define`].
    pub fn reserve(&mut self) -> NodeId {
        self.nodes.push(None);
        self.nodes.len() - 1
    }

    pub fn define(&mut self, id: NodeId, node: Node) {
        self.nodes[id] = Some(node);
    }

    pub fn finish(self, root: NodeId) -> Result<RegularThread, ThreadError> {
        let mut nodes = Vec::with_capacity(self.nodes.len());
        for (id, n) in self.nodes.into_iter().enumerate() {
            nodes.push(n.ok_or(ThreadError::UndefinedNode(id))?);
        }
        RegularThread::from_nodes(nodes, root)
    }
}

impl RegularThread {
    /// Builds a thread from raw nodes, keeping only what `root` reaches and
    /// renumbering breadth-first so that the root is node 0.
    pub fn from_nodes(nodes: Vec<Node>, root: NodeId) -> Result<Self, ThreadError> {
        let check = |id: NodeId| {
            if id < nodes.len() {
                Ok(id)
            } else {
                Err(ThreadError::DanglingNode(id))
            }
        };
        check(root)?;
        for n in &nodes {
            if let Node::Branch { then, otherwise, .. } = n {
                check(*then)?;
                check(*otherwise)?;
            }
        }
        let mut new_id = vec![usize::MAX; nodes.len()];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([root]);
        new_id[root] = 0;
        order.push(root);
        while let Some(id) = queue.pop_front() {
            if let Node::Branch { then, otherwise, .. } = &nodes[id] {
                for next in [*then, *otherwise] {
                    if new_id[next] == usize::MAX {
                        new_id[next] = order.len();
                        order.push(next);
                        queue.push_back(next);
                    }
                }
            }
        }
        let trimmed = order
            .iter()
            .map(|&old| match &nodes[old] {
                Node::Branch { action, then, otherwise } => {
                    Node::Branch { action: action.clone(), then: new_id[*then], otherwise: new_id[*otherwise] }
                }
                other => other.clone(),
            })
            .collect();
        Ok(RegularThread { nodes: trimmed })
    }

    pub fn stop() -> Self {
        RegularThread { nodes: vec![Node::Stop] }
    }

    pub fn dead() -> Self {
        RegularThread { nodes: vec![Node::Dead] }
    }

    pub fn root(&self) -> NodeId {
        0
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Rewrites every `x ⊴ τ ⊵ y` to `τ ∘ x`.
    pub fn tau_normalize(&self) -> RegularThread {
        let nodes = self
            .nodes
            .iter()
            .map(|n| match n {
                Node::Branch { action: Action::Tau, then, .. } => {
                    Node::Branch { action: Action::Tau, then: *then, otherwise: *then }
                }
                other => other.clone(),
            })
            .collect();
        // Redirecting else-edges can make nodes unreachable.
        RegularThread::from_nodes(nodes, 0).expect("ids stay in range")
    }

    /// Successors that matter for behaviour: a τ branch only continues
    /// with its reply-1 successor.
    pub(crate) fn effective_children(&self, id: NodeId) -> Option<(&Action, NodeId, NodeId)> {
        match &self.nodes[id] {
            Node::Branch { action: Action::Tau, then, .. } => Some((&Action::Tau, *then, *then)),
            Node::Branch { action, then, otherwise } => Some((action, *then, *otherwise)),
            _ => None,
        }
    }

    /// Whether the graph has a cycle reachable from the root.
    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Nodes ordered so that children come before parents, if acyclic.
    fn topological_order(&self) -> Option<Vec<NodeId>> {
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; self.nodes.len()];
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(0usize, false)];
        while let Some((id, expanded)) = stack.pop() {
            if expanded {
                state[id] = 2;
                order.push(id);
                continue;
            }
            match state[id] {
                2 => continue,
                1 => return None,
                _ => {}
            }
            state[id] = 1;
            stack.push((id, true));
            if let Some((_, t, e)) = self.effective_children(id) {
                for c in [t, e] {
                    match state[c] {
                        1 => return None,
                        0 => stack.push((c, false)),
                        _ => {}
                    }
                }
            }
        }
        Some(order)
    }

    /// The finite thread this graph denotes, if it has no cycles.
    pub fn to_finite(&self) -> Option<FiniteThread> {
        let order = self.topological_order()?;
        let mut b = finite::FiniteBuilder::default();
        let mut ids = vec![usize::MAX; self.nodes.len()];
        for id in order {
            ids[id] = match self.effective_children(id) {
                None if matches!(self.nodes[id], Node::Stop) => b.stop(),
                None => b.dead(),
                Some((a, t, e)) => b.branch(a.clone(), ids[t], ids[e]),
            };
        }
        Some(b.finish(ids[0]))
    }

    /// `πₙ(t)`: the approximation of depth `n`.
    pub fn proj(&self, n: usize) -> FiniteThread {
        let mut b = finite::FiniteBuilder::default();
        let dead = b.dead();
        let stop = b.stop();
        // level[id] = πₖ(node id), starting from π₀ = D everywhere.
        let mut level = vec![dead; self.nodes.len()];
        for _ in 0..n {
            let next = (0..self.nodes.len())
                .map(|id| match &self.nodes[id] {
                    Node::Stop => stop,
                    Node::Dead => dead,
                    Node::Branch { action, then, otherwise } => {
                        b.branch(action.clone(), level[*then], level[*otherwise])
                    }
                })
                .collect();
            level = next;
        }
        b.finish(level[0])
    }

    pub fn bisimilar(&self, other: &RegularThread) -> bool {
        bisim::distinguishing_depth(self, other).is_none()
    }

    /// The least `n` with `πₙ(self) ≠ πₙ(other)`, or `None` if the threads
    /// are equal.
    pub fn distinguishing_depth(&self, other: &RegularThread) -> Option<usize> {
        bisim::distinguishing_depth(self, other)
    }

    /// Plain-text adjacency listing, one line per node.
    pub fn to_text(&self) -> String {
        format::to_text(self)
    }

    pub fn to_dot(&self) -> String {
        format::to_dot(self)
    }
}

impl From<&FiniteThread> for RegularThread {
    fn from(t: &FiniteThread) -> Self {
        let nodes = t
            .nodes()
            .iter()
            .map(|n| match n {
                FiniteNode::Stop => Node::Stop,
                FiniteNode::Dead => Node::Dead,
                FiniteNode::Branch { action, then, otherwise } => {
                    Node::Branch { action: action.clone(), then: *then, otherwise: *otherwise }
                }
            })
            .collect();
        RegularThread::from_nodes(nodes, t.root()).expect("finite thread ids are valid")
    }
}

impl fmt::Display for RegularThread {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
