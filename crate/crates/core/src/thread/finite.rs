//! Finite threads, stored as hash-consed DAGs.
//!
//! Projections of looping threads repeat the same subtrees many times over;
//! sharing keeps their size linear in the depth. Within one table a subtree
//! occurs exactly once, and τ branches are kept in the form `τ ∘ x`.

use std::collections::HashMap;
use std::fmt;

use super::Action;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FiniteNode {
    Stop,
    Dead,
    Branch { action: Action, then: usize, otherwise: usize },
}

#[derive(Clone)]
pub struct FiniteThread {
    nodes: Vec<FiniteNode>,
    root: usize,
}

#[derive(Default)]
pub(crate) struct FiniteBuilder {
    nodes: Vec<FiniteNode>,
    index: HashMap<FiniteNode, usize>,
}

impl FiniteBuilder {
    fn intern(&mut self, node: FiniteNode) -> usize {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        self.nodes.push(node.clone());
        self.index.insert(node, self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    pub(crate) fn stop(&mut self) -> usize {
        self.intern(FiniteNode::Stop)
    }

    pub(crate) fn dead(&mut self) -> usize {
        self.intern(FiniteNode::Dead)
    }

    pub(crate) fn branch(&mut self, action: Action, then: usize, otherwise: usize) -> usize {
        let otherwise = if action.is_tau() { then } else { otherwise };
        self.intern(FiniteNode::Branch { action, then, otherwise })
    }

    /// Copies the subtree of `t` rooted at `id` into this table.
    fn import(&mut self, t: &FiniteThread, memo: &mut HashMap<usize, usize>, id: usize) -> usize {
        if let Some(&m) = memo.get(&id) {
            return m;
        }
        let new = match &t.nodes[id] {
            FiniteNode::Stop => self.stop(),
            FiniteNode::Dead => self.dead(),
            FiniteNode::Branch { action, then, otherwise } => {
                let a = self.import(t, memo, *then);
                let b = self.import(t, memo, *otherwise);
                self.branch(action.clone(), a, b)
            }
        };
        memo.insert(id, new);
        new
    }

    pub(crate) fn finish(self, root: usize) -> FiniteThread {
        FiniteThread { nodes: self.nodes, root }
    }
}

impl FiniteThread {
    pub fn stop() -> Self {
        FiniteThread { nodes: vec![FiniteNode::Stop], root: 0 }
    }

    pub fn dead() -> Self {
        FiniteThread { nodes: vec![FiniteNode::Dead], root: 0 }
    }

    /// `x ⊴ α ⊵ y`; for `α = τ` this is `τ ∘ x`.
    pub fn branch(action: Action, then: FiniteThread, otherwise: FiniteThread) -> Self {
        let mut b = FiniteBuilder::default();
        let x = b.import(&then, &mut HashMap::new(), then.root);
        let y = b.import(&otherwise, &mut HashMap::new(), otherwise.root);
        let r = b.branch(action, x, y);
        b.finish(r)
    }

    /// `α ∘ x`.
    pub fn prefix(action: Action, then: FiniteThread) -> Self {
        Self::branch(action, then.clone(), then)
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn node(&self, id: usize) -> &FiniteNode {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[FiniteNode] {
        &self.nodes
    }

    /// Longest number of actions (τ included) before termination or inaction.
    pub fn depth(&self) -> usize {
        let mut memo = vec![0usize; self.nodes.len()];
        // Children always precede their parents in the table.
        for id in 0..self.nodes.len() {
            if let FiniteNode::Branch { then, otherwise, .. } = &self.nodes[id] {
                memo[id] = memo[*then].max(memo[*otherwise]) + 1;
            }
        }
        memo[self.root]
    }

    fn same(&self, a: usize, other: &FiniteThread, b: usize, memo: &mut HashMap<(usize, usize), bool>) -> bool {
        if let Some(&r) = memo.get(&(a, b)) {
            return r;
        }
        let r = match (&self.nodes[a], &other.nodes[b]) {
            (FiniteNode::Stop, FiniteNode::Stop) | (FiniteNode::Dead, FiniteNode::Dead) => true,
            (
                FiniteNode::Branch { action: a1, then: t1, otherwise: e1 },
                FiniteNode::Branch { action: a2, then: t2, otherwise: e2 },
            ) => a1 == a2 && self.same(*t1, other, *t2, memo) && self.same(*e1, other, *e2, memo),
            _ => false,
        };
        memo.insert((a, b), r);
        r
    }

    fn write_term(&self, id: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.nodes[id] {
            FiniteNode::Stop => f.write_str("S"),
            FiniteNode::Dead => f.write_str("D"),
            FiniteNode::Branch { action, then, otherwise } if then == otherwise => {
                write!(f, "{action} o ")?;
                self.write_term(*then, f)
            }
            FiniteNode::Branch { action, then, otherwise } => {
                f.write_str("(")?;
                self.write_term(*then, f)?;
                write!(f, " <| {action} |> ")?;
                self.write_term(*otherwise, f)?;
                f.write_str(")")
            }
        }
    }
}

impl PartialEq for FiniteThread {
    fn eq(&self, other: &Self) -> bool {
        self.same(self.root, other, other.root, &mut HashMap::new())
    }
}

impl Eq for FiniteThread {}

impl fmt::Display for FiniteThread {
    /// Term notation: `S`, `D`, `a o x` for prefixing, `(x <| a |> y)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_term(self.root, f)
    }
}

impl fmt::Debug for FiniteThread {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
