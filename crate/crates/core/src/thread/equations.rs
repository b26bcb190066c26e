//! Regular threads from finite systems of recursion equations.

use std::collections::HashMap;

use super::{Action, Node, RegularThread, ThreadError};

/// Right-hand side of a recursion equation `X = t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThreadTerm {
    Stop,
    Dead,
    Var(String),
    Branch(Action, Box<ThreadTerm>, Box<ThreadTerm>),
}

impl ThreadTerm {
    pub fn var(name: &str) -> Self {
        ThreadTerm::Var(name.to_string())
    }

    pub fn branch(action: Action, then: ThreadTerm, otherwise: ThreadTerm) -> Self {
        ThreadTerm::Branch(action, Box::new(then), Box::new(otherwise))
    }

    /// `α ∘ t`.
    pub fn prefix(action: Action, then: ThreadTerm) -> Self {
        Self::branch(action, then.clone(), then)
    }
}

#[derive(Clone, Copy)]
enum Ref {
    Branch(usize),
    Leaf(usize),
    Var(usize),
}

struct Compiler<'a> {
    index: &'a HashMap<String, usize>,
    branches: Vec<(Action, Ref, Ref)>,
    leaves: Vec<Node>,
}

impl Compiler<'_> {
    fn compile(&mut self, t: &ThreadTerm) -> Result<Ref, ThreadError> {
        Ok(match t {
            ThreadTerm::Stop => {
                self.leaves.push(Node::Stop);
                Ref::Leaf(self.leaves.len() - 1)
            }
            ThreadTerm::Dead => {
                self.leaves.push(Node::Dead);
                Ref::Leaf(self.leaves.len() - 1)
            }
            ThreadTerm::Var(v) => Ref::Var(*self.index.get(v).ok_or_else(|| ThreadError::UnboundVariable(v.clone()))?),
            ThreadTerm::Branch(a, x, y) => {
                let slot = self.branches.len();
                self.branches.push((a.clone(), Ref::Leaf(0), Ref::Leaf(0)));
                let x = self.compile(x)?;
                let y = self.compile(y)?;
                self.branches[slot].1 = x;
                self.branches[slot].2 = y;
                Ref::Branch(slot)
            }
        })
    }
}

impl RegularThread {
    /// The solution for `root` of the system `{Xᵢ = tᵢ}`. Variables that
    /// only lead to other variables without an action in between
    /// (`X = Y, Y = X`) denote D.
    pub fn from_equations(equations: &[(&str, ThreadTerm)], root: &str) -> Result<Self, ThreadError> {
        let mut index = HashMap::new();
        for (i, (name, _)) in equations.iter().enumerate() {
            if index.insert(name.to_string(), i).is_some() {
                return Err(ThreadError::DuplicateEquation(name.to_string()));
            }
        }
        let root_var = *index.get(root).ok_or_else(|| ThreadError::UnboundVariable(root.to_string()))?;

        let mut c = Compiler { index: &index, branches: Vec::new(), leaves: Vec::new() };
        let bodies = equations.iter().map(|(_, term)| c.compile(term)).collect::<Result<Vec<_>, _>>()?;

        // Branch nodes first, then leaves, then one extra D for alias cycles.
        let branch_count = c.branches.len();
        let dead_id = branch_count + c.leaves.len();
        let resolve = |start: Ref| -> usize {
            let mut seen = vec![false; bodies.len()];
            let mut cur = start;
            loop {
                match cur {
                    Ref::Branch(b) => return b,
                    Ref::Leaf(l) => return branch_count + l,
                    Ref::Var(v) => {
                        if std::mem::replace(&mut seen[v], true) {
                            return dead_id;
                        }
                        cur = bodies[v];
                    }
                }
            }
        };

        let mut nodes: Vec<Node> = c
            .branches
            .iter()
            .map(|(a, x, y)| Node::Branch { action: a.clone(), then: resolve(*x), otherwise: resolve(*y) })
            .collect();
        nodes.extend(c.leaves);
        nodes.push(Node::Dead);
        RegularThread::from_nodes(nodes, resolve(Ref::Var(root_var)))
    }
}
