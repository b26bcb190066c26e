//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use ramseq::isa::{BinOp, CmpOp, Src, SrramInstruction, UnOp};
use ramseq::pga::{BasicInstruction, PrimitiveInstruction};
use ramseq::thread::{Action, FiniteNode, FiniteThread};
use ramseq::{BitString, InstructionSequence, MemoryState, Natural, RamMemory};

pub fn seed_rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Element `i` of the sequence, read directly off prefix and period.
pub fn nth(s: &InstructionSequence, i: usize) -> Option<&PrimitiveInstruction> {
    let (p, q) = (s.prefix(), s.period());
    if i < p.len() {
        Some(&p[i])
    } else if q.is_empty() {
        None
    } else {
        Some(&q[(i - p.len()) % q.len()])
    }
}

pub fn unfold(s: &InstructionSequence, n: usize) -> Vec<PrimitiveInstruction> {
    (0..n).map_while(|i| nth(s, i).cloned()).collect()
}

// ---------------------------------------------------------------------------
// Threads as plain shared trees.

#[derive(Debug, Clone, PartialEq)]
pub enum OAct {
    Tau,
    Basic(BasicInstruction),
}

#[derive(Debug)]
pub enum OT {
    S,
    D,
    B(OAct, Rc<OT>, Rc<OT>),
}

pub fn s() -> Rc<OT> {
    Rc::new(OT::S)
}

pub fn d() -> Rc<OT> {
    Rc::new(OT::D)
}

pub fn tau(x: Rc<OT>) -> Rc<OT> {
    Rc::new(OT::B(OAct::Tau, x.clone(), x))
}

/// Thread extraction on a finite sequence, one equation per position,
/// computed from the end backwards:
///
/// |u| for the last u: `a ↦ a∘D`, `+a, −a ↦ a∘D`, `#l ↦ D`, `! ↦ S`;
/// `|a;X| = a∘|X|`, `|+a;X| = |X| ⊴ a ⊵ |#2;X|`, `|−a;X| = |#2;X| ⊴ a ⊵ |X|`,
/// `|!;X| = S`, `|#0;X| = D`, `|#1;X| = |X|`, `|#l+2;u;X| = |#l+1;X|`.
pub fn te_oracle(instrs: &[PrimitiveInstruction]) -> Rc<OT> {
    let n = instrs.len();
    let dead = d();
    // th[i] is |instrs[i..]|, and |#k;X| for k past the end is D.
    let mut th: Vec<Rc<OT>> = vec![dead.clone(); n + 1];
    for i in (0..n).rev() {
        let at = |k: u128| -> Rc<OT> {
            if k < n as u128 {
                th[k as usize].clone()
            } else {
                dead.clone()
            }
        };
        let i128 = i as u128;
        th[i] = match &instrs[i] {
            PrimitiveInstruction::Plain(a) => {
                let x = at(i128 + 1);
                Rc::new(OT::B(OAct::Basic(a.clone()), x.clone(), x))
            }
            PrimitiveInstruction::PosTest(a) => Rc::new(OT::B(OAct::Basic(a.clone()), at(i128 + 1), at(i128 + 2))),
            PrimitiveInstruction::NegTest(a) => Rc::new(OT::B(OAct::Basic(a.clone()), at(i128 + 2), at(i128 + 1))),
            PrimitiveInstruction::Jump(0) => dead.clone(),
            PrimitiveInstruction::Jump(l) => at(i128 + *l as u128),
            PrimitiveInstruction::Halt => s(),
        };
    }
    if n == 0 {
        dead
    } else {
        th[0].clone()
    }
}

/// Number of positions of the unfolding that suffice to reproduce the
/// first `actions` basic actions of any run of `s`.
pub fn unfolding_horizon(s: &InstructionSequence, actions: usize) -> usize {
    let all = s.prefix().iter().chain(s.period());
    let max_jump = all
        .filter_map(|u| match u {
            PrimitiveInstruction::Jump(l) => Some(*l as usize),
            _ => None,
        })
        .max()
        .unwrap_or(0)
        .max(2);
    s.prefix().len() + (actions + 1) * (s.period().len() + 1) * max_jump + s.period().len()
}

/// `πₙ`: cuts the tree off at depth `n` with D; `π₀` is D everywhere.
pub fn oracle_proj(t: &Rc<OT>, n: usize) -> Rc<OT> {
    fn go(t: &Rc<OT>, n: usize, memo: &mut HashMap<(*const OT, usize), Rc<OT>>) -> Rc<OT> {
        if let Some(r) = memo.get(&(Rc::as_ptr(t), n)) {
            return r.clone();
        }
        let r = match &**t {
            _ if n == 0 => d(),
            OT::S | OT::D => t.clone(),
            OT::B(a, x, y) => Rc::new(OT::B(a.clone(), go(x, n - 1, memo), go(y, n - 1, memo))),
        };
        memo.insert((Rc::as_ptr(t), n), r.clone());
        r
    }
    go(t, n, &mut HashMap::new())
}

/// Structural equality of an oracle tree and a finite thread.
pub fn same_thread(t: &Rc<OT>, f: &FiniteThread) -> bool {
    fn go(t: &Rc<OT>, f: &FiniteThread, id: usize, memo: &mut HashMap<(*const OT, usize), bool>) -> bool {
        if let Some(&r) = memo.get(&(Rc::as_ptr(t), id)) {
            return r;
        }
        let r = match (&**t, f.node(id)) {
            (OT::S, FiniteNode::Stop) | (OT::D, FiniteNode::Dead) => true,
            (OT::B(a, x, y), FiniteNode::Branch { action, then, otherwise }) => {
                let act_eq = match (a, action) {
                    (OAct::Tau, Action::Tau) => true,
                    (OAct::Basic(b1), Action::Basic(b2)) => b1 == b2,
                    _ => false,
                };
                act_eq && go(x, f, *then, memo) && go(y, f, *otherwise, memo)
            }
            _ => false,
        };
        memo.insert((Rc::as_ptr(t), id), r);
        r
    }
    go(t, f, f.root(), &mut HashMap::new())
}

pub fn oracle_depth(t: &Rc<OT>) -> usize {
    fn go(t: &Rc<OT>, memo: &mut HashMap<*const OT, usize>) -> usize {
        if let Some(&r) = memo.get(&Rc::as_ptr(t)) {
            return r;
        }
        let r = match &**t {
            OT::S | OT::D => 0,
            OT::B(_, x, y) => 1 + go(x, memo).max(go(y, memo)),
        };
        memo.insert(Rc::as_ptr(t), r);
        r
    }
    go(t, &mut HashMap::new())
}

// ---------------------------------------------------------------------------
// Use and apply, one axiom per match arm.

fn semantics(a: &BasicInstruction, sigma: &MemoryState) -> (bool, MemoryState) {
    match a {
        BasicInstruction::Symbolic(i) => i.step(sigma),
        BasicInstruction::Opaque(o) => {
            let (p, q) = o.semantics().expect("opaque instruction without semantics");
            (p(sigma), q(sigma))
        }
    }
}

pub fn oracle_use(t: &Rc<OT>, m: &RamMemory) -> Rc<OT> {
    match (&**t, m) {
        // S / u = S
        (OT::S, _) => s(),
        // D / u = D
        (OT::D, _) => d(),
        // (τ ∘ x) / u = τ ∘ (x / u)
        (OT::B(OAct::Tau, x, _), _) => tau(oracle_use(x, m)),
        // (x ⊴ I(p,q) ⊵ y) / σ = τ ∘ (x / q(σ)) if p(σ), else τ ∘ (y / q(σ))
        (OT::B(OAct::Basic(a), x, y), RamMemory::Operative(sigma)) => {
            let (r, next) = semantics(a, sigma);
            let branch = if r { x } else { y };
            tau(oracle_use(branch, &RamMemory::Operative(next)))
        }
        // (x ⊴ a ⊵ y) / ↑ = τ ∘ D
        (OT::B(OAct::Basic(_), _, _), RamMemory::Inoperative) => tau(d()),
    }
}

pub fn oracle_apply(t: &Rc<OT>, m: &RamMemory) -> RamMemory {
    match (&**t, m) {
        // S • u = u
        (OT::S, _) => m.clone(),
        // D • u = ↑
        (OT::D, _) => RamMemory::Inoperative,
        // (τ ∘ x) • u = x • u
        (OT::B(OAct::Tau, x, _), _) => oracle_apply(x, m),
        // (x ⊴ I(p,q) ⊵ y) • σ = x • q(σ) if p(σ), else y • q(σ)
        (OT::B(OAct::Basic(a), x, y), RamMemory::Operative(sigma)) => {
            let (r, next) = semantics(a, sigma);
            let branch = if r { x } else { y };
            oracle_apply(branch, &RamMemory::Operative(next))
        }
        // (x ⊴ a ⊵ y) • ↑ = ↑
        (OT::B(OAct::Basic(_), _, _), RamMemory::Inoperative) => RamMemory::Inoperative,
    }
}

// ---------------------------------------------------------------------------
// Bit-oriented cost, recomputed with big naturals.

pub fn big_of_bits(w: &BitString) -> BigUint {
    let mut n = BigUint::default();
    for (k, b) in w.iter().enumerate() {
        if b {
            n.set_bit(k as u64, true);
        }
    }
    n
}

pub fn big_of_natural(n: &Natural) -> BigUint {
    n.to_string().parse().unwrap()
}

pub fn natural_of_big(n: &BigUint) -> Natural {
    n.to_string().parse().unwrap()
}

/// `len(ntob(i))`.
pub fn index_len(i: &BigUint) -> u64 {
    i.bits().max(1)
}

pub fn oracle_boc_src(sigma: &MemoryState, s: &Src) -> u64 {
    match s {
        Src::Imm(i) => index_len(&big_of_natural(i)),
        Src::Dir(i) => index_len(&big_of_natural(i)) + sigma.read(i).len() as u64,
        Src::Ind(i) => {
            let w = sigma.read(i);
            let target = natural_of_big(&big_of_bits(&w));
            index_len(&big_of_natural(i)) + w.len() as u64 + sigma.read(&target).len() as u64
        }
    }
}

pub fn oracle_boc(sigma: &MemoryState, i: &SrramInstruction) -> u64 {
    match i {
        SrramInstruction::Binop { op, s1, s2, .. } => {
            let (c1, c2) = (oracle_boc_src(sigma, s1), oracle_boc_src(sigma, s2));
            if matches!(op, BinOp::Mul | BinOp::Div) {
                c1 * c2
            } else {
                c1.max(c2)
            }
        }
        SrramInstruction::Unop { s1, .. } => oracle_boc_src(sigma, s1),
        SrramInstruction::Cmp { s1, s2, .. } => oracle_boc_src(sigma, s1).max(oracle_boc_src(sigma, s2)),
    }
}

/// `cost_σ(S) = 0` and `cost_σ(x ⊴ a ⊵ y) = boc_σ(a) + cost_{q(σ)}(x or y)`;
/// undefined (None) on D.
pub fn oracle_cost(t: &Rc<OT>, sigma: &MemoryState) -> Option<u64> {
    match &**t {
        OT::S => Some(0),
        OT::D => None,
        OT::B(OAct::Tau, x, _) => oracle_cost(x, sigma),
        OT::B(OAct::Basic(a), x, y) => {
            let BasicInstruction::Symbolic(i) = a else { return None };
            let (r, next) = i.step(sigma);
            let c = oracle_boc(sigma, i);
            oracle_cost(if r { x } else { y }, &next).map(|rest| rest + c)
        }
    }
}

// ---------------------------------------------------------------------------
// Random programs and states.

pub fn random_bits(rng: &mut ChaCha8Rng, max_len: usize) -> BitString {
    let len = rng.gen_range(0..=max_len);
    BitString::from_bits((0..len).map(|_| rng.gen_bool(0.5)))
}

pub fn random_state(rng: &mut ChaCha8Rng, registers: u64, max_len: usize) -> MemoryState {
    let count = rng.gen_range(0..=registers);
    MemoryState::from_pairs((0..count).map(|_| (rng.gen_range(0..registers), random_bits(rng, max_len))))
}

fn random_src(rng: &mut ChaCha8Rng, registers: u64, max_imm: u64) -> String {
    match rng.gen_range(0..3) {
        0 => format!("#{}", rng.gen_range(0..=max_imm)),
        1 => format!("{}", rng.gen_range(0..registers)),
        _ => format!("@{}", rng.gen_range(0..registers)),
    }
}

fn random_dst(rng: &mut ChaCha8Rng, registers: u64) -> String {
    if rng.gen_bool(0.8) {
        format!("{}", rng.gen_range(0..registers))
    } else {
        format!("@{}", rng.gen_range(0..registers))
    }
}

pub fn random_operate(rng: &mut ChaCha8Rng, registers: u64, max_imm: u64) -> SrramInstruction {
    let text = if rng.gen_bool(0.5) {
        let op = BinOp::ALL[rng.gen_range(0..BinOp::ALL.len())];
        format!(
            "{}:{}:{}:{}",
            op.name(),
            random_src(rng, registers, max_imm),
            random_src(rng, registers, max_imm),
            random_dst(rng, registers)
        )
    } else {
        let op = UnOp::ALL[rng.gen_range(0..UnOp::ALL.len())];
        format!("{}:{}:{}", op.name(), random_src(rng, registers, max_imm), random_dst(rng, registers))
    };
    text.parse().unwrap()
}

pub fn random_comparison(rng: &mut ChaCha8Rng, registers: u64, max_imm: u64) -> SrramInstruction {
    let op = CmpOp::ALL[rng.gen_range(0..CmpOp::ALL.len())];
    format!("{}:{}:{}", op.name(), random_src(rng, registers, max_imm), random_src(rng, registers, max_imm))
        .parse()
        .unwrap()
}

pub fn random_instruction(rng: &mut ChaCha8Rng, registers: u64, max_imm: u64) -> SrramInstruction {
    if rng.gen_bool(0.3) {
        random_comparison(rng, registers, max_imm)
    } else {
        random_operate(rng, registers, max_imm)
    }
}

/// Any primitive instruction over the instruction set.
pub fn random_primitive(rng: &mut ChaCha8Rng, registers: u64, max_imm: u64, max_jump: u64) -> PrimitiveInstruction {
    let sym = |rng: &mut ChaCha8Rng| BasicInstruction::Symbolic(random_instruction(rng, registers, max_imm));
    match rng.gen_range(0..10) {
        0..=3 => PrimitiveInstruction::Plain(sym(rng)),
        4 | 5 => PrimitiveInstruction::PosTest(sym(rng)),
        6 => PrimitiveInstruction::NegTest(sym(rng)),
        7 | 8 => PrimitiveInstruction::Jump(rng.gen_range(0..=max_jump)),
        _ => PrimitiveInstruction::Halt,
    }
}

/// A program of the form `(t₁;…;tₙ)*` with units `a`, `+cmp;#l`, `#l`, `!`.
pub fn random_srram_program(rng: &mut ChaCha8Rng, units: usize, registers: u64, max_imm: u64) -> InstructionSequence {
    let mut body = Vec::new();
    for _ in 0..units {
        match rng.gen_range(0..10) {
            0..=4 => body
                .push(PrimitiveInstruction::Plain(BasicInstruction::Symbolic(random_operate(rng, registers, max_imm)))),
            5 | 6 => {
                body.push(PrimitiveInstruction::PosTest(BasicInstruction::Symbolic(random_comparison(
                    rng, registers, max_imm,
                ))));
                body.push(PrimitiveInstruction::Jump(rng.gen_range(1..=4)));
            }
            7 | 8 => body.push(PrimitiveInstruction::Jump(rng.gen_range(1..=4))),
            _ => body.push(PrimitiveInstruction::Halt),
        }
    }
    InstructionSequence::new(Vec::new(), body).unwrap()
}

/// Names over a tiny alphabet, for sequence-level tests.
pub fn random_abstract(rng: &mut ChaCha8Rng, max_jump: u64) -> PrimitiveInstruction {
    let name = |rng: &mut ChaCha8Rng| BasicInstruction::named(["a", "b"][rng.gen_range(0..2)]);
    match rng.gen_range(0..8) {
        0 | 1 => PrimitiveInstruction::Plain(name(rng)),
        2 => PrimitiveInstruction::PosTest(name(rng)),
        3 => PrimitiveInstruction::NegTest(name(rng)),
        4..=6 => PrimitiveInstruction::Jump(rng.gen_range(0..=max_jump)),
        _ => PrimitiveInstruction::Halt,
    }
}

/// A sequence with at most `max_total` instructions in prefix and period.
pub fn random_abstract_sequence(rng: &mut ChaCha8Rng, max_total: usize, max_jump: u64) -> InstructionSequence {
    let total = rng.gen_range(1..=max_total);
    let period_len = if rng.gen_bool(0.2) { 0 } else { rng.gen_range(1..=total) };
    let all: Vec<_> = (0..total).map(|_| random_abstract(rng, max_jump)).collect();
    let (prefix, period) = all.split_at(total - period_len);
    InstructionSequence::new(prefix.to_vec(), period.to_vec()).unwrap()
}

/// A counting loop: random operate instructions on registers
/// `0..registers`, then register `registers` is incremented and the loop
/// exits once it exceeds a random bound.
pub fn random_srram_loop(rng: &mut ChaCha8Rng, units: usize, registers: u64, max_imm: u64) -> InstructionSequence {
    let mut body: Vec<PrimitiveInstruction> = (0..units)
        .map(|_| PrimitiveInstruction::Plain(BasicInstruction::Symbolic(random_operate(rng, registers, max_imm))))
        .collect();
    let c = registers;
    let bound = rng.gen_range(0..=max_imm);
    let sym = |t: String| BasicInstruction::Symbolic(t.parse().unwrap());
    body.push(PrimitiveInstruction::Plain(sym(format!("add:{c}:#1:{c}"))));
    body.push(PrimitiveInstruction::PosTest(sym(format!("gt:{c}:#{bound}"))));
    body.push(PrimitiveInstruction::Jump(2));
    body.push(PrimitiveInstruction::Jump(2));
    body.push(PrimitiveInstruction::Halt);
    InstructionSequence::new(Vec::new(), body).unwrap()
}
