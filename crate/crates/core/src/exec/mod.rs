//! Running threads against RAM memories: the use and apply operators, and
//! runs instrumented with time and space measures.

mod check;
mod cost;

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::bits::BitString;
use crate::extract::extract;
use crate::memory::{is_input, register_space, MemoryState, RamMemory};
use crate::natural::Natural;
use crate::pga::{BasicInstruction, InstructionSequence};
use crate::thread::{Action, Node, NodeId, RegularThread};

pub use check::{
    check_computes, parse_check_spec, CaseResult, CheckCase, CheckReport, CheckSpec, CheckSpecError, Measure,
    Polynomial, Verdict,
};
pub use cost::{boc_instr, boc_src};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunLimits {
    /// Number of basic actions allowed.
    pub max_steps: u64,
    /// Bound on the total number of content bits held in memory.
    pub max_total_bits: Option<u64>,
}

impl Default for RunLimits {
    fn default() -> Self {
        RunLimits { max_steps: 1_000_000, max_total_bits: None }
    }
}

impl RunLimits {
    pub fn steps(max_steps: u64) -> Self {
        RunLimits { max_steps, max_total_bits: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Halted,
    Dead,
    StepLimit,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Halted => "halted",
            Outcome::Dead => "dead",
            Outcome::StepLimit => "step_limit",
        }
    }
}

/// Accounting for one run. Unless the run halted, the counters are what had
/// accumulated when it stopped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CostReport {
    pub uniform_steps: u64,
    pub bit_cost: u64,
    pub peak_space: u64,
    pub outcome: Outcome,
    pub input_registers_changed: bool,
}

/// A control point of the thread together with the memory state there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Configuration {
    pub node: NodeId,
    pub memory: MemoryState,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExecError {
    #[error("step limit reached after {steps} basic actions")]
    StepLimit { steps: u64 },
    #[error("instruction {0:?} has no semantics attached")]
    Unbound(String),
    #[error("bit-oriented cost is undefined for instruction {0:?}")]
    UndefinedCost(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum End {
    Stop,
    Dead,
    /// A cycle of τ actions with no basic action on it.
    TauCycle,
    /// A basic action met an inoperative memory.
    Unavailable,
    StepLimit,
}

struct Walk {
    memory: RamMemory,
    /// Number of τ actions the use result starts with.
    taus: u64,
    steps: u64,
    end: End,
}

/// Measures collected during a run.
struct Meter {
    input_count: usize,
    bit_cost: u64,
    space: u64,
    peak_space: u64,
    inputs_changed: bool,
    trace: Option<Vec<Configuration>>,
}

impl Meter {
    fn new(sigma: &MemoryState, node: NodeId, input_count: usize, trace: bool) -> Self {
        let space = sigma.space(input_count);
        Meter {
            input_count,
            bit_cost: 0,
            space,
            peak_space: space,
            inputs_changed: false,
            trace: trace.then(|| vec![Configuration { node, memory: sigma.clone() }]),
        }
    }

    fn record(&mut self, sigma: &MemoryState, node: NodeId, changes: &[(Natural, BitString)]) {
        for (i, old) in changes {
            let new = sigma.read(i);
            if is_input(i, self.input_count) {
                self.inputs_changed |= *old != new;
                continue;
            }
            if !old.is_empty() {
                self.space -= register_space(i, old);
            }
            if !new.is_empty() {
                self.space += register_space(i, &new);
            }
        }
        self.peak_space = self.peak_space.max(self.space);
        if let Some(trace) = &mut self.trace {
            trace.push(Configuration { node, memory: sigma.clone() });
        }
    }
}

/// Performs `a` on `σ` in place. Returns the reply and the previous
/// contents of every register that may have changed.
fn perform(a: &BasicInstruction, sigma: &mut MemoryState) -> Result<(bool, Vec<(Natural, BitString)>), ExecError> {
    match a {
        BasicInstruction::Symbolic(i) => {
            let reply = i.reply(sigma);
            let changes = match i.effect(sigma) {
                Some(w) => {
                    let old = sigma.set(w.register.clone(), w.value);
                    vec![(w.register, old)]
                }
                None => Vec::new(),
            };
            Ok((reply, changes))
        }
        BasicInstruction::Opaque(o) => {
            let (p, q) = o.semantics().ok_or_else(|| ExecError::Unbound(o.name().to_string()))?;
            let reply = p(sigma);
            let next = q(sigma);
            let changes = sigma
                .differing_registers(&next)
                .into_iter()
                .map(|i| {
                    let old = sigma.read(&i);
                    (i, old)
                })
                .collect();
            *sigma = next;
            Ok((reply, changes))
        }
    }
}

fn drive(
    t: &RegularThread,
    mut memory: RamMemory,
    limits: RunLimits,
    mut meter: Option<&mut Meter>,
) -> Result<Walk, ExecError> {
    let mut node = t.root();
    let mut taus = 0u64;
    let mut steps = 0u64;
    let mut total_bits = memory.state().map_or(0, |s| s.total_bits() as u64);
    // τ nodes passed since the last basic action; revisiting one is a τ cycle.
    let mut passed = HashSet::new();
    let end = loop {
        match t.node(node) {
            Node::Stop => break End::Stop,
            Node::Dead => break End::Dead,
            Node::Branch { action: Action::Tau, then, .. } => {
                if !passed.insert(node) {
                    break End::TauCycle;
                }
                taus += 1;
                node = *then;
            }
            Node::Branch { action: Action::Basic(a), then, otherwise } => {
                let RamMemory::Operative(sigma) = &mut memory else {
                    taus += 1;
                    break End::Unavailable;
                };
                if steps >= limits.max_steps {
                    break End::StepLimit;
                }
                let cost = match &meter {
                    Some(_) => boc_basic(sigma, a)?,
                    None => 0,
                };
                let (reply, changes) = perform(a, sigma)?;
                steps += 1;
                taus += 1;
                passed.clear();
                node = if reply { *then } else { *otherwise };
                for (i, old) in &changes {
                    total_bits = total_bits + sigma.read(i).len() as u64 - old.len() as u64;
                }
                if let Some(m) = meter.as_deref_mut() {
                    m.bit_cost = m.bit_cost.saturating_add(cost);
                    m.record(sigma, node, &changes);
                }
                if limits.max_total_bits.is_some_and(|max| total_bits > max) {
                    break End::StepLimit;
                }
            }
        }
    };
    Ok(Walk { memory, taus, steps, end })
}

fn boc_basic(sigma: &MemoryState, a: &BasicInstruction) -> Result<u64, ExecError> {
    match a {
        BasicInstruction::Symbolic(i) => Ok(boc_instr(sigma, i)),
        BasicInstruction::Opaque(o) => Err(ExecError::UndefinedCost(o.name().to_string())),
    }
}

/// `t • m`: the memory left behind once `t` has run on `m`. Reaching D or a
/// cycle of τ actions leaves the memory inoperative.
pub fn apply(t: &RegularThread, m: RamMemory, limits: RunLimits) -> Result<RamMemory, ExecError> {
    let w = drive(t, m, limits, None)?;
    match w.end {
        End::Stop => Ok(w.memory),
        End::Dead | End::TauCycle | End::Unavailable => Ok(RamMemory::Inoperative),
        End::StepLimit => Err(ExecError::StepLimit { steps: w.steps }),
    }
}

/// `t / m`: the thread left over once `m` has answered every basic action
/// of `t`. Each answered action turns into τ.
pub fn use_thread(t: &RegularThread, m: RamMemory, limits: RunLimits) -> Result<RegularThread, ExecError> {
    let w = drive(t, m, limits, None)?;
    let last = match w.end {
        End::Stop => Node::Stop,
        End::Dead | End::Unavailable => Node::Dead,
        // τ^k ∘ τ^ω is τ^ω.
        End::TauCycle => return Ok(tau_loop()),
        End::StepLimit => return Err(ExecError::StepLimit { steps: w.steps }),
    };
    Ok(tau_chain(w.taus, last))
}

/// `τⁿ ∘ x` for `x` either S or D.
fn tau_chain(n: u64, last: Node) -> RegularThread {
    let n = n as usize;
    let mut nodes: Vec<Node> =
        (0..n).map(|k| Node::Branch { action: Action::Tau, then: k + 1, otherwise: k + 1 }).collect();
    nodes.push(last);
    RegularThread::from_nodes(nodes, 0).expect("chain ids are in range")
}

fn tau_loop() -> RegularThread {
    RegularThread::from_nodes(vec![Node::Branch { action: Action::Tau, then: 0, otherwise: 0 }], 0)
        .expect("loop ids are in range")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunConfig {
    pub limits: RunLimits,
    /// Registers `1..=input_count` hold the input and are excluded from
    /// space accounting.
    pub input_count: usize,
    pub trace: bool,
}

#[derive(Debug, Clone)]
pub struct RunResult {
    /// Inoperative if the run reached inaction; the state at truncation if
    /// the step limit was hit.
    pub memory: RamMemory,
    pub report: CostReport,
    pub trace: Vec<Configuration>,
}

/// Runs the thread extracted from `s` on `σ0`, measuring time and space.
pub fn run(s: &InstructionSequence, sigma0: MemoryState, config: RunConfig) -> Result<RunResult, ExecError> {
    run_thread(&extract(s), sigma0, config)
}

pub fn run_thread(t: &RegularThread, sigma0: MemoryState, config: RunConfig) -> Result<RunResult, ExecError> {
    let mut meter = Meter::new(&sigma0, t.root(), config.input_count, config.trace);
    let w = drive(t, RamMemory::Operative(sigma0), config.limits, Some(&mut meter))?;
    let (outcome, memory) = match w.end {
        End::Stop => (Outcome::Halted, w.memory),
        End::StepLimit => (Outcome::StepLimit, w.memory),
        End::Dead | End::TauCycle | End::Unavailable => (Outcome::Dead, RamMemory::Inoperative),
    };
    Ok(RunResult {
        memory,
        report: CostReport {
            uniform_steps: w.steps,
            bit_cost: meter.bit_cost,
            peak_space: meter.peak_space,
            outcome,
            input_registers_changed: meter.inputs_changed,
        },
        trace: meter.trace.unwrap_or_default(),
    })
}
