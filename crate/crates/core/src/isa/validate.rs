//! Randomized refutation of the single-register conditions on basic RAM
//! instructions `I(p, q)`:
//!
//! * (a) the reply `p(σ)` depends on at most one register,
//! * (b) `q` changes at most one register,
//! * (c) if both happen, it is the same register.
//!
//! These quantify over all states and all replacement contents, so the
//! validator can only search for counterexamples inside a window of small
//! registers and short contents.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::bits::{arith, bton, ArithOp, BitString};
use crate::memory::MemoryState;
use crate::natural::Natural;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidatorConfig {
    pub trials: usize,
    /// Registers `0..window` are sampled and perturbed; contents have at
    /// most `window` bits.
    pub window: usize,
    pub seed: u64,
}

impl Default for ValidatorConfig {
    fn default() -> Self {
        ValidatorConfig { trials: 10_000, window: 4, seed: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    A,
    B,
    C,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub witness: MemoryState,
    /// For (a): registers the reply was seen to depend on. For (b):
    /// registers changed. For (c): reply registers followed by changed ones.
    pub registers: Vec<Natural>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionReport {
    NoViolation { trials: usize },
    Violation(Violation),
}

impl ConditionReport {
    pub fn violation(&self) -> Option<&Violation> {
        match self {
            ConditionReport::Violation(v) => Some(v),
            ConditionReport::NoViolation { .. } => None,
        }
    }
}

fn random_bits(rng: &mut StdRng, max_len: usize) -> BitString {
    let len = rng.gen_range(0..=max_len);
    BitString::from_bits((0..len).map(|_| rng.gen_bool(0.5)))
}

/// Replacement contents tried for register `i` of `sigma`.
fn perturbations(sigma: &MemoryState, i: &Natural, rng: &mut StdRng, window: usize) -> Vec<BitString> {
    let cur = sigma.read(i);
    let mut out: Vec<BitString> = vec![BitString::empty(), "0".parse().unwrap(), "1".parse().unwrap()];
    for k in 0..cur.len() {
        out.push(BitString::from_bits(cur.iter().enumerate().map(|(j, b)| if j == k { !b } else { b })));
    }
    let mut longer = cur.clone();
    longer.push(false);
    out.push(longer);
    let one: BitString = "1".parse().unwrap();
    out.push(arith(ArithOp::Add, &cur, &one));
    out.push(arith(ArithOp::Monus, &cur, &one));
    // Copying other registers' contents exposes comparisons between registers.
    out.extend(sigma.iter().map(|(_, w)| w.clone()));
    for _ in 0..2 {
        out.push(random_bits(rng, window));
    }
    out.retain(|w| *w != cur);
    out
}

pub fn validate_conditions<P, Q>(p: P, q: Q, config: ValidatorConfig) -> ConditionReport
where
    P: Fn(&MemoryState) -> bool,
    Q: Fn(&MemoryState) -> MemoryState,
{
    let mut rng = StdRng::seed_from_u64(config.seed);
    for _ in 0..config.trials {
        let mut sigma = MemoryState::new();
        for i in 0..config.window {
            if rng.gen_bool(0.75) {
                sigma.set(Natural::from(i), random_bits(&mut rng, config.window));
            }
        }
        // Registers named by contents are reachable through indirection.
        let mut candidates: BTreeSet<Natural> = (0..config.window).map(Natural::from).collect();
        candidates.extend(sigma.iter().map(|(_, w)| bton(w)).filter(|n| n.bit_len() <= 16));

        let reply = p(&sigma);
        let mut influencing = Vec::new();
        for i in &candidates {
            let moved = perturbations(&sigma, i, &mut rng, config.window)
                .into_iter()
                .any(|w| p(&sigma.write(i.clone(), w)) != reply);
            if moved {
                influencing.push(i.clone());
            }
        }
        if influencing.len() > 1 {
            return ConditionReport::Violation(Violation {
                condition: Condition::A,
                witness: sigma,
                registers: influencing,
            });
        }

        let changed = sigma.differing_registers(&q(&sigma));
        if changed.len() > 1 {
            return ConditionReport::Violation(Violation {
                condition: Condition::B,
                witness: sigma,
                registers: changed,
            });
        }

        if let (Some(r), Some(c)) = (influencing.first(), changed.first()) {
            if r != c {
                return ConditionReport::Violation(Violation {
                    condition: Condition::C,
                    witness: sigma,
                    registers: vec![r.clone(), c.clone()],
                });
            }
        }
    }
    ConditionReport::NoViolation { trials: config.trials }
}
