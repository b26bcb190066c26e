mod common;

use proptest::prelude::*;

use common::*;
use ramseq::exec::{apply, run, use_thread, Outcome, RunConfig, RunLimits};
use ramseq::pga::PrimitiveInstruction;
use ramseq::thread::FiniteNode;
use ramseq::{extract, InstructionSequence, MemoryState, RamMemory};

fn program() -> impl Strategy<Value = (InstructionSequence, MemoryState)> {
    any::<u64>().prop_map(|seed| {
        let mut rng = seed_rng(seed);
        let units = rand::Rng::gen_range(&mut rng, 0..=4);
        let s = if rand::Rng::gen_bool(&mut rng, 0.5) {
            random_srram_loop(&mut rng, units, 4, 15)
        } else {
            random_srram_program(&mut rng, units + 2, 4, 15)
        };
        (s, random_state(&mut rng, 4, 4))
    })
}

fn repetition_free() -> impl Strategy<Value = (Vec<PrimitiveInstruction>, RamMemory)> {
    any::<u64>().prop_map(|seed| {
        let mut rng = seed_rng(seed);
        let len = rand::Rng::gen_range(&mut rng, 1..=10);
        let instrs = (0..len).map(|_| random_primitive(&mut rng, 4, 15, 5)).collect();
        let m = if rand::Rng::gen_bool(&mut rng, 0.1) {
            RamMemory::Inoperative
        } else {
            random_state(&mut rng, 4, 4).into()
        };
        (instrs, m)
    })
}

fn config(max_steps: u64, input_count: usize, trace: bool) -> RunConfig {
    RunConfig { limits: RunLimits { max_steps, max_total_bits: Some(2048) }, input_count, trace }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn engine_agrees_with_axioms((instrs, m) in repetition_free()) {
        let t = extract(&InstructionSequence::finite(instrs.clone()).unwrap());
        let te = te_oracle(&instrs);
        let limits = RunLimits::steps(100);
        prop_assert_eq!(apply(&t, m.clone(), limits).unwrap(), oracle_apply(&te, &m));
        let used = use_thread(&t, m.clone(), limits).unwrap().to_finite().unwrap();
        prop_assert!(same_thread(&oracle_use(&te, &m), &used));
    }

    #[test]
    fn raising_the_limit_keeps_verdicts((s, sigma) in program(), k in 1u64..60) {
        let low = run(&s, sigma.clone(), config(k, 0, false)).unwrap();
        let high = run(&s, sigma, config(4 * k, 0, false)).unwrap();
        if low.report.outcome != Outcome::StepLimit {
            prop_assert_eq!(low.report, high.report);
            prop_assert_eq!(low.memory, high.memory);
        } else {
            prop_assert!(high.report.uniform_steps >= low.report.uniform_steps);
        }
    }

    #[test]
    fn use_and_apply_agree((s, sigma) in program()) {
        let t = extract(&s);
        let limits = RunLimits::steps(200);
        let (Ok(applied), Ok(used)) = (apply(&t, sigma.clone().into(), limits), use_thread(&t, sigma.clone().into(), limits)) else {
            return Ok(());
        };
        let used = used.to_finite().unwrap();
        let mut id = used.root();
        let mut taus = 0;
        while let FiniteNode::Branch { then, .. } = used.node(id) {
            id = *then;
            taus += 1;
        }
        let r = run(&s, sigma, config(200, 0, false)).unwrap();
        prop_assert_eq!(&r.memory, &applied);
        match used.node(id) {
            FiniteNode::Stop => prop_assert_eq!(r.report.outcome, Outcome::Halted),
            _ => prop_assert_eq!(r.report.outcome, Outcome::Dead),
        }
        prop_assert_eq!(taus, r.report.uniform_steps);
    }

    #[test]
    fn space_skips_inputs_and_empty_registers((s, sigma) in program(), inputs in 0usize..4) {
        let r = run(&s, sigma, config(100, inputs, true)).unwrap();
        let oracle = r.trace.iter().map(|c| {
            c.memory.iter()
                .filter(|(i, w)| {
                    let i = big_of_natural(i);
                    !w.is_empty() && !(i >= 1u32.into() && i <= (inputs as u32).into())
                })
                .map(|(i, w)| index_len(&big_of_natural(i)) + w.len() as u64)
                .sum::<u64>()
        }).max().unwrap();
        prop_assert_eq!(r.report.peak_space, oracle);
        prop_assert_eq!(r.trace.len() as u64, r.report.uniform_steps + 1);
        let changed = r.trace.windows(2).any(|w| {
            (1..=inputs as u64).any(|i| {
                let i = ramseq::Natural::from(i);
                w[0].memory.read(&i) != w[1].memory.read(&i)
            })
        });
        prop_assert_eq!(changed, r.report.input_registers_changed);
    }

    #[test]
    fn bit_cost_sums_instruction_costs((s, sigma) in program()) {
        let r = run(&s, sigma.clone(), config(100, 0, true)).unwrap();
        prop_assume!(r.report.outcome == Outcome::Halted);
        let te = te_oracle(&unfold(&s, unfolding_horizon(&s, r.report.uniform_steps as usize)));
        prop_assert_eq!(oracle_cost(&te, &sigma), Some(r.report.bit_cost));
    }
}
