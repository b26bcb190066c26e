//! Checking that a program computes a given partial function within time
//! and space bounds, on a finite set of cases.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::{run, CostReport, ExecError, Outcome, RunConfig, RunLimits};
use crate::bits::BitString;
use crate::memory::{MemoryState, RamMemory};
use crate::natural::Natural;
use crate::pga::InstructionSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    #[default]
    Uniform,
    BitOriented,
}

/// `Σ cᵢ·nⁱ` with coefficients `c₀, c₁, …`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Polynomial {
    pub coefficients: Vec<u64>,
}

impl Polynomial {
    pub fn new(coefficients: Vec<u64>) -> Self {
        Polynomial { coefficients }
    }

    /// Saturates at `u128::MAX`.
    pub fn eval(&self, n: u64) -> u128 {
        self.coefficients.iter().rev().fold(0u128, |acc, &c| acc.saturating_mul(n as u128).saturating_add(c as u128))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(u64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckCase {
    pub inputs: Vec<BitString>,
    /// `None` when the function is undefined on these inputs.
    pub expected: Option<BitString>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CheckSpec {
    pub cases: Vec<CheckCase>,
    pub time: Option<Polynomial>,
    pub space: Option<Polynomial>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct CheckSpecError {
    pub line: usize,
    pub message: String,
}

fn parse_word(text: &str) -> Result<BitString, String> {
    match text {
        "" | "e" | "ε" => Ok(BitString::empty()),
        _ => text.parse().map_err(|_| format!("invalid bit string {text:?}")),
    }
}

fn parse_polynomial(text: &str) -> Result<Polynomial, String> {
    text.split(',')
        .map(|c| c.trim().parse::<u64>().map_err(|_| format!("invalid coefficient {:?}", c.trim())))
        .collect::<Result<_, _>>()
        .map(Polynomial::new)
}

/// Parses the check file format:
///
/// ```text
/// # identity
/// T: 1
/// S: 1,1
/// in: 110 ; out: 110
/// in: e ; out: undefined
/// ```
///
/// `in:` lists the inputs separated by commas (`e` or `ε` for the empty
/// string, nothing at all for no inputs).
pub fn parse_check_spec(text: &str) -> Result<CheckSpec, CheckSpecError> {
    let mut spec = CheckSpec::default();
    for (n, raw) in text.lines().enumerate() {
        let err = |message: String| CheckSpecError { line: n + 1, message };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("T:") {
            spec.time = Some(parse_polynomial(rest).map_err(err)?);
        } else if let Some(rest) = line.strip_prefix("S:") {
            spec.space = Some(parse_polynomial(rest).map_err(err)?);
        } else if let Some(rest) = line.strip_prefix("in:") {
            let (ins, out) = rest.split_once(';').ok_or_else(|| err("expected ';' before out:".into()))?;
            let out = out.trim().strip_prefix("out:").ok_or_else(|| err("expected out:".into()))?.trim();
            let ins = ins.trim();
            let inputs = if ins.is_empty() {
                Vec::new()
            } else {
                ins.split(',').map(|w| parse_word(w.trim())).collect::<Result<_, _>>().map_err(err)?
            };
            let expected = match out {
                "undefined" => None,
                w => Some(parse_word(w).map_err(err)?),
            };
            spec.cases.push(CheckCase { inputs, expected });
        } else {
            return Err(err(format!("unrecognized line {line:?}")));
        }
    }
    Ok(spec)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail(String),
    Inconclusive(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub verdict: Verdict,
    pub report: CostReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub cases: Vec<CaseResult>,
}

impl CheckReport {
    /// Fail if any case failed, otherwise inconclusive if any case was,
    /// otherwise pass.
    pub fn overall(&self) -> Verdict {
        let mut overall = Verdict::Pass;
        for c in &self.cases {
            match &c.verdict {
                Verdict::Fail(r) => return Verdict::Fail(r.clone()),
                Verdict::Inconclusive(r) if overall == Verdict::Pass => overall = Verdict::Inconclusive(r.clone()),
                _ => {}
            }
        }
        overall
    }
}

fn judge(case: &CheckCase, spec: &CheckSpec, measure: Measure, report: &CostReport, memory: &RamMemory) -> Verdict {
    let size: u64 = case.inputs.iter().map(|w| w.len() as u64).sum();
    let Some(expected) = &case.expected else {
        return match report.outcome {
            Outcome::Dead => Verdict::Pass,
            Outcome::Halted => Verdict::Fail("halted where the function is undefined".into()),
            Outcome::StepLimit => Verdict::Inconclusive("step limit reached before inaction was shown".into()),
        };
    };
    let state = match (report.outcome, memory) {
        (Outcome::Halted, RamMemory::Operative(s)) => s,
        (Outcome::StepLimit, _) => return Verdict::Inconclusive("step limit reached".into()),
        _ => return Verdict::Fail("reached inaction where the function is defined".into()),
    };
    let out = state.read(&Natural::zero());
    if out != *expected {
        return Verdict::Fail(format!("register 0 holds {out:?}, expected {expected:?}"));
    }
    if let Some(t) = &spec.time {
        let (name, used) = match measure {
            Measure::Uniform => ("uniform time", report.uniform_steps),
            Measure::BitOriented => ("bit cost", report.bit_cost),
        };
        let bound = t.eval(size);
        if used as u128 > bound {
            return Verdict::Fail(format!("{name} {used} exceeds bound {bound}"));
        }
    }
    if let Some(s) = &spec.space {
        if report.input_registers_changed {
            return Verdict::Fail("input registers were changed".into());
        }
        let bound = s.eval(size);
        if report.peak_space as u128 > bound {
            return Verdict::Fail(format!("space {} exceeds bound {bound}", report.peak_space));
        }
    }
    Verdict::Pass
}

/// Runs every case with its inputs in registers `1..=n` and judges the
/// result. Cases run in parallel; results keep the order of the cases.
pub fn check_computes(
    s: &InstructionSequence,
    spec: &CheckSpec,
    measure: Measure,
    limits: RunLimits,
) -> Result<CheckReport, ExecError> {
    let cases = spec
        .cases
        .par_iter()
        .map(|case| {
            let sigma0 =
                MemoryState::from_pairs(case.inputs.iter().enumerate().map(|(k, w)| (k as u64 + 1, w.clone())));
            let config = RunConfig { limits, input_count: case.inputs.len(), trace: false };
            let r = run(s, sigma0, config)?;
            let verdict = judge(case, spec, measure, &r.report, &r.memory);
            Ok(CaseResult { verdict, report: r.report })
        })
        .collect::<Result<Vec<_>, ExecError>>()?;
    Ok(CheckReport { cases })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pga::tests::seq;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn limits() -> RunLimits {
        RunLimits::steps(1000)
    }

    #[test]
    fn polynomial_eval() {
        assert_eq!(Polynomial::new(vec![1, 1]).eval(3), 4);
        assert_eq!(Polynomial::new(vec![0, 0, 2]).eval(5), 50);
        assert_eq!(Polynomial::new(vec![]).eval(5), 0);
        assert_eq!(Polynomial::new(vec![u64::MAX; 4]).eval(u64::MAX), u128::MAX);
    }

    #[test]
    fn identity_within_bounds() {
        let spec = CheckSpec {
            cases: vec![CheckCase { inputs: vec![bs("110")], expected: Some(bs("110")) }],
            time: Some(Polynomial::new(vec![1])),
            space: Some(Polynomial::new(vec![1, 1])),
        };
        let r = check_computes(&seq("(mov:1:0;!)*"), &spec, Measure::Uniform, limits()).unwrap();
        assert_eq!(r.overall(), Verdict::Pass);
        assert_eq!(r.cases[0].report.peak_space, 4);

        let tight = CheckSpec { space: Some(Polynomial::new(vec![0, 1])), ..spec.clone() };
        let r = check_computes(&seq("(mov:1:0;!)*"), &tight, Measure::Uniform, limits()).unwrap();
        assert!(matches!(r.overall(), Verdict::Fail(_)));

        let r = check_computes(&seq("(mov:1:0;!)*"), &spec, Measure::BitOriented, limits()).unwrap();
        // bit cost 1 + 3 exceeds 1
        assert!(matches!(r.overall(), Verdict::Fail(_)));
    }

    #[test]
    fn undefined_cases() {
        let spec = CheckSpec { cases: vec![CheckCase { inputs: vec![], expected: None }], ..CheckSpec::default() };
        let r = check_computes(&seq("(#0)*"), &spec, Measure::Uniform, limits()).unwrap();
        assert_eq!(r.overall(), Verdict::Pass);
        let r = check_computes(&seq("(mov:#1:0)*"), &spec, Measure::Uniform, limits()).unwrap();
        assert!(matches!(r.overall(), Verdict::Inconclusive(_)));
        let r = check_computes(&seq("(!)*"), &spec, Measure::Uniform, limits()).unwrap();
        assert!(matches!(r.overall(), Verdict::Fail(_)));
    }

    #[test]
    fn doubling() {
        let spec = CheckSpec {
            cases: vec![CheckCase { inputs: vec![bs("1")], expected: Some(bs("01")) }],
            ..CheckSpec::default()
        };
        let r = check_computes(&seq("(shl:1:0;!)*"), &spec, Measure::Uniform, limits()).unwrap();
        assert_eq!(r.overall(), Verdict::Pass);
    }

    #[test]
    fn wrong_output_and_input_writes() {
        let spec = CheckSpec {
            cases: vec![CheckCase { inputs: vec![bs("1")], expected: Some(bs("1")) }],
            space: Some(Polynomial::new(vec![100])),
            ..CheckSpec::default()
        };
        let r = check_computes(&seq("(mov:#0:0;!)*"), &spec, Measure::Uniform, limits()).unwrap();
        assert!(matches!(r.overall(), Verdict::Fail(m) if m.contains("register 0")));
        let r = check_computes(&seq("(mov:1:0;mov:#0:1;!)*"), &spec, Measure::Uniform, limits()).unwrap();
        assert!(matches!(r.overall(), Verdict::Fail(m) if m.contains("input")));
    }

    #[test]
    fn spec_file_format() {
        let text = "# identity\nT: 1\nS: 1, 1\n\nin: 110 ; out: 110\nin: e,ε ; out: undefined\nin: ; out:\n";
        let spec = parse_check_spec(text).unwrap();
        assert_eq!(spec.time, Some(Polynomial::new(vec![1])));
        assert_eq!(spec.space, Some(Polynomial::new(vec![1, 1])));
        assert_eq!(
            spec.cases,
            vec![
                CheckCase { inputs: vec![bs("110")], expected: Some(bs("110")) },
                CheckCase { inputs: vec![BitString::empty(), BitString::empty()], expected: None },
                CheckCase { inputs: vec![], expected: Some(BitString::empty()) },
            ]
        );
        assert_eq!(parse_check_spec("in: 2 ; out: 1").unwrap_err().line, 1);
        assert_eq!(parse_check_spec("\nin: 1").unwrap_err().line, 2);
        assert_eq!(parse_check_spec("T: x").unwrap_err().line, 1);
        assert_eq!(parse_check_spec("hello").unwrap_err().line, 1);
    }
}
