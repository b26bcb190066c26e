use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ramseq::exec::{check_computes, parse_check_spec, run, Measure, Outcome, RunConfig, RunLimits, Verdict};
use ramseq::isa::classify_program;
use ramseq::pga::{canonicalize, jump_normalize, seq_equal, struct_equal};
use ramseq::{behaviourally_equivalent, extract, parse_sequence, BitString, InstructionSequence, MemoryState, Natural};

const EXIT_NO: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

/// Instruction sequences over RAM memories.
#[derive(Parser)]
#[command(name = "ramseq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and classify a program, then print it in canonical form.
    Asm { file: PathBuf },
    /// Print the canonical form of a program.
    Norm {
        file: PathBuf,
        /// Also normalize jumps.
        #[arg(long = "struct")]
        structural: bool,
    },
    /// Print the thread a program produces.
    Extract {
        file: PathBuf,
        /// Graphviz output.
        #[arg(long)]
        dot: bool,
    },
    /// Compare two programs.
    Equiv {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        mode: EquivMode,
    },
    /// Run a program on a memory and report its cost.
    Run(RunArgs),
    /// Check that a program computes a function within bounds.
    Check(CheckArgs),
}

#[derive(Args)]
#[group(multiple = false)]
struct EquivMode {
    /// Same instruction sequence.
    #[arg(long)]
    seq: bool,
    /// Equal once jumps are normalized.
    #[arg(long = "struct")]
    structural: bool,
    /// Same behaviour (default).
    #[arg(long)]
    behav: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureArg {
    Uniform,
    Bit,
}

impl From<MeasureArg> for Measure {
    fn from(m: MeasureArg) -> Self {
        match m {
            MeasureArg::Uniform => Measure::Uniform,
            MeasureArg::Bit => Measure::BitOriented,
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    program: PathBuf,
    /// Initial memory in `INDEX=BITS` lines.
    #[arg(long)]
    memory: Option<PathBuf>,
    /// Input words for registers 1, 2, ...; `e` for the empty word.
    #[arg(long, value_delimiter = ',')]
    inputs: Vec<String>,
    #[arg(long, default_value_t = 1_000_000)]
    max_steps: u64,
    /// Stop once memory holds more than this many bits.
    #[arg(long)]
    max_bits: Option<u64>,
    #[arg(long, value_enum, default_value_t = MeasureArg::Uniform)]
    measure: MeasureArg,
    /// Print every configuration.
    #[arg(long)]
    trace: bool,
    /// Print a JSON document instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    program: PathBuf,
    /// Cases and bounds, one per line.
    #[arg(long)]
    spec: PathBuf,
    #[arg(long, default_value_t = 1_000_000)]
    max_steps: u64,
    #[arg(long, value_enum, default_value_t = MeasureArg::Uniform)]
    measure: MeasureArg,
}

/// An error already formatted for the user; exits with the usage code.
struct Failure(String);

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_program(path: &Path) -> Result<InstructionSequence, Failure> {
    parse_sequence(&read(path)?).map_err(|e| Failure(format!("{}:{}:{}: {}", path.display(), e.line, e.column, e.kind)))
}

fn parse_word(text: &str) -> Result<BitString, Failure> {
    match text.trim() {
        "" | "e" | "ε" => Ok(BitString::empty()),
        t => t.parse().map_err(|_| Failure(format!("invalid input word {t:?}"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Asm { file } => {
            let s = load_program(&file)?;
            let class = classify_program(&s);
            println!("{}", canonicalize(&s));
            println!("srram={}", class.is_srram);
            println!("standard={}", class.is_standard);
            println!("successor={}", class.is_successor);
            Ok(ExitCode::SUCCESS)
        }
        Command::Norm { file, structural } => {
            let s = load_program(&file)?;
            let n = if structural { jump_normalize(&s) } else { canonicalize(&s) };
            println!("{n}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Extract { file, dot } => {
            let t = extract(&load_program(&file)?);
            print!("{}", if dot { t.to_dot() } else { t.to_text() });
            Ok(ExitCode::SUCCESS)
        }
        Command::Equiv { first, second, mode } => {
            let (a, b) = (load_program(&first)?, load_program(&second)?);
            let same = if mode.seq {
                seq_equal(&a, &b)
            } else if mode.structural {
                struct_equal(&a, &b)
            } else {
                behaviourally_equivalent(&a, &b)
            };
            if same {
                println!("equivalent");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("not equivalent");
                Ok(ExitCode::from(EXIT_NO))
            }
        }
        Command::Run(args) => run_command(args),
        Command::Check(args) => check_command(args),
    }
}

fn run_command(args: RunArgs) -> Result<ExitCode, Failure> {
    let s = load_program(&args.program)?;
    let mut sigma = match &args.memory {
        Some(path) => MemoryState::parse_file(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))?,
        None => MemoryState::new(),
    };
    for (k, w) in args.inputs.iter().enumerate() {
        sigma.set(Natural::from(k + 1), parse_word(w)?);
    }
    let config = RunConfig {
        limits: RunLimits { max_steps: args.max_steps, max_total_bits: args.max_bits },
        input_count: args.inputs.len(),
        trace: args.trace,
    };
    let r = run(&s, sigma, config).map_err(|e| Failure(e.to_string()))?;
    let time = match args.measure {
        MeasureArg::Uniform => r.report.uniform_steps,
        MeasureArg::Bit => r.report.bit_cost,
    };
    if args.json {
        let mut doc = json!({
            "memory": r.memory.state(),
            "report": r.report,
            "time": time,
        });
        if args.trace {
            doc["trace"] = json!(r.trace);
        }
        println!("{}", serde_json::to_string_pretty(&doc).expect("report serializes"));
    } else {
        let mut out = String::new();
        if args.trace {
            for (k, c) in r.trace.iter().enumerate() {
                let regs: Vec<String> = c.memory.iter().map(|(i, w)| format!("{i}={w}")).collect();
                writeln!(out, "# step {k} node {}: {}", c.node, regs.join(" ")).unwrap();
            }
        }
        match r.memory.state() {
            Some(m) => out.push_str(&m.to_file_string()),
            None => out.push_str("# inoperative\n"),
        }
        let rep = &r.report;
        writeln!(out, "outcome={}", rep.outcome.name()).unwrap();
        writeln!(out, "uniform_steps={}", rep.uniform_steps).unwrap();
        writeln!(out, "bit_cost={}", rep.bit_cost).unwrap();
        writeln!(out, "peak_space={}", rep.peak_space).unwrap();
        writeln!(out, "input_registers_changed={}", rep.input_registers_changed).unwrap();
        writeln!(out, "time={time}").unwrap();
        print!("{out}");
    }
    Ok(match r.report.outcome {
        Outcome::StepLimit => ExitCode::from(EXIT_INCONCLUSIVE),
        Outcome::Halted | Outcome::Dead => ExitCode::SUCCESS,
    })
}

fn check_command(args: CheckArgs) -> Result<ExitCode, Failure> {
    let s = load_program(&args.program)?;
    let spec = parse_check_spec(&read(&args.spec)?).map_err(|e| Failure(format!("{}:{e}", args.spec.display())))?;
    let report = check_computes(&s, &spec, args.measure.into(), RunLimits::steps(args.max_steps))
        .map_err(|e| Failure(e.to_string()))?;
    for (k, c) in report.cases.iter().enumerate() {
        let line = match &c.verdict {
            Verdict::Pass => "pass".to_string(),
            Verdict::Fail(r) => format!("fail: {r}"),
            Verdict::Inconclusive(r) => format!("inconclusive: {r}"),
        };
        println!(
            "case {}: {line} (steps={} bit_cost={} space={})",
            k + 1,
            c.report.uniform_steps,
            c.report.bit_cost,
            c.report.peak_space
        );
    }
    Ok(match report.overall() {
        Verdict::Pass => {
            println!("pass");
            ExitCode::SUCCESS
        }
        Verdict::Fail(_) => {
            println!("fail");
            ExitCode::from(EXIT_NO)
        }
        Verdict::Inconclusive(_) => {
            println!("inconclusive");
            ExitCode::from(EXIT_INCONCLUSIVE)
        }
    })
}
