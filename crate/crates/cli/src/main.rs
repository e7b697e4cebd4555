//! `nah`: JSON batch driver over `nah-core`.
//!
//! Exit status: 0 on success, 1 on a precondition or input violation (the
//! output is `{"error": {"kind", "message"}}`), 2 on an internal invariant
//! breach or a failing selftest.

mod commands;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nah_core::json::{Decoder, DEFAULT_MAX_CYCLOTOMIC_ORDER};
use nah_core::Error;
use serde_json::{json, Value};

/// Environment variable capping the cyclotomic order accepted in input.
pub const MAX_ORDER_ENV: &str = "NAH_MAX_CYCLOTOMIC_ORDER";

#[derive(Parser, Debug)]
#[command(name = "nah", version, about = "Exact nonabelian Hodge computations over JSON")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Io {
    /// JSON input file (`-` reads stdin)
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
    /// JSON input given directly on the command line
    #[arg(long, value_name = "JSON", conflicts_with = "input")]
    inline: Option<String>,
    /// Seed for randomized verbs (required by them)
    #[arg(long)]
    seed: Option<u64>,
    /// Write the result here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GmFlags {
    /// Weights w₀,…,w_N
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    weights: Option<Vec<i64>>,
    /// Linearization shift as "p/q"
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    /// Point as colon-separated scalars; give twice for orbit-eq
    #[arg(long, allow_hyphen_values = true)]
    point: Vec<String>,
    /// Degree bound for invariants
    #[arg(long)]
    degree: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact rings, minors, Smith form and Birkhoff splitting
    Rings {
        verb: RingsVerb,
        #[command(flatten)]
        io: Io,
    },
    /// Filtrations and Rees modules
    Rees {
        verb: ReesVerb,
        #[command(flatten)]
        io: Io,
    },
    /// Quaternionic structures and the twistor line
    Twistor {
        verb: TwistorVerb,
        #[command(flatten)]
        io: Io,
    },
    /// The rank-one λ-connection family
    Lambda {
        verb: LambdaVerb,
        #[command(flatten)]
        io: Io,
    },
    /// Cohomology jump loci over the character torus
    Jumploci {
        verb: JumpVerb,
        #[command(flatten)]
        io: Io,
    },
    /// Linear G_m actions on projective space
    Gmquot {
        verb: GmVerb,
        #[command(flatten)]
        io: Io,
        #[command(flatten)]
        gm: GmFlags,
    },
    /// Langton reduction over a disk
    Langton {
        verb: LangtonVerb,
        #[command(flatten)]
        io: Io,
    },
    /// Run the acceptance property suite
    Selftest {
        verb: SelftestVerb,
        #[command(flatten)]
        io: Io,
        /// One tenth of the acceptance case counts
        #[arg(long)]
        quick: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum RingsVerb {
    Conj,
    Eval,
    Rank,
    Minors,
    Snf,
    Split,
    H0,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ReesVerb {
    Build,
    Recover,
    Fiber,
    Griffiths,
    Glue,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum TwistorVerb {
    Structure,
    Section,
    Bundle,
    Sff,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum LambdaVerb {
    Pref,
    Sigma,
    Act,
    Classify,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum JumpVerb {
    Dims,
    Ideal,
    Contains,
    Scan,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum GmVerb {
    Fixed,
    Limits,
    Order,
    Decompose,
    Membership,
    OrbitEq,
    Arc,
    Invariants,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum LangtonVerb {
    Generic,
    Special,
    Step,
    Reduce,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum SelftestVerb {
    Run,
}

/// What went wrong, mapped to an exit status.
enum Failure {
    Core(Error),
    Usage(String),
    Io(String),
    SelftestFailed(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn load_input(io: &Io) -> Result<Value, Failure> {
    let text = match (&io.inline, &io.input) {
        (Some(s), _) => s.clone(),
        (None, Some(p)) if p.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
            s
        }
        (None, Some(p)) => std::fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?,
        (None, None) => return Ok(json!({})),
    };
    serde_json::from_str(&text).map_err(|e| Failure::Core(Error::Parse(format!("input is not JSON: {e}"))))
}

fn decoder() -> Result<Decoder, Failure> {
    let max = match std::env::var(MAX_ORDER_ENV) {
        Ok(s) => s
            .trim()
            .parse::<u32>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Failure::Usage(format!("{MAX_ORDER_ENV} must be a positive integer, got {s:?}")))?,
        Err(_) => DEFAULT_MAX_CYCLOTOMIC_ORDER,
    };
    Ok(Decoder {
        max_cyclotomic_order: max,
    })
}

fn execute(cmd: &Command) -> Result<Value, Failure> {
    let dec = decoder()?;
    let result = match cmd {
        Command::Rings { verb, io } => commands::rings(*verb, &load_input(io)?, &dec)?,
        Command::Rees { verb, io } => commands::rees(*verb, &load_input(io)?, &dec)?,
        Command::Twistor { verb, io } => commands::twistor(*verb, &load_input(io)?, &dec)?,
        Command::Lambda { verb, io } => commands::lambda(*verb, &load_input(io)?, &dec)?,
        Command::Jumploci { verb, io } => commands::jumploci(*verb, &load_input(io)?, io.seed, &dec)?,
        Command::Gmquot { verb, io, gm } => commands::gmquot(*verb, &load_input(io)?, gm, &dec)?,
        Command::Langton { verb, io } => commands::langton(*verb, &load_input(io)?, &dec)?,
        Command::Selftest { verb: _, io, quick } => {
            let seed = io.seed.ok_or_else(|| Failure::Core(commands::seed_required()))?;
            let (report, ok) = commands::selftest(seed, *quick);
            if !ok {
                return Err(Failure::SelftestFailed(report));
            }
            report
        }
    };
    Ok(result)
}

fn emit(v: &Value, out: Option<&PathBuf>) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(v).expect("values serialize") + "\n";
    match out {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn error_value(kind: &str, message: &str) -> Value {
    json!({"error": {"kind": kind, "message": message}})
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            let _ = emit(&error_value("usage", &e.kind().to_string()), None);
            return ExitCode::from(1);
        }
    };
    let out_path = match &cli.command {
        Command::Rings { io, .. }
        | Command::Rees { io, .. }
        | Command::Twistor { io, .. }
        | Command::Lambda { io, .. }
        | Command::Jumploci { io, .. }
        | Command::Gmquot { io, .. }
        | Command::Langton { io, .. }
        | Command::Selftest { io, .. } => io.out.clone(),
    };
    let (value, code) = match execute(&cli.command) {
        Ok(v) => (v, 0),
        Err(Failure::Core(e)) => (error_value(e.kind(), &e.to_string()), if e.is_internal() { 2 } else { 1 }),
        Err(Failure::Usage(m)) => (error_value("usage", &m), 1),
        Err(Failure::Io(m)) => (error_value("io", &m), 1),
        Err(Failure::SelftestFailed(v)) => (v, 2),
    };
    if let Err(e) = emit(&value, out_path.as_ref()) {
        eprintln!("nah: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code)
}
