//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 bad input,
//! 3 unsupported (even modulus), 4 size guard exceeded.

pub mod perm_file;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use zksynth::{
    certify, parse_circuit, serialize_circuit, synthesize, Circuit, Error, Modulus, PermTable,
    SizeGuard, SynthOptions, Word,
};

pub use perm_file::{parse_perm, serialize_perm};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_SIZE_GUARD: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "zksynth",
    version,
    about = "Synthesize and verify reversible circuits over Z_k",
    after_help = "Tables of more than 10^7 entries are refused; set ZKSYNTH_SIZE_CAP to change the cap."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compile a permutation file into a circuit.
    Synth {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Keep multi-control CNS gates instead of expanding them.
        #[arg(long)]
        no_lower: bool,
        /// Skip affine detection and always use the general pipeline.
        #[arg(long)]
        no_affine_fastpath: bool,
        /// Accepted for compatibility; synthesis is always deterministic.
        #[arg(long)]
        seedless: bool,
    },
    /// Check a circuit against a permutation file.
    Verify {
        #[arg(long)]
        perm: PathBuf,
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_arity: usize,
    },
    /// Evaluate a circuit on one input word.
    Eval {
        #[arg(long)]
        circuit: PathBuf,
        /// Space-separated coordinates, e.g. "0 2 1".
        #[arg(long)]
        input: String,
    },
    /// Print the full permutation table of a circuit.
    Table {
        #[arg(long)]
        circuit: PathBuf,
    },
    /// Print gate statistics.
    Stats {
        #[arg(long)]
        circuit: PathBuf,
    },
    /// Write the inverse circuit (same gate alphabet).
    Invert {
        #[arg(long)]
        circuit: PathBuf,
        /// Defaults to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a seeded random permutation file.
    RandomPerm {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Defaults to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// An error together with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::EvenModulusUnsupported(_) => EXIT_UNSUPPORTED,
            Error::SizeGuard { .. } => EXIT_SIZE_GUARD,
            _ => EXIT_BAD_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_BAD_INPUT,
        message: format!("{}: {e}", path.display()),
    }
}

fn in_file(path: &Path, e: Error) -> Failure {
    let mut f = Failure::from(e);
    f.message = format!("{}: {}", path.display(), f.message);
    f
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn write_to(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| io_failure(p, e)),
        None => stdout.write_all(text.as_bytes()).map_err(|e| Failure {
            code: EXIT_BAD_INPUT,
            message: e.to_string(),
        }),
    }
}

fn load_circuit(path: &Path) -> Result<Circuit, Failure> {
    parse_circuit(&read(path)?).map_err(|e| in_file(path, e))
}

fn load_perm(path: &Path, guard: SizeGuard) -> Result<PermTable, Failure> {
    parse_perm(&read(path)?, guard).map_err(|e| in_file(path, e))
}

fn parse_input_word(text: &str, k: Modulus, n: usize) -> Result<Word, Failure> {
    let coords = text
        .split_whitespace()
        .map(|t| t.parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure {
            code: EXIT_BAD_INPUT,
            message: format!("invalid input word '{text}': {e}"),
        })?;
    Ok(Word::new(coords, k, n)?)
}

/// Runs one command, writing normal output to `stdout`. Returns the exit code.
pub fn run(cli: Cli, guard: SizeGuard, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let w = |out: &mut dyn Write, s: String| {
        writeln!(out, "{s}").map_err(|e| Failure {
            code: EXIT_BAD_INPUT,
            message: e.to_string(),
        })
    };
    match cli.command {
        Command::Synth {
            input,
            out,
            no_lower,
            no_affine_fastpath,
            seedless: _,
        } => {
            let p = load_perm(&input, guard)?;
            let opts = SynthOptions {
                lower_to_generators: !no_lower,
                fast_path_affine: !no_affine_fastpath,
                guard,
            };
            let c = synthesize(&p, &opts)?;
            write_to(Some(&out), &serialize_circuit(&c), stdout)?;
            w(stdout, c.stats().to_string())?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            perm,
            circuit,
            max_arity,
        } => {
            let p = load_perm(&perm, guard)?;
            let c = load_circuit(&circuit)?;
            let report = certify(&c, &p, max_arity, guard)?;
            write!(stdout, "{report}").map_err(|e| Failure {
                code: EXIT_BAD_INPUT,
                message: e.to_string(),
            })?;
            if report.passed() {
                w(stdout, "PASS".into())?;
                Ok(EXIT_OK)
            } else {
                w(stdout, "FAIL".into())?;
                Ok(EXIT_VERIFY_FAILED)
            }
        }
        Command::Eval { circuit, input } => {
            let c = load_circuit(&circuit)?;
            let word = parse_input_word(&input, c.k(), c.n())?;
            w(stdout, c.evaluate(&word)?.to_string())?;
            Ok(EXIT_OK)
        }
        Command::Table { circuit } => {
            let c = load_circuit(&circuit)?;
            let t = c.to_perm_table(guard)?;
            write_to(None, &serialize_perm(&t), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Stats { circuit } => {
            let c = load_circuit(&circuit)?;
            w(stdout, c.stats().to_string())?;
            Ok(EXIT_OK)
        }
        Command::Invert { circuit, out } => {
            let c = load_circuit(&circuit)?;
            write_to(out.as_deref(), &serialize_circuit(&c.invert()), stdout)?;
            Ok(EXIT_OK)
        }
        Command::RandomPerm { k, n, seed, out } => {
            let k = Modulus::new(k)?;
            if n == 0 {
                return Err(Error::Precondition("n must be at least 1".into()).into());
            }
            let p = PermTable::random(k, n, seed, guard)?;
            write_to(out.as_deref(), &serialize_perm(&p), stdout)?;
            Ok(EXIT_OK)
        }
    }
}
