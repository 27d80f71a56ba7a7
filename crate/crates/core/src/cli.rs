//! The `bim` command line.
//!
//! Exit codes: 0 ok, 1 I/O failure, 2 usage or validation error,
//! 3 verification failure, 4 inconclusive search.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use crate::construct::{self, GeneratorConfig, KroneckerOutcome, SearchMode, StripChoice};
use crate::error::Error;
use crate::field::{prime_power, FieldSpec};
use crate::format::{Format, FormatError, MatrixFile};
use crate::par::Exec;
use crate::rng::SplitMix64;
use crate::verify::verify_blocks;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Parser)]
#[command(name = "bim", version, about = "Block invertible square matrices over finite fields")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build an (n, p) block invertible square matrix.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        /// gf(p), gf(2^k) or gf(2^k;0xMASK)
        #[arg(long)]
        field: FieldSpec,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// first, last or random
        #[arg(long, default_value_t = StripChoice::First)]
        strip: StripChoice,
        /// Output path; the matrix goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// text or json
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Check that every p x p block (and the whole matrix) is invertible.
    Verify {
        input: PathBuf,
        /// Block size; defaults to the one recorded in the file.
        #[arg(long)]
        p: Option<usize>,
        /// Print only the summary lines.
        #[arg(long)]
        quiet: bool,
        /// Print the report as JSON.
        #[arg(long, conflicts_with = "quiet")]
        json: bool,
    },
    /// Size of GL(p, q) and the rejection-sampling acceptance probability.
    Count {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: u64,
    },
    /// Try the Kronecker construction A (x) B.
    Kron {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        field: FieldSpec,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "text")]
        format: Format,
        /// Random candidates to try when the field is too large to enumerate.
        #[arg(long, default_value_t = construct::DEFAULT_MAX_TRIALS)]
        max_trials: u64,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let result = match cli.command {
        Command::Generate { n, p, field, seed, strip, out: path, format } => {
            let config = GeneratorConfig { n, p, field, seed, strip_choice: strip };
            cmd_generate(&config, path.as_deref(), format, out, err)
        }
        Command::Verify { input, p, quiet, json } => cmd_verify(&input, p, quiet, json, out),
        Command::Count { p, q } => cmd_count(p, q, out),
        Command::Kron { p, field, seed, out: path, format, max_trials } => {
            cmd_kron(p, field, seed, path.as_deref(), format, max_trials, out, err)
        }
    };
    match result {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        fail(EXIT_IO, e.to_string())
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Io(e) => fail(EXIT_IO, e.to_string()),
            other => fail(EXIT_USAGE, other.to_string()),
        }
    }
}

type CmdResult = Result<i32, Failure>;

/// Writes the file to `path`, or to `out` when there is no path. Returns the
/// stream that should receive human-readable messages.
fn emit<'a>(
    file: &MatrixFile,
    path: Option<&Path>,
    format: Format,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
) -> Result<&'a mut dyn Write, Failure> {
    match path {
        Some(path) => {
            file.save(path, format)?;
            Ok(out)
        }
        None => {
            out.write_all(file.render(format).as_bytes())?;
            Ok(err)
        }
    }
}

fn cmd_generate(
    config: &GeneratorConfig,
    path: Option<&Path>,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    config.validate().map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
    let m = construct::generate(config).map_err(|e| fail(EXIT_IO, format!("generation failed: {e}")))?;
    let file = MatrixFile::new(m, Some(config.p));
    let log = emit(&file, path, format, out, err)?;
    writeln!(
        log,
        "generated {n}x{n} ({n}, {p}) block invertible square matrix over {field}, seed {seed}, {steps} extension steps",
        n = config.n,
        p = config.p,
        field = config.field,
        seed = config.seed,
        steps = config.extension_steps(),
    )?;
    Ok(EXIT_OK)
}

fn cmd_verify(input: &Path, p: Option<usize>, quiet: bool, json: bool, out: &mut dyn Write) -> CmdResult {
    let file = MatrixFile::load(input)?;
    let p =
        p.or(file.block_size).ok_or_else(|| fail(EXIT_USAGE, "no block size: pass --p or record one in the file"))?;
    let report = verify_blocks(&file.matrix, p).map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
    if json {
        writeln!(out, "{}", serde_json::to_string(&report).expect("report serializes"))?;
    } else if quiet {
        write!(out, "{}", report.summary())?;
    } else {
        write!(out, "{}", report.render_text())?;
    }
    Ok(if report.passes() { EXIT_OK } else { EXIT_VERIFY })
}

/// `num/den` rounded half-up to `digits` decimal places, trailing zeros trimmed.
fn decimal(num: &BigUint, den: &BigUint, digits: u32) -> String {
    let scale = BigUint::from(10u32).pow(digits);
    let two = BigUint::from(2u32);
    let scaled = (num * &scale * &two + den) / (den * &two);
    let (int, frac) = scaled.div_rem(&scale);
    let mut frac = format!("{:0>width$}", frac.to_string(), width = digits as usize);
    while frac.ends_with('0') {
        frac.pop();
    }
    if frac.is_empty() {
        int.to_string()
    } else {
        format!("{int}.{frac}")
    }
}

fn cmd_count(p: usize, q: u64, out: &mut dyn Write) -> CmdResult {
    if prime_power(q).is_none() {
        return Err(fail(EXIT_USAGE, Error::BadOrder(q).to_string()));
    }
    let (count, total) = construct::acceptance_ratio(p, q).map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
    let g = count.gcd(&total);
    let (rn, rd) = (&count / &g, &total / &g);
    writeln!(out, "{count}")?;
    let reduced = if g == BigUint::from(1u32) { String::new() } else { format!(" = {rn}/{rd}") };
    writeln!(out, "acceptance probability: {count}/{total}{reduced} = {}", decimal(&count, &total, 12))?;
    if !count.is_zero() {
        writeln!(out, "expected draws per sample: {}", decimal(&total, &count, 6))?;
    }
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_kron(
    p: usize,
    field: FieldSpec,
    seed: u64,
    path: Option<&Path>,
    format: Format,
    max_trials: u64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    let mut rng = SplitMix64::new(seed);
    let outcome = construct::kronecker_generate_with(p, field, &mut rng, max_trials, Exec::default())
        .map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
    let describe = |mode: SearchMode| match mode {
        SearchMode::Exhaustive { candidates } => format!("exhaustive search over {candidates} all-nonzero candidates"),
        SearchMode::Randomized { trials } => format!("random search capped at {trials} trials"),
    };
    match outcome {
        KroneckerOutcome::Found { product, mode, .. } => {
            let report = verify_blocks(&product, p).map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
            let file = MatrixFile::new(product, Some(p));
            let log = emit(&file, path, format, out, err)?;
            writeln!(
                log,
                "found an invertible {p}x{p} matrix with no zero entry over {field} ({}); wrote A (x) B, {n}x{n} with block size {p}",
                describe(mode),
                n = p * p,
            )?;
            write!(log, "{}", report.summary())?;
            Ok(if report.is_block_invertible_square { EXIT_OK } else { EXIT_VERIFY })
        }
        KroneckerOutcome::NoAllNonzeroMatrix { mode: mode @ SearchMode::Exhaustive { .. } } => {
            writeln!(
                out,
                "no invertible {p}x{p} matrix with all entries nonzero exists over {field} ({}); the Kronecker construction fails",
                describe(mode)
            )?;
            Ok(EXIT_OK)
        }
        KroneckerOutcome::NoAllNonzeroMatrix { mode } => {
            writeln!(
                out,
                "inconclusive: no invertible {p}x{p} matrix with all entries nonzero found over {field} ({})",
                describe(mode)
            )?;
            Ok(EXIT_INCONCLUSIVE)
        }
    }
}
