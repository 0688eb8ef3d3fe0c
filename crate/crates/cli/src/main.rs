//! `fibcode` command-line front end.
//!
//! Exit status: 0 on success, 1 on a usage error, 2 on a domain error
//! (non-prime modulus, enumeration cap exceeded, unauthorized set, ...).

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Report;

/// Environment variable overriding the enumeration cap.
pub const CAP_ENV: &str = "FIBCODE_MAX_CODEWORDS";

#[derive(Parser, Debug)]
#[command(
    name = "fibcode",
    version,
    about = "Cyclic codes from Fibonacci sequences mod p, and secret sharing on their duals"
)]
struct Cli {
    /// Emit a JSON envelope instead of text tables.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pisano period profile and residue-class checks for one prime.
    Analyze {
        #[arg(long)]
        p: u64,
    },
    /// Period profiles for several primes.
    Table1 {
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
    },
    /// Parameters, generator and classification of a code.
    Code(CodeArgs),
    /// Weight distribution, enumerated and optionally from closed forms.
    Weights {
        #[command(flatten)]
        code: CodeArgs,
        /// Also print the closed-form distribution; needs a proven regime.
        #[arg(long)]
        predicted: bool,
    },
    /// The dual code and its distribution via MacWilliams.
    Dual(CodeArgs),
    /// Minimal access sets of the scheme on the dual code.
    Access(CodeArgs),
    /// Deal and recover shares.
    #[command(subcommand)]
    Sss(SssCommand),
}

#[derive(Subcommand, Debug)]
enum SssCommand {
    /// Deal a secret and write a share file.
    Deal {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        secret: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Store the seed in the share file.
        #[arg(long)]
        record_seed: bool,
    },
    /// Recover the secret from the shares of some participants.
    Recover {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        participants: Vec<usize>,
    },
}

#[derive(Args, Debug, Clone)]
struct CodeArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, value_enum, default_value_t = Variant::Fibonacci)]
    variant: Variant,
    /// Step count of the extended sequence.
    #[arg(long, default_value_t = 3)]
    r: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Variant {
    Fibonacci,
    Extended,
}

impl Variant {
    fn name(self) -> &'static str {
        match self {
            Variant::Fibonacci => "fibonacci",
            Variant::Extended => "extended",
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let name = command_name(&cli.command);
    let outcome = commands::run(cli.command);
    let (report, code) = match outcome {
        Ok(report) => (report, 0),
        Err(e) => {
            let code = e.exit_code();
            (Report::failure(name, &e), code)
        }
    };
    if cli.json {
        println!("{}", report.to_json());
    } else {
        report.print_text();
    }
    ExitCode::from(code)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Analyze { .. } => "analyze",
        Command::Table1 { .. } => "table1",
        Command::Code(_) => "code",
        Command::Weights { .. } => "weights",
        Command::Dual(_) => "dual",
        Command::Access(_) => "access",
        Command::Sss(SssCommand::Deal { .. }) => "sss deal",
        Command::Sss(SssCommand::Recover { .. }) => "sss recover",
    }
}
