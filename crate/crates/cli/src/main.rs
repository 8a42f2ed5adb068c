//! `stacky`: command-line reports over stacky fan documents.

mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use commands::{Failure, Output};

#[derive(Parser, Debug)]
#[command(
    name = "stacky",
    version,
    about = "Invariants of toric DM stacks from stacky fans"
)]
struct Cli {
    /// Emit a JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Print nothing on success; errors still go to stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every stacky-fan condition of a document.
    Validate { file: String },
    /// Dual group, acting group and component group.
    Group { file: String },
    /// Isotropy groups of cones or points.
    #[command(group(ArgGroup::new("selector").required(true).args(["cone", "zeros", "all"])))]
    Isotropy {
        file: String,
        /// Comma-separated ray indices of a face, e.g. `0,2`.
        #[arg(long, allow_hyphen_values = true)]
        cone: Option<String>,
        /// Zero set of a point of Z_Sigma, e.g. `0,2`.
        #[arg(long, allow_hyphen_values = true)]
        zeros: Option<String>,
        /// Every face of every maximal cone.
        #[arg(long)]
        all: bool,
        /// Also list generators as characters of (S^1)^n (free N only).
        #[arg(long)]
        generators: bool,
    },
    /// Weighted projective or fake weighted projective recognition.
    Classify { file: String },
    /// Write the universal-cover fan and run the global-quotient test.
    Cover {
        file: String,
        #[arg(long)]
        out: String,
    },
    /// Labelled sheared simplex from shear vector and labels.
    Sheared {
        /// Shear vector a_1..a_d (positive, primitive).
        #[arg(long)]
        a: String,
        /// Labels m_0..m_d (positive).
        #[arg(long)]
        labels: String,
        /// Print the isotropy extension at this zero set.
        #[arg(long)]
        zeros: Option<String>,
        /// Print the full closed-form report.
        #[arg(long)]
        report: bool,
        /// Also write the fan as a document.
        #[arg(long)]
        out: Option<String>,
    },
    /// Randomized differential checks; the seed comes from STACKY_SEED.
    Selftest {
        /// Random matrices to check.
        #[arg(long, default_value_t = 500)]
        matrices: usize,
        /// Random sheared simplices to check.
        #[arg(long, default_value_t = 200)]
        simplices: usize,
    },
}

fn dispatch(cmd: Command) -> Result<Output, Failure> {
    match cmd {
        Command::Validate { file } => commands::validate(&file),
        Command::Group { file } => commands::group(&file),
        Command::Isotropy {
            file,
            cone,
            zeros,
            all,
            generators,
        } => {
            let selector = match (cone, zeros, all) {
                (Some(c), None, false) => commands::Selector::Cone(commands::parse_indices(&c)?),
                (None, Some(z), false) => commands::Selector::Zeros(commands::parse_indices(&z)?),
                _ => commands::Selector::All,
            };
            commands::isotropy(&file, selector, generators)
        }
        Command::Classify { file } => commands::classify(&file),
        Command::Cover { file, out } => commands::cover(&file, &out),
        Command::Sheared {
            a,
            labels,
            zeros,
            report,
            out,
        } => commands::sheared(&a, &labels, zeros.as_deref(), report, out.as_deref()),
        Command::Selftest {
            matrices,
            simplices,
        } => commands::selftest(matrices, simplices),
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
    let (output, code) = match dispatch(cli.command) {
        Ok(out) => {
            let code = out.code;
            (Some(out), code)
        }
        Err(f) => {
            eprintln!("error: {f}");
            (Some(f.output()), f.code())
        }
    };
    if let (Some(out), false) = (output, cli.quiet) {
        // Write errors (a closed pipe under `| head`) are ignored.
        let mut stdout = std::io::stdout().lock();
        let _ = if cli.json {
            writeln!(stdout, "{}", out.json_string())
        } else {
            out.lines
                .iter()
                .try_for_each(|line| writeln!(stdout, "{line}"))
        };
    }
    ExitCode::from(code)
}
