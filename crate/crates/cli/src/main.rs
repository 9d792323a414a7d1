mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use leibniz::Error;

/// Exact verification toolkit for Leibniz algebras given by structure constants.
#[derive(Parser)]
#[command(name = "leibniz", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a catalog algebra as a JSON document.
    Catalog(Box<CatalogArgs>),
    /// Report Leibniz, nilpotency, filiform and annihilator data for a document.
    Check {
        /// Path to an algebra document, or `-` for standard input.
        input: String,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
    /// Compute the derivation algebra and cohomology dimensions.
    Der {
        input: String,
        /// Comma-separated integer weights; adds the graded decomposition of Der.
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Diagonal gradation tools.
    Grade {
        #[command(subcommand)]
        action: GradeCommand,
    },
    /// Run the structural battery over the length-(n-1) catalog.
    Audit {
        /// A single dimension `7` or an inclusive range `5..9`.
        #[arg(long, default_value = "5..9")]
        n: String,
        #[arg(long, value_enum, default_value = "md")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum GradeCommand {
    /// Check that a weight vector is a diagonal gradation.
    Verify {
        input: String,
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Search the admissible weight lattice for the longest connected gradation.
    Search {
        input: String,
        #[arg(long, default_value_t = leibniz::gradation::DEFAULT_BOUND)]
        bound: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Build the associated graded algebra of a nilpotent algebra.
    Natural {
        input: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Args)]
struct CatalogArgs {
    /// NGF1, NGF2, NGF3, F1, F2, F3, M1, M2, M3 or M4 (case-insensitive).
    family: String,
    #[arg(long)]
    n: usize,
    /// Parameter k of M1.
    #[arg(long)]
    k: Option<usize>,
    /// 0 or 1 for NGF3 and F3; a nonzero rational for M2.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// F1: comma-separated alpha_4..alpha_{n-1}, optionally followed by alpha_n.
    #[arg(long, allow_hyphen_values = true)]
    alphas: Option<String>,
    /// F1: coefficient of e_n in [e_1, e_2].
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    /// F2: comma-separated beta_3..beta_{n-1}.
    #[arg(long, allow_hyphen_values = true)]
    betas: Option<String>,
    /// F2: coefficient of e_n in [e_2, e_2].
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    theta1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    theta2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    theta3: Option<String>,
    /// F3: skew product `i,j,k,value` meaning [e_i, e_j] = -[e_j, e_i] has value on e_k. Repeatable.
    #[arg(long, allow_hyphen_values = true)]
    tail: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

/// Process exit statuses.
pub mod exit {
    pub const FAILED_CHECK: u8 = 1;
    pub const PARSE: u8 = 3;
    pub const CONSTRAINT: u8 = 4;
}

/// Errors reaching `main`, tagged with their exit status.
pub enum Failure {
    /// A check ran and came out negative; carries the report for standard output.
    Check(String),
    Parse(String),
    Constraint(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Json { .. }
            | Error::BadRational(_)
            | Error::IndexOutOfRange { .. }
            | Error::DuplicateConstant { .. }
            | Error::ZeroDimension => Failure::Parse(e.to_string()),
            _ => Failure::Constraint(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Catalog(args) => commands::catalog(&args),
        Command::Check { input, format } => commands::check(&input, format),
        Command::Der { input, weights, format } => commands::der(&input, weights.as_deref(), format),
        Command::Grade { action } => match action {
            GradeCommand::Verify { input, weights, format } => commands::grade_verify(&input, &weights, format),
            GradeCommand::Search { input, bound, format } => commands::grade_search(&input, bound, format),
            GradeCommand::Natural { input, format } => commands::grade_natural(&input, format),
        },
        Command::Audit { n, format } => commands::audit(&n, format),
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Check(report)) => {
            print!("{report}");
            ExitCode::from(exit::FAILED_CHECK)
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(exit::PARSE)
        }
        Err(Failure::Constraint(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(exit::CONSTRAINT)
        }
    }
}
