//! `tameaut` command-line front end. Exit codes: 0 success or pass, 1 check
//! failure, 2 usage, configuration or input error.

mod commands;
mod config;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{CommonArgs, SearchArgs};

#[derive(Parser, Debug)]
#[command(name = "tameaut", version, about = "Exact computations with tame polynomial automorphisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the regression suite. Without --p, runs F_3, F_5 and F_7.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Number of random samples per check.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Compose endomorphism files left to right: `f1 ∘ f2 ∘ ...`.
    Compose {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(required = true)]
        files: Vec<std::path::PathBuf>,
    },
    /// Classify a monomial as good or bad for the characteristic.
    Classify {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        monomial: String,
    },
    /// Build a named construction and its word certificate.
    Construct {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(value_enum)]
        name: commands::Construction,
        /// Exponent of the `phi_m` construction.
        #[arg(long, default_value_t = 2)]
        m: u32,
        /// Coefficient `b`.
        #[arg(long, default_value = "1")]
        b: String,
        /// Exponent `k` of the good-case constructions. `--k` is the
        /// extension degree.
        #[arg(long = "exp-k", default_value_t = 1)]
        exp_k: u16,
        /// The monomial `M'` of the good-case constructions.
        #[arg(long)]
        mprime: Option<String>,
        /// The bad monomial `M` of `bad_to_good`.
        #[arg(long)]
        monomial: Option<String>,
        #[arg(long, default_value = "1")]
        lambda: String,
        /// Pivot `i,j` (one-based) of `bad_to_good`.
        #[arg(long)]
        pivot: Option<String>,
        /// Also write the evaluated endomorphism file here.
        #[arg(long)]
        endo_out: Option<std::path::PathBuf>,
    },
    /// Search for a word over the default generators.
    Search {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        search: SearchArgs,
        /// Target `x1 -> x1 + M` given by the monomial `M`.
        #[arg(long, conflicts_with = "target_file")]
        target: Option<String>,
        /// Target endomorphism file.
        #[arg(long)]
        target_file: Option<std::path::PathBuf>,
    },
    /// Classify `M`, then build or search a word for `x1 -> x1 + M`.
    Probe {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        monomial: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { common, samples } => commands::verify(&common, samples),
        Command::Compose { common, files } => commands::compose(&common, &files),
        Command::Classify { common, monomial } => commands::classify(&common, &monomial),
        Command::Construct { common, name, m, b, exp_k, mprime, monomial, lambda, pivot, endo_out } => {
            let args = commands::ConstructArgs { name, m, b, k: exp_k, mprime, monomial, lambda, pivot, endo_out };
            commands::construct(&common, &args)
        }
        Command::Search { common, search, target, target_file } => {
            commands::search(&common, &search, target.as_deref(), target_file.as_deref())
        }
        Command::Probe { common, search, monomial } => commands::probe(&common, &search, &monomial),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
