use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod input;

use commands::Outcome;

/// Finite loops, autotopisms and Smarandache Bryant-Schneider groups.
#[derive(Parser, Debug)]
#[command(name = "loopforge", version)]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Config {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Worker threads for searches and catalog verification.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,

    /// Largest order the exhaustive searches will accept.
    #[arg(long, global = true, default_value_t = 10, value_parser = clap::value_parser!(u16).range(2..))]
    pub search_cap: u16,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a table and list its subgroups.
    Validate {
        /// Table file, or a fixture name (z<n>, klein, n5).
        file: String,
    },
    /// Cardinalities of BS, SBS and related sets.
    Analyze {
        file: String,
        /// S-subgroup as comma-separated elements; all S-subgroups when omitted.
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Build the f,g-principal isotope.
    Isotope {
        file: String,
        #[arg(short)]
        f: usize,
        #[arg(short)]
        g: usize,
        /// Require f and g to lie in this S-subgroup.
        #[arg(long)]
        subgroup: Option<String>,
        /// Write the isotope's table here.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run the theorem checks on a table or a catalog directory.
    Verify {
        /// Table file, fixture name or catalog directory.
        target: String,
        /// Comma-separated check keys (t10, c11, ..., c23) or `all`.
        #[arg(long, default_value = "all")]
        theorem: String,
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Enumerate normalized loops of one order.
    Generate {
        order: usize,
        #[arg(long)]
        nonassociative: bool,
        #[arg(long)]
        require_s_subgroup: bool,
        #[arg(long)]
        limit: Option<usize>,
        /// Order 6 yields 9408 tables and has to be requested explicitly.
        #[arg(long)]
        allow_order_six: bool,
        /// Catalog directory to write.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.config.jobs {
        // Fails only if the pool was already built, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs as usize)
            .build_global();
    }
    let mut out = String::new();
    let result = commands::run(&cli, &mut out);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
