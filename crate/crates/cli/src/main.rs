//! `lpa`: command-line front end for exact Leavitt path algebra computations.

mod commands;
mod output;

use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use leavitt::ring::{PrimeField, Rationals};

use crate::output::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldChoice {
    Rationals,
    Prime(u64),
}

fn parse_field(s: &str) -> Result<FieldChoice, String> {
    match s {
        "q" | "Q" => Ok(FieldChoice::Rationals),
        _ => {
            let p = s.strip_prefix("fp:").ok_or_else(|| format!("expected `q` or `fp:<p>`, got `{s}`"))?;
            let p: u64 = p.parse().map_err(|_| format!("`{p}` is not a number"))?;
            PrimeField::new(p).map(|_| FieldChoice::Prime(p)).ok_or_else(|| format!("{p} is not prime"))
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "lpa", version, about = "Exact computations in Leavitt path algebras")]
pub struct Cli {
    /// Coefficient field: `q` or `fp:<p>`.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    pub field: FieldChoice,
    /// Largest stage examined when deciding positivity.
    #[arg(long, global = true, default_value_t = 64)]
    pub stage_cap: usize,
    /// Largest absolute value of a certificate entry tried by `iso`.
    #[arg(long, global = true, default_value_t = 8)]
    pub entry_max: u64,
    /// Largest lag tried by `iso`.
    #[arg(long, global = true, default_value_t = 6)]
    pub lag_max: usize,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vertex classification, primitivity and adjacency of a graph.
    Info { graph: PathBuf },
    /// Evaluate an expression to normal form.
    Eval {
        graph: PathBuf,
        #[arg(short = 'e', long = "expr")]
        expr: String,
        /// Also show the unreduced (Cohn-path) form.
        #[arg(long)]
        normalize: bool,
        /// Report the degrees of the homogeneous components.
        #[arg(long)]
        degree: bool,
    },
    /// Graded Bowen-Franks presentation.
    Bf {
        graph: PathBuf,
        /// The ungraded group `coker(I - A^t)` instead.
        #[arg(long, conflicts_with = "dual")]
        ungraded: bool,
        /// The presentation of the dual module.
        #[arg(long)]
        dual: bool,
    },
    /// Search for a pointed order isomorphism of dimension modules.
    Iso { graph_e: PathBuf, graph_f: PathBuf },
    /// Verify an isomorphism certificate.
    VerifyIso { graph_e: PathBuf, graph_f: PathBuf, cert: PathBuf },
    /// Verify a homomorphism file and its induced map on K_0.
    CheckHom { graph_e: PathBuf, graph_f: PathBuf, hom: PathBuf },
    /// Deform a homomorphism by corner units.
    Deform { graph_e: PathBuf, graph_f: PathBuf, hom: PathBuf, units: PathBuf },
    /// Fullness certificate for `e e*` in the degree-zero part.
    FullCert {
        graph: PathBuf,
        #[arg(long)]
        edge: String,
    },
    /// K_0 class of a degree-zero idempotent.
    K0 {
        graph: PathBuf,
        #[arg(short = 'e', long = "expr")]
        expr: String,
    },
    /// K_1 class of a degree-zero unit.
    K1 {
        graph: PathBuf,
        #[arg(short = 'e', long = "expr")]
        expr: String,
    },
    /// Verify a chain of homotopies given as hom files over `F[t]`.
    CheckHomotopy {
        graph_e: PathBuf,
        graph_f: PathBuf,
        #[arg(required = true)]
        links: Vec<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let text = e.render().to_string();
            let mut lines = text.lines();
            let first = lines.next().unwrap_or_default();
            eprintln!("error[usage]: {}", first.strip_prefix("error: ").unwrap_or(first));
            for line in lines.filter(|l| !l.trim().is_empty()) {
                eprintln!("{line}");
            }
            return ExitCode::from(2);
        }
    };
    let result = match cli.field {
        FieldChoice::Rationals => commands::run(&cli, Rationals),
        FieldChoice::Prime(p) => commands::run(&cli, PrimeField::new(p).expect("checked prime")),
    };
    match result {
        Ok((out, outcome)) => {
            if let Err(e) = out.write(cli.format, &mut io::stdout().lock()) {
                eprintln!("error[io]: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.exit_code())
        }
        Err(e) => {
            eprintln!("error[{}]: {}", e.code, e.message);
            ExitCode::from(e.exit_code)
        }
    }
}
