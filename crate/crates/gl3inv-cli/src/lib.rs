//! Command-line front end for the `gl3inv` verification suites and
//! evaluators.
//!
//! Exit status is 0 when every selected check passes, 1 when any fails and
//! 2 for usage or input errors.

pub mod commands;
pub mod error;
pub mod mapfile;
pub mod parse;

use clap::{Args, Parser, Subcommand};
use gl3inv::appell::F1Params;
use gl3inv::suites::OutputFormat;
use num_complex::Complex64;

use crate::commands::F1Method;
pub use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "gl3inv",
    version,
    about = "GL(3) differential invariants, Appell F1 and Picard moduli"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, default_value = "json", value_parser = parse_format)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run verification suites and print a report.
    Verify(VerifyArgs),
    /// Evaluate Appell F1(a; b, b'; c; x, y).
    F1(F1Args),
    /// The four derivatives of a polynomial map read from JSON.
    Deriv {
        #[arg(long)]
        map: String,
        /// Evaluation point `x,y`.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Picard-curve moduli operations.
    #[command(subcommand)]
    Picard(PicardCommand),
    /// Period integrals by quadrature alongside their closed forms.
    #[command(subcommand)]
    Integral(IntegralCommand),
    /// Image of a point under the order-5 map between two moduli.
    Order5 {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Heisenberg group operations.
    #[command(subcommand)]
    Heisenberg(HeisenbergCommand),
    /// The generator table as Eisenstein-integer matrices.
    Generators,
    /// The η phase ledger and transformation claims.
    Ledger,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suites to run: all, group, derivs, pde, appell, picard, eta, evolution.
    pub suites: Vec<String>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Tolerance override `ID=VALUE`; may be repeated.
    #[arg(long = "tol", value_name = "ID=VALUE")]
    pub tol: Vec<String>,
    /// Sample count for every randomised loop.
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Args)]
pub struct F1Args {
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub b: String,
    #[arg(long, allow_hyphen_values = true)]
    pub bp: String,
    #[arg(long, allow_hyphen_values = true)]
    pub c: String,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, allow_hyphen_values = true)]
    pub y: String,
    #[arg(long, value_enum, default_value = "series")]
    pub method: F1Method,
}

#[derive(Debug, Subcommand)]
pub enum PicardCommand {
    /// J-invariants of the curve with moduli `l1,l2`.
    J {
        #[arg(long, allow_hyphen_values = true)]
        l: String,
    },
    /// Both roots v1 of the modular equation for given u and v2.
    ModularSolve {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v2: String,
    },
    /// Coefficients α, β, γ of the order-5 map from u to v.
    Transform {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum IntegralCommand {
    /// Picard period integral over [0, 1].
    Picard {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// K integral with moduli ki, kj.
    K {
        #[arg(long, allow_hyphen_values = true)]
        ki: String,
        #[arg(long, allow_hyphen_values = true)]
        kj: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum HeisenbergCommand {
    /// Write the element with entries α = a + bω, β = (p + q√−3)/2 as a word.
    Decompose {
        /// `a,b`
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// `p,q`
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse().map_err(|e: gl3inv::Error| e.to_string())
}

/// Printed output and exit status of a successful invocation.
pub struct Output {
    pub text: String,
    pub status: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, status: 0 }
    }
}

fn c(s: &str) -> CliResult<Complex64> {
    parse::complex(s)
}

pub fn run(cli: Cli) -> CliResult<Output> {
    use commands::*;
    let fmt = cli.format;
    let value = match cli.command {
        Command::Verify(v) => {
            let overrides = v
                .tol
                .iter()
                .map(|s| parse::tolerance_override(s))
                .collect::<CliResult<Vec<_>>>()?;
            let report = verify(&v.suites, v.seed, overrides, v.samples, fmt)?;
            return Ok(Output {
                text: report.render(fmt),
                status: if report.all_passed() { 0 } else { 1 },
            });
        }
        Command::F1(a) => {
            let p = F1Params::new(c(&a.a)?, c(&a.b)?, c(&a.bp)?, c(&a.c)?);
            f1(&p, c(&a.x)?, c(&a.y)?, a.method)?
        }
        Command::Deriv { map, at } => deriv(&map, parse::complex_pair(&at)?)?,
        Command::Picard(PicardCommand::J { l }) => picard_j(parse::complex_pair(&l)?)?,
        Command::Picard(PicardCommand::ModularSolve { u, v2 }) => {
            modular_solve_cmd(parse::complex_pair(&u)?, c(&v2)?)?
        }
        Command::Picard(PicardCommand::Transform { u, v }) => {
            transform(parse::complex_pair(&u)?, parse::complex_pair(&v)?)?
        }
        Command::Integral(IntegralCommand::Picard { x, y }) => integral_picard(c(&x)?, c(&y)?)?,
        Command::Integral(IntegralCommand::K { ki, kj }) => integral_k(c(&ki)?, c(&kj)?)?,
        Command::Order5 { u, v, t } => order5(
            parse::complex_pair(&u)?,
            parse::complex_pair(&v)?,
            parse::complex_pair(&t)?,
        )?,
        Command::Heisenberg(HeisenbergCommand::Decompose { alpha, beta }) => {
            heisenberg(parse::int_pair(&alpha)?, parse::int_pair(&beta)?)?
        }
        Command::Generators => generators(),
        Command::Ledger => ledger()?,
    };
    Ok(Output::ok(render(&value, fmt)))
}
