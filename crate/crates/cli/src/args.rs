use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mheight::heights::Method;

#[derive(Debug, Parser)]
#[command(name = "mheight", version, about = "m-height profiles of real linear codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute h_m for one m or the whole profile.
    Profile(ProfileArgs),
    /// Run every method and check that they agree below the minimum distance.
    Crosscheck(CrosscheckArgs),
    /// Recompute the reference tables and closed forms.
    VerifyTables(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct CodeArgs {
    /// neg:N, neg-dual:N, ico, ico-dual, dod, dod-dual, axis:N,
    /// binary:ROW,ROW,..., random:N,K, or a JSON code file.
    #[arg(long)]
    pub code: String,
    /// Seed for random:N,K.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Rank, LP and magnitude tolerance (defaults: 1e-9, floor 1e-12).
    #[arg(long, value_parser = positive)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    pub out: OutFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MSelect {
    All,
    One(usize),
}

impl FromStr for MSelect {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all" {
            return Ok(MSelect::All);
        }
        s.parse().map(MSelect::One).map_err(|_| format!("expected a count or `all`, got `{s}`"))
    }
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// lp, lp-dual, comb, comb-pc, comb-dual or auto.
    #[arg(long, default_value = "auto")]
    pub method: Method,
    #[arg(long, default_value = "all")]
    pub m: MSelect,
    /// Include an extremal codeword per m.
    #[arg(long)]
    pub certificates: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CrosscheckArgs {
    #[command(flatten)]
    pub code: CodeArgs,
    /// Largest accepted relative disagreement with the primal LP.
    #[arg(long, default_value_t = 1e-6, value_parser = positive)]
    pub agree: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableSet {
    /// Icosahedral, dodecahedral and dual dodecahedral tables.
    Reference,
    /// Negacyclic closed forms and the dual cross relation.
    Neg,
    /// h_1 of axis-replicated codes.
    Axis,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = TableSet::Reference)]
    pub tables: TableSet,
    /// Inclusive range A:B of lengths for neg and axis.
    #[arg(long, value_parser = n_range)]
    pub n_range: Option<(usize, usize)>,
    #[arg(long, default_value = "auto")]
    pub method: Method,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
        _ => Err(format!("expected a positive number, got `{s}`")),
    }
}

fn n_range(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("expected A:B with A ≤ B, got `{s}`");
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let (a, b): (usize, usize) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}
