use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quadbound_core::quadrature::WeightKind;

/// Named ellipses accepted by `--ellipse` in place of `c=<r>`.
pub const PRESETS: [(&str, f64); 4] = [("thin", 1.0001), ("narrow", 1.2), ("moderate", 1.5), ("wide", 2.0)];

#[derive(Debug, Parser)]
#[command(name = "quadbound", version, about = "Worst-case error bounds for quadratures on bounded analytic functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate every lower and upper bound for each (c, n).
    Bounds(Common),
    /// Build the extremal adversary for the Gauss rule and measure its error.
    Adversary(AdversaryArgs),
    /// Bounds, adversaries and minimised J+ over a grid, evaluated concurrently.
    Sweep(Common),
    /// Run the acceptance suite; exit 1 if any criterion fails.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeightArg {
    Lebesgue,
    Chebyshev,
}

impl From<WeightArg> for WeightKind {
    fn from(w: WeightArg) -> Self {
        match w {
            WeightArg::Lebesgue => WeightKind::Lebesgue,
            WeightArg::Chebyshev => WeightKind::Chebyshev,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Ellipse parameter(s): `c=<r>[,<r>...]` or a preset (thin, narrow,
    /// moderate, wide). May be repeated.
    #[arg(long = "ellipse", value_name = "SPEC")]
    pub ellipse: Vec<String>,
    #[arg(long, value_enum, default_value = "lebesgue")]
    pub weight: WeightArg,
    /// Node counts of the Gauss rules.
    #[arg(long = "n", value_delimiter = ',', value_name = "LIST")]
    pub n: Vec<usize>,
    /// Information counts for the minimised J+ rows (sweep only).
    #[arg(long = "N", value_delimiter = ',', value_name = "LIST")]
    pub big_n: Vec<usize>,
    /// Bound on |f| over the domain.
    #[arg(long = "M", default_value_t = 1.0)]
    pub m: f64,
    /// Target accuracy; adds node-count estimates for M/eps.
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct AdversaryArgs {
    #[command(flatten)]
    pub common: Common,
    /// Directory receiving a sampled table (x, f0(x)) and a JSON descriptor
    /// for every adversary.
    #[arg(long, value_name = "DIR")]
    pub export: Option<PathBuf>,
    /// Number of equispaced samples in each exported table.
    #[arg(long, default_value_t = 201)]
    pub samples: usize,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Development aid for mutation testing: evaluate a deliberately wrong
    /// gamma so that verification must fail.
    #[arg(long)]
    pub perturb_gamma: bool,
}

/// A validated configuration for the grid commands.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub cs: Vec<f64>,
    pub ns: Vec<usize>,
    pub big_ns: Vec<usize>,
    pub weight: WeightKind,
    pub m: f64,
    pub eps: Option<f64>,
    pub tol: f64,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

pub fn parse_ellipse(spec: &str) -> Result<Vec<f64>, String> {
    if let Some(list) = spec.strip_prefix("c=") {
        return list
            .split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|_| format!("'{s}' is not a number in --ellipse {spec}")))
            .collect();
    }
    PRESETS
        .iter()
        .find(|(name, _)| *name == spec)
        .map(|&(_, c)| vec![c])
        .ok_or_else(|| format!("--ellipse expects c=<r> or one of thin, narrow, moderate, wide; got '{spec}'"))
}

impl RunConfig {
    pub fn from_common(a: &Common) -> Result<Self, String> {
        let mut cs = Vec::new();
        for spec in &a.ellipse {
            cs.extend(parse_ellipse(spec)?);
        }
        if cs.is_empty() {
            return Err("at least one ellipse is required (--ellipse c=<r>)".into());
        }
        if let Some(c) = cs.iter().find(|c| !(**c > 1.0) || !c.is_finite()) {
            return Err(format!("ellipse parameter must be finite and > 1, got {c}"));
        }
        if a.n.contains(&0) || a.big_n.contains(&0) {
            return Err("--n and --N entries must be at least 1".into());
        }
        if !(a.tol > 0.0) || !a.tol.is_finite() {
            return Err(format!("--tol must be positive, got {}", a.tol));
        }
        if !(a.m > 0.0) || !a.m.is_finite() {
            return Err(format!("--M must be positive, got {}", a.m));
        }
        if let Some(eps) = a.eps {
            if !(eps > 0.0) || !(a.m / eps > 1.0) {
                return Err(format!("--eps must be positive with M/eps > 1, got eps = {eps}"));
            }
        }
        let dedup = |mut v: Vec<usize>| {
            v.sort_unstable();
            v.dedup();
            v
        };
        let mut cs_sorted = cs;
        cs_sorted.sort_by(f64::total_cmp);
        cs_sorted.dedup();
        Ok(Self {
            cs: cs_sorted,
            ns: dedup(a.n.clone()),
            big_ns: dedup(a.big_n.clone()),
            weight: a.weight.into(),
            m: a.m,
            eps: a.eps,
            tol: a.tol,
            seed: a.seed,
            out: a.out.clone(),
            format: a.format,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ellipse_specs() {
        assert_eq!(parse_ellipse("c=2").unwrap(), vec![2.0]);
        assert_eq!(parse_ellipse("c=1.2,1.5").unwrap(), vec![1.2, 1.5]);
        assert_eq!(parse_ellipse("thin").unwrap(), vec![1.0001]);
        assert!(parse_ellipse("c=two").is_err());
        assert!(parse_ellipse("circle").is_err());
    }
}
