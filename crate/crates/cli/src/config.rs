use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use padelin_core::certify::{precision_ceiling, BoundVariant};
use padelin_core::exact::{parse_rational, Rational};
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "padelin", version, about = "p-adic Hurwitz zeta values, Padé systems and their certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(short = 'o', long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// p-adic Hurwitz zeta value `zeta_p(s, a/b)`.
    Zeta(ZetaArgs),
    /// Twisted sum `T_p(s, a/b)` over the `e`-th roots of unity.
    Tp(TpArgs),
    /// Exact Padé system `P_s^{(q)}(x, z)`.
    Pade(PadeArgs),
    /// Determinant, vanishing, integrality and decay suites over a grid.
    Certify(CertifyArgs),
    /// Lower bound on the dimension of the span of the zeta values.
    Bound(BoundArgs),
    /// Least prime beyond which the bound exceeds `A - 1`.
    Scan(ScanArgs),
}

#[derive(Debug, Args)]
pub struct PrecisionArgs {
    /// Absolute p-adic precision `N`.
    #[arg(short = 'N', long = "precision", default_value_t = 20)]
    pub precision: i64,
    #[arg(long, default_value_t = 8)]
    pub guard: i64,
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    #[arg(short)]
    pub p: u32,
    #[arg(short, allow_negative_numbers = true)]
    pub s: i64,
    /// `a/b`.
    #[arg(short)]
    pub x: String,
    #[command(flatten)]
    pub precision: PrecisionArgs,
}

#[derive(Debug, Args)]
pub struct TpArgs {
    #[arg(short)]
    pub p: u32,
    #[arg(short)]
    pub s: i64,
    #[arg(short)]
    pub x: String,
    #[arg(short, default_value_t = 2)]
    pub e: u64,
    #[command(flatten)]
    pub precision: PrecisionArgs,
}

#[derive(Debug, Args)]
pub struct PadeArgs {
    #[arg(short)]
    pub n: usize,
    #[arg(short = 'A')]
    pub weight: usize,
    #[arg(short, default_value_t = 0)]
    pub q: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Determinant,
    Vanishing,
    Integrality,
    Decay,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// Weights `A` of the determinant and vanishing grid.
    #[arg(short = 'A', long = "weights", value_delimiter = ',', default_value = "2,3")]
    pub weights: Vec<usize>,
    /// Largest `n` per weight; defaults to 8 for `A = 2` and 5 otherwise.
    #[arg(long)]
    pub n_max: Option<usize>,
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    pub twists: Vec<u64>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "determinant,vanishing,integrality,decay")]
    pub suites: Vec<Suite>,

    /// Prime of the decay suite.
    #[arg(short, default_value_t = 5)]
    pub p: u32,
    #[arg(short, default_value_t = 2)]
    pub e: u64,
    #[arg(short, default_value = "2/5")]
    pub x: String,
    /// Inclusive `n` range of the decay suite.
    #[arg(long, default_value = "8-24")]
    pub decay_n: String,
    #[command(flatten)]
    pub precision: PrecisionArgs,

    #[arg(long, default_value_t = 50)]
    pub audits: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Perturb one matrix entry to check that the determinant suite notices.
    #[arg(long)]
    pub inject_fault: bool,
    /// Worker threads; 0 picks one per core.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Proposition,
    Theorem1,
}

impl From<VariantArg> for BoundVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Proposition => BoundVariant::Proposition,
            VariantArg::Theorem1 => BoundVariant::Theorem1,
        }
    }
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(short)]
    pub p: u32,
    #[arg(short = 'A')]
    pub weight: usize,
    #[arg(short, default_value_t = 2)]
    pub e: u64,
    #[arg(short)]
    pub x: String,
    #[arg(long, value_enum, default_value_t = VariantArg::Proposition)]
    pub variant: VariantArg,
    /// Skip the determinant certificate and vouch for independence.
    #[arg(long)]
    pub trust: bool,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(short = 'A')]
    pub weight: usize,
    #[arg(long = "pmax", default_value_t = 1000)]
    pub p_max: u64,
}

/// Every input a report depends on, resolved and echoed into the report.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub precision: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub guard: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision_ceiling: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<u64>,
    #[serde(rename = "A", skip_serializing_if = "Option::is_none")]
    pub weight: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<Grid>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<BoundVariant>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trust: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_max: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub format: Option<Format>,
    pub output: Option<String>,
}

/// Parameter grid of a certify run.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Grid {
    pub suites: Vec<Suite>,
    /// `(A, n)` pairs, sorted.
    pub determinant: Vec<(usize, usize)>,
    pub twists: Vec<u64>,
    pub decay_n: (usize, usize),
    pub decay_q: Vec<usize>,
    pub audits: usize,
    pub inject_fault: bool,
    pub threads: usize,
}

/// Smallest `n` admitted by both the system (`An >= n + 3`) and the
/// determinant shape (`(A-1)n >= 2`).
pub fn min_admissible_n(weight: usize) -> usize {
    (1..).find(|&n| weight * n >= n + 3 && (weight - 1) * n >= 2).expect("A >= 2")
}

pub fn default_n_max(weight: usize) -> usize {
    if weight == 2 {
        8
    } else {
        min_admissible_n(weight) + 3
    }
}

pub fn determinant_grid(weights: &[usize], n_max: Option<usize>) -> Result<Vec<(usize, usize)>, CliError> {
    let mut grid = Vec::new();
    for &a in weights {
        if a < 2 {
            return Err(CliError::invalid(format!("weights must be >= 2, got {a}")));
        }
        let hi = n_max.unwrap_or_else(|| default_n_max(a));
        grid.extend((min_admissible_n(a)..=hi).map(|n| (a, n)));
    }
    grid.sort_unstable();
    grid.dedup();
    Ok(grid)
}

/// `a/b` in lowest terms with `b > 0`.
pub fn parse_point(s: &str) -> Result<(i64, u64), CliError> {
    let r: Rational = parse_rational(s).map_err(CliError::from)?;
    let a = i64::try_from(r.numer().clone()).map_err(|_| CliError::invalid(format!("numerator of {s} too large")))?;
    let b = u64::try_from(r.denom().clone()).map_err(|_| CliError::invalid(format!("denominator of {s} too large")))?;
    if a == 0 {
        return Err(CliError::invalid("x must be nonzero"));
    }
    Ok((a, b))
}

pub fn parse_range(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::invalid(format!("expected LO-HI, got {s:?}"));
    let (lo, hi) = s.split_once('-').ok_or_else(bad)?;
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

impl Cli {
    /// Validates the arguments and fixes every default that reaches a report.
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig {
            format: Some(self.format),
            output: self.output.as_ref().map(|p| p.display().to_string()),
            ..RunConfig::default()
        };
        let point = |x: &str, cfg: &mut RunConfig| -> Result<(), CliError> {
            let (a, b) = parse_point(x)?;
            cfg.a = Some(a);
            cfg.b = Some(b);
            Ok(())
        };
        let precision = |pr: &PrecisionArgs, cfg: &mut RunConfig| -> Result<(), CliError> {
            if pr.precision < 1 || pr.guard < 0 {
                return Err(CliError::invalid("need N >= 1 and guard >= 0"));
            }
            cfg.precision = Some(pr.precision);
            cfg.guard = Some(pr.guard);
            Ok(())
        };
        match &self.command {
            Command::Zeta(z) => {
                cfg.command = "zeta".into();
                cfg.p = Some(z.p);
                cfg.s = Some(z.s);
                point(&z.x, &mut cfg)?;
                precision(&z.precision, &mut cfg)?;
            }
            Command::Tp(t) => {
                cfg.command = "tp".into();
                cfg.p = Some(t.p);
                cfg.s = Some(t.s);
                cfg.e = Some(t.e);
                point(&t.x, &mut cfg)?;
                precision(&t.precision, &mut cfg)?;
            }
            Command::Pade(pa) => {
                cfg.command = "pade".into();
                cfg.n = Some(pa.n);
                cfg.weight = Some(pa.weight);
                cfg.q = Some(pa.q);
            }
            Command::Certify(c) => {
                cfg.command = "certify".into();
                cfg.p = Some(c.p);
                cfg.e = Some(c.e);
                cfg.seed = Some(c.seed);
                cfg.precision_ceiling = Some(precision_ceiling());
                point(&c.x, &mut cfg)?;
                precision(&c.precision, &mut cfg)?;
                let mut suites = c.suites.clone();
                suites.sort_unstable();
                suites.dedup();
                let mut twists = c.twists.clone();
                twists.sort_unstable();
                twists.dedup();
                cfg.grid = Some(Grid {
                    suites,
                    determinant: determinant_grid(&c.weights, c.n_max)?,
                    twists,
                    decay_n: parse_range(&c.decay_n)?,
                    decay_q: vec![0, 1, 2],
                    audits: c.audits,
                    inject_fault: c.inject_fault,
                    threads: c.threads,
                });
            }
            Command::Bound(bd) => {
                cfg.command = "bound".into();
                cfg.p = Some(bd.p);
                cfg.e = Some(bd.e);
                cfg.weight = Some(bd.weight);
                cfg.variant = Some(bd.variant.into());
                cfg.trust = Some(bd.trust);
                point(&bd.x, &mut cfg)?;
            }
            Command::Scan(sc) => {
                cfg.command = "scan".into();
                cfg.weight = Some(sc.weight);
                cfg.p_max = Some(sc.p_max);
            }
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_has_ten_points() {
        let g = determinant_grid(&[2, 3], None).unwrap();
        assert_eq!(g.first(), Some(&(2, 3)));
        assert_eq!(g.len(), 10);
        for (a, n) in [(2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3)] {
            assert!(g.contains(&(a, n)));
        }
    }

    #[test]
    fn points_are_reduced() {
        assert_eq!(parse_point("4/10").unwrap(), (2, 5));
        assert_eq!(parse_point("-3/-9").unwrap(), (1, 3));
        assert!(parse_point("0/3").is_err());
        assert!(parse_point("1/0").is_err());
    }
}
