//! Batch front-end over `padelin-core`: every subcommand resolves its
//! arguments into a [`RunConfig`], computes, and renders a versioned report.

pub mod config;
pub mod error;
pub mod report;
pub mod suites;

use padelin_core::certify::{
    determinant_certificate, dimension_bound, theorem2_root, theorem2_scan, BoundReport, DeterminantCertificate,
    Evidence, ScanReport,
};
use padelin_core::exact::{vp_int, Rational};
use padelin_core::pade::{build_pade, PadeSystemJson};
use padelin_core::padic::{t_p, t_p_series, zeta_p_any, PAdicExtJson, PAdicJson, PrecisionContext};
use serde::Serialize;

pub use config::{Cli, Command, RunConfig};
pub use error::{CliError, EXIT_FALSIFIED, EXIT_INVALID, EXIT_OK};
use report::{digit_string, Report};
use suites::{CertifyBundle, DecayPoint};

/// A rendered report plus what the process should do with it.
#[derive(Debug)]
pub struct Outcome {
    pub config: RunConfig,
    pub rendered: String,
    /// Set for `certify` so the grid can be regenerated.
    pub manifest: Option<String>,
    pub code: i32,
    /// Why `code` is nonzero.
    pub diagnostic: Option<String>,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = cli.resolve()?;
    let (rendered, ok, manifest, diagnostic) = match &cli.command {
        Command::Zeta(_) => finish(zeta(&cfg)?, &cfg)?,
        Command::Tp(_) => finish(tp(&cfg)?, &cfg)?,
        Command::Pade(_) => finish(pade(&cfg)?, &cfg)?,
        Command::Bound(_) => finish(bound(&cfg)?, &cfg)?,
        Command::Scan(_) => finish(scan(&cfg)?, &cfg)?,
        Command::Certify(c) => {
            let report = certify(&cfg, c.threads)?;
            let manifest = serde_json::to_string_pretty(&report.result.manifest)
                .map_err(|e| CliError::falsified(e.to_string()))?
                + "\n";
            let diagnostic = report.result.first_failure.clone();
            let (rendered, ok, _, _) = finish(report, &cfg)?;
            (rendered, ok, Some(manifest), diagnostic)
        }
    };
    Ok(Outcome {
        code: if ok { EXIT_OK } else { EXIT_FALSIFIED },
        config: cfg,
        rendered,
        manifest,
        diagnostic,
    })
}

type Finished = (String, bool, Option<String>, Option<String>);

fn finish<T: Serialize>(report: Report<T>, cfg: &RunConfig) -> Result<Finished, CliError> {
    Ok((report.render(cfg)?, report.ok, None, None))
}

fn point_of(cfg: &RunConfig) -> Rational {
    Rational::new(cfg.a.expect("resolved").into(), cfg.b.expect("resolved").into())
}

fn context_of(cfg: &RunConfig) -> Result<PrecisionContext, CliError> {
    Ok(PrecisionContext::new(cfg.p.expect("resolved"), cfg.precision.expect("resolved"), cfg.guard.expect("resolved"))?)
}

/// `|a/b|_p > 1`.
fn require_pole(cfg: &RunConfig) -> Result<(), CliError> {
    let p = cfg.p.expect("resolved");
    let (a, b) = (cfg.a.expect("resolved"), cfg.b.expect("resolved"));
    let v = vp_int(&a.into(), p).unwrap_or(0) - vp_int(&b.into(), p).unwrap_or(0);
    if v >= 0 {
        return Err(CliError::invalid(format!("domain error: need |x|_{p} > 1, got x = {a}/{b}")));
    }
    Ok(())
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ZetaResult {
    /// `p^v*[digits] + O(p^N)`, digits little-endian.
    value: String,
    padic: PAdicJson,
    method: &'static str,
}

fn zeta(cfg: &RunConfig) -> Result<Report<ZetaResult>, CliError> {
    let ctx = context_of(cfg)?;
    require_pole(cfg)?;
    let s = cfg.s.expect("resolved");
    let x = ctx.from_rational(&point_of(cfg));
    let value = zeta_p_any(s, &x, &ctx)?.reduce_precision(ctx.n);
    let method = match s {
        s if s >= 2 => "series",
        1 => "regularised",
        _ => "closed form",
    };
    let rows = vec![vec![
        ctx.p.to_string(),
        s.to_string(),
        format!("{}/{}", cfg.a.unwrap(), cfg.b.unwrap()),
        value.valuation().map_or(String::new(), |v| v.to_string()),
        value.precision().to_string(),
        digit_string(&value.padded_digits()),
    ]];
    Ok(Report {
        ok: true,
        result: ZetaResult { value: value.to_string(), padic: value.to_json(), method },
        header: vec!["p", "s", "x", "valuation", "precision", "digits"],
        rows,
    })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct TpResult {
    value: String,
    padic: PAdicExtJson,
    /// The expansion in powers of `x + l` gives the same digits.
    series_agrees: bool,
}

fn tp(cfg: &RunConfig) -> Result<Report<TpResult>, CliError> {
    let ctx = context_of(cfg)?;
    require_pole(cfg)?;
    let (s, e) = (cfg.s.expect("resolved"), cfg.e.expect("resolved"));
    let x = ctx.from_rational(&point_of(cfg));
    let value = t_p(s, &x, e, &ctx)?.reduce_precision(ctx.n);
    let series_agrees = value.agrees_to(&t_p_series(s, &x, e, &ctx)?, ctx.n);
    let rows = value
        .coords()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            vec![
                i.to_string(),
                c.valuation().map_or(String::new(), |v| v.to_string()),
                c.precision().to_string(),
                digit_string(&c.padded_digits()),
            ]
        })
        .collect();
    Ok(Report {
        ok: series_agrees,
        result: TpResult { value: value.to_string(), padic: value.to_json(), series_agrees },
        header: vec!["xi_power", "valuation", "precision", "digits"],
        rows,
    })
}

fn pade(cfg: &RunConfig) -> Result<Report<PadeSystemJson>, CliError> {
    let sys = build_pade(cfg.n.expect("resolved"), cfg.weight.expect("resolved"), cfg.q.expect("resolved"))?;
    let json = sys.to_json();
    let rows = json
        .p
        .iter()
        .enumerate()
        .flat_map(|(s, terms)| {
            terms.iter().map(move |t| {
                vec![
                    s.to_string(),
                    t.deg_x.to_string(),
                    t.deg_z.to_string(),
                    t.numerator.clone(),
                    t.denominator.clone(),
                ]
            })
        })
        .collect();
    Ok(Report {
        ok: true,
        result: json,
        header: vec!["s", "degX", "degZ", "numerator", "denominator"],
        rows,
    })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct BoundResult {
    bound: BoundReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<DeterminantCertificate>,
    /// `ceil(tau_lower_bound)`: the span has at least this dimension.
    dimension_at_least: u64,
    verdict: String,
}

fn bound(cfg: &RunConfig) -> Result<Report<BoundResult>, CliError> {
    let (a, b) = (cfg.a.expect("resolved"), cfg.b.expect("resolved"));
    let (p, e, weight) = (cfg.p.expect("resolved"), cfg.e.expect("resolved"), cfg.weight.expect("resolved"));
    let variant = cfg.variant.expect("resolved");
    // validates every input before the certificate is paid for
    let trusted = dimension_bound(a, b, p, e, weight, variant, Evidence::Trusted)?;
    let (bound, certificate) = if cfg.trust == Some(true) {
        (trusted, None)
    } else {
        let cert = determinant_certificate(config::min_admissible_n(weight), weight)?;
        (dimension_bound(a, b, p, e, weight, variant, Evidence::Certificate(&cert))?, Some(cert))
    };
    let dimension_at_least = bound.tau_lower_bound.ceil().max(1.0) as u64;
    let verdict = format!(
        "tau >= {dimension_at_least} (bound {:.6}, {})",
        bound.tau_lower_bound,
        if bound.certified { "certified" } else { "trusted" }
    );
    let rows = vec![vec![
        p.to_string(),
        format!("{a}/{b}"),
        e.to_string(),
        weight.to_string(),
        format!("{:.6}", bound.c_bound),
        format!("{:.6}", bound.rho_bound),
        format!("{:.6}", bound.tau_lower_bound),
        dimension_at_least.to_string(),
        bound.certified.to_string(),
    ]];
    Ok(Report {
        ok: true,
        result: BoundResult { bound, certificate, dimension_at_least, verdict },
        header: vec!["p", "x", "e", "A", "c", "rho", "tau_lower_bound", "dimension_at_least", "certified"],
        rows,
    })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ScanResult {
    /// Least odd prime whose bound exceeds `A - 1`; derived from the bound
    /// formula, not stated as a closed constant.
    #[serde(rename = "M_A")]
    m_a: Option<u64>,
    /// Real root of `bound(t) = A - 1`.
    root: f64,
    scan: ScanReport,
}

fn scan(cfg: &RunConfig) -> Result<Report<ScanResult>, CliError> {
    let weight = cfg.weight.expect("resolved");
    let scan = theorem2_scan(weight, cfg.p_max.expect("resolved"))?;
    let rows = scan.table.iter().map(|r| vec![r.p.to_string(), format!("{:.6}", r.bound)]).collect();
    Ok(Report {
        ok: true,
        result: ScanResult { m_a: scan.threshold, root: theorem2_root(weight), scan },
        header: vec!["p", "bound"],
        rows,
    })
}

fn certify(cfg: &RunConfig, threads: usize) -> Result<Report<CertifyBundle>, CliError> {
    let grid = cfg.grid.clone().expect("resolved");
    let pt = DecayPoint {
        a: cfg.a.expect("resolved"),
        b: cfg.b.expect("resolved"),
        p: cfg.p.expect("resolved"),
        e: cfg.e.expect("resolved"),
        precision: cfg.precision.expect("resolved"),
        guard: cfg.guard.expect("resolved"),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::falsified(e.to_string()))?;
    let bundle = pool.install(|| suites::certify(&grid, &pt, cfg.seed.expect("resolved")));
    let rows = bundle
        .decay
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.q.to_string(),
                r.valuation.map_or(String::new(), |v| v.to_string()),
                r.floor.to_string(),
                r.working_precision.map_or(String::new(), |v| v.to_string()),
                r.two_path.to_string(),
            ]
        })
        .collect();
    Ok(Report {
        ok: bundle.verified,
        result: bundle,
        header: vec!["n", "q", "valuation", "floor", "working_precision", "two_path"],
        rows,
    })
}
