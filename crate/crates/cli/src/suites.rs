//! The certificate suites behind `padelin certify`. Each suite maps grid
//! points to records in grid order, whatever order the workers finish in.

use padelin_core::certify::{
    certify_matrix, determinant_certificate, integrality_audit, linear_form, linear_form_from_series, pade_matrix,
    DeterminantCertificate, CERTIFICATE_SCHEMA,
};
use padelin_core::exact::{aritmu_check, rat};
use padelin_core::pade::{build_pade, remainder_series, vanishing_bound};
use padelin_core::padic::PrecisionContext;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Grid, Suite};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DeterminantRecord {
    #[serde(rename = "A")]
    pub weight: usize,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<DeterminantCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl DeterminantRecord {
    pub fn ok(&self) -> bool {
        self.certificate.as_ref().is_some_and(|c| c.verified)
    }
}

/// `Omega_n` factorisation at every `(A, n)`; with `inject_fault` the
/// constant term of `P_0^{(0)}` at the first grid point is shifted by one.
pub fn determinant_suite(points: &[(usize, usize)], inject_fault: bool) -> Vec<DeterminantRecord> {
    points
        .par_iter()
        .enumerate()
        .map(|(i, &(weight, n))| {
            let result = if inject_fault && i == 0 {
                pade_matrix(n, weight).and_then(|mut m| {
                    m[0][0].add_term(0, 0, rat(1, 1));
                    certify_matrix(n, weight, m)
                })
            } else {
                determinant_certificate(n, weight)
            };
            match result {
                Ok(c) => DeterminantRecord { weight, n, certificate: Some(c), error: None },
                Err(e) => DeterminantRecord { weight, n, certificate: None, error: Some(e.to_string()) },
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VanishingRecord {
    #[serde(rename = "A")]
    pub weight: usize,
    pub n: usize,
    pub e: u64,
    pub truncation: i64,
    /// `A(n-1) - 3`.
    pub bound: i64,
    pub first_nonzero: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl VanishingRecord {
    pub fn ok(&self) -> bool {
        self.error.is_none() && self.first_nonzero.is_some_and(|k| k >= self.bound)
    }
}

/// `u_k = 0` for `k < A(n-1) - 3` with truncation `K = An + 10`, and some
/// `u_k` beyond the bound is nonzero.
pub fn vanishing_suite(points: &[(usize, usize)], twists: &[u64]) -> Vec<VanishingRecord> {
    let jobs: Vec<(usize, usize, u64)> =
        points.iter().flat_map(|&(a, n)| twists.iter().map(move |&e| (a, n, e))).collect();
    jobs.par_iter()
        .map(|&(weight, n, e)| {
            let truncation = (weight * n + 10) as i64;
            let bound = vanishing_bound(n, weight);
            let series = build_pade(n, weight, 0).and_then(|sys| remainder_series(&sys, e, truncation));
            match series {
                Ok(s) => VanishingRecord {
                    weight,
                    n,
                    e,
                    truncation,
                    bound,
                    first_nonzero: s.first_nonzero(),
                    error: None,
                },
                Err(err) => VanishingRecord {
                    weight,
                    n,
                    e,
                    truncation,
                    bound,
                    first_nonzero: None,
                    error: Some(err.to_string()),
                },
            }
        })
        .collect()
}

/// One randomized integrality case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AuditTuple {
    pub n: usize,
    #[serde(rename = "A")]
    pub weight: usize,
    pub q: usize,
    pub a: i64,
    pub b: u64,
    pub p: u32,
    pub e: u64,
}

pub const AUDIT_PRIMES: [u32; 5] = [2, 3, 5, 7, 13];

/// `count` tuples with `n <= 20`, `A <= 3`, `b <= 50`, `gcd(a, b) = 1` and
/// `p` drawn from [`AUDIT_PRIMES`], reproducible from `seed`.
pub fn audit_tuples(seed: u64, count: usize) -> Vec<AuditTuple> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let weight = rng.gen_range(2..=3);
            let n = rng.gen_range(crate::config::min_admissible_n(weight)..=20);
            let q = rng.gen_range(0..=weight);
            let b = rng.gen_range(1..=50u64);
            let a = loop {
                let a = rng.gen_range(1..=60i64);
                if num_gcd(a.unsigned_abs(), b) == 1 {
                    break a;
                }
            };
            let p = *AUDIT_PRIMES.choose(&mut rng).expect("nonempty");
            let e = rng.gen_range(2..=6);
            AuditTuple { n, weight, q, a, b, p, e }
        })
        .collect()
}

fn num_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IntegralityRecord {
    pub tuple: AuditTuple,
    /// The four Padé statements, in order.
    pub statements: [bool; 4],
    /// Both normaliser statements for every `k in [0, n]`.
    pub normalisers: bool,
    pub failures: Vec<String>,
}

impl IntegralityRecord {
    pub fn ok(&self) -> bool {
        self.failures.is_empty() && self.statements.iter().all(|&s| s) && self.normalisers
    }
}

pub fn integrality_suite(tuples: &[AuditTuple]) -> Vec<IntegralityRecord> {
    tuples
        .par_iter()
        .map(|&t| {
            let mut failures = Vec::new();
            let statements = match build_pade(t.n, t.weight, t.q)
                .and_then(|sys| integrality_audit(&sys, t.a, t.b, t.p, t.e))
            {
                Ok(r) => {
                    failures.extend(r.failures.iter().cloned());
                    r.statements
                }
                Err(err) => {
                    failures.push(err.to_string());
                    [false; 4]
                }
            };
            let mut normalisers = true;
            for k in 0..=t.n as u64 {
                match aritmu_check(t.a, t.b, t.n as u64, k) {
                    Ok(r) if r.is_int1 && r.is_int2 => {}
                    Ok(_) => {
                        normalisers = false;
                        failures.push(format!("normaliser statement fails at k = {k}"));
                    }
                    Err(err) => {
                        normalisers = false;
                        failures.push(err.to_string());
                    }
                }
            }
            IntegralityRecord { tuple: t, statements, normalisers, failures }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DecayRecord {
    pub n: usize,
    pub q: usize,
    pub valuation: Option<i64>,
    /// `2n - 8`.
    pub floor: i64,
    pub working_precision: Option<i64>,
    /// Direct and remainder-series values agree to the certified precision.
    pub two_path: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl DecayRecord {
    pub fn ok(&self) -> bool {
        self.error.is_none() && self.two_path && self.valuation.is_some_and(|v| v >= self.floor)
    }
}

pub struct DecayPoint {
    pub a: i64,
    pub b: u64,
    pub p: u32,
    pub e: u64,
    pub precision: i64,
    pub guard: i64,
}

/// `v_p(U_n) >= 2n - 8` with `A = 2`, plus agreement of the direct and
/// remainder-series evaluations, for each `(n, q)`.
pub fn decay_suite(pt: &DecayPoint, ns: (usize, usize), qs: &[usize]) -> Vec<DecayRecord> {
    let jobs: Vec<(usize, usize)> = (ns.0..=ns.1).flat_map(|n| qs.iter().map(move |&q| (n, q))).collect();
    jobs.par_iter()
        .map(|&(n, q)| {
            let floor = 2 * n as i64 - 8;
            let run = || -> padelin_core::Result<(i64, i64, bool)> {
                let sys = build_pade(n, 2, q)?;
                let ctx = PrecisionContext::new(pt.p, pt.precision, pt.guard)?;
                let lf = linear_form(&sys, pt.a, pt.b, pt.p, pt.e, &ctx)?;
                let target = lf.value.precision();
                let other = linear_form_from_series(&sys, pt.a, pt.b, pt.p, pt.e, target)?;
                Ok((lf.valuation, lf.working_precision, lf.value.agrees_to(&other, target)))
            };
            match run() {
                Ok((v, wp, agree)) => DecayRecord {
                    n,
                    q,
                    valuation: Some(v),
                    floor,
                    working_precision: Some(wp),
                    two_path: agree,
                    error: None,
                },
                Err(err) => DecayRecord {
                    n,
                    q,
                    valuation: None,
                    floor,
                    working_precision: None,
                    two_path: false,
                    error: Some(err.to_string()),
                },
            }
        })
        .collect()
}

/// Records `(p, N, grid)` so a bundle can be regenerated.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Manifest {
    pub schema: &'static str,
    pub certificate_schema: &'static str,
    pub p: u32,
    #[serde(rename = "N")]
    pub precision: i64,
    pub seed: u64,
    pub grid: Grid,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CertifyBundle {
    pub manifest: Manifest,
    pub determinants: Vec<DeterminantRecord>,
    pub vanishing: Vec<VanishingRecord>,
    pub integrality: Vec<IntegralityRecord>,
    pub decay: Vec<DecayRecord>,
    pub verified: bool,
    /// First falsified check in suite order, then grid order.
    pub first_failure: Option<String>,
}

pub fn certify(grid: &Grid, pt: &DecayPoint, seed: u64) -> CertifyBundle {
    let runs = |s: Suite| grid.suites.contains(&s);
    let determinants = if runs(Suite::Determinant) {
        determinant_suite(&grid.determinant, grid.inject_fault)
    } else {
        Vec::new()
    };
    let vanishing = if runs(Suite::Vanishing) {
        vanishing_suite(&grid.determinant, &grid.twists)
    } else {
        Vec::new()
    };
    let integrality = if runs(Suite::Integrality) {
        integrality_suite(&audit_tuples(seed, grid.audits))
    } else {
        Vec::new()
    };
    let decay = if runs(Suite::Decay) {
        decay_suite(pt, grid.decay_n, &grid.decay_q)
    } else {
        Vec::new()
    };

    let first_failure = determinants
        .iter()
        .find(|r| !r.ok())
        .map(|r| format!("determinant A = {} n = {}: {}", r.weight, r.n, r.error.as_deref().unwrap_or("unverified")))
        .or_else(|| {
            vanishing.iter().find(|r| !r.ok()).map(|r| {
                format!(
                    "vanishing A = {} n = {} e = {}: {}",
                    r.weight,
                    r.n,
                    r.e,
                    r.error.clone().unwrap_or_else(|| format!("first nonzero u_k at {:?}", r.first_nonzero))
                )
            })
        })
        .or_else(|| {
            integrality
                .iter()
                .find(|r| !r.ok())
                .map(|r| format!("integrality {:?}: {}", r.tuple, r.failures.join("; ")))
        })
        .or_else(|| {
            decay.iter().find(|r| !r.ok()).map(|r| {
                format!(
                    "decay n = {} q = {}: {}",
                    r.n,
                    r.q,
                    r.error.clone().unwrap_or_else(|| format!(
                        "v = {:?}, floor {}, two paths agree: {}",
                        r.valuation, r.floor, r.two_path
                    ))
                )
            })
        });

    CertifyBundle {
        manifest: Manifest {
            schema: crate::report::REPORT_SCHEMA,
            certificate_schema: CERTIFICATE_SCHEMA,
            p: pt.p,
            precision: pt.precision,
            seed,
            grid: grid.clone(),
        },
        determinants,
        vanishing,
        integrality,
        decay,
        verified: first_failure.is_none(),
        first_failure,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples_are_reproducible_and_in_range() {
        let t = audit_tuples(7, 50);
        assert_eq!(t, audit_tuples(7, 50));
        assert_ne!(t, audit_tuples(8, 50));
        for x in t {
            assert!(x.n <= 20 && (2..=3).contains(&x.weight) && x.b <= 50 && x.q <= x.weight);
            assert!(AUDIT_PRIMES.contains(&x.p));
            assert_eq!(num_gcd(x.a as u64, x.b), 1);
        }
    }

    #[test]
    fn fault_is_caught() {
        let r = determinant_suite(&[(2, 3), (2, 4)], true);
        assert!(!r[0].ok());
        assert!(r[1].ok());
    }
}
