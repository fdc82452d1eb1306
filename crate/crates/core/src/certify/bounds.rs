use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{embed_complex, euler_phi, is_prime, multiplicative_order, prime_divisors, vp_int, CycloElement, cyclo_field, Rational};
use crate::pade::{at_root_of_unity, build_pade};

use super::determinant::DeterminantCertificate;

/// `c = ln b + sum_{q | b} ln q / (q - 1) + A + (A - 1) ln 2`.
pub fn c_bound(b: u64, a: usize) -> f64 {
    let lb = (b as f64).ln();
    let primes: f64 = prime_divisors(b)
        .into_iter()
        .map(|q| (q as f64).ln() / (q as f64 - 1.0))
        .sum();
    lb + primes + a as f64 + (a as f64 - 1.0) * std::f64::consts::LN_2
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SlopePoint {
    pub n: usize,
    pub slope: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SlopeReport {
    pub points: Vec<SlopePoint>,
    pub final_slope: f64,
    /// `(A - 1) ln 2`.
    pub cap: f64,
    pub c_bound: f64,
}

/// `(1/n) ln max_{s in [0, A]} |P_s^{(q)}(x0, xi)|` for every admissible
/// `n <= n_max`, each value evaluated exactly in `Q(xi)` before embedding.
pub fn archimedean_slope(a: usize, q: usize, x0: &Rational, e: u64, n_max: usize) -> Result<SlopeReport> {
    let field = cyclo_field(e);
    let x = CycloElement::from_rational(&field, x0.clone());
    let mut points = Vec::new();
    for n in 1..=n_max {
        if a * n < n + 3 {
            continue;
        }
        let sys = build_pade(n, a, q)?;
        let max = (0..=a)
            .map(|s| embed_complex(&at_root_of_unity(sys.poly(s), e).eval(&x)).norm())
            .fold(0.0f64, f64::max);
        points.push(SlopePoint { n, slope: max.ln() / n as f64 });
    }
    let final_slope = points
        .last()
        .map(|pt| pt.slope)
        .ok_or_else(|| Error::InvalidParameter(format!("no admissible n <= {n_max} for A = {a}")))?;
    let b = num_traits::ToPrimitive::to_u64(x0.denom()).unwrap_or(1);
    Ok(SlopeReport {
        points,
        final_slope,
        cap: (a as f64 - 1.0) * std::f64::consts::LN_2,
        c_bound: c_bound(b, a),
    })
}

/// Which degree ratio feeds the dimension bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundVariant {
    /// `[Q_p(xi) : Q_p] / phi(e)`.
    Proposition,
    /// `[Q_p(xi) : Q_p] / phi(v)`, `v = lcm(e, p - 1)`.
    Theorem1,
}

/// Grounds for trusting the linear independence of the forms.
#[derive(Clone, Copy, Debug)]
pub enum Evidence<'a> {
    Certificate(&'a DeterminantCertificate),
    /// The caller vouches for the determinant without a certificate.
    Trusted,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundReport {
    pub a: i64,
    pub b: u64,
    pub p: u32,
    pub e: u64,
    #[serde(rename = "A")]
    pub weight: usize,
    pub variant: BoundVariant,
    pub ext_degree: u64,
    pub field_degree: u64,
    pub c_bound: f64,
    pub rho_bound: f64,
    pub tau_lower_bound: f64,
    pub certified: bool,
}

/// `tau >= ext_degree / field_degree * A ln|x|_p / c` for `x = a/b`.
pub fn dimension_bound(
    a: i64,
    b: u64,
    p: u32,
    e: u64,
    weight: usize,
    variant: BoundVariant,
    evidence: Evidence<'_>,
) -> Result<BoundReport> {
    let certified = match evidence {
        Evidence::Certificate(c) if c.verified && c.a == weight => true,
        Evidence::Certificate(c) => {
            return Err(Error::InvalidParameter(format!(
                "certificate for A = {} (verified = {}) does not cover A = {weight}",
                c.a, c.verified
            )))
        }
        Evidence::Trusted => false,
    };
    if !is_prime(p as u64) || b == 0 || a == 0 {
        return Err(Error::InvalidParameter(format!("need a prime p and a, b nonzero (p = {p}, x = {a}/{b})")));
    }
    let v = vp_int(&a.into(), p).unwrap_or(0) - vp_int(&b.into(), p).unwrap_or(0);
    if v > -1 {
        return Err(Error::Domain(format!("need |a/b|_p >= p, got v_p = {v}")));
    }
    let ext_degree = multiplicative_order(p as u64, e)?;
    let field_degree = match variant {
        BoundVariant::Proposition => euler_phi(e),
        BoundVariant::Theorem1 => euler_phi(num_integer::lcm(e, p as u64 - 1)),
    };
    let c = c_bound(b, weight);
    let rho = weight as f64 * (-v) as f64 * (p as f64).ln();
    Ok(BoundReport {
        a,
        b,
        p,
        e,
        weight,
        variant,
        ext_degree,
        field_degree,
        c_bound: c,
        rho_bound: rho,
        tau_lower_bound: ext_degree as f64 / field_degree as f64 * rho / c,
        certified,
    })
}

/// Dimension bound at `x = 2/p`, `e = 2`:
/// `A ln p / (ln p + ln p / (p - 1) + A + (A - 1) ln 2)`.
pub fn theorem2_bound(weight: usize, p: u64) -> f64 {
    let lp = (p as f64).ln();
    let a = weight as f64;
    a * lp / (lp + lp / (p as f64 - 1.0) + a + (a - 1.0) * std::f64::consts::LN_2)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScanRow {
    pub p: u64,
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScanReport {
    #[serde(rename = "A")]
    pub weight: usize,
    /// Least odd prime whose bound exceeds `A - 1`, when one lies below `p_max`.
    pub threshold: Option<u64>,
    pub table: Vec<ScanRow>,
}

/// Scans odd primes `p <= p_max` for the least one with bound `> A - 1`.
pub fn theorem2_scan(weight: usize, p_max: u64) -> Result<ScanReport> {
    if weight < 2 {
        return Err(Error::InvalidParameter(format!("A must be >= 2, got {weight}")));
    }
    let mut table = Vec::new();
    let mut threshold = None;
    for p in (3..=p_max).filter(|&p| is_prime(p)) {
        let bound = theorem2_bound(weight, p);
        table.push(ScanRow { p, bound });
        if bound > weight as f64 - 1.0 {
            threshold = Some(p);
            break;
        }
    }
    Ok(ScanReport { weight, threshold, table })
}

/// Real root of `theorem2_bound(A, t) = A - 1`, bracketed and bisected over
/// `t > 2` (the bound increases with `t`).
pub fn theorem2_root(weight: usize) -> f64 {
    let target = weight as f64 - 1.0;
    let f = |t: f64| {
        let lt = t.ln();
        let a = weight as f64;
        a * lt / (lt + lt / (t - 1.0) + a + (a - 1.0) * std::f64::consts::LN_2) - target
    };
    let mut lo = 2.5;
    let mut hi = 4.0;
    while f(hi) <= 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}
