use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{cyclo_field, lcm_upto, mu, vp_int, CycloElement, Rational, Scalar};
use crate::pade::{at_root_of_unity, remainder_series, PadeSystem};
use crate::padic::{t_p, unramified_extension, PAdicExt, PAdicExtJson, PrecisionContext};

use super::report::bigint_string;

/// Environment variable capping the auto-raised working precision.
pub const PRECISION_CEILING_VAR: &str = "PADELIN_MAX_PRECISION";
const DEFAULT_CEILING: i64 = 4096;

pub fn precision_ceiling() -> i64 {
    std::env::var(PRECISION_CEILING_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CEILING)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Normalizers {
    pub b: u64,
    #[serde(serialize_with = "bigint_string")]
    pub mu_b: BigInt,
    #[serde(serialize_with = "bigint_string")]
    pub d_n_pow_a: BigInt,
}

/// `U_n = b mu_n(b) d_n^A (P_0(x, xi) + sum_s P_s(x, xi) T_p(s, x))` at `x = a/b`.
#[derive(Clone)]
pub struct LinearFormValue {
    pub n: usize,
    pub weight: usize,
    pub q: usize,
    pub value: PAdicExt,
    pub valuation: i64,
    pub normalizers: Normalizers,
    /// Working precision `N` at which the valuation was certified.
    pub working_precision: i64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LinearFormJson {
    pub n: usize,
    #[serde(rename = "A")]
    pub weight: usize,
    pub q: usize,
    pub valuation: i64,
    pub working_precision: i64,
    pub normalizers: Normalizers,
    pub value: PAdicExtJson,
}

impl LinearFormValue {
    pub fn to_json(&self) -> LinearFormJson {
        LinearFormJson {
            n: self.n,
            weight: self.weight,
            q: self.q,
            valuation: self.valuation,
            working_precision: self.working_precision,
            normalizers: self.normalizers.clone(),
            value: self.value.to_json(),
        }
    }
}

struct Point {
    x: Rational,
    /// `w = -v_p(x) >= 1`.
    w: i64,
}

fn check_point(a: i64, b: u64, p: u32) -> Result<Point> {
    if b == 0 || a == 0 || BigInt::from(a).gcd(&BigInt::from(b)) != BigInt::from(1) {
        return Err(Error::InvalidParameter(format!("need a != 0, b > 0, gcd(a, b) = 1; got {a}/{b}")));
    }
    let w = vp_int(&BigInt::from(b), p).unwrap_or(0) - vp_int(&BigInt::from(a), p).unwrap_or(0);
    if w < 1 {
        return Err(Error::Domain(format!("need |a/b|_{p} >= {p}")));
    }
    Ok(Point { x: Rational::new(a.into(), b.into()), w })
}

fn normalizers(n: usize, weight: usize, b: u64) -> Normalizers {
    Normalizers {
        b,
        mu_b: mu(b, n as u64),
        d_n_pow_a: num_traits::pow(lcm_upto(n as u64), weight),
    }
}

fn scale_of(nz: &Normalizers) -> Rational {
    Rational::from_integer(BigInt::from(nz.b) * &nz.mu_b * &nz.d_n_pow_a)
}

fn evaluate(sys: &PadeSystem, pt: &Point, e: u64, ctx: &PrecisionContext, scale: &Rational) -> Result<PAdicExt> {
    let m = unramified_extension(e, ctx)?;
    let field = cyclo_field(e);
    let x_cyclo = CycloElement::from_rational(&field, pt.x.clone());
    let x = ctx.from_rational(&pt.x);
    let at = |s: usize| PAdicExt::from_cyclo(&m, &at_root_of_unity(sys.poly(s), e).eval(&x_cyclo));
    let mut acc = at(0);
    for s in 1..=sys.weight() {
        acc = acc.add(&at(s).mul(&t_p(s as i64, &x, e, ctx)?));
    }
    Ok(acc.scale_rational(scale))
}

/// Evaluates `U_n`, doubling the working precision until the valuation is
/// certified (`v + guard < N`) or the ceiling from the environment is passed.
pub fn linear_form(sys: &PadeSystem, a: i64, b: u64, p: u32, e: u64, ctx: &PrecisionContext) -> Result<LinearFormValue> {
    linear_form_with_ceiling(sys, a, b, p, e, ctx, precision_ceiling())
}

pub fn linear_form_with_ceiling(
    sys: &PadeSystem,
    a: i64,
    b: u64,
    p: u32,
    e: u64,
    ctx: &PrecisionContext,
    ceiling: i64,
) -> Result<LinearFormValue> {
    if ctx.p != p {
        return Err(Error::InvalidParameter(format!("context prime {} differs from p = {p}", ctx.p)));
    }
    let pt = check_point(a, b, p)?;
    let nz = normalizers(sys.n(), sys.weight(), b);
    let scale = scale_of(&nz);
    let mut c = *ctx;
    loop {
        let value = evaluate(sys, &pt, e, &c, &scale)?;
        if let Some(v) = value.valuation().filter(|&v| v + c.guard < value.precision()) {
            return Ok(LinearFormValue {
                n: sys.n(),
                weight: sys.weight(),
                q: sys.q(),
                value,
                valuation: v,
                normalizers: nz,
                working_precision: c.n,
            });
        }
        let next = c.n * 2;
        if next > ceiling {
            return Err(Error::PrecisionExhausted(format!(
                "U_{} not certified below working precision {} (ceiling {ceiling}, {PRECISION_CEILING_VAR})",
                sys.n(),
                c.n
            )));
        }
        c = c.with_precision(next);
    }
}

/// Lower bound `v_p(u_k) >= -floor(n/(p-1)) - 1 - floor(log_p(k+n+1))` for
/// `gcd(e, p) = 1`.
pub fn coefficient_floor(k: i64, n: usize, p: u32) -> i64 {
    let mut lg = 0;
    let mut pw = p as i64;
    while pw <= k + n as i64 + 1 {
        lg += 1;
        pw *= p as i64;
    }
    -((n / (p as usize - 1)) as i64) - 1 - lg
}

/// Indices `k` whose `u_k` break the coefficient bound.
pub fn coefficient_bound_violations(sys: &PadeSystem, e: u64, p: u32, trunc: i64) -> Result<Vec<i64>> {
    let series = remainder_series(sys, e, trunc)?;
    Ok(series
        .coeffs
        .terms()
        .filter(|(k, u)| u.min_valuation(p).is_some_and(|v| v < coefficient_floor(*k, sys.n(), p)))
        .map(|(k, _)| k)
        .collect())
}

/// `U_n` from the exact remainder series `sum_k u_k x^{-k}`, summed up to
/// the first `K` whose tail lies below `p^{target}`; the result carries that
/// absolute precision.
pub fn linear_form_from_series(sys: &PadeSystem, a: i64, b: u64, p: u32, e: u64, target: i64) -> Result<PAdicExt> {
    let pt = check_point(a, b, p)?;
    let nz = normalizers(sys.n(), sys.weight(), b);
    // the u_k already carry d_n^A
    let scale = Rational::from_integer(BigInt::from(nz.b) * &nz.mu_b);
    let shift = vp_int(scale.numer(), p).unwrap_or(0);
    let n = sys.n();
    let mut k = 0i64;
    while pt.w * (k + 1) + coefficient_floor(k + 1, n, p) + shift < target {
        k += 1;
    }
    let series = remainder_series(sys, e, k.max(crate::pade::vanishing_bound(n, sys.weight())))?;
    let field = cyclo_field(e);
    let xinv = Rational::from_integer(1.into()) / &pt.x;
    let mut sum = CycloElement::zero(&field);
    for (idx, u) in series.coeffs.terms() {
        let pw = if idx >= 0 {
            num_traits::pow(xinv.clone(), idx as usize)
        } else {
            num_traits::pow(pt.x.clone(), (-idx) as usize)
        };
        sum = sum.add_ref(&u.scale(&pw));
    }
    let ctx = PrecisionContext::new(p, target.max(1), 8)?;
    let m = unramified_extension(e, &ctx)?;
    Ok(PAdicExt::from_cyclo(&m, &sum.scale(&scale)).reduce_precision(target))
}

/// Finite-`n` floor on `v_p(U_n)`: `v_p(b mu_n(b) d_n^A)` plus the least
/// coefficient bound over `k >= (A-1)n - 3`, each term weighted by `|x|_p^{-k}`.
pub fn decay_floor(n: usize, weight: usize, a: i64, b: u64, p: u32) -> Result<i64> {
    let pt = check_point(a, b, p)?;
    let nz = normalizers(n, weight, b);
    let shift = vp_int(scale_of(&nz).numer(), p).unwrap_or(0);
    let k0 = ((weight - 1) * n) as i64 - 3;
    Ok(shift + pt.w * k0 + coefficient_floor(k0, n, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pade::build_pade;

    #[test]
    fn prototype_decay_and_two_paths() {
        let sys = build_pade(10, 2, 0).unwrap();
        let ctx = PrecisionContext::new(5, 40, 8).unwrap();
        let lf = linear_form(&sys, 2, 5, 5, 2, &ctx).unwrap();
        assert!(lf.valuation >= 2 * 10 - 8, "v = {}", lf.valuation);
        let target = lf.value.precision().min(60);
        let other = linear_form_from_series(&sys, 2, 5, 5, 2, target).unwrap();
        assert!(lf.value.agrees_to(&other, target));
    }

    #[test]
    fn coefficient_bound_holds() {
        for (n, a, q) in [(6usize, 2usize, 0usize), (4, 3, 1), (8, 2, 2)] {
            let sys = build_pade(n, a, q).unwrap();
            for p in [3u32, 5, 7] {
                assert!(coefficient_bound_violations(&sys, 2, p, 40).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn decay_floor_matches_stated_threshold() {
        for n in 8..=24 {
            assert!(decay_floor(n, 2, 2, 5, 5).unwrap() >= 2 * n as i64 - 8);
        }
    }

    #[test]
    fn precision_ceiling_is_enforced() {
        let sys = build_pade(12, 2, 0).unwrap();
        let ctx = PrecisionContext::new(5, 8, 2).unwrap();
        let r = linear_form_with_ceiling(&sys, 2, 5, 5, 2, &ctx, 10);
        assert!(matches!(r, Err(Error::PrecisionExhausted(_))));
    }
}
