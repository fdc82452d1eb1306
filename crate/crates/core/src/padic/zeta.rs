use num_bigint::BigInt;
use num_traits::Zero;

use super::functions::{angle, angle_power, log_p};
use super::number::{floor_log, PAdic, PrecisionContext};
use crate::error::{Error, Result};
use crate::exact::{bernoulli, binomial, Rational};

/// `w = -v_p(x)`, required to be at least `min_w`.
pub(crate) fn pole_order(x: &PAdic, min_w: i64, what: &str) -> Result<i64> {
    match x.valuation() {
        Some(v) if -v >= min_w => Ok(-v),
        Some(v) => Err(Error::Domain(format!(
            "{what} needs v_p(x) <= {}, got {v}",
            -min_w
        ))),
        None => Err(Error::Domain(format!("{what}: x is zero to known precision"))),
    }
}

/// Number of Bernoulli terms: the first `J` with
/// `J w - 1 - floor(log_p J) >= target`. The bound is nondecreasing in `j`,
/// so every term from `J` on vanishes modulo `p^target` (Clausen–von Staudt).
pub fn bernoulli_cutoff(p: u32, w: i64, target: i64) -> usize {
    let mut j: i64 = 1;
    while j * w - 1 - floor_log(p, j as u64) < target {
        j += 1;
    }
    j as usize
}

/// `sum_{j=1}^{J-1} c_j (B_j / j) x^{-j}` reduced to absolute precision
/// `target`, where `J = bernoulli_cutoff`.
fn bernoulli_tail(
    x: &PAdic,
    w: i64,
    target: i64,
    coeff: impl Fn(usize) -> Rational,
) -> Result<PAdic> {
    let p = x.prime();
    let cutoff = bernoulli_cutoff(p, w, target);
    let xinv = x.inv()?;
    let mut acc = PAdic::zero(p, target);
    let mut power = xinv.clone();
    for j in 1..cutoff {
        let b = bernoulli(j);
        if !b.is_zero() {
            let c = coeff(j) * b / Rational::from_integer(BigInt::from(j));
            acc = acc.add(&power.scale_rational(&c));
        }
        power = power.mul(&xinv);
    }
    Ok(acc)
}

fn binom_rational(top: i64, k: usize) -> Rational {
    Rational::from_integer(binomial(top, k as u64))
}

/// `zeta_p(s, x) = <x>^{1-s}/(s-1) - <x>^{1-s} sum_{j>=1} C(-s, j-1) (B_j/j) x^{-j}`
/// for an integer `s >= 2` and `|x|_p > 1`.
pub fn zeta_p(s: i64, x: &PAdic, ctx: &PrecisionContext) -> Result<PAdic> {
    if s < 2 {
        return Err(Error::Domain(format!(
            "zeta_p takes s >= 2 (got {s}); use zeta_p_one or zeta_p_negative"
        )));
    }
    let w = pole_order(x, 1, "zeta_p")?;
    let ang = angle_power(x, 1 - s, ctx)?;
    let tail = bernoulli_tail(x, w, ctx.target(), |j| binom_rational(-s, j - 1))?;
    let head = ang.scale_rational(&Rational::new(1.into(), BigInt::from(s - 1)));
    Ok(head.sub(&ang.mul(&tail)))
}

/// The same series at `s = 1 - m`, where it terminates:
/// `-<x>^m / m - <x>^m sum_{j=1}^{m} C(m-1, j-1) (B_j/j) x^{-j}`.
/// Being a finite identity it holds for every nonzero `x`.
pub fn zeta_p_negative(m: i64, x: &PAdic, ctx: &PrecisionContext) -> Result<PAdic> {
    if m < 1 {
        return Err(Error::Domain(format!("zeta_p_negative takes m >= 1, got {m}")));
    }
    pole_order(x, i64::MIN / 2, "zeta_p_negative")?;
    let ang = angle_power(x, m, ctx)?;
    let xinv = x.inv()?;
    let p = x.prime();
    let mut sum = PAdic::zero(p, ctx.target().max(x.precision()));
    let mut power = xinv.clone();
    for j in 1..=m as usize {
        let c = binom_rational(m - 1, j - 1) * bernoulli(j) / Rational::from_integer(BigInt::from(j));
        sum = sum.add(&power.scale_rational(&c));
        power = power.mul(&xinv);
    }
    let head = ang.scale_rational(&Rational::new((-1).into(), BigInt::from(m)));
    Ok(head.sub(&ang.mul(&sum)))
}

/// `lim_{s->1} (zeta_p(s, x) - 1/(s-1)) = -log_p <x> + sum_j (-1)^j (B_j/j) x^{-j}`.
pub fn zeta_p_one(x: &PAdic, ctx: &PrecisionContext) -> Result<PAdic> {
    let w = pole_order(x, 1, "zeta_p_one")?;
    let lg = log_p(&angle(x, ctx)?, ctx)?;
    let tail = bernoulli_tail(x, w, ctx.target(), |j| {
        Rational::from_integer(BigInt::from(if j % 2 == 0 { 1 } else { -1 }))
    })?;
    Ok(tail.sub(&lg))
}

/// `zeta_p(s, x)` for any nonzero integer `s`: `s >= 2` uses the convergent
/// series, `s = 1` the regularised value, `s <= 0` the finite closed form.
pub fn zeta_p_any(s: i64, x: &PAdic, ctx: &PrecisionContext) -> Result<PAdic> {
    match s {
        s if s >= 2 => zeta_p(s, x, ctx),
        1 => zeta_p_one(x, ctx),
        s => zeta_p_negative(1 - s, x, ctx),
    }
}
