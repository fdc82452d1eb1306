use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::number::{floor_log, p_pow, PAdic, PrecisionContext};
use crate::error::{Error, Result};
use crate::exact::Rational;

/// Teichmüller representative of a unit residue, to relative precision `r`.
///
/// Odd `p`: the fixed point of `t -> t^p`, reached as `u^{p^{r-1}} mod p^r`.
/// `p = 2`: `+1` or `-1` according to `u mod 4`.
fn teichmuller_unit(p: u32, unit: &BigInt, rel: i64, r: i64) -> Result<BigInt> {
    let modulus = p_pow(p, r);
    if p == 2 {
        if rel < 2 {
            return Err(Error::PrecisionExhausted(
                "2-adic Teichmüller character needs the unit modulo 4".into(),
            ));
        }
        let m4 = unit.mod_floor(&BigInt::from(4));
        return Ok(if m4.is_one() { BigInt::one() } else { &modulus - 1 });
    }
    let residue = unit.mod_floor(&BigInt::from(p));
    Ok(residue.modpow(&p_pow(p, r - 1), &modulus))
}

/// `omega(x) = p^{v} omega(p^{-v} x)`, carried at relative precision
/// `ctx.target()`.
pub fn teichmuller(x: &PAdic, ctx: &PrecisionContext) -> Result<PAdic> {
    let v = x.valuation().ok_or(Error::IndeterminateTeichmuller)?;
    let r = ctx.target().max(2);
    let w = teichmuller_unit(x.prime(), x.unit(), x.relative_precision(), r)?;
    Ok(PAdic::from_parts(x.prime(), v, w, v + r))
}

/// `<x> = x / omega(x)`, a 1-unit.
pub fn angle(x: &PAdic, ctx: &PrecisionContext) -> Result<PAdic> {
    let w = teichmuller(x, ctx)?;
    x.div(&w)
}

/// `<x>^t` by binary powering.
pub fn angle_power(x: &PAdic, t: i64, ctx: &PrecisionContext) -> Result<PAdic> {
    angle(x, ctx)?.pow(t)
}

/// `log_p(u) = sum_{k>=1} (-1)^{k+1} (u-1)^k / k` for `|u - 1|_p < 1`.
///
/// Terms stop at the first `k` with `k w - floor(log_p k) >= prec(u)`, where
/// `w = v_p(u - 1)`; every later term then vanishes modulo `p^{prec(u)}`.
pub fn log_p(u: &PAdic, ctx: &PrecisionContext) -> Result<PAdic> {
    let p = u.prime();
    let y = u.sub(&PAdic::from_int(1, p, u.precision()));
    let target = u.precision().min(ctx.target());
    let Some(w) = y.valuation() else {
        return Ok(PAdic::zero(p, target));
    };
    if w < 1 {
        return Err(Error::Domain(format!(
            "log_p needs |u - 1|_p < 1, got v_p(u - 1) = {w}"
        )));
    }
    let mut acc = PAdic::zero(p, target);
    let mut power = y.clone();
    let mut k: i64 = 1;
    while k * w - floor_log(p, k as u64) < target {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let term = power.scale_rational(&Rational::new(BigInt::from(sign), BigInt::from(k)));
        acc = acc.add(&term);
        power = power.mul(&y);
        k += 1;
    }
    Ok(acc)
}

/// `true` when the unit part of `x` is a root of unity to known precision.
pub fn is_root_of_unity_unit(x: &PAdic) -> bool {
    let p = x.prime();
    let order = if p == 2 { 2 } else { p as i64 - 1 };
    let unit = PAdic::from_parts(p, 0, x.unit().clone(), x.relative_precision());
    match unit.pow(order) {
        Ok(t) => t.sub(&PAdic::from_int(1, p, t.precision())).is_zero(),
        Err(_) => false,
    }
}
