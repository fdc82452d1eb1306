use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ext::{unramified_extension, PAdicExt};
use super::functions::{log_p, teichmuller};
use super::number::{PAdic, PrecisionContext};
use super::zeta::{bernoulli_cutoff, pole_order, zeta_p, zeta_p_one};
use crate::error::{Error, Result};
use crate::exact::{bernoulli, binomial, cyclo_field, CycloElement, LaurentTail, Rational, Scalar};

fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn binom(top: i64, k: i64) -> Rational {
    Rational::from_integer(binomial(top, k as u64))
}

fn e_power(e: u64, k: i64) -> Rational {
    let base = Rational::from_integer(BigInt::from(e));
    if k >= 0 {
        num_traits::pow(base, k as usize)
    } else {
        Rational::one() / num_traits::pow(base, (-k) as usize)
    }
}

struct Shifted {
    /// `(x + j) / e` for `j` in `[0, e)`.
    args: Vec<PAdic>,
    /// `|x|_2 = 2`: the sign-twisted branch.
    twisted: bool,
}

fn shifted_args(s: i64, x: &PAdic, e: u64, ctx: &PrecisionContext) -> Result<Shifted> {
    if s < 1 {
        return Err(Error::Domain(format!("s must be a positive integer, got {s}")));
    }
    if e < 2 {
        return Err(Error::InvalidParameter(format!("e must be >= 2, got {e}")));
    }
    if e % ctx.p as u64 == 0 {
        return Err(Error::InvalidParameter(format!(
            "p = {} divides e = {e}",
            ctx.p
        )));
    }
    let w = pole_order(x, 1, "twisted zeta sums (|x|_p >= p)")?;
    let inv_e = ratio(1, e as i64);
    let args = (0..e as i64)
        .map(|j| x.add(&PAdic::from_int(j, ctx.p, x.precision())).scale_rational(&inv_e))
        .collect();
    Ok(Shifted { args, twisted: ctx.p == 2 && w == 1 })
}

/// `T~_p(s, x) = sum_{j<e} xi^{-j} zeta_p(s, (x+j)/e)`; for `p = 2` and
/// `|x|_2 = 2` the twist is `((-1)^{s-1} xi)^{-j}`. At `s = 1` the poles
/// cancel (`sum xi^{-j} = 0`) and the regularised values are summed.
pub fn ttilde_p(s: i64, x: &PAdic, e: u64, ctx: &PrecisionContext) -> Result<PAdicExt> {
    let sh = shifted_args(s, x, e, ctx)?;
    let m = unramified_extension(e, ctx)?;
    let mut acc = PAdicExt::zero(&m, PAdic::EXACT);
    for (j, y) in sh.args.iter().enumerate() {
        let z = if s > 1 { zeta_p(s, y, ctx)? } else { zeta_p_one(y, ctx)? };
        let mut term = PAdicExt::xi_power(&m, -(j as i64)).scale(&z);
        if sh.twisted && (j as i64 * (s - 1)) % 2 == 1 {
            term = term.neg();
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// `T_p(s, x) = sum_j omega((x+j)/e)^{1-s} e^{-s} xi^{-j} zeta_p(s, (x+j)/e)`
/// for `s > 1` and `(1/e) T~_p(1, x)` for `s = 1`.
pub fn t_p(s: i64, x: &PAdic, e: u64, ctx: &PrecisionContext) -> Result<PAdicExt> {
    let sh = shifted_args(s, x, e, ctx)?;
    let m = unramified_extension(e, ctx)?;
    let mut acc = PAdicExt::zero(&m, PAdic::EXACT);
    for (j, y) in sh.args.iter().enumerate() {
        let z = if s > 1 {
            let w = teichmuller(y, ctx)?.pow(1 - s)?;
            zeta_p(s, y, ctx)?.mul(&w).scale_rational(&e_power(e, -s))
        } else {
            zeta_p_one(y, ctx)?.scale_rational(&ratio(1, e as i64))
        };
        acc = acc.add(&PAdicExt::xi_power(&m, -(j as i64)).scale(&z));
    }
    Ok(acc)
}

/// `T_p(s, x)` from its expansion in powers of `x + l`:
///
/// `s > 1`: `(1/(e(s-1))) sum_l xi^{-l}(x+l)^{1-s}
///   - sum_j C(-s, j-1) e^{j-1} (B_j/j) sum_l xi^{-l}(x+l)^{1-s-j}`;
///
/// `s = 1`: `-(1/e) sum_{l>=1} xi^{-l} log_p(1 + l/x)
///   + sum_j e^{j-1} (-1)^j (B_j/j) sum_l xi^{-l}(x+l)^{-j}`.
pub fn t_p_series(s: i64, x: &PAdic, e: u64, ctx: &PrecisionContext) -> Result<PAdicExt> {
    shifted_args(s, x, e, ctx)?;
    let w = pole_order(x, 1, "t_p_series")?;
    let p = ctx.p;
    let m = unramified_extension(e, ctx)?;
    let target = ctx.target() + (s - 1) * w;
    let cutoff = bernoulli_cutoff(p, w, ctx.target());
    let shifted: Vec<PAdic> = (0..e as i64)
        .map(|l| x.add(&PAdic::from_int(l, p, x.precision())))
        .collect();
    let xi_inv: Vec<PAdicExt> = (0..e as i64).map(|l| PAdicExt::xi_power(&m, -l)).collect();

    let mut acc = PAdicExt::zero(&m, target);
    if s > 1 {
        let c = Rational::one() / Rational::from_integer(BigInt::from(e as i64 * (s - 1)));
        for (l, y) in shifted.iter().enumerate() {
            acc = acc.add(&xi_inv[l].scale(&y.pow(1 - s)?.scale_rational(&c)));
        }
    } else {
        let c = ratio(-1, e as i64);
        for (l, xi) in xi_inv.iter().enumerate().skip(1) {
            let u = PAdic::from_int(1, p, x.precision())
                .add(&x.inv()?.scale_rational(&ratio(l as i64, 1)));
            acc = acc.add(&xi.scale(&log_p(&u, ctx)?.scale_rational(&c)));
        }
    }
    let inv: Vec<PAdic> = shifted.iter().map(PAdic::inv).collect::<Result<_>>()?;
    let mut powers: Vec<PAdic> = shifted.iter().map(|y| y.pow(1 - s)).collect::<Result<_>>()?;
    for j in 1..cutoff as i64 {
        for (pw, iv) in powers.iter_mut().zip(&inv) {
            *pw = pw.mul(iv);
        }
        let b = bernoulli(j as usize);
        if b.is_zero() {
            continue;
        }
        let c = if s > 1 {
            -binom(-s, j - 1) * e_power(e, j - 1) * b / ratio(j, 1)
        } else {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            ratio(sign, 1) * e_power(e, j - 1) * b / ratio(j, 1)
        };
        for (xi, pw) in xi_inv.iter().zip(&powers) {
            acc = acc.add(&xi.scale(&pw.scale_rational(&c)));
        }
    }
    Ok(acc)
}

/// `S_m = sum_{l=0}^{e-1} xi^{-l} l^m` with `0^0 = 1` (so `S_0 = 0`).
fn power_sums(e: u64, max_m: usize) -> Vec<CycloElement> {
    let field = cyclo_field(e);
    let mut out = vec![CycloElement::zero(&field); max_m + 1];
    for l in 0..e as i64 {
        let xi = CycloElement::xi_power(&field, -l);
        let mut lp = Rational::one();
        for s in out.iter_mut() {
            if !lp.is_zero() {
                *s = s.add_ref(&xi.scale(&lp));
            }
            lp *= Rational::from_integer(BigInt::from(l));
        }
    }
    out
}

fn theta_coeff_with(k: i64, s: i64, e: u64, sums: &[CycloElement]) -> CycloElement {
    let zero = sums[0].zero_like();
    if s >= 2 {
        if k < s {
            return zero;
        }
        let m = k - s + 1;
        let mut acc = sums[m as usize].scale(&(-binom(-s, m - 1) / ratio(e as i64 * m, 1)));
        for j in 1..=m {
            let b = bernoulli(j as usize);
            if b.is_zero() {
                continue;
            }
            let i = k - j - s + 1;
            let c = e_power(e, j - 1) * b / ratio(j, 1) * binom(-s, j - 1) * binom(1 - s - j, i);
            acc = acc.sub_ref(&sums[i as usize].scale(&c));
        }
        acc
    } else {
        if k < 1 {
            return zero;
        }
        let sign_k = if k % 2 == 0 { 1 } else { -1 };
        let mut acc = sums[k as usize].scale(&ratio(sign_k, e as i64 * k));
        for j in 1..=k {
            let b = bernoulli(j as usize);
            if b.is_zero() {
                continue;
            }
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let c = ratio(sign, 1) * e_power(e, j - 1) * b / ratio(j, 1) * binom(-j, k - j);
            acc = acc.add_ref(&sums[(k - j) as usize].scale(&c));
        }
        acc
    }
}

/// Coefficient `a_{k,s}` of `x^{-k}` in the expansion `Theta(s, x)` of
/// `T_p(s, x)` in powers of `1/x`; `a_{k,s} = 0` for `k < s`.
pub fn theta_coeff(k: i64, s: i64, e: u64) -> CycloElement {
    assert!(s >= 1 && e >= 2, "theta_coeff needs s >= 1, e >= 2");
    let sums = power_sums(e, k.max(1) as usize);
    theta_coeff_with(k, s, e, &sums)
}

/// `Theta(s, x) = sum_{k=s}^{K} a_{k,s} x^{-k} + O(x^{-K-1})`.
pub fn theta_series(s: i64, e: u64, trunc: i64) -> LaurentTail<CycloElement> {
    assert!(s >= 1 && e >= 2, "theta_series needs s >= 1, e >= 2");
    let sums = power_sums(e, trunc.max(1) as usize);
    let zero = sums[0].zero_like();
    let coeffs = (0..=trunc.max(0))
        .map(|k| theta_coeff_with(k, s, e, &sums))
        .collect();
    LaurentTail::new(0, coeffs, Some(trunc), zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, vp_rational};
    use crate::padic::zeta_p_any;
    use proptest::prelude::*;

    fn ctx(p: u32, n: i64) -> PrecisionContext {
        PrecisionContext::new(p, n, 6).unwrap()
    }

    #[test]
    fn quadratic_twist_is_a_difference() {
        let c = ctx(5, 20);
        let x = rat(2, 5);
        let got = ttilde_p(2, &c.from_rational(&x), 2, &c).unwrap();
        let z0 = zeta_p(2, &c.from_rational(&(&x / rat(2, 1))), &c).unwrap();
        let z1 = zeta_p(2, &c.from_rational(&((&x + rat(1, 1)) / rat(2, 1))), &c).unwrap();
        assert!(got.coords()[0].agrees_to(&z0.sub(&z1), 20));
    }

    #[test]
    fn pole_cancellation_at_one() {
        // sum_j xi^{-j} (zeta_p(s) - 1/(s-1)) = sum_j xi^{-j} zeta_p(s)
        let c = ctx(7, 15);
        let x = c.from_rational(&rat(3, 7));
        let m = unramified_extension(3, &c).unwrap();
        let mut shifted = PAdicExt::zero(&m, PAdic::EXACT);
        let mut plain = PAdicExt::zero(&m, PAdic::EXACT);
        for j in 0..3i64 {
            let y = x.add(&PAdic::from_int(j, 7, 40)).scale_rational(&rat(1, 3));
            let z = zeta_p(3, &y, &c).unwrap();
            let xi = PAdicExt::xi_power(&m, -j);
            plain = plain.add(&xi.scale(&z));
            shifted = shifted.add(&xi.scale(&z.sub(&PAdic::from_rational(&rat(1, 2), 7, 40))));
        }
        assert!(plain.agrees_to(&shifted, 15));
    }

    #[test]
    fn t_p_at_one_is_ttilde_over_e() {
        let c = ctx(5, 15);
        let x = c.from_rational(&rat(7, 5));
        let a = t_p(1, &x, 3, &c).unwrap();
        let b = ttilde_p(1, &x, 3, &c).unwrap().scale_rational(&rat(1, 3));
        assert!(a.agrees_to(&b, 15));
    }

    /// `omega(1/p) = omega((p+2)/(2p)) = 1/p`, so the Teichmüller weights
    /// contribute the common rational factor `p^{s-1}`.
    #[test]
    fn two_over_p_specialisation() {
        for p in [3u32, 5, 7, 11] {
            let c = ctx(p, 15);
            let x = rat(2, p as i64);
            for s in 2..=4 {
                let got = t_p(s, &c.from_rational(&x), 2, &c).unwrap();
                let z0 = zeta_p(s, &c.from_rational(&rat(1, p as i64)), &c).unwrap();
                let z1 = zeta_p(s, &c.from_rational(&rat(p as i64 + 2, 2 * p as i64)), &c).unwrap();
                let scale = e_power(2, -s) * num_traits::pow(rat(p as i64, 1), (s - 1) as usize);
                let want = z0.sub(&z1).scale_rational(&scale);
                assert!(got.coords()[0].agrees_to(&want, 15), "p={p} s={s}");
            }
        }
    }

    #[test]
    fn theta_small_values() {
        assert!(theta_coeff(0, 2, 2).vanishes());
        assert!(theta_coeff(1, 2, 2).vanishes());
        assert_eq!(theta_coeff(2, 2, 2).coords(), &[rat(1, 2)]);
        assert_eq!(theta_coeff(1, 1, 2).coords(), &[rat(1, 2)]);
    }

    /// Brute-force re-expansion for `e = 2`, `s = 1`:
    /// `T_p(1, x) = -(1/2)(-1) log(1 + 1/x) + sum_j 2^{j-1}(-1)^j (B_j/j)(x^{-j} - (x+1)^{-j})`.
    #[test]
    fn theta_matches_brute_force_expansion() {
        let kmax = 10i64;
        let mut coeff = vec![Rational::zero(); kmax as usize + 1];
        for k in 1..=kmax {
            // (1/2) log(1 + 1/x) = (1/2) sum (-1)^{k+1} x^{-k} / k
            let sign = if k % 2 == 1 { 1 } else { -1 };
            coeff[k as usize] += ratio(sign, 2 * k);
        }
        for j in 1..=kmax {
            let c = ratio(if j % 2 == 0 { 1 } else { -1 }, 1) * e_power(2, j - 1) * bernoulli(j as usize)
                / ratio(j, 1);
            coeff[j as usize] += &c;
            // (x+1)^{-j} = sum_i C(-j, i) x^{-j-i}
            for i in 0..=(kmax - j) {
                coeff[(j + i) as usize] -= &c * binom(-j, i);
            }
        }
        for k in 0..=kmax {
            assert_eq!(theta_coeff(k, 1, 2).coords(), &[coeff[k as usize].clone()], "k={k}");
        }
    }

    #[test]
    fn theta_series_matches_t_p() {
        let c = ctx(5, 20);
        for (s, e) in [(1i64, 2u64), (2, 2), (3, 3), (2, 4)] {
            let x = rat(3, 25);
            let direct = t_p(s, &c.from_rational(&x), e, &c).unwrap();
            let m = direct.modulus().clone();
            let theta = theta_series(s, e, 40);
            let xinv = c.from_rational(&(rat(1, 1) / &x));
            let mut acc = PAdicExt::zero(&m, PAdic::EXACT);
            for (k, a) in theta.terms() {
                let pk = xinv.pow(k).unwrap();
                acc = acc.add(&PAdicExt::from_cyclo(&m, a).scale(&pk));
            }
            // truncation at K = 40 with |x|_5 = 25 is far beyond 5^20
            assert!(acc.agrees_to(&direct, 20), "s={s} e={e}");
        }
    }

    #[test]
    fn relation_between_t_and_ttilde() {
        for (p, num, den, e, s) in [(5u32, 2i64, 5i64, 2u64, 2i64), (7, 3, 49, 3, 3), (2, 1, 2, 3, 2), (2, 3, 2, 5, 3), (3, 4, 9, 4, 2)] {
            let c = ctx(p, 20);
            let x = c.from_rational(&rat(num, den));
            let tp = t_p(s, &x, e, &c).unwrap();
            let tt = ttilde_p(s, &x, e, &c).unwrap();
            let xe = x.scale_rational(&rat(1, e as i64));
            let factor = teichmuller(&xe, &c).unwrap().pow(1 - s).unwrap().scale_rational(&e_power(e, -s));
            assert!(tp.agrees_to(&tt.scale(&factor), 20), "p={p} x={num}/{den} e={e} s={s}");
            let series = t_p_series(s, &x, e, &c).unwrap();
            assert!(tp.agrees_to(&series, 20), "series p={p} e={e} s={s}");
        }
    }

    #[test]
    fn any_integer_dispatch() {
        let c = ctx(5, 10);
        let x = c.from_rational(&rat(1, 5));
        assert!(zeta_p_any(0, &x, &c).unwrap().agrees_to(&c.from_rational(&rat(3, 2)), 10));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn theta_p_adic_bound(k in 1i64..30, s in 1i64..4, e in 2u64..7,
                              p in prop::sample::select(vec![2u32, 3, 5, 7, 11])) {
            prop_assume!(e % p as u64 != 0);
            let a = theta_coeff(k, s, e);
            if let Some(v) = a.coords().iter().filter_map(|c| vp_rational(c, p)).min() {
                // |a|_p <= k p / |e|_p, with |e|_p = 1 here
                let abs = (p as f64).powi(-(v as i32));
                prop_assert!(abs <= k as f64 * p as f64 + 1e-9, "v = {}", v);
            }
        }
    }
}
