use crate::error::{Error, Result};
use crate::exact::{cyclo_field, lcm_upto, BiPoly, CycloElement, LaurentTail, PolyX, Rational, Scalar};
use crate::padic::theta_series;

use super::system::PadeSystem;

/// `V = d_n^A (P_0(x, xi) + sum_s P_s(x, xi) Theta(s, x)) = sum_{k >= -n} u_k x^{-k}`.
#[derive(Clone, Debug)]
pub struct RemainderSeries {
    pub base: PadeSystem,
    pub e: u64,
    pub coeffs: LaurentTail<CycloElement>,
    /// The series carries the `d_n^A` factor.
    pub normalized: bool,
}

/// First index not forced to vanish: `A(n-1) - 3`.
pub fn vanishing_bound(n: usize, a: usize) -> i64 {
    (a * (n - 1)) as i64 - 3
}

/// `P(x, xi)` as a polynomial in `x` over `Q(xi)`.
pub fn at_root_of_unity(p: &BiPoly<Rational>, e: u64) -> PolyX<CycloElement> {
    let field = cyclo_field(e);
    let zero = CycloElement::zero(&field);
    let mut coeffs = vec![zero; p.deg_x().map_or(0, |d| d + 1)];
    for (dx, dz, c) in p.terms() {
        let term = CycloElement::xi_power(&field, dz as i64).scale(c);
        coeffs[dx] = coeffs[dx].add_ref(&term);
    }
    PolyX::from_coeffs(coeffs)
}

impl RemainderSeries {
    pub fn coeff(&self, k: i64) -> Option<CycloElement> {
        self.coeffs.coeff(k)
    }

    pub fn truncation(&self) -> i64 {
        self.coeffs.truncation().expect("remainder series is always truncated")
    }

    /// Smallest `k` with `u_k != 0` among the computed coefficients.
    pub fn first_nonzero(&self) -> Option<i64> {
        self.coeffs.order()
    }
}

fn build(sys: &PadeSystem, e: u64, trunc: i64, normalized: bool) -> Result<RemainderSeries> {
    if e < 2 {
        return Err(Error::InvalidParameter(format!("e must be >= 2, got {e}")));
    }
    let (n, a) = (sys.n(), sys.weight());
    let bound = vanishing_bound(n, a);
    if trunc < bound {
        return Err(Error::InvalidParameter(format!(
            "truncation K = {trunc} cannot certify vanishing below A(n-1)-3 = {bound}"
        )));
    }
    let zero = CycloElement::zero(&cyclo_field(e));
    let p0 = at_root_of_unity(sys.poly(0), e);
    let mut v = LaurentTail::from_poly_x(&p0, zero.clone());
    // P_s has x-degree <= n + 1, so Theta is needed to index K + n + 1.
    let theta_trunc = trunc + n as i64 + 1;
    for s in 1..=a {
        let ps = LaurentTail::from_poly_x(&at_root_of_unity(sys.poly(s), e), zero.clone());
        let theta = theta_series(s as i64, e, theta_trunc);
        v = v.add(&ps.mul(&theta));
    }
    v = v.truncate(trunc);
    if normalized {
        let dn = Rational::from_integer(num_traits::pow(lcm_upto(n as u64), a));
        v = v.scale_rational(&dn);
    }
    if let Some(k) = v.order().filter(|&k| k < bound) {
        return Err(Error::Consistency(format!(
            "u_{k} != 0 below A(n-1)-3 = {bound} (n = {n}, A = {a}, q = {}, e = {e})",
            sys.q()
        )));
    }
    Ok(RemainderSeries { base: sys.clone(), e, coeffs: v, normalized })
}

/// Coefficients `u_k`, `k` from `-n` to `K`, with the `d_n^A` factor.
pub fn remainder_series(sys: &PadeSystem, e: u64, trunc: i64) -> Result<RemainderSeries> {
    build(sys, e, trunc, true)
}

/// The same series without the `d_n^A` factor.
pub fn remainder_series_raw(sys: &PadeSystem, e: u64, trunc: i64) -> Result<RemainderSeries> {
    build(sys, e, trunc, false)
}
