use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::fp;
use super::number::{p_pow, PAdic, PAdicJson, PrecisionContext};
use crate::error::{Error, Result};
use crate::exact::{cyclotomic_poly, multiplicative_order, CycloElement, Rational};

/// Extra digits carried by the modulus beyond the context target.
const MODULUS_MARGIN: i64 = 8;

/// A monic factor `g` of `Phi_e` over `Z_p`, known modulo `p^prec`, of
/// degree `f = ord_e(p)`. `Q_p(xi) = Q_p[X]/(g)` with `xi` the class of `X`.
pub struct ExtModulus {
    p: u32,
    e: u64,
    prec: i64,
    /// Coefficients of `g`, low degree first, each in `[0, p^prec)`.
    g: Vec<BigInt>,
    /// `xi^k` for `k` in `[0, e)`.
    xi_powers: Vec<Vec<PAdic>>,
}

impl ExtModulus {
    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn order(&self) -> u64 {
        self.e
    }

    /// `f = [Q_p(xi) : Q_p]`.
    pub fn degree(&self) -> usize {
        self.g.len() - 1
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.g
    }

    fn g_padic(&self, i: usize) -> PAdic {
        PAdic::from_parts(self.p, 0, self.g[i].clone(), self.prec)
    }

    /// Little-endian base-p digits of each coefficient of `g`.
    pub fn digits(&self) -> Vec<Vec<u64>> {
        self.g
            .iter()
            .map(|c| PAdic::from_parts(self.p, 0, c.clone(), self.prec).padded_digits_from_zero())
            .collect()
    }
}

impl fmt::Debug for ExtModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtModulus")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("prec", &self.prec)
            .field("g", &self.g)
            .finish()
    }
}

impl PAdic {
    /// Digits of the value read as an integer modulo `p^prec` (needs `v >= 0`).
    pub(crate) fn padded_digits_from_zero(&self) -> Vec<u64> {
        let mut out = vec![0; self.valuation().unwrap_or(self.precision()).max(0) as usize];
        out.extend(self.unit_digits());
        out.resize(self.precision().max(0) as usize, 0);
        out
    }
}

fn modulus_cache() -> &'static Mutex<HashMap<(u32, u64, i64), Arc<ExtModulus>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u64, i64), Arc<ExtModulus>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn poly_mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn to_int_poly(a: &[u64], len: usize) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = a.iter().map(|&c| BigInt::from(c)).collect();
    v.resize(len, BigInt::zero());
    v
}

/// Lifts `Phi = g0 h0 (mod p)` to `Phi = g h (mod p^prec)` one digit at a
/// time. `g` stays monic of degree `deg g0`.
fn hensel_lift(phi: &[BigInt], g0: &[u64], h0: &[u64], p: u32, prec: i64) -> Vec<BigInt> {
    let pu = p as u64;
    let (s, t) = fp::bezout(g0, h0, pu);
    let _ = s;
    let mut g = to_int_poly(g0, g0.len());
    let mut h = to_int_poly(h0, h0.len());
    let pb = BigInt::from(p);
    for k in 1..prec {
        let pk = p_pow(p, k);
        let gh = poly_mul_int(&g, &h);
        let c: Vec<i128> = phi
            .iter()
            .enumerate()
            .map(|(i, ph)| {
                let diff = ph - gh.get(i).cloned().unwrap_or_default();
                debug_assert!((&diff % &pk).is_zero());
                (diff / &pk).mod_floor(&pb).to_i128().expect("digit")
            })
            .collect();
        let c = fp::from_signed(c, pu);
        if c.is_empty() {
            continue;
        }
        let dg = fp::rem(&fp::mul(&t, &c, pu), g0, pu);
        let (dh, r) = fp::div_rem(&fp::sub(&c, &fp::mul(h0, &dg, pu), pu), g0, pu);
        debug_assert!(r.is_empty(), "Hensel step must divide exactly");
        for (i, d) in dg.iter().enumerate() {
            g[i] += &pk * d;
        }
        for (i, d) in dh.iter().enumerate() {
            h[i] += &pk * d;
        }
    }
    let modulus = p_pow(p, prec);
    g.into_iter().map(|c| c.mod_floor(&modulus)).collect()
}

/// The modulus of `Q_p(xi_e)` at precision `ctx.target() + margin`.
///
/// `Phi_e` is factored modulo `p` into irreducibles of degree `f = ord_e(p)`
/// (equal-degree splitting), the smallest factor in a fixed order is chosen,
/// and it is Hensel-lifted. The choice is deterministic.
pub fn unramified_extension(e: u64, ctx: &PrecisionContext) -> Result<Arc<ExtModulus>> {
    let p = ctx.p;
    if e < 1 {
        return Err(Error::InvalidParameter("e must be positive".into()));
    }
    if e % p as u64 == 0 {
        return Err(Error::InvalidParameter(format!(
            "p = {p} divides e = {e}: ramified extensions are not supported"
        )));
    }
    let prec = ctx.target() + MODULUS_MARGIN;
    let key = (p, e, prec);
    if let Some(m) = modulus_cache().lock().expect("cache poisoned").get(&key) {
        return Ok(m.clone());
    }
    let f = multiplicative_order(p as u64, e)? as usize;
    let phi = cyclotomic_poly(e);
    let pu = p as u64;
    let phi_mod_p = fp::from_signed(
        phi.iter().map(|c| c.mod_floor(&BigInt::from(p)).to_i128().expect("digit")),
        pu,
    );
    let g = if phi.len() - 1 == f {
        let modulus = p_pow(p, prec);
        phi.iter().map(|c| c.mod_floor(&modulus)).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ (e << 32) ^ p as u64);
        let factors = fp::equal_degree_factors(&phi_mod_p, f, pu, &mut rng);
        let g0 = factors[0].clone();
        let (h0, r) = fp::div_rem(&phi_mod_p, &g0, pu);
        if !r.is_empty() {
            return Err(Error::Consistency("factor does not divide Phi_e mod p".into()));
        }
        hensel_lift(&phi, &g0, &h0, p, prec)
    };
    if g.len() - 1 != f {
        return Err(Error::Consistency(format!(
            "modulus has degree {} but ord_e(p) = {f}",
            g.len() - 1
        )));
    }
    let mut m = ExtModulus { p, e, prec, g, xi_powers: Vec::new() };
    let mut powers = Vec::with_capacity(e as usize);
    let mut cur: Vec<PAdic> = (0..f)
        .map(|i| PAdic::from_int(i64::from(i == 0), p, prec))
        .collect();
    for _ in 0..e {
        powers.push(cur.clone());
        cur = times_x(&m, &cur);
    }
    m.xi_powers = powers;
    let m = Arc::new(m);
    check_modulus(&m, &phi)?;
    modulus_cache().lock().expect("cache poisoned").insert(key, m.clone());
    Ok(m)
}

/// `Phi_e(xi) = 0` to the modulus precision.
fn check_modulus(m: &Arc<ExtModulus>, phi: &[BigInt]) -> Result<()> {
    let mut acc = PAdicExt::zero(m, m.prec);
    for (k, c) in phi.iter().enumerate() {
        let term = PAdicExt::xi_power(m, k as i64)
            .scale_rational(&Rational::from_integer(c.clone()));
        acc = acc.add(&term);
    }
    if acc.is_zero() {
        Ok(())
    } else {
        Err(Error::Consistency(format!(
            "Phi_{}(xi) != 0 modulo {}^{}",
            m.e, m.p, m.prec
        )))
    }
}

/// Multiplies a coordinate vector by `X` and reduces modulo `g`.
fn times_x(m: &ExtModulus, coords: &[PAdic]) -> Vec<PAdic> {
    let f = m.degree();
    let top = coords[f - 1].clone();
    let mut out = Vec::with_capacity(f);
    out.push(top.mul(&m.g_padic(0)).neg());
    for i in 1..f {
        out.push(coords[i - 1].sub(&top.mul(&m.g_padic(i))));
    }
    out
}

/// Element of `Q_p(xi)` in the basis `1, xi, ..., xi^{f-1}`. Because the
/// extension is unramified this basis is integral and `v_p` is the minimum
/// over coordinates.
#[derive(Clone)]
pub struct PAdicExt {
    modulus: Arc<ExtModulus>,
    coords: Vec<PAdic>,
}

impl PAdicExt {
    pub fn zero(m: &Arc<ExtModulus>, prec: i64) -> Self {
        PAdicExt {
            modulus: m.clone(),
            coords: vec![PAdic::zero(m.p, prec); m.degree()],
        }
    }

    /// Embeds a base-field element; the other coordinates are exact zeros at
    /// the precision of `x`.
    pub fn from_padic(m: &Arc<ExtModulus>, x: PAdic) -> Self {
        let mut z = Self::zero(m, PAdic::EXACT);
        z.coords[0] = x;
        z
    }

    pub fn from_rational(m: &Arc<ExtModulus>, r: &Rational) -> Self {
        Self::from_padic(m, PAdic::from_rational(r, m.p, m.prec))
    }

    /// `xi^k` for any integer `k`.
    pub fn xi_power(m: &Arc<ExtModulus>, k: i64) -> Self {
        let r = k.rem_euclid(m.e as i64) as usize;
        PAdicExt { modulus: m.clone(), coords: m.xi_powers[r].clone() }
    }

    /// Image of `sum c_i xi_e^i` under the embedding `xi -> X mod g`.
    pub fn from_cyclo(m: &Arc<ExtModulus>, v: &CycloElement) -> Self {
        assert_eq!(v.order(), m.e, "cyclotomic order mismatch");
        let mut acc = Self::zero(m, m.prec);
        for (i, c) in v.coords().iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&Self::xi_power(m, i as i64).scale_rational(c));
            }
        }
        acc
    }

    pub fn modulus(&self) -> &Arc<ExtModulus> {
        &self.modulus
    }

    pub fn coords(&self) -> &[PAdic] {
        &self.coords
    }

    /// Minimum over coordinates; `None` when every coordinate is zero to its
    /// known precision.
    pub fn valuation(&self) -> Option<i64> {
        self.coords.iter().filter_map(PAdic::valuation).min()
    }

    /// Absolute precision: the minimum over coordinates.
    pub fn precision(&self) -> i64 {
        self.coords.iter().map(PAdic::precision).min().expect("f >= 1")
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(PAdic::is_zero)
    }

    pub fn reduce_precision(&self, prec: i64) -> Self {
        PAdicExt {
            modulus: self.modulus.clone(),
            coords: self.coords.iter().map(|c| c.reduce_precision(prec)).collect(),
        }
    }

    fn zip(&self, rhs: &Self, op: impl Fn(&PAdic, &PAdic) -> PAdic) -> Self {
        debug_assert_eq!(self.modulus.g, rhs.modulus.g, "mixing extension moduli");
        PAdicExt {
            modulus: self.modulus.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| op(a, b)).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.zip(rhs, PAdic::add)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.zip(rhs, PAdic::sub)
    }

    pub fn neg(&self) -> Self {
        PAdicExt {
            modulus: self.modulus.clone(),
            coords: self.coords.iter().map(PAdic::neg).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let m = &self.modulus;
        let f = m.degree();
        if f == 1 {
            return self.zip(rhs, PAdic::mul);
        }
        let mut raw = vec![PAdic::zero(m.p, PAdic::EXACT); 2 * f - 1];
        for (i, a) in self.coords.iter().enumerate() {
            for (j, b) in rhs.coords.iter().enumerate() {
                raw[i + j] = raw[i + j].add(&a.mul(b));
            }
        }
        for k in (f..raw.len()).rev() {
            let c = raw[k].clone();
            for i in 0..f {
                raw[k - f + i] = raw[k - f + i].sub(&c.mul(&m.g_padic(i)));
            }
        }
        raw.truncate(f);
        PAdicExt { modulus: m.clone(), coords: raw }
    }

    pub fn scale(&self, c: &PAdic) -> Self {
        PAdicExt {
            modulus: self.modulus.clone(),
            coords: self.coords.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        PAdicExt {
            modulus: self.modulus.clone(),
            coords: self.coords.iter().map(|a| a.scale_rational(r)).collect(),
        }
    }

    /// `true` when `self - rhs` vanishes modulo `p^k` in every coordinate.
    pub fn agrees_to(&self, rhs: &Self, k: i64) -> bool {
        self.sub(rhs).reduce_precision(k).is_zero()
    }

    pub fn to_json(&self) -> PAdicExtJson {
        PAdicExtJson {
            p: self.modulus.p,
            e: self.modulus.e,
            valuation: self.valuation(),
            known_precision: self.precision(),
            modulus_digits: self.modulus.digits(),
            coords: self.coords.iter().map(PAdic::to_json).collect(),
        }
    }
}

impl fmt::Display for PAdicExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*xi")?,
                _ => write!(f, "({c})*xi^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PAdicExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PAdicExt({self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PAdicExtJson {
    pub p: u32,
    pub e: u64,
    pub valuation: Option<i64>,
    pub known_precision: i64,
    pub modulus_digits: Vec<Vec<u64>>,
    pub coords: Vec<PAdicJson>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{cyclo_root, rat, Scalar};
    use crate::padic::teichmuller;

    fn ctx(p: u32, n: i64) -> PrecisionContext {
        PrecisionContext::new(p, n, 2).unwrap()
    }

    #[test]
    fn quadratic_character_is_linear() {
        for p in [3u32, 5, 7, 11] {
            let m = unramified_extension(2, &ctx(p, 10)).unwrap();
            assert_eq!(m.degree(), 1);
            let xi = PAdicExt::xi_power(&m, 1);
            assert!(xi.coords()[0].agrees_with(&PAdic::from_int(-1, p, 20)));
        }
    }

    #[test]
    fn fourth_roots_mod_five_are_teichmuller_lifts() {
        let c = ctx(5, 12);
        let m = unramified_extension(4, &c).unwrap();
        assert_eq!(m.degree(), 1);
        let xi = PAdicExt::xi_power(&m, 1).coords()[0].clone();
        let w = teichmuller(&xi, &c).unwrap();
        assert!(w.agrees_to(&xi, 12));
        assert!(xi.mul(&xi).agrees_to(&PAdic::from_int(-1, 5, 12), 12));
    }

    #[test]
    fn degrees_follow_multiplicative_order() {
        assert_eq!(unramified_extension(3, &ctx(5, 8)).unwrap().degree(), 2);
        assert_eq!(unramified_extension(7, &ctx(2, 8)).unwrap().degree(), 3);
        assert_eq!(unramified_extension(12, &ctx(5, 8)).unwrap().degree(), 2);
        assert!(matches!(
            unramified_extension(10, &ctx(5, 8)),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn cyclotomic_embedding_is_a_ring_map() {
        for (p, e) in [(5u32, 3u64), (2, 7), (7, 9), (3, 8)] {
            let m = unramified_extension(e, &ctx(p, 15)).unwrap();
            let xi = cyclo_root(e);
            let a = xi.add_ref(&xi.constant_like(&rat(2, 3)));
            let b = xi.mul_ref(&xi).sub_ref(&xi.constant_like(&rat(5, 1)));
            let lhs = PAdicExt::from_cyclo(&m, &a.mul_ref(&b));
            let rhs = PAdicExt::from_cyclo(&m, &a).mul(&PAdicExt::from_cyclo(&m, &b));
            assert!(lhs.agrees_to(&rhs, 15), "p={p} e={e}");
            let one = PAdicExt::from_rational(&m, &rat(1, 1));
            assert!(PAdicExt::xi_power(&m, e as i64).agrees_to(&one, 15));
        }
    }

    #[test]
    fn json_has_modulus_and_coords() {
        let m = unramified_extension(3, &ctx(5, 6)).unwrap();
        let j = serde_json::to_value(PAdicExt::xi_power(&m, 1).to_json()).unwrap();
        assert!(j.get("modulusDigits").is_some() && j.get("coords").is_some());
    }
}
