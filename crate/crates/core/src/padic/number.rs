use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{is_prime, vp_int, Rational};

/// Working precision shared by a family of p-adic computations.
///
/// Results are certified modulo `p^n`; internal truncations aim at
/// `p^{n + guard}` so that rounding in intermediate steps never reaches the
/// certified digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionContext {
    pub p: u32,
    pub n: i64,
    pub guard: i64,
}

impl PrecisionContext {
    pub fn new(p: u32, n: i64, guard: i64) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        if n < 1 || guard < 0 {
            return Err(Error::InvalidParameter(format!(
                "precision N = {n} must be >= 1 and guard = {guard} >= 0"
            )));
        }
        Ok(PrecisionContext { p, n, guard })
    }

    /// Absolute precision targeted by internal truncations.
    pub fn target(&self) -> i64 {
        self.n + self.guard
    }

    pub fn with_precision(&self, n: i64) -> Self {
        PrecisionContext { n, ..*self }
    }

    /// `q_p`: `p` for odd `p`, `4` for `p = 2`.
    pub fn q_p(&self) -> u32 {
        if self.p == 2 {
            4
        } else {
            self.p
        }
    }

    pub fn from_rational(&self, r: &Rational) -> PAdic {
        PAdic::from_rational(r, self.p, self.target())
    }
}

pub(crate) fn p_pow(p: u32, k: i64) -> BigInt {
    debug_assert!(k >= 0);
    num_traits::pow(BigInt::from(p), k as usize)
}

/// `floor(log_p k)` for `k >= 1`.
pub(crate) fn floor_log(p: u32, k: u64) -> i64 {
    let mut acc = 1u64;
    let mut e = 0;
    while let Some(next) = acc.checked_mul(p as u64) {
        if next > k {
            break;
        }
        acc = next;
        e += 1;
    }
    e
}

/// Element of `Q_p` known modulo `p^prec`.
///
/// A nonzero value is `p^val * unit` with `val < prec` and
/// `unit` in `[1, p^{prec - val})` coprime to `p`. A value with `unit = 0` is
/// `O(p^prec)`: zero to the known precision; its `val` equals `prec`.
#[derive(Clone, PartialEq, Eq)]
pub struct PAdic {
    p: u32,
    val: i64,
    unit: BigInt,
    prec: i64,
}

impl PAdic {
    /// Precision marker for values known exactly. Only ever used for zeros,
    /// which never materialise `p^prec`.
    pub const EXACT: i64 = i64::MAX / 8;

    pub fn zero(p: u32, prec: i64) -> Self {
        PAdic { p, val: prec, unit: BigInt::zero(), prec }
    }

    /// `p^v m + O(p^prec)` for an arbitrary integer `m`.
    fn normalise(p: u32, mut v: i64, mut m: BigInt, prec: i64) -> Self {
        if m.is_zero() {
            return Self::zero(p, prec);
        }
        let pb = BigInt::from(p);
        while v < prec {
            let (q, r) = m.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            m = q;
            v += 1;
        }
        if v >= prec {
            return Self::zero(p, prec);
        }
        let unit = m.mod_floor(&p_pow(p, prec - v));
        PAdic { p, val: v, unit, prec }
    }

    pub fn from_rational(r: &Rational, p: u32, prec: i64) -> Self {
        if r.is_zero() {
            return Self::zero(p, prec);
        }
        let vn = vp_int(r.numer(), p).expect("nonzero numerator");
        let vd = vp_int(r.denom(), p).expect("nonzero denominator");
        let v = vn - vd;
        if v >= prec {
            return Self::zero(p, prec);
        }
        let modulus = p_pow(p, prec - v);
        let num = r.numer() / p_pow(p, vn);
        let den = r.denom() / p_pow(p, vd);
        let inv = den
            .mod_floor(&modulus)
            .modinv(&modulus)
            .expect("denominator coprime to p");
        PAdic { p, val: v, unit: (num * inv).mod_floor(&modulus), prec }
    }

    pub fn from_int(n: i64, p: u32, prec: i64) -> Self {
        Self::normalise(p, 0, BigInt::from(n), prec)
    }

    /// `p^val * unit` with the unit read modulo `p^{prec - val}`.
    pub fn from_parts(p: u32, val: i64, unit: BigInt, prec: i64) -> Self {
        Self::normalise(p, val, unit, prec)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    /// Absolute precision: the value is known modulo `p^prec`.
    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// Digits known beyond the valuation.
    pub fn relative_precision(&self) -> i64 {
        self.prec - self.val
    }

    /// `v_p`; `None` when the value is zero to known precision.
    pub fn valuation(&self) -> Option<i64> {
        (!self.unit.is_zero()).then_some(self.val)
    }

    /// Valuation lower bound: `v_p` if known, `prec` otherwise.
    pub fn valuation_floor(&self) -> i64 {
        self.val
    }

    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    /// Drops digits at and beyond `p^prec`.
    pub fn reduce_precision(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        Self::normalise(self.p, self.val, self.unit.clone(), prec)
    }

    fn check_prime(&self, rhs: &Self) {
        assert_eq!(self.p, rhs.p, "mixing p-adic numbers for different primes");
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check_prime(rhs);
        let prec = self.prec.min(rhs.prec);
        let m = self.val.min(rhs.val);
        if m >= prec {
            return Self::zero(self.p, prec);
        }
        let lift = |x: &Self| {
            if x.is_zero() || x.val >= prec {
                BigInt::zero()
            } else {
                &x.unit * p_pow(x.p, x.val - m)
            }
        };
        Self::normalise(self.p, m, lift(self) + lift(rhs), prec)
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let modulus = p_pow(self.p, self.prec - self.val);
        PAdic { unit: &modulus - &self.unit, ..self.clone() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Precision `min(v_a + prec_b, v_b + prec_a)`.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.check_prime(rhs);
        let prec = (self.val + rhs.prec).min(rhs.val + self.prec).min(Self::EXACT);
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.p, prec);
        }
        let v = self.val + rhs.val;
        let modulus = p_pow(self.p, prec - v);
        PAdic { p: self.p, val: v, unit: (&self.unit * &rhs.unit).mod_floor(&modulus), prec }
    }

    /// Inverse, with absolute precision `prec - 2 v`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero(format!(
                "inverse of O({}^{})",
                self.p, self.prec
            )));
        }
        let rel = self.prec - self.val;
        let modulus = p_pow(self.p, rel);
        let unit = self.unit.modinv(&modulus).expect("unit is invertible");
        Ok(PAdic { p: self.p, val: -self.val, unit, prec: rel - self.val })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Multiplication by an exact rational; precision shifts by its valuation.
    pub fn scale_rational(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(self.p, self.prec.max(self.val));
        }
        let vn = vp_int(r.numer(), self.p).expect("nonzero");
        let vd = vp_int(r.denom(), self.p).expect("nonzero");
        let w = vn - vd;
        if self.is_zero() {
            return Self::zero(self.p, self.prec + w);
        }
        let rel = self.prec - self.val;
        let modulus = p_pow(self.p, rel);
        let num = r.numer() / p_pow(self.p, vn);
        let den = r.denom() / p_pow(self.p, vd);
        let inv = den.mod_floor(&modulus).modinv(&modulus).expect("coprime");
        PAdic {
            p: self.p,
            val: self.val + w,
            unit: (&self.unit * num * inv).mod_floor(&modulus),
            prec: self.prec + w,
        }
    }

    /// Integer power by binary exponentiation; negative exponents invert.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = Self::one_like(self);
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// The exact value `1` carried at the relative precision of `self`.
    fn one_like(x: &Self) -> Self {
        let rel = (x.prec - x.val).max(1);
        PAdic { p: x.p, val: 0, unit: BigInt::one(), prec: rel }
    }

    /// `true` when `self - rhs` vanishes modulo `p^{min(prec)}`.
    pub fn agrees_with(&self, rhs: &Self) -> bool {
        self.sub(rhs).is_zero()
    }

    /// `true` when `self - rhs` vanishes modulo `p^k`.
    pub fn agrees_to(&self, rhs: &Self, k: i64) -> bool {
        self.sub(rhs).reduce_precision(k).is_zero()
    }

    /// The rational `p^val * unit`, the canonical representative.
    pub fn to_rational(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let pv = p_pow(self.p, self.val.abs());
        if self.val >= 0 {
            Rational::from_integer(&self.unit * pv)
        } else {
            Rational::new(self.unit.clone(), pv)
        }
    }

    /// Base-p digits of the unit, least significant first.
    pub fn unit_digits(&self) -> Vec<u64> {
        let pb = BigInt::from(self.p);
        let mut m = self.unit.clone();
        let mut out = Vec::new();
        while !m.is_zero() {
            let (q, r) = m.div_rem(&pb);
            out.push(r.to_u64().expect("digit below p"));
            m = q;
        }
        out
    }

    /// Base-p digits of `p^{-v} x` padded to the relative precision.
    pub fn padded_digits(&self) -> Vec<u64> {
        let mut d = self.unit_digits();
        d.resize((self.prec - self.val).max(0) as usize, 0);
        d
    }

    pub fn to_json(&self) -> PAdicJson {
        PAdicJson {
            p: self.p,
            valuation: self.valuation(),
            unit_digits: self.unit_digits(),
            known_precision: self.prec,
        }
    }

    pub fn from_json(j: &PAdicJson) -> Result<Self> {
        let mut unit = BigInt::zero();
        for &d in j.unit_digits.iter().rev() {
            if d >= j.p as u64 {
                return Err(Error::Parse(format!("digit {d} out of range for p = {}", j.p)));
            }
            unit = unit * j.p + d;
        }
        match j.valuation {
            None => Ok(Self::zero(j.p, j.known_precision)),
            Some(v) => Ok(Self::normalise(j.p, v, unit, j.known_precision)),
        }
    }

    /// `|self|_p` as a float (`0` for zero to known precision).
    pub fn abs_f64(&self) -> f64 {
        match self.valuation() {
            None => 0.0,
            Some(v) => (self.p as f64).powi(-(v as i32)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PAdicJson {
    pub p: u32,
    pub valuation: Option<i64>,
    pub unit_digits: Vec<u64>,
    pub known_precision: i64,
}

impl fmt::Display for PAdic {
    /// `p^v*[d0,d1,...] + O(p^N)` with little-endian digits of the unit.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "O({}^{})", self.p, self.prec);
        }
        let digits: Vec<String> = self.padded_digits().iter().map(u64::to_string).collect();
        write!(f, "{}^{}*[{}] + O({}^{})", self.p, self.val, digits.join(","), self.p, self.prec)
    }
}

impl fmt::Debug for PAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PAdic({self})")
    }
}
