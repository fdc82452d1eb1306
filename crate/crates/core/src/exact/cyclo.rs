use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use super::poly::PolyX;
use super::rational::{rational_to_f64, vp_rational, Rational};
use super::scalar::Scalar;

/// The cyclotomic field `Q(xi_e)` in the power basis `1, xi, ..., xi^{phi(e)-1}`.
#[derive(Debug)]
pub struct CycloField {
    e: u64,
    /// `Phi_e`, low degree first, monic.
    phi: Vec<BigInt>,
    /// `xi^k mod Phi_e` for `k` in `[0, 2 deg)`; covers every product of two
    /// reduced elements and every power `xi^k`, `k < e`.
    powers: Vec<Vec<Rational>>,
}

impl CycloField {
    fn new(e: u64) -> Self {
        let phi = cyclotomic_poly(e);
        let d = phi.len() - 1;
        let limit = (2 * d).max(e as usize);
        let mut powers = Vec::with_capacity(limit);
        let mut cur = vec![Rational::zero(); d];
        cur[0] = Rational::one();
        for _ in 0..limit {
            powers.push(cur.clone());
            // multiply by X and reduce the overflow with X^d = -sum phi_i X^i
            let top = cur[d - 1].clone();
            for i in (1..d).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = Rational::zero();
            if !top.is_zero() {
                for (c, ph) in cur.iter_mut().zip(&phi) {
                    *c -= &top * Rational::from_integer(ph.clone());
                }
            }
        }
        CycloField { e, phi, powers }
    }

    pub fn order(&self) -> u64 {
        self.e
    }

    /// `phi(e)`, the degree of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.phi
    }
}

fn field_cache() -> &'static Mutex<HashMap<u64, Arc<CycloField>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycloField>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared handle to `Q(xi_e)`, built once per `e`.
pub fn cyclo_field(e: u64) -> Arc<CycloField> {
    assert!(e >= 1, "cyclotomic order must be positive");
    let mut cache = field_cache().lock().expect("cyclotomic cache poisoned");
    cache
        .entry(e)
        .or_insert_with(|| Arc::new(CycloField::new(e)))
        .clone()
}

/// `Phi_e(X)` with integer coefficients (low degree first), obtained by
/// dividing `X^e - 1` by every `Phi_d`, `d | e`, `d < e`.
pub fn cyclotomic_poly(e: u64) -> Vec<BigInt> {
    assert!(e >= 1, "cyclotomic order must be positive");
    let mut num = vec![Rational::zero(); e as usize + 1];
    num[0] = -Rational::one();
    num[e as usize] = Rational::one();
    let mut acc = PolyX::from_coeffs(num);
    for d in 1..e {
        if e % d == 0 {
            let phi_d = PolyX::from_coeffs(
                cyclotomic_poly(d)
                    .into_iter()
                    .map(Rational::from_integer)
                    .collect(),
            );
            acc = acc
                .exact_div_poly(&phi_d)
                .expect("Phi_d divides X^e - 1");
        }
    }
    acc.into_coeffs()
        .into_iter()
        .map(|c| {
            assert!(c.is_integer());
            c.to_integer()
        })
        .collect()
}

/// Element of `Q(xi_e)`, stored as its unique reduced coordinate vector.
#[derive(Clone)]
pub struct CycloElement {
    field: Arc<CycloField>,
    coeffs: Vec<Rational>,
}

impl PartialEq for CycloElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.e == other.field.e && self.coeffs == other.coeffs
    }
}

impl CycloElement {
    pub fn zero(field: &Arc<CycloField>) -> Self {
        CycloElement {
            field: field.clone(),
            coeffs: vec![Rational::zero(); field.degree()],
        }
    }

    pub fn from_rational(field: &Arc<CycloField>, c: Rational) -> Self {
        let mut z = Self::zero(field);
        z.coeffs[0] = c;
        z
    }

    /// Builds the element from a coordinate vector of any length, reducing
    /// modulo `Phi_e`.
    pub fn from_poly_coeffs(field: &Arc<CycloField>, raw: &[Rational]) -> Self {
        let mut out = Self::zero(field);
        for (k, c) in raw.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let basis = power_of_x(field, k);
            for (o, b) in out.coeffs.iter_mut().zip(basis.iter()) {
                if !b.is_zero() {
                    *o += c * b;
                }
            }
        }
        out
    }

    /// `xi^k` for any integer `k`.
    pub fn xi_power(field: &Arc<CycloField>, k: i64) -> Self {
        let r = k.rem_euclid(field.e as i64) as usize;
        CycloElement {
            field: field.clone(),
            coeffs: field.powers[r].clone(),
        }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn order(&self) -> u64 {
        self.field.e
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Every coordinate is an integer, i.e. the element lies in `Z[xi]`.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Smallest p-adic valuation among coordinates; `None` for zero.
    pub fn min_valuation(&self, p: u32) -> Option<i64> {
        self.coeffs.iter().filter_map(|c| vp_rational(c, p)).min()
    }

    /// Field inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if Scalar::vanishes(self) {
            return None;
        }
        let a = PolyX::from_coeffs(self.coeffs.clone());
        let m = PolyX::from_coeffs(
            self.field
                .phi
                .iter()
                .cloned()
                .map(Rational::from_integer)
                .collect(),
        );
        // extended Euclid: track s with s * a ≡ r (mod m)
        let (mut r0, mut r1) = (m, a);
        let (mut s0, mut s1) = (PolyX::<Rational>::zero(), PolyX::constant(Rational::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor over Q");
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is a nonzero constant because Phi_e is irreducible
        let c = r0.coeff(0)?.clone();
        let inv_c = Rational::one() / c;
        Some(Self::from_poly_coeffs(
            &self.field,
            s0.scale_rational(&inv_c).coeffs(),
        ))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, k: i64) -> Option<Self> {
        if k >= 0 {
            Some(self.pow_u(k as u64))
        } else {
            Some(self.inv()?.pow_u(k.unsigned_abs()))
        }
    }
}

fn power_of_x(field: &Arc<CycloField>, k: usize) -> std::borrow::Cow<'_, [Rational]> {
    if k < field.powers.len() {
        return std::borrow::Cow::Borrowed(&field.powers[k]);
    }
    std::borrow::Cow::Owned(field.powers[k % field.e as usize].clone())
}

/// `xi_e` as an element of `Q(xi_e)`: the class of `X` modulo `Phi_e`.
pub fn cyclo_root(e: u64) -> CycloElement {
    assert!(e >= 2, "cyclo_root requires e >= 2");
    CycloElement::xi_power(&cyclo_field(e), 1)
}

/// Value under the embedding `xi -> exp(2 pi i / e)`.
pub fn embed_complex(v: &CycloElement) -> Complex64 {
    let e = v.field.e as f64;
    v.coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / e;
            Complex64::from_polar(1.0, angle) * rational_to_f64(c)
        })
        .sum()
}

impl Scalar for CycloElement {
    fn zero_like(&self) -> Self {
        Self::zero(&self.field)
    }
    fn one_like(&self) -> Self {
        Self::from_rational(&self.field, Rational::one())
    }
    fn vanishes(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.field.e, rhs.field.e);
        CycloElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.field.e, rhs.field.e);
        CycloElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.field.e, rhs.field.e);
        let d = self.field.degree();
        let mut raw = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        Self::from_poly_coeffs(&self.field, &raw)
    }
    fn neg_ref(&self) -> Self {
        CycloElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
    fn scale(&self, c: &Rational) -> Self {
        CycloElement {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }
    fn constant_like(&self, c: &Rational) -> Self {
        Self::from_rational(&self.field, c.clone())
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        Some(self.mul_ref(&rhs.inv()?))
    }
}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElement(e={}, {})", self.field.e, self)
    }
}

impl fmt::Display for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*xi")?,
                _ => write!(f, "({c})*xi^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use proptest::prelude::*;

    fn eval_phi_at(e: u64, v: &CycloElement) -> CycloElement {
        let phi = cyclotomic_poly(e);
        let mut acc = v.zero_like();
        for c in phi.iter().rev() {
            acc = acc.mul_ref(v).add_ref(&v.constant_like(&Rational::from_integer(c.clone())));
        }
        acc
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        let b = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
        assert_eq!(cyclotomic_poly(2), b(&[1, 1]));
        assert_eq!(cyclotomic_poly(3), b(&[1, 1, 1]));
        assert_eq!(cyclotomic_poly(4), b(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(6), b(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), b(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn root_examples() {
        let m1 = cyclo_root(2);
        assert_eq!(m1.coords(), &[int(-1)]);
        let i = cyclo_root(4);
        assert_eq!(i.mul_ref(&i), i.constant_like(&int(-1)));
        let w = cyclo_root(3);
        let s = w.one_like().add_ref(&w).add_ref(&w.mul_ref(&w));
        assert!(Scalar::vanishes(&s));
    }

    #[test]
    fn root_is_zero_of_phi() {
        for e in 2..=30 {
            let xi = cyclo_root(e);
            assert!(Scalar::vanishes(&eval_phi_at(e, &xi)), "e={e}");
            assert_eq!(xi.pow_u(e), xi.one_like(), "xi^e = 1 for e={e}");
            assert_eq!(xi.field().degree() as u64, crate::exact::euler_phi(e));
        }
    }

    #[test]
    fn complex_embedding() {
        let one = cyclo_root(5).one_like();
        let c = embed_complex(&one);
        assert!((c.re - 1.0).abs() < 1e-15 && c.im.abs() < 1e-15);
        let i = embed_complex(&cyclo_root(4));
        assert!(i.re.abs() < 1e-12 && (i.im - 1.0).abs() < 1e-12);
        let w = cyclo_root(3);
        let c = embed_complex(&w.one_like().add_ref(&w));
        assert!((c.re - 0.5).abs() < 1e-6 && (c.im - 0.8660254).abs() < 1e-6);
    }

    #[test]
    fn negative_powers() {
        let xi = cyclo_root(7);
        let field = xi.field().clone();
        assert_eq!(xi.pow(-3).unwrap(), CycloElement::xi_power(&field, 4));
        assert_eq!(CycloElement::xi_power(&field, -1).mul_ref(&xi), xi.one_like());
    }

    fn element(e: u64) -> impl Strategy<Value = CycloElement> {
        let d = crate::exact::euler_phi(e) as usize;
        proptest::collection::vec((-20i64..20, 1i64..6), d).prop_map(move |v| {
            let f = cyclo_field(e);
            let raw: Vec<Rational> = v.into_iter().map(|(n, d)| rat(n, d)).collect();
            CycloElement::from_poly_coeffs(&f, &raw)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn field_axioms((a, b, c) in prop::sample::select(vec![3u64, 5, 8, 9, 12])
            .prop_flat_map(|e| (element(e), element(e), element(e)))) {
            prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
            prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
            if !Scalar::vanishes(&a) {
                prop_assert_eq!(a.mul_ref(&a.inv().unwrap()), a.one_like());
            }
        }

        #[test]
        fn inverse_in_q_xi_12(a in element(12)) {
            prop_assume!(!Scalar::vanishes(&a));
            prop_assert_eq!(a.inv().unwrap().mul_ref(&a), a.one_like());
        }
    }
}
