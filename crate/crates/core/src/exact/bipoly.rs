use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::poly::PolyX;
use super::rational::Rational;
use super::scalar::Scalar;

/// Sparse polynomial in `(x, z)`. Terms are keyed `(deg_z, deg_x)` so that the
/// map order is the lexicographic order with `z > x`, which the exact division
/// relies on. No zero coefficient is ever stored.
#[derive(Clone, PartialEq)]
pub struct BiPoly<T> {
    terms: BTreeMap<(usize, usize), T>,
}

impl<T: Scalar> BiPoly<T> {
    pub fn zero() -> Self {
        BiPoly { terms: BTreeMap::new() }
    }

    /// `c x^dx z^dz`.
    pub fn monomial(c: T, dx: usize, dz: usize) -> Self {
        let mut p = Self::zero();
        p.add_term(dx, dz, c);
        p
    }

    /// `poly(x) z^dz`.
    pub fn from_poly_x(poly: &PolyX<T>, dz: usize) -> Self {
        let mut p = Self::zero();
        for (dx, c) in poly.coeffs().iter().enumerate() {
            p.add_term(dx, dz, c.clone());
        }
        p
    }

    /// Adds `c x^dx z^dz` in place.
    pub fn add_term(&mut self, dx: usize, dz: usize, c: T) {
        if c.vanishes() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((dz, dx)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add_ref(&c);
                if s.vanishes() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `x^dx z^dz`.
    pub fn coeff(&self, dx: usize, dz: usize) -> Option<&T> {
        self.terms.get(&(dz, dx))
    }

    /// `(deg_x, deg_z, coefficient)` in increasing `(deg_z, deg_x)` order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.terms.iter().map(|(&(dz, dx), c)| (dx, dz, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree in `x`; `None` for the zero polynomial.
    pub fn deg_x(&self) -> Option<usize> {
        self.terms.keys().map(|&(_, dx)| dx).max()
    }

    /// Degree in `z`; `None` for the zero polynomial.
    pub fn deg_z(&self) -> Option<usize> {
        self.terms.keys().next_back().map(|&(dz, _)| dz)
    }

    /// Largest `k` with `x^k` dividing `self` (`None` for zero).
    pub fn x_adic_order(&self) -> Option<usize> {
        self.terms.keys().map(|&(_, dx)| dx).min()
    }

    /// Largest `k` with `z^k` dividing `self` (`None` for zero).
    pub fn z_adic_order(&self) -> Option<usize> {
        self.terms.keys().next().map(|&(dz, _)| dz)
    }

    /// The coefficient of `z^dz`, a polynomial in `x`.
    pub fn z_coeff(&self, dz: usize) -> PolyX<T> {
        let entries: Vec<(usize, &T)> = self
            .terms
            .range((dz, 0)..=(dz, usize::MAX))
            .map(|(&(_, dx), c)| (dx, c))
            .collect();
        let Some(&(_, first)) = entries.first() else {
            return PolyX::zero();
        };
        let len = entries.last().map_or(0, |&(dx, _)| dx + 1);
        let mut coeffs = vec![first.zero_like(); len];
        for (dx, c) in entries {
            coeffs[dx] = c.clone();
        }
        PolyX::from_coeffs(coeffs)
    }

    fn leading(&self) -> Option<((usize, usize), &T)> {
        self.terms.iter().next_back().map(|(&k, c)| (k, c))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(dz, dx), c) in &rhs.terms {
            out.add_term(dx, dz, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, c.neg_ref())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(dz, dx), c) in &rhs.terms {
            out.add_term(dx, dz, c.neg_ref());
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&(za, xa), a) in &self.terms {
            for (&(zb, xb), b) in &rhs.terms {
                out.add_term(xa + xb, za + zb, a.mul_ref(b));
            }
        }
        out
    }

    pub fn scale_by(&self, c: &T) -> Self {
        let mut out = Self::zero();
        for (&(dz, dx), a) in &self.terms {
            out.add_term(dx, dz, a.mul_ref(c));
        }
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (&(dz, dx), a) in &self.terms {
            out.add_term(dx, dz, a.scale(c));
        }
        out
    }

    /// `self / (x^kx z^kz)` when every term is divisible, `None` otherwise.
    pub fn div_monomial(&self, kx: usize, kz: usize) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (&(dz, dx), c) in &self.terms {
            if dx < kx || dz < kz {
                return None;
            }
            terms.insert((dz - kz, dx - kx), c.clone());
        }
        Some(BiPoly { terms })
    }

    /// Quotient of an exact division, via lexicographic (`z > x`) reduction
    /// of leading terms. `None` if `rhs` is zero or does not divide `self`.
    pub fn exact_div_poly(&self, rhs: &Self) -> Option<Self> {
        let ((lz, lx), lc) = rhs.leading()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(((rz, rx), rc)) = rem.leading() {
            if rz < lz || rx < lx {
                return None;
            }
            let c = rc.exact_div(lc)?;
            let term = Self::monomial(c, rx - lx, rz - lz);
            rem = rem.sub(&term.mul(rhs));
            quot = quot.add(&term);
        }
        Some(quot)
    }

    /// Evaluates the coefficients of each term and substitutes into `U`.
    pub fn eval_with<U: Scalar>(&self, x: &U, z: &U, embed: impl Fn(&T) -> U) -> U {
        let mut acc = x.zero_like();
        let mut xp: Vec<U> = vec![x.one_like()];
        let mut zp: Vec<U> = vec![z.one_like()];
        for (&(dz, dx), c) in &self.terms {
            while xp.len() <= dx {
                let next = xp.last().expect("nonempty").mul_ref(x);
                xp.push(next);
            }
            while zp.len() <= dz {
                let next = zp.last().expect("nonempty").mul_ref(z);
                zp.push(next);
            }
            acc = acc.add_ref(&embed(c).mul_ref(&xp[dx]).mul_ref(&zp[dz]));
        }
        acc
    }

    /// Substitutes `x = at`, leaving a polynomial in `z`.
    pub fn specialize_x(&self, at: &T) -> PolyX<T> {
        let Some(dz_max) = self.deg_z() else {
            return PolyX::zero();
        };
        let coeffs = (0..=dz_max)
            .map(|dz| self.z_coeff(dz).eval(at))
            .collect::<Vec<_>>();
        PolyX::from_coeffs(coeffs)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> BiPoly<U> {
        let mut out = BiPoly::zero();
        for (&(dz, dx), c) in &self.terms {
            out.add_term(dx, dz, f(c));
        }
        out
    }
}

impl BiPoly<Rational> {
    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1, 0)
    }

    pub fn z() -> Self {
        Self::monomial(Rational::one(), 0, 1)
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// Rational evaluation at `(x, z)`.
    pub fn eval(&self, x: &Rational, z: &Rational) -> Rational {
        self.eval_with(x, z, Clone::clone)
    }
}

impl Scalar for BiPoly<Rational> {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::constant(Rational::one())
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
    fn scale(&self, c: &Rational) -> Self {
        self.scale_rational(c)
    }
    fn constant_like(&self, c: &Rational) -> Self {
        Self::constant(c.clone())
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        self.exact_div_poly(rhs)
    }
}

impl<T: Scalar> fmt::Debug for BiPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(&(dz, dx), c)| (format!("x^{dx} z^{dz}"), c)))
            .finish()
    }
}

impl fmt::Display for BiPoly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(dz, dx), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if dx > 0 {
                write!(f, "*x^{dx}")?;
            }
            if dz > 0 {
                write!(f, "*z^{dz}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use proptest::prelude::*;

    fn z_minus_one() -> BiPoly<Rational> {
        BiPoly::z().sub(&BiPoly::constant(int(1)))
    }

    #[test]
    fn degrees_and_orders() {
        let p = BiPoly::monomial(int(3), 2, 5).add(&BiPoly::monomial(int(-1), 4, 1));
        assert_eq!(p.deg_x(), Some(4));
        assert_eq!(p.deg_z(), Some(5));
        assert_eq!(p.x_adic_order(), Some(2));
        assert_eq!(p.z_adic_order(), Some(1));
        assert_eq!(BiPoly::<Rational>::zero().deg_x(), None);
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let p = BiPoly::x().add(&BiPoly::x().neg());
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
    }

    #[test]
    fn exact_division_by_z_minus_one() {
        let base = BiPoly::x().add(&BiPoly::z().scale_rational(&rat(1, 2)));
        let prod = base.mul(&z_minus_one()).mul(&z_minus_one());
        let q = prod.exact_div_poly(&z_minus_one()).unwrap();
        assert_eq!(q.exact_div_poly(&z_minus_one()).unwrap(), base);
        assert!(base.exact_div_poly(&z_minus_one()).is_none());
    }

    #[test]
    fn specialise_and_evaluate() {
        let p = BiPoly::x().mul(&BiPoly::z()).add(&BiPoly::constant(int(2)));
        assert_eq!(p.eval(&int(3), &int(5)), int(17));
        let pz = p.specialize_x(&int(3));
        assert_eq!(pz.eval(&int(5)), int(17));
    }

    fn arb() -> impl Strategy<Value = BiPoly<Rational>> {
        proptest::collection::vec((0usize..4, 0usize..4, -5i64..5), 0..6).prop_map(|v| {
            let mut p = BiPoly::zero();
            for (dx, dz, c) in v {
                p.add_term(dx, dz, int(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn product_divides_back(a in arb(), b in arb()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!(a.mul(&b).exact_div_poly(&b).unwrap(), a);
        }

        #[test]
        fn evaluation_is_a_ring_map(a in arb(), b in arb(), x in -4i64..4, z in -4i64..4) {
            let (x, z) = (int(x), int(z));
            prop_assert_eq!(a.mul(&b).eval(&x, &z), a.eval(&x, &z) * b.eval(&x, &z));
        }
    }
}
