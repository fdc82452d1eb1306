use std::fmt;

use num_traits::{One, Zero};

use super::rational::Rational;
use super::scalar::Scalar;

/// Degree of a univariate polynomial. The zero polynomial has degree
/// `NegInfinity`, never `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// `true` when the degree is at most `bound` (always true for zero).
    pub fn at_most(self, bound: usize) -> bool {
        self.finite().is_none_or(|d| d <= bound)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Dense univariate polynomial in `x`; `coeffs[i]` multiplies `x^i`.
/// Trailing zeros are always trimmed.
#[derive(Clone, PartialEq)]
pub struct PolyX<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> PolyX<T> {
    pub fn zero() -> Self {
        PolyX { coeffs: Vec::new() }
    }

    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        let mut p = PolyX { coeffs };
        p.trim();
        p
    }

    pub fn constant(c: T) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c x^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        if c.vanishes() {
            return Self::zero();
        }
        let mut coeffs = vec![c.zero_like(); k];
        coeffs.push(c);
        PolyX { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.vanishes()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^i`, `None` above the degree.
    pub fn coeff(&self, i: usize) -> Option<&T> {
        self.coeffs.get(i)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c = c.add_ref(s);
        }
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        PolyX {
            coeffs: self.coeffs.iter().map(Scalar::neg_ref).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let zero = self.coeffs[0].zero_like();
        let mut out = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.vanishes() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale_by(&self, c: &T) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.scale(c)).collect())
    }

    /// Horner evaluation at a point of the coefficient ring.
    pub fn eval(&self, at: &T) -> T {
        let mut it = self.coeffs.iter().rev();
        let Some(first) = it.next() else {
            return at.zero_like();
        };
        it.fold(first.clone(), |acc, c| acc.mul_ref(at).add_ref(c))
    }

    /// Euclidean division, valid when the leading coefficient of `divisor`
    /// divides every leading coefficient met on the way (always true over a
    /// field). Returns `None` if some step is impossible or `divisor == 0`.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let lead = divisor.leading()?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let zero = lead.zero_like();
        let mut quot = vec![zero; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + dd];
            if top.vanishes() {
                continue;
            }
            let c = top.exact_div(lead)?;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].sub_ref(&c.mul_ref(d));
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Some((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div_poly(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(divisor)?;
        r.is_zero().then_some(q)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&Rational::from_integer((i as i64).into())))
                .collect(),
        )
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> PolyX<U> {
        PolyX::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl PolyX<Rational> {
    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    /// `x + c`.
    pub fn x_plus(c: &Rational) -> Self {
        Self::from_coeffs(vec![c.clone(), Rational::one()])
    }

    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor over Q");
            a = b;
            b = r;
        }
        a
    }
}

impl<T: Scalar> fmt::Debug for PolyX<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PolyX").field("coeffs", &self.coeffs).finish()
    }
}

impl fmt::Display for PolyX<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Polynomials in `x` over `Q` form a coefficient ring themselves; this is what
/// lets the Padé construction run either symbolically in `x` or at a fixed
/// rational point with the same code.
impl Scalar for PolyX<Rational> {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::constant(Rational::one())
    }
    fn vanishes(&self) -> bool {
        self.coeffs.is_empty()
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};

    fn p(c: &[i64]) -> PolyX<Rational> {
        PolyX::from_coeffs(c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn zero_polynomial_degree_is_marker() {
        let z: PolyX<Rational> = PolyX::zero();
        assert_eq!(z.degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Degree::Finite(1));
        assert_eq!(p(&[0, 0]).degree(), Degree::NegInfinity);
    }

    #[test]
    fn division_round_trip() {
        let a = p(&[1, 2, 3, 4]);
        let b = p(&[-1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert_eq!(r.degree(), Degree::Finite(0));
        assert!(a.exact_div_poly(&b).is_none());
        assert_eq!(a.mul(&b).exact_div_poly(&b).unwrap(), a);
    }

    #[test]
    fn eval_and_derivative() {
        let a = p(&[1, 0, 3]);
        assert_eq!(a.eval(&rat(1, 2)), rat(7, 4));
        assert_eq!(a.derivative(), p(&[0, 6]));
    }

    #[test]
    fn gcd_over_q() {
        let a = p(&[-1, 0, 1]); // x^2 - 1
        let b = p(&[1, 2, 1]); // (x + 1)^2
        let g = a.gcd(&b);
        assert_eq!(g.degree(), Degree::Finite(1));
        assert!(a.exact_div_poly(&g).is_some());
    }

    #[test]
    fn nested_scalar_ring() {
        let x = PolyX::<Rational>::x();
        let sq = x.pow_u(3);
        assert_eq!(sq, PolyX::monomial(int(1), 3));
        assert_eq!(sq.exact_div(&x).unwrap(), PolyX::monomial(int(1), 2));
    }
}
