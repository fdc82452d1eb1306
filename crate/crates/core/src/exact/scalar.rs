use std::fmt::Debug;

use num_traits::{One, Zero};

use super::rational::Rational;

/// Minimal exact commutative-ring interface shared by the coefficient types
/// (rationals, cyclotomic elements, polynomials in `x`).
///
/// Elements of some rings need context to build a zero or a one (a cyclotomic
/// element must know its field), so constants are produced from an existing
/// element with the `*_like` constructors.
pub trait Scalar: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn vanishes(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiply by a rational constant.
    fn scale(&self, c: &Rational) -> Self;
    /// Embed a rational constant into the ring of `self`.
    fn constant_like(&self, c: &Rational) -> Self;
    /// `self / rhs` when the quotient exists in the ring, `None` otherwise.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;

    fn pow_u(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_ref(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_ref(&base);
            }
        }
        acc
    }
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
    fn constant_like(&self, c: &Rational) -> Self {
        c.clone()
    }
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if Zero::is_zero(rhs) {
            None
        } else {
            Some(self / rhs)
        }
    }
}
