use super::rational::Rational;
use super::scalar::Scalar;
use super::poly::PolyX;

/// Truncated Laurent series `sum_{k=start}^{K} c_k x^{-k} + O(x^{-K-1})` in
/// the variable `1/x`.
///
/// `trunc = None` means the series is exact (a Laurent polynomial). When
/// `trunc = Some(K)` every stored index is at most `K` and nothing is known
/// beyond it. `zero` is a template for building zeros in the coefficient ring.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentTail<T> {
    start: i64,
    coeffs: Vec<T>,
    trunc: Option<i64>,
    zero: T,
}

impl<T: Scalar> LaurentTail<T> {
    /// The series `sum c_k x^{-k}` with `c_{start+i} = coeffs[i]`.
    pub fn new(start: i64, coeffs: Vec<T>, trunc: Option<i64>, zero: T) -> Self {
        let mut s = LaurentTail { start, coeffs, trunc, zero };
        s.normalise();
        s
    }

    pub fn zero(zero: T, trunc: Option<i64>) -> Self {
        Self::new(0, Vec::new(), trunc, zero)
    }

    /// A polynomial in `x` read as a Laurent series in `1/x`: `x^i` sits at
    /// index `-i`.
    pub fn from_poly_x(p: &PolyX<T>, zero: T) -> Self {
        let d = p.coeffs().len() as i64;
        let coeffs = p.coeffs().iter().rev().cloned().collect();
        Self::new(1 - d, coeffs, None, zero)
    }

    fn normalise(&mut self) {
        if let Some(k) = self.trunc {
            let keep = (k - self.start + 1).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().is_some_and(|c| c.vanishes()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.vanishes()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.start += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.start = 0;
        }
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn truncation(&self) -> Option<i64> {
        self.trunc
    }

    /// Coefficient of `x^{-k}`; `None` when `k` lies beyond the truncation.
    pub fn coeff(&self, k: i64) -> Option<T> {
        if self.trunc.is_some_and(|t| k > t) {
            return None;
        }
        let i = k - self.start;
        if i < 0 || i as usize >= self.coeffs.len() {
            return Some(self.zero.clone());
        }
        Some(self.coeffs[i as usize].clone())
    }

    /// Smallest index with a nonzero coefficient among the known ones.
    pub fn order(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }

    /// Highest stored index plus one (0 for the zero series).
    fn end(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let trunc = min_opt(self.trunc, rhs.trunc);
        if self.coeffs.is_empty() {
            return Self::new(rhs.start, rhs.coeffs.clone(), trunc, self.zero.clone());
        }
        if rhs.coeffs.is_empty() {
            return Self::new(self.start, self.coeffs.clone(), trunc, self.zero.clone());
        }
        let lo = self.start.min(rhs.start);
        let hi = self.end().max(rhs.end());
        let coeffs = (lo..hi)
            .map(|k| {
                let a = self.stored(k);
                let b = rhs.stored(k);
                match (a, b) {
                    (Some(a), Some(b)) => a.add_ref(b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => self.zero.clone(),
                }
            })
            .collect();
        Self::new(lo, coeffs, trunc, self.zero.clone())
    }

    fn stored(&self, k: i64) -> Option<&T> {
        let i = k - self.start;
        (i >= 0).then(|| self.coeffs.get(i as usize)).flatten()
    }

    pub fn neg(&self) -> Self {
        Self::new(
            self.start,
            self.coeffs.iter().map(Scalar::neg_ref).collect(),
            self.trunc,
            self.zero.clone(),
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Product; truncation order `min(K1 + k2, K2 + k1)` where `k1`, `k2` are
    /// the start orders.
    pub fn mul(&self, rhs: &Self) -> Self {
        let trunc = min_opt(
            self.trunc.map(|k| k + rhs.start),
            rhs.trunc.map(|k| k + self.start),
        );
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Self::zero(self.zero.clone(), trunc);
        }
        let mut out = vec![self.zero.clone(); self.coeffs.len() + rhs.coeffs.len() - 1];
        let limit = trunc.map(|t| t - self.start - rhs.start);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.vanishes() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if limit.is_some_and(|l| (i + j) as i64 > l) {
                    break;
                }
                if !b.vanishes() {
                    out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        Self::new(self.start + rhs.start, out, trunc, self.zero.clone())
    }

    pub fn scale_by(&self, c: &T) -> Self {
        Self::new(
            self.start,
            self.coeffs.iter().map(|a| a.mul_ref(c)).collect(),
            self.trunc,
            self.zero.clone(),
        )
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        Self::new(
            self.start,
            self.coeffs.iter().map(|a| a.scale(c)).collect(),
            self.trunc,
            self.zero.clone(),
        )
    }

    /// Forgets everything beyond index `k`.
    pub fn truncate(&self, k: i64) -> Self {
        Self::new(
            self.start,
            self.coeffs.clone(),
            min_opt(self.trunc, Some(k)),
            self.zero.clone(),
        )
    }

    /// `(index, coefficient)` pairs of the stored, nonzero coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.vanishes())
            .map(move |(i, c)| (self.start + i as i64, c))
    }
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (x, None) | (None, x) => x,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn poly(c: &[i64]) -> PolyX<Rational> {
        PolyX::from_coeffs(c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn polynomial_round_trip() {
        let p = poly(&[1, 2, 3]);
        let s = LaurentTail::from_poly_x(&p, Rational::zero());
        assert_eq!(s.start(), -2);
        assert_eq!(s.coeff(-2), Some(int(3)));
        assert_eq!(s.coeff(0), Some(int(1)));
        assert_eq!(s.coeff(5), Some(int(0)));
    }

    #[test]
    fn truncation_propagates() {
        let z = Rational::zero();
        let a = LaurentTail::new(1, vec![int(1), int(1)], Some(4), z.clone());
        let b = LaurentTail::new(-2, vec![int(1)], Some(3), z.clone());
        let c = a.mul(&b);
        // min(4 + (-2), 3 + 1) = 2
        assert_eq!(c.truncation(), Some(2));
        assert_eq!(c.coeff(-1), Some(int(1)));
        assert_eq!(c.coeff(3), None);
        assert_eq!(a.add(&b).truncation(), Some(3));
    }

    proptest! {
        #[test]
        fn finite_product_matches_polynomials(
            a in proptest::collection::vec(-9i64..9, 0..7),
            b in proptest::collection::vec(-9i64..9, 0..7),
        ) {
            let (pa, pb) = (poly(&a), poly(&b));
            let z = Rational::zero();
            let prod = LaurentTail::from_poly_x(&pa, z.clone())
                .mul(&LaurentTail::from_poly_x(&pb, z.clone()));
            prop_assert_eq!(prod.truncation(), None);
            prop_assert_eq!(prod, LaurentTail::from_poly_x(&pa.mul(&pb), z));
        }
    }
}
