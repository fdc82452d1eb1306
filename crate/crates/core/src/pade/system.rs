use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{factorial, int, pochhammer, BiPoly, PolyX, Rational};

/// The simultaneous Padé system attached to `(n, A, q)`:
/// `R(k) = n!^{A-1} (k)_{n+1} / ((k+x)_n^A (k+x+n)^q) = sum_{s,j} r_{j,s}(x) / (k+x+j)^s`,
/// `P_s = sum_j r_{j,s} z^j` and
/// `P_0 = -sum_s sum_j r_{j,s} z^j sum_{k<j} z^{-k} / (k+x)^s`.
#[derive(Clone, Debug, PartialEq)]
pub struct PadeSystem {
    n: usize,
    a: usize,
    q: usize,
    /// `r[j][s - 1]`.
    r: Vec<Vec<PolyX<Rational>>>,
    /// `p[s]` for `s` in `[0, A]`.
    p: Vec<BiPoly<Rational>>,
}

pub(crate) fn check_parameters(n: usize, a: usize, q: usize) -> Result<()> {
    if a < 2 {
        return Err(Error::InvalidParameter(format!("A must be >= 2, got {a}")));
    }
    if q > a {
        return Err(Error::InvalidParameter(format!("q = {q} outside [0, {a}]")));
    }
    if n == 0 || a * n < n + 3 {
        return Err(Error::InvalidParameter(format!(
            "need n >= 1 and A n >= n + 3, got n = {n}, A = {a}"
        )));
    }
    Ok(())
}

type Series = Vec<PolyX<Rational>>;

/// Truncated product of power series in `t` with coefficients in `Q[x]`.
fn series_mul(a: &Series, b: &Series, len: usize) -> Series {
    let mut out = vec![PolyX::zero(); len];
    for (i, u) in a.iter().enumerate().take(len) {
        for (j, v) in b.iter().enumerate().take(len - i) {
            out[i + j] = out[i + j].add(&u.mul(v));
        }
    }
    out
}

/// `1 / (t + c)^m` as a power series in `t` (`c != 0`), first `len` terms.
fn inverse_linear_power(c: i64, m: usize, len: usize) -> Vec<Rational> {
    // (t + c)^{-m} = c^{-m} sum_i C(-m, i) (t / c)^i
    let c = int(c);
    let mut out = Vec::with_capacity(len);
    let mut coeff = Rational::one() / num_traits::pow(c.clone(), m);
    for i in 0..len {
        out.push(coeff.clone());
        coeff = coeff * int(-(m as i64) - i as i64) / (int(i as i64 + 1) * &c);
    }
    out
}

/// Residues `r_{j,s}(x)` for `s in [1, order_j]`: with `t = k + x + j`,
/// `R t^{order}` is regular at `t = 0` and `r_{j,s}` is its coefficient of
/// `t^{order - s}`.
pub fn residue_coeffs(n: usize, a: usize, q: usize) -> Result<Vec<Vec<PolyX<Rational>>>> {
    check_parameters(n, a, q)?;
    let scale = Rational::from_integer(num_traits::pow(factorial(n as u64), a - 1));
    let mut r = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let order = if j < n { a } else { q };
        let mut row = vec![PolyX::zero(); a];
        if order == 0 {
            r.push(row);
            continue;
        }
        // numerator (k)_{n+1} = prod_{i=0}^{n} (t - x + i - j)
        let mut num: Series = vec![PolyX::constant(Rational::one())];
        for i in 0..=n {
            let c = PolyX::from_coeffs(vec![int(i as i64 - j as i64), int(-1)]);
            let factor = vec![c, PolyX::constant(Rational::one())];
            num = series_mul(&num, &factor, order);
        }
        // remaining denominator factors (t + i - j)^A for i != j, (t + n - j)^q
        let mut den: Series = vec![PolyX::constant(Rational::one())];
        let mut factors: Vec<(i64, usize)> =
            (0..n).filter(|&i| i != j).map(|i| (i as i64 - j as i64, a)).collect();
        if j < n && q > 0 {
            factors.push(((n - j) as i64, q));
        }
        for (c, m) in factors {
            let inv = inverse_linear_power(c, m, order)
                .into_iter()
                .map(PolyX::constant)
                .collect();
            den = series_mul(&den, &inv, order);
        }
        let regular = series_mul(&num, &den, order);
        for s in 1..=order {
            row[s - 1] = regular.get(order - s).cloned().unwrap_or_else(PolyX::zero).scale_rational(&scale);
        }
        r.push(row);
    }
    Ok(r)
}

fn shifted_x(k: usize) -> PolyX<Rational> {
    PolyX::x_plus(&int(k as i64))
}

fn poly_pow(p: &PolyX<Rational>, k: usize) -> PolyX<Rational> {
    (0..k).fold(PolyX::constant(Rational::one()), |acc, _| acc.mul(p))
}

impl PadeSystem {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self) -> usize {
        self.a
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// `r_{j,s}` for `j in [0, n]`, `s in [1, A]`.
    pub fn residue(&self, j: usize, s: usize) -> &PolyX<Rational> {
        &self.r[j][s - 1]
    }

    /// `P_s` for `s in [0, A]`.
    pub fn poly(&self, s: usize) -> &BiPoly<Rational> {
        &self.p[s]
    }

    pub fn polys(&self) -> &[BiPoly<Rational>] {
        &self.p
    }

    /// `R(k)` at rational `x`, `k`.
    pub fn remainder_kernel(&self, x: &Rational, k: &Rational) -> Rational {
        let num = pochhammer(k, self.n as u64 + 1)
            * Rational::from_integer(num_traits::pow(factorial(self.n as u64), self.a - 1));
        let base = pochhammer(&(k + x), self.n as u64);
        let tail = k + x + int(self.n as i64);
        num / (num_traits::pow(base, self.a) * num_traits::pow(tail, self.q))
    }

    /// `r_{n,q}(x) = n!^{A-1} (-n-x)_{n+1} / (-n)_n^A` (`q >= 1`).
    pub fn leading_residue_closed_form(n: usize, a: usize) -> PolyX<Rational> {
        let start = PolyX::from_coeffs(vec![int(-(n as i64)), int(-1)]);
        let top = pochhammer(&start, n as u64 + 1);
        let bottom = num_traits::pow(pochhammer(&int(-(n as i64)), n as u64), a);
        let scale = Rational::from_integer(num_traits::pow(factorial(n as u64), a - 1)) / bottom;
        top.scale_rational(&scale)
    }

    fn check_invariants(&self) -> Result<()> {
        let (n, q) = (self.n, self.q);
        let fail = |what: String| Err(Error::Consistency(what));
        for s in q + 1..=self.a {
            if !self.residue(n, s).is_zero() {
                return fail(format!("r_(n,{s}) is nonzero although s > q"));
            }
        }
        for (s, p) in self.p.iter().enumerate() {
            let dx = p.deg_x().unwrap_or(0);
            let dz = p.deg_z().unwrap_or(0);
            let x_bound = if s == 0 { n } else { n + 1 };
            let z_bound = if s > q { n - 1 } else { n };
            if dx > x_bound {
                return fail(format!("deg_x P_{s} = {dx} exceeds {x_bound}"));
            }
            if dz > z_bound {
                return fail(format!("deg_z P_{s} = {dz} exceeds {z_bound}"));
            }
        }
        if q >= 1 {
            let lead = self.p[q].z_coeff(n);
            if lead.is_zero() || lead != Self::leading_residue_closed_form(n, self.a) {
                return fail(format!("leading z-coefficient of P_{q} disagrees with r_(n,q)"));
            }
        }
        Ok(())
    }
}

/// Builds `P_0, ..., P_A`; the poles of `P_0` at `x = -k` are cancelled by
/// exact division, and every degree invariant is checked.
pub fn build_pade(n: usize, a: usize, q: usize) -> Result<PadeSystem> {
    let r = residue_coeffs(n, a, q)?;
    let mut p = vec![BiPoly::zero(); a + 1];
    for (s, ps) in p.iter_mut().enumerate().skip(1) {
        for (j, row) in r.iter().enumerate() {
            *ps = ps.add(&BiPoly::from_poly_x(&row[s - 1], j));
        }
    }
    // common denominator prod_{k<n} (x+k)^A
    let linear: Vec<PolyX<Rational>> = (0..n).map(shifted_x).collect();
    let den = linear.iter().fold(PolyX::constant(Rational::one()), |acc, l| acc.mul(&poly_pow(l, a)));
    let cofactor: Vec<Vec<PolyX<Rational>>> = (0..n)
        .map(|k| {
            let others = (0..n)
                .filter(|&i| i != k)
                .fold(PolyX::constant(Rational::one()), |acc, i| acc.mul(&poly_pow(&linear[i], a)));
            // den / (x+k)^s for s in [1, A]
            (1..=a).map(|s| others.mul(&poly_pow(&linear[k], a - s))).collect()
        })
        .collect();
    for m in 1..=n {
        let mut numerator = PolyX::zero();
        for s in 1..=a {
            for k in 0..=(n - m) {
                numerator = numerator.add(&r[k + m][s - 1].mul(&cofactor[k][s - 1]));
            }
        }
        let Some(c) = numerator.exact_div_poly(&den) else {
            return Err(Error::Consistency(format!(
                "a pole of P_0 survives in the z^{m} coefficient (n = {n}, A = {a}, q = {q})"
            )));
        };
        p[0] = p[0].add(&BiPoly::from_poly_x(&c.neg(), m));
    }
    let sys = PadeSystem { n, a, q, r, p };
    sys.check_invariants()?;
    Ok(sys)
}

/// One monomial `coeff * x^degX * z^degZ` of `P_s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PadeTerm {
    pub deg_x: usize,
    pub deg_z: usize,
    pub numerator: String,
    pub denominator: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadeSystemJson {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: usize,
    pub q: usize,
    #[serde(rename = "P")]
    pub p: Vec<Vec<PadeTerm>>,
}

impl PadeSystem {
    /// Canonical order `(s, degZ, degX)`.
    pub fn to_json(&self) -> PadeSystemJson {
        let p = self
            .p
            .iter()
            .map(|poly| {
                poly.terms()
                    .map(|(dx, dz, c)| PadeTerm {
                        deg_x: dx,
                        deg_z: dz,
                        numerator: c.numer().to_string(),
                        denominator: c.denom().to_string(),
                    })
                    .collect()
            })
            .collect();
        PadeSystemJson { n: self.n, a: self.a, q: self.q, p }
    }
}

impl PadeSystemJson {
    /// The polynomials `P_s` back as exact bivariate polynomials.
    pub fn polys(&self) -> Result<Vec<BiPoly<Rational>>> {
        let parse = |s: &str| {
            s.parse::<BigInt>()
                .map_err(|e| Error::Parse(format!("bad integer {s:?}: {e}")))
        };
        self.p
            .iter()
            .map(|terms| {
                let mut poly = BiPoly::zero();
                for t in terms {
                    let den = parse(&t.denominator)?;
                    if den.is_zero() {
                        return Err(Error::Parse("zero denominator".into()));
                    }
                    poly.add_term(t.deg_x, t.deg_z, Rational::new(parse(&t.numerator)?, den));
                }
                Ok(poly)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    #[test]
    fn parameter_domain() {
        assert!(build_pade(2, 2, 0).is_err()); // 4 < 5
        assert!(build_pade(3, 2, 3).is_err());
        assert!(build_pade(3, 1, 0).is_err());
        assert!(build_pade(3, 2, 0).is_ok());
    }

    #[test]
    fn degree_examples() {
        let s = build_pade(3, 2, 0).unwrap();
        assert!(s.poly(1).deg_z().unwrap() <= 2);
        assert!(s.poly(2).deg_z().unwrap() <= 2);
        let s = build_pade(3, 2, 2).unwrap();
        assert_eq!(s.poly(2).deg_z(), Some(3));
        let s = build_pade(2, 3, 1).unwrap();
        assert!(s.poly(0).deg_x().unwrap() <= 2);
    }

    #[test]
    fn residues_vanish_above_q() {
        let s = build_pade(4, 3, 1).unwrap();
        assert!(s.residue(4, 2).is_zero());
        assert!(s.residue(4, 3).is_zero());
        assert!(!s.residue(4, 1).is_zero());
    }

    #[test]
    fn whole_grid_builds() {
        for a in 2..=3 {
            for n in 1..=8 {
                if a * n < n + 3 {
                    continue;
                }
                for q in 0..=a {
                    build_pade(n, a, q).unwrap_or_else(|e| panic!("n={n} A={a} q={q}: {e}"));
                }
            }
        }
    }

    #[test]
    fn json_round_trip_is_canonical() {
        let s = build_pade(3, 2, 1).unwrap();
        let j = s.to_json();
        assert_eq!(j.polys().unwrap(), s.polys());
        let v = serde_json::to_value(&j).unwrap();
        assert!(v.get("A").is_some() && v.get("P").is_some());
        let first = &j.p[1];
        let keys: Vec<_> = first.iter().map(|t| (t.deg_z, t.deg_x)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]
        /// Partial fractions reproduce `R(k)` at random rational points.
        #[test]
        fn partial_fractions_reconstruct_kernel(xn in 1i64..200, xd in 1i64..50,
                                                kn in 0i64..200, kd in 1i64..50,
                                                pick in 0usize..6) {
            let (n, a, q) = [(3, 2, 0), (3, 2, 2), (2, 3, 1), (4, 3, 3), (5, 2, 1), (2, 4, 0)][pick];
            let s = build_pade(n, a, q).unwrap();
            let x = rat(xn, xd);
            let k = rat(kn, kd);
            let mut sum = Rational::zero();
            for j in 0..=n {
                for sp in 1..=a {
                    let t = &k + &x + int(j as i64);
                    sum += s.residue(j, sp).eval(&x) / num_traits::pow(t, sp);
                }
            }
            prop_assert_eq!(sum, s.remainder_kernel(&x, &k));
        }
    }
}
