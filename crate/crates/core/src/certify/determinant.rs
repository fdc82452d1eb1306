use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{BiPoly, Rational, Scalar};
use crate::pade::build_pade;

/// `det` by fraction-free (Bareiss) elimination with row pivoting. Every
/// division is exact in an integral domain; `None` reports a failed one.
pub fn bareiss_det<T: Scalar>(mut m: Vec<Vec<T>>) -> Option<T> {
    let size = m.len();
    if size == 0 {
        return None;
    }
    let one = m[0][0].one_like();
    let mut prev = one.clone();
    let mut negate = false;
    for k in 0..size - 1 {
        if m[k][k].vanishes() {
            let swap = (k + 1..size).find(|&i| !m[i][k].vanishes());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Some(one.zero_like()),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = m[i][j].mul_ref(&m[k][k]).sub_ref(&m[i][k].mul_ref(&m[k][j]));
                m[i][j] = num.exact_div(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[size - 1][size - 1].clone();
    Some(if negate { det.neg_ref() } else { det })
}

/// Laplace expansion along the first row.
pub fn cofactor_det<T: Scalar>(m: &[Vec<T>]) -> T {
    match m.len() {
        0 => panic!("determinant of an empty matrix"),
        1 => m[0][0].clone(),
        size => {
            let mut acc = m[0][0].zero_like();
            for col in 0..size {
                if m[0][col].vanishes() {
                    continue;
                }
                let minor: Vec<Vec<T>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != col)
                            .map(|(_, c)| c.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][col].mul_ref(&cofactor_det(&minor));
                acc = if col % 2 == 0 { acc.add_ref(&term) } else { acc.sub_ref(&term) };
            }
            acc
        }
    }
}

/// `Omega_n = det (P_s^{(q)})_{q,s in [0,A]} = gamma x^A z^{n+1} (z-1)^{(A-1)n-2}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DeterminantCertificate {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: usize,
    #[serde(serialize_with = "super::report::rational_pair")]
    pub gamma: Rational,
    pub verified: bool,
    /// `(deg_x, deg_z)` of `Omega_n`.
    pub degree_report: (usize, usize),
}

/// The matrix `M_n = (P_s^{(q)})_{q,s}`.
pub fn pade_matrix(n: usize, a: usize) -> Result<Vec<Vec<BiPoly<Rational>>>> {
    (0..=a)
        .map(|q| build_pade(n, a, q).map(|sys| sys.polys().to_vec()))
        .collect()
}

fn omega(n: usize, a: usize, m: Vec<Vec<BiPoly<Rational>>>) -> Result<BiPoly<Rational>> {
    let det = bareiss_det(m.clone()).ok_or_else(|| {
        Error::Consistency(format!("inexact Bareiss division (n = {n}, A = {a})"))
    })?;
    if m.len() <= 4 && cofactor_det(&m) != det {
        return Err(Error::Consistency(format!(
            "Bareiss and cofactor determinants differ (n = {n}, A = {a})"
        )));
    }
    Ok(det)
}

pub fn determinant_certificate(n: usize, a: usize) -> Result<DeterminantCertificate> {
    certify_matrix(n, a, pade_matrix(n, a)?)
}

/// Factors the determinant of a caller-supplied `(A+1) x (A+1)` matrix
/// against the shape expected for `M_n`.
pub fn certify_matrix(n: usize, a: usize, m: Vec<Vec<BiPoly<Rational>>>) -> Result<DeterminantCertificate> {
    if m.len() != a + 1 || m.iter().any(|row| row.len() != a + 1) {
        return Err(Error::InvalidParameter(format!("matrix is not {0} x {0}", a + 1)));
    }
    if (a - 1) * n < 2 {
        return Err(Error::InvalidParameter(format!("need (A-1)n >= 2, got n = {n}, A = {a}")));
    }
    let det = omega(n, a, m)?;
    let mismatch = |what: &str| {
        Error::FactorizationMismatch(format!("Omega_{n} for A = {a}: {what}"))
    };
    let degree_report = (det.deg_x().unwrap_or(0), det.deg_z().unwrap_or(0));
    let ones = (a - 1) * n - 2;
    let mut quot = det
        .div_monomial(a, n + 1)
        .ok_or_else(|| mismatch("not divisible by x^A z^{n+1}"))?;
    let z_minus_one = BiPoly::z().sub(&BiPoly::constant(Rational::from_integer(1.into())));
    for _ in 0..ones {
        quot = quot
            .exact_div_poly(&z_minus_one)
            .ok_or_else(|| mismatch("not divisible by (z-1)^{(A-1)n-2}"))?;
    }
    let gamma = quot.as_constant().ok_or_else(|| mismatch("cofactor is not constant"))?;
    if gamma.vanishes() {
        return Err(mismatch("determinant vanishes"));
    }
    Ok(DeterminantCertificate { n, a, gamma, verified: true, degree_report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn bareiss_matches_cofactor_on_rationals() {
        let m = vec![
            vec![rat(2, 1), rat(0, 1), rat(1, 3)],
            vec![rat(0, 1), rat(0, 1), rat(5, 1)],
            vec![rat(7, 2), rat(1, 1), rat(-1, 1)],
        ];
        assert_eq!(bareiss_det(m.clone()).unwrap(), cofactor_det(&m));
        assert_eq!(cofactor_det(&m), rat(-10, 1));
    }

    #[test]
    fn small_certificates() {
        let c = determinant_certificate(3, 2).unwrap();
        assert!(c.verified);
        assert_eq!(c.degree_report.1, 5); // An - 1
        assert_eq!(c.degree_report.0, 2);
        let c = determinant_certificate(2, 3).unwrap();
        assert_eq!(c.degree_report, (3, 5));
    }

    #[test]
    fn perturbed_matrix_is_rejected() {
        let mut m = pade_matrix(3, 2).unwrap();
        m[0][0].add_term(0, 0, rat(1, 1));
        assert!(matches!(certify_matrix(3, 2, m), Err(Error::FactorizationMismatch(_))));
    }
}
