use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{cyclo_field, int, lcm_upto, mu, CycloElement, Rational, Scalar};
use crate::pade::{at_root_of_unity, PadeSystem};

/// Outcome of the four integrality statements for one Padé system.
///
/// (i) `p^{floor(n/(p-1))} d_n^{A-s} P_s(x, xi) in Z_p[xi][x]`,
/// (ii) `p^{floor(n/(p-1))} d_n^{A-1} P_0(x, xi) in Z_p[xi][x]`,
/// (iii) `b d_n^{A-s} mu_n(b) P_s(a/b, xi) in Z[xi]`,
/// (iv) `d_n^A mu_n(b) P_0(a/b, xi) in Z[xi]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IntegralityReport {
    pub n: usize,
    #[serde(rename = "A")]
    pub a_weight: usize,
    pub q: usize,
    pub a: i64,
    pub b: u64,
    pub p: u32,
    pub e: u64,
    pub statements: [bool; 4],
    pub failures: Vec<String>,
}

impl IntegralityReport {
    pub fn passed(&self) -> bool {
        self.statements.iter().all(|&ok| ok)
    }
}

fn power(base: &BigInt, k: usize) -> Rational {
    Rational::from_integer(num_traits::pow(base.clone(), k))
}

/// The power basis `1, xi, ..., xi^{phi(e)-1}` is an integral basis of
/// `Z[xi]`, so membership is checked coordinatewise.
pub fn integrality_audit(sys: &PadeSystem, a: i64, b: u64, p: u32, e: u64) -> Result<IntegralityReport> {
    if b == 0 || BigInt::from(a).gcd(&BigInt::from(b)) != BigInt::from(1) {
        return Err(Error::InvalidParameter(format!("need gcd(a, b) = 1 and b > 0, got {a}/{b}")));
    }
    if e < 2 {
        return Err(Error::InvalidParameter(format!("e must be >= 2, got {e}")));
    }
    let (n, weight) = (sys.n(), sys.weight());
    let dn = lcm_upto(n as u64);
    let p_factor = power(&BigInt::from(p), n / (p as usize - 1));
    let mu_b = Rational::from_integer(mu(b, n as u64));
    let field = cyclo_field(e);
    let x = CycloElement::from_rational(&field, Rational::new(a.into(), b.into()));
    let mut statements = [true; 4];
    let mut failures = Vec::new();

    for s in 0..=weight {
        let poly = at_root_of_unity(sys.poly(s), e);
        let d_exp = if s == 0 { weight - 1 } else { weight - s };
        let local = &p_factor * power(&dn, d_exp);
        let idx = if s == 0 { 1 } else { 0 };
        for (i, c) in poly.coeffs().iter().enumerate() {
            if let Some(v) = c.scale(&local).min_valuation(p).filter(|&v| v < 0) {
                statements[idx] = false;
                failures.push(format!("({}) s = {s}: x^{i} coefficient has v_{p} = {v}", ["i", "ii"][idx]));
            }
        }
        let global = if s == 0 {
            power(&dn, weight) * &mu_b
        } else {
            int(b as i64) * power(&dn, weight - s) * &mu_b
        };
        let value = poly.eval(&x).scale(&global);
        if !value.is_integral() {
            let idx = if s == 0 { 3 } else { 2 };
            statements[idx] = false;
            failures.push(format!("({}) s = {s}: value {value} is not in Z[xi]", ["iii", "iv"][idx - 2]));
        }
    }
    Ok(IntegralityReport {
        n,
        a_weight: weight,
        q: sys.q(),
        a,
        b,
        p,
        e,
        statements,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pade::build_pade;

    #[test]
    fn listed_examples_pass() {
        let r = integrality_audit(&build_pade(4, 2, 1).unwrap(), 2, 5, 5, 2).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        let r = integrality_audit(&build_pade(6, 3, 0).unwrap(), 7, 10, 7, 3).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        let r = integrality_audit(&build_pade(5, 2, 2).unwrap(), 3, 1, 2, 4).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn audit_detects_a_missing_normaliser() {
        // without d_n^A the P_0 coefficients are not integral
        let sys = build_pade(6, 2, 0).unwrap();
        let p0 = at_root_of_unity(sys.poly(0), 2);
        assert!(p0.coeffs().iter().any(|c| !c.is_integral()));
    }

    #[test]
    fn rejects_non_coprime_input() {
        let sys = build_pade(3, 2, 0).unwrap();
        assert!(integrality_audit(&sys, 2, 4, 2, 2).is_err());
    }
}
