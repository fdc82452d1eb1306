use num_complex::Complex64;

use crate::exact::{cyclo_root, embed_complex, rational_to_f64, BiPoly, Rational};

use super::system::PadeSystem;

/// Moving averages over one period of the twist, applied to the last partial
/// sums of `sum_k f(k) w^k` with `w^e = 1`. Each pass removes one order of
/// the oscillating tail, so `levels` passes leave an error `O(f^{(levels)}(N))`.
fn periodic_average(partials: &[Complex64], e: usize, levels: usize) -> Complex64 {
    let mut cur = partials.to_vec();
    for _ in 0..levels {
        cur = cur
            .windows(e)
            .map(|w| w.iter().sum::<Complex64>() / e as f64)
            .collect();
    }
    *cur.last().expect("enough partial sums for the averaging")
}

const LEVELS: usize = 4;

/// `sum_{k>=0} f(k) w^k` for a smooth decaying `f` and a root of unity `w` of
/// order `e`, from `terms` terms plus periodic averaging.
fn twisted_sum(f: impl Fn(f64) -> f64, w: Complex64, e: usize, terms: usize) -> Complex64 {
    let window = LEVELS * (e - 1) + 1;
    let mut partials = Vec::with_capacity(window);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut wk = Complex64::new(1.0, 0.0);
    let last = terms.max(window);
    for k in 0..last {
        acc += wk * f(k as f64);
        wk *= w;
        if k % 64 == 0 {
            wk /= wk.norm();
        }
        if k + window >= last {
            partials.push(acc);
        }
    }
    periodic_average(&partials, e, LEVELS)
}

fn kernel(sys: &PadeSystem, x: f64, k: f64) -> f64 {
    let n = sys.n();
    let mut v = 1.0;
    for i in 1..=n {
        v *= (i as f64).powi(sys.weight() as i32 - 1);
    }
    for i in 0..=n {
        v *= k + i as f64;
    }
    for i in 0..n {
        v /= (k + x + i as f64).powi(sys.weight() as i32);
    }
    v / (k + x + n as f64).powi(sys.q() as i32)
}

pub fn eval_bipoly(p: &BiPoly<Rational>, x: f64, z: Complex64) -> Complex64 {
    p.terms()
        .map(|(dx, dz, c)| z.powu(dz as u32) * rational_to_f64(c) * x.powi(dx as i32))
        .sum()
}

/// `S(x, xi) = sum_k R(k) xi^{-k}`, summed directly.
pub fn s_value(sys: &PadeSystem, e: u64, x: f64, terms: usize) -> Complex64 {
    let xi = embed_complex(&cyclo_root(e));
    twisted_sum(|k| kernel(sys, x, k), xi.inv(), e as usize, terms)
}

/// `phi_s(x, xi^{-1}) = sum_k xi^{-k} / (k + x)^s`.
pub fn lerch_value(s: usize, e: u64, x: f64, terms: usize) -> Complex64 {
    let xi = embed_complex(&cyclo_root(e));
    twisted_sum(|k| (k + x).powi(-(s as i32)), xi.inv(), e as usize, terms)
}

/// `|S(x0, xi) - P_0(x0, xi) - sum_s P_s(x0, xi) phi_s(x0, xi^{-1})|` in
/// double precision.
pub fn numeric_identity_check(sys: &PadeSystem, e: u64, x0: &Rational, terms: usize) -> f64 {
    let x = rational_to_f64(x0);
    let xi = embed_complex(&cyclo_root(e));
    let mut rhs = eval_bipoly(sys.poly(0), x, xi);
    for s in 1..=sys.weight() {
        rhs += eval_bipoly(sys.poly(s), x, xi) * lerch_value(s, e, x, terms);
    }
    (s_value(sys, e, x, terms) - rhs).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::pade::build_pade;

    #[test]
    fn averaging_sums_alternating_harmonic() {
        let got = twisted_sum(|k| 1.0 / (k + 1.0), Complex64::new(-1.0, 0.0), 2, 1000);
        assert!((got.re - std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn identity_holds_numerically() {
        for q in 0..=2 {
            let sys = build_pade(3, 2, q).unwrap();
            let r = numeric_identity_check(&sys, 2, &rat(3, 2), 100_000);
            assert!(r <= 1e-8, "q={q} residual {r}");
        }
        let sys = build_pade(2, 3, 0).unwrap();
        let r = numeric_identity_check(&sys, 3, &rat(2, 1), 100_000);
        assert!(r <= 1e-8, "residual {r}");
    }

    #[test]
    fn remainder_decays_in_x() {
        // S = o(x^{-An+n+3-q}); the exponent is 0 for (n, A, q) = (3, 2, 0)
        let sys = build_pade(3, 2, 0).unwrap();
        let vals: Vec<f64> = [10.0, 20.0, 40.0].iter().map(|&x| s_value(&sys, 2, x, 20_000).norm()).collect();
        for w in vals.windows(2) {
            let slope = (w[1] / w[0]).log2();
            assert!(slope < -1.0, "slope {slope}");
        }
    }
}
