//! Dense polynomials over `F_p` (small `p`), low degree first, always trimmed.

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub(crate) type FpPoly = Vec<u64>;

fn trim(mut a: FpPoly) -> FpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * a as u128) % p as u128) as u64;
        }
        a = ((a as u128 * a as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

pub(crate) fn from_signed(coeffs: impl IntoIterator<Item = i128>, p: u64) -> FpPoly {
    trim(
        coeffs
            .into_iter()
            .map(|c| c.rem_euclid(p as i128) as u64)
            .collect(),
    )
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

pub(crate) fn add(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u128 * y as u128) % p as u128;
        }
    }
    trim(out.into_iter().map(|c| c as u64).collect())
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn div_rem(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = inv_mod(*b.last().expect("nonzero"), p);
    let mut q = vec![0u64; r.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let c = (r[i + b.len() - 1] as u128 * lead_inv as u128 % p as u128) as u64;
        q[i] = c;
        if c == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            let t = (c as u128 * bj as u128 % p as u128) as u64;
            r[i + j] = (r[i + j] + p - t) % p;
        }
    }
    r.truncate(b.len() - 1);
    (trim(q), trim(r))
}

pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    div_rem(a, b, p).1
}

pub(crate) fn monic(a: &[u64], p: u64) -> FpPoly {
    let a = trim(a.to_vec());
    let Some(&lead) = a.last() else {
        return a;
    };
    let inv = inv_mod(lead, p);
    a.iter().map(|&c| (c as u128 * inv as u128 % p as u128) as u64).collect()
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// `(s, t)` with `s a + t b = 1`, for coprime `a`, `b`.
pub(crate) fn bezout(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    assert_eq!(r0.len(), 1, "bezout called on non-coprime polynomials");
    let inv = inv_mod(r0[0], p);
    let scale = |v: &[u64]| trim(v.iter().map(|&c| (c as u128 * inv as u128 % p as u128) as u64).collect());
    (scale(&s0), scale(&t0))
}

fn pow_mod_poly(base: &[u64], exp: &BigUint, modulus: &[u64], p: u64) -> FpPoly {
    let mut acc = vec![1u64];
    let mut sq = rem(base, modulus, p);
    for i in 0..exp.bits() {
        if exp.bit(i) {
            acc = rem(&mul(&acc, &sq, p), modulus, p);
        }
        sq = rem(&mul(&sq, &sq, p), modulus, p);
    }
    acc
}

/// Splits a squarefree product of monic irreducibles of common degree `f`
/// (Cantor–Zassenhaus). Factors are returned sorted, so the result does not
/// depend on the random choices.
pub(crate) fn equal_degree_factors(poly: &[u64], f: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let poly = monic(poly, p);
    let deg = poly.len() - 1;
    if deg == f {
        return vec![poly];
    }
    loop {
        let a: FpPoly = trim((0..deg).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = if p == 2 {
            // absolute trace F_{2^f} -> F_2
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..f {
                t = rem(&mul(&t, &t, p), &poly, p);
                acc = add(&acc, &t, p);
            }
            acc
        } else {
            let q = BigUint::from(p).pow(f as u32);
            let e = (q - 1u32) / 2u32;
            sub(&pow_mod_poly(&a, &e, &poly, p), &[1], p)
        };
        let d = gcd(&poly, &b, p);
        let dd = d.len().saturating_sub(1);
        if dd > 0 && dd < deg {
            let (other, r) = div_rem(&poly, &d, p);
            debug_assert!(r.is_empty());
            let mut out = equal_degree_factors(&d, f, p, rng);
            out.extend(equal_degree_factors(&other, f, p, rng));
            out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.iter().rev().cmp(y.iter().rev())));
            return out;
        }
    }
}
