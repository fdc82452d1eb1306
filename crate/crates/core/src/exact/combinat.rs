use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::{int, Rational};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Incremental Akiyama–Tanigawa table. Step `m` leaves `B_m` (with the
/// `B_1 = +1/2` convention) in `row[0]`.
struct BernoulliTable {
    row: Vec<Rational>,
    values: Vec<Rational>,
}

impl BernoulliTable {
    fn extend_to(&mut self, m: usize) {
        while self.values.len() <= m {
            let k = self.values.len();
            self.row.push(Rational::new(BigInt::one(), BigInt::from(k + 1)));
            for j in (1..=k).rev() {
                let diff = &self.row[j - 1] - &self.row[j];
                self.row[j - 1] = diff * int(j as i64);
            }
            self.values.push(self.row[0].clone());
        }
    }
}

fn bernoulli_table() -> &'static Mutex<BernoulliTable> {
    static TABLE: OnceLock<Mutex<BernoulliTable>> = OnceLock::new();
    TABLE.get_or_init(|| {
        Mutex::new(BernoulliTable {
            row: Vec::new(),
            values: Vec::new(),
        })
    })
}

/// Bernoulli number `B_m` with `B_1 = -1/2`. Memoized and safe to call from
/// several threads.
pub fn bernoulli(m: usize) -> Rational {
    let mut table = bernoulli_table().lock().expect("bernoulli table poisoned");
    table.extend_to(m);
    let b = table.values[m].clone();
    if m == 1 {
        -b
    } else {
        b
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Generalised binomial coefficient `C(top, k)` for any integer `top`.
pub fn binomial(top: i64, k: u64) -> BigInt {
    let mut num = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(top - i as i64);
    }
    num / factorial(k)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_upto(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; n as usize + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n as usize {
        if sieve[i] {
            let mut j = i * i;
            while j <= n as usize {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &is_p)| is_p.then_some(k as u64))
        .collect()
}

/// Distinct prime divisors of `n`, increasing.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    prime_divisors(n)
        .into_iter()
        .fold(n, |acc, q| acc / q * (q - 1))
}

/// Order of `p` in `(Z/eZ)^*`; requires `gcd(p, e) = 1`.
pub fn multiplicative_order(p: u64, e: u64) -> Result<u64> {
    if e == 0 || p.gcd(&e) != 1 {
        return Err(Error::InvalidParameter(format!(
            "{p} is not invertible modulo {e}"
        )));
    }
    if e == 1 {
        return Ok(1);
    }
    let mut acc = p % e;
    let mut k = 1;
    while acc != 1 {
        acc = acc * p % e;
        k += 1;
    }
    Ok(k)
}

/// `d_n = lcm(1, ..., n)`, computed as the product of maximal prime powers.
pub fn lcm_upto(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for q in primes_upto(n) {
        let mut power = q;
        while power <= n / q {
            power *= q;
        }
        acc *= BigInt::from(power);
    }
    acc
}

/// `mu_n(b) = b^n * prod_{q | b} q^{floor(n / (q - 1))}`.
pub fn mu(b: u64, n: u64) -> BigInt {
    assert!(b >= 1, "mu requires b >= 1");
    let mut acc = num_traits::pow(BigInt::from(b), n as usize);
    for q in prime_divisors(b) {
        acc *= num_traits::pow(BigInt::from(q), (n / (q - 1)) as usize);
    }
    acc
}

/// Rising factorial `(t)_m = t (t + 1) ... (t + m - 1)`.
pub fn pochhammer<T: Scalar>(t: &T, m: u64) -> T {
    let mut acc = t.one_like();
    for j in 0..m {
        let shifted = t.add_ref(&t.constant_like(&int(j as i64)));
        acc = acc.mul_ref(&shifted);
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AritmuReport {
    /// `((a/b)_n / n!) mu_n(b)` is an integer.
    pub is_int1: bool,
    /// `((a/b)_{n+1} / (n! (a/b + k))) mu_n(b) d_n` is an integer.
    pub is_int2: bool,
}

/// Exact check of the two integrality statements for `x = a/b`.
pub fn aritmu_check(a: i64, b: u64, n: u64, k: u64) -> Result<AritmuReport> {
    if b == 0 {
        return Err(Error::InvalidParameter("b must be positive".into()));
    }
    if k > n {
        return Err(Error::InvalidParameter(format!("k = {k} outside [0, {n}]")));
    }
    if BigInt::from(a).gcd(&BigInt::from(b)) != BigInt::one() {
        return Err(Error::InvalidParameter(format!("gcd({a}, {b}) != 1")));
    }
    let x = Rational::new(BigInt::from(a), BigInt::from(b));
    let shifted = &x + int(k as i64);
    if shifted.is_zero() {
        return Err(Error::DivisionByZero(format!("a/b + k = 0 for a={a}, b={b}, k={k}")));
    }
    let nfact = Rational::from_integer(factorial(n));
    let mu_n = Rational::from_integer(mu(b, n));
    let first = pochhammer(&x, n) / &nfact * &mu_n;
    let second = pochhammer(&x, n + 1) / (&nfact * &shifted) * &mu_n
        * Rational::from_integer(lcm_upto(n));
    Ok(AritmuReport {
        is_int1: first.is_integer(),
        is_int2: second.is_integer(),
    })
}
