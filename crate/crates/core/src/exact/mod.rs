//! Exact scalar, polynomial, series and combinatorial arithmetic.

mod bipoly;
mod combinat;
mod cyclo;
mod laurent;
mod poly;
mod rational;
mod scalar;

pub use bipoly::BiPoly;
pub use combinat::{
    aritmu_check, bernoulli, binomial, euler_phi, factorial, is_prime, lcm_upto, mu,
    multiplicative_order, pochhammer, prime_divisors, primes_upto, AritmuReport,
};
pub use cyclo::{cyclo_field, cyclo_root, cyclotomic_poly, embed_complex, CycloElement, CycloField};
pub use laurent::LaurentTail;
pub use poly::{Degree, PolyX};
pub use rational::{int, parse_rational, rat, rational_to_f64, vp_int, vp_rational, Rational};
pub use scalar::Scalar;
