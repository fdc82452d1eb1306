//! Exact Padé approximants of Lerch functions, p-adic Hurwitz zeta values,
//! and machine-checked certificates for the linear forms built from them.
//!
//! The crate is organised bottom-up:
//!
//! * [`exact`]: rationals, cyclotomic fields, polynomials, truncated Laurent
//!   series and the combinatorial normalisers (`d_n`, `mu_n(b)`, Bernoulli).
//! * [`padic`]: precision-tracked p-adic numbers, unramified extensions
//!   containing the `e`-th roots of unity, and the p-adic Hurwitz zeta family.
//! * [`pade`]: the simultaneous Padé systems `P_s^{(q)}(x, z)` and their
//!   remainder series.
//! * [`certify`]: determinant, integrality, growth and dimension certificates.

pub mod certify;
pub mod error;
pub mod exact;
pub mod pade;
pub mod padic;

pub use error::{Error, Result};
