//! Precision-tracked p-adic arithmetic, the Teichmüller character, `log_p`,
//! the p-adic Hurwitz zeta function and its twisted sums over `e`-th roots of
//! unity.

mod ext;
mod fp;
mod functions;
mod number;
mod twisted;
mod zeta;

pub use ext::{unramified_extension, ExtModulus, PAdicExt, PAdicExtJson};
pub use functions::{angle, angle_power, is_root_of_unity_unit, log_p, teichmuller};
pub use number::{PAdic, PAdicJson, PrecisionContext};
pub use twisted::{t_p, t_p_series, theta_coeff, theta_series, ttilde_p};
pub use zeta::{bernoulli_cutoff, zeta_p, zeta_p_any, zeta_p_negative, zeta_p_one};
