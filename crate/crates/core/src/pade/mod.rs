//! Simultaneous Padé systems for twisted Hurwitz zeta values.

mod numeric;
mod remainder;
mod system;

pub use numeric::{eval_bipoly, lerch_value, numeric_identity_check, s_value};
pub use remainder::{at_root_of_unity, remainder_series, remainder_series_raw, vanishing_bound, RemainderSeries};
pub use system::{build_pade, residue_coeffs, PadeSystem, PadeSystemJson, PadeTerm};
