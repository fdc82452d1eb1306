//! Machine-checked certificates: determinant factorisation, integrality,
//! archimedean growth, p-adic smallness and the resulting dimension bounds.

mod bounds;
mod determinant;
mod integrality;
mod linear_form;
mod report;

pub use bounds::{
    archimedean_slope, c_bound, dimension_bound, theorem2_bound, theorem2_root, theorem2_scan,
    BoundReport, BoundVariant, Evidence, ScanReport, ScanRow, SlopePoint, SlopeReport,
};
pub use determinant::{bareiss_det, certify_matrix, cofactor_det, determinant_certificate, pade_matrix, DeterminantCertificate};
pub use integrality::{integrality_audit, IntegralityReport};
pub use linear_form::{
    coefficient_bound_violations, coefficient_floor, decay_floor, linear_form, linear_form_from_series,
    linear_form_with_ceiling, precision_ceiling, LinearFormJson, LinearFormValue, Normalizers,
    PRECISION_CEILING_VAR,
};
pub use report::{rational_pair, CERTIFICATE_SCHEMA};
