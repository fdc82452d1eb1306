use serde::ser::SerializeStruct;
use serde::Serializer;

use crate::exact::Rational;

/// Schema tag carried by every serialized certificate.
pub const CERTIFICATE_SCHEMA: &str = "padelin-cert/1";

/// A rational as `{numerator, denominator}` decimal strings.
pub fn rational_pair<S: Serializer>(r: &Rational, ser: S) -> Result<S::Ok, S::Error> {
    let mut st = ser.serialize_struct("Rational", 2)?;
    st.serialize_field("numerator", &r.numer().to_string())?;
    st.serialize_field("denominator", &r.denom().to_string())?;
    st.end()
}

pub fn bigint_string<S: Serializer>(n: &num_bigint::BigInt, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(&n.to_string())
}
