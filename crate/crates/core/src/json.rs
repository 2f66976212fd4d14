use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serializer;

/// Integers that fit in `i64` become JSON numbers; larger ones become decimal
/// strings so nothing is silently truncated.
pub(crate) fn bigint_value(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::String(n.to_string()),
    }
}

pub(crate) fn serialize_bigints<S: Serializer>(values: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(values.len()))?;
    for v in values {
        seq.serialize_element(&bigint_value(v))?;
    }
    seq.end()
}
