//! Serialization helpers: exact numbers travel as strings.

use num_rational::BigRational;
use serde::Serializer;

pub fn ratio<S: Serializer>(value: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_string())
}
