//! JSON helpers shared by the report types.

use std::fmt::Display;
use std::str::FromStr;

use num_rational::BigRational;
use serde_json::{Number, Value};

/// An exact integer as a JSON number, however large.
pub fn int(x: impl Display) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integers render as JSON numbers"))
}

/// An exact rational as `"num/den"` in lowest terms.
pub fn fraction(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}
