//! Output plumbing: significant-digit rendering, exact-rational fields,
//! and the format/destination settings shared by all commands.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Serialization format for command output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Where and how a command writes its result.
#[derive(Debug, Clone)]
pub struct OutputSpec {
    pub format: Format,
    /// None writes to standard output.
    pub destination: Option<PathBuf>,
    /// Significant digits for numeric fields.
    pub precision: usize,
}

impl OutputSpec {
    pub fn new(format: Format, destination: Option<PathBuf>, precision: usize) -> Result<Self> {
        if !(3..=17).contains(&precision) {
            return Err(Error::InvalidArgument(format!(
                "precision must lie in 3..=17, got {precision}"
            )));
        }
        Ok(Self {
            format,
            destination,
            precision,
        })
    }

    pub fn writer(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.destination {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(std::io::stdout().lock()),
        })
    }
}

/// Renders x with the given number of significant digits, positional when
/// the exponent allows it and scientific otherwise. Trailing zeros are
/// kept so columns stay aligned and diffable.
pub fn format_significant(x: f64, sig: usize) -> String {
    assert!((1..=17).contains(&sig));
    if x == 0.0 {
        return format!("{:.*}", sig - 1, 0.0);
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", sig - 1, x);
    let (_, exp_str) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp_str.parse().expect("exponent is an integer");
    if exp < -4 || exp >= sig as i32 {
        sci
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        format!("{:.*}", decimals, x)
    }
}

/// Decimal rendering of an exact rational at the given precision.
pub fn rational_decimal(r: &BigRational, sig: usize) -> String {
    format_significant(r.to_f64().unwrap_or(f64::NAN), sig)
}

/// JSON value for an exact rational: rounded decimal plus the exact
/// numerator/denominator strings.
pub fn rational_json(r: &BigRational, sig: usize) -> Value {
    json!({
        "decimal": f64_json(r.to_f64().unwrap_or(f64::NAN), sig),
        "numerator": r.numer().to_string(),
        "denominator": r.denom().to_string(),
    })
}

/// Pretty-printed JSON text; serializing a [`Value`] cannot fail.
pub fn to_json_string(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("a Value always serializes")
}

/// JSON number rounded to the given significant digits (null for NaN).
pub fn f64_json(x: f64, sig: usize) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format_significant(x, sig)
        .parse()
        .expect("formatted float parses back");
    serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}
