//! Text encodings with 17 significant digits, enough to round-trip any `f64`.

use std::str::FromStr;

use serde::Serialize;
use serde_json::{Number, Value};

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn rewrite_floats(value: &mut Value) {
    match value {
        Value::Number(n) if !(n.is_u64() || n.is_i64()) => {
            if let Some(x) = n.as_f64() {
                if let Ok(exact) = Number::from_str(&fmt_f64(x)) {
                    *n = exact;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(rewrite_floats),
        Value::Object(map) => map.values_mut().for_each(rewrite_floats),
        _ => {}
    }
}

/// Pretty JSON with every float written in 17-digit scientific form.
pub fn to_json_string<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut v = serde_json::to_value(value)?;
    rewrite_floats(&mut v);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}
