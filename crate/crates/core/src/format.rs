//! Deterministic float rendering for reports.

use serde::Serialize;
use serde_json::Value;

use crate::error::Result;

/// Magnitudes below this print as zero: eigensolver round-off on exact zeros.
pub const ZERO_SNAP: f64 = 1e-12;

/// Rounds to 12 significant digits. Negative zero becomes zero.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let y: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if y == 0.0 {
        0.0
    } else {
        y
    }
}

/// `round12`, with magnitudes below [`ZERO_SNAP`] mapped to zero.
pub fn tidy(x: f64) -> f64 {
    if x.abs() < ZERO_SNAP {
        0.0
    } else {
        round12(x)
    }
}

/// Shortest round-trip text of `tidy(x)`, in exponent form outside
/// `[1e-4, 1e15)`.
pub fn sig12(x: f64) -> String {
    let y = tidy(x);
    if y != 0.0 && y.is_finite() && !(1e-4..1e15).contains(&y.abs()) {
        format!("{y:e}")
    } else {
        format!("{y}")
    }
}

/// Applies [`tidy`] to every float in `v`.
pub fn tidy_json(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n
                .as_f64()
                .and_then(|x| serde_json::Number::from_f64(tidy(x)))
            {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(tidy_json),
        Value::Object(map) => map.values_mut().for_each(tidy_json),
        _ => {}
    }
}

/// Pretty JSON with sorted keys and tidied floats.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value)?;
    tidy_json(&mut v);
    Ok(serde_json::to_string_pretty(&v)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_floats_tidied() {
        let mut v = serde_json::json!({ "b": [1.0 / 3.0, 2], "a": -0.0, "c": 1e-15 });
        tidy_json(&mut v);
        assert_eq!(v.to_string(), r#"{"a":0.0,"b":[0.333333333333,2],"c":0.0}"#);
    }

    #[test]
    fn rounding() {
        assert_eq!(sig12(2.0), "2");
        assert_eq!(sig12(19.0 / 6.0), "3.16666666667");
        assert_eq!(sig12(-0.0), "0");
        assert_eq!(sig12(1.0 - 1e-15), "1");
        assert_eq!(sig12(4.47213595499958), "4.472135955");
        assert_eq!(round12(1.23456789012345e30), 1.23456789012e30);
    }

    #[test]
    fn snapping_and_exponents() {
        assert_eq!(sig12(2.6e-17), "0");
        assert_eq!(sig12(-3e-13), "0");
        assert_eq!(sig12(3.5e-9), "3.5e-9");
        assert_eq!(sig12(1.5e20), "1.5e20");
        assert_eq!(sig12(0.001), "0.001");
        assert_eq!(tidy(-1e-13), 0.0);
    }
}
