//! Number formatting shared by the exporters.

use serde::Serializer;
use serde_json::value::RawValue;

/// Scientific notation with 17 significant digits, which round-trips every
/// finite `f64`. Non-finite values print as `NaN`, `inf`, `-inf`.
pub fn sig17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

/// `serialize_with` helper writing a JSON number with 17 significant digits.
pub(crate) fn json_sig17<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if !x.is_finite() {
        return s.serialize_none();
    }
    let raw = RawValue::from_string(sig17(*x)).map_err(serde::ser::Error::custom)?;
    serde::Serialize::serialize(&raw, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig17_round_trips() {
        for x in [
            0.1,
            1.0 / 3.0,
            std::f64::consts::E,
            1e-300,
            -2.5e17,
            f64::MIN_POSITIVE,
        ] {
            let s = sig17(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let mantissa = s.split('e').next().unwrap().trim_start_matches('-');
            assert_eq!(mantissa.chars().filter(|c| c.is_ascii_digit()).count(), 17);
        }
    }

    #[test]
    fn json_numbers_use_sig17() {
        #[derive(serde::Serialize)]
        struct Row {
            #[serde(serialize_with = "json_sig17")]
            v: f64,
        }
        let json = serde_json::to_string(&Row { v: 0.5 }).unwrap();
        assert_eq!(json, r#"{"v":5.0000000000000000e-1}"#);
        let back: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(back["v"].as_f64(), Some(0.5));
    }
}
