//! Fixed-precision number formatting shared by every file writer.

/// Significant digits used in `.pqc`, JSON and CSV output.
pub const FILE_DIGITS: usize = 12;

/// Formats `x` in plain decimal notation with `digits` significant digits.
///
/// ```
/// use photonchip::format::fixed_sig;
/// assert_eq!(fixed_sig(1.0 / 3.0, 12), "0.333333333333");
/// assert_eq!(fixed_sig(0.5, 12), "0.500000000000");
/// assert_eq!(fixed_sig(-1.5, 4), "-1.500");
/// ```
pub fn fixed_sig(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let digits = digits.max(1);
    if x == 0.0 {
        return format!("{:.*}", digits - 1, 0.0);
    }
    // Round first so that e.g. 9.9999999999996 moves to the next decade.
    let rounded = round_sig(x, digits);
    let exponent = rounded.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - exponent).max(0) as usize;
    let s = format!("{:.*}", decimals, rounded);
    if s.starts_with("-") && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Rounds `x` to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits.max(1) - 1, x)
        .parse()
        .unwrap_or(x)
}

/// `serde` helpers that round floats to [`FILE_DIGITS`] significant digits on write.
pub mod sig12 {
    use serde::Serializer;

    use super::{round_sig, FILE_DIGITS};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(round_sig(*x, FILE_DIGITS))
    }

    /// Any [`Real`](crate::Real) scalar.
    pub fn real<T: crate::Real, S: Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
        serialize(&x.as_f64(), s)
    }

    pub fn real_opt<T: crate::Real, S: Serializer>(x: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => real(x, s),
            None => s.serialize_none(),
        }
    }

    pub mod vec {
        use serde::ser::SerializeSeq;
        use serde::Serializer;

        use super::super::{round_sig, FILE_DIGITS};

        pub fn serialize<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(xs.len()))?;
            for x in xs {
                seq.serialize_element(&round_sig(*x, FILE_DIGITS))?;
            }
            seq.end()
        }
    }

    pub mod matrix {
        use serde::ser::SerializeSeq;
        use serde::Serializer;

        use super::super::{round_sig, FILE_DIGITS};

        pub fn serialize<S: Serializer>(rows: &[Vec<f64>], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(rows.len()))?;
            for row in rows {
                let r: Vec<f64> = row.iter().map(|x| round_sig(*x, FILE_DIGITS)).collect();
                seq.serialize_element(&r)?;
            }
            seq.end()
        }
    }
}
