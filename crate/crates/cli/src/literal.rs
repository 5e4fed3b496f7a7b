//! The complex literal grammar used on the command line: "a+bi", "a-bi",
//! "a", or "bi" with plain decimal (or exponent-form) reals. No locale
//! handling: the decimal separator is always '.'.

use bessel_struve::{Error, Result};
use num_complex::Complex64;

/// Parses a complex literal. The imaginary unit is a trailing lowercase
/// 'i'; a bare "i" is rejected (write "1i"). Non-finite components are
/// rejected.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Input("empty complex literal".into()));
    }
    match s.strip_suffix('i') {
        None => Ok(Complex64::new(parse_real(s)?, 0.0)),
        Some(body) => {
            if body.is_empty() || body == "+" || body == "-" {
                return Err(Error::Input(format!(
                    "bare imaginary unit in {s:?}: write the coefficient explicitly, e.g. \"1i\""
                )));
            }
            match split_index(body) {
                None => Ok(Complex64::new(0.0, parse_real(body)?)),
                Some(idx) => Ok(Complex64::new(
                    parse_real(&body[..idx])?,
                    parse_real(&body[idx..])?,
                )),
            }
        }
    }
}

/// Index of the sign separating real and imaginary parts: the first '+' or
/// '-' that is neither leading nor part of an exponent.
fn split_index(s: &str) -> Option<usize> {
    let bytes = s.as_bytes();
    (1..bytes.len())
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'))
}

fn parse_real(s: &str) -> Result<f64> {
    let value: f64 = s
        .parse()
        .map_err(|_| Error::Input(format!("invalid real component {s:?} in complex literal")))?;
    if !value.is_finite() {
        return Err(Error::Input(format!(
            "complex literal component {s:?} is not finite"
        )));
    }
    Ok(value)
}

/// Formats a complex value in the same grammar, using the shortest decimal
/// form that parses back to the identical f64 pair.
pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else if z.im.is_sign_negative() {
        format!("{}{}i", z.re, z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}
