use std::fmt;

use rug::{Float, Integer, Rational};

/// A numeric token that is neither `p/q`, an integer, nor a decimal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseNumberError(pub String);

impl fmt::Display for ParseNumberError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid number `{}`", self.0)
    }
}

impl std::error::Error for ParseNumberError {}

/// Parses `p/q`, `p`, or a decimal such as `-1.25e-3` into an exact rational.
///
/// Decimal literals are converted without rounding: `0.711` is `711/1000`.
pub fn parse_rational(token: &str) -> Result<Rational, ParseNumberError> {
    let err = || ParseNumberError(token.to_string());
    let t = token.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((p, q)) = t.split_once('/') {
        let num: Integer = p.parse().map_err(|_| err())?;
        let den: Integer = q.parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(Rational::from((num, den)));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => {
            let e: i64 = t[pos + 1..].parse().map_err(|_| err())?;
            (&t[..pos], e)
        }
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    if exponent.unsigned_abs() > 100_000 {
        return Err(err());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from(all_digits.parse::<Integer>().map_err(|_| err())?);
    let scale = exponent - frac_part.len() as i64;
    let power = Integer::from(Integer::u_pow_u(10, scale.unsigned_abs() as u32));
    if scale >= 0 {
        value *= power;
    } else {
        value /= power;
    }
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Renders `x` in scientific notation `±d.ddde±xx` with `digits`
/// significant digits, correctly rounded.
pub fn format_float(x: &Float, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x.is_sign_negative() { "-inf" } else { "inf" }.into();
    }
    let digits = digits.max(1);
    if x.is_zero() {
        let zeros = "0".repeat(digits - 1);
        return if digits > 1 {
            format!("0.{zeros}e+00")
        } else {
            "0e+00".into()
        };
    }
    let (negative, mantissa, exp) = x.to_sign_string_exp(10, Some(digits));
    // mantissa is 0.ddd × 10^exp
    let exp = exp.unwrap_or(0) - 1;
    let sign = if negative { "-" } else { "" };
    let (lead, rest) = mantissa.split_at(1);
    let esign = if exp < 0 { '-' } else { '+' };
    if rest.is_empty() {
        format!("{sign}{lead}e{esign}{:02}", exp.abs())
    } else {
        format!("{sign}{lead}.{rest}e{esign}{:02}", exp.abs())
    }
}
