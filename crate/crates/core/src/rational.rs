//! Exact rational helpers.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"3"`, `"-1/4"`, `"2.375"` or `"1e-3"` exactly, without going through floats.
pub fn parse(text: &str) -> Result<Rational> {
    let bad = || Error::BadRational(text.to_string());
    let s = text.trim();
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, fractional) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && fractional.is_empty() {
        return Err(bad());
    }
    if !whole
        .chars()
        .chain(fractional.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let combined = format!("{whole}{fractional}");
    let numer: BigInt = if combined.is_empty() {
        BigInt::zero()
    } else {
        combined.parse().map_err(|_| bad())?
    };
    let scale = exponent - fractional.len() as i32;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(numer);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Largest multiple of `2^-bits` that does not exceed `value` (for nonnegative inputs).
pub fn floor_dyadic(value: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = (value * Rational::from_integer(scale.clone())).floor();
    scaled / Rational::from_integer(scale)
}

pub fn sum<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values.into_iter().fold(Rational::zero(), |acc, v| acc + v)
}

pub fn max_abs<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Rational {
    values
        .into_iter()
        .map(|v| v.abs())
        .fold(Rational::zero(), |acc, v| if v > acc { v } else { acc })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimal_and_fraction_forms() {
        assert_eq!(parse("3").unwrap(), int(3));
        assert_eq!(parse("-1/4").unwrap(), frac(-1, 4));
        assert_eq!(parse("2.375").unwrap(), frac(19, 8));
        assert_eq!(parse(".5").unwrap(), frac(1, 2));
        assert_eq!(parse("1e-3").unwrap(), frac(1, 1000));
        assert_eq!(parse("0.1").unwrap(), frac(1, 10));
        assert_eq!(parse("6/4").unwrap(), frac(3, 2));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "1/0", "abc", "1.2.3", "--1", ".", "1/x"] {
            assert!(parse(s).is_err(), "{s}");
        }
    }

    #[test]
    fn format_is_canonical() {
        assert_eq!(format(&frac(6, 4)), "3/2");
        assert_eq!(format(&int(-7)), "-7");
        assert_eq!(parse(&format(&frac(-5, 12))).unwrap(), frac(-5, 12));
    }

    #[test]
    fn dyadic_floor() {
        assert_eq!(floor_dyadic(&frac(1, 3), 2), frac(1, 4));
        assert_eq!(floor_dyadic(&frac(3, 4), 2), frac(3, 4));
    }
}
