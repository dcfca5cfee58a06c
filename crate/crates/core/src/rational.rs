//! Exact rational weights and their textual form.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

/// Exact rational number used for all edge weights and factor weights.
pub type Rational = num_rational::BigRational;

/// Parses a weight written either as a fraction `p/q` or as a decimal
/// (`-3`, `0.25`, `1.5e2` is rejected: no exponents).
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty weight".to_string());
    }
    if let Some((num, den)) = s.split_once('/') {
        let p = BigInt::from_str(num.trim()).map_err(|e| format!("bad numerator {num:?}: {e}"))?;
        let q = BigInt::from_str(den.trim()).map_err(|e| format!("bad denominator {den:?}: {e}"))?;
        if q.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(format!("bad decimal {s:?}"));
        }
        let negative = int_part.trim_start().starts_with('-');
        let int_part = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            format!("{int_part}0")
        } else {
            int_part.to_string()
        };
        let whole = BigInt::from_str(&int_part).map_err(|e| format!("bad decimal {s:?}: {e}"))?;
        let frac = BigInt::from_str(frac_part).map_err(|e| format!("bad decimal {s:?}: {e}"))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let numer = whole.abs() * &scale + frac;
        let numer = if negative { -numer } else { numer };
        return Ok(Rational::new(numer, scale));
    }
    let p = BigInt::from_str(s).map_err(|e| format!("bad weight {s:?}: {e}"))?;
    Ok(Rational::from_integer(p))
}

/// Canonical textual form: `p` when the denominator is 1, else `p/q` in
/// lowest terms with a positive denominator.
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Convenience constructor from an integer.
pub fn rational_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
