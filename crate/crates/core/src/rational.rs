//! Exact rational values and their decimal rendering.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Arbitrary-precision exact rational.
pub type Rational = BigRational;

/// `num / den` as an exact rational. Panics if `den == 0`.
pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn from_int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

/// Renders `r` with exactly `digits` places after the point, rounding half
/// away from zero.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = r.abs() * Rational::from_integer(scale.clone());
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let twice = rem * 2u32;
    let rounded = if &twice >= scaled.denom() { q + 1u32 } else { q };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let neg = r.is_negative() && !(int_part.is_zero() && frac_part.is_zero());
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if digits > 0 {
        let frac = frac_part.to_string();
        out.push('.');
        out.push_str(&"0".repeat(digits - frac.len()));
        out.push_str(&frac);
    }
    out
}

/// Renders `r` to `sig` significant figures (used for values like 1.58065).
pub fn to_significant(r: &Rational, sig: usize) -> String {
    if r.is_zero() {
        return to_decimal(r, sig.saturating_sub(1));
    }
    let int_digits = r.abs().to_integer().to_string().len();
    let int_is_zero = r.abs().to_integer().sign() == Sign::NoSign;
    if int_is_zero {
        // count leading zeros after the point
        let mut probe = r.abs();
        let mut lead = 0;
        while probe < ratio(1, 10) {
            probe *= from_int(10);
            lead += 1;
        }
        to_decimal(r, lead + sig)
    } else {
        to_decimal(r, sig.saturating_sub(int_digits))
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
