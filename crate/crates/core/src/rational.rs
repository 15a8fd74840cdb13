//! Exact rational scalars.
//!
//! Every quantity in the crate (segment lengths, discovered lengths, costs
//! and ratios) is a [`Rational`]. Values are always kept in lowest terms with
//! a positive denominator, so structural equality is numeric equality.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `num / den` as an exact rational. Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// `2^exp`, with negative exponents allowed.
pub fn pow2(exp: i64) -> Rational {
    let mag = BigInt::one() << exp.unsigned_abs();
    if exp >= 0 {
        Rational::from_integer(mag)
    } else {
        Rational::new(BigInt::one(), mag)
    }
}

pub fn pow(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

/// Exact division; a zero divisor is reported instead of panicking.
pub fn checked_div(num: &Rational, den: &Rational) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::InvalidParameter("division by zero".into()));
    }
    Ok(num / den)
}

/// Parses `p/q` or `p` (surrounding whitespace allowed).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("`{text}` is not a rational of the form p/q"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("`{text}` has a zero denominator")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical `p/q` rendering (`p` when the denominator is 1).
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Decimal rendering with `digits` significant digits, `%g` style: trailing
/// zeros are trimmed and scientific notation is used for very small or very
/// large magnitudes. Rounding is half away from zero and exact.
pub fn to_decimal(value: &Rational, digits: usize) -> String {
    assert!(digits >= 1);
    if value.is_zero() {
        return "0".to_string();
    }
    let negative = value.is_negative();
    let abs = value.abs();

    // exponent = floor(log10(abs))
    let ten = Rational::from_integer(BigInt::from(10));
    let mut exponent: i64 = 0;
    let mut scale = Rational::one();
    if abs >= Rational::one() {
        while abs >= &scale * &ten {
            scale *= &ten;
            exponent += 1;
        }
    } else {
        while abs < scale {
            scale /= &ten;
            exponent -= 1;
        }
    }

    let shift = digits as i64 - 1 - exponent;
    let scaled = &abs * pow10(shift);
    let mut mantissa = round_half_away(&scaled);
    let limit = BigInt::from(10).pow(digits as u32);
    if mantissa >= limit {
        mantissa /= 10;
        exponent += 1;
    }

    let raw = mantissa.to_string();
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if exponent < -4 || exponent >= digits as i64 {
        let (head, tail) = raw.split_at(1);
        let tail = tail.trim_end_matches('0');
        out.push_str(head);
        if !tail.is_empty() {
            out.push('.');
            out.push_str(tail);
        }
        out.push_str(&format!(
            "e{}{:02}",
            if exponent < 0 { '-' } else { '+' },
            exponent.abs()
        ));
    } else if exponent >= 0 {
        let split = exponent as usize + 1;
        let (int_part, frac) = raw.split_at(split);
        out.push_str(int_part);
        let frac = frac.trim_end_matches('0');
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
    } else {
        out.push_str("0.");
        out.push_str(&"0".repeat((-exponent - 1) as usize));
        out.push_str(raw.trim_end_matches('0'));
    }
    out
}

fn pow10(exp: i64) -> Rational {
    let mag = Rational::from_integer(BigInt::from(10).pow(exp.unsigned_abs() as u32));
    if exp >= 0 {
        mag
    } else {
        mag.recip()
    }
}

fn round_half_away(value: &Rational) -> BigInt {
    let (quot, rem) = value.numer().div_rem(value.denom());
    let twice: BigInt = rem * 2;
    match twice.abs().cmp(value.denom()) {
        Ordering::Less => quot,
        _ if value.is_negative() => quot - 1,
        _ => quot + 1,
    }
}
