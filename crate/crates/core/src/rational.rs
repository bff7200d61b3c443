//! Exact rational scalars and their literal syntax.
//!
//! Literals are `p/q`, plain integers, or decimals with an optional exponent
//! (`0.125`, `2.5e-3`). Decimals are converted verbatim, so `0.1` is exactly
//! `1/10`. Floating-point values coming from spectral routines are turned into
//! rationals either exactly (their dyadic value) or through a continued
//! fraction with a relative tolerance.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses a rational literal. The `line` is only used for error reporting.
pub fn parse_rational_at(text: &str, line: usize) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::parse(line, "empty literal"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_decimal(num.trim())
            .ok_or_else(|| Error::parse(line, format!("invalid numerator in `{s}`")))?;
        let den = parse_decimal(den.trim())
            .ok_or_else(|| Error::parse(line, format!("invalid denominator in `{s}`")))?;
        if den.is_zero() {
            return Err(Error::parse(line, format!("zero denominator in `{s}`")));
        }
        return Ok(num / den);
    }
    parse_decimal(s).ok_or_else(|| Error::parse(line, format!("invalid rational literal `{s}`")))
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    parse_rational_at(text, 1)
}

const MAX_DECIMAL_EXPONENT: u32 = 4096;

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let all: String = format!("{whole}{frac}");
    let mut value = Rational::from_integer(all.parse::<BigInt>().ok()?);
    let scale = exponent.checked_sub(frac.len() as i32)?;
    if scale.unsigned_abs() > MAX_DECIMAL_EXPONENT {
        return None;
    }
    let ten = BigInt::from(10u32);
    if scale >= 0 {
        value *= Rational::from_integer(Pow::pow(&ten, scale as u32));
    } else {
        value /= Rational::from_integer(Pow::pow(&ten, (-scale) as u32));
    }
    Some(if negative { -value } else { value })
}

/// Canonical literal: `p/q` in lowest terms, or `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// The exact dyadic value of a finite float.
pub fn from_f64_exact(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Shortest continued-fraction convergent of a positive float within the
/// given relative tolerance.
pub fn rationalize(x: f64, rel_tol: &Rational) -> Option<Rational> {
    let exact = from_f64_exact(x)?;
    if !exact.is_positive() {
        return None;
    }
    let bound = &exact * rel_tol;
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut rest = exact.clone();
    loop {
        let a = rest.floor().to_integer();
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        let candidate = Rational::new(p2.clone(), q2.clone());
        let frac = &rest - Rational::from_integer(a);
        if (&candidate - &exact).abs() <= bound || frac.is_zero() {
            return Some(candidate);
        }
        rest = frac.recip();
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
}

/// Lower approximation of `value^(1/degree)` with relative error below
/// `rel_tol`. Returns the exact root when one exists.
pub fn nth_root(value: &Rational, degree: u32, rel_tol: &Rational) -> Rational {
    debug_assert!(value.is_positive() && degree > 0);
    if let Some(root) = exact_nth_root(value, degree) {
        return root;
    }
    let target = rel_tol.recip().ceil().to_integer();
    let mut bits = target.bits() as u32 + 8;
    loop {
        let scale = BigInt::one() << (bits as usize * degree as usize);
        let scaled = (value.numer() * scale).div_floor(value.denom());
        let root = scaled.nth_root(degree);
        if root >= target {
            return Rational::new(root, BigInt::one() << bits as usize);
        }
        bits *= 2;
    }
}

pub fn exact_nth_root(value: &Rational, degree: u32) -> Option<Rational> {
    let num = value.numer().to_biguint()?;
    let den = value.denom().to_biguint()?;
    let rn = num.nth_root(degree);
    let rd = den.nth_root(degree);
    if Pow::pow(&rn, degree) == num && Pow::pow(&rd, degree) == den {
        Some(Rational::new(
            BigInt::from_biguint(Sign::Plus, rn),
            BigInt::from_biguint(Sign::Plus, rd),
        ))
    } else {
        None
    }
}

pub fn pow(r: &Rational, exp: u32) -> Rational {
    Pow::pow(r, exp)
}
