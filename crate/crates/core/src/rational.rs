//! Exact rational scalars: parsing, formatting and correctly rounded
//! decimal rendering.
//!
//! `Rational` is the base scalar of the whole crate; everything that has
//! to be exact (signs, orderings, matrix entries, polygon predicates)
//! bottoms out here.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

/// Arbitrary-precision signed rational in canonical (reduced) form.
pub type Rational = BigRational;

/// Shorthand for small integer rationals.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"n"`, `"n/d"` or scientific shorthand `"1e-30"` (integer
/// mantissa only) into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational literal".into());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|e| format!("bad numerator {num:?}: {e}"))?;
        let d = BigInt::from_str(den.trim()).map_err(|e| format!("bad denominator {den:?}: {e}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((mant, exp)) = s.split_once(['e', 'E']) {
        let m = BigInt::from_str(mant.trim()).map_err(|e| format!("bad mantissa {mant:?}: {e}"))?;
        let e: i32 = exp
            .trim()
            .parse()
            .map_err(|e| format!("bad exponent {exp:?}: {e}"))?;
        let ten = BigInt::from(10);
        let pow = ten.pow(e.unsigned_abs());
        return Ok(if e >= 0 {
            Rational::from_integer(m * pow)
        } else {
            Rational::new(m, pow)
        });
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let digits = frac_part.trim();
        if digits.chars().all(|c| c.is_ascii_digit()) && !digits.is_empty() {
            let scale = BigInt::from(10).pow(digits.len() as u32);
            let whole =
                BigInt::from_str(int_part.trim()).map_err(|e| format!("bad decimal {s:?}: {e}"))?;
            let frac = BigInt::from_str(digits).map_err(|e| format!("bad decimal {s:?}: {e}"))?;
            let sign = if s.trim_start().starts_with('-') {
                -BigInt::one()
            } else {
                BigInt::one()
            };
            return Ok(Rational::new(whole * &scale + sign * frac, scale));
        }
        return Err(format!("bad decimal literal {s:?}"));
    }
    BigInt::from_str(s)
        .map(Rational::from_integer)
        .map_err(|e| format!("bad integer {s:?}: {e}"))
}

/// Canonical display form: `"n"` for integers, `"n/d"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `10^-places` as a rational.
pub fn pow10_neg(places: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10).pow(places))
}

/// Renders `r` as a decimal string with exactly `places` fractional
/// digits, rounded to nearest (ties away from zero). The rounding is
/// exact: no floating point is involved.
pub fn decimal_string(r: &Rational, places: u32) -> String {
    let scale = BigInt::from(10).pow(places);
    // round(r * 10^places) with ties away from zero
    let scaled = r * Rational::from_integer(scale.clone());
    let (num, den) = (scaled.numer().clone(), scaled.denom().clone());
    let (q, rem) = num.abs().div_rem(&den);
    let rounded_abs = if BigInt::from(2) * rem >= den { q + 1 } else { q };
    let neg = num.is_negative() && !rounded_abs.is_zero();
    let (int_part, frac_part) = rounded_abs.div_rem(&scale);
    let sign = if neg { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        let frac = frac_part.to_string();
        let pad = places as usize - frac.len();
        format!("{sign}{int_part}.{}{frac}", "0".repeat(pad))
    }
}

/// Floor of a rational as a `BigInt`.
pub fn rational_floor(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

/// Smallest rational `a/b` representation of an upper bound for the real
/// `v^(1/p)` given a nonnegative rational `v`: returns `u` with
/// `u^p >= v`. Used to turn Graeffe-iterated root bounds back into
/// first-power bounds.
pub fn nth_root_upper(v: &Rational, p: u32) -> Rational {
    assert!(!v.is_negative(), "nth_root_upper needs v >= 0");
    if v.is_zero() {
        return Rational::zero();
    }
    // integer nth root (ceiling) of ceil(v * 2^(p*k)) scaled back gives a
    // dyadic upper bound; k controls tightness.
    let k: u32 = 16;
    let scale = BigInt::one() << (p * k);
    let scaled = (v * Rational::from_integer(scale)).ceil().to_integer();
    let root = integer_nth_root_ceil(&scaled, p);
    Rational::new(root, BigInt::one() << k)
}

fn integer_nth_root_ceil(v: &BigInt, p: u32) -> BigInt {
    assert!(!v.is_negative());
    if v.is_zero() {
        return BigInt::zero();
    }
    let bits = v.bits();
    let mut hi = BigInt::one() << (bits / u64::from(p) + 2);
    let mut lo = BigInt::zero();
    // binary search for smallest r with r^p >= v
    while &lo + 1 < hi {
        let mid: BigInt = (&lo + &hi) / 2;
        if mid.pow(p) >= *v {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}
