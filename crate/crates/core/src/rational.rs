//! Exact rational helpers shared by the CLI-facing parameters (`μ`, `θ`,
//! power-law exponents).

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Parses `"3"`, `"0.02"` or `"1/50"` into an exact non-negative rational.
pub fn parse_ratio(s: &str) -> Result<Ratio<u64>> {
    let bad = || Error::InvalidArgument(format!("`{s}` is not a non-negative rational"));
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: u64 = num.trim().parse().map_err(|_| bad())?;
        let den: u64 = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(num, den));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if (int.is_empty() && frac.is_empty())
        || !int.chars().all(|c| c.is_ascii_digit())
        || !frac.chars().all(|c| c.is_ascii_digit())
        || frac.len() > 18
    {
        return Err(bad());
    }
    let den = 10u64.pow(frac.len() as u32);
    let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
    let frac_v: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
    let num = int
        .checked_mul(den)
        .and_then(|v| v.checked_add(frac_v))
        .ok_or_else(bad)?;
    Ok(Ratio::new(num, den))
}

pub fn ratio_to_f64(r: &Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn big_ratio(r: &Ratio<u64>) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Float value of a big rational; stays finite for values far below `f64`
/// range by scaling through the bit lengths.
pub fn big_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    if let Some(v) = r.to_f64() {
        if v != 0.0 && v.is_finite() {
            return v;
        }
    }
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = nb - db;
    let (num, den) = if shift > 0 {
        (r.numer().clone(), r.denom() << (shift as u64))
    } else {
        (r.numer() << ((-shift) as u64), r.denom().clone())
    };
    let mantissa = BigRational::new(num, den).to_f64().unwrap_or(f64::NAN);
    mantissa * 2f64.powi(shift.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_and_fractions() {
        assert_eq!(parse_ratio("0.02").unwrap(), Ratio::new(1, 50));
        assert_eq!(parse_ratio("1/3").unwrap(), Ratio::new(1, 3));
        assert_eq!(parse_ratio("3").unwrap(), Ratio::from_integer(3));
        assert_eq!(parse_ratio(".5").unwrap(), Ratio::new(1, 2));
        for bad in ["", "-1", "1/0", "a", "1.2.3", "."] {
            assert!(parse_ratio(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn tiny_big_rationals_convert() {
        let r = BigRational::new(BigInt::from(3), BigInt::from(1) << 2000u64);
        let v = big_to_f64(&r);
        assert_eq!(v, 0.0); // below f64 range, underflows cleanly
        let r = BigRational::new(BigInt::from(1) << 1000u64, (BigInt::from(1) << 1001u64) * 3);
        assert!((big_to_f64(&r) - 1.0 / 6.0).abs() < 1e-15);
    }
}
