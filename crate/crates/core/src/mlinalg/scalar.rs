//! Exact rational scalars.

use num::{BigInt, BigRational, One, Signed, Zero};

/// Arbitrary-precision rational, always kept in reduced form by `num`.
pub type Scalar = BigRational;

/// The rational `n / d`. Panics on `d == 0`.
pub fn q(n: i64, d: i64) -> Scalar {
    assert!(d != 0, "zero denominator");
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn qi(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"-0.25"`.
pub fn parse_scalar(s: &str) -> Option<Scalar> {
    let t = s.trim();
    if t.is_empty() {
        return None;
    }
    if let Some((a, b)) = t.split_once('/') {
        let n: BigInt = a.trim().parse().ok()?;
        let d: BigInt = b.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((a, b)) = t.split_once('.') {
        if b.is_empty() || !b.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let neg = a.starts_with('-');
        let ip: BigInt = if a.is_empty() || a == "-" || a == "+" {
            BigInt::zero()
        } else {
            a.parse().ok()?
        };
        let fp: BigInt = b.parse().ok()?;
        let den = num::pow(BigInt::from(10), b.len());
        let mag = ip.abs() * &den + fp;
        let n = if neg { -mag } else { mag };
        return Some(BigRational::new(n, den));
    }
    let n: BigInt = t.parse().ok()?;
    Some(BigRational::from_integer(n))
}

/// Canonical string form `"p/q"` or `"p"`.
pub fn fmt_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Scalar) -> f64 {
    use num::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_scalar("3/6"), Some(q(1, 2)));
        assert_eq!(parse_scalar("-4"), Some(qi(-4)));
        assert_eq!(parse_scalar("-0.25"), Some(q(-1, 4)));
        assert_eq!(parse_scalar("1/0"), None);
        assert_eq!(parse_scalar("x"), None);
    }

    #[test]
    fn canonical_form() {
        let x = q(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(fmt_scalar(&x), "-3/2");
    }
}
