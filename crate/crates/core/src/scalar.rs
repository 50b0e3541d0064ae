//! Exact scalars: rationals and complex rationals with unbounded precision.
//!
//! A [`Scalar`] is a pair of `BigRational` components `re + im*i`. Real
//! scalars are simply those with `im = 0`. All arithmetic is exact; the
//! only magnitude ever materialized is the *squared* magnitude
//! `|s|^2 = re^2 + im^2`, which is always rational even when `|s|` is not.
//!
//! Growth bookkeeping that would overflow `f64` (powers like `|w|^(n(n+1)/2)`)
//! goes through [`ratio_ln`], which computes natural logs from the bit length
//! of the numerator and denominator instead of converting the value itself.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Scalar field selector for spectral statements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Real,
    Complex,
}

/// An exact rational or complex-rational number.
///
/// Invariants: both components are kept in canonical reduced form with a
/// positive denominator (maintained by `num_rational`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    /// Exact rational `p/q`. Panics if `q == 0`.
    pub fn rational(p: i64, q: i64) -> Self {
        assert!(q != 0, "rational denominator must be nonzero");
        Scalar {
            re: BigRational::new(BigInt::from(p), BigInt::from(q)),
            im: BigRational::zero(),
        }
    }

    /// Complex rational `p/q + (r/s) i`. Panics if `q == 0` or `s == 0`.
    pub fn complex(p: i64, q: i64, r: i64, s: i64) -> Self {
        assert!(q != 0 && s != 0, "rational denominators must be nonzero");
        Scalar {
            re: BigRational::new(BigInt::from(p), BigInt::from(q)),
            im: BigRational::new(BigInt::from(r), BigInt::from(s)),
        }
    }

    pub fn from_parts(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn from_ratio(re: BigRational) -> Self {
        Scalar {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Scalar {
        Scalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// Exact squared magnitude `re^2 + im^2`.
    pub fn abs_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact division. Fails on a zero divisor.
    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if rhs.is_real() {
            return Ok(Scalar {
                re: &self.re / &rhs.re,
                im: &self.im / &rhs.re,
            });
        }
        // (a+bi)/(c+di) = (a+bi)(c-di) / |c+di|^2
        let denom = rhs.abs_sq();
        let num = self * &rhs.conj();
        Ok(Scalar {
            re: num.re / &denom,
            im: num.im / &denom,
        })
    }

    pub fn recip(&self) -> Result<Scalar> {
        Scalar::one().checked_div(self)
    }

    /// Exact integer power with the convention `0^0 = 1`.
    ///
    /// Real scalars stay gcd-free: a reduced base `p/q` powers to the already
    /// reduced `p^e/q^e`, so no re-reduction pass is performed.
    pub fn powi(&self, exp: i64) -> Result<Scalar> {
        if exp == 0 {
            return Ok(Scalar::one());
        }
        if self.is_zero() {
            if exp < 0 {
                return Err(Error::ZeroToNegativePower(exp));
            }
            return Ok(Scalar::zero());
        }
        if self.is_real() {
            return Ok(Scalar::from_ratio(ratio_pow(&self.re, exp)?));
        }
        let base = if exp > 0 { self.clone() } else { self.recip()? };
        let mut e = exp.unsigned_abs();
        // square-and-multiply
        let mut acc = Scalar::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Natural log of the magnitude, `NEG_INFINITY` for zero.
    pub fn log_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        0.5 * ratio_ln(&self.abs_sq())
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_real() {
            return Scalar {
                re: &self.re * &rhs.re,
                im: &self.re * &rhs.im,
            };
        }
        if rhs.is_real() {
            return Scalar {
                re: &self.re * &rhs.re,
                im: &self.im * &rhs.re,
            };
        }
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Canonical text form: `p/q` for rationals, `p/q+r/s i` / `p/q-r/s i`
/// for complex values. The denominator is always written, `3` prints
/// as `3/1`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.re.numer(), self.re.denom())?;
        if !self.im.is_zero() {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            let mag = self.im.abs();
            write!(f, "{}{}/{} i", sign, mag.numer(), mag.denom())?;
        }
        Ok(())
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scalar> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar literal".into()));
        }
        if let Some(body) = s.strip_suffix('i') {
            let body = body.trim_end();
            // split on the sign between the real and imaginary parts
            let split = body
                .char_indices()
                .skip(1)
                .find(|&(_, c)| c == '+' || c == '-')
                .map(|(i, c)| (i, c));
            let (idx, sign) = split.ok_or_else(|| {
                Error::Parse(format!("complex literal `{s}` lacks a +/- separator"))
            })?;
            let re = parse_rational(&body[..idx])?;
            let mut im = parse_rational(&body[idx + 1..])?;
            if sign == '-' {
                im = -im;
            }
            return Ok(Scalar::from_parts(re, im));
        }
        Ok(Scalar::from_ratio(parse_rational(s)?))
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num_str
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
    if den_str.starts_with('-') || den_str.starts_with('+') {
        return Err(Error::Parse(format!(
            "denominator must be a positive integer in `{s}`"
        )));
    }
    let den: BigInt = den_str
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(num, den))
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Gcd-free integer power of a reduced rational: `(p/q)^e = p^e/q^e` is
/// already reduced, and the denominator stays positive for positive `q`.
pub fn ratio_pow(r: &BigRational, exp: i64) -> Result<BigRational> {
    if exp == 0 {
        return Ok(BigRational::one());
    }
    if r.is_zero() {
        if exp < 0 {
            return Err(Error::ZeroToNegativePower(exp));
        }
        return Ok(BigRational::zero());
    }
    let e = usize::try_from(exp.unsigned_abs())
        .map_err(|_| Error::Parse(format!("exponent {exp} out of range")))?;
    let pn = num_traits::pow(r.numer().clone(), e);
    let pd = num_traits::pow(r.denom().clone(), e);
    if exp > 0 {
        Ok(BigRational::new_raw(pn, pd))
    } else if pn.is_negative() {
        Ok(BigRational::new_raw(-pd, -pn))
    } else {
        Ok(BigRational::new_raw(pd, pn))
    }
}

/// Natural log of a positive big integer, computed from its bit length so
/// that values far beyond `f64` range stay finite.
fn bigint_ln(x: &BigInt) -> f64 {
    debug_assert!(x.is_positive());
    let bits = x.bits();
    if bits <= 52 {
        return x.to_f64().expect("small BigInt fits f64").ln();
    }
    let shift = bits - 52;
    let top = x >> shift;
    top.to_f64().expect("52-bit BigInt fits f64").ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of a positive rational.
pub fn ratio_ln(r: &BigRational) -> f64 {
    assert!(r.is_positive(), "ratio_ln needs a positive argument");
    bigint_ln(r.numer()) - bigint_ln(r.denom())
}

/// `sqrt` of a nonnegative rational as `f64`, overflow-safe via logs.
pub fn ratio_sqrt_f64(sq: &BigRational) -> f64 {
    if sq.is_zero() {
        return 0.0;
    }
    (0.5 * ratio_ln(sq)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, q_: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q_))
    }

    #[test]
    fn abs_sq_of_complex_half_half() {
        // |1/2 + (1/2)i|^2 = 1/2
        let s = Scalar::complex(1, 2, 1, 2);
        assert_eq!(s.abs_sq(), q(1, 2));
    }

    #[test]
    fn division_round_trips() {
        let a = Scalar::complex(3, 4, -2, 5);
        let b = Scalar::complex(1, 3, 7, 2);
        let c = a.checked_div(&b).unwrap();
        assert_eq!(&c * &b, a);
        assert!(Scalar::one()
            .checked_div(&Scalar::zero())
            .is_err());
    }

    #[test]
    fn zero_pow_zero_is_one() {
        assert_eq!(Scalar::zero().powi(0).unwrap(), Scalar::one());
        assert_eq!(Scalar::zero().powi(3).unwrap(), Scalar::zero());
        assert!(Scalar::zero().powi(-1).is_err());
    }

    #[test]
    fn integer_powers_match_repeated_multiplication() {
        let s = Scalar::complex(2, 3, -1, 2);
        let mut acc = Scalar::one();
        for e in 0..=9i64 {
            assert_eq!(s.powi(e).unwrap(), acc, "exponent {e}");
            acc = &acc * &s;
        }
        let inv = s.powi(-4).unwrap();
        assert_eq!(&inv * &s.powi(4).unwrap(), Scalar::one());
    }

    #[test]
    fn huge_power_log_is_finite() {
        let w = Scalar::from_int(2);
        let p = w.powi(124_750).unwrap();
        let ln = p.log_abs();
        let expected = 124_750.0 * std::f64::consts::LN_2;
        assert!((ln - expected).abs() < 1e-6 * expected);
    }

    #[test]
    fn literal_grammar_round_trips() {
        for text in ["3/1", "-5/2", "0/1", "1/2+1/2 i", "3/4-7/5 i", "-2/1+1/3 i"] {
            let s: Scalar = text.parse().unwrap();
            assert_eq!(s.to_string(), text, "canonical form should round-trip");
        }
        // non-canonical input parses to canonical output
        let s: Scalar = "4/6".parse().unwrap();
        assert_eq!(s.to_string(), "2/3");
        let s: Scalar = "7".parse().unwrap();
        assert_eq!(s.to_string(), "7/1");
        let s: Scalar = "1/2+3/4i".parse().unwrap();
        assert_eq!(s.to_string(), "1/2+3/4 i");
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("1/-2".parse::<Scalar>().is_err());
        assert!("".parse::<Scalar>().is_err());
    }

    #[test]
    fn ratio_pow_is_exact_and_signed() {
        assert_eq!(ratio_pow(&q(-2, 3), 3).unwrap(), q(-8, 27));
        assert_eq!(ratio_pow(&q(-2, 3), -2).unwrap(), q(9, 4));
        assert_eq!(ratio_pow(&q(-2, 3), -3).unwrap(), q(-27, 8));
        assert_eq!(ratio_pow(&q(5, 7), 0).unwrap(), BigRational::one());
    }
}
