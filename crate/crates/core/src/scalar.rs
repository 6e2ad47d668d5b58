//! Scalar coordinate types.
//!
//! Every algebraic object in the crate is generic over [`Scalar`]. Two
//! families are provided: IEEE floats (`f64`, `f32`) where equality tests use
//! relative tolerances, and exact rationals ([`Rational`]) where every
//! tolerance collapses to zero and identities are checked bit-exactly.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Arbitrary-precision rational number used by the exact scalar mode.
pub type Rational = BigRational;

/// Coordinate field of every algebraic object.
pub trait Scalar:
    Clone + Debug + PartialEq + PartialOrd + num_traits::Num + Signed + Send + Sync + 'static
{
    /// `true` when arithmetic is exact and tolerances are zero.
    const EXACT: bool;

    fn from_f64(x: f64) -> Self;

    fn to_f64(&self) -> f64;

    fn from_ratio(num: i64, den: i64) -> Self;

    /// Square root, `None` for negative input or when the root is not
    /// representable (irrational roots in exact mode).
    fn sqrt(&self) -> Option<Self>;

    /// Parses a JSON number or a `"p/q"` / decimal string.
    fn from_json(v: &Value) -> Result<Self>;

    /// Floats are rendered with 12 significant digits, rationals as `"p/q"`.
    fn to_json(&self) -> Value;

    /// Smallest relative tolerance the type can honour; thresholds below it
    /// are raised to it.
    const TOL_FLOOR: f64 = 0.0;

    /// A tolerance of `rel`, or zero in exact mode.
    fn tolerance(rel: f64) -> Self {
        if Self::EXACT {
            Self::zero()
        } else {
            Self::from_f64(rel.max(Self::TOL_FLOOR))
        }
    }

    fn max_of(a: Self, b: Self) -> Self {
        if a >= b {
            a
        } else {
            b
        }
    }

    fn min_of(a: Self, b: Self) -> Self {
        if a <= b {
            a
        } else {
            b
        }
    }

    /// Clamps into `[0, 1]`.
    fn clamp_unit(self) -> Self {
        Self::min_of(Self::max_of(self, Self::zero()), Self::one())
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn half() -> Self {
        Self::one() / Self::two()
    }
}

/// Rounds to 12 significant digits; used for all floating output.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.11e}", x).parse().unwrap_or(x)
}

fn float_json(x: f64) -> Value {
    let r = round_sig(x);
    // Integral values print without a trailing ".0" so reports stay stable
    // between the float and exact paths.
    if r.fract() == 0.0 && r.abs() < 1e15 {
        Value::from(r as i64)
    } else {
        serde_json::Number::from_f64(r)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }
}

/// Parses `"p/q"`, integers and decimal literals (with optional exponent)
/// exactly.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_rational(n)?;
        let d = parse_rational(d)?;
        if d.is_zero() {
            return None;
        }
        return Some(n / d);
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut num: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().ok()? };
    if neg {
        num = -num;
    }
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let r = if scale >= 0 {
        Rational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Some(r)
}

fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => parse_rational(&n.to_string()),
        Value::String(s) => parse_rational(s),
        _ => None,
    }
    .ok_or_else(|| Error::Parse(format!("not a rational scalar: {v}")))
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_f64(x: f64) -> Self {
        x
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| Error::Parse(format!("bad number {n}"))),
            Value::String(s) => match s.parse::<f64>() {
                Ok(x) => Ok(x),
                Err(_) => Ok(Scalar::to_f64(&rational_from_json(v)?)),
            },
            _ => Err(Error::Parse(format!("not a scalar: {v}"))),
        }
    }

    fn to_json(&self) -> Value {
        float_json(*self)
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;
    // About a hundred ulps at 1.0.
    const TOL_FLOOR: f64 = 1e-5;

    fn from_f64(x: f64) -> Self {
        x as f32
    }

    fn to_f64(&self) -> f64 {
        *self as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        (num as f64 / den as f64) as f32
    }

    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f32::sqrt(*self))
    }

    fn from_json(v: &Value) -> Result<Self> {
        <f64 as Scalar>::from_json(v).map(|x| x as f32)
    }

    fn to_json(&self) -> Value {
        float_json(*self as f64)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    /// Exact binary expansion of `x`; NaN and infinities map to zero.
    fn from_f64(x: f64) -> Self {
        Rational::from_float(x).unwrap_or_else(Rational::zero)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn sqrt(&self) -> Option<Self> {
        let n = exact_isqrt(self.numer())?;
        let d = exact_isqrt(self.denom())?;
        Some(Rational::new(n, d))
    }

    fn from_json(v: &Value) -> Result<Self> {
        rational_from_json(v)
    }

    fn to_json(&self) -> Value {
        if self.denom().is_one() {
            Value::String(self.numer().to_string())
        } else {
            Value::String(format!("{}/{}", self.numer(), self.denom()))
        }
    }
}
