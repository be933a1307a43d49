//! Arithmetic backends.
//!
//! Certificates and refutations run on exact rationals; spectral work and
//! numerical optimisation run on `f64`. Most algorithms are generic over
//! [`Scalar`] so the same code path serves both.

use std::fmt::Debug;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

/// Exact rational number with arbitrary-precision numerator and denominator.
pub type Rational = BigRational;

/// A field element usable as a matrix entry.
pub trait Scalar:
    Clone + Debug + PartialOrd + Signed + Send + Sync + 'static
{
    /// `num / den` in this backend.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_rational(r: &Rational) -> Self;

    fn to_f64(&self) -> f64;

    /// True for backends whose comparisons are exact.
    fn is_exact() -> bool;

    /// Equality up to backend precision (exact for rationals, `1e-12` relative for floats).
    fn approx_eq(&self, other: &Self) -> bool;

    fn from_usize(k: usize) -> Self {
        Self::from_ratio(k as i64, 1)
    }

    fn half() -> Self {
        Self::from_ratio(1, 2)
    }
}

impl Scalar for Rational {
    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn is_exact() -> bool {
        true
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }
}

impl Scalar for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_exact() -> bool {
        false
    }

    fn approx_eq(&self, other: &Self) -> bool {
        let scale = self.abs().max(other.abs()).max(1.0);
        (self - other).abs() <= 1e-12 * scale
    }
}

/// Float approximation that stays accurate when numerator and denominator
/// individually overflow `f64`.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    let shift = r.numer().bits().max(r.denom().bits()) as i64 - 60;
    let (n, d) = if shift > 0 {
        (r.numer() >> shift as usize, r.denom() >> shift as usize)
    } else {
        (r.numer().clone(), r.denom().clone())
    };
    if d.is_zero() {
        return if r.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
    }
    n.to_f64().unwrap_or(0.0) / d.to_f64().unwrap_or(1.0)
}

/// `p/q` string form used by every exact field in JSON output.
pub fn rational_string(r: &Rational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q`, an integer, or a decimal such as `0.99` / `-1.5e-2` into an
/// exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((p, q)) = text.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
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
    let mut numer: BigInt = if all.is_empty() { BigInt::zero() } else { all.parse().ok()? };
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        Rational::from_integer(numer * num::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num::pow(ten, (-scale) as usize))
    };
    Some(value)
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// by continued-fraction convergents (with the semiconvergent check).
pub fn rationalize(x: f64, max_den: u64) -> Rational {
    assert!(x.is_finite(), "cannot rationalize a non-finite value");
    let max_den = max_den.max(1);
    let negative = x < 0.0;
    let mut y = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0u128, 1u128, 1u128, 0u128);
    let mut best = (y.round() as u128, 1u128);
    for _ in 0..64 {
        let a = y.floor();
        if a > 1e18 {
            break;
        }
        let a = a as u128;
        let p2 = a * p1 + p0;
        let q2 = a * q1 + q0;
        if q2 > max_den as u128 {
            // semiconvergent with the largest admissible multiplier
            let k = (max_den as u128 - q0) / q1;
            let (ps, qs) = (k * p1 + p0, k * q1 + q0);
            let err_s = (ps as f64 / qs as f64 - x.abs()).abs();
            let err_c = (p1 as f64 / q1 as f64 - x.abs()).abs();
            best = if qs > 0 && err_s < err_c { (ps, qs) } else { (p1, q1) };
            break;
        }
        best = (p2, q2);
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let frac = y - a as f64;
        if frac < 1e-15 {
            break;
        }
        y = 1.0 / frac;
    }
    let r = Rational::new(BigInt::from(best.0), BigInt::from(best.1));
    if negative {
        -r
    } else {
        r
    }
}
