//! Exact rational scalars, dense square matrices, minors, kernels and
//! characteristic polynomials.
//!
//! Nothing in this module uses a tolerance: equality is entrywise equality of
//! reduced fractions.

mod matrix;
mod minors;
mod poly;

pub use matrix::SquareMatrix;
pub(crate) use minors::scan_minors;
pub use minors::{all_minors, minor, MinorIndex, MinorTable};
pub use poly::{char_poly, rational_roots, Polynomial};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// `num / den` as a reduced rational. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_rational(token: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational number: {token:?}"));
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, d),
        None => (token, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {token:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical `"num/den"` form used by every report; the denominator is
/// always written, even when it is 1.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Exact `f64` value of a rational, rounded once.
pub fn to_f64(q: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Huge numerator or denominator: shift both down to 64 significant bits.
    let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(64);
    let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// The exact rational value of a finite `f64`.
pub fn from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::Numerical(format!("non-finite value {x}")))
}
