//! Exact rational scalars and string/float conversions.
//!
//! Every lattice quantity in this crate (Gram entries, squared lengths,
//! determinants, clearances) is carried as a reduced `BigRational`, so all
//! identities that can be stated in squared form are checked with zero
//! tolerance.

use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "p/q" or "p". Denominator must be nonzero; result is reduced.
pub fn parse_rat(s: &str) -> Result<Rat, Error> {
    let s = s.trim();
    let make = |p: &str, q: &str| -> Result<Rat, Error> {
        let num: BigInt = p
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational numerator {p:?}")))?;
        let den: BigInt = q
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational denominator {q:?}")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(Rat::new(num, den))
    };
    match s.split_once('/') {
        Some((p, q)) => make(p, q),
        None => make(s, "1"),
    }
}

/// Renders a reduced rational as "p/q", or "p" when the denominator is 1.
pub fn rat_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// f64 value of a rational, robust against numerator/denominator overflow.
pub fn rat_f64(r: &Rat) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Shift both parts down so they fit in f64 range, then divide.
    let nbits = r.numer().bits() as i64;
    let dbits = r.denom().bits() as i64;
    let shift = (nbits.max(dbits) - 900).max(0) as u64;
    let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Smallest integer >= sqrt(r) for a nonnegative rational, as a rational.
/// Used to turn float search radii into safe exact bounds.
pub fn sqrt_ceil(r: &Rat) -> Rat {
    assert!(!r.is_negative());
    if r.is_zero() {
        return Rat::zero();
    }
    // ceil(sqrt(p/q)) <= ceil(sqrt(ceil(p/q)))
    let v = r.ceil().to_integer();
    let root = v.sqrt();
    if &root * &root >= v {
        Rat::from_integer(root)
    } else {
        Rat::from_integer(root + 1)
    }
}

/// A rational upper bound for an f64 (exact dyadic representation, then
/// rounded up by an ulp-scale margin).
pub fn rat_from_f64_upper(x: f64) -> Rat {
    assert!(x.is_finite());
    let exact = Rat::from_float(x).expect("finite float");
    let margin = Rat::from_float((x.abs() + 1.0) * 1e-12).expect("finite float");
    exact + margin
}

pub fn bigint_sign(r: &Rat) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
