//! Exact rational helpers.
//!
//! Every probabilistic quantity in the crate is a [`Rational`]. Reports
//! render them as `"numerator/denominator"` strings, including integers
//! (`"0/1"`), so no consumer ever sees a decimal.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serializer;

pub type Rational = num_rational::BigRational;

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Renders `p/q` in lowest terms with a positive denominator.
pub fn to_ratio_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses the `p/q` (or bare integer) form produced by [`to_ratio_string`].
pub fn parse_ratio_string(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// `serialize_with` adapter for rational fields.
pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&to_ratio_string(r))
}

/// `serialize_with` adapter for lists of rationals.
pub fn serialize_vec<S: Serializer>(rs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(rs.iter().map(to_ratio_string))
}
