//! Exact scalar fields: arbitrary-precision rationals and cyclotomic fields.
//!
//! Everything downstream is generic over [`Scalar`], so the same truncated
//! cohomology code runs over `Rational` (for closed forms) and over
//! `Cyclotomic` (for per-group-element characters).

mod cyclotomic;
pub(crate) mod modular;
mod poly;
mod trig;

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

pub use cyclotomic::{
    as_rational, cos_of, cyc_inverse, cyc_mul, sin_times_i_of, zeta_power, Cyclotomic,
};
pub use poly::{cyclotomic_polynomial, euler_phi};
pub use trig::{trig_sums, trig_sums_brute_force, trig_sums_closed_form, TrigSums};

/// Arbitrary-precision exact fraction, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Shorthand for a small rational literal.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders `n` when the denominator is 1 and `num/den` otherwise.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses `num/den` or a bare integer. Zero denominators are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    let den = BigInt::from_str(den).map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

/// Returns the integer value of `r` if its denominator is 1.
pub fn to_integer(r: &Rational) -> Option<BigInt> {
    r.is_integer().then(|| r.to_integer())
}

/// `serde(with = ...)` adapter for the `"num/den"` string form.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// A commutative field with exact arithmetic.
///
/// `Order` carries whatever context is needed to build constants: nothing
/// for `Rational`, the cyclotomic order for `Cyclotomic`. Binary operations
/// reject operands living in different fields.
pub trait Scalar: Clone + PartialEq + Debug + Send + Sync {
    type Order: Copy + Eq + Debug + Send + Sync;

    fn order(&self) -> Self::Order;
    fn from_rational(r: &Rational, order: Self::Order) -> Self;
    fn is_zero(&self) -> bool;
    /// A cheap sufficient test for zero, used to skip work.
    fn is_zero_repr(&self) -> bool {
        self.is_zero()
    }
    fn try_add(&self, rhs: &Self) -> Result<Self>;
    fn try_sub(&self, rhs: &Self) -> Result<Self>;
    fn try_mul(&self, rhs: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    fn scale(&self, r: &Rational) -> Self;
    fn try_inverse(&self) -> Result<Self>;
    fn to_json(&self) -> serde_json::Value;

    fn zero(order: Self::Order) -> Self {
        Self::from_rational(&<Rational as Zero>::zero(), order)
    }

    fn one(order: Self::Order) -> Self {
        Self::from_rational(&<Rational as One>::one(), order)
    }
}

impl Scalar for Rational {
    type Order = ();

    fn order(&self) {}

    fn from_rational(r: &Rational, _: ()) -> Self {
        r.clone()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn try_add(&self, rhs: &Self) -> Result<Self> {
        Ok(self + rhs)
    }

    fn try_sub(&self, rhs: &Self) -> Result<Self> {
        Ok(self - rhs)
    }

    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        Ok(self * rhs)
    }

    fn neg(&self) -> Self {
        -self
    }

    fn scale(&self, r: &Rational) -> Self {
        self * r
    }

    fn try_inverse(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.recip())
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(format_rational(self))
    }
}
