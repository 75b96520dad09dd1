//! The truncated ring S[e, ĥ] / (degree > 2 in the generators).
//!
//! `e` is the Euler class of the tangent bundle of the singular surface and
//! `ĥ` the orbifold Euler class of its normal bundle. Both have
//! cohomological degree 2; every product of cohomological degree above 4 is
//! dropped.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalars::{rat, Cyclotomic, Rational, Scalar};

/// `c0 + ce·e + ch·ĥ + cee·e² + ceh·eĥ + chh·ĥ²`
#[derive(Clone, Debug, PartialEq)]
pub struct CohomElement<S: Scalar> {
    pub c0: S,
    pub ce: S,
    pub ch: S,
    pub cee: S,
    pub ceh: S,
    pub chh: S,
}

/// Monomial labels in storage order, as used in the JSON form.
pub const MONOMIALS: [&str; 6] = ["1", "e", "h", "ee", "eh", "hh"];

/// Σ a_i·b_i, skipping terms with a zero factor.
fn dot<S: Scalar>(order: S::Order, terms: &[(&S, &S)]) -> Result<S> {
    let mut acc = S::zero(order);
    for (a, b) in terms {
        if a.is_zero_repr() || b.is_zero_repr() {
            continue;
        }
        acc = acc.try_add(&a.try_mul(b)?)?;
    }
    Ok(acc)
}

impl<S: Scalar> CohomElement<S> {
    pub fn new(c0: S, ce: S, ch: S, cee: S, ceh: S, chh: S) -> Self {
        CohomElement { c0, ce, ch, cee, ceh, chh }
    }

    pub fn from_rationals(order: S::Order, coeffs: [Rational; 6]) -> Self {
        let [c0, ce, ch, cee, ceh, chh] = coeffs.map(|r| S::from_rational(&r, order));
        Self::new(c0, ce, ch, cee, ceh, chh)
    }

    pub fn zero(order: S::Order) -> Self {
        Self::constant(S::zero(order))
    }

    pub fn one(order: S::Order) -> Self {
        Self::constant(S::one(order))
    }

    pub fn constant(s: S) -> Self {
        let z = S::zero(s.order());
        Self::new(s, z.clone(), z.clone(), z.clone(), z.clone(), z)
    }

    /// The generator e.
    pub fn e_class(order: S::Order) -> Self {
        let mut x = Self::zero(order);
        x.ce = S::one(order);
        x
    }

    /// The generator ĥ.
    pub fn h_class(order: S::Order) -> Self {
        let mut x = Self::zero(order);
        x.ch = S::one(order);
        x
    }

    pub fn order(&self) -> S::Order {
        self.c0.order()
    }

    pub fn coeffs(&self) -> [&S; 6] {
        [&self.c0, &self.ce, &self.ch, &self.cee, &self.ceh, &self.chh]
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> CohomElement<T> {
        CohomElement::new(f(&self.c0), f(&self.ce), f(&self.ch), f(&self.cee), f(&self.ceh), f(&self.chh))
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&S, &S) -> Result<S>) -> Result<Self> {
        Ok(Self::new(
            f(&self.c0, &rhs.c0)?,
            f(&self.ce, &rhs.ce)?,
            f(&self.ch, &rhs.ch)?,
            f(&self.cee, &rhs.cee)?,
            f(&self.ceh, &rhs.ceh)?,
            f(&self.chh, &rhs.chh)?,
        ))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, S::try_add)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, S::try_sub)
    }

    pub fn neg(&self) -> Self {
        self.map(S::neg)
    }

    /// Truncated product.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        let (a, b) = (self, rhs);
        let o = a.order();
        if o != b.order() {
            // Surface the scalar-level mismatch error.
            a.c0.try_mul(&b.c0)?;
        }
        Ok(Self::new(
            dot(o, &[(&a.c0, &b.c0)])?,
            dot(o, &[(&a.c0, &b.ce), (&a.ce, &b.c0)])?,
            dot(o, &[(&a.c0, &b.ch), (&a.ch, &b.c0)])?,
            dot(o, &[(&a.c0, &b.cee), (&a.ce, &b.ce), (&a.cee, &b.c0)])?,
            dot(o, &[(&a.c0, &b.ceh), (&a.ce, &b.ch), (&a.ch, &b.ce), (&a.ceh, &b.c0)])?,
            dot(o, &[(&a.c0, &b.chh), (&a.ch, &b.ch), (&a.chh, &b.c0)])?,
        ))
    }

    pub fn scalar_mul(&self, s: &S) -> Result<Self> {
        let z = S::zero(s.order());
        self.zip_with(&Self::constant(z), |a, _| if a.is_zero_repr() { Ok(a.clone()) } else { a.try_mul(s) })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.map(|s| s.scale(r))
    }

    /// Inverse of a unit by the geometric series
    /// a⁻¹ = c0⁻¹ (1 + D + D²) with D = 1 − a/c0 nilpotent (D³ = 0).
    pub fn invert_unit(&self) -> Result<Self> {
        if self.c0.is_zero() {
            return Err(Error::NonUnit);
        }
        let o = self.order();
        let u = self.c0.try_inverse()?;
        // D = −(a − c0)/c0, built so its constant term is literally zero.
        let mut rest = self.clone();
        rest.c0 = S::zero(o);
        let d = rest.scalar_mul(&u)?.neg();
        let series = Self::one(o).add(&d)?.add(&d.mul(&d)?)?;
        series.scalar_mul(&u)
    }

    /// Quotient by e of an element whose monomials all carry e.
    ///
    /// The degree-4 part of the quotient is unknown after truncation and is
    /// set to zero; it never reaches a pairing with the surface.
    pub fn divide_by_e(&self) -> Result<Self> {
        if !(self.c0.is_zero() && self.ch.is_zero() && self.chh.is_zero()) {
            return Err(Error::NotDivisibleByE);
        }
        let z = S::zero(self.order());
        Ok(Self::new(self.ce.clone(), self.cee.clone(), self.ceh.clone(), z.clone(), z.clone(), z))
    }

    /// ⟨a, [Σ]⟩: only the degree-2 part pairs with a surface.
    pub fn pair_with_sigma(&self, d: &PairingData) -> S {
        let ce = self.ce.scale(&Rational::from_integer(d.chi_sigma.into()));
        let ch = self.ch.scale(&d.sigma_hat_sq);
        ce.try_add(&ch).expect("same field")
    }
}

impl CohomElement<Cyclotomic> {
    /// Coefficient-wise complex conjugation ζ ↦ ζ^{-1}.
    pub fn conjugate(&self) -> Self {
        self.map(Cyclotomic::conjugate)
    }

    /// Every coefficient as a rational, if all are Galois-invariant.
    pub fn to_rational(&self) -> Result<CohomElement<Rational>> {
        let [c0, ce, ch, cee, ceh, chh] = self.coeffs().map(crate::scalars::as_rational);
        Ok(CohomElement::new(c0?, ce?, ch?, cee?, ceh?, chh?))
    }
}

/// exp(a·e + b·ĥ) = 1 + (ae + bĥ) + (ae + bĥ)²/2, truncated.
pub fn exp_class<S: Scalar>(a: &S, b: &S) -> Result<CohomElement<S>> {
    let half = rat(1, 2);
    Ok(CohomElement::new(
        S::one(a.order()),
        a.clone(),
        b.clone(),
        a.try_mul(a)?.scale(&half),
        a.try_mul(b)?,
        b.try_mul(b)?.scale(&half),
    ))
}

/// Â(Σ)² = Td(l)·Td(l̄) = 1 − e²/12, with c₁(l) = e.
pub fn a_hat_squared<S: Scalar>(order: S::Order) -> CohomElement<S> {
    let mut x = CohomElement::one(order);
    x.cee = S::from_rational(&rat(-1, 12), order);
    x
}

pub fn ring_add<S: Scalar>(a: &CohomElement<S>, b: &CohomElement<S>) -> Result<CohomElement<S>> {
    a.add(b)
}

pub fn ring_mul<S: Scalar>(a: &CohomElement<S>, b: &CohomElement<S>) -> Result<CohomElement<S>> {
    a.mul(b)
}

pub fn scalar_mul<S: Scalar>(s: &S, a: &CohomElement<S>) -> Result<CohomElement<S>> {
    a.scalar_mul(s)
}

pub fn invert_unit<S: Scalar>(a: &CohomElement<S>) -> Result<CohomElement<S>> {
    a.invert_unit()
}

pub fn divide_by_e<S: Scalar>(a: &CohomElement<S>) -> Result<CohomElement<S>> {
    a.divide_by_e()
}

pub fn pair_with_sigma<S: Scalar>(a: &CohomElement<S>, d: &PairingData) -> S {
    a.pair_with_sigma(d)
}

/// Pairings of the generators with the fundamental class of Σ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingData {
    /// ⟨e, [Σ]⟩ = χ(Σ)
    pub chi_sigma: i64,
    /// ⟨ĥ, [Σ]⟩ = [Σ]²/p
    pub sigma_hat_sq: Rational,
}

impl PairingData {
    pub fn new(chi_sigma: i64, sigma_hat_sq: Rational) -> Self {
        PairingData { chi_sigma, sigma_hat_sq }
    }

    /// From the integer self-intersection [Σ]² and the cone order p.
    pub fn from_self_intersection(chi_sigma: i64, sigma_sq: i64, p: u32) -> Result<Self> {
        if p == 0 {
            return Err(Error::invalid("cone order must be positive"));
        }
        Ok(PairingData::new(chi_sigma, rat(sigma_sq, p as i64)))
    }
}

impl<S: Scalar> Serialize for CohomElement<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        let mut map = s.serialize_map(Some(6))?;
        for (k, v) in MONOMIALS.iter().zip(self.coeffs()) {
            map.serialize_entry(k, &v.to_json())?;
        }
        map.end()
    }
}
