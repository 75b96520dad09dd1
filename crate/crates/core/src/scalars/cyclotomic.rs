//! Exact arithmetic in the cyclotomic field Q(ζ_p) = Q[x]/Φ_p.
//!
//! An element is held as a representative in the group ring Q[x]/(x^p − 1),
//! as an integer vector of length p over one positive common denominator.
//! Since Φ_p divides x^p − 1 this ring maps onto the field, and sums and
//! products can be formed there without reducing. Characters built from a
//! few powers of ζ therefore stay sparse. The canonical form, in the power
//! basis 1, ζ, ..., ζ^{φ(p)−1}, is computed only when it is observed:
//! equality, coefficients, inversion and output.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::modular;
use super::poly::{self, Modulus};
use super::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// An element of Q(ζ_p).
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    /// Group-ring representative, length p.
    num: Vec<BigInt>,
    den: BigInt,
}

/// Coefficient arithmetic for the kernels. The `i128` fast path reports
/// overflow so the caller can redo the work with `BigInt`.
trait Coef: Clone {
    fn nil() -> Self;
    fn is_nil(&self) -> bool;
    /// `self += a * b`, false on overflow.
    fn add_prod(&mut self, a: &Self, b: &Self) -> bool;
    /// `self -= a * b`, false on overflow.
    fn sub_prod(&mut self, a: &Self, b: &Self) -> bool;
}

impl Coef for i128 {
    fn nil() -> Self {
        0
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn add_prod(&mut self, a: &Self, b: &Self) -> bool {
        match a.checked_mul(*b).and_then(|p| self.checked_add(p)) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
    fn sub_prod(&mut self, a: &Self, b: &Self) -> bool {
        match a.checked_mul(*b).and_then(|p| self.checked_sub(p)) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
}

impl Coef for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_prod(&mut self, a: &Self, b: &Self) -> bool {
        *self += a * b;
        true
    }
    fn sub_prod(&mut self, a: &Self, b: &Self) -> bool {
        *self -= a * b;
        true
    }
}

/// Reduces a polynomial of degree < p modulo the monic Φ_p, in place, and
/// truncates it to φ(p) coefficients.
fn reduce_in_place<T: Coef>(buf: &mut Vec<T>, tail: &[(usize, T)], degree: usize) -> bool {
    for top in (degree..buf.len()).rev() {
        let c = std::mem::replace(&mut buf[top], T::nil());
        if c.is_nil() {
            continue;
        }
        let shift = top - degree;
        for (t, phi_t) in tail {
            if !buf[shift + t].sub_prod(&c, phi_t) {
                return false;
            }
        }
    }
    buf.truncate(degree);
    buf.resize(degree, T::nil());
    true
}

/// Product in Z[x]/(x^p − 1), skipping zero entries.
fn cyclic_convolution<T: Coef>(a: &[T], b: &[T], p: usize) -> Option<Vec<T>> {
    let b_nz: Vec<(usize, &T)> = b.iter().enumerate().filter(|(_, c)| !c.is_nil()).collect();
    let mut buf = vec![T::nil(); p];
    for (i, x) in a.iter().enumerate() {
        if x.is_nil() {
            continue;
        }
        for &(k, y) in &b_nz {
            let mut idx = i + k;
            if idx >= p {
                idx -= p;
            }
            if !buf[idx].add_prod(x, y) {
                return None;
            }
        }
    }
    Some(buf)
}

fn to_small(v: &[BigInt]) -> Option<Vec<i128>> {
    v.iter().map(ToPrimitive::to_i128).collect()
}

/// Convolution of i64 vectors accumulated in i128, for inputs whose size
/// bound rules out overflow.
fn word_convolution(a: &[i64], b: &[i64], p: usize) -> Option<Vec<i128>> {
    let max_a = a.iter().map(|x| x.unsigned_abs() as u128).max().unwrap_or(0);
    let max_b = b.iter().map(|x| x.unsigned_abs() as u128).max().unwrap_or(0);
    let terms = a.iter().filter(|x| **x != 0).count().min(b.iter().filter(|x| **x != 0).count()) as u128;
    let bound = max_a.checked_mul(max_b)?.checked_mul(terms.max(1))?;
    if bound >= 1u128 << 126 {
        return None;
    }
    let mut buf = vec![0i128; p];
    // Operands stay i64 so each product is a single widening multiply.
    let dense = b.iter().filter(|x| **x != 0).count() * 4 > p;
    let b_nz: Vec<(usize, i64)> = b.iter().copied().enumerate().filter(|(_, c)| *c != 0).collect();
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        if dense {
            let (head, tail) = buf.split_at_mut(i);
            let split = p - i;
            for (slot, &y) in tail.iter_mut().zip(&b[..split]) {
                *slot += x as i128 * y as i128;
            }
            for (slot, &y) in head.iter_mut().zip(&b[split..]) {
                *slot += x as i128 * y as i128;
            }
        } else {
            for &(k, y) in &b_nz {
                let idx = if i + k >= p { i + k - p } else { i + k };
                buf[idx] += x as i128 * y as i128;
            }
        }
    }
    Some(buf)
}

fn to_word(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(ToPrimitive::to_i64).collect()
}

fn group_ring_mul(a: &[BigInt], b: &[BigInt], p: usize) -> Vec<BigInt> {
    if let (Some(wa), Some(wb)) = (to_word(a), to_word(b)) {
        if let Some(out) = word_convolution(&wa, &wb, p) {
            return out.into_iter().map(BigInt::from).collect();
        }
    }
    if let (Some(sa), Some(sb)) = (to_small(a), to_small(b)) {
        if let Some(out) = cyclic_convolution(&sa, &sb, p) {
            return out.into_iter().map(BigInt::from).collect();
        }
    }
    cyclic_convolution(a, b, p).expect("BigInt kernel cannot overflow")
}

/// Image of a group-ring vector of length p in the power basis mod Φ_p.
fn reduce_group_ring(v: &[BigInt], m: &Modulus) -> Vec<BigInt> {
    let width = (m.order as usize).max(m.degree);
    if let (Some(mut small), Some(tail)) = (to_small(v), m.tail_small.as_ref()) {
        small.resize(width, 0);
        if reduce_in_place(&mut small, tail, m.degree) {
            return small.into_iter().map(BigInt::from).collect();
        }
    }
    let mut big = v.to_vec();
    big.resize(width, BigInt::zero());
    reduce_in_place(&mut big, &m.tail, m.degree);
    big
}

/// Divides out the common content of `num` and `den`, with `den > 0`.
fn normalize(num: &mut [BigInt], den: &mut BigInt) {
    debug_assert!(!den.is_zero());
    if den.is_negative() {
        *den = -std::mem::take(den);
        num.iter_mut().for_each(|c| *c = -std::mem::take(c));
    }
    if num.iter().all(Zero::is_zero) {
        *den = BigInt::one();
        return;
    }
    if den.is_one() {
        return;
    }
    let mut g = den.clone();
    for c in num.iter().filter(|c| !c.is_zero()) {
        if g.is_one() {
            return;
        }
        g = g.gcd(c);
    }
    if !g.is_one() {
        num.iter_mut().filter(|c| !c.is_zero()).for_each(|c| *c /= &g);
        *den /= &g;
    }
}

/// Reduced power-basis form: φ(p) integers over a positive denominator,
/// without common content.
struct Canonical {
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    fn from_parts(order: u32, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        normalize(&mut num, &mut den);
        Cyclotomic { order, num, den }
    }

    /// Builds the image of `Σ v_i x^i / den` (any length ≤ p) in Q(ζ_p).
    pub(crate) fn from_group_ring(order: u32, mut v: Vec<BigInt>, den: BigInt) -> Self {
        assert!(v.len() <= order as usize, "group-ring vector longer than the order");
        v.resize(order as usize, BigInt::zero());
        Self::from_parts(order, v, den)
    }

    fn canonical(&self) -> Canonical {
        let m = poly::modulus(self.order);
        let mut num = reduce_group_ring(&self.num, &m);
        let mut den = self.den.clone();
        normalize(&mut num, &mut den);
        Canonical { num, den }
    }

    pub fn zero(order: u32) -> Self {
        assert!(order > 0, "cyclotomic order must be positive");
        Cyclotomic {
            order,
            num: vec![BigInt::zero(); order as usize],
            den: BigInt::one(),
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, &Rational::one())
    }

    pub fn from_rational(order: u32, r: &Rational) -> Self {
        let mut c = Self::zero(order);
        c.num[0] = r.numer().clone();
        c.den = r.denom().clone();
        c
    }

    /// Builds an element from its φ(p) power-basis coefficients.
    pub fn from_coeffs(order: u32, coeffs: &[Rational]) -> Result<Self> {
        if order == 0 {
            return Err(Error::invalid("cyclotomic order must be positive"));
        }
        let degree = poly::modulus(order).degree;
        if coeffs.len() != degree {
            return Err(Error::invalid(format!(
                "order {order} needs {degree} coefficients, got {}",
                coeffs.len()
            )));
        }
        let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(Self::from_group_ring(order, num, den))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// φ(p), the dimension over Q.
    pub fn degree(&self) -> usize {
        poly::modulus(self.order).degree
    }

    /// Power-basis coefficient of ζ^i.
    pub fn coeff(&self, i: usize) -> Rational {
        let c = self.canonical();
        Rational::new(c.num[i].clone(), c.den)
    }

    pub fn coeffs(&self) -> Vec<Rational> {
        let c = self.canonical();
        c.num.into_iter().map(|n| Rational::new(n, c.den.clone())).collect()
    }

    /// True if the stored representative is literally zero. Cheap, and
    /// implies `is_zero`, but not conversely.
    pub fn is_zero_repr(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_zero(&self) -> bool {
        self.is_zero_repr() || self.canonical().num.iter().all(Zero::is_zero)
    }

    /// Number of nonzero power-basis coefficients.
    pub fn support(&self) -> usize {
        self.canonical().num.iter().filter(|c| !c.is_zero()).count()
    }

    fn check(&self, rhs: &Self) -> Result<()> {
        if self.order != rhs.order {
            return Err(Error::OrderMismatch {
                left: self.order,
                right: rhs.order,
            });
        }
        Ok(())
    }

    fn combine(&self, rhs: &Self, sign: i32) -> Result<Self> {
        self.check(rhs)?;
        let den = self.den.lcm(&rhs.den);
        let fa = &den / &self.den;
        let fb = &den / &rhs.den;
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(a, b)| {
                let a = if a.is_zero() || fa.is_one() { a.clone() } else { a * &fa };
                let b = if b.is_zero() || fb.is_one() { b.clone() } else { b * &fb };
                if sign > 0 {
                    a + b
                } else {
                    a - b
                }
            })
            .collect();
        Ok(Self::from_parts(self.order, num, den))
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.combine(rhs, 1)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.combine(rhs, -1)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        if self.is_zero_repr() || rhs.is_zero_repr() {
            return Ok(Self::zero(self.order));
        }
        let num = group_ring_mul(&self.num, &rhs.num, self.order as usize);
        Ok(Self::from_parts(self.order, num, &self.den * &rhs.den))
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(self.order);
        }
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::from_parts(self.order, num, &self.den * r.denom())
    }

    /// Multiplicative inverse.
    ///
    /// Solves `s·a ≡ 1 (mod Φ_p)` by the extended Euclidean algorithm over
    /// a sequence of word-sized primes, lifts the result by CRT and rational
    /// reconstruction, and accepts it only after an exact check `a·s = 1`.
    /// Falls back to the extended Euclidean algorithm over Q.
    pub fn inverse(&self) -> Result<Self> {
        let a = self.canonical();
        if a.num.iter().all(Zero::is_zero) {
            return Err(Error::DivisionByZero);
        }
        let m = poly::modulus(self.order);
        if m.degree == 1 {
            let c = Rational::new(a.den.clone(), a.num[0].clone());
            return Ok(Self::from_rational(self.order, &c));
        }
        let one = Self::one(self.order);
        let mut residues = vec![BigInt::zero(); m.degree];
        let mut modulus = BigInt::one();
        for &q in modular::primes() {
            let a_q: Vec<u64> = a.num.iter().map(|c| modular::reduce_big(c, q)).collect();
            if a_q.iter().all(|&c| c == 0) {
                continue;
            }
            let phi_q: Vec<u64> = m.coeffs.iter().map(|c| modular::reduce_big(c, q)).collect();
            let Some(s) = modular::poly_inverse_mod(&a_q, &phi_q, q) else {
                continue;
            };
            modular::crt_accumulate(&mut residues, &mut modulus, &s, q);
            let Some(parts) = residues
                .iter()
                .map(|r| modular::rational_reconstruct(r, &modulus))
                .collect::<Option<Vec<_>>>()
            else {
                continue;
            };
            let coeffs: Vec<Rational> = parts.into_iter().map(|(n, d)| Rational::new(n, d)).collect();
            let candidate = Self::from_coeffs(self.order, &coeffs)?;
            // candidate inverts the numerator vector; undo the denominator.
            let inv = candidate.scale(&Rational::from_integer(a.den.clone()));
            if self.try_mul(&inv)? == one {
                return Ok(inv);
            }
        }
        self.inverse_rational_euclid()
    }

    /// Extended Euclidean algorithm directly over Q[x].
    pub(crate) fn inverse_rational_euclid(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = poly::modulus(self.order);
        let modulus: Vec<Rational> = m.coeffs.iter().cloned().map(Rational::from_integer).collect();
        let s = poly::inverse_mod_rational(&self.coeffs(), &modulus)
            .ok_or_else(|| Error::inconsistency("nonzero cyclotomic element has no inverse"))?;
        let mut coeffs = s;
        coeffs.resize(m.degree, Rational::zero());
        Self::from_coeffs(self.order, &coeffs)
    }

    /// The rational value, if every non-constant coefficient vanishes.
    pub fn to_rational(&self) -> Option<Rational> {
        let c = self.canonical();
        c.num[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| Rational::new(c.num[0].clone(), c.den))
    }

    /// Image under the field automorphism ζ ↦ ζ^k; `k` must be prime to p.
    pub fn apply_automorphism(&self, k: i64) -> Result<Self> {
        let p = self.order as i64;
        let k = k.rem_euclid(p);
        if p > 1 && k.gcd(&p) != 1 {
            return Err(Error::invalid(format!("{k} is not a unit modulo {p}")));
        }
        Ok(self.substitute_power(k))
    }

    /// Applies x ↦ x^k to the stored group-ring representative.
    ///
    /// This is a ring endomorphism of Q[x]/(x^p − 1) for every k, so an
    /// element built from ζ by sums and products, without inversion, maps
    /// to the same expression evaluated at ζ^k. For k prime to p it is the
    /// field automorphism; otherwise the result depends on the
    /// representative and is only meaningful for such polynomial elements.
    pub fn substitute_power(&self, k: i64) -> Self {
        let p = self.order as i64;
        let k = k.rem_euclid(p);
        let mut v = vec![BigInt::zero(); p as usize];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                v[((i as i64 * k) % p) as usize] += c;
            }
        }
        Cyclotomic { order: self.order, num: v, den: self.den.clone() }
    }

    /// Complex conjugate, ζ ↦ ζ^{-1}.
    pub fn conjugate(&self) -> Self {
        self.apply_automorphism(-1).expect("-1 is always a unit")
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order != other.order {
            return false;
        }
        if self.num == other.num && self.den == other.den {
            return true;
        }
        let (a, b) = (self.canonical(), other.canonical());
        a.num == b.num && a.den == b.den
    }
}

impl Eq for Cyclotomic {}

/// ζ_p^(k mod p).
pub fn zeta_power(p: u32, k: i64) -> Cyclotomic {
    let mut x = Cyclotomic::zero(p);
    x.num[k.rem_euclid(p as i64) as usize] = BigInt::one();
    x
}

fn symmetric_pair(p: u32, j: i64, sign: i64) -> Cyclotomic {
    let p_i = p as i64;
    let mut v = vec![BigInt::zero(); p as usize];
    v[j.rem_euclid(p_i) as usize] += 1;
    v[(-j).rem_euclid(p_i) as usize] += sign;
    Cyclotomic::from_group_ring(p, v, BigInt::from(2))
}

/// cos(2πj/p) = (ζ^j + ζ^{-j}) / 2.
pub fn cos_of(p: u32, j: i64) -> Cyclotomic {
    symmetric_pair(p, j, 1)
}

/// i·sin(2πj/p) = (ζ^j − ζ^{-j}) / 2.
pub fn sin_times_i_of(p: u32, j: i64) -> Cyclotomic {
    symmetric_pair(p, j, -1)
}

pub fn cyc_mul(a: &Cyclotomic, b: &Cyclotomic) -> Result<Cyclotomic> {
    a.try_mul(b)
}

pub fn cyc_inverse(a: &Cyclotomic) -> Result<Cyclotomic> {
    a.inverse()
}

pub fn as_rational(a: &Cyclotomic) -> Result<Rational> {
    a.to_rational().ok_or(Error::NotRational)
}

impl super::Scalar for Cyclotomic {
    type Order = u32;

    fn order(&self) -> u32 {
        self.order
    }

    fn from_rational(r: &Rational, order: u32) -> Self {
        Cyclotomic::from_rational(order, r)
    }

    fn is_zero(&self) -> bool {
        Cyclotomic::is_zero(self)
    }

    fn is_zero_repr(&self) -> bool {
        Cyclotomic::is_zero_repr(self)
    }

    fn try_add(&self, rhs: &Self) -> Result<Self> {
        Cyclotomic::try_add(self, rhs)
    }

    fn try_sub(&self, rhs: &Self) -> Result<Self> {
        Cyclotomic::try_sub(self, rhs)
    }

    fn try_mul(&self, rhs: &Self) -> Result<Self> {
        Cyclotomic::try_mul(self, rhs)
    }

    fn neg(&self) -> Self {
        Cyclotomic::neg(self)
    }

    fn scale(&self, r: &Rational) -> Self {
        Cyclotomic::scale(self, r)
    }

    fn try_inverse(&self) -> Result<Self> {
        self.inverse()
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("cyclotomic serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct CyclotomicRepr {
    order: u32,
    coeffs: Vec<String>,
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CyclotomicRepr {
            order: self.order,
            coeffs: self.coeffs().iter().map(format_rational).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = CyclotomicRepr::deserialize(d)?;
        if repr.order == 0 {
            return Err(D::Error::custom("cyclotomic order must be positive"));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Cyclotomic::from_coeffs(repr.order, &coeffs).map_err(D::Error::custom)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, abs) = (c.is_negative(), c.abs());
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            let coeff = format_rational(&abs);
            match i {
                0 => write!(f, "{coeff}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{coeff}")?;
                    }
                    write!(f, "ζ")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
