//! Integer and rational polynomial helpers. Polynomials are coefficient
//! vectors in ascending degree order.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::Rational;

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            while n.is_multiple_of(d) {
                n /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The `p`-th cyclotomic polynomial Φ_p, ascending coefficients, degree φ(p).
///
/// # Panics
///
/// Panics if `p == 0`.
pub fn cyclotomic_polynomial(p: u32) -> Vec<BigInt> {
    modulus(p).coeffs.clone()
}

/// Cached data for reducing modulo Φ_p.
#[derive(Debug)]
pub(crate) struct Modulus {
    pub order: u32,
    pub degree: usize,
    /// Full coefficient list, length `degree + 1`, monic.
    pub coeffs: Vec<BigInt>,
    /// `(t, c)` with `c = coeffs[t] != 0` and `t < degree`.
    pub tail: Vec<(usize, BigInt)>,
    /// Same as `tail`, when every coefficient fits in an `i128`.
    pub tail_small: Option<Vec<(usize, i128)>>,
}

fn cache() -> &'static Mutex<HashMap<u32, Arc<Modulus>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Modulus>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub(crate) fn modulus(p: u32) -> Arc<Modulus> {
    assert!(p >= 1, "cyclotomic order must be positive");
    if let Some(m) = cache().lock().unwrap().get(&p) {
        return m.clone();
    }
    let coeffs = compute_cyclotomic(p);
    let degree = coeffs.len() - 1;
    let tail: Vec<(usize, BigInt)> = coeffs[..degree]
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(t, c)| (t, c.clone()))
        .collect();
    let tail_small = tail
        .iter()
        .map(|(t, c)| c.to_i128().map(|c| (*t, c)))
        .collect::<Option<Vec<_>>>();
    let m = Arc::new(Modulus {
        order: p,
        degree,
        coeffs,
        tail,
        tail_small,
    });
    cache().lock().unwrap().entry(p).or_insert(m).clone()
}

/// Φ_p = (x^p − 1) / ∏_{d | p, d < p} Φ_d.
fn compute_cyclotomic(p: u32) -> Vec<BigInt> {
    let mut num = vec![BigInt::zero(); p as usize + 1];
    num[0] = BigInt::from(-1);
    num[p as usize] = BigInt::one();
    for d in 1..p {
        if p.is_multiple_of(d) {
            let div = modulus(d);
            num = div_exact_monic(&num, &div.coeffs);
        }
    }
    num
}

/// Exact quotient of `num` by a monic `den`. The remainder must vanish.
fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dd;
    let mut quo = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (t, dc) in den.iter().enumerate() {
            rem[k + t] -= &c * dc;
        }
        quo[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quo
}

fn trim_rational(v: &mut Vec<Rational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn sub_scaled(target: &mut Vec<Rational>, src: &[Rational], factor: &Rational, shift: usize) {
    if target.len() < src.len() + shift {
        target.resize(src.len() + shift, Rational::zero());
    }
    for (i, c) in src.iter().enumerate() {
        if !c.is_zero() {
            target[i + shift] -= c * factor;
        }
    }
}

/// Inverse of `a` modulo `m` in Q[x] by the extended Euclidean algorithm.
///
/// Returns `None` when `gcd(a, m)` is not a unit. Slow on large degrees:
/// this is the fallback behind the multi-modular path.
pub(crate) fn inverse_mod_rational(a: &[Rational], m: &[Rational]) -> Option<Vec<Rational>> {
    let mut r0: Vec<Rational> = m.to_vec();
    let mut r1: Vec<Rational> = a.to_vec();
    trim_rational(&mut r0);
    trim_rational(&mut r1);
    let mut s0: Vec<Rational> = Vec::new();
    let mut s1: Vec<Rational> = vec![Rational::one()];
    while r1.len() > 1 {
        // r0 = q * r1 + r, s_new = s0 - q * s1
        let lead = r1.last().unwrap().clone();
        let mut rem = r0.clone();
        let mut s_new = s0.clone();
        while rem.len() >= r1.len() {
            let shift = rem.len() - r1.len();
            let factor = rem.last().unwrap() / &lead;
            sub_scaled(&mut rem, &r1, &factor, shift);
            sub_scaled(&mut s_new, &s1, &factor, shift);
            rem.pop();
            trim_rational(&mut rem);
        }
        trim_rational(&mut s_new);
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s_new);
    }
    let c = r1.first().filter(|c| !c.is_zero())?.clone();
    let inv_c = c.recip();
    Some(s1.into_iter().map(|x| x * &inv_c).collect())
}
