//! Word-sized prime field arithmetic used by the multi-modular inverse.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[inline]
fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, q: u64) -> u64 {
    let mut acc = 1u64;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, q);
        }
        base = mul_mod(base, base, q);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, q: u64) -> u64 {
    pow_mod(a, q - 2, q)
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) const PRIME_COUNT: usize = 48;

/// The largest primes below 2^62, descending.
pub(crate) fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_COUNT);
        let mut n = (1u64 << 62) - 1;
        while out.len() < PRIME_COUNT {
            if is_prime_u64(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

pub(crate) fn reduce_big(x: &BigInt, q: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(q));
    r.to_u64().expect("residue fits in u64")
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Inverse of `a` modulo `m` in F_q[x]; `None` if they share a factor.
pub(crate) fn poly_inverse_mod(a: &[u64], m: &[u64], q: u64) -> Option<Vec<u64>> {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0: Vec<u64> = Vec::new();
    let mut s1: Vec<u64> = vec![1];
    while r1.len() > 1 {
        let lead_inv = inv_mod(*r1.last().unwrap(), q);
        let mut rem = r0;
        let mut s_new = s0;
        while rem.len() >= r1.len() {
            let shift = rem.len() - r1.len();
            let f = mul_mod(*rem.last().unwrap(), lead_inv, q);
            if f != 0 {
                for (i, &c) in r1.iter().enumerate() {
                    let t = mul_mod(c, f, q);
                    rem[i + shift] = (rem[i + shift] + q - t) % q;
                }
                if s_new.len() < s1.len() + shift {
                    s_new.resize(s1.len() + shift, 0);
                }
                for (i, &c) in s1.iter().enumerate() {
                    let t = mul_mod(c, f, q);
                    s_new[i + shift] = (s_new[i + shift] + q - t) % q;
                }
            }
            rem.pop();
            trim(&mut rem);
        }
        trim(&mut s_new);
        r0 = std::mem::replace(&mut r1, rem);
        s0 = std::mem::replace(&mut s1, s_new);
    }
    let c = *r1.first()?;
    if c == 0 {
        return None;
    }
    let ci = inv_mod(c, q);
    Some(s1.into_iter().map(|x| mul_mod(x, ci, q)).collect())
}

/// Combines residues `r mod modulus` with `s mod q` into residues modulo
/// `modulus * q`, in place.
pub(crate) fn crt_accumulate(residues: &mut [BigInt], modulus: &mut BigInt, s: &[u64], q: u64) {
    let m_mod_q = reduce_big(modulus, q);
    let m_inv = inv_mod(m_mod_q, q);
    for (i, r) in residues.iter_mut().enumerate() {
        let si = s.get(i).copied().unwrap_or(0);
        let r_mod_q = reduce_big(r, q);
        let diff = (si + q - r_mod_q) % q;
        let k = mul_mod(diff, m_inv, q);
        *r += &*modulus * BigInt::from(k);
    }
    *modulus *= BigInt::from(q);
}

/// Rational reconstruction: finds `n/d` with `|n|, d <= sqrt(m/2)` and
/// `n ≡ u d (mod m)`, or `None` if no such fraction exists.
pub(crate) fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    if t1.is_negative() {
        Some((-r1, -t1))
    } else {
        Some((r1, t1))
    }
}
