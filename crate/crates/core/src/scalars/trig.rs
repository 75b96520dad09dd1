//! Sums of trigonometric values over the nontrivial elements of Z/p.
//!
//! The brute-force route builds every term as an exact element of the group
//! ring Q[x]/(x^p − 1), sums, and maps the total into Q(ζ_p). That map is a
//! ring homomorphism, so summing before reducing gives the same element as
//! reducing each term. The closed forms are checked against it.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use super::{as_rational, rat, rational_str, Cyclotomic, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrigSums {
    /// Σ cos θ_j
    #[serde(with = "rational_str")]
    pub sum_cos: Rational,
    /// Σ cos² θ_j
    #[serde(with = "rational_str")]
    pub sum_cos_sq: Rational,
    /// Σ 1/(1 − cos θ_j)
    #[serde(with = "rational_str")]
    pub sum_inv_one_minus_cos: Rational,
}

/// Group-ring representative of 1/(1 − cos θ) for θ = 2πj/p, scaled by m,
/// where m is the order of ζ^j. Entry `i` is the coefficient of x^{ij}.
///
/// Solves the cyclic second-difference equation
/// `2y_i − y_{i−1} − y_{i+1} = 2m·[i = 0] − 2`; its solution is
/// `y_i = −i(m − i)`. The constant defect −2 is a multiple of Σ ζ^{ij},
/// which vanishes in the field.
fn scaled_inverse_term(m: i64) -> Vec<i64> {
    (0..m).map(|i| -i * (m - i)).collect()
}

fn check_inverse_term(y: &[i64]) -> bool {
    let m = y.len();
    (0..m).all(|i| {
        let lhs = 2 * y[i] - y[(i + m - 1) % m] - y[(i + 1) % m];
        let rhs = if i == 0 { 2 * m as i64 - 2 } else { -2 };
        lhs == rhs
    })
}

fn to_field(p: u32, acc: &[i64], den: i64) -> Cyclotomic {
    let v = acc.iter().map(|&c| BigInt::from(c)).collect();
    Cyclotomic::from_group_ring(p, v, BigInt::from(den))
}

/// Sums each term over j = 1..p−1 individually and verifies rationality.
pub fn trig_sums_brute_force(p: u32) -> Result<TrigSums> {
    if p < 2 {
        return Err(Error::invalid("trigonometric sums need p >= 2"));
    }
    let n = p as usize;
    let pi = p as i64;
    let mut cos_acc = vec![0i64; n];
    let mut cos_sq_acc = vec![0i64; n];
    // One accumulator per element order m, since the scaled terms share a
    // denominator m.
    let mut inv_acc: Vec<Option<Vec<i64>>> = vec![None; n + 1];
    for j in 1..pi {
        cos_acc[j as usize] += 1;
        cos_acc[(pi - j) as usize] += 1;

        cos_sq_acc[((2 * j) % pi) as usize] += 1;
        cos_sq_acc[0] += 2;
        cos_sq_acc[((2 * (pi - j)) % pi) as usize] += 1;

        let m = pi / j.gcd(&pi);
        let y = scaled_inverse_term(m);
        if !check_inverse_term(&y) {
            return Err(Error::inconsistency(format!("bad inverse term at p={p}, j={j}")));
        }
        let acc = inv_acc[m as usize].get_or_insert_with(|| vec![0i64; n]);
        for (i, yi) in y.iter().enumerate() {
            acc[((i as i64 * j) % pi) as usize] += yi;
        }
    }

    let sum_cos = as_rational(&to_field(p, &cos_acc, 2))?;
    let sum_cos_sq = as_rational(&to_field(p, &cos_sq_acc, 4))?;
    let mut inv_total = Cyclotomic::zero(p);
    for (m, acc) in inv_acc.iter().enumerate() {
        if let Some(acc) = acc {
            inv_total = inv_total.try_add(&to_field(p, acc, m as i64))?;
        }
    }
    Ok(TrigSums {
        sum_cos,
        sum_cos_sq,
        sum_inv_one_minus_cos: as_rational(&inv_total)?,
    })
}

/// Σ cos = −1, Σ 1/(1 − cos) = (p² − 1)/6, and Σ cos² = (p − 2)/2 for
/// p ≥ 3. At p = 2 the doubled angle 2θ = 2π is trivial and Σ cos² = 1.
pub fn trig_sums_closed_form(p: u32) -> Result<TrigSums> {
    if p < 2 {
        return Err(Error::invalid("trigonometric sums need p >= 2"));
    }
    let p = p as i64;
    // cos² = (1 + cos 2θ)/2, and Σ cos 2θ_j is p − 1 when p | 2, else −1.
    let sum_cos_double = if p == 2 { p - 1 } else { -1 };
    Ok(TrigSums {
        sum_cos: rat(-1, 1),
        sum_cos_sq: rat(p - 1 + sum_cos_double, 2),
        sum_inv_one_minus_cos: rat(p * p - 1, 6),
    })
}

/// Computes the sums both ways and fails unless they agree exactly.
pub fn trig_sums(p: u32) -> Result<TrigSums> {
    let brute = trig_sums_brute_force(p)?;
    let closed = trig_sums_closed_form(p)?;
    if brute != closed {
        return Err(Error::inconsistency(format!(
            "trigonometric sums disagree at p={p}: {brute:?} vs {closed:?}"
        )));
    }
    Ok(brute)
}
