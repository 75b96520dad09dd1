//! Index of the (anti-)self-dual deformation complex on an orbifold-cone
//! four-manifold.
//!
//! Two independent routes: the Kawasaki fixed-point formula, which sums the
//! per-element corrections exactly in Q(ζ_p), and the closed forms in which
//! the cone order has already cancelled. Their agreement is the main
//! consistency check of the engine.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bundles::{ch_symbol, ch_thom, Character, GroupElement};
use crate::cohomology::{a_hat_squared, CohomElement, PairingData};
use crate::error::{Error, Result};
use crate::scalars::{int, rat, rational_str, to_integer, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Duality {
    Asd,
    Sd,
}

impl fmt::Display for Duality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Duality::Asd => "asd",
            Duality::Sd => "sd",
        })
    }
}

impl FromStr for Duality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "asd" => Ok(Duality::Asd),
            "sd" => Ok(Duality::Sd),
            _ => Err(Error::Parse(format!("unknown duality `{s}` (expected asd or sd)"))),
        }
    }
}

/// Topology of the pair (M, Σ) together with the cone order p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TopologicalData {
    pub chi_m: i64,
    pub tau_m: i64,
    pub chi_sigma: i64,
    pub sigma_sq: i64,
    pub p: u32,
}

impl TopologicalData {
    pub fn new(chi_m: i64, tau_m: i64, chi_sigma: i64, sigma_sq: i64, p: u32) -> Result<Self> {
        if p == 0 {
            return Err(Error::invalid("cone order p must be at least 1"));
        }
        Ok(TopologicalData { chi_m, tau_m, chi_sigma, sigma_sq, p })
    }

    /// [Σ̂]² = [Σ]²/p
    pub fn sigma_hat_sq(&self) -> Rational {
        rat(self.sigma_sq, self.p as i64)
    }

    pub fn pairing(&self) -> PairingData {
        PairingData::new(self.chi_sigma, self.sigma_hat_sq())
    }

    /// The same data with orientation reversed: (τ, [Σ]²) ↦ (−τ, −[Σ]²).
    pub fn reversed(&self) -> Self {
        TopologicalData {
            tau_m: -self.tau_m,
            sigma_sq: -self.sigma_sq,
            ..self.clone()
        }
    }

    fn as_asd(&self, dual: Duality) -> Self {
        match dual {
            Duality::Asd => self.clone(),
            Duality::Sd => self.reversed(),
        }
    }
}

/// Degree-2 coefficients of the averaged correction term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrectionSum {
    #[serde(rename = "e", with = "rational_str")]
    pub coeff_e: Rational,
    #[serde(rename = "h", with = "rational_str")]
    pub coeff_h: Rational,
}

impl CorrectionSum {
    pub fn zero() -> Self {
        CorrectionSum {
            coeff_e: Rational::zero(),
            coeff_h: Rational::zero(),
        }
    }

    /// ⟨coeff_e·e + coeff_h·ĥ, [Σ]⟩
    pub fn pair(&self, d: &PairingData) -> Rational {
        &self.coeff_e * int(d.chi_sigma) + &self.coeff_h * &d.sigma_hat_sq
    }
}

/// Which character constructors feed the fixed-point term. The faulty
/// variant exists so the verification suites can be shown to catch errors.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Pipeline {
    #[default]
    Standard,
    /// Thom character with the sign of its moving part flipped.
    ThomSignFault,
}

impl Pipeline {
    pub fn symbol(&self, g: &GroupElement) -> Result<Character> {
        ch_symbol(g)
    }

    pub fn thom(&self, g: &GroupElement) -> Result<Character> {
        let t = ch_thom(g)?;
        match self {
            Pipeline::Standard => Ok(t),
            Pipeline::ThomSignFault => {
                let two = Character::one(g.p()).scale(&int(2));
                two.sub(&t)?.add(&two)
            }
        }
    }
}

/// ch_γ(i*σ) / (ch_γ(λ₋₁N*)·e) · Â(Σ)² for a non-identity γ.
pub fn correction_at(g: &GroupElement) -> Result<Character> {
    correction_at_with(&Pipeline::default(), g)
}

pub fn correction_at_with(pipeline: &Pipeline, g: &GroupElement) -> Result<Character> {
    if g.is_identity() {
        return Err(Error::invalid("the identity element has no fixed-point correction"));
    }
    correction_from(&pipeline.symbol(g)?, &pipeline.thom(g)?)
}

fn correction_from(symbol: &Character, thom: &Character) -> Result<Character> {
    let quotient = symbol.divide_by_e()?;
    let thom_inv = thom.invert_unit()?;
    quotient.mul(&thom_inv)?.mul(&a_hat_squared(symbol.order()))
}

/// The characters at γ_j, obtained from those at γ_1 by x ↦ x^j on their
/// group-ring representatives. Both are polynomials in ζ with rational
/// coefficients, so this is evaluation of the same expression at ζ^j.
struct GenericCharacters {
    symbol: Character,
    thom: Character,
}

impl GenericCharacters {
    fn new(pipeline: &Pipeline, p: u32) -> Result<Self> {
        let g = GroupElement::new(p, 1)?;
        Ok(GenericCharacters {
            symbol: pipeline.symbol(&g)?,
            thom: pipeline.thom(&g)?,
        })
    }

    fn correction_at(&self, j: u32) -> Result<Character> {
        let at = |x: &Character| x.map(|c| c.substitute_power(j as i64));
        correction_from(&at(&self.symbol), &at(&self.thom))
    }
}

/// (1/p) Σ_{j=1}^{p−1} correction_at(γ_j), with every coordinate checked to
/// be rational.
pub fn correction_sum_element_with(pipeline: &Pipeline, p: u32) -> Result<CohomElement<Rational>> {
    if p == 0 {
        return Err(Error::invalid("cone order p must be at least 1"));
    }
    if p == 1 {
        return Ok(CohomElement::zero(()));
    }
    let generic = GenericCharacters::new(pipeline, p)?;
    let total = (1..p)
        .into_par_iter()
        .map(|j| generic.correction_at(j))
        .try_reduce(|| Character::zero(p), |a, b| a.add(&b))?;
    let total = total.to_rational().map_err(|_| {
        Error::inconsistency(format!("summed correction at p={p} is not rational"))
    })?;
    Ok(total.scale(&rat(1, p as i64)))
}

fn cache() -> &'static Mutex<HashMap<u32, CohomElement<Rational>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, CohomElement<Rational>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Summed correction for the standard pipeline, memoized per p.
pub fn correction_sum_element(p: u32) -> Result<CohomElement<Rational>> {
    if let Some(x) = cache().lock().unwrap().get(&p) {
        return Ok(x.clone());
    }
    let x = correction_sum_element_with(&Pipeline::default(), p)?;
    cache().lock().unwrap().insert(p, x.clone());
    Ok(x)
}

pub fn correction_sum(p: u32) -> Result<CorrectionSum> {
    let x = correction_sum_element(p)?;
    Ok(CorrectionSum { coeff_e: x.ce, coeff_h: x.ch })
}

pub fn correction_sum_with(pipeline: &Pipeline, p: u32) -> Result<CorrectionSum> {
    let x = correction_sum_element_with(pipeline, p)?;
    Ok(CorrectionSum { coeff_e: x.ce, coeff_h: x.ch })
}

/// (−(7p − 15)/(2p), (4 − (5/6)(p² − 1))/p)
pub fn correction_sum_closed_form(p: u32) -> Result<CorrectionSum> {
    if p < 2 {
        return Err(Error::invalid("the closed form for the correction sum needs p >= 2"));
    }
    let p = p as i64;
    let h = (int(4) - rat(5, 6) * int(p * p - 1)) / int(p);
    Ok(CorrectionSum {
        coeff_e: rat(-(7 * p - 15), 2 * p),
        coeff_h: h,
    })
}

/// (1/2)(15χ ± 29τ), the index on a smooth manifold.
pub fn index_smooth(chi_m: i64, tau_m: i64, dual: Duality) -> Rational {
    let tau = match dual {
        Duality::Asd => tau_m,
        Duality::Sd => -tau_m,
    };
    rat(15 * chi_m + 29 * tau, 2)
}

/// Theorem-level formula with the cone order eliminated:
/// (1/2)(15χ ± 29τ) − 4χ(Σ) ∓ 4[Σ]².
pub fn index_formula(chi_m: i64, tau_m: i64, chi_sigma: i64, sigma_sq: i64, dual: Duality) -> Rational {
    let sq = match dual {
        Duality::Asd => sigma_sq,
        Duality::Sd => -sigma_sq,
    };
    index_smooth(chi_m, tau_m, dual) - int(4 * chi_sigma) - int(4 * sq)
}

fn integral(x: Rational, what: &str) -> Result<i64> {
    to_integer(&x)
        .and_then(|n| i64::try_from(n).ok())
        .ok_or_else(|| Error::inconsistency(format!("{what} is not an integer: {x}")))
}

/// Index via the Kawasaki formula with the correction summed by brute force.
pub fn index_kawasaki(d: &TopologicalData, dual: Duality) -> Result<i64> {
    index_kawasaki_with(&Pipeline::default(), d, dual)
}

pub fn index_kawasaki_with(pipeline: &Pipeline, d: &TopologicalData, dual: Duality) -> Result<i64> {
    let d = d.as_asd(dual);
    let p = d.p as i64;
    let correction = if d.p == 1 {
        CorrectionSum::zero()
    } else if *pipeline == Pipeline::Standard {
        correction_sum(d.p)?
    } else {
        correction_sum_with(pipeline, d.p)?
    };
    let pairing = d.pairing();
    let value = index_smooth(d.chi_m, d.tau_m, Duality::Asd)
        - rat(15, 2) * (Rational::one() - rat(1, p)) * int(d.chi_sigma)
        - rat(29, 6) * rat(p * p - 1, p) * &pairing.sigma_hat_sq
        - correction.pair(&pairing);
    integral(value, "Kawasaki index")
}

/// Index from the closed form; only meaningful for a genuine cone (p ≥ 2).
pub fn index_closed_form(d: &TopologicalData, dual: Duality) -> Result<i64> {
    if d.p < 2 {
        return Err(Error::invalid(
            "the closed form needs p >= 2; at p = 1 the metric is smooth, use the smooth formula or the Kawasaki route",
        ));
    }
    integral(index_formula(d.chi_m, d.tau_m, d.chi_sigma, d.sigma_sq, dual), "closed-form index")
}

fn check_beta(beta: &Rational) -> Result<()> {
    if *beta <= Rational::zero() {
        return Err(Error::invalid(format!("cone angle parameter beta must be positive, got {beta}")));
    }
    Ok(())
}

/// χ_orb = χ(M) − (1 − β)χ(Σ)
pub fn chi_orb(chi_m: i64, beta: &Rational, chi_sigma: i64) -> Result<Rational> {
    check_beta(beta)?;
    Ok(int(chi_m) - (Rational::one() - beta) * int(chi_sigma))
}

/// τ_orb = τ(M) − (1/3)(1 − β²)[Σ]²
pub fn tau_orb(tau_m: i64, beta: &Rational, sigma_sq: i64) -> Result<Rational> {
    check_beta(beta)?;
    Ok(int(tau_m) - rat(1, 3) * (Rational::one() - beta * beta) * int(sigma_sq))
}
