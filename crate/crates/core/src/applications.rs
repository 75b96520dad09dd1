//! Consequences of the index formula for concrete pairs (M, Σ): bounds from
//! conformal automorphisms, nonexistence for orientable surfaces in S⁴,
//! admissible self-intersections of non-orientable surfaces, and moduli
//! dimensions for known families.
//!
//! Analytic inputs (unobstructedness, the dimension of H⁰) are never
//! computed; reports list them under `assumptions`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::index::{index_closed_form, index_formula, index_kawasaki, Duality, TopologicalData};
use crate::scalars::{int, to_integer, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    Sphere,
    /// Connected sum of j tori.
    OrientableGenus(u32),
    /// Connected sum of j real projective planes.
    NonOrientable(u32),
}

impl SurfaceKind {
    pub fn euler_char(&self) -> i64 {
        match *self {
            SurfaceKind::Sphere => 2,
            SurfaceKind::OrientableGenus(j) => 2 - 2 * j as i64,
            SurfaceKind::NonOrientable(j) => 2 - j as i64,
        }
    }

    /// Genus 0 and zero crosscaps both mean the sphere.
    fn normalized(self) -> Self {
        match self {
            SurfaceKind::OrientableGenus(0) | SurfaceKind::NonOrientable(0) => SurfaceKind::Sphere,
            k => k,
        }
    }
}

/// Dimension of the conformal automorphism group of Σ with a constant
/// curvature metric.
pub fn conf_dim(k: SurfaceKind) -> i64 {
    match k.normalized() {
        SurfaceKind::Sphere => 6,
        SurfaceKind::OrientableGenus(1) => 2,
        SurfaceKind::OrientableGenus(_) => 0,
        SurfaceKind::NonOrientable(1) => 3,
        SurfaceKind::NonOrientable(2) => 2,
        SurfaceKind::NonOrientable(_) => 0,
    }
}

/// Upper bound for dim H⁰: conformal fields of Σ plus at most 4 from the
/// first prolongation and 1 from the normal rotation.
pub fn h0_bound(k: SurfaceKind) -> i64 {
    conf_dim(k) + 5
}

/// Self-intersections allowed for j#ℝP² in S⁴: −2j, −2j + 4, ..., 2j.
pub fn whitney_massey_values(j: u32) -> Vec<i64> {
    let j = j as i64;
    (-2 * j..=2 * j).step_by(4).collect()
}

fn nonorientable_index(j: u32, s: i64) -> Rational {
    index_formula(2, 0, 2 - j as i64, s, Duality::Sd)
}

/// The largest [Σ]² compatible with an unobstructed self-dual metric on
/// (S⁴, j#ℝP²), as an exact fraction: index(s) ≤ h0_bound.
pub fn self_intersection_upper_bound(j: u32) -> Rational {
    let base = nonorientable_index(j, 0);
    let slope = nonorientable_index(j, 1) - &base;
    (int(h0_bound(SurfaceKind::NonOrientable(j))) - base) / slope
}

pub fn feasible_self_intersections(j: u32) -> Vec<i64> {
    let bound = self_intersection_upper_bound(j);
    whitney_massey_values(j)
        .into_iter()
        .filter(|&s| int(s) <= bound)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Rigid,
    ModuliDimension,
    Nonexistence,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuliReport {
    pub index: i64,
    pub dim_h0: i64,
    pub dim_h1: Option<i64>,
    pub dim_h2: Option<i64>,
    pub verdict: Verdict,
    /// Set when the verdict is `ModuliDimension`.
    pub moduli_dimension: Option<i64>,
    pub assumptions: Vec<String>,
}

impl ModuliReport {
    /// dim H⁰ − dim H¹ + dim H² = index, whenever all three are known.
    pub fn is_consistent(&self) -> bool {
        match (self.dim_h1, self.dim_h2) {
            (Some(h1), Some(h2)) => self.dim_h0 - h1 + h2 == self.index,
            _ => true,
        }
    }
}

fn exact(x: Rational) -> Result<i64> {
    to_integer(&x)
        .and_then(|n| i64::try_from(n).ok())
        .ok_or_else(|| Error::inconsistency(format!("index is not an integer: {x}")))
}

/// (S⁴, genus-j surface with [Σ]² = 0), self-dual. Genus 0 is the sphere,
/// where the bound does not rule anything out.
pub fn orientable_verdict(j: u32) -> Result<ModuliReport> {
    let kind = SurfaceKind::OrientableGenus(j).normalized();
    let index = exact(index_formula(2, 0, kind.euler_char(), 0, Duality::Sd))?;
    let bound = h0_bound(kind);
    let verdict = if index > bound { Verdict::Nonexistence } else { Verdict::Inconclusive };
    Ok(ModuliReport {
        index,
        dim_h0: bound,
        dim_h1: None,
        dim_h2: Some(0),
        verdict,
        moduli_dimension: None,
        assumptions: vec!["unobstructed".into(), format!("dim_h0<={bound}")],
    })
}

/// Self-dual orbifold metrics on S⁴ with cone angle 2π/(k − 2) along an
/// ℝP² with [Σ]² = −2.
pub fn hitchin_report(k: u32) -> Result<ModuliReport> {
    if k < 3 {
        return Err(Error::invalid(format!("Hitchin family needs k >= 3, got {k}")));
    }
    let p = k - 2;
    let (chi, tau, cs, sq) = (2, 0, 1, -2);
    let mut assumptions = vec!["unobstructed".to_string(), "dim_h0=3".to_string()];
    let index = if p >= 2 {
        let d = TopologicalData::new(chi, tau, cs, sq, p)?;
        let kawasaki = index_kawasaki(&d, Duality::Sd)?;
        let closed = index_closed_form(&d, Duality::Sd)?;
        if kawasaki != closed {
            return Err(Error::inconsistency(format!(
                "Kawasaki index {kawasaki} differs from closed form {closed} at p={p}"
            )));
        }
        kawasaki
    } else {
        // Cone angle 2π: the round metric, with the orbifold point of view
        // on ℝP² kept. Use the cone-angle-independent formula.
        assumptions.push("k=3: cone angle 2pi, round metric; index from the cone-angle-independent formula".into());
        exact(index_formula(chi, tau, cs, sq, Duality::Sd))?
    };
    let dim_h0 = 3;
    let dim_h2 = 0;
    let dim_h1 = dim_h0 + dim_h2 - index;
    let verdict = if dim_h1 == 0 { Verdict::Rigid } else { Verdict::ModuliDimension };
    Ok(ModuliReport {
        index,
        dim_h0,
        dim_h1: Some(dim_h1),
        dim_h2: Some(dim_h2),
        verdict,
        moduli_dimension: (verdict == Verdict::ModuliDimension).then_some(dim_h1),
        assumptions,
    })
}

/// Self-dual edge-cone metrics on n#ℂP² along a sphere with [Σ]² = n.
pub fn lebrun_report(n: u32, p: u32) -> Result<ModuliReport> {
    if n < 1 {
        return Err(Error::invalid("LeBrun family needs n >= 1"));
    }
    if p < 2 {
        return Err(Error::invalid("LeBrun family needs cone order p >= 2"));
    }
    let n = n as i64;
    let d = TopologicalData::new(n + 2, n, 2, n, p)?;
    let index = index_closed_form(&d, Duality::Sd)?;
    let dim_h0 = 1;
    let dim_h2 = 0;
    let h1 = dim_h0 + dim_h2 - index;
    let mut assumptions = vec!["unobstructed".to_string(), "dim_h0=1".to_string()];
    let (verdict, moduli_dimension) = if n >= 3 {
        assumptions.push("nearby deformations are S^1-equivariant".into());
        (Verdict::ModuliDimension, Some(h1))
    } else {
        (Verdict::Inconclusive, None)
    };
    Ok(ModuliReport {
        index,
        dim_h0,
        dim_h1: (h1 >= 0).then_some(h1),
        dim_h2: Some(dim_h2),
        verdict,
        moduli_dimension,
        assumptions,
    })
}

/// Dimension of the Ricci-flat moduli near a metric with no parallel
/// vector fields or sections; the caller vouches for those hypotheses.
/// Negative values mean they cannot all hold.
pub fn ricci_flat_moduli_dim(d: &TopologicalData) -> Result<i64> {
    Ok(-index_closed_form(d, Duality::Asd)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceReport {
    pub j: u32,
    pub euler_char: i64,
    pub h0_bound: i64,
    pub massey: Vec<i64>,
    #[serde(with = "crate::scalars::rational_str")]
    pub upper_bound: Rational,
    pub feasible: Vec<i64>,
    pub orientable: ModuliReport,
}

/// Everything known about genus-j surfaces in S⁴: the non-orientable
/// self-intersection filter and the orientable verdict.
pub fn surface_report(j: u32) -> Result<SurfaceReport> {
    if j == 0 {
        return Err(Error::invalid("surface report needs j >= 1"));
    }
    let kind = SurfaceKind::NonOrientable(j);
    let upper_bound = self_intersection_upper_bound(j);
    Ok(SurfaceReport {
        j,
        euler_char: kind.euler_char(),
        h0_bound: h0_bound(kind),
        massey: whitney_massey_values(j),
        upper_bound,
        feasible: feasible_self_intersections(j),
        orientable: orientable_verdict(j)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn automorphism_table() {
        use SurfaceKind::*;
        let table = [
            (Sphere, 6, 11),
            (OrientableGenus(1), 2, 7),
            (OrientableGenus(3), 0, 5),
            (NonOrientable(1), 3, 8),
            (NonOrientable(2), 2, 7),
            (NonOrientable(5), 0, 5),
        ];
        for (k, c, h) in table {
            assert_eq!((conf_dim(k), h0_bound(k)), (c, h), "{k:?}");
        }
        assert_eq!(conf_dim(OrientableGenus(0)), 6);
        assert_eq!(NonOrientable(3).euler_char(), -1);
        assert_eq!(OrientableGenus(2).euler_char(), -2);
    }

    #[test]
    fn massey_values() {
        assert_eq!(whitney_massey_values(1), vec![-2, 2]);
        assert_eq!(whitney_massey_values(2), vec![-4, 0, 4]);
        assert_eq!(whitney_massey_values(3), vec![-6, -2, 2, 6]);
    }

    #[test]
    fn fractional_bounds() {
        assert_eq!(self_intersection_upper_bound(1), rat(-3, 4));
        assert_eq!(self_intersection_upper_bound(2), int(-2));
        for j in 3..=10 {
            assert_eq!(self_intersection_upper_bound(j), rat(-1 - 2 * j as i64, 2));
        }
    }

    #[test]
    fn feasible_examples() {
        assert_eq!(feasible_self_intersections(1), vec![-2]);
        assert_eq!(feasible_self_intersections(2), vec![-4]);
        assert_eq!(feasible_self_intersections(5), vec![-10, -6]);
    }

    #[test]
    fn orientable_examples() {
        let r = orientable_verdict(1).unwrap();
        assert_eq!((r.index, r.dim_h0, r.verdict), (15, 7, Verdict::Nonexistence));
        let r = orientable_verdict(2).unwrap();
        assert_eq!((r.index, r.dim_h0, r.verdict), (23, 5, Verdict::Nonexistence));
        let r = orientable_verdict(0).unwrap();
        assert_eq!((r.index, r.dim_h0, r.verdict), (7, 11, Verdict::Inconclusive));
    }

    #[test]
    fn hitchin_examples() {
        for k in [3, 4, 7, 12] {
            let r = hitchin_report(k).unwrap();
            assert_eq!((r.index, r.dim_h1, r.verdict), (3, Some(0), Verdict::Rigid), "k={k}");
            assert!(r.is_consistent());
        }
        assert_eq!(hitchin_report(3).unwrap().assumptions.len(), 3);
        assert!(hitchin_report(2).is_err());
    }

    #[test]
    fn lebrun_examples() {
        let r = lebrun_report(3, 2).unwrap();
        assert_eq!((r.index, r.dim_h1, r.moduli_dimension), (-2, Some(3), Some(3)));
        let r = lebrun_report(5, 7).unwrap();
        assert_eq!((r.index, r.moduli_dimension), (-8, Some(9)));
        let r = lebrun_report(2, 3).unwrap();
        assert_eq!((r.index, r.verdict), (1, Verdict::Inconclusive));
        assert!(r.is_consistent());
        assert_eq!(lebrun_report(1, 3).unwrap().dim_h1, None);
        assert!(lebrun_report(3, 1).is_err());
    }

    #[test]
    fn ricci_flat_examples() {
        let d = TopologicalData::new(2, 0, 2, 0, 3).unwrap();
        assert_eq!(ricci_flat_moduli_dim(&d).unwrap(), -7);
        let d = TopologicalData::new(24, -16, 2, -4, 2).unwrap();
        assert_eq!(ricci_flat_moduli_dim(&d).unwrap(), 44);
    }

    #[test]
    fn report_json() {
        let v = serde_json::to_value(lebrun_report(4, 3).unwrap()).unwrap();
        assert_eq!(v["verdict"], "moduli_dimension");
        assert_eq!(v["moduli_dimension"], 6);
        assert_eq!(v["assumptions"][0], "unobstructed");
        let v = serde_json::to_value(surface_report(1).unwrap()).unwrap();
        assert_eq!(v["upper_bound"], "-3/4");
        assert_eq!(v["feasible"], serde_json::json!([-2]));
    }
}
