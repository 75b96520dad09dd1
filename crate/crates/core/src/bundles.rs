//! Equivariant Chern characters of the bundles restricted to the singular
//! surface, evaluated at a single element of the cyclic isotropy group.
//!
//! Along Σ the complexified cotangent bundle splits into line bundles
//! Θ₁ ⊕ Θ̄₁ (tangent directions, trivial action) and Θ₂ ⊕ Θ̄₂ (normal
//! directions, acted on by e^{±iθ}). Every other character is assembled
//! from these by sums and truncated products.

use serde::Serialize;

use crate::cohomology::{exp_class, CohomElement};
use crate::error::{Error, Result};
use crate::scalars::{int, zeta_power, Cyclotomic};

/// Characters take values in the truncated ring over Q(ζ_p).
pub type Character = CohomElement<Cyclotomic>;

/// γ_j, acting by rotation through θ = 2πj/p in the normal plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GroupElement {
    p: u32,
    j: u32,
}

impl GroupElement {
    pub fn new(p: u32, j: u32) -> Result<Self> {
        if p == 0 {
            return Err(Error::invalid("group order must be positive"));
        }
        if j >= p {
            return Err(Error::invalid(format!("group element index {j} out of range for order {p}")));
        }
        Ok(GroupElement { p, j })
    }

    pub fn identity(p: u32) -> Result<Self> {
        Self::new(p, 0)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn is_identity(&self) -> bool {
        self.j == 0
    }

    /// The inverse element γ_{p−j}.
    pub fn inverse(&self) -> Self {
        GroupElement {
            p: self.p,
            j: (self.p - self.j) % self.p,
        }
    }

    /// e^{ikθ} as an exact cyclotomic number.
    pub fn phase(&self, k: i64) -> Cyclotomic {
        zeta_power(self.p, k * self.j as i64)
    }

    /// All non-identity elements γ_1, ..., γ_{p−1}.
    pub fn nontrivial(p: u32) -> impl Iterator<Item = GroupElement> {
        (1..p).map(move |j| GroupElement { p, j })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LineBundleId {
    Theta1,
    Theta1Bar,
    Theta2,
    Theta2Bar,
    Trivial,
}

fn constant(g: &GroupElement, n: i64) -> Character {
    Character::constant(Cyclotomic::from_rational(g.p, &int(n)))
}

pub fn ch_line(id: LineBundleId, g: &GroupElement) -> Result<Character> {
    let p = g.p;
    let scalar = |n: i64| Cyclotomic::from_rational(p, &int(n));
    match id {
        LineBundleId::Theta1 => exp_class(&scalar(1), &scalar(0)),
        LineBundleId::Theta1Bar => exp_class(&scalar(-1), &scalar(0)),
        LineBundleId::Theta2 => exp_class(&scalar(0), &scalar(1))?.scalar_mul(&g.phase(1)),
        LineBundleId::Theta2Bar => exp_class(&scalar(0), &scalar(-1))?.scalar_mul(&g.phase(-1)),
        LineBundleId::Trivial => Ok(Character::one(p)),
    }
}

fn tensor(a: LineBundleId, b: LineBundleId, g: &GroupElement) -> Result<Character> {
    ch_line(a, g)?.mul(&ch_line(b, g)?)
}

/// Any of the character constructors below.
pub type Constructor = fn(&GroupElement) -> Result<Character>;

/// ch_γ(N*_ℂ) = ch_γ(Θ₂) + ch_γ(Θ̄₂)
fn ch_conormal(g: &GroupElement) -> Result<Character> {
    ch_line(LineBundleId::Theta2, g)?.add(&ch_line(LineBundleId::Theta2Bar, g)?)
}

/// ch_γ(T*_ℂ ⊕ N*_ℂ), the restriction of the complexified cotangent bundle.
pub fn ch_cotangent(g: &GroupElement) -> Result<Character> {
    use LineBundleId::*;
    ch_line(Theta1, g)?.add(&ch_line(Theta1Bar, g)?)?.add(&ch_conormal(g)?)
}

/// Θ₁⊗Θ₂ ⊕ Θ̄₁⊗Θ̄₂, the non-trivial part of Λ²₊.
fn ch_lambda_plus_moving(g: &GroupElement) -> Result<Character> {
    use LineBundleId::*;
    tensor(Theta1, Theta2, g)?.add(&tensor(Theta1Bar, Theta2Bar, g)?)
}

/// Λ²₊ = ℂ₊ ⊕ Θ₁⊗Θ₂ ⊕ Θ̄₁⊗Θ̄₂
pub fn ch_lambda_plus(g: &GroupElement) -> Result<Character> {
    constant(g, 1).add(&ch_lambda_plus_moving(g)?)
}

/// Λ²₋ = ℂ₋ ⊕ Θ̄₁⊗Θ₂ ⊕ Θ₁⊗Θ̄₂
pub fn ch_lambda_minus(g: &GroupElement) -> Result<Character> {
    use LineBundleId::*;
    constant(g, 1)
        .add(&tensor(Theta1Bar, Theta2, g)?)?
        .add(&tensor(Theta1, Theta2Bar, g)?)
}

/// S²₀T*M ≅ Λ²₊ ⊗ Λ²₋
pub fn ch_s20_cotangent(g: &GroupElement) -> Result<Character> {
    ch_lambda_plus(g)?.mul(&ch_lambda_minus(g)?)
}

/// S²₀Λ²₊ = V ⊕ S²₀V ⊕ ℂ_tr with V = Θ₁⊗Θ₂ ⊕ Θ̄₁⊗Θ̄₂, and
/// ch(S²₀V) taken as ch(V)² − 2.
pub fn ch_s20_lambda_plus(g: &GroupElement) -> Result<Character> {
    let v = ch_lambda_plus_moving(g)?;
    let middle = v.mul(&v)?.sub(&constant(g, 2))?;
    v.add(&middle)?.add(&constant(g, 1))
}

/// ch_γ(i*σ) for the pulled-back symbol of the deformation complex.
pub fn ch_symbol(g: &GroupElement) -> Result<Character> {
    ch_cotangent(g)?
        .sub(&ch_s20_cotangent(g)?)?
        .add(&ch_s20_lambda_plus(g)?)
}

/// ch_γ(λ₋₁N*_ℂ) = 2 − ch_γ(N*_ℂ), the K-theoretic Thom class.
pub fn ch_thom(g: &GroupElement) -> Result<Character> {
    constant(g, 2).sub(&ch_conormal(g)?)
}

/// Every character at `g` in JSON form, for debugging.
pub fn dump_characters(g: &GroupElement) -> Result<serde_json::Value> {
    let mut out = serde_json::Map::new();
    out.insert("p".into(), g.p.into());
    out.insert("j".into(), g.j.into());
    let entries: [(&str, Constructor); 7] = [
        ("cotangent", ch_cotangent),
        ("lambda_plus", ch_lambda_plus),
        ("lambda_minus", ch_lambda_minus),
        ("s20_cotangent", ch_s20_cotangent),
        ("s20_lambda_plus", ch_s20_lambda_plus),
        ("symbol", ch_symbol),
        ("thom", ch_thom),
    ];
    for (name, f) in entries {
        out.insert(name.into(), serde_json::to_value(f(g)?).expect("serializable"));
    }
    Ok(serde_json::Value::Object(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{cos_of, rat, sin_times_i_of, Rational};

    fn g(p: u32, j: u32) -> GroupElement {
        GroupElement::new(p, j).unwrap()
    }

    fn c(p: u32, n: i64, d: i64) -> Cyclotomic {
        Cyclotomic::from_rational(p, &rat(n, d))
    }

    fn rational_char(p: u32, coeffs: [(i64, i64); 6]) -> Character {
        Character::from_rationals(p, coeffs.map(|(n, d)| rat(n, d)))
    }

    /// Linear combination α + β·cos θ + γ·cos² θ + δ·i sin θ + ε·i sin θ cos θ.
    fn trig_poly(p: u32, j: u32, coeffs: [i64; 5]) -> Cyclotomic {
        let cos = cos_of(p, j as i64);
        let isin = sin_times_i_of(p, j as i64);
        let terms = [
            Cyclotomic::one(p),
            cos.clone(),
            cos.try_mul(&cos).unwrap(),
            isin.clone(),
            isin.try_mul(&cos).unwrap(),
        ];
        terms
            .iter()
            .zip(coeffs)
            .fold(Cyclotomic::zero(p), |acc, (t, k)| acc.try_add(&t.scale(&int(k))).unwrap())
    }

    #[test]
    fn group_element_validation() {
        assert!(GroupElement::new(0, 0).is_err());
        assert!(GroupElement::new(5, 5).is_err());
        assert_eq!(g(5, 2).inverse(), g(5, 3));
        assert_eq!(g(5, 0).inverse(), g(5, 0));
        assert_eq!(GroupElement::nontrivial(4).count(), 3);
    }

    #[test]
    fn line_characters() {
        assert_eq!(
            ch_line(LineBundleId::Theta1, &g(7, 3)).unwrap(),
            rational_char(7, [(1, 1), (1, 1), (0, 1), (1, 2), (0, 1), (0, 1)])
        );
        assert_eq!(
            ch_line(LineBundleId::Theta2, &g(2, 1)).unwrap(),
            rational_char(2, [(-1, 1), (0, 1), (-1, 1), (0, 1), (0, 1), (-1, 2)])
        );
        assert_eq!(
            ch_line(LineBundleId::Theta2Bar, &g(3, 0)).unwrap(),
            rational_char(3, [(1, 1), (0, 1), (-1, 1), (0, 1), (0, 1), (1, 2)])
        );
        assert_eq!(ch_line(LineBundleId::Trivial, &g(3, 1)).unwrap(), Character::one(3));
    }

    #[test]
    fn cotangent_examples() {
        assert_eq!(ch_cotangent(&g(5, 0)).unwrap(), rational_char(5, [(4, 1), (0, 1), (0, 1), (1, 1), (0, 1), (1, 1)]));
        assert_eq!(ch_cotangent(&g(2, 1)).unwrap(), rational_char(2, [(0, 1), (0, 1), (0, 1), (1, 1), (0, 1), (-1, 1)]));
    }

    #[test]
    fn lambda_characters_match_displayed_expansions() {
        for (p, j) in [(5u32, 1u32), (7, 3), (12, 5), (9, 2)] {
            let plus = ch_lambda_plus(&g(p, j)).unwrap();
            // 1 + cos(2 + 2eĥ + e² + ĥ²) + i sin(2e + 2ĥ)
            assert_eq!(plus.c0, trig_poly(p, j, [1, 2, 0, 0, 0]));
            assert_eq!(plus.ce, trig_poly(p, j, [0, 0, 0, 2, 0]));
            assert_eq!(plus.ch, trig_poly(p, j, [0, 0, 0, 2, 0]));
            assert_eq!(plus.ceh, trig_poly(p, j, [0, 2, 0, 0, 0]));
            assert_eq!(plus.cee, trig_poly(p, j, [0, 1, 0, 0, 0]));
            assert_eq!(plus.chh, trig_poly(p, j, [0, 1, 0, 0, 0]));

            let minus = ch_lambda_minus(&g(p, j)).unwrap();
            // 1 + cos(2 − 2eĥ + e² + ĥ²) + i sin(−2e + 2ĥ)
            assert_eq!(minus.c0, trig_poly(p, j, [1, 2, 0, 0, 0]));
            assert_eq!(minus.ce, trig_poly(p, j, [0, 0, 0, -2, 0]));
            assert_eq!(minus.ch, trig_poly(p, j, [0, 0, 0, 2, 0]));
            assert_eq!(minus.ceh, trig_poly(p, j, [0, -2, 0, 0, 0]));
            assert_eq!(minus.cee, trig_poly(p, j, [0, 1, 0, 0, 0]));
            assert_eq!(minus.chh, trig_poly(p, j, [0, 1, 0, 0, 0]));
        }
    }

    #[test]
    fn s20_cotangent_matches_displayed_expansion() {
        for (p, j) in [(5u32, 2u32), (8, 3), (11, 1)] {
            let x = ch_s20_cotangent(&g(p, j)).unwrap();
            assert_eq!(x.c0, trig_poly(p, j, [1, 4, 4, 0, 0]));
            assert_eq!(x.ch, trig_poly(p, j, [0, 0, 0, 4, 8]));
            assert_eq!(x.cee, trig_poly(p, j, [4, 2, 0, 0, 0]));
            assert_eq!(x.chh, trig_poly(p, j, [-4, 2, 8, 0, 0]));
        }
        assert_eq!(ch_s20_cotangent(&g(4, 0)).unwrap().c0, c(4, 9, 1));
    }

    #[test]
    fn s20_lambda_plus_matches_displayed_expansion() {
        for (p, j) in [(5u32, 2u32), (8, 3), (13, 6)] {
            let x = ch_s20_lambda_plus(&g(p, j)).unwrap();
            assert_eq!(x.c0, trig_poly(p, j, [-1, 2, 4, 0, 0]));
            assert_eq!(x.ce, trig_poly(p, j, [0, 0, 0, 2, 8]));
            assert_eq!(x.ch, trig_poly(p, j, [0, 0, 0, 2, 8]));
            assert_eq!(x.ceh, trig_poly(p, j, [-8, 2, 16, 0, 0]));
            assert_eq!(x.cee, trig_poly(p, j, [-4, 1, 8, 0, 0]));
            assert_eq!(x.chh, trig_poly(p, j, [-4, 1, 8, 0, 0]));
        }
        assert_eq!(ch_s20_lambda_plus(&g(3, 0)).unwrap().c0, c(3, 5, 1));
    }

    #[test]
    fn symbol_matches_displayed_expansion() {
        for (p, j) in [(5u32, 1u32), (6, 5), (10, 3), (17, 8)] {
            let x = ch_symbol(&g(p, j)).unwrap();
            assert!(x.c0.is_zero());
            assert!(x.ch.is_zero());
            assert!(x.chh.is_zero());
            assert_eq!(x.ce, trig_poly(p, j, [0, 0, 0, 2, 8]));
            assert_eq!(x.ceh, trig_poly(p, j, [-8, 2, 16, 0, 0]));
            assert_eq!(x.cee, trig_poly(p, j, [-7, -1, 8, 0, 0]));
        }
        // cos θ = −1, sin θ = 0
        assert_eq!(ch_symbol(&g(2, 1)).unwrap(), rational_char(2, [(0, 1), (0, 1), (0, 1), (2, 1), (6, 1), (0, 1)]));
    }

    #[test]
    fn thom_examples() {
        assert_eq!(ch_thom(&g(2, 1)).unwrap(), rational_char(2, [(4, 1), (0, 1), (0, 1), (0, 1), (0, 1), (1, 1)]));
        assert_eq!(ch_thom(&g(6, 0)).unwrap(), rational_char(6, [(0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (-1, 1)]));
        let x = ch_thom(&g(4, 1)).unwrap();
        let expected = Character::new(
            c(4, 2, 1),
            c(4, 0, 1),
            zeta_power(4, 1).scale(&int(-2)),
            c(4, 0, 1),
            c(4, 0, 1),
            c(4, 0, 1),
        );
        assert_eq!(x, expected);
    }

    #[test]
    fn ranks_at_identity() {
        let id = g(7, 0);
        let rank = |x: Character| x.c0.to_rational().unwrap();
        assert_eq!(rank(ch_cotangent(&id).unwrap()), int(4));
        assert_eq!(rank(ch_lambda_plus(&id).unwrap()), int(3));
        assert_eq!(rank(ch_lambda_minus(&id).unwrap()), int(3));
        assert_eq!(rank(ch_s20_cotangent(&id).unwrap()), int(9));
        assert_eq!(rank(ch_s20_lambda_plus(&id).unwrap()), int(5));
        assert_eq!(rank(ch_symbol(&id).unwrap()), Rational::from_integer(0.into()));
    }

    #[test]
    fn dump_has_every_character() {
        let v = dump_characters(&g(3, 1)).unwrap();
        for key in ["cotangent", "lambda_plus", "lambda_minus", "s20_cotangent", "s20_lambda_plus", "symbol", "thom"] {
            assert!(v[key]["eh"]["coeffs"].is_array(), "{key}");
        }
    }
}
