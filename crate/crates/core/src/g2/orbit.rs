//! Jordan–Chevalley decomposition and adjoint-orbit classification.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::structure::{G2Element, G2Structure, DIM};
use crate::error::{Error, Result};
use crate::exact::{compose_mod, poly_inverse_mod, squarefree_part, RatMatrix, UniPoly};

/// Nilpotent orbits of g2, named by their centralizer dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NilpotentKind {
    /// Long root vector orbit, centralizer dimension 8.
    Minimal,
    /// Short root vector orbit, centralizer dimension 6.
    ShortRoot,
    /// Subregular nilpotent, centralizer dimension 4.
    Subregular,
    /// Regular nilpotent, centralizer dimension 2.
    Regular,
}

impl NilpotentKind {
    pub fn from_centralizer_dim(d: usize) -> Option<Self> {
        match d {
            8 => Some(Self::Minimal),
            6 => Some(Self::ShortRoot),
            4 => Some(Self::Subregular),
            2 => Some(Self::Regular),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "nilpotent")]
pub enum OrbitTag {
    Zero,
    RegularSemisimple,
    SubregularSemisimple,
    /// `g_s` subregular on the short-root sextic, `g_n != 0`, `g` regular.
    RegularMixed,
    OtherSingular,
    Nilpotent(NilpotentKind),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitClass {
    pub tag: OrbitTag,
    pub centralizer_dim: usize,
    pub in_d_long: bool,
    pub in_d_short: bool,
}

/// Identity component of the automorphism group of the hyperplane section.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Aut0 {
    GL2,
    GaGm,
    Torus2,
    SectionSingular,
}

/// Jordan–Chevalley decomposition of a square matrix. The semisimple part is
/// `P(A)` where `P` is found by Newton iteration `P <- P - s(P) s'(P)^{-1}`
/// in `Q[t]/(χ)`, with `χ` the characteristic polynomial and `s` its
/// squarefree part. Returns `(semisimple, nilpotent)`.
pub fn matrix_jordan_decomposition(a: &RatMatrix) -> Result<(RatMatrix, RatMatrix)> {
    let cp = a.char_poly()?;
    let s = squarefree_part(&cp)?;
    let ds = s.derivative();
    let mut p = UniPoly::x().rem(&cp);
    for _ in 0..64 {
        let v = compose_mod(&s, &p, &cp);
        if v.is_zero() {
            let semi = p.eval_matrix(a);
            let nil = a - &semi;
            return Ok((semi, nil));
        }
        // P = t mod s throughout, so s'(P) is a unit modulo χ
        let d = poly_inverse_mod(&compose_mod(&ds, &p, &cp), &cp).ok_or(Error::Singular)?;
        p = (&p - &(&v * &d)).rem(&cp);
    }
    Err(Error::StructureCheck(
        "Jordan-Chevalley iteration did not converge".into(),
    ))
}

impl G2Structure {
    /// `g = g_s + g_n` with `[g_s, g_n] = 0`, `g_s` semisimple, `g_n` nilpotent.
    pub fn jordan_decomposition(&self, g: &G2Element) -> (G2Element, G2Element) {
        let (s, _) = matrix_jordan_decomposition(&self.ad_matrix(g)).expect("ad g is a square rational matrix");
        let gs = self.ad_preimage(&s).expect("semisimple part of ad g lies in ad(g2)");
        let gn = g.sub(&gs);
        (gs, gn)
    }

    /// `dim` of the centralizer `{x : [g, x] = 0}`.
    pub fn centralizer_dim(&self, g: &G2Element) -> usize {
        DIM - self.ad_matrix(g).rank()
    }

    pub fn classify_element(&self, g: &G2Element) -> OrbitClass {
        let centralizer_dim = self.centralizer_dim(g);
        let (dl, ds) = self.invariant_sextics(g);
        let in_d_long = dl.is_zero();
        let in_d_short = ds.is_zero();
        let tag = if g.is_zero() {
            OrbitTag::Zero
        } else {
            let (gs, gn) = self.jordan_decomposition(g);
            if gs.is_zero() {
                NilpotentKind::from_centralizer_dim(centralizer_dim)
                    .map_or(OrbitTag::OtherSingular, OrbitTag::Nilpotent)
            } else if gn.is_zero() {
                match centralizer_dim {
                    2 => OrbitTag::RegularSemisimple,
                    4 => OrbitTag::SubregularSemisimple,
                    _ => OrbitTag::OtherSingular,
                }
            } else if centralizer_dim == 2 && in_d_short && !in_d_long {
                OrbitTag::RegularMixed
            } else {
                OrbitTag::OtherSingular
            }
        };
        OrbitClass {
            tag,
            centralizer_dim,
            in_d_long,
            in_d_short,
        }
    }
}

/// Identity component of `Aut(V^g)` from the orbit class of `g`.
pub fn aut0_of_section(cls: &OrbitClass) -> Aut0 {
    if cls.in_d_long {
        return Aut0::SectionSingular;
    }
    match cls.tag {
        OrbitTag::SubregularSemisimple => Aut0::GL2,
        OrbitTag::RegularMixed => Aut0::GaGm,
        OrbitTag::RegularSemisimple => Aut0::Torus2,
        // nilpotent and zero elements lie on both sextics
        _ => Aut0::SectionSingular,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;
    use crate::g2::roots::{ALPHA1, ALPHA2, THETA};

    fn g2() -> &'static G2Structure {
        G2Structure::shared()
    }

    fn mixed() -> G2Element {
        G2Element::cartan(&int(0), &int(1)).add(&G2Element::root_vector(ALPHA1))
    }

    #[test]
    fn jordan_examples() {
        let h = G2Element::cartan(&int(3), &int(-1));
        assert_eq!(g2().jordan_decomposition(&h), (h.clone(), G2Element::zero()));
        let e = G2Element::root_vector(ALPHA1);
        assert_eq!(g2().jordan_decomposition(&e), (G2Element::zero(), e.clone()));
        let (gs, gn) = g2().jordan_decomposition(&mixed());
        assert_eq!(gs, G2Element::cartan(&int(0), &int(1)));
        assert_eq!(gn, G2Element::root_vector(ALPHA1));
    }

    #[test]
    fn jordan_of_non_split_mixture() {
        // h + e_alpha with alpha(h) != 0 is semisimple: it is conjugate to h
        let h = G2Element::cartan(&int(1), &int(0));
        let g = h.add(&G2Element::root_vector(ALPHA1));
        let (gs, gn) = g2().jordan_decomposition(&g);
        assert_eq!(gs, g);
        assert!(gn.is_zero());
    }

    #[test]
    fn centralizer_examples() {
        assert_eq!(g2().centralizer_dim(&G2Element::zero()), 14);
        assert_eq!(g2().centralizer_dim(&G2Element::cartan(&int(1), &int(1))), 2);
        assert_eq!(g2().centralizer_dim(&G2Element::cartan(&int(0), &int(1))), 4);
        assert_eq!(g2().centralizer_dim(&G2Element::root_vector(THETA)), 8);
        assert_eq!(g2().centralizer_dim(&G2Element::root_vector(ALPHA1)), 6);
        let reg = G2Element::root_vector(ALPHA1).add(&G2Element::root_vector(ALPHA2));
        assert_eq!(g2().centralizer_dim(&reg), 2);
    }

    #[test]
    fn classify_examples() {
        let c = g2().classify_element(&G2Element::cartan(&int(1), &int(1)));
        assert_eq!(c.tag, OrbitTag::RegularSemisimple);
        assert!(!c.in_d_long && !c.in_d_short);

        let c = g2().classify_element(&G2Element::cartan(&int(0), &int(1)));
        assert_eq!(c.tag, OrbitTag::SubregularSemisimple);
        assert_eq!(c.centralizer_dim, 4);
        assert!(!c.in_d_long && c.in_d_short);

        let c = g2().classify_element(&mixed());
        assert_eq!(c.tag, OrbitTag::RegularMixed);
        assert_eq!(c.centralizer_dim, 2);
        assert!(!c.in_d_long && c.in_d_short);

        let c = g2().classify_element(&G2Element::root_vector(THETA));
        assert_eq!(c.tag, OrbitTag::Nilpotent(NilpotentKind::Minimal));
        assert_eq!(g2().classify_element(&G2Element::zero()).tag, OrbitTag::Zero);
    }

    #[test]
    fn long_root_subregular_is_singular_section() {
        // alpha2(h) = 0 kills a long root pair
        let c = g2().classify_element(&G2Element::cartan(&int(1), &int(0)));
        assert_eq!(c.tag, OrbitTag::SubregularSemisimple);
        assert!(c.in_d_long);
        assert_eq!(aut0_of_section(&c), Aut0::SectionSingular);
    }

    #[test]
    fn aut0_mapping() {
        let cls = |g: &G2Element| aut0_of_section(&g2().classify_element(g));
        assert_eq!(cls(&G2Element::cartan(&int(1), &int(1))), Aut0::Torus2);
        assert_eq!(cls(&G2Element::cartan(&int(0), &int(1))), Aut0::GL2);
        assert_eq!(cls(&mixed()), Aut0::GaGm);
        assert_eq!(cls(&G2Element::root_vector(ALPHA2)), Aut0::SectionSingular);
    }
}
