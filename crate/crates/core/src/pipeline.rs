//! From an element `g` of g2 to the automorphism data of the fourfold `V^g`
//! cut out by the hyperplane `g^⊥`.
//!
//! Smooth sections fall into three classes:
//!
//! | class     | `Aut^0` | `Aut`                          | cubic cones             | `Σ_s(V)`         | conic pair    |
//! |-----------|---------|--------------------------------|-------------------------|------------------|---------------|
//! | `V18s`    | `GL2`   | `GL2 ⋊ Z/2`                    | two families plus two   | reducible, 1st   | equal         |
//! | `V18a`    | `Ga×Gm` | `(Ga × Gm) ⋊ Z/2`              | 4                       | `A1`             | quadritangent |
//! | `Generic` | `Gm^2`  | between `Gm^2` and `Gm^2 ⋊ Z/6` | 6                       | smooth sextic    | bitangent     |

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::conic_pairs::TangencyType;
use crate::exact::rational::{self, Rational};
use crate::flag_sextic::{classify_section, SurfaceType, TracelessMatrix3};
use crate::g2::{aut0_of_section, Aut0, G2Element, G2Structure, OrbitClass, Root, POSITIVE_ROOTS};
use crate::groups::{ComponentGroup, ConnectedGroup, GroupDescriptor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VarietyName {
    V18s,
    V18a,
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CubicConeCount {
    TwoFamiliesPlusTwo,
    Four,
    Six,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SigmaSType {
    ReducibleFirstKind,
    A1,
    SmoothDP6,
}

impl SigmaSType {
    pub fn accepts(self, s: SurfaceType) -> bool {
        match self {
            Self::ReducibleFirstKind => s == SurfaceType::ReducibleFirstKind,
            Self::A1 => s == SurfaceType::A1,
            Self::SmoothDP6 => s.is_smooth_dp6(),
        }
    }
}

/// The full automorphism group, or bounds on it when only those are known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum FullAut {
    Exact {
        group: GroupDescriptor,
    },
    Bounds {
        lower: GroupDescriptor,
        upper: GroupDescriptor,
    },
}

/// Order of `Aut(V) / Stab(V)`: cyclic of order dividing 6, value not known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicQuotient {
    pub order: Option<u32>,
    pub order_divides: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub orbit: OrbitClass,
    pub section_smooth: bool,
    pub aut0: Option<Aut0>,
    pub full_aut: Option<FullAut>,
    pub cubic_cone_count: Option<CubicConeCount>,
    pub sigma_s_type: Option<SigmaSType>,
    pub variety_name: Option<VarietyName>,
    pub conic_pair: Option<TangencyType>,
    pub stabilizer_quotient: Option<CyclicQuotient>,
    /// Stated properties of the affine cone, not computed here.
    pub flexibility: Vec<String>,
}

impl ClassificationReport {
    /// The equivalences between the class-dependent fields.
    pub fn invariants_hold(&self) -> bool {
        let fields = (
            self.aut0,
            self.variety_name,
            self.sigma_s_type,
            self.cubic_cone_count,
            self.conic_pair,
        );
        if !self.section_smooth {
            return self.orbit.in_d_long && fields == (None, None, None, None, None) && self.full_aut.is_none();
        }
        use CubicConeCount as C;
        use SigmaSType as S;
        use VarietyName as V;
        let shape_ok = matches!(
            fields,
            (
                Some(Aut0::GL2),
                Some(V::V18s),
                Some(S::ReducibleFirstKind),
                Some(C::TwoFamiliesPlusTwo),
                Some(TangencyType::Equal)
            ) | (
                Some(Aut0::GaGm),
                Some(V::V18a),
                Some(S::A1),
                Some(C::Four),
                Some(TangencyType::Quadritangent)
            ) | (
                Some(Aut0::Torus2),
                Some(V::Generic),
                Some(S::SmoothDP6),
                Some(C::Six),
                Some(TangencyType::Bitangent)
            )
        );
        let aut_ok = matches!(
            (self.variety_name, self.full_aut),
            (Some(V::Generic), Some(FullAut::Bounds { .. })) | (Some(_), Some(FullAut::Exact { .. }))
        );
        shape_ok && aut_ok && !self.orbit.in_d_long
    }
}

fn variety_of(aut0: Aut0) -> Option<VarietyName> {
    match aut0 {
        Aut0::GL2 => Some(VarietyName::V18s),
        Aut0::GaGm => Some(VarietyName::V18a),
        Aut0::Torus2 => Some(VarietyName::Generic),
        Aut0::SectionSingular => None,
    }
}

pub fn classify_fourfold(g: &G2Element) -> ClassificationReport {
    let orbit = G2Structure::shared().classify_element(g);
    let aut0 = aut0_of_section(&orbit);
    let Some(variety) = variety_of(aut0).filter(|_| !orbit.in_d_long) else {
        return ClassificationReport {
            orbit,
            section_smooth: false,
            aut0: None,
            full_aut: None,
            cubic_cone_count: None,
            sigma_s_type: None,
            variety_name: None,
            conic_pair: None,
            stabilizer_quotient: None,
            flexibility: Vec::new(),
        };
    };
    use ComponentGroup::{Z2, Z6};
    use ConnectedGroup::{GaGm, Torus2, GL2};
    let exact = |c, k| FullAut::Exact {
        group: GroupDescriptor::new(c, k),
    };
    let (full_aut, cones, sigma, pair) = match variety {
        VarietyName::V18s => (
            exact(GL2, Z2),
            CubicConeCount::TwoFamiliesPlusTwo,
            SigmaSType::ReducibleFirstKind,
            TangencyType::Equal,
        ),
        VarietyName::V18a => (
            exact(GaGm, Z2),
            CubicConeCount::Four,
            SigmaSType::A1,
            TangencyType::Quadritangent,
        ),
        VarietyName::Generic => (
            FullAut::Bounds {
                lower: GroupDescriptor::new(Torus2, ComponentGroup::Trivial),
                upper: GroupDescriptor::new(Torus2, Z6),
            },
            CubicConeCount::Six,
            SigmaSType::SmoothDP6,
            TangencyType::Bitangent,
        ),
    };
    let mut flexibility = vec!["affine cone flexible in codimension one".to_string()];
    if variety == VarietyName::V18s {
        flexibility.push("affine cone flexible".to_string());
    }
    ClassificationReport {
        orbit,
        section_smooth: true,
        aut0: Some(aut0),
        full_aut: Some(full_aut),
        cubic_cone_count: Some(cones),
        sigma_s_type: Some(sigma),
        variety_name: Some(variety),
        conic_pair: Some(pair),
        stabilizer_quotient: (variety == VarietyName::Generic).then_some(CyclicQuotient {
            order: None,
            order_divides: 6,
        }),
        flexibility,
    }
}

/// Whether `C` has the section type the report demands for `Σ_s(V)`.
/// The `A2` and second-kind reducible types are never demanded.
pub fn cross_check_with_flag_sextic(report: &ClassificationReport, c: &TracelessMatrix3) -> bool {
    report
        .sigma_s_type
        .is_some_and(|s| s.accepts(classify_section(c).surface_type))
}

const SHORT_ROOTS: [Root; 6] = [
    Root { m: 1, n: 0 },
    Root { m: 1, n: 1 },
    Root { m: 2, n: 1 },
    Root { m: -1, n: 0 },
    Root { m: -1, n: -1 },
    Root { m: -2, n: -1 },
];

fn nonzero<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    loop {
        let k = rng.gen_range(-bound..=bound);
        if k != 0 {
            return rational::int(k);
        }
    }
}

/// `(a, b)` spanning the kernel of the short root `r` on the Cartan, scaled by `t`.
fn short_root_kernel(r: Root, t: &Rational) -> (Rational, Rational) {
    // r(h) = m a + n b = 0
    (t * rational::int(r.n.into()), t * rational::int(-i64::from(r.m)))
}

fn certified<R: Rng + ?Sized>(rng: &mut R, want: VarietyName, mut gen: impl FnMut(&mut R) -> G2Element) -> G2Element {
    loop {
        let g = gen(rng);
        if classify_fourfold(&g).variety_name == Some(want) {
            return g;
        }
    }
}

/// Regular semisimple Cartan element off both sextics.
pub fn sample_generic<R: Rng + ?Sized>(rng: &mut R) -> G2Element {
    certified(rng, VarietyName::Generic, |rng| {
        G2Element::cartan(
            &rational::int(rng.gen_range(-9..=9)),
            &rational::int(rng.gen_range(-9..=9)),
        )
    })
}

/// Cartan element killed by exactly one pair of short roots.
pub fn sample_v18s<R: Rng + ?Sized>(rng: &mut R) -> G2Element {
    certified(rng, VarietyName::V18s, |rng| {
        let r = *SHORT_ROOTS.choose(rng).expect("nonempty");
        let (a, b) = short_root_kernel(r, &nonzero(rng, 6));
        G2Element::cartan(&a, &b)
    })
}

/// `h + c e_α` with `α` short and `α(h) = 0`.
pub fn sample_v18a<R: Rng + ?Sized>(rng: &mut R) -> G2Element {
    certified(rng, VarietyName::V18a, |rng| {
        let r = *SHORT_ROOTS.choose(rng).expect("nonempty");
        let (a, b) = short_root_kernel(r, &nonzero(rng, 6));
        G2Element::cartan(&a, &b).add(&G2Element::root_vector(r).scale(&nonzero(rng, 4)))
    })
}

/// Element whose hyperplane section is singular (a long root kills its Cartan part).
pub fn sample_singular<R: Rng + ?Sized>(rng: &mut R) -> G2Element {
    loop {
        let t = nonzero(rng, 6);
        // alpha2 = (0, 1) is long
        let g = G2Element::cartan(&t, &rational::int(0));
        if !classify_fourfold(&g).section_smooth {
            return g;
        }
    }
}

/// `exp(ad n)` for a random `n` in the positive or negative nilradical.
pub fn random_unipotent<R: Rng + ?Sized>(rng: &mut R) -> crate::exact::RatMatrix {
    let g2 = G2Structure::shared();
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let mut n = G2Element::zero();
    for r in POSITIVE_ROOTS {
        let c = rational::int(rng.gen_range(-2..=2));
        let r = Root {
            m: sign * r.m,
            n: sign * r.n,
        };
        n = n.add(&G2Element::root_vector(r).scale(&c));
    }
    g2.exp_ad(&n).expect("nilradical elements are nilpotent")
}

/// Conjugate `g` by a product of `steps` random unipotent automorphisms.
pub fn conjugate_randomly<R: Rng + ?Sized>(rng: &mut R, g: &G2Element, steps: usize) -> G2Element {
    let g2 = G2Structure::shared();
    (0..steps).fold(g.clone(), |acc, _| g2.apply(&random_unipotent(rng), &acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;
    use crate::flag_sextic::normal_forms;
    use crate::g2::ALPHA1;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trichotomy_examples() {
        let r = classify_fourfold(&G2Element::cartan(&int(1), &int(1)));
        assert_eq!(r.variety_name, Some(VarietyName::Generic));
        assert_eq!(r.aut0, Some(Aut0::Torus2));
        assert_eq!(r.cubic_cone_count, Some(CubicConeCount::Six));
        assert_eq!(r.sigma_s_type, Some(SigmaSType::SmoothDP6));
        assert!(matches!(r.full_aut, Some(FullAut::Bounds { .. })));
        assert!(r.invariants_hold());

        let r = classify_fourfold(&G2Element::cartan(&int(0), &int(1)));
        assert_eq!(r.variety_name, Some(VarietyName::V18s));
        assert_eq!(
            r.full_aut.unwrap(),
            FullAut::Exact {
                group: GroupDescriptor::new(ConnectedGroup::GL2, ComponentGroup::Z2)
            }
        );
        assert_eq!(r.cubic_cone_count, Some(CubicConeCount::TwoFamiliesPlusTwo));
        assert!(r.invariants_hold());

        let g = G2Element::cartan(&int(0), &int(1)).add(&G2Element::root_vector(ALPHA1));
        let r = classify_fourfold(&g);
        assert_eq!(r.variety_name, Some(VarietyName::V18a));
        assert_eq!(r.sigma_s_type, Some(SigmaSType::A1));
        assert_eq!(r.cubic_cone_count, Some(CubicConeCount::Four));
        assert!(r.invariants_hold());
    }

    #[test]
    fn singular_section_stops_early() {
        let r = classify_fourfold(&G2Element::cartan(&int(1), &int(0)));
        assert!(!r.section_smooth);
        assert_eq!(r.aut0, None);
        assert!(r.invariants_hold());
        assert!(!classify_fourfold(&G2Element::zero()).section_smooth);
    }

    #[test]
    fn cross_check_examples() {
        let v18a = classify_fourfold(&G2Element::cartan(&int(0), &int(1)).add(&G2Element::root_vector(ALPHA1)));
        let v18s = classify_fourfold(&G2Element::cartan(&int(0), &int(1)));
        assert!(cross_check_with_flag_sextic(&v18a, &normal_forms::c1()));
        assert!(!cross_check_with_flag_sextic(&v18a, &normal_forms::c2()));
        assert!(cross_check_with_flag_sextic(&v18s, &normal_forms::double_eigenvalue()));
        let generic = classify_fourfold(&G2Element::cartan(&int(1), &int(1)));
        assert!(cross_check_with_flag_sextic(&generic, &normal_forms::cube_roots()));
        assert!(cross_check_with_flag_sextic(&generic, &normal_forms::generic()));
        assert!(!cross_check_with_flag_sextic(&generic, &normal_forms::c3()));
    }

    #[test]
    fn samplers_are_certified_and_conjugation_stable() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cases: [(fn(&mut ChaCha8Rng) -> G2Element, VarietyName); 3] = [
            (sample_generic, VarietyName::Generic),
            (sample_v18s, VarietyName::V18s),
            (sample_v18a, VarietyName::V18a),
        ];
        for (sample, want) in cases {
            let g = sample(&mut rng);
            let h = conjugate_randomly(&mut rng, &g, 2);
            assert_eq!(classify_fourfold(&h).variety_name, Some(want));
        }
        assert!(!classify_fourfold(&sample_singular(&mut rng)).section_smooth);
    }
}
