//! Hyperplane sections of the flag variety `Σ ⊂ P^2 x P^2`.
//!
//! `Σ` is the set of projectivized rank-one traceless 3x3 matrices
//! `M = y x^t` with `x . y = 0`, so a point is a pair `(x, y)` where the
//! point `y` lies on the line `x`. A traceless `C` cuts the hyperplane
//! `H_C = {M : tr(M C) = 0}`, i.e. `x^t C y = 0`, and `X_C = Σ ∩ H_C` is a
//! sextic surface. Conjugating `C` by `GL_3` or transposing it (swapping the
//! two factors) gives an isomorphic section, so the type of `X_C` depends
//! only on the Jordan form of `C` up to scaling.
//!
//! Every test below is a rational predicate on `C`: coefficients of the
//! characteristic polynomial `t^3 + p t + q`, its discriminant, the degree of
//! the minimal polynomial, and `C^2 = 0`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{self, Rational};
use crate::exact::{poly_gcd, squarefree_part, Degree, RatMatrix, UniPoly};
use crate::groups::{ComponentGroup, ConnectedGroup, GroupDescriptor};

/// Nonzero traceless 3x3 rational matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TracelessMatrix3(RatMatrix);

impl TracelessMatrix3 {
    pub fn new(m: RatMatrix) -> Result<Self> {
        if m.rows() != 3 || m.cols() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 9,
                got: m.rows() * m.cols(),
            });
        }
        let tr = m.trace();
        if !tr.is_zero() {
            return Err(Error::NotTraceless(rational::format(&tr)));
        }
        if m.is_zero() {
            return Err(Error::ZeroMatrix);
        }
        Ok(Self(m))
    }

    /// Nine entries in row-major order.
    pub fn from_row_major(entries: &[Rational]) -> Result<Self> {
        if entries.len() != 9 {
            return Err(Error::Arity {
                expected: 9,
                got: entries.len(),
            });
        }
        Self::new(RatMatrix::from_vec(3, 3, entries.to_vec())?)
    }

    pub fn from_i64(rows: [[i64; 3]; 3]) -> Result<Self> {
        Self::new(RatMatrix::from_i64(&[&rows[0], &rows[1], &rows[2]]))
    }

    /// `C_(a,b) = diag(a, b, -a-b)`.
    pub fn diag(a: &Rational, b: &Rational) -> Result<Self> {
        Self::new(RatMatrix::diag(&[a.clone(), b.clone(), -(a + b)]))
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.0
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn scale(&self, s: &Rational) -> Result<Self> {
        Self::new(self.0.scale(s))
    }

    /// `A C A^{-1}`.
    pub fn conjugate(&self, a: &RatMatrix) -> Result<Self> {
        let inv = a.inverse()?;
        Self::new(&(a * &self.0) * &inv)
    }

    /// `(p, q)` with `det(tI - C) = t^3 + p t + q`.
    pub fn char_coefficients(&self) -> (Rational, Rational) {
        let cp = self.char_poly();
        (cp.coeff(1), cp.coeff(0))
    }

    pub fn char_poly(&self) -> UniPoly {
        self.0.char_poly().expect("3x3")
    }

    /// Degree of the minimal polynomial, from the rank of `{I, C, C^2}`.
    pub fn min_poly_degree(&self) -> usize {
        let c2 = &self.0 * &self.0;
        let rows = [RatMatrix::identity(3), self.0.clone(), c2]
            .iter()
            .map(|m| m.entries().to_vec())
            .collect();
        RatMatrix::from_rows(rows).expect("3 x 9").rank()
    }
}

/// The normal forms of the hyperplane-section table.
pub mod normal_forms {
    use super::TracelessMatrix3;
    use crate::exact::rational::int;

    /// `C_(1,1) = diag(1, 1, -2)`.
    pub fn double_eigenvalue() -> TracelessMatrix3 {
        TracelessMatrix3::diag(&int(1), &int(1)).expect("valid")
    }

    /// Companion matrix of `t^3 - 1`, a rational model of `diag(1, ζ, ζ^2)`.
    pub fn cube_roots() -> TracelessMatrix3 {
        TracelessMatrix3::from_i64([[0, 0, 1], [1, 0, 0], [0, 1, 0]]).expect("valid")
    }

    /// `diag(1, 2, -3)`.
    pub fn generic() -> TracelessMatrix3 {
        TracelessMatrix3::diag(&int(1), &int(2)).expect("valid")
    }

    pub fn c1() -> TracelessMatrix3 {
        TracelessMatrix3::from_i64([[1, 1, 0], [0, 1, 0], [0, 0, -2]]).expect("valid")
    }

    pub fn c2() -> TracelessMatrix3 {
        TracelessMatrix3::from_i64([[0, 1, 0], [0, 0, 1], [0, 0, 0]]).expect("valid")
    }

    pub fn c3() -> TracelessMatrix3 {
        TracelessMatrix3::from_i64([[0, 1, 0], [0, 0, 0], [0, 0, 0]]).expect("valid")
    }

    /// All six, in table order.
    pub fn all() -> [TracelessMatrix3; 6] {
        [double_eigenvalue(), cube_roots(), generic(), c1(), c2(), c3()]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum JordanLabel {
    DiagDoubleEigenvalue,
    CubeRootsTriple,
    GenericDistinct,
    JordanBlockPlusEigen,
    RegularNilpotent,
    RankOneNilpotent,
}

pub fn jordan_label(c: &TracelessMatrix3) -> JordanLabel {
    let m = c.matrix();
    if (m * m).is_zero() {
        return JordanLabel::RankOneNilpotent;
    }
    let (p, q) = c.char_coefficients();
    if p.is_zero() && q.is_zero() {
        return JordanLabel::RegularNilpotent;
    }
    let disc = cubic_discriminant(&p, &q);
    if !disc.is_zero() {
        return if p.is_zero() {
            JordanLabel::CubeRootsTriple
        } else {
            JordanLabel::GenericDistinct
        };
    }
    if c.min_poly_degree() == 3 {
        JordanLabel::JordanBlockPlusEigen
    } else {
        JordanLabel::DiagDoubleEigenvalue
    }
}

/// `-4p^3 - 27q^2`
fn cubic_discriminant(p: &Rational, q: &Rational) -> Rational {
    -(rational::int(4) * p * p * p) - rational::int(27) * q * q
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SurfaceType {
    ReducibleFirstKind,
    #[serde(rename = "SmoothDP6_Z6")]
    SmoothDP6Z6,
    #[serde(rename = "SmoothDP6_Z2")]
    SmoothDP6Z2,
    A1,
    A2,
    ReducibleSecondKind,
}

impl SurfaceType {
    pub fn is_smooth_dp6(self) -> bool {
        matches!(self, Self::SmoothDP6Z6 | Self::SmoothDP6Z2)
    }

    /// Dual graph of (-1)- and (-2)-curves on the minimal resolution.
    pub fn dual_graph(self) -> Option<&'static str> {
        match self {
            Self::SmoothDP6Z6 | Self::SmoothDP6Z2 => Some("cycle of six (-1)-curves"),
            Self::A1 => Some("chain (-1)-(-1)-(-2)-(-1)-(-1)"),
            Self::A2 => Some("chain (-1)-(-2)-(-1) with a (-2)-curve on the middle vertex"),
            Self::ReducibleFirstKind | Self::ReducibleSecondKind => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LineCount {
    Finite(usize),
    Infinite,
}

/// A point `(x, y)` of `Σ`: `y` a point of `P^2`, `x` a line through it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlagPoint {
    #[serde(with = "rational::serde_vec_str")]
    pub line: Vec<Rational>,
    #[serde(with = "rational::serde_vec_str")]
    pub point: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SingularLocus {
    Smooth,
    /// Isolated singular points, with the type certified by the table.
    Points {
        points: Vec<FlagPoint>,
        certificate: SurfaceType,
    },
    /// A curve of singular points, given by a description.
    Curve {
        description: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SexticReport {
    pub jordan_label: JordanLabel,
    pub surface_type: SurfaceType,
    pub aut_descriptor: GroupDescriptor,
    pub aut0_dim: usize,
    pub line_count: LineCount,
}

/// Row of the hyperplane-section table for a Jordan type.
pub fn table_row(label: JordanLabel) -> SexticReport {
    use ComponentGroup::*;
    use ConnectedGroup::*;
    let (surface_type, id, comp, lines) = match label {
        JordanLabel::DiagDoubleEigenvalue => (SurfaceType::ReducibleFirstKind, GL2, Z2, LineCount::Infinite),
        JordanLabel::CubeRootsTriple => (SurfaceType::SmoothDP6Z6, Torus2, Z6, LineCount::Finite(6)),
        JordanLabel::GenericDistinct => (SurfaceType::SmoothDP6Z2, Torus2, Z2, LineCount::Finite(6)),
        JordanLabel::JordanBlockPlusEigen => (SurfaceType::A1, GaGm, Z2, LineCount::Finite(4)),
        JordanLabel::RegularNilpotent => (SurfaceType::A2, Ga2SemiGm, Z2, LineCount::Finite(2)),
        JordanLabel::RankOneNilpotent => (SurfaceType::ReducibleSecondKind, BorelPGL3, Z2, LineCount::Infinite),
    };
    let aut_descriptor = GroupDescriptor::new(id, comp);
    SexticReport {
        jordan_label: label,
        surface_type,
        aut_descriptor,
        aut0_dim: aut_descriptor.dim(),
        line_count: lines,
    }
}

pub fn classify_section(c: &TracelessMatrix3) -> SexticReport {
    table_row(jordan_label(c))
}

/// Lines on `X_C`. A ruling fiber `{x} x P^1` of `Σ` lies in `X_C` iff `x` is a
/// left eigenvector of `C`, and `P^1 x {y}` iff `y` is a right eigenvector.
///
/// With `s` the squarefree part of the characteristic polynomial,
/// `ker s(C)` is the direct sum of all eigenspaces, so its dimension exceeds
/// `deg s` exactly when some eigenspace is at least a plane (infinitely many
/// eigendirections). Otherwise each side contributes `deg s` directions.
pub fn count_lines(c: &TracelessMatrix3) -> LineCount {
    let count_side = |m: &RatMatrix| -> Option<usize> {
        let s = squarefree_part(&m.char_poly().expect("3x3")).expect("nonzero char poly");
        let deg = s.degree().finite().expect("nonzero");
        let eigen_dim = 3 - s.eval_matrix(m).rank();
        (eigen_dim == deg).then_some(deg)
    };
    match (count_side(c.matrix()), count_side(&c.matrix().transpose())) {
        (Some(r), Some(l)) => LineCount::Finite(r + l),
        _ => LineCount::Infinite,
    }
}

/// Dimension of the Lie algebra of the projective centralizer
/// `{X : XC - CX ∈ span(C)} / scalars`.
pub fn pcent_lie_dim(c: &TracelessMatrix3) -> usize {
    let cm = c.matrix();
    // unknowns: X (9 entries, row-major) and mu; equations XC - CX - mu C = 0
    let mut sys = RatMatrix::zeros(9, 10);
    for i in 0..3 {
        for j in 0..3 {
            let row = 3 * i + j;
            for k in 0..3 {
                // (XC)_{ij} = sum_k X_{ik} C_{kj}
                sys[(row, 3 * i + k)] += &cm[(k, j)];
                // (CX)_{ij} = sum_k C_{ik} X_{kj}
                sys[(row, 3 * k + j)] -= &cm[(i, k)];
            }
            sys[(row, 9)] = -cm[(i, j)].clone();
        }
    }
    sys.kernel_basis().len() - 1
}

/// Singular points of `X_C`: the Jacobian of `{x.y = 0, x^t C y = 0}` drops
/// rank exactly at pairs with `C y = λ y`, `C^t x = λ x` and `x . y = 0`.
/// Such pairs need a repeated eigenvalue, and repeated eigenvalues of a
/// rational 3x3 matrix are rational, so all singular points are found.
pub fn find_singular_points(c: &TracelessMatrix3) -> SingularLocus {
    let m = c.matrix();
    let cp = c.char_poly();
    let repeated = poly_gcd(&cp, &cp.derivative());
    let mut points = Vec::new();
    if let Degree::Finite(d) = repeated.degree() {
        if d >= 1 {
            // gcd(p, p') is (t - λ) or (t - λ)^2
            let lambda = squarefree_part(&repeated).expect("nonzero").coeff(0);
            let lambda = -lambda;
            let shifted = m - &RatMatrix::identity(3).scale(&lambda);
            let right = shifted.kernel_basis();
            let left = shifted.transpose().kernel_basis();
            if right.len() > 1 || left.len() > 1 {
                let description = match (left.len(), right.len()) {
                    (2, 2) if (m * m).is_zero() => "two intersecting lines",
                    (2, 2) => "a smooth conic",
                    _ => "a curve",
                };
                return SingularLocus::Curve {
                    description: description.to_string(),
                };
            }
            let (x, y) = (&left[0], &right[0]);
            let dot: Rational = x.iter().zip(y).map(|(a, b)| a * b).sum();
            if dot.is_zero() {
                points.push(FlagPoint {
                    line: x.clone(),
                    point: y.clone(),
                });
            }
        }
    }
    if points.is_empty() {
        SingularLocus::Smooth
    } else {
        SingularLocus::Points {
            points,
            certificate: classify_section(c).surface_type,
        }
    }
}
