//! Pairs of plane conics `(Υ, J)` classified by how `J` touches `Υ`.
//!
//! The base conic `Υ` is parametrized from a rational point, `J` is pulled
//! back to a binary quartic on `P^1`, and the intersection multiplicities are
//! the root multiplicities of that quartic (including the root at infinity),
//! read off a squarefree decomposition. No roots are ever isolated.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{self, Rational};
use crate::exact::{squarefree_decomposition, RatMatrix, UniPoly};
use crate::g2::Aut0;
use crate::groups::{ComponentGroup, ConnectedGroup, GroupDescriptor};

/// A conic `{v^t G v = 0}` given by its symmetric Gram matrix `G`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Conic {
    gram: RatMatrix,
}

impl Conic {
    pub fn from_gram(gram: RatMatrix) -> Result<Self> {
        if gram.rows() != 3 || gram.cols() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 9,
                got: gram.rows() * gram.cols(),
            });
        }
        if gram != gram.transpose() {
            return Err(Error::NotSymmetric);
        }
        if gram.is_zero() {
            return Err(Error::ZeroMatrix);
        }
        Ok(Self { gram })
    }

    /// Upper triangle `(g11, g12, g13, g22, g23, g33)` of the Gram matrix.
    pub fn from_upper(u: &[Rational]) -> Result<Self> {
        if u.len() != 6 {
            return Err(Error::Arity {
                expected: 6,
                got: u.len(),
            });
        }
        let g = RatMatrix::from_rows(vec![
            vec![u[0].clone(), u[1].clone(), u[2].clone()],
            vec![u[1].clone(), u[3].clone(), u[4].clone()],
            vec![u[2].clone(), u[4].clone(), u[5].clone()],
        ])?;
        Self::from_gram(g)
    }

    /// `a x^2 + b y^2 + c z^2 + d xy + e xz + f yz` by its coefficients.
    pub fn from_form(a: i64, b: i64, c: i64, d: i64, e: i64, f: i64) -> Result<Self> {
        let h = |n: i64| rational::frac(n, 2);
        Self::from_upper(&[rational::int(a), h(d), h(e), rational::int(b), h(f), rational::int(c)])
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    pub fn upper(&self) -> [Rational; 6] {
        let g = &self.gram;
        [
            g[(0, 0)].clone(),
            g[(0, 1)].clone(),
            g[(0, 2)].clone(),
            g[(1, 1)].clone(),
            g[(1, 2)].clone(),
            g[(2, 2)].clone(),
        ]
    }

    pub fn is_smooth(&self) -> bool {
        !self.gram.determinant().expect("3x3").is_zero()
    }

    pub fn eval(&self, v: &[Rational]) -> Rational {
        bilinear(&self.gram, v, v)
    }

    /// Equality as projective conics.
    pub fn proportional(&self, other: &Conic) -> bool {
        proportional(&self.gram, &other.gram)
    }

    /// The conic `{v : (A v)^t G (A v) = 0}`, i.e. the preimage under `v -> A v`.
    pub fn pullback(&self, a: &RatMatrix) -> Conic {
        Conic {
            gram: &(&a.transpose() * &self.gram) * a,
        }
    }

    /// Some rational point, found by checking coordinate points, the
    /// diagonal form, and a bounded search along lines through the
    /// coordinate vertices.
    pub fn rational_point(&self) -> Option<Vec<Rational>> {
        for i in 0..3 {
            let e = unit(i);
            if self.eval(&e).is_zero() {
                return Some(e);
            }
        }
        if let Some(p) = self.point_from_diagonal_form() {
            return Some(p);
        }
        self.point_by_line_search(32)
    }

    fn point_from_diagonal_form(&self) -> Option<Vec<Rational>> {
        let (p, d) = diagonalize(&self.gram);
        for i in 0..3 {
            for j in 0..3 {
                if i == j || d[i].is_zero() {
                    continue;
                }
                if d[j].is_zero() {
                    return Some(p.column(j));
                }
                if let Some(s) = rational::sqrt_exact(&(-&d[j] / &d[i])) {
                    let mut u = vec![Rational::zero(); 3];
                    u[i] = s;
                    u[j] = Rational::one();
                    return Some(p.mul_vec(&u));
                }
            }
        }
        None
    }

    fn point_by_line_search(&self, bound: i64) -> Option<Vec<Rational>> {
        let g = &self.gram;
        for k in 0..3 {
            let (i, j) = ((k + 1) % 3, (k + 2) % 3);
            for a in -bound..=bound {
                for b in 0..=bound {
                    if a == 0 && b == 0 {
                        continue;
                    }
                    let (ra, rb) = (rational::int(a), rational::int(b));
                    // Q = g_kk z^2 + 2 (g_ik a + g_jk b) z + Q(a, b, 0)
                    let qa = &g[(k, k)];
                    let qb = (&g[(i, k)] * &ra + &g[(j, k)] * &rb) * rational::int(2);
                    let qc =
                        &g[(i, i)] * &ra * &ra + &g[(j, j)] * &rb * &rb + rational::int(2) * &g[(i, j)] * &ra * &rb;
                    let root = if qa.is_zero() {
                        if qb.is_zero() {
                            continue;
                        }
                        -&qc / &qb
                    } else {
                        let disc = &qb * &qb - rational::int(4) * qa * &qc;
                        let Some(s) = rational::sqrt_exact(&disc) else {
                            continue;
                        };
                        (-&qb + s) / (rational::int(2) * qa)
                    };
                    let mut v = vec![Rational::zero(); 3];
                    v[i] = ra;
                    v[j] = rb;
                    v[k] = root;
                    return Some(v);
                }
            }
        }
        None
    }
}

fn unit(i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); 3];
    v[i] = Rational::one();
    v
}

fn bilinear(g: &RatMatrix, u: &[Rational], v: &[Rational]) -> Rational {
    let gv = g.mul_vec(v);
    u.iter().zip(&gv).map(|(a, b)| a * b).sum()
}

fn proportional(a: &RatMatrix, b: &RatMatrix) -> bool {
    let Some(k) = a.entries().iter().position(|x| !x.is_zero()) else {
        return b.is_zero();
    };
    let c = &b.entries()[k] / &a.entries()[k];
    !c.is_zero() && a.scale(&c) == *b
}

/// Congruence diagonalization: returns `(P, d)` with `P^t G P = diag(d)`.
fn diagonalize(g: &RatMatrix) -> (RatMatrix, Vec<Rational>) {
    let n = g.rows();
    let mut a = g.clone();
    let mut p = RatMatrix::identity(n);
    for k in 0..n {
        if a[(k, k)].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a[(j, j)].is_zero()) {
                swap_basis(&mut a, &mut p, k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) {
                // e_k <- e_k + e_j has Q = 2 g_kj != 0
                add_basis(&mut a, &mut p, k, j, &Rational::one());
            } else {
                continue;
            }
        }
        let piv = a[(k, k)].clone();
        for j in k + 1..n {
            if a[(k, j)].is_zero() {
                continue;
            }
            let f = -(&a[(k, j)] / &piv);
            add_basis(&mut a, &mut p, j, k, &f);
        }
    }
    let d = (0..n).map(|i| a[(i, i)].clone()).collect();
    (p, d)
}

fn swap_basis(a: &mut RatMatrix, p: &mut RatMatrix, i: usize, j: usize) {
    let n = a.rows();
    let mut s = RatMatrix::identity(n);
    s[(i, i)] = Rational::zero();
    s[(j, j)] = Rational::zero();
    s[(i, j)] = Rational::one();
    s[(j, i)] = Rational::one();
    *a = &(&s.transpose() * a) * &s;
    *p = &*p * &s;
}

/// `e_i <- e_i + f e_j`.
fn add_basis(a: &mut RatMatrix, p: &mut RatMatrix, i: usize, j: usize, f: &Rational) {
    let n = a.rows();
    let mut s = RatMatrix::identity(n);
    s[(j, i)] = f.clone();
    *a = &(&s.transpose() * a) * &s;
    *p = &*p * &s;
}

/// Binary forms in `(t, s)`: index `k` holds the coefficient of `t^k s^{d-k}`.
type BinaryForm = Vec<Rational>;

fn form_mul(a: &BinaryForm, b: &BinaryForm) -> BinaryForm {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn form_add(a: &BinaryForm, b: &BinaryForm) -> BinaryForm {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn form_scale(a: &BinaryForm, c: &Rational) -> BinaryForm {
    a.iter().map(|x| x * c).collect()
}

/// Root multiplicities of a nonzero binary form, largest first.
fn root_multiplicities(f: &BinaryForm) -> Vec<usize> {
    let degree = f.len() - 1;
    let affine = UniPoly::new(f.clone());
    let affine_deg = affine.degree().finite().expect("nonzero form");
    let mut mults = Vec::new();
    if affine_deg < degree {
        mults.push(degree - affine_deg);
    }
    if affine_deg > 0 {
        for (factor, m) in squarefree_decomposition(&affine).expect("nonzero") {
            let distinct = factor.degree().finite().expect("nonzero");
            mults.extend(std::iter::repeat_n(m, distinct));
        }
    }
    mults.sort_unstable_by(|a, b| b.cmp(a));
    mults
}

/// Intersection multiplicities of `J` with the smooth conic `U`, using the
/// rational point `point` on `U` for the parametrization.
pub fn intersection_multiplicities_at(u: &Conic, j: &Conic, point: &[Rational]) -> Result<Vec<usize>> {
    if !u.is_smooth() {
        return Err(Error::BaseConicSingular);
    }
    if point.len() != 3 || point.iter().all(Zero::is_zero) || !u.eval(point).is_zero() {
        return Err(Error::NoRationalParametrization);
    }
    if u.proportional(j) {
        return Err(Error::EqualConics);
    }
    // lines through P meet the coordinate line {v_k = 0}, which misses P
    let k = point.iter().position(|x| !x.is_zero()).expect("nonzero");
    let (a, b) = ((k + 1) % 3, (k + 2) % 3);
    let g = u.gram();
    let gp = g.mul_vec(point);
    // v = t e_a + s e_b; Q(v) and B(P, v) as binary forms
    let q_v: BinaryForm = vec![g[(b, b)].clone(), rational::int(2) * &g[(a, b)], g[(a, a)].clone()];
    let b_pv: BinaryForm = vec![gp[b].clone(), gp[a].clone()];
    // second intersection of the line P + mu v: Q(v) P - 2 B(P, v) v
    let coords: Vec<BinaryForm> = (0..3)
        .map(|c| {
            let v_c: BinaryForm = vec![
                if c == b { Rational::one() } else { Rational::zero() },
                if c == a { Rational::one() } else { Rational::zero() },
            ];
            form_add(
                &form_scale(&q_v, &point[c]),
                &form_scale(&form_mul(&b_pv, &v_c), &rational::int(-2)),
            )
        })
        .collect();
    let jg = j.gram();
    let mut quartic = vec![Rational::zero(); 5];
    for r in 0..3 {
        for c in 0..3 {
            if jg[(r, c)].is_zero() {
                continue;
            }
            quartic = form_add(&quartic, &form_scale(&form_mul(&coords[r], &coords[c]), &jg[(r, c)]));
        }
    }
    if quartic.iter().all(Zero::is_zero) {
        return Err(Error::EqualConics);
    }
    Ok(root_multiplicities(&quartic))
}

pub fn intersection_multiplicities(u: &Conic, j: &Conic) -> Result<Vec<usize>> {
    if !u.is_smooth() {
        return Err(Error::BaseConicSingular);
    }
    let p = u.rational_point().ok_or(Error::NoRationalParametrization)?;
    intersection_multiplicities_at(u, j, &p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TangencyType {
    Equal,
    Quadritangent,
    Bitangent,
    NotEvenTouching,
}

fn tangency_from_multiplicities(m: &[usize]) -> TangencyType {
    match m {
        [4] => TangencyType::Quadritangent,
        [2, 2] => TangencyType::Bitangent,
        _ => TangencyType::NotEvenTouching,
    }
}

fn check_pair(u: &Conic, j: &Conic) -> Result<Option<TangencyType>> {
    if !u.is_smooth() {
        return Err(Error::BaseConicSingular);
    }
    if u.proportional(j) {
        return Ok(Some(TangencyType::Equal));
    }
    if !j.is_smooth() {
        return Err(Error::SecondConicSingular);
    }
    Ok(None)
}

pub fn classify_pair(u: &Conic, j: &Conic) -> Result<TangencyType> {
    if let Some(t) = check_pair(u, j)? {
        return Ok(t);
    }
    Ok(tangency_from_multiplicities(&intersection_multiplicities(u, j)?))
}

/// As [`classify_pair`], with a known rational point on `u`.
pub fn classify_pair_at(u: &Conic, j: &Conic, point: &[Rational]) -> Result<TangencyType> {
    if let Some(t) = check_pair(u, j)? {
        return Ok(t);
    }
    Ok(tangency_from_multiplicities(&intersection_multiplicities_at(
        u, j, point,
    )?))
}

/// The normal forms: `Υ = x^2 + yz`, bitangent `J = 2x^2 + yz` (a member of
/// the pencil `a x^2 + b yz`), quadritangent `J = x^2 + yz + z^2`.
pub mod normal_forms {
    use super::Conic;

    pub fn upsilon() -> Conic {
        Conic::from_form(1, 0, 0, 0, 0, 1).expect("valid")
    }

    /// `a x^2 + b yz`
    pub fn bitangent_member(a: i64, b: i64) -> Conic {
        Conic::from_form(a, 0, 0, 0, 0, b).expect("valid")
    }

    pub fn bitangent() -> Conic {
        bitangent_member(2, 1)
    }

    /// `a (x^2 + yz) + b z^2`
    pub fn quadritangent_member(a: i64, b: i64) -> Conic {
        Conic::from_form(a, 0, b, 0, 0, a).expect("valid")
    }

    pub fn quadritangent() -> Conic {
        quadritangent_member(1, 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StabilizerGroup {
    PGL2,
    #[serde(rename = "Ga_semidirect_Z2")]
    GaSemidirectZ2,
    #[serde(rename = "Gm_semidirect_Z2")]
    GmSemidirectZ2,
}

impl StabilizerGroup {
    pub fn descriptor(self) -> GroupDescriptor {
        match self {
            Self::PGL2 => GroupDescriptor::new(ConnectedGroup::PGL2, ComponentGroup::Trivial),
            Self::GaSemidirectZ2 => GroupDescriptor::new(ConnectedGroup::Ga, ComponentGroup::Z2),
            Self::GmSemidirectZ2 => GroupDescriptor::new(ConnectedGroup::Gm, ComponentGroup::Z2),
        }
    }
}

/// A one-parameter family of projective transformations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TransformFamily {
    /// `(x : λy : λ^{-1}z)`, `λ ≠ 0`
    Torus,
    /// `(x + ez : y - 2ex - e^2 z : z)`
    Unipotent,
}

impl TransformFamily {
    pub fn formula(self) -> &'static str {
        match self {
            Self::Torus => "(x : λy : λ^-1 z)",
            Self::Unipotent => "(x + ez : y - 2ex - e^2 z : z)",
        }
    }

    /// The member at the given parameter, acting on column vectors.
    pub fn member(self, param: &Rational) -> RatMatrix {
        let (o, z) = (Rational::one(), Rational::zero());
        match self {
            Self::Torus => RatMatrix::diag(&[o.clone(), param.clone(), o / param]),
            Self::Unipotent => {
                let e = param;
                RatMatrix::from_rows(vec![
                    vec![o.clone(), z.clone(), e.clone()],
                    vec![-(e * rational::int(2)), o.clone(), -(e * e)],
                    vec![z.clone(), z, o],
                ])
                .expect("3x3")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairStabilizer {
    pub group: StabilizerGroup,
    pub family: Option<TransformFamily>,
    /// Sample members of the family followed by the involution κ.
    pub generators: Vec<RatMatrix>,
    pub normal_form: (Conic, Conic),
}

/// `g^t G g ∝ G`: the point map `v -> g v` preserves the conic.
pub fn preserves(g: &RatMatrix, c: &Conic) -> bool {
    proportional(c.gram(), &c.pullback(g).gram)
}

pub fn pair_stabilizer(t: TangencyType) -> Result<PairStabilizer> {
    let perm = |rows: [[i64; 3]; 3]| RatMatrix::from_i64(&[&rows[0], &rows[1], &rows[2]]);
    let samples = [rational::int(2), rational::frac(-1, 3), rational::int(5)];
    match t {
        TangencyType::Equal => Ok(PairStabilizer {
            group: StabilizerGroup::PGL2,
            family: None,
            generators: Vec::new(),
            normal_form: (normal_forms::upsilon(), normal_forms::upsilon()),
        }),
        TangencyType::Bitangent => {
            let fam = TransformFamily::Torus;
            let mut generators: Vec<RatMatrix> = samples.iter().map(|p| fam.member(p)).collect();
            // κ: (x : z : y) swaps the two contact points
            generators.push(perm([[1, 0, 0], [0, 0, 1], [0, 1, 0]]));
            Ok(PairStabilizer {
                group: StabilizerGroup::GmSemidirectZ2,
                family: Some(fam),
                generators,
                normal_form: (normal_forms::upsilon(), normal_forms::bitangent()),
            })
        }
        TangencyType::Quadritangent => {
            let fam = TransformFamily::Unipotent;
            let mut generators: Vec<RatMatrix> = samples.iter().map(|p| fam.member(p)).collect();
            // κ: (-x : y : z)
            generators.push(perm([[-1, 0, 0], [0, 1, 0], [0, 0, 1]]));
            Ok(PairStabilizer {
                group: StabilizerGroup::GaSemidirectZ2,
                family: Some(fam),
                generators,
                normal_form: (normal_forms::upsilon(), normal_forms::quadritangent()),
            })
        }
        TangencyType::NotEvenTouching => Err(Error::PairNotClassified),
    }
}

/// Identity component of `Aut(V)` attached to the tangency type.
pub fn pair_to_aut0v(t: TangencyType) -> Result<Aut0> {
    match t {
        TangencyType::Equal => Ok(Aut0::GL2),
        TangencyType::Quadritangent => Ok(Aut0::GaGm),
        TangencyType::Bitangent => Ok(Aut0::Torus2),
        TangencyType::NotEvenTouching => Err(Error::PairNotClassified),
    }
}
