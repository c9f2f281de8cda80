//! Chevalley basis and structure constants of g2.
//!
//! The basis is fixed as
//!
//! | index | element |
//! |-------|---------|
//! | 0, 1  | `h1`, `h2` (coroots of `alpha1`, `alpha2`) |
//! | 2..8  | `e_alpha` for `alpha` in [`POSITIVE_ROOTS`] order: (1,0), (0,1), (1,1), (2,1), (3,1), (3,2) |
//! | 8..14 | `e_{-alpha}` in the same order |
//!
//! Structure constants are produced from the 7-dimensional representation:
//! the four Chevalley generators are written down as 7x7 matrices on the
//! weight basis `2a1+a2, a1+a2, a1, 0, -a1, -a1-a2, -2a1-a2`, positive root
//! vectors are `e_{beta+alpha_i} = [e_{alpha_i}, e_beta] / (p+1)` and each
//! negative root vector is rescaled so that `[e_alpha, e_{-alpha}] = h_alpha`.
//! Every bracket is then read back in the basis, and the result is checked
//! for antisymmetry, the Jacobi identity and the root-space relations.

use std::sync::OnceLock;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::roots::{Root, RootSystemG2, ALPHA1, ALPHA2, POSITIVE_ROOTS};
use crate::error::{Error, Result};
use crate::exact::rational::{self, Rational};
use crate::exact::{RatMatrix, UniPoly};

pub const DIM: usize = 14;
pub const RANK: usize = 2;

/// An element of g2 as 14 coordinates in the fixed basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct G2Element {
    coords: Vec<Rational>,
}

impl G2Element {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != DIM {
            return Err(Error::Arity {
                expected: DIM,
                got: coords.len(),
            });
        }
        Ok(Self { coords })
    }

    pub fn zero() -> Self {
        Self {
            coords: vec![Rational::zero(); DIM],
        }
    }

    pub fn basis(i: usize) -> Self {
        let mut g = Self::zero();
        g.coords[i] = Rational::one();
        g
    }

    pub fn from_ints(c: &[i64]) -> Result<Self> {
        Self::new(c.iter().map(|&x| rational::int(x)).collect())
    }

    /// Cartan element `h` with `alpha1(h) = a` and `alpha2(h) = b`.
    ///
    /// Since `alpha1(h1) = 2, alpha2(h1) = -3, alpha1(h2) = -1, alpha2(h2) = 2`,
    /// this is `(2a+b) h1 + (3a+2b) h2`.
    pub fn cartan(a: &Rational, b: &Rational) -> Self {
        let mut g = Self::zero();
        g.coords[0] = a * rational::int(2) + b;
        g.coords[1] = a * rational::int(3) + b * rational::int(2);
        g
    }

    pub fn root_vector(root: Root) -> Self {
        let idx = root_index(root).expect("not a root of G2");
        Self::basis(idx)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            coords: self.coords.iter().map(|a| a * s).collect(),
        }
    }

    /// Projection to the Cartan subalgebra, read as `(alpha1(h), alpha2(h))`.
    pub fn cartan_root_values(&self) -> (Rational, Rational) {
        let (x, y) = (&self.coords[0], &self.coords[1]);
        (x * rational::int(2) - y, x * rational::int(-3) + y * rational::int(2))
    }

    pub fn is_cartan(&self) -> bool {
        self.coords[2..].iter().all(Zero::is_zero)
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Self {
        Self {
            coords: (0..DIM).map(|_| rational::int(rng.gen_range(-bound..=bound))).collect(),
        }
    }
}

impl TryFrom<Vec<String>> for G2Element {
    type Error = Error;
    fn try_from(v: Vec<String>) -> Result<Self> {
        let coords = v.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>>>()?;
        Self::new(coords)
    }
}

impl From<G2Element> for Vec<String> {
    fn from(g: G2Element) -> Self {
        g.coords.iter().map(rational::format).collect()
    }
}

/// Basis index of a root vector.
pub fn root_index(root: Root) -> Option<usize> {
    if let Some(i) = POSITIVE_ROOTS.iter().position(|&r| r == root) {
        return Some(2 + i);
    }
    POSITIVE_ROOTS.iter().position(|&r| r.neg() == root).map(|i| 8 + i)
}

pub fn basis_label(i: usize) -> String {
    match i {
        0 => "h1".into(),
        1 => "h2".into(),
        2..=7 => format!("e{}", POSITIVE_ROOTS[i - 2]),
        8..=13 => format!("e{}", POSITIVE_ROOTS[i - 8].neg()),
        _ => panic!("basis index out of range"),
    }
}

/// Which pair of degree-6 invariants spans the sextic space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SexticCandidates {
    /// `e2^3` and `e6` of the eigenvalues of `ad g`.
    E2CubedE6,
    /// `e2 * e4` and `e6`.
    E2E4E6,
}

/// Change of basis from the candidate invariants to `(delta_long, delta_short)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SexticCalibration {
    pub candidates: SexticCandidates,
    pub long: [Rational; 2],
    pub short: [Rational; 2],
}

#[derive(Debug, Clone)]
pub struct G2Structure {
    pub roots: RootSystemG2,
    /// `brackets[i][j]` holds the coordinates of `[b_i, b_j]`.
    brackets: Vec<Vec<Vec<Rational>>>,
    killing: RatMatrix,
    /// 196 x 14 matrix of `x -> vec(ad x)`.
    ad_embedding: RatMatrix,
    /// Entries of `ad x` that determine `x`, and the inverse of that 14 x 14 block.
    ad_pivot_entries: Vec<usize>,
    ad_pivot_inverse: RatMatrix,
    pub(crate) calibration: SexticCalibration,
}

impl G2Structure {
    /// Lazily built shared instance.
    pub fn shared() -> &'static G2Structure {
        static CELL: OnceLock<G2Structure> = OnceLock::new();
        CELL.get_or_init(|| build_g2().expect("G2 structure self-check"))
    }

    pub fn dim(&self) -> usize {
        DIM
    }

    /// Dimension of the Cartan subalgebra.
    pub fn rank(&self) -> usize {
        RANK
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Rational] {
        &self.brackets[i][j]
    }

    pub fn bracket(&self, x: &G2Element, y: &G2Element) -> G2Element {
        let mut out = vec![Rational::zero(); DIM];
        for (i, xi) in x.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                for (k, s) in self.brackets[i][j].iter().enumerate() {
                    if !s.is_zero() {
                        out[k] += &c * s;
                    }
                }
            }
        }
        G2Element { coords: out }
    }

    /// Matrix of `x -> [g, x]`.
    pub fn ad_matrix(&self, g: &G2Element) -> RatMatrix {
        let mut m = RatMatrix::zeros(DIM, DIM);
        for (i, gi) in g.coords.iter().enumerate() {
            if gi.is_zero() {
                continue;
            }
            for j in 0..DIM {
                for (k, s) in self.brackets[i][j].iter().enumerate() {
                    if !s.is_zero() {
                        m[(k, j)] += gi * s;
                    }
                }
            }
        }
        m
    }

    /// Preimage of a matrix under `ad` (injective on g2).
    pub fn ad_preimage(&self, m: &RatMatrix) -> Result<G2Element> {
        if m.rows() != DIM || m.cols() != DIM {
            return Err(Error::DimensionMismatch {
                expected: DIM * DIM,
                got: m.rows() * m.cols(),
            });
        }
        let picked: Vec<Rational> = self.ad_pivot_entries.iter().map(|&k| m.entries()[k].clone()).collect();
        let x = G2Element::new(self.ad_pivot_inverse.mul_vec(&picked))?;
        if self.ad_matrix(&x) != *m {
            return Err(Error::Inconsistent);
        }
        Ok(x)
    }

    pub fn killing_matrix(&self) -> &RatMatrix {
        &self.killing
    }

    pub fn killing(&self, x: &G2Element, y: &G2Element) -> Rational {
        let kx = self.killing.mul_vec(&x.coords);
        kx.iter().zip(&y.coords).map(|(a, b)| a * b).sum()
    }

    /// `N_{alpha,beta}` with `[e_alpha, e_beta] = N e_{alpha+beta}`; `None`
    /// when `alpha + beta` is not a root.
    pub fn structure_constant(&self, alpha: Root, beta: Root) -> Option<Rational> {
        let sum = alpha.add(beta);
        let k = root_index(sum)?;
        let (i, j) = (root_index(alpha)?, root_index(beta)?);
        Some(self.brackets[i][j][k].clone())
    }

    /// `exp(ad x)` for `ad x` nilpotent, as a finite series. Returns `None`
    /// if `ad x` is not nilpotent.
    pub fn exp_ad(&self, x: &G2Element) -> Option<RatMatrix> {
        let a = self.ad_matrix(x);
        let mut term = RatMatrix::identity(DIM);
        let mut sum = term.clone();
        for k in 1..=DIM {
            term = (&term * &a).scale(&rational::frac(1, k as i64));
            if term.is_zero() {
                return Some(sum);
            }
            sum = &sum + &term;
        }
        None
    }

    /// Apply a 14x14 automorphism matrix to an element.
    pub fn apply(&self, m: &RatMatrix, g: &G2Element) -> G2Element {
        G2Element {
            coords: m.mul_vec(&g.coords),
        }
    }

    /// Characteristic polynomial of `ad g`.
    pub fn ad_char_poly(&self, g: &G2Element) -> UniPoly {
        self.ad_matrix(g).char_poly().expect("square")
    }

    pub fn table(&self) -> StructureTable {
        let mut brackets = Vec::new();
        for i in 0..DIM {
            for j in i + 1..DIM {
                let terms: Vec<BracketTerm> = self.brackets[i][j]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| BracketTerm {
                        basis: basis_label(k),
                        coefficient: rational::format(c),
                    })
                    .collect();
                if !terms.is_empty() {
                    brackets.push(BracketEntry {
                        left: basis_label(i),
                        right: basis_label(j),
                        terms,
                    });
                }
            }
        }
        StructureTable {
            basis: (0..DIM).map(basis_label).collect(),
            roots: self.roots.roots.clone(),
            brackets,
            killing: (0..DIM)
                .map(|i| self.killing.row(i).iter().map(rational::format).collect())
                .collect(),
        }
    }
}

/// JSON-friendly dump of the structure constants and Killing form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureTable {
    pub basis: Vec<String>,
    pub roots: Vec<Root>,
    /// Nonzero brackets `[left, right]` with `left < right` in basis order.
    pub brackets: Vec<BracketEntry>,
    pub killing: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub terms: Vec<BracketTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketTerm {
    pub basis: String,
    pub coefficient: String,
}

fn commutator(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    &(a * b) - &(b * a)
}

/// The four Chevalley generators in the 7-dimensional representation.
fn seven_dim_generators() -> [RatMatrix; 4] {
    let set = |entries: &[(usize, usize, i64)]| {
        let mut m = RatMatrix::zeros(7, 7);
        for &(i, j, v) in entries {
            m[(i, j)] = rational::int(v);
        }
        m
    };
    let e1 = set(&[(0, 1, 1), (2, 3, 2), (3, 4, 1), (5, 6, 1)]);
    let e2 = set(&[(1, 2, 1), (4, 5, 1)]);
    let f1 = set(&[(1, 0, 1), (3, 2, 1), (4, 3, 2), (6, 5, 1)]);
    let f2 = set(&[(2, 1, 1), (5, 4, 1)]);
    [e1, e2, f1, f2]
}

/// Scalar `c` with `b = c * a`, if one exists and `a != 0`.
fn proportionality(a: &RatMatrix, b: &RatMatrix) -> Option<Rational> {
    let (k, ak) = a.entries().iter().enumerate().find(|(_, x)| !x.is_zero())?;
    let c = &b.entries()[k] / ak;
    (a.scale(&c) == *b).then_some(c)
}

/// Builds g2 and verifies it. Any failed self-check names the offending
/// basis elements.
pub fn build_g2() -> Result<G2Structure> {
    let roots = RootSystemG2::new();
    let [e1, e2, f1, f2] = seven_dim_generators();
    let h1 = commutator(&e1, &f1);
    let h2 = commutator(&e2, &f2);

    let mut pos: Vec<(Root, RatMatrix)> = vec![(ALPHA1, e1.clone()), (ALPHA2, e2.clone())];
    let mut neg: Vec<(Root, RatMatrix)> = vec![(ALPHA1.neg(), f1.clone()), (ALPHA2.neg(), f2.clone())];
    let lookup = |list: &[(Root, RatMatrix)], r: Root| list.iter().find(|(x, _)| *x == r).map(|(_, m)| m.clone());
    for &target in &POSITIVE_ROOTS[2..] {
        // build e_target from a lower root plus a simple root
        let (simple, ei, fi) = if roots.contains(target.sub(ALPHA1)) && lookup(&pos, target.sub(ALPHA1)).is_some() {
            (ALPHA1, &e1, &f1)
        } else {
            (ALPHA2, &e2, &f2)
        };
        let lower = target.sub(simple);
        let e_lower = lookup(&pos, lower)
            .ok_or_else(|| Error::StructureCheck(format!("no root vector for {lower} while building {target}")))?;
        let f_lower = lookup(&neg, lower.neg()).expect("negative built alongside positive");
        let p = roots.string_down(simple, lower);
        let e_t = commutator(ei, &e_lower).scale(&rational::frac(1, p as i64 + 1));
        let f_raw = commutator(fi, &f_lower);
        let [cx, cy] = target.coroot();
        let h_t = &h1.scale(&cx) + &h2.scale(&cy);
        let c = proportionality(&commutator(&e_t, &f_raw), &h_t).ok_or_else(|| {
            Error::StructureCheck(format!("[e{target}, e{}] not proportional to its coroot", target.neg()))
        })?;
        pos.push((target, e_t));
        neg.push((target.neg(), f_raw.scale(&c)));
    }

    let mut mats: Vec<RatMatrix> = vec![h1, h2];
    mats.extend(POSITIVE_ROOTS.iter().map(|&r| lookup(&pos, r).expect("built")));
    mats.extend(POSITIVE_ROOTS.iter().map(|&r| lookup(&neg, r.neg()).expect("built")));

    let mut flat = RatMatrix::zeros(49, DIM);
    for (j, m) in mats.iter().enumerate() {
        for (i, x) in m.entries().iter().enumerate() {
            flat[(i, j)] = x.clone();
        }
    }
    if flat.rank() != DIM {
        return Err(Error::StructureCheck(format!(
            "basis matrices span dimension {} instead of 14",
            flat.rank()
        )));
    }

    let mut brackets = vec![vec![vec![Rational::zero(); DIM]; DIM]; DIM];
    for i in 0..DIM {
        for j in 0..DIM {
            let c = commutator(&mats[i], &mats[j]);
            brackets[i][j] = flat.solve_linear(c.entries()).map_err(|_| {
                Error::StructureCheck(format!(
                    "[{}, {}] leaves the span of the basis",
                    basis_label(i),
                    basis_label(j)
                ))
            })?;
        }
    }

    let mut g = G2Structure {
        roots,
        brackets,
        killing: RatMatrix::zeros(DIM, DIM),
        ad_embedding: RatMatrix::zeros(DIM * DIM, DIM),
        ad_pivot_entries: Vec::new(),
        ad_pivot_inverse: RatMatrix::identity(DIM),
        calibration: SexticCalibration {
            candidates: SexticCandidates::E2CubedE6,
            long: [Rational::zero(), Rational::zero()],
            short: [Rational::zero(), Rational::zero()],
        },
    };
    let ads: Vec<RatMatrix> = (0..DIM).map(|i| g.ad_matrix(&G2Element::basis(i))).collect();
    for (j, a) in ads.iter().enumerate() {
        for (i, x) in a.entries().iter().enumerate() {
            g.ad_embedding[(i, j)] = x.clone();
        }
    }
    let pivots = g.ad_embedding.transpose().rref().pivots;
    if pivots.len() != DIM {
        return Err(Error::StructureCheck("ad is not injective".into()));
    }
    let block = RatMatrix::from_rows(pivots.iter().map(|&k| g.ad_embedding.row(k).to_vec()).collect())?;
    g.ad_pivot_inverse = block.inverse()?;
    g.ad_pivot_entries = pivots;
    for i in 0..DIM {
        for j in 0..DIM {
            g.killing[(i, j)] = (&ads[i] * &ads[j]).trace();
        }
    }
    verify_structure(&g)?;
    g.calibration = super::sextics::calibrate(&g)?;
    Ok(g)
}

/// Antisymmetry, Jacobi on all basis triples, root-space eigenvalues and
/// Killing-form nondegeneracy and invariance.
pub fn verify_structure(g: &G2Structure) -> Result<()> {
    let fail = |msg: String| Err(Error::StructureCheck(msg));
    for i in 0..DIM {
        for j in 0..DIM {
            let s: Vec<Rational> = g.brackets[i][j]
                .iter()
                .zip(&g.brackets[j][i])
                .map(|(a, b)| a + b)
                .collect();
            if s.iter().any(|x| !x.is_zero()) {
                return fail(format!(
                    "antisymmetry fails for ({}, {})",
                    basis_label(i),
                    basis_label(j)
                ));
            }
        }
    }
    if let Some((i, j, k)) = jacobi_violation(g) {
        return fail(format!(
            "Jacobi identity fails on ({}, {}, {})",
            basis_label(i),
            basis_label(j),
            basis_label(k)
        ));
    }
    for (ri, &root) in g.roots.roots.iter().enumerate() {
        let idx = 2 + ri;
        for (hi, h) in [(0usize, G2Element::basis(0)), (1, G2Element::basis(1))] {
            let (a, b) = h.cartan_root_values();
            let expect = G2Element::basis(idx).scale(&root.value_at(&a, &b));
            if g.bracket(&h, &G2Element::basis(idx)) != expect {
                return fail(format!("[{}, e{root}] is not alpha(h) e{root}", basis_label(hi)));
            }
        }
    }
    if g.killing != g.killing.transpose() || g.killing.rank() != DIM {
        return fail("Killing form is not symmetric and nondegenerate".into());
    }
    Ok(())
}

/// First basis triple `(i, j, k)`, `i < j < k`, violating Jacobi.
pub fn jacobi_violation(g: &G2Structure) -> Option<(usize, usize, usize)> {
    let b = |i: usize| G2Element::basis(i);
    for i in 0..DIM {
        for j in i + 1..DIM {
            let bij = G2Element {
                coords: g.brackets[i][j].clone(),
            };
            for k in j + 1..DIM {
                let bjk = G2Element {
                    coords: g.brackets[j][k].clone(),
                };
                let bki = G2Element {
                    coords: g.brackets[k][i].clone(),
                };
                let sum = g
                    .bracket(&b(i), &bjk)
                    .add(&g.bracket(&b(j), &bki))
                    .add(&g.bracket(&b(k), &bij));
                if !sum.is_zero() {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}
