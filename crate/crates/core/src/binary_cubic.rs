//! Binary cubic forms, the action of `GL_2` and of translations on
//! `M_3 ⊕ C`, and the seven orbits of `GL_2` on `P(M_3 ⊕ C)`.
//!
//! A point `[(f, c)]` is classified by two pieces of data: whether `c`
//! vanishes and the root type of `f`. The hyperplane `c = 0` is `P(M_3)`,
//! where the cubes form the twisted cubic `Γ`, the forms with a repeated
//! root form its tangent developable `Δ_0`, and the rest is open. Off that
//! hyperplane, `f = 0` is the vertex `P = [(0, 1)]`; the cone `N` over `Γ`
//! with vertex `P` is `{f a cube}`; the cone `Δ` over `Δ_0` is `{disc f = 0}`.
//! `GL_2` fixes `c` and acts on `f` by substitution, so it preserves both
//! pieces of data, and it is transitive on each of the seven resulting sets.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{self, Rational};
use crate::exact::RatMatrix;

/// `a0 x^3 + a1 x^2 y + a2 x y^2 + a3 y^3`
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinaryCubic {
    #[serde(with = "rational::serde_vec_str")]
    coeffs: Vec<Rational>,
}

impl BinaryCubic {
    pub fn new(coeffs: [Rational; 4]) -> Self {
        Self {
            coeffs: coeffs.to_vec(),
        }
    }

    pub fn from_slice(c: &[Rational]) -> Result<Self> {
        if c.len() != 4 {
            return Err(Error::Arity {
                expected: 4,
                got: c.len(),
            });
        }
        Ok(Self { coeffs: c.to_vec() })
    }

    pub fn from_ints(a0: i64, a1: i64, a2: i64, a3: i64) -> Self {
        Self::new([a0, a1, a2, a3].map(rational::int))
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0, 0, 0)
    }

    /// `(p x + q y)(r x + s y)(u x + v y)`
    pub fn from_linear_factors(factors: [(Rational, Rational); 3]) -> Self {
        let mut f = vec![Rational::one()];
        for (p, q) in factors {
            f = form_mul(&f, &[p, q]);
        }
        Self { coeffs: f }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let [a, b, c, d] = self.parts();
        a * x * x * x + b * x * x * y + c * x * y * y + d * y * y * y
    }

    fn parts(&self) -> [&Rational; 4] {
        [&self.coeffs[0], &self.coeffs[1], &self.coeffs[2], &self.coeffs[3]]
    }

    /// Hessian covariant divided by 4: `(3ac - b^2, 9ad - bc, 3bd - c^2)`
    /// as coefficients of `x^2, xy, y^2`.
    pub fn hessian(&self) -> [Rational; 3] {
        let [a, b, c, d] = self.parts();
        let i = rational::int;
        [i(3) * a * c - b * b, i(9) * a * d - b * c, i(3) * b * d - c * c]
    }

    pub fn discriminant(&self) -> Rational {
        let [a, b, c, d] = self.parts();
        let i = rational::int;
        b * b * c * c - i(4) * a * c * c * c - i(4) * b * b * b * d - i(27) * a * a * d * d + i(18) * a * b * c * d
    }

    /// `(f ∘ m)(x, y) = f(m (x, y)^t)` for a 2x2 matrix `m`.
    pub fn substitute(&self, m: &RatMatrix) -> Self {
        let xp = [m[(0, 0)].clone(), m[(0, 1)].clone()];
        let yp = [m[(1, 0)].clone(), m[(1, 1)].clone()];
        let mut out = vec![Rational::zero(); 4];
        for (k, coeff) in self.coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let mut term = vec![coeff.clone()];
            for _ in 0..3 - k {
                term = form_mul(&term, &xp);
            }
            for _ in 0..k {
                term = form_mul(&term, &yp);
            }
            for (o, t) in out.iter_mut().zip(&term) {
                *o += t;
            }
        }
        Self { coeffs: out }
    }

    /// `f ∘ g^{-1}`.
    pub fn transform(&self, g: &RatMatrix) -> Result<Self> {
        check_2x2(g)?;
        Ok(self.substitute(&g.inverse()?))
    }
}

/// Product of binary forms listed from the pure `x` power down to pure `y`.
fn form_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn check_2x2(g: &RatMatrix) -> Result<()> {
    if g.rows() != 2 || g.cols() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            got: g.rows() * g.cols(),
        });
    }
    Ok(())
}

impl fmt::Display for BinaryCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let monos = ["x^3", "x^2y", "xy^2", "y^3"];
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .zip(monos)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, m)| format!("({}){m}", rational::format(c)))
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// A point `[(f, c)]` of `P(M_3 ⊕ C)`; equality is up to a common scalar.
#[derive(Debug, Clone, Eq, Serialize, Deserialize)]
pub struct P4Point {
    pub f: BinaryCubic,
    #[serde(with = "rational::serde_str")]
    pub c: Rational,
}

impl P4Point {
    pub fn new(f: BinaryCubic, c: Rational) -> Result<Self> {
        if f.is_zero() && c.is_zero() {
            return Err(Error::NullPoint);
        }
        Ok(Self { f, c })
    }

    /// Five values `a0, a1, a2, a3, c`.
    pub fn from_slice(v: &[Rational]) -> Result<Self> {
        if v.len() != 5 {
            return Err(Error::Arity {
                expected: 5,
                got: v.len(),
            });
        }
        Self::new(BinaryCubic::from_slice(&v[..4])?, v[4].clone())
    }

    pub fn vertex() -> Self {
        Self::new(BinaryCubic::zero(), Rational::one()).expect("nonzero")
    }

    pub fn scale(&self, l: &Rational) -> Self {
        Self {
            f: self.f.scale(l),
            c: &self.c * l,
        }
    }

    fn coords(&self) -> Vec<Rational> {
        let mut v = self.f.coeffs.clone();
        v.push(self.c.clone());
        v
    }
}

impl PartialEq for P4Point {
    fn eq(&self, other: &Self) -> bool {
        let (u, v) = (self.coords(), other.coords());
        let k = u.iter().position(|x| !x.is_zero()).expect("nonzero point");
        if v[k].is_zero() {
            return false;
        }
        let r = &v[k] / &u[k];
        u.iter().zip(&v).all(|(a, b)| &(a * &r) == b)
    }
}

/// `(f, c) -> (f ∘ g^{-1} + c h, c)`.
pub fn act(h: &BinaryCubic, g: &RatMatrix, p: &P4Point) -> Result<P4Point> {
    let f = p.f.transform(g)?.add(&h.scale(&p.c));
    P4Point::new(f, p.c.clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootType {
    Zero,
    TripleRoot,
    DoubleRoot,
    ThreeDistinct,
}

pub fn cubic_root_type(f: &BinaryCubic) -> RootType {
    if f.is_zero() {
        RootType::Zero
    } else if f.hessian().iter().all(Zero::is_zero) {
        RootType::TripleRoot
    } else if f.discriminant().is_zero() {
        RootType::DoubleRoot
    } else {
        RootType::ThreeDistinct
    }
}

/// The seven `GL_2`-orbits on `P(M_3 ⊕ C)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrbitLabel {
    VertexP,
    GammaCurve,
    TangentDevelopable,
    GenericPlanePoint,
    ConeMinus,
    DeltaMixed,
    OpenOrbit,
}

impl OrbitLabel {
    pub const ALL: [OrbitLabel; 7] = [
        Self::VertexP,
        Self::GammaCurve,
        Self::TangentDevelopable,
        Self::GenericPlanePoint,
        Self::ConeMinus,
        Self::DeltaMixed,
        Self::OpenOrbit,
    ];

    pub fn stratum(self) -> &'static str {
        match self {
            Self::VertexP => "{P}",
            Self::GammaCurve => "Γ",
            Self::TangentDevelopable => "Δ0 \\ Γ",
            Self::GenericPlanePoint => "P(M3) \\ Δ0",
            Self::ConeMinus => "N \\ (Γ ∪ {P})",
            Self::DeltaMixed => "Δ \\ (N ∪ Δ0)",
            Self::OpenOrbit => "open orbit",
        }
    }

    /// A representative point of the orbit.
    pub fn representative(self) -> P4Point {
        let (f, c) = match self {
            Self::VertexP => (BinaryCubic::zero(), 1),
            Self::GammaCurve => (BinaryCubic::from_ints(1, 0, 0, 0), 0),
            Self::TangentDevelopable => (BinaryCubic::from_ints(0, 1, 0, 0), 0),
            Self::GenericPlanePoint => (BinaryCubic::from_ints(0, 1, 1, 0), 0),
            Self::ConeMinus => (BinaryCubic::from_ints(1, 0, 0, 0), 1),
            Self::DeltaMixed => (BinaryCubic::from_ints(0, 1, 0, 0), 1),
            Self::OpenOrbit => (BinaryCubic::from_ints(0, 1, 1, 0), 1),
        };
        P4Point::new(f, rational::int(c)).expect("nonzero")
    }
}

pub fn classify_point(p: &P4Point) -> OrbitLabel {
    let at_infinity = p.c.is_zero();
    match (at_infinity, cubic_root_type(&p.f)) {
        (_, RootType::Zero) => OrbitLabel::VertexP,
        (true, RootType::TripleRoot) => OrbitLabel::GammaCurve,
        (true, RootType::DoubleRoot) => OrbitLabel::TangentDevelopable,
        (true, RootType::ThreeDistinct) => OrbitLabel::GenericPlanePoint,
        (false, RootType::TripleRoot) => OrbitLabel::ConeMinus,
        (false, RootType::DoubleRoot) => OrbitLabel::DeltaMixed,
        (false, RootType::ThreeDistinct) => OrbitLabel::OpenOrbit,
    }
}
