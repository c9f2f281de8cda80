//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use num_bigint::BigInt;
use num_integer::Integer;

use super::matrix::{int_matmul, RatMatrix};
use super::rational::{self, Rational};
use crate::error::{Error, Result};

/// Degree of a polynomial. The zero polynomial gets its own tag so that no
/// arithmetic is ever done on a sentinel value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

/// Coefficients are stored lowest degree first with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `t - r`
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.leading_coeff();
        Self::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rational::int(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
    }

    /// Horner evaluation at a square matrix.
    /// `p(M)` by Horner's rule over the integers after clearing denominators.
    pub fn eval_matrix(&self, m: &RatMatrix) -> RatMatrix {
        let n = m.rows();
        let (d, mi) = m.integer_scaled();
        let Some(top) = self.degree().finite() else {
            return RatMatrix::zeros(n, n);
        };
        let l = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        // d^top * l * p(M/d) = sum_k (l c_k d^(top-k)) M^k
        let mut acc = vec![BigInt::zero(); n * n];
        let mut dpow = vec![BigInt::one()];
        for _ in 0..top {
            let next = dpow.last().expect("nonempty") * &d;
            dpow.push(next);
        }
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            acc = int_matmul(n, &acc, &mi);
            let e = c.numer() * (&l / c.denom()) * &dpow[top - k];
            for i in 0..n {
                acc[i * n + i] += &e;
            }
        }
        RatMatrix::from_scaled_integers(n, n, acc, &(l * &dpow[top]))
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().finite().expect("polynomial division by zero");
        let lc = divisor.leading_coeff();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().finite() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Polynomial composition `self(inner(t))`.
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r;
    }
    a.monic()
}

/// `p / gcd(p, p')`, made monic.
/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn poly_inverse_mod(a: &UniPoly, m: &UniPoly) -> Option<UniPoly> {
    // invariant: r0 = s0 a (mod m), r1 = s1 a (mod m)
    let (mut r0, mut r1) = (m.clone(), a.rem(m));
    let (mut s0, mut s1) = (UniPoly::zero(), UniPoly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s = &s0 - &(&q * &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.degree() != Degree::Finite(0) {
        return None;
    }
    Some(s0.scale(&(Rational::one() / r0.leading_coeff())).rem(m))
}

/// `f(p) mod m` by Horner's rule, reducing at every step.
pub fn compose_mod(f: &UniPoly, p: &UniPoly, m: &UniPoly) -> UniPoly {
    let mut acc = UniPoly::zero();
    for c in f.coeffs().iter().rev() {
        acc = (&(&acc * p) + &UniPoly::constant(c.clone())).rem(m);
    }
    acc
}

pub fn squarefree_part(p: &UniPoly) -> Result<UniPoly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = poly_gcd(p, &p.derivative());
    Ok(p.div_rem(&g).0.monic())
}

/// Yun's algorithm: returns `(a_i, i)` with `p = lc * prod a_i^i`, each `a_i`
/// monic, squarefree and pairwise coprime. Factors equal to 1 are omitted.
pub fn squarefree_decomposition(p: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    if p.degree() == Degree::Finite(0) {
        return Ok(out);
    }
    let p = p.monic();
    let dp = p.derivative();
    let a0 = poly_gcd(&p, &dp);
    let mut b = p.div_rem(&a0).0;
    let mut c = dp.div_rem(&a0).0;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    loop {
        let a = poly_gcd(&b, &d);
        if a.degree() != Degree::Finite(0) {
            out.push((a.clone(), i));
        }
        b = b.div_rem(&a).0;
        if b.degree() == Degree::Finite(0) {
            break;
        }
        c = d.div_rem(&a).0;
        d = &c - &b.derivative();
        i += 1;
    }
    Ok(out)
}

/// Resultant by the Euclidean remainder sequence.
pub fn resultant(a: &UniPoly, b: &UniPoly) -> Rational {
    let (Some(m), Some(n)) = (a.degree().finite(), b.degree().finite()) else {
        return Rational::zero();
    };
    if n == 0 {
        return pow_rat(&b.leading_coeff(), m);
    }
    if m == 0 {
        return pow_rat(&a.leading_coeff(), n);
    }
    let r = a.rem(b);
    let Some(k) = r.degree().finite() else {
        return Rational::zero();
    };
    let sign = if (m * n) % 2 == 1 {
        -Rational::one()
    } else {
        Rational::one()
    };
    sign * pow_rat(&b.leading_coeff(), m - k) * resultant(b, &r)
}

/// `disc(p) = (-1)^{n(n-1)/2} Res(p, p') / lc(p)`.
pub fn discriminant(p: &UniPoly) -> Result<Rational> {
    let n = match p.degree() {
        Degree::NegInfinity => return Err(Error::ZeroPolynomial),
        Degree::Finite(0) => return Err(Error::ConstantPolynomial),
        Degree::Finite(n) => n,
    };
    let res = resultant(p, &p.derivative());
    let signed = if (n * (n - 1) / 2) % 2 == 1 { -res } else { res };
    Ok(signed / p.leading_coeff())
}

fn pow_rat(r: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * r)
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Rational::zero();
            let abs = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = k == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{}", rational::format(&abs))?;
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{frac, int};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(poly_gcd(&p(&[0, 0, 0, 3]), &UniPoly::zero()), p(&[0, 0, 0, 1]));
        // x^3+x+1 and 3x^2+1: remainder sequence ends in a nonzero constant
        assert_eq!(poly_gcd(&p(&[1, 1, 0, 1]), &p(&[1, 0, 3])), UniPoly::one());
        assert!(poly_gcd(&UniPoly::zero(), &UniPoly::zero()).is_zero());
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&p(&[0, 0, -1, 1])).unwrap(), p(&[0, -1, 1]));
        assert_eq!(squarefree_part(&p(&[0, 0, 0, 1])).unwrap(), p(&[0, 1]));
        assert_eq!(squarefree_part(&p(&[1, 1, 0, 1])).unwrap(), p(&[1, 1, 0, 1]));
        assert_eq!(squarefree_part(&UniPoly::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn discriminant_examples() {
        // x^2 + 3x + 2 -> 9 - 8
        assert_eq!(discriminant(&p(&[2, 3, 1])).unwrap(), int(1));
        // x^3 + px + q with p = 2, q = 5: -4*8 - 27*25
        assert_eq!(discriminant(&p(&[5, 2, 0, 1])).unwrap(), int(-32 - 675));
        assert_eq!(discriminant(&p(&[-1, 0, 0, 1])).unwrap(), int(-27));
        assert_eq!(discriminant(&p(&[4])), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn discriminant_is_scale_aware() {
        // 2x^2 + 3x + 1: b^2 - 4ac = 1
        assert_eq!(discriminant(&p(&[1, 3, 2])).unwrap(), int(1));
        let half = p(&[1, 3, 2]).scale(&frac(1, 2));
        assert_eq!(discriminant(&half).unwrap(), frac(1, 4));
    }

    #[test]
    fn yun_decomposition() {
        // (t-1)^3 (t+2)^2 t
        let f = &(&p(&[-1, 1]).pow(3) * &p(&[2, 1]).pow(2)) * &p(&[0, 1]);
        let d = squarefree_decomposition(&f).unwrap();
        assert_eq!(d, vec![(p(&[0, 1]), 1), (p(&[2, 1]), 2), (p(&[-1, 1]), 3)]);
    }

    #[test]
    fn degree_sentinel() {
        assert_eq!(UniPoly::zero().degree(), Degree::NegInfinity);
        assert_eq!(p(&[0, 0, 1, 0]).degree(), Degree::Finite(2));
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-6, 11, -6, 1]).to_string(), "t^3 - 6t^2 + 11t - 6");
        assert_eq!(UniPoly::zero().to_string(), "0");
    }

    #[test]
    fn inverse_mod() {
        let m = p(&[-1, 0, 0, 1]);
        let a = p(&[2, 1]);
        let inv = poly_inverse_mod(&a, &m).unwrap();
        assert_eq!((&a * &inv).rem(&m), UniPoly::one());
        // t - 1 divides t^3 - 1
        assert_eq!(poly_inverse_mod(&p(&[-1, 1]), &m), None);
    }

    #[test]
    fn compose_mod_matches_compose() {
        let f = p(&[1, -2, 0, 3]);
        let g = p(&[0, 1, 1]);
        let m = p(&[5, 0, 1, 1]);
        assert_eq!(compose_mod(&f, &g, &m), f.compose(&g).rem(&m));
    }
}
