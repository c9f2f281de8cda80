//! The two Ad-invariant sextics `delta_long` and `delta_short`.
//!
//! On the Cartan subalgebra they are the products of the long (resp. short)
//! roots. The degree-6 invariants form a 2-dimensional space, so both are
//! fixed linear combinations of two polynomial invariants computable from
//! the characteristic polynomial of `ad g` without diagonalizing. The
//! coefficients are solved for on two Cartan points and re-checked on more.

use num_traits::Zero;

use super::roots::Root;
use super::structure::{G2Element, G2Structure, SexticCalibration, SexticCandidates};
use crate::error::{Error, Result};
use crate::exact::rational::{self, Rational};
use crate::exact::RatMatrix;

/// `(prod over long roots of alpha(h), prod over short roots)` for the Cartan
/// element with `alpha1(h) = a`, `alpha2(h) = b`.
pub fn root_product_sextics(roots: &[Root], a: &Rational, b: &Rational) -> (Rational, Rational) {
    let prod = |long: bool| -> Rational {
        roots
            .iter()
            .filter(|r| r.is_long() == long)
            .map(|r| r.value_at(a, b))
            .product()
    };
    (prod(true), prod(false))
}

/// Elementary symmetric functions `(e2, e4, e6)` of the eigenvalues of `ad g`.
fn symmetric_functions(g2: &G2Structure, g: &G2Element) -> (Rational, Rational, Rational) {
    let cp = g2.ad_char_poly(g);
    // det(tI - A) = sum (-1)^k e_k t^{14-k}
    (cp.coeff(12), cp.coeff(10), cp.coeff(8))
}

fn candidate_values(kind: SexticCandidates, (e2, e4, e6): &(Rational, Rational, Rational)) -> [Rational; 2] {
    match kind {
        SexticCandidates::E2CubedE6 => [e2 * e2 * e2, e6.clone()],
        SexticCandidates::E2E4E6 => [e2 * e4, e6.clone()],
    }
}

const CALIBRATION_POINTS: [(i64, i64); 2] = [(1, 2), (2, -5)];

/// Cartan points used to re-check a calibration at build time.
const CHECK_POINTS: [(i64, i64); 20] = [
    (1, 1),
    (1, 3),
    (2, 1),
    (3, -1),
    (-1, 4),
    (5, 2),
    (1, -4),
    (3, 7),
    (-2, 9),
    (4, -3),
    (7, 1),
    (1, 7),
    (-3, 2),
    (6, -1),
    (2, 3),
    (5, -8),
    (1, 5),
    (9, -4),
    (-4, 11),
    (3, 4),
];

pub(crate) fn calibrate(g2: &G2Structure) -> Result<SexticCalibration> {
    for kind in [SexticCandidates::E2CubedE6, SexticCandidates::E2E4E6] {
        let mut m = RatMatrix::zeros(2, 2);
        let mut long = Vec::new();
        let mut short = Vec::new();
        for (row, &(a, b)) in CALIBRATION_POINTS.iter().enumerate() {
            let (a, b) = (rational::int(a), rational::int(b));
            let vals = candidate_values(kind, &symmetric_functions(g2, &G2Element::cartan(&a, &b)));
            m[(row, 0)] = vals[0].clone();
            m[(row, 1)] = vals[1].clone();
            let (l, s) = root_product_sextics(&g2.roots.roots, &a, &b);
            long.push(l);
            short.push(s);
        }
        if m.rank() < 2 {
            continue;
        }
        let cl = m.solve_linear(&long)?;
        let cs = m.solve_linear(&short)?;
        let cal = SexticCalibration {
            candidates: kind,
            long: [cl[0].clone(), cl[1].clone()],
            short: [cs[0].clone(), cs[1].clone()],
        };
        for &(a, b) in &CHECK_POINTS {
            let (a, b) = (rational::int(a), rational::int(b));
            let h = G2Element::cartan(&a, &b);
            if evaluate(g2, &cal, &h) != root_product_sextics(&g2.roots.roots, &a, &b) {
                return Err(Error::StructureCheck(format!(
                    "sextic calibration disagrees with root products at ({a}, {b})"
                )));
            }
        }
        return Ok(cal);
    }
    Err(Error::StructureCheck(
        "degree-6 candidate invariants are dependent".into(),
    ))
}

fn evaluate(g2: &G2Structure, cal: &SexticCalibration, g: &G2Element) -> (Rational, Rational) {
    if g.is_zero() {
        return (Rational::zero(), Rational::zero());
    }
    let v = candidate_values(cal.candidates, &symmetric_functions(g2, g));
    (
        &cal.long[0] * &v[0] + &cal.long[1] * &v[1],
        &cal.short[0] * &v[0] + &cal.short[1] * &v[1],
    )
}

impl G2Structure {
    /// `(delta_long(g), delta_short(g))`.
    pub fn invariant_sextics(&self, g: &G2Element) -> (Rational, Rational) {
        evaluate(self, &self.calibration, g)
    }

    pub fn sextic_calibration(&self) -> &SexticCalibration {
        &self.calibration
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;
    use crate::g2::roots::ALPHA1;

    #[test]
    fn value_at_one_one() {
        let g2 = G2Structure::shared();
        let (l, s) = g2.invariant_sextics(&G2Element::cartan(&int(1), &int(1)));
        assert_eq!(s, int(-36));
        assert_eq!(l, int(-400));
    }

    #[test]
    fn short_root_killed() {
        let g2 = G2Structure::shared();
        let (l, s) = g2.invariant_sextics(&G2Element::cartan(&int(0), &int(1)));
        assert!(s.is_zero());
        assert_eq!(l, int(-4));
    }

    #[test]
    fn nilpotent_vanishes() {
        let g2 = G2Structure::shared();
        let (l, s) = g2.invariant_sextics(&G2Element::root_vector(ALPHA1));
        assert!(l.is_zero() && s.is_zero());
    }

    #[test]
    fn primary_candidates_are_independent() {
        assert_eq!(
            G2Structure::shared().sextic_calibration().candidates,
            SexticCandidates::E2CubedE6
        );
    }
}
