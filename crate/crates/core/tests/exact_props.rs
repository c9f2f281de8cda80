use num_traits::Zero;
use proptest::prelude::*;

use fmclass_core::exact::rational::{frac, int, Rational};
use fmclass_core::exact::{discriminant, poly_gcd, resultant, squarefree_decomposition, RatMatrix, UniPoly};

fn poly(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-6i64..=6, 1..=max_deg + 1).prop_map(|c| UniPoly::from_ints(&c))
}

/// Polynomial of exact degree `1..=max_deg`.
fn proper_poly(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    (
        prop::collection::vec(-6i64..=6, 1..=max_deg),
        prop_oneof![-4i64..=-1, 1i64..=4],
    )
        .prop_map(|(mut c, lead)| {
            c.push(lead);
            UniPoly::from_ints(&c)
        })
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec((-5i64..=5, 1i64..=3), rows * cols)
        .prop_map(move |v| RatMatrix::from_vec(rows, cols, v.into_iter().map(|(n, d)| frac(n, d)).collect()).unwrap())
}

/// Sylvester matrix determinant, the textbook definition of the resultant.
fn sylvester_resultant(a: &UniPoly, b: &UniPoly) -> Rational {
    let m = a.coeffs().len() - 1;
    let n = b.coeffs().len() - 1;
    let size = m + n;
    let mut s = RatMatrix::zeros(size, size);
    for row in 0..n {
        for k in 0..=m {
            s[(row, row + k)] = a.coeff(m - k);
        }
    }
    for row in 0..m {
        for k in 0..=n {
            s[(n + row, row + k)] = b.coeff(n - k);
        }
    }
    s.determinant().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gcd_divides_both(a in poly(5), b in poly(5), c in proper_poly(3)) {
        let (a, b) = (&a * &c, &b * &c);
        let g = poly_gcd(&a, &b);
        if !(a.is_zero() && b.is_zero()) {
            prop_assert!(g.divides(&a) && g.divides(&b));
            prop_assert!(c.divides(&g));
        }
    }

    #[test]
    fn rank_plus_nullity(m in matrix(4, 5)) {
        prop_assert_eq!(m.rank() + m.kernel_basis().len(), 5);
        for v in m.kernel_basis() {
            prop_assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn cayley_hamilton(m in matrix(4, 4)) {
        let cp = m.char_poly().unwrap();
        prop_assert!(cp.eval_matrix(&m).is_zero());
        prop_assert_eq!(cp.coeff(3), -m.trace());
        prop_assert_eq!(cp.coeff(0), m.determinant().unwrap());
    }

    #[test]
    fn inverse_is_two_sided(m in matrix(3, 3)) {
        if let Ok(inv) = m.inverse() {
            prop_assert_eq!(&(&m * &inv), &RatMatrix::identity(3));
            prop_assert_eq!(&(&inv * &m), &RatMatrix::identity(3));
        } else {
            prop_assert!(m.determinant().unwrap().is_zero());
        }
    }

    #[test]
    fn resultant_matches_sylvester(a in proper_poly(4), b in proper_poly(4)) {
        prop_assert_eq!(resultant(&a, &b), sylvester_resultant(&a, &b));
    }

    #[test]
    fn cubic_discriminant_formula(a in 1i64..=5, b in -6i64..=6, c in -6i64..=6, d in -6i64..=6) {
        let p = UniPoly::from_ints(&[d, c, b, a]);
        let (a, b, c, d) = (int(a), int(b), int(c), int(d));
        let want = &b * &b * &c * &c - int(4) * &a * &c * &c * &c - int(4) * &b * &b * &b * &d
            - int(27) * &a * &a * &d * &d + int(18) * &a * &b * &c * &d;
        prop_assert_eq!(discriminant(&p).unwrap(), want);
    }

    #[test]
    fn squarefree_decomposition_reconstructs(f1 in proper_poly(2), f2 in proper_poly(2)) {
        let p = &f1 * &(&f2 * &f2);
        let parts = squarefree_decomposition(&p).unwrap();
        let rebuilt = parts.iter().fold(UniPoly::one(), |acc, (q, k)| &acc * &q.pow(*k as u32));
        prop_assert_eq!(rebuilt.monic(), p.monic());
        for (q, _) in &parts {
            prop_assert_eq!(poly_gcd(q, &q.derivative()).degree().finite(), Some(0));
        }
    }
}
