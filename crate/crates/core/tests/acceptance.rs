//! Acceptance criteria 1-10. Each test prints one `PASS`/`FAIL` line to the
//! real stdout (bypassing libtest capture) and then asserts.

use std::collections::BTreeMap;
use std::io::Write as _;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fmclass_core::binary_cubic::{act, classify_point, OrbitLabel};
use fmclass_core::conic_pairs::{classify_pair_at, normal_forms as conics, pair_stabilizer, Conic, TangencyType};
use fmclass_core::exact::rational::{self, int, Rational};
use fmclass_core::exact::RatMatrix;
use fmclass_core::flag_sextic::{classify_section, count_lines, normal_forms, LineCount, SurfaceType};
use fmclass_core::g2::structure::jacobi_violation;
use fmclass_core::g2::{G2Element, G2Structure, RootSystemG2, DIM, RANK, THETA};
use fmclass_core::groups::{ComponentGroup, ConnectedGroup, GroupDescriptor};
use fmclass_core::ledger::{evaluate_str, verify_known_identities};
use fmclass_core::pipeline::{
    classify_fourfold, conjugate_randomly, sample_generic, sample_v18a, sample_v18s, CubicConeCount, SigmaSType,
    VarietyName,
};
use fmclass_core::report::selftest_report;
use fmclass_core::selftest::{random_cubic_action, run_selftest, seed_from_env};

fn verdict(n: u32, name: &str, failures: &[String], elapsed: Duration) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    let mut line = format!("criterion {n:>2} {status} [{name}] ({elapsed:.2?})");
    if let Some(first) = failures.first() {
        line.push_str(&format!(": {} failure(s), first: {first}", failures.len()));
    }
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
    assert!(failures.is_empty(), "{line}\n{}", failures.join("\n"));
}

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(20_240_610);
    r.set_stream(stream);
    r
}

fn within(failures: &mut Vec<String>, elapsed: Duration, limit: Duration) {
    if elapsed >= limit {
        failures.push(format!("runtime {elapsed:.2?} exceeds {limit:?}"));
    }
}

#[test]
fn criterion_01_ledger_reproduction() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let expected = [
        ("H^4", 5),
        ("H^3*A", 0),
        ("H^2*A^2", -5),
        ("H*A^3", -8),
        ("A^4", -6),
        ("L^4", 18),
        ("L^3*B", 0),
        ("L^2*B^2", -3),
        ("L*B^3", -1),
        ("B^4", 1),
        ("(2H-A)^4", 18),
        ("(2H-A)^3*(H-A)", 0),
    ];
    for (expr, want) in expected {
        match evaluate_str(expr) {
            Ok((_, v)) if v == int(want) => {}
            other => failures.push(format!("{expr}: expected {want}, got {other:?}")),
        }
    }
    let checks = verify_known_identities();
    if checks.is_empty() {
        failures.push("no identities checked".into());
    }
    for c in checks.iter().filter(|c| !c.pass) {
        failures.push(format!("{}: expected {}, computed {}", c.name, c.expected, c.computed));
    }
    let elapsed = start.elapsed();
    within(&mut failures, elapsed, Duration::from_secs(1));
    verdict(1, "ledger reproduction", &failures, elapsed);
}

#[test]
fn criterion_02_section_table() {
    use ComponentGroup as K;
    use ConnectedGroup as G;
    let start = Instant::now();
    let mut failures = Vec::new();
    let names = ["diag(1,1,-2)", "companion(t^3-1)", "diag(1,2,-3)", "C1", "C2", "C3"];
    let rows = [
        (
            SurfaceType::ReducibleFirstKind,
            GroupDescriptor::new(G::GL2, K::Z2),
            4,
            LineCount::Infinite,
        ),
        (
            SurfaceType::SmoothDP6Z6,
            GroupDescriptor::new(G::Torus2, K::Z6),
            2,
            LineCount::Finite(6),
        ),
        (
            SurfaceType::SmoothDP6Z2,
            GroupDescriptor::new(G::Torus2, K::Z2),
            2,
            LineCount::Finite(6),
        ),
        (
            SurfaceType::A1,
            GroupDescriptor::new(G::GaGm, K::Z2),
            2,
            LineCount::Finite(4),
        ),
        (
            SurfaceType::A2,
            GroupDescriptor::new(G::Ga2SemiGm, K::Z2),
            3,
            LineCount::Finite(2),
        ),
        (
            SurfaceType::ReducibleSecondKind,
            GroupDescriptor::new(G::BorelPGL3, K::Z2),
            6,
            LineCount::Infinite,
        ),
    ];
    let mut r = rng(2);
    for ((name, c), (surface, group, dim, lines)) in names.iter().zip(normal_forms::all()).zip(rows) {
        let rep = classify_section(&c);
        if rep.surface_type != surface {
            failures.push(format!("{name}: surface {:?}, want {surface:?}", rep.surface_type));
        }
        if rep.aut_descriptor != group {
            failures.push(format!("{name}: group {}, want {group}", rep.aut_descriptor));
        }
        if rep.aut0_dim != dim {
            failures.push(format!("{name}: aut0_dim {}, want {dim}", rep.aut0_dim));
        }
        if count_lines(&c) != lines {
            failures.push(format!("{name}: lines {:?}, want {lines:?}", count_lines(&c)));
        }
        for _ in 0..100 {
            let a = RatMatrix::random_invertible(&mut r, 3, 3).scale(&rational::random_nonzero(&mut r, 5, 4));
            let conj = c.conjugate(&a).expect("invertible");
            if classify_section(&conj) != rep || count_lines(&conj) != count_lines(&c) {
                failures.push(format!("{name}: not invariant under conjugation by {a:?}"));
                break;
            }
        }
    }
    let elapsed = start.elapsed();
    within(&mut failures, elapsed, Duration::from_secs(5));
    verdict(2, "hyperplane-section table", &failures, elapsed);
}

#[test]
fn criterion_03_line_counts() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let cases = [
        ("smooth", normal_forms::generic(), 6),
        ("smooth (Z6)", normal_forms::cube_roots(), 6),
        ("A1", normal_forms::c1(), 4),
        ("A2", normal_forms::c2(), 2),
    ];
    for (name, c, want) in cases {
        let got = count_lines(&c);
        if got != LineCount::Finite(want) {
            failures.push(format!("{name}: {got:?}, want {want}"));
        }
    }
    verdict(3, "line counts", &failures, start.elapsed());
}

/// `ad x` built column by column from brackets with the basis.
fn explicit_ad(g2: &G2Structure, x: &G2Element) -> RatMatrix {
    let mut m = RatMatrix::zeros(DIM, DIM);
    for j in 0..DIM {
        let col = g2.bracket(x, &G2Element::basis(j));
        for (i, v) in col.coords().iter().enumerate() {
            m[(i, j)] = v.clone();
        }
    }
    m
}

fn trace_form(g2: &G2Structure, x: &G2Element, y: &G2Element) -> Rational {
    (&explicit_ad(g2, x) * &explicit_ad(g2, y)).trace()
}

#[test]
fn criterion_04_g2_construction() {
    let start = Instant::now();
    let g2 = G2Structure::shared();
    let mut failures = Vec::new();
    if g2.dim() != 14 || DIM != 14 {
        failures.push(format!("dimension {}", g2.dim()));
    }
    if g2.rank() != 2 || RANK != 2 {
        failures.push(format!("rank {}", g2.rank()));
    }
    if let Some(t) = jacobi_violation(g2) {
        failures.push(format!("Jacobi fails on basis triple {t:?}"));
    }
    // Cartan subalgebra is abelian and self-centralizing
    let h = G2Element::cartan(&int(1), &int(3));
    if g2.centralizer_dim(&h) != 2 {
        failures.push("Cartan element not regular".into());
    }
    let mut r = rng(4);
    for _ in 0..50 {
        let (x, y, z) = (
            G2Element::random(&mut r, 3),
            G2Element::random(&mut r, 3),
            G2Element::random(&mut r, 3),
        );
        let lhs = trace_form(g2, &g2.bracket(&x, &y), &z);
        let rhs = trace_form(g2, &x, &g2.bracket(&y, &z));
        if lhs != rhs {
            failures.push(format!("K([x,y],z) = {lhs} but K(x,[y,z]) = {rhs}"));
        }
        if g2.killing(&x, &y) != trace_form(g2, &x, &y) {
            failures.push("killing() disagrees with tr(ad x ad y)".into());
        }
    }
    verdict(4, "g2 construction", &failures, start.elapsed());
}

/// Values of all twelve roots `m alpha1 + n alpha2` at `(alpha1, alpha2) = (a, b)`.
fn root_values(a: &Rational, b: &Rational) -> Vec<(bool, Rational)> {
    // (m, n, long)
    let positive = [
        (1, 0, false),
        (0, 1, true),
        (1, 1, false),
        (2, 1, false),
        (3, 1, true),
        (3, 2, true),
    ];
    positive
        .iter()
        .flat_map(|&(m, n, long)| {
            let v = int(m) * a + int(n) * b;
            [(long, v.clone()), (long, -v)]
        })
        .collect()
}

#[test]
fn criterion_05_centralizer_dimensions() {
    let start = Instant::now();
    let g2 = G2Structure::shared();
    let mut failures = Vec::new();
    let mut r = rng(5);
    let dim_oracle = |x: &G2Element| DIM - explicit_ad(g2, x).rank();

    if g2.centralizer_dim(&G2Element::zero()) != 14 {
        failures.push("centralizer of 0".into());
    }
    let mut generic = 0;
    while generic < 20 {
        let (a, b) = (
            rational::random_small(&mut r, 20, 3),
            rational::random_small(&mut r, 20, 3),
        );
        if root_values(&a, &b).iter().any(|(_, v)| v.is_zero()) {
            continue;
        }
        generic += 1;
        let d = g2.centralizer_dim(&G2Element::cartan(&a, &b));
        if d != 2 {
            failures.push(format!("generic Cartan ({a}, {b}): {d}"));
        }
    }
    // alpha1 kills h, every other root is nonzero at (0, b)
    let short_killed = G2Element::cartan(&int(0), &int(5));
    let d = g2.centralizer_dim(&short_killed);
    if d != 4 || dim_oracle(&short_killed) != 4 {
        failures.push(format!("short-root-killed Cartan: {d}"));
    }
    let theta = G2Element::root_vector(THETA);
    let d = g2.centralizer_dim(&theta);
    if d != 8 || dim_oracle(&theta) != 8 {
        failures.push(format!("highest root vector: {d}, oracle {}", dim_oracle(&theta)));
    }

    let mut seen = BTreeMap::<usize, usize>::new();
    for i in 0..500 {
        let x = match i % 5 {
            0 => G2Element::random(&mut r, 2),
            1 => G2Element::cartan(&int(r.gen_range(-3..=3)), &int(r.gen_range(-3..=3))),
            // sparse: a few basis vectors
            2 => (0..r.gen_range(1..=3)).fold(G2Element::zero(), |acc, _| {
                acc.add(&G2Element::basis(r.gen_range(0..DIM)).scale(&int(r.gen_range(-2..=2))))
            }),
            // nilradical elements
            3 => (2..8).fold(G2Element::zero(), |acc, k| {
                let c = if r.gen_bool(0.4) {
                    int(r.gen_range(-2..=2))
                } else {
                    int(0)
                };
                acc.add(&G2Element::basis(k).scale(&c))
            }),
            _ => {
                let h = G2Element::cartan(&int(0), &int(r.gen_range(-2..=2)));
                conjugate_randomly(&mut r, &h, 1)
            }
        };
        let d = g2.centralizer_dim(&x);
        if d != dim_oracle(&x) {
            failures.push(format!(
                "centralizer_dim {d} disagrees with the explicit ad rank for {x:?}"
            ));
        }
        *seen.entry(d).or_default() += 1;
    }
    if seen.contains_key(&3) {
        failures.push(format!("dimension 3 observed: {seen:?}"));
    }
    verdict(5, "centralizer dimensions", &failures, start.elapsed());
}

#[test]
fn criterion_06_invariant_sextics() {
    let start = Instant::now();
    let g2 = G2Structure::shared();
    let roots = RootSystemG2::new().roots;
    let mut failures = Vec::new();
    let mut r = rng(6);
    // product over a +/- pair is -v^2, so each sextic is -(product over positive roots)^2
    let oracle = |a: &Rational, b: &Rational| -> (Rational, Rational) {
        let vals = root_values(a, b);
        let prod = |long: bool| {
            vals.iter()
                .filter(|(l, _)| *l == long)
                .map(|(_, v)| v.clone())
                .product::<Rational>()
        };
        (prod(true), prod(false))
    };

    for _ in 0..20 {
        let (a, b) = (
            rational::random_small(&mut r, 9, 4),
            rational::random_small(&mut r, 9, 4),
        );
        let calibrated = g2.invariant_sextics(&G2Element::cartan(&a, &b));
        let products = fmclass_core::g2::root_product_sextics(&roots, &a, &b);
        if calibrated != products || calibrated != oracle(&a, &b) {
            failures.push(format!("({a}, {b}): calibrated {calibrated:?}, products {products:?}"));
        }
    }

    for i in 0..50 {
        let t = rational::random_nonzero(&mut r, 7, 3);
        let (a, b) = match i % 5 {
            // kernels of the short roots alpha1, alpha1 + alpha2, 2 alpha1 + alpha2
            0 => (int(0), t),
            1 => (t.clone(), -t),
            2 => (t.clone(), -(int(2) * &t)),
            _ => (t, rational::random_small(&mut r, 7, 3)),
        };
        let (_, ds) = g2.invariant_sextics(&G2Element::cartan(&a, &b));
        let killed = root_values(&a, &b).iter().any(|(long, v)| !long && v.is_zero());
        if ds.is_zero() != killed {
            failures.push(format!("({a}, {b}): delta_s = {ds}, short root kills h: {killed}"));
        }
    }

    let (dl, ds) = g2.invariant_sextics(&G2Element::cartan(&Rational::one(), &Rational::one()));
    if ds != int(-36) || dl != int(-400) {
        failures.push(format!("at (1, 1): delta_s = {ds}, delta_l = {dl}"));
    }
    verdict(6, "invariant sextics", &failures, start.elapsed());
}

#[test]
fn criterion_07_pipeline_trichotomy() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut r = rng(7);
    let cases = [
        (
            sample_generic(&mut r),
            VarietyName::Generic,
            CubicConeCount::Six,
            SigmaSType::SmoothDP6,
        ),
        (
            sample_v18s(&mut r),
            VarietyName::V18s,
            CubicConeCount::TwoFamiliesPlusTwo,
            SigmaSType::ReducibleFirstKind,
        ),
        (
            sample_v18a(&mut r),
            VarietyName::V18a,
            CubicConeCount::Four,
            SigmaSType::A1,
        ),
    ];
    for (g, name, cones, sigma) in cases {
        let rep = classify_fourfold(&g);
        if rep.variety_name != Some(name) || rep.cubic_cone_count != Some(cones) || rep.sigma_s_type != Some(sigma) {
            failures.push(format!(
                "{name:?}: got {:?} / {:?} / {:?}",
                rep.variety_name, rep.cubic_cone_count, rep.sigma_s_type
            ));
        }
        if !rep.invariants_hold() {
            failures.push(format!("{name:?}: report invariants violated"));
        }
        for _ in 0..50 {
            let h = conjugate_randomly(&mut r, &g, 1);
            if classify_fourfold(&h) != rep {
                failures.push(format!("{name:?}: classification changed under conjugation to {h:?}"));
                break;
            }
        }
    }
    verdict(7, "pipeline trichotomy", &failures, start.elapsed());
}

/// `g^t G g` is a nonzero multiple of `G`.
fn preserves_oracle(g: &RatMatrix, c: &Conic) -> bool {
    let pulled = &(&g.transpose() * c.gram()) * g;
    let (p, q) = (pulled.entries(), c.gram().entries());
    let Some(k) = q.iter().position(|v| !v.is_zero()) else {
        return false;
    };
    let ratio = &p[k] / &q[k];
    !ratio.is_zero() && p.iter().zip(q).all(|(x, y)| *x == &ratio * y)
}

#[test]
fn criterion_08_conic_classifier() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let u = conics::upsilon();
    let on_u = [int(0), int(1), int(0)];

    for (a, b) in [(2, 1), (3, 1), (-1, 1), (1, 5), (-4, 3)] {
        let t = classify_pair_at(&u, &conics::bitangent_member(a, b), &on_u);
        if t.as_ref().ok() != Some(&TangencyType::Bitangent) {
            failures.push(format!("{a}x^2 + {b}yz: {t:?}"));
        }
    }
    for (a, b) in [(1, 1), (1, -1), (2, 3), (-3, 7)] {
        let t = classify_pair_at(&u, &conics::quadritangent_member(a, b), &on_u);
        if t.as_ref().ok() != Some(&TangencyType::Quadritangent) {
            failures.push(format!("{a}(x^2 + yz) + {b}z^2: {t:?}"));
        }
    }
    for t in [TangencyType::Bitangent, TangencyType::Quadritangent] {
        let stab = pair_stabilizer(t).expect("classified type");
        let (nu, nj) = &stab.normal_form;
        for g in &stab.generators {
            if !preserves_oracle(g, nu) || !preserves_oracle(g, nj) {
                failures.push(format!("{t:?}: generator {g:?} does not preserve the pair"));
            }
        }
    }

    let mut r = rng(8);
    let pairs = [
        (TangencyType::Bitangent, conics::bitangent()),
        (TangencyType::Quadritangent, conics::quadritangent()),
        (TangencyType::Equal, conics::upsilon()),
    ];
    for i in 0..100 {
        let (want, j) = &pairs[i % 3];
        let a = RatMatrix::random_invertible(&mut r, 3, 3);
        let point = a.inverse().expect("invertible").mul_vec(&on_u);
        let (u2, j2) = (
            u.pullback(&a),
            j.pullback(&a).scale_form(&rational::random_nonzero(&mut r, 5, 3)),
        );
        let got = classify_pair_at(&u2, &j2, &point);
        if got.as_ref().ok() != Some(want) {
            failures.push(format!("{want:?} pair became {got:?} after the change {a:?}"));
        }
    }
    verdict(8, "conic classifier", &failures, start.elapsed());
}

trait ScaleForm {
    fn scale_form(&self, s: &Rational) -> Conic;
}

impl ScaleForm for Conic {
    fn scale_form(&self, s: &Rational) -> Conic {
        Conic::from_gram(self.gram().scale(s)).expect("nonzero multiple")
    }
}

#[test]
fn criterion_09_binary_cubic_orbits() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut r = rng(9);
    let labels: Vec<OrbitLabel> = OrbitLabel::ALL
        .iter()
        .map(|l| classify_point(&l.representative()))
        .collect();
    if labels != OrbitLabel::ALL {
        failures.push(format!("representatives classify to {labels:?}"));
    }
    for label in OrbitLabel::ALL {
        let p = label.representative();
        for _ in 0..50 {
            let (h, g) = random_cubic_action(&mut r, &p);
            let q = act(&h, &g, &p)
                .expect("invertible")
                .scale(&rational::random_nonzero(&mut r, 7, 5));
            if classify_point(&q) != label {
                failures.push(format!("{label:?}: image {q:?} classified as {:?}", classify_point(&q)));
                break;
            }
        }
    }
    verdict(9, "binary cubic orbits", &failures, start.elapsed());
}

#[test]
fn criterion_10_determinism() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let seed = seed_from_env().expect("FM_SEED, if set, is an integer");
    let first = selftest_report(run_selftest(seed));
    let second = selftest_report(run_selftest(seed));
    if first.to_json() != second.to_json() {
        failures.push(format!("two runs with seed {seed} differ"));
    }
    if !first.result.pass {
        failures.push("selftest reports failures".into());
    }
    verdict(10, "selftest determinism", &failures, start.elapsed());
}
