//! Seeded property suites over every module, aggregated into one report.
//!
//! Each suite draws from its own ChaCha8 stream derived from the seed, so the
//! report depends only on the seed, not on scheduling. Suites run on scoped
//! threads and are collected in a fixed order.

use std::thread;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::binary_cubic::{self, act, classify_point, cubic_root_type, BinaryCubic, OrbitLabel, RootType};
use crate::conic_pairs::{self, classify_pair_at, normal_forms as conics, pair_stabilizer, preserves, TangencyType};
use crate::exact::rational::{self, Rational};
use crate::exact::{poly_gcd, resultant, squarefree_decomposition, RatMatrix, UniPoly};
use crate::flag_sextic::{self, classify_section, count_lines, jordan_label, pcent_lie_dim, LineCount};
use crate::g2::{self, G2Element, G2Structure, OrbitTag};
use crate::ledger::{self, ClassExpr};
use crate::pipeline::{self, classify_fourfold, cross_check_with_flag_sextic, VarietyName};

pub const DEFAULT_SEED: u64 = 1729;

/// `FM_SEED` if set and numeric, else [`DEFAULT_SEED`].
pub fn seed_from_env() -> std::result::Result<u64, String> {
    match std::env::var("FM_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| format!("FM_SEED must be an unsigned integer, got {s:?}")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub trials: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl CheckResult {
    fn new(name: &str) -> Self {
        Self {
            name: name.into(),
            trials: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.trials += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }

    pub fn pass(&self) -> bool {
        self.failures == 0 && self.trials > 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub pass: bool,
    pub suites: Vec<SuiteResult>,
}

type Suite = fn(&mut ChaCha8Rng) -> Vec<CheckResult>;

pub const SUITES: [(&str, Suite); 7] = [
    ("exact_core", exact_core_suite),
    ("g2_algebra", g2_suite),
    ("flag_sextic", flag_sextic_suite),
    ("conic_pairs", conic_suite),
    ("intersection_ledger", ledger_suite),
    ("binary_cubic_orbits", binary_cubic_suite),
    ("fm_pipeline", pipeline_suite),
];

pub fn run_suite(index: usize, seed: u64) -> SuiteResult {
    let (name, suite) = SUITES[index];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let checks = suite(&mut rng);
    SuiteResult {
        suite: name.into(),
        pass: checks.iter().all(CheckResult::pass),
        checks,
    }
}

pub fn run_selftest(seed: u64) -> SelftestReport {
    // build the shared structure once before fanning out
    G2Structure::shared();
    let suites: Vec<SuiteResult> = thread::scope(|s| {
        let handles: Vec<_> = (0..SUITES.len()).map(|i| s.spawn(move || run_suite(i, seed))).collect();
        handles.into_iter().map(|h| h.join().expect("suite panicked")).collect()
    });
    SelftestReport {
        seed,
        pass: suites.iter().all(|s| s.pass),
        suites,
    }
}

fn random_poly<R: Rng>(rng: &mut R, degrees: std::ops::Range<usize>) -> UniPoly {
    let degree = rng.gen_range(degrees);
    let mut c: Vec<Rational> = (0..degree).map(|_| rational::random_small(rng, 6, 3)).collect();
    c.push(rational::random_nonzero(rng, 6, 3));
    UniPoly::new(c)
}

fn exact_core_suite(rng: &mut ChaCha8Rng) -> Vec<CheckResult> {
    let mut gcd = CheckResult::new("gcd divides both inputs and keeps a planted factor");
    for _ in 0..30 {
        let common = random_poly(rng, 1..3);
        let a = &common * &random_poly(rng, 0..4);
        let b = &common * &random_poly(rng, 0..4);
        let g = poly_gcd(&a, &b);
        let ok = g.divides(&a) && g.divides(&b) && common.divides(&(&g * &UniPoly::constant(common.leading_coeff())));
        gcd.record(ok, || format!("a = {a}, b = {b}, gcd = {g}"));
    }

    let mut nullity = CheckResult::new("rank + nullity = columns; kernel vectors are annihilated");
    for _ in 0..30 {
        let (r, c) = (rng.gen_range(1..6), rng.gen_range(1..7));
        let k = rng.gen_range(1..=r.min(c));
        let m = &RatMatrix::random(rng, r, k, 4) * &RatMatrix::random(rng, k, c, 4);
        let ker = m.kernel_basis();
        let ok = m.rank() + ker.len() == c && ker.iter().all(|v| m.mul_vec(v).iter().all(Zero::is_zero));
        nullity.record(ok, || format!("{m}"));
    }

    let mut cayley = CheckResult::new("Cayley-Hamilton: char_poly(M)(M) = 0");
    for _ in 0..20 {
        let n = rng.gen_range(1..7);
        let mut m = RatMatrix::random(rng, n, n, 5);
        m[(0, 0)] = rational::random_small(rng, 5, 4);
        let ok = m.char_poly().map(|p| p.eval_matrix(&m).is_zero()).unwrap_or(false);
        cayley.record(ok, || format!("{m}"));
    }

    let mut res = CheckResult::new("resultant vanishes exactly on a planted common root");
    for _ in 0..20 {
        let r = rational::random_small(rng, 5, 3);
        let a = &UniPoly::linear_root(&r) * &random_poly(rng, 0..3);
        let b = &UniPoly::linear_root(&r) * &random_poly(rng, 0..3);
        let shifted = &b + &UniPoly::constant(Rational::one());
        let ok = resultant(&a, &b).is_zero()
            && (poly_gcd(&a, &shifted).degree().finite() != Some(0) || !resultant(&a, &shifted).is_zero());
        res.record(ok, || format!("a = {a}, b = {b}"));
    }

    let mut yun = CheckResult::new("squarefree decomposition multiplies back to the monic input");
    for _ in 0..20 {
        let f1 = random_poly(rng, 1..2);
        let f2 = random_poly(rng, 1..3);
        let p = &(&f1 * &f1) * &(&f2 * &(&f2 * &f2));
        let ok = squarefree_decomposition(&p).is_ok_and(|parts| {
            let prod = parts
                .iter()
                .fold(UniPoly::one(), |acc, (f, m)| &acc * &f.pow(*m as u32));
            prod == p.monic()
        });
        yun.record(ok, || format!("{p}"));
    }
    vec![gcd, nullity, cayley, res, yun]
}

fn random_mixed_element<R: Rng>(rng: &mut R) -> G2Element {
    let roots = &G2Structure::shared().roots.roots;
    let mut g = G2Element::zero();
    if rng.gen_bool(0.5) {
        g = G2Element::cartan(
            &rational::int(rng.gen_range(-3..=3)),
            &rational::int(rng.gen_range(-3..=3)),
        );
    }
    for _ in 0..rng.gen_range(0..4) {
        let r = *roots.choose(rng).expect("nonempty");
        g = g.add(&G2Element::root_vector(r).scale(&rational::int(rng.gen_range(-2..=2))));
    }
    g
}

fn g2_suite(rng: &mut ChaCha8Rng) -> Vec<CheckResult> {
    let g2 = G2Structure::shared();

    let mut structure = CheckResult::new("dimension 14, rank 2, Jacobi on all basis triples");
    let ok = g2.dim() == 14 && g2.rank() == 2 && g2::structure::jacobi_violation(g2).is_none();
    structure.record(ok, || "structure check failed".into());

    let mut killing = CheckResult::new("Killing form ad-invariance K([x,y],z) = -K(y,[x,z])");
    for _ in 0..50 {
        let (x, y, z) = (
            G2Element::random(rng, 3),
            G2Element::random(rng, 3),
            G2Element::random(rng, 3),
        );
        let lhs = g2.killing(&g2.bracket(&x, &y), &z);
        let rhs = -g2.killing(&y, &g2.bracket(&x, &z));
        killing.record(lhs == rhs, || format!("x = {x:?}"));
    }

    let mut gap = CheckResult::new("centralizer dimension is never 3");
    for _ in 0..200 {
        let g = if rng.gen_bool(0.5) {
            random_mixed_element(rng)
        } else {
            G2Element::random(rng, 2)
        };
        let d = g2.centralizer_dim(&g);
        gap.record(d != 3 && d.is_multiple_of(2), || format!("dim {d} for {g:?}"));
    }

    let mut sextics = CheckResult::new("calibrated sextics equal root products on Cartan elements");
    for _ in 0..20 {
        let (a, b) = (rational::random_small(rng, 9, 4), rational::random_small(rng, 9, 4));
        let h = G2Element::cartan(&a, &b);
        let (dl, ds) = g2.invariant_sextics(&h);
        let (pl, ps) = g2::root_product_sextics(&g2.roots.roots, &a, &b);
        sextics.record(dl == pl && ds == ps, || format!("(a, b) = ({a}, {b})"));
    }

    let mut jordan = CheckResult::new("Jordan parts commute, g_n is nilpotent, g_s is semisimple");
    for _ in 0..20 {
        let g = random_mixed_element(rng);
        let (gs, gn) = g2.jordan_decomposition(&g);
        let commute = g2.bracket(&gs, &gn).is_zero();
        let nil = g2.ad_matrix(&gn).pow(14).is_zero();
        let ads = g2.ad_matrix(&gs);
        let semi = ads
            .char_poly()
            .and_then(|p| crate::exact::squarefree_part(&p))
            .map(|s| s.eval_matrix(&ads).is_zero())
            .unwrap_or(false);
        jordan.record(commute && nil && semi && gs.add(&gn) == g, || format!("{g:?}"));
    }

    let mut conj = CheckResult::new("orbit class invariant under unipotent conjugation");
    for _ in 0..10 {
        let g = random_mixed_element(rng);
        let h = pipeline::conjugate_randomly(rng, &g, 1);
        let (a, b) = (g2.classify_element(&g), g2.classify_element(&h));
        conj.record(a == b, || format!("{g:?}: {a:?} vs {b:?}"));
    }
    vec![structure, killing, gap, sextics, jordan, conj]
}

fn flag_sextic_suite(rng: &mut ChaCha8Rng) -> Vec<CheckResult> {
    use flag_sextic::normal_forms;
    let forms = normal_forms::all();
    let lines = [
        LineCount::Infinite,
        LineCount::Finite(6),
        LineCount::Finite(6),
        LineCount::Finite(4),
        LineCount::Finite(2),
        LineCount::Infinite,
    ];

    let mut rows = CheckResult::new("normal forms give their table rows and line counts");
    for (c, want) in forms.iter().zip(lines) {
        let rep = classify_section(c);
        let ok = rep == flag_sextic::table_row(jordan_label(c)) && count_lines(c) == want && rep.line_count == want;
        rows.record(ok, || format!("{:?}", rep.jordan_label));
    }

    let mut dims = CheckResult::new("aut0_dim equals the projective-centralizer Lie dimension");
    for c in &forms {
        let rep = classify_section(c);
        dims.record(rep.aut0_dim == pcent_lie_dim(c), || format!("{:?}", rep.jordan_label));
    }

    let mut conj = CheckResult::new("classification invariant under rational conjugation");
    for c in &forms {
        let base = (classify_section(c), count_lines(c), pcent_lie_dim(c));
        for _ in 0..15 {
            let a = RatMatrix::random_invertible(rng, 3, 3);
            let d = c.conjugate(&a).expect("conjugate of traceless is traceless");
            let got = (classify_section(&d), count_lines(&d), pcent_lie_dim(&d));
            conj.record(got == base, || format!("{:?} conjugated by {a}", base.0.jordan_label));
        }
    }
    vec![rows, dims, conj]
}

fn conic_suite(rng: &mut ChaCha8Rng) -> Vec<CheckResult> {
    let upsilon = conics::upsilon();
    let nz = |rng: &mut ChaCha8Rng| loop {
        let k = rng.gen_range(-9..=9);
        if k != 0 {
            return k;
        }
    };

    let mut bitangent = CheckResult::new("a x^2 + b yz (a != b) is bitangent to x^2 + yz");
    let mut quadri = CheckResult::new("a (x^2 + yz) + b z^2 (a, b != 0) is quadritangent");
    for _ in 0..20 {
        let (a, b) = (nz(rng), nz(rng));
        let want = if a == b {
            TangencyType::Equal
        } else {
            TangencyType::Bitangent
        };
        let got = conic_pairs::classify_pair(&upsilon, &conics::bitangent_member(a, b));
        bitangent.record(got == Ok(want), || format!("a = {a}, b = {b}: {got:?}"));
        let got = conic_pairs::classify_pair(&upsilon, &conics::quadritangent_member(a, b));
        quadri.record(got == Ok(TangencyType::Quadritangent), || {
            format!("a = {a}, b = {b}: {got:?}")
        });
    }

    let mut stab = CheckResult::new("stabilizer generators preserve both conics");
    for t in [TangencyType::Bitangent, TangencyType::Quadritangent] {
        let s = pair_stabilizer(t).expect("classified type");
        for g in &s.generators {
            stab.record(preserves(g, &s.normal_form.0) && preserves(g, &s.normal_form.1), || {
                format!("{t:?}: {g}")
            });
        }
    }

    let mut coords = CheckResult::new("tangency type invariant under coordinate changes");
    let p = upsilon.rational_point().expect("x^2 + yz has points");
    let pairs = [
        (conics::upsilon(), TangencyType::Equal),
        (conics::bitangent(), TangencyType::Bitangent),
        (conics::quadritangent(), TangencyType::Quadritangent),
    ];
    for (j, want) in &pairs {
        for _ in 0..10 {
            let a = RatMatrix::random_invertible(rng, 3, 3);
            let point = a.inverse().expect("invertible").mul_vec(&p);
            let got = classify_pair_at(&upsilon.pullback(&a), &j.pullback(&a), &point);
            coords.record(got == Ok(*want), || format!("{want:?} under {a}: {got:?}"));
        }
    }
    vec![bitangent, quadri, stab, coords]
}

fn random_linear<R: Rng>(rng: &mut R) -> ClassExpr {
    ClassExpr::linear(rational::random_small(rng, 5, 3), rational::random_small(rng, 5, 3))
}

fn ledger_suite(rng: &mut ChaCha8Rng) -> Vec<CheckResult> {
    let mut ids = CheckResult::new("intersection identities hold exactly");
    for c in ledger::verify_known_identities() {
        ids.record(c.pass, || {
            format!("{}: expected {}, got {}", c.name, c.expected, c.computed)
        });
    }

    let tables = [ledger::builtin_w_table(), ledger::builtin_v_table()];
    let mut multi = CheckResult::new("evaluation is multilinear in the first factor");
    let mut sym = CheckResult::new("evaluation is symmetric in the factors");
    for _ in 0..30 {
        let t = tables.choose(rng).expect("nonempty");
        let (e, f) = (random_linear(rng), random_linear(rng));
        let rest: Vec<ClassExpr> = (0..3).map(|_| random_linear(rng)).collect();
        let a = rational::random_small(rng, 7, 5);
        let with = |x: ClassExpr| {
            let mut v = vec![x];
            v.extend(rest.iter().cloned());
            ledger::evaluate(t, &v).unwrap_or_else(|_| Rational::zero())
        };
        let lhs = with(e.scale(&a).add(&f));
        let rhs = &a * with(e.clone()) + with(f.clone());
        multi.record(lhs == rhs, || format!("e = {e}, f = {f}, a = {a}"));

        let mut factors = rest.clone();
        factors.push(e.clone());
        let base = ledger::evaluate(t, &factors).unwrap_or_else(|_| Rational::zero());
        factors.shuffle(rng);
        let shuffled = ledger::evaluate(t, &factors).unwrap_or_else(|_| Rational::zero());
        sym.record(base == shuffled, || format!("{factors:?}"));
    }
    vec![ids, multi, sym]
}

/// Random orbit-preserving group element: any translation on `c = 0`,
/// none elsewhere.
pub fn random_cubic_action<R: Rng>(rng: &mut R, p: &binary_cubic::P4Point) -> (BinaryCubic, RatMatrix) {
    let g = RatMatrix::random_invertible(rng, 2, 4);
    let h = if p.c.is_zero() {
        BinaryCubic::new(std::array::from_fn(|_| rational::random_small(rng, 5, 3)))
    } else {
        BinaryCubic::zero()
    };
    (h, g)
}

fn binary_cubic_suite(rng: &mut ChaCha8Rng) -> Vec<CheckResult> {
    let mut reps = CheckResult::new("seven representatives get seven distinct labels");
    for label in OrbitLabel::ALL {
        reps.record(classify_point(&label.representative()) == label, || {
            format!("{label:?}")
        });
    }

    let mut inv = CheckResult::new("labels invariant under the group action and scaling");
    for label in OrbitLabel::ALL {
        let p = label.representative();
        for _ in 0..15 {
            let (h, g) = random_cubic_action(rng, &p);
            let q = act(&h, &g, &p).expect("invertible g");
            let q = q.scale(&rational::random_nonzero(rng, 7, 5));
            inv.record(classify_point(&q) == label, || format!("{label:?} moved to {}", q.f));
        }
    }

    let mut planted = CheckResult::new("root type matches planted linear factors");
    for _ in 0..50 {
        let lin = |rng: &mut ChaCha8Rng| loop {
            let (p, q) = (rational::random_small(rng, 4, 3), rational::random_small(rng, 4, 3));
            if !(p.is_zero() && q.is_zero()) {
                return (p, q);
            }
        };
        let (l1, l2, l3) = (lin(rng), lin(rng), lin(rng));
        let pattern = rng.gen_range(0..3);
        let factors = match pattern {
            0 => [l1.clone(), l1.clone(), l1.clone()],
            1 => [l1.clone(), l1.clone(), l2.clone()],
            _ => [l1.clone(), l2.clone(), l3.clone()],
        };
        // distinctness of the planted roots, projectively
        let same = |a: &(Rational, Rational), b: &(Rational, Rational)| &a.0 * &b.1 == &a.1 * &b.0;
        let want = match pattern {
            0 => RootType::TripleRoot,
            1 if !same(&l1, &l2) => RootType::DoubleRoot,
            1 => RootType::TripleRoot,
            _ if same(&l1, &l2) && same(&l2, &l3) => RootType::TripleRoot,
            _ if same(&l1, &l2) || same(&l2, &l3) || same(&l1, &l3) => RootType::DoubleRoot,
            _ => RootType::ThreeDistinct,
        };
        let f = BinaryCubic::from_linear_factors(factors);
        planted.record(cubic_root_type(&f) == want, || format!("{f}: want {want:?}"));
    }
    vec![reps, inv, planted]
}

fn pipeline_suite(rng: &mut ChaCha8Rng) -> Vec<CheckResult> {
    let samplers: [(fn(&mut ChaCha8Rng) -> G2Element, VarietyName); 3] = [
        (pipeline::sample_generic, VarietyName::Generic),
        (pipeline::sample_v18s, VarietyName::V18s),
        (pipeline::sample_v18a, VarietyName::V18a),
    ];

    let mut stable = CheckResult::new("certified samples keep their class under unipotent conjugation");
    for (sample, want) in samplers {
        for _ in 0..5 {
            let g = sample(rng);
            let h = pipeline::conjugate_randomly(rng, &g, 1);
            let got = classify_fourfold(&h).variety_name;
            stable.record(got == Some(want), || format!("{want:?}: got {got:?}"));
        }
    }

    let mut invariants = CheckResult::new("report equivalences hold on random inputs");
    for i in 0..40 {
        let g = match i % 4 {
            3 => pipeline::sample_singular(rng),
            k => samplers[k].0(rng),
        };
        let r = classify_fourfold(&g);
        invariants.record(r.invariants_hold(), || format!("{g:?}"));
    }

    let mut cross = CheckResult::new("flag-sextic cross-check accepts exactly the demanded type");
    let forms = flag_sextic::normal_forms::all();
    for (sample, name) in samplers {
        let want = match name {
            VarietyName::V18s => [true, false, false, false, false, false],
            VarietyName::V18a => [false, false, false, true, false, false],
            VarietyName::Generic => [false, true, true, false, false, false],
        };
        let report = classify_fourfold(&sample(rng));
        for (c, w) in forms.iter().zip(want) {
            cross.record(cross_check_with_flag_sextic(&report, c) == w, || {
                format!("{name:?} vs {:?}", jordan_label(c))
            });
        }
    }

    let mut tags = CheckResult::new("smooth classes carry the expected orbit tags");
    for (sample, want) in samplers {
        let r = classify_fourfold(&sample(rng));
        let ok = match want {
            VarietyName::Generic => r.orbit.tag == OrbitTag::RegularSemisimple,
            VarietyName::V18s => r.orbit.tag == OrbitTag::SubregularSemisimple,
            VarietyName::V18a => r.orbit.tag == OrbitTag::RegularMixed,
        };
        tags.record(ok, || format!("{want:?}: {:?}", r.orbit.tag));
    }
    vec![stable, invariants, cross, tags]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_and_are_deterministic() {
        let a = run_selftest(5);
        for s in &a.suites {
            for c in &s.checks {
                assert!(c.pass(), "{}: {c:?}", s.suite);
            }
        }
        assert!(a.pass);
        let b = run_selftest(5);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn env_seed_default() {
        if std::env::var("FM_SEED").is_err() {
            assert_eq!(seed_from_env(), Ok(DEFAULT_SEED));
        }
    }
}
