//! Versioned JSON reports for each classifier, with a plain-text rendering.
//!
//! Every report is wrapped in an [`Envelope`] carrying the schema version,
//! the command, and `refs`: for each asserted field, the identifiers of the
//! table rows or identities it comes from. All maps are ordered, so
//! serializing a report is deterministic and a parsed report re-serializes
//! to the same bytes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::binary_cubic::{classify_point, cubic_root_type, OrbitLabel, P4Point, RootType};
use crate::conic_pairs::{
    classify_pair, intersection_multiplicities, pair_stabilizer, pair_to_aut0v, Conic, StabilizerGroup, TangencyType,
};
use crate::error::Result;
use crate::exact::rational::{self, Rational};
use crate::exact::RatMatrix;
use crate::flag_sextic::{
    classify_section, count_lines, find_singular_points, pcent_lie_dim, JordanLabel, LineCount, SingularLocus,
    SurfaceType, TracelessMatrix3,
};
use crate::g2::{Aut0, G2Element};
use crate::ledger::{self, IdentityCheck, SymbolSet};
use crate::pipeline::{classify_fourfold, ClassificationReport, FullAut};
use crate::selftest::SelftestReport;

pub const SCHEMA_VERSION: u32 = 1;

pub type Refs = BTreeMap<String, Vec<String>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema_version: u32,
    pub command: String,
    pub result: T,
    pub refs: Refs,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(command: &str, result: T, refs: Refs) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            result,
            refs,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

fn refs(entries: &[(&str, &[&str])]) -> Refs {
    entries
        .iter()
        .map(|(k, v)| (k.to_string(), v.iter().map(|s| s.to_string()).collect()))
        .collect()
}

fn matrix_strings(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(rational::format).collect())
        .collect()
}

// ---- classify-g2

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct G2Report {
    pub element: G2Element,
    pub classification: ClassificationReport,
}

pub fn g2_report(g: &G2Element) -> Envelope<G2Report> {
    let classification = classify_fourfold(g);
    let class_ref = match classification.variety_name {
        Some(v) => format!("table:aut0/{v:?}"),
        None => "table:aut0/singular-section".into(),
    };
    let class_ref = class_ref.as_str();
    Envelope::new(
        "classify-g2",
        G2Report {
            element: g.clone(),
            classification,
        },
        refs(&[
            ("orbit", &["orbits:centralizer-dimensions", "orbits:jordan-chevalley"]),
            ("section_smooth", &["sextics:long-root-product"]),
            ("aut0", &[class_ref]),
            ("full_aut", &[class_ref, "aut:generic-bounds"]),
            ("cubic_cone_count", &["cones:count-by-class"]),
            ("sigma_s_type", &["table:sigma-s", "table:hyperplane-sections"]),
            ("conic_pair", &["conics:tangency-to-aut0"]),
            ("stabilizer_quotient", &["aut:cyclic-quotient-divides-6"]),
            ("flexibility", &["flexibility:static"]),
        ]),
    )
}

fn render_full_aut(a: &FullAut) -> String {
    match a {
        FullAut::Exact { group } => group.to_string(),
        FullAut::Bounds { lower, upper } => format!("{lower} ⊆ Aut ⊆ {upper}"),
    }
}

pub fn g2_text(r: &G2Report) -> String {
    let c = &r.classification;
    let mut s = String::new();
    let _ = writeln!(s, "orbit tag:          {:?}", c.orbit.tag);
    let _ = writeln!(s, "centralizer dim:    {}", c.orbit.centralizer_dim);
    let _ = writeln!(s, "on long sextic:     {}", c.orbit.in_d_long);
    let _ = writeln!(s, "on short sextic:    {}", c.orbit.in_d_short);
    let _ = writeln!(s, "section smooth:     {}", c.section_smooth);
    if c.section_smooth {
        let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
        let _ = writeln!(
            s,
            "variety:            {}",
            opt(c.variety_name.map(|v| format!("{v:?}")))
        );
        let _ = writeln!(s, "Aut^0:              {}", opt(c.aut0.map(|v| format!("{v:?}"))));
        let _ = writeln!(
            s,
            "Aut:                {}",
            opt(c.full_aut.as_ref().map(render_full_aut))
        );
        let _ = writeln!(
            s,
            "cubic cones:        {}",
            opt(c.cubic_cone_count.map(|v| format!("{v:?}")))
        );
        let _ = writeln!(
            s,
            "Sigma_s type:       {}",
            opt(c.sigma_s_type.map(|v| format!("{v:?}")))
        );
        let _ = writeln!(s, "conic pair:         {}", opt(c.conic_pair.map(|v| format!("{v:?}"))));
        if let Some(q) = c.stabilizer_quotient {
            let _ = writeln!(s, "Aut/Stab order:     unknown (divides {})", q.order_divides);
        }
        for f in &c.flexibility {
            let _ = writeln!(s, "stated:             {f}");
        }
    }
    s
}

// ---- classify-sextic

/// `lines` is a number, or the string `"infinite"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LinesField {
    Count(usize),
    Infinite(InfiniteMarker),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InfiniteMarker {
    #[serde(rename = "infinite")]
    Infinite,
}

impl From<LineCount> for LinesField {
    fn from(l: LineCount) -> Self {
        match l {
            LineCount::Finite(n) => Self::Count(n),
            LineCount::Infinite => Self::Infinite(InfiniteMarker::Infinite),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SexticCliReport {
    pub matrix: Vec<Vec<String>>,
    pub jordan_label: JordanLabel,
    pub surface_type: SurfaceType,
    pub aut_group: String,
    pub aut0_dim: usize,
    pub pcent_lie_dim: usize,
    pub lines: LinesField,
    pub dual_graph: Option<String>,
    pub singular_locus: SingularLocus,
}

pub fn sextic_report(c: &TracelessMatrix3) -> Envelope<SexticCliReport> {
    let rep = classify_section(c);
    let row = format!("table:hyperplane-sections/{:?}", rep.jordan_label);
    let row = row.as_str();
    Envelope::new(
        "classify-sextic",
        SexticCliReport {
            matrix: matrix_strings(c.matrix()),
            jordan_label: rep.jordan_label,
            surface_type: rep.surface_type,
            aut_group: rep.aut_descriptor.to_string(),
            aut0_dim: rep.aut0_dim,
            pcent_lie_dim: pcent_lie_dim(c),
            lines: count_lines(c).into(),
            dual_graph: rep.surface_type.dual_graph().map(str::to_string),
            singular_locus: find_singular_points(c),
        },
        refs(&[
            ("jordan_label", &["normal-forms:traceless-3x3"]),
            ("surface_type", &[row]),
            ("aut_group", &[row]),
            ("aut0_dim", &[row, "centralizer:projective-lie-algebra"]),
            ("lines", &["lines:eigenvector-fibers", "lines:by-singularity-type"]),
            ("dual_graph", &["dual-graphs:du-val-sextics"]),
        ]),
    )
}

pub fn sextic_text(r: &SexticCliReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "Jordan type:        {:?}", r.jordan_label);
    let _ = writeln!(s, "surface type:       {:?}", r.surface_type);
    let _ = writeln!(s, "Aut:                {}", r.aut_group);
    let _ = writeln!(s, "dim Aut^0:          {}", r.aut0_dim);
    let lines = match r.lines {
        LinesField::Count(n) => n.to_string(),
        LinesField::Infinite(_) => "infinite".into(),
    };
    let _ = writeln!(s, "lines:              {lines}");
    if let Some(g) = &r.dual_graph {
        let _ = writeln!(s, "dual graph:         {g}");
    }
    match &r.singular_locus {
        SingularLocus::Smooth => {
            let _ = writeln!(s, "singular locus:     empty");
        }
        SingularLocus::Points { points, .. } => {
            for p in points {
                let _ = writeln!(s, "singular point:     line {:?}, point {:?}", p.line, p.point);
            }
        }
        SingularLocus::Curve { description } => {
            let _ = writeln!(s, "singular locus:     {description}");
        }
    }
    s
}

// ---- classify-conics

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerReport {
    pub group: StabilizerGroup,
    pub descriptor: String,
    pub family: Option<String>,
    pub generators: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConicsReport {
    pub upsilon: Vec<String>,
    pub j: Vec<String>,
    pub tangency: TangencyType,
    pub multiplicities: Option<Vec<usize>>,
    pub stabilizer: Option<StabilizerReport>,
    pub aut0_v: Option<Aut0>,
}

pub fn conics_report(u: &Conic, j: &Conic) -> Result<Envelope<ConicsReport>> {
    let tangency = classify_pair(u, j)?;
    let multiplicities = match tangency {
        TangencyType::Equal => None,
        _ => Some(intersection_multiplicities(u, j)?),
    };
    let stabilizer = pair_stabilizer(tangency).ok().map(|st| StabilizerReport {
        group: st.group,
        descriptor: st.group.descriptor().to_string(),
        family: st.family.map(|f| f.formula().to_string()),
        generators: st.generators.iter().map(matrix_strings).collect(),
    });
    Ok(Envelope::new(
        "classify-conics",
        ConicsReport {
            upsilon: u.upper().iter().map(rational::format).collect(),
            j: j.upper().iter().map(rational::format).collect(),
            tangency,
            multiplicities,
            stabilizer,
            aut0_v: pair_to_aut0v(tangency).ok(),
        },
        refs(&[
            ("tangency", &["conics:even-tangency"]),
            ("multiplicities", &["conics:pullback-quartic"]),
            ("stabilizer", &["table:pair-stabilizers"]),
            ("aut0_v", &["conics:tangency-to-aut0"]),
        ]),
    ))
}

pub fn conics_text(r: &ConicsReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "tangency:           {:?}", r.tangency);
    if let Some(m) = &r.multiplicities {
        let _ = writeln!(s, "multiplicities:     {m:?}");
    }
    if let Some(st) = &r.stabilizer {
        let _ = writeln!(s, "stabilizer:         {}", st.descriptor);
        if let Some(f) = &st.family {
            let _ = writeln!(s, "identity component: {f}");
        }
    }
    if let Some(a) = r.aut0_v {
        let _ = writeln!(s, "Aut^0(V):           {a:?}");
    }
    s
}

// ---- classify-cubic

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicReport {
    pub point: P4Point,
    pub root_type: RootType,
    pub label: OrbitLabel,
    pub stratum: String,
}

pub fn cubic_report(p: &P4Point) -> Envelope<CubicReport> {
    let label = classify_point(p);
    Envelope::new(
        "classify-cubic",
        CubicReport {
            point: p.clone(),
            root_type: cubic_root_type(&p.f),
            label,
            stratum: label.stratum().into(),
        },
        refs(&[
            ("root_type", &["cubics:hessian-criterion", "cubics:discriminant"]),
            ("label", &["cubics:seven-orbits"]),
        ]),
    )
}

pub fn cubic_text(r: &CubicReport) -> String {
    format!(
        "root type:          {:?}\norbit:              {:?}\nstratum:            {}\n",
        r.root_type, r.label, r.stratum
    )
}

// ---- ledger

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerVerifyReport {
    pub pass: bool,
    pub checks: Vec<IdentityCheck>,
}

pub fn ledger_verify_report() -> Envelope<LedgerVerifyReport> {
    let checks = ledger::verify_known_identities();
    let names: Vec<String> = checks.iter().map(|c| format!("ledger:{}", c.name)).collect();
    let mut r = Refs::new();
    r.insert("checks".into(), names);
    r.insert(
        "tables".into(),
        vec!["ledger:W-moments".into(), "ledger:V-moments".into()],
    );
    Envelope::new(
        "ledger-verify",
        LedgerVerifyReport {
            pass: checks.iter().all(|c| c.pass),
            checks,
        },
        r,
    )
}

pub fn ledger_verify_text(r: &LedgerVerifyReport) -> String {
    let mut s = String::new();
    for c in &r.checks {
        let mark = if c.pass { "ok  " } else { "FAIL" };
        let _ = writeln!(
            s,
            "[{mark}] {:<28} expected {:>4}  computed {:>4}",
            c.name,
            rational::format(&c.expected),
            rational::format(&c.computed)
        );
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEvalReport {
    pub expression: String,
    pub table: SymbolSet,
    pub expanded: String,
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
}

pub fn ledger_eval_report(expr: &str) -> Result<Envelope<LedgerEvalReport>> {
    let parsed = ledger::parse(expr)?;
    let (table, value) = ledger::evaluate_str(expr)?;
    Ok(Envelope::new(
        "ledger-eval",
        LedgerEvalReport {
            expression: expr.into(),
            table,
            expanded: parsed.expr.display_with(table),
            value,
        },
        refs(&[(
            "value",
            &[match table {
                SymbolSet::W => "ledger:W-moments",
                SymbolSet::V => "ledger:V-moments",
            }],
        )]),
    ))
}

pub fn ledger_eval_text(r: &LedgerEvalReport) -> String {
    format!(
        "table:              {:?}\nexpanded:           {}\nvalue:              {}\n",
        r.table,
        r.expanded,
        rational::format(&r.value)
    )
}

// ---- selftest

pub fn selftest_report(r: SelftestReport) -> Envelope<SelftestReport> {
    Envelope::new("selftest", r, refs(&[("suites", &["selftest:property-suites"])]))
}

pub fn selftest_text(r: &SelftestReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "seed {}", r.seed);
    for suite in &r.suites {
        for c in &suite.checks {
            let mark = if c.pass() { "ok  " } else { "FAIL" };
            let _ = writeln!(s, "[{mark}] {:<20} {} ({} trials)", suite.suite, c.name, c.trials);
            if let Some(d) = &c.first_failure {
                let _ = writeln!(s, "       first failure: {d}");
            }
        }
    }
    let _ = writeln!(s, "{}", if r.pass { "all suites passed" } else { "selftest FAILED" });
    s
}
