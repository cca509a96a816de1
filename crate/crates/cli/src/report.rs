//! JSON and text renderings. Both are built from the same values.

use nrh_core::liealg::{classify, LieClassification};
use nrh_core::mlinalg::scalar::fmt_scalar;
use nrh_core::mlinalg::{QMatrix, Space, Subspace};
use nrh_core::models::{CaseLabel, InfinitesimalModel, Transvection, ValidationReport};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

pub struct Report {
    pub kind: &'static str,
    pub body: Value,
    pub text: Vec<String>,
}

impl Report {
    pub fn new(kind: &'static str) -> Self {
        Report { kind, body: json!({}), text: Vec::new() }
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.body[key] = value;
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn emit(&self, as_json: bool) {
        if as_json {
            let mut doc = json!({ "schema_version": SCHEMA_VERSION, "kind": self.kind });
            if let Value::Object(map) = &self.body {
                for (k, v) in map {
                    doc[k] = v.clone();
                }
            }
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        } else {
            for l in &self.text {
                println!("{l}");
            }
        }
    }
}

pub fn matrix_json(m: &QMatrix) -> Value {
    Value::Array((0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(|x| Value::String(fmt_scalar(x))).collect())).collect())
}

fn matrix_text(m: &QMatrix) -> String {
    let rows: Vec<String> = (0..m.rows()).map(|r| format!("[{}]", m.row(r).iter().map(fmt_scalar).collect::<Vec<_>>().join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

fn subspace_labels(space: &Space, s: &Subspace) -> Vec<String> {
    let labels = space.labels();
    s.basis()
        .iter()
        .map(|v| {
            let terms: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != nrh_core::mlinalg::zero())
                .map(|(i, c)| if *c == nrh_core::mlinalg::one() { labels[i].clone() } else { format!("{}·{}", fmt_scalar(c), labels[i]) })
                .collect();
            terms.join(" + ")
        })
        .collect()
}

pub fn validation(r: &ValidationReport) -> Report {
    let mut rep = Report::new("validation");
    rep.set("passed", json!(r.passed()));
    rep.set(
        "checks",
        Value::Array(r.checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect()),
    );
    rep.set("holonomy_dim", json!(r.holonomy_dim));
    rep.set("closure_dim", json!(r.closure_dim));
    rep.set(
        "decomposability",
        json!({
            "fixed_vectors_dim": r.decomposability.fixed_vectors_dim,
            "invariant_nondegenerate_dim": r.decomposability.invariant_nondegenerate.as_ref().map(|s| s.dim()),
            "torsion_splits": r.decomposability.torsion_splits,
        }),
    );
    rep.set("unchecked", json!(r.unchecked));
    rep.line(format!("validation: {}", if r.passed() { "PASS" } else { "FAIL" }));
    for c in &r.checks {
        let detail = c.detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default();
        rep.line(format!("  {:<18} {}{}", c.name, if c.passed { "ok" } else { "FAILED" }, detail));
    }
    rep.line(format!("  holonomy dim {} (closure {})", r.holonomy_dim, r.closure_dim));
    for u in &r.unchecked {
        rep.line(format!("  unchecked: {u}"));
    }
    rep
}

fn lie_json(c: &LieClassification) -> Value {
    json!({
        "label": c.label.as_str(),
        "killing_signature": [c.killing_signature.0, c.killing_signature.1, c.killing_signature.2],
        "derived_dims": c.derived_dims,
        "center_dim": c.center_dim,
        "factors": c.factors,
        "notes": c.notes,
    })
}

fn lie_text(c: &LieClassification) -> String {
    let (p, n, z) = c.killing_signature;
    let factors = if c.factors.is_empty() { String::new() } else { format!(" = {}", c.factors.join(" ⊕ ")) };
    format!("{}{factors}, Killing signature ({p},{n},{z}), derived series {:?}", c.label.as_str(), c.derived_dims)
}

pub fn classification(m: &InfinitesimalModel, label: &CaseLabel, f: Option<&Transvection>) -> Report {
    let mut rep = Report::new("classification");
    let case = match (m.curvature().is_zero(), m.torsion().is_zero()) {
        (true, true) => "flat/symmetric".to_string(),
        (true, false) => "flat with torsion".to_string(),
        _ => label.kind.as_str().to_string(),
    };
    rep.set("case", json!(case));
    rep.set("case_number", json!(label.kind.number()));
    rep.set("weak_type", json!(label.weak_type.map(|w| w.number())));
    rep.set("l", json!(label.l.as_ref().map(|s| subspace_labels(m.space(), s))));
    rep.set("e", json!(label.e.as_ref().map(|s| subspace_labels(m.space(), s))));
    rep.set("evidence", json!(label.evidence));
    match label.kind.number() {
        Some(k) => rep.line(format!("case {k}: {case}")),
        None => rep.line(format!("case: {case}")),
    }
    if let Some(w) = label.weak_type {
        rep.line(format!("  weak type {}", w.number()));
    }
    if let Some(l) = &label.l {
        rep.line(format!("  L = ⟨{}⟩", subspace_labels(m.space(), l).join(", ")));
    }
    for e in &label.evidence {
        rep.line(format!("  {e}"));
    }
    if let Some(f) = f {
        let derived = classify(&f.algebra.derived_algebra());
        rep.set("derived_transvection_algebra", lie_json(&derived));
        rep.line(format!("  f' ≅ {}", lie_text(&derived)));
    }
    rep
}

pub fn transvection(f: &Transvection) -> Report {
    let mut rep = Report::new("transvection");
    let whole = classify(&f.algebra);
    let derived = classify(&f.algebra.derived_algebra());
    let k = f.algebra.killing();
    rep.set("g_dim", json!(f.g_dim));
    rep.set("m_dim", json!(f.m_dim));
    rep.set("labels", json!(f.algebra.labels()));
    rep.set("killing", matrix_json(&k));
    rep.set("algebra", lie_json(&whole));
    rep.set("derived", lie_json(&derived));
    rep.set("jacobi_ok", json!(f.algebra.jacobi_failure().is_none()));
    rep.line(format!("f = g ⊕ m, dim g = {}, dim m = {}", f.g_dim, f.m_dim));
    rep.line(format!("  basis {}", f.algebra.labels().join(", ")));
    rep.line(format!("  Killing form {}", matrix_text(&k)));
    rep.line(format!("  f ≅ {}", lie_text(&whole)));
    rep.line(format!("  f' ≅ {}", lie_text(&derived)));
    rep
}
