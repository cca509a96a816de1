//! JSON model files. Rationals travel as strings `"p/q"`.

use nrh_core::liealg::{annihilator, SubalgebraSO};
use nrh_core::mlinalg::scalar::fmt_scalar;
use nrh_core::mlinalg::{parse_scalar, FrameKind, MultiVector, PseudoEuclideanSpace, QMatrix, Scalar, SkewEndomorphism, Space, Subspace};
use nrh_core::models::InfinitesimalModel;
use nrh_core::mlinalg::Tensor;
use nrh_core::torsioncurv::{curvature_space, CurvatureTensor, TorsionTensor};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SchemaError {
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{field}: {reason}")]
    Field { field: String, reason: String },
}

fn field_err(field: impl Into<String>, reason: impl Into<String>) -> SchemaError {
    SchemaError::Field { field: field.into(), reason: reason.into() }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorsionEntry {
    pub indices: [usize; 3],
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurvatureEntry {
    pub indices: [usize; 2],
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CurvatureSpec {
    Entries(Vec<CurvatureEntry>),
    Solve { solve_for: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub dim: usize,
    pub metric: Vec<Vec<String>>,
    pub frame: String,
    pub basis_labels: Vec<String>,
    #[serde(default)]
    pub torsion: Vec<TorsionEntry>,
    pub curvature: CurvatureSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidate_splitting: Option<Vec<Vec<usize>>>,
}

fn rational(field: &str, s: &str) -> Result<Scalar, SchemaError> {
    parse_scalar(s).ok_or_else(|| field_err(field, format!("`{s}` is not a rational \"p/q\" with q ≠ 0")))
}

fn matrix(field: &str, rows: &[Vec<String>], n: usize) -> Result<QMatrix, SchemaError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(field_err(field, format!("expected a {n} × {n} matrix")));
    }
    let mut out = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let mut r = Vec::with_capacity(n);
        for (j, s) in row.iter().enumerate() {
            r.push(rational(&format!("{field}[{i}][{j}]"), s)?);
        }
        out.push(r);
    }
    Ok(QMatrix::from_rows(out))
}

fn matrix_strings(m: &QMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(fmt_scalar).collect()).collect()
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<Self, SchemaError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn space(&self) -> Result<Space, SchemaError> {
        let n = self.dim;
        let g = matrix("metric", &self.metric, n)?;
        let frame = FrameKind::parse(&self.frame).ok_or_else(|| field_err("frame", format!("unknown frame `{}` (witt, orthonormal, general)", self.frame)))?;
        if self.basis_labels.len() != n {
            return Err(field_err("basis_labels", format!("expected {n} labels, found {}", self.basis_labels.len())));
        }
        PseudoEuclideanSpace::new(g, self.basis_labels.clone(), frame).map_err(|e| field_err("metric", e.to_string()))
    }

    pub fn to_model(&self) -> Result<InfinitesimalModel, SchemaError> {
        let s = self.space()?;
        let n = self.dim;
        let mut form = MultiVector::zero(&s, 3).map_err(|e| field_err("torsion", e.to_string()))?;
        for (k, entry) in self.torsion.iter().enumerate() {
            let field = format!("torsion[{k}]");
            let [a, b, c] = entry.indices;
            if a.max(b).max(c) >= n {
                return Err(field_err(format!("{field}.indices"), format!("index out of range 0..{n}")));
            }
            if a == b || b == c || a == c {
                return Err(field_err(format!("{field}.indices"), "indices must be distinct"));
            }
            let v = rational(&format!("{field}.value"), &entry.value)?;
            let blade = MultiVector::blade(&s, &[a, b, c]).map_err(|e| field_err(&field, e.to_string()))?;
            form = form.add(&blade.scale(&v)).map_err(|e| field_err(&field, e.to_string()))?;
        }
        let t = TorsionTensor::new(form).map_err(|e| field_err("torsion", e.to_string()))?;

        let r = match &self.curvature {
            CurvatureSpec::Entries(entries) => {
                let mut r = CurvatureTensor::zero(&s);
                for (k, entry) in entries.iter().enumerate() {
                    let field = format!("curvature[{k}]");
                    let [i, j] = entry.indices;
                    if i.max(j) >= n || i == j {
                        return Err(field_err(format!("{field}.indices"), format!("need distinct indices in 0..{n}")));
                    }
                    let m = matrix(&format!("{field}.matrix"), &entry.matrix, n)?;
                    let x = SkewEndomorphism::new(&s, m).map_err(|e| field_err(format!("{field}.matrix"), e.to_string()))?;
                    r.add_to(i, j, &x);
                }
                r
            }
            CurvatureSpec::Solve { solve_for } => {
                if solve_for != "curvature" {
                    return Err(field_err("curvature.solve_for", format!("can only solve for `curvature`, not `{solve_for}`")));
                }
                solve_curvature(&s, &t)?
            }
        };
        let mut model = InfinitesimalModel::new(r, t).map_err(|e| field_err("curvature", e.to_string()))?;
        if let Some(lists) = &self.candidate_splitting {
            let mut subs = Vec::new();
            for (k, list) in lists.iter().enumerate() {
                if list.iter().any(|&i| i >= n) {
                    return Err(field_err(format!("candidate_splitting[{k}]"), format!("index out of range 0..{n}")));
                }
                subs.push(Subspace::span(&s, &list.iter().map(|&i| s.basis_vector(i)).collect::<Vec<_>>()));
            }
            model = model.with_candidates(subs);
        }
        Ok(model)
    }

    pub fn from_model(m: &InfinitesimalModel) -> Self {
        let s = m.space();
        let torsion = m
            .torsion()
            .form()
            .terms()
            .map(|(ix, v)| TorsionEntry { indices: [ix[0], ix[1], ix[2]], value: fmt_scalar(v) })
            .collect();
        let curvature = m
            .curvature()
            .pair_values()
            .filter(|(_, x)| !x.is_zero())
            .map(|((i, j), x)| CurvatureEntry { indices: [i, j], matrix: matrix_strings(x.matrix()) })
            .collect();
        let candidates: Vec<Vec<usize>> = m
            .candidates()
            .iter()
            .filter_map(|sub| {
                let idx: Vec<usize> = (0..s.dim()).filter(|&i| sub.contains(&s.basis_vector(i))).collect();
                (idx.len() == sub.dim()).then_some(idx)
            })
            .collect();
        ModelFile {
            dim: s.dim(),
            metric: matrix_strings(s.metric()),
            frame: s.frame().as_str().to_string(),
            basis_labels: s.labels().to_vec(),
            torsion,
            curvature: CurvatureSpec::Entries(curvature),
            candidate_splitting: (!candidates.is_empty()).then_some(candidates),
        }
    }
}

/// The unique solution of the first Bianchi identity with values in the
/// annihilator of `T`, when there is exactly one.
fn solve_curvature(s: &Space, t: &TorsionTensor) -> Result<CurvatureTensor, SchemaError> {
    let g: SubalgebraSO = annihilator(&SubalgebraSO::full(s), &Tensor::Multi(t.form().clone()));
    let space = curvature_space(&g, t);
    match (&space.particular, space.linear_dim()) {
        (None, _) => Err(field_err("curvature", "no curvature with values in the stabilizer of T satisfies the first Bianchi identity")),
        (Some(p), 0) => Ok(p.clone()),
        (Some(_), k) => Err(field_err("curvature", format!("curvature is not determined by T: {k}-dimensional family of solutions"))),
    }
}
