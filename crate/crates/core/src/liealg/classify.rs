use crate::mlinalg::matrix::{span_basis, EchelonBuilder};
use crate::mlinalg::Scalar;

use super::structure::AbstractLieAlgebra;
use super::LieError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LieLabel {
    So3,
    So12,
    Heisenberg3,
    Abelian,
    Solvable,
    SemisimpleSum,
    Unknown,
}

impl LieLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            LieLabel::So3 => "so3",
            LieLabel::So12 => "so12",
            LieLabel::Heisenberg3 => "heisenberg3",
            LieLabel::Abelian => "abelian",
            LieLabel::Solvable => "solvable",
            LieLabel::SemisimpleSum => "semisimple_sum",
            LieLabel::Unknown => "unknown",
        }
    }
}

impl std::fmt::Display for LieLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieClassification {
    pub label: LieLabel,
    /// `(positive, negative, zero)` inertia of the Killing form.
    pub killing_signature: (usize, usize, usize),
    pub derived_dims: Vec<usize>,
    pub center_dim: usize,
    /// Factor labels for direct sums, e.g. `["so3", "abelian1"]`.
    pub factors: Vec<String>,
    pub notes: Vec<String>,
}

/// Identifies a 3-dimensional algebra from its Killing form, center and
/// derived series.
pub fn classify_dim3(l: &AbstractLieAlgebra) -> Result<LieClassification, LieError> {
    if l.dim() != 3 {
        return Err(LieError::DimensionError { expected: 3, found: l.dim() });
    }
    Ok(classify(l))
}

/// Best-effort identification in any dimension.
pub fn classify(l: &AbstractLieAlgebra) -> LieClassification {
    let rep = l.structure_report();
    let sig = rep.killing.inertia();
    let mut out = LieClassification {
        label: LieLabel::Unknown,
        killing_signature: sig,
        derived_dims: rep.derived_series.clone(),
        center_dim: rep.center_dim,
        factors: Vec::new(),
        notes: Vec::new(),
    };
    if !rep.jacobi_ok {
        out.notes.push("Jacobi identity fails".into());
        return out;
    }
    let n = l.dim();
    if l.is_abelian() {
        out.label = LieLabel::Abelian;
        out.factors.push(format!("abelian{n}"));
        return out;
    }
    if n == 3 {
        out.label = dim3_label(l, sig, &rep.derived_series, rep.center_dim);
        if out.label != LieLabel::Unknown {
            out.factors.push(out.label.as_str().into());
        }
        return out;
    }
    if rep.derived_series.last() == Some(&0) {
        out.label = LieLabel::Solvable;
        if rep.lower_central.last() == Some(&0) {
            out.notes.push("nilpotent".into());
        }
        return out;
    }
    // reductive split L = z ⊕ [L,L] with [L,L] semisimple
    let z = l.center();
    let d = l.derived();
    let mut eb = EchelonBuilder::new();
    for v in z.iter().chain(&d) {
        eb.insert(v);
    }
    if eb.rank() != n || z.len() + d.len() != n {
        out.notes.push("no center/derived splitting".into());
        return out;
    }
    let dl = l.derived_algebra();
    if dl.killing().inertia().2 != 0 {
        out.notes.push("derived algebra is not semisimple".into());
        return out;
    }
    match simple_factors(&dl) {
        Some(factors) => {
            out.label = LieLabel::SemisimpleSum;
            out.factors = factors;
            if !z.is_empty() {
                out.factors.push(format!("abelian{}", z.len()));
            }
        }
        None => out.notes.push("semisimple part not split into 3-dimensional ideals".into()),
    }
    out
}

fn dim3_label(l: &AbstractLieAlgebra, sig: (usize, usize, usize), derived: &[usize], center: usize) -> LieLabel {
    match sig {
        (0, 3, 0) => LieLabel::So3,
        (_, _, 0) => LieLabel::So12,
        _ => {
            let d = l.derived();
            let z = l.center();
            let d_in_z = d.iter().all(|v| crate::mlinalg::matrix::in_span(&z, v));
            if l.killing().is_zero() && center == 1 && d.len() == 1 && d_in_z {
                LieLabel::Heisenberg3
            } else if derived.last() == Some(&0) {
                LieLabel::Solvable
            } else {
                LieLabel::Unknown
            }
        }
    }
}

/// Labels of the simple ideals of a semisimple algebra, found among the ideals
/// generated by basis vectors. Only 3-dimensional factors are recognised.
fn simple_factors(l: &AbstractLieAlgebra) -> Option<Vec<String>> {
    let n = l.dim();
    let mut ideals: Vec<Vec<Vec<Scalar>>> = Vec::new();
    for i in 0..n {
        let id = l.ideal_generated(&crate::mlinalg::matrix::vec_ops::basis(n, i));
        if id.len() == 3 && !ideals.contains(&id) {
            ideals.push(id);
        }
    }
    let all: Vec<Vec<Scalar>> = ideals.iter().flatten().cloned().collect();
    if span_basis(&all, n).len() != n || 3 * ideals.len() != n {
        return None;
    }
    let mut labels = Vec::new();
    for (k, id) in ideals.iter().enumerate() {
        let sub = l.subalgebra(id, vec![format!("a{k}"), format!("b{k}"), format!("c{k}")]).ok()?;
        labels.push(classify(&sub).label.as_str().to_string());
    }
    labels.sort();
    Some(labels)
}
