use crate::liealg::SubalgebraSO;
use crate::mlinalg::matrix::vec_ops;
use crate::mlinalg::{FrameKind, Scalar, SkewEndomorphism, Subspace};
use crate::models::WeakType;
use num::Zero;

use super::frame::{mv, skew, wedge};
use super::{ConstraintReport, ConstructionError};

/// The extra datum of types 3 and 4, given on the basis of `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeakMap {
    None,
    /// `φ: h → ℝ`.
    Phi(Vec<Scalar>),
    /// `ψ: h → ℝ^{n-m}`, values as vectors of the ambient space.
    Psi(Vec<Vec<Scalar>>),
}

/// Generators of the weakly irreducible subalgebra of the given type in a
/// Witt frame `p, e_1, …, e_n, q`. For type 4 the algebra is
/// `{A + p∧ψ(A)} ⋉ p∧ℝ^m` with `ℝ^m = ⟨e_1, …, e_m⟩`.
pub fn build_weak_type(kind: WeakType, h: &SubalgebraSO, map: &WeakMap, m: usize) -> Result<SubalgebraSO, ConstructionError> {
    let s = h.space();
    let family = format!("weak type {}", kind.number());
    let mut report = ConstraintReport::new(&family);
    report.push("Witt frame", s.frame() == FrameKind::Witt);
    report.into_result()?;

    let d = s.dim();
    let n = d - 2;
    let p = s.basis_vector(0);
    let q = s.basis_vector(d - 1);
    let pv = mv(s, &p);
    let p_wedge = |x: &[Scalar]| skew(&wedge(&pv, &mv(s, x)));
    let pq = skew(&wedge(&pv, &mv(s, &q)));

    let mut report = ConstraintReport::new(&family);
    report.push("h ⊂ so(n)", h.basis().iter().all(|a| vec_ops::is_zero(&a.apply(&p)) && vec_ops::is_zero(&a.apply(&q))));
    report.push("h closed", h.is_closed());
    let derived = derived_coords(h);

    let mut gens: Vec<SkewEndomorphism> = Vec::new();
    match (kind, map) {
        (WeakType::Type1, WeakMap::None) | (WeakType::Type2, WeakMap::None) => {
            gens.extend(h.basis().iter().cloned());
            if kind == WeakType::Type1 {
                gens.push(pq.clone());
            }
            gens.extend((1..=n).map(|i| p_wedge(&s.basis_vector(i))));
        }
        (WeakType::Type3, WeakMap::Phi(phi)) => {
            report.push("φ defined on h", phi.len() == h.dim());
            report.into_result()?;
            report = ConstraintReport::new(&family);
            report.push("φ ≠ 0", phi.iter().any(|x| !x.is_zero()));
            report.push("φ|[h,h] = 0", derived.iter().all(|c| dot(c, phi).is_zero()));
            for (a, f) in h.basis().iter().zip(phi) {
                gens.push(a.sub(&pq.scale(f)));
            }
            gens.extend((1..=n).map(|i| p_wedge(&s.basis_vector(i))));
        }
        (WeakType::Type4, WeakMap::Psi(psi)) => {
            report.push("ψ defined on h", psi.len() == h.dim());
            report.push("0 < m < n", m > 0 && m < n);
            report.into_result()?;
            report = ConstraintReport::new(&family);
            let rm = Subspace::span(s, &(1..=m).map(|i| s.basis_vector(i)).collect::<Vec<_>>());
            let rest = Subspace::span(s, &(m + 1..=n).map(|i| s.basis_vector(i)).collect::<Vec<_>>());
            report.push(
                "h ⊂ so(m)",
                h.basis().iter().all(|a| rest.basis().iter().all(|v| vec_ops::is_zero(&a.apply(v)))),
            );
            report.push("ψ valued in ℝ^{n-m}", psi.iter().all(|v| v.len() == d && rest.contains(v)));
            report.push("ψ surjective onto ℝ^{n-m}", Subspace::span(s, psi).dim() == n - m);
            report.push(
                "ψ|[h,h] = 0",
                derived.iter().all(|c| {
                    let mut acc = vec![Scalar::zero(); d];
                    for (ci, v) in c.iter().zip(psi) {
                        vec_ops::axpy(&mut acc, ci, v);
                    }
                    vec_ops::is_zero(&acc)
                }),
            );
            report.into_result()?;
            report = ConstraintReport::new(&family);
            for (a, v) in h.basis().iter().zip(psi) {
                gens.push(a.add(&p_wedge(v)));
            }
            gens.extend(rm.basis().iter().map(|v| p_wedge(v)));
        }
        _ => report.push("map matches the type", false),
    }
    report.into_result()?;

    let g = SubalgebraSO::span(s, &gens);
    let mut closed = ConstraintReport::new(&family);
    closed.push("bracket closed", g.is_closed());
    closed.into_result()?;
    Ok(g)
}

/// Coordinates in the basis of `h` of the brackets of basis elements.
fn derived_coords(h: &SubalgebraSO) -> Vec<Vec<Scalar>> {
    let mut out = Vec::new();
    for i in 0..h.dim() {
        for j in i + 1..h.dim() {
            if let Some(c) = h.coords(&h.basis()[i].bracket(&h.basis()[j])) {
                out.push(c);
            }
        }
    }
    out
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}
