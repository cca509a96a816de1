use crate::liealg::SubalgebraSO;
use crate::mlinalg::matrix::vec_ops;
use crate::mlinalg::{QMatrix, Scalar, SkewEndomorphism, Subspace};
use crate::torsioncurv::TorsionTensor;
use num::{Signed, Zero};

use super::weak::{weak_type_at, WeakType};
use super::{InfinitesimalModel, ModelError};

/// Position in the list of Lorentzian holonomy cases with nonzero torsion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseKind {
    /// `T = 0`.
    Symmetric,
    Irreducible,
    WeaklyIrreducible,
    Decomposable,
    DimL1,
    DimL2,
    DimL3,
    DimL4Plus,
    Unknown,
}

impl CaseKind {
    pub fn number(&self) -> Option<u8> {
        match self {
            CaseKind::Irreducible => Some(1),
            CaseKind::WeaklyIrreducible => Some(2),
            CaseKind::Decomposable => Some(3),
            CaseKind::DimL1 => Some(4),
            CaseKind::DimL2 => Some(5),
            CaseKind::DimL3 => Some(6),
            CaseKind::DimL4Plus => Some(7),
            CaseKind::Symmetric | CaseKind::Unknown => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            CaseKind::Symmetric => "symmetric",
            CaseKind::Irreducible => "irreducible",
            CaseKind::WeaklyIrreducible => "weakly irreducible",
            CaseKind::Decomposable => "decomposable",
            CaseKind::DimL1 => "dim L = 1",
            CaseKind::DimL2 => "dim L = 2",
            CaseKind::DimL3 => "dim L = 3",
            CaseKind::DimL4Plus => "dim L >= 4",
            CaseKind::Unknown => "unknown",
        }
    }

    fn from_dim_l(d: usize) -> Self {
        match d {
            1 => CaseKind::DimL1,
            2 => CaseKind::DimL2,
            3 => CaseKind::DimL3,
            _ => CaseKind::DimL4Plus,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CaseLabel {
    pub kind: CaseKind,
    /// Lorentzian invariant subspace with weakly irreducible action.
    pub l: Option<Subspace>,
    pub e: Option<Subspace>,
    pub weak_type: Option<WeakType>,
    pub evidence: Vec<String>,
}

impl CaseLabel {
    fn new(kind: CaseKind, evidence: Vec<String>) -> Self {
        CaseLabel { kind, l: None, e: None, weak_type: None, evidence }
    }
}

const MAX_SUBSPACES: usize = 96;

/// Invariant subspaces reachable from the natural seeds (fixed vectors and
/// images of ideals, the candidates) by `⊥`, `+`, `∩`, `g·S` and
/// `{v : g v ⊂ S}`. Trivial subspaces are omitted.
pub fn invariant_subspaces(g: &SubalgebraSO, candidates: &[Subspace]) -> Vec<Subspace> {
    let space = g.space();
    let n = space.dim();
    let mut found: Vec<Subspace> = Vec::new();
    let push = |found: &mut Vec<Subspace>, s: Subspace| -> bool {
        if s.dim() == 0 || s.dim() == n || found.contains(&s) || found.len() >= MAX_SUBSPACES {
            return false;
        }
        found.push(s);
        true
    };

    let mut ideals = vec![g.clone()];
    let mut cur = g.clone();
    loop {
        let next = bracket_span(g, &cur);
        if next.dim() >= cur.dim() || next.is_zero() {
            break;
        }
        ideals.push(next.clone());
        cur = next;
    }
    let mut d = g.clone();
    loop {
        let next = bracket_span(&d, &d);
        if next.dim() >= d.dim() || next.is_zero() {
            break;
        }
        ideals.push(next.clone());
        d = next;
    }
    let z = center(g);
    for ideal in &ideals {
        push(&mut found, ideal.fixed_vectors());
        push(&mut found, image(ideal, &Subspace::whole(space)));
    }
    for zb in z.basis() {
        push(&mut found, Subspace::span(space, &zb.matrix().nullspace()));
        let cols: Vec<Vec<Scalar>> = (0..n).map(|i| zb.matrix().col(i)).collect();
        push(&mut found, Subspace::span(space, &cols));
    }
    for c in candidates {
        if is_invariant(g, c) {
            push(&mut found, c.clone());
        }
    }

    for _round in 0..3 {
        let before = found.len();
        let snapshot = found.clone();
        for s in &snapshot {
            push(&mut found, s.orthogonal_complement());
            push(&mut found, image(g, s));
            push(&mut found, preimage(g, s));
        }
        for (i, a) in snapshot.iter().enumerate() {
            for b in &snapshot[i + 1..] {
                push(&mut found, a.sum(b));
                push(&mut found, a.intersection(b));
            }
        }
        if found.len() == before {
            break;
        }
    }
    debug_assert!(found.iter().all(|s| is_invariant(g, s)));
    found
}

pub fn is_invariant(g: &SubalgebraSO, s: &Subspace) -> bool {
    g.basis().iter().all(|b| s.is_invariant(b.matrix()))
}

fn bracket_span(a: &SubalgebraSO, b: &SubalgebraSO) -> SubalgebraSO {
    let mut elems = Vec::new();
    for x in a.basis() {
        for y in b.basis() {
            elems.push(x.bracket(y));
        }
    }
    SubalgebraSO::span(a.space(), &elems)
}

fn center(g: &SubalgebraSO) -> SubalgebraSO {
    let k = g.dim();
    if k == 0 {
        return g.clone();
    }
    let cols: Vec<Vec<Scalar>> = g
        .basis()
        .iter()
        .map(|x| g.basis().iter().flat_map(|y| x.bracket(y).matrix().flat().to_vec()).collect())
        .collect();
    let rows = cols[0].len();
    let elems: Vec<SkewEndomorphism> =
        QMatrix::from_cols(&cols, rows).nullspace().iter().map(|c| g.element(c)).collect();
    SubalgebraSO::span(g.space(), &elems)
}

fn image(g: &SubalgebraSO, s: &Subspace) -> Subspace {
    let vs: Vec<Vec<Scalar>> = g.basis().iter().flat_map(|b| s.basis().iter().map(move |v| b.apply(v))).collect();
    Subspace::span(g.space(), &vs)
}

fn preimage(g: &SubalgebraSO, s: &Subspace) -> Subspace {
    let space = g.space();
    let n = space.dim();
    if s.dim() == 0 {
        return g.fixed_vectors();
    }
    // covectors vanishing on s
    let ann = QMatrix::from_rows(s.basis().to_vec()).nullspace();
    if ann.is_empty() || g.is_zero() {
        return Subspace::whole(space);
    }
    let mut rows = Vec::new();
    for b in g.basis() {
        for c in &ann {
            let bt = b.matrix().transpose();
            rows.push(bt.mul_vec(c));
        }
    }
    let _ = n;
    Subspace::span(space, &QMatrix::from_rows(rows).nullspace())
}

/// Whether `T ∈ Λ³S ⊕ Λ³S^⊥`.
pub fn torsion_splits(t: &TorsionTensor, s: &Subspace) -> bool {
    let space = t.space();
    let e = s.orthogonal_complement();
    let tv = |x: &[Scalar], y: &[Scalar], z: &[Scalar]| space.inner(&t.value(x, y), z);
    for x in s.basis() {
        for y in s.basis() {
            for z in e.basis() {
                if !tv(x, y, z).is_zero() {
                    return false;
                }
            }
        }
        for y in e.basis() {
            for z in e.basis() {
                if !tv(x, y, z).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

fn is_lorentzian_subspace(s: &Subspace) -> bool {
    let (_, neg, zero) = s.gram().inertia();
    neg == 1 && zero == 0
}

/// A vector of nonzero norm in `f`, if any.
fn non_null_vector(f: &Subspace) -> Option<Vec<Scalar>> {
    let space = f.space();
    let b = f.basis();
    for v in b {
        if !space.inner(v, v).is_zero() {
            return Some(v.clone());
        }
    }
    for (i, u) in b.iter().enumerate() {
        for v in &b[i + 1..] {
            let w = vec_ops::add(u, v);
            if !space.inner(&w, &w).is_zero() {
                return Some(w);
            }
        }
    }
    None
}

/// Shrinks a Lorentzian invariant subspace by splitting off fixed non-null
/// directions; a fixed timelike vector gives a line.
fn refine_lorentzian(g: &SubalgebraSO, mut l: Subspace) -> Subspace {
    let space = g.space();
    let fixed = g.fixed_vectors();
    loop {
        let f = l.intersection(&fixed);
        let Some(v) = non_null_vector(&f) else { return l };
        if space.inner(&v, &v).is_negative() {
            return Subspace::span(space, &[v]);
        }
        if l.dim() <= 1 {
            return l;
        }
        l = l.intersection(&Subspace::span(space, &[v]).orthogonal_complement());
    }
}

/// Isotropic `q` with `g(p,q) = 1`.
fn dual_isotropic(model: &InfinitesimalModel, p: &[Scalar]) -> Option<Vec<Scalar>> {
    let s = model.space();
    let w = (0..s.dim()).map(|i| s.basis_vector(i)).find(|w| !s.inner(p, w).is_zero())?;
    let w = vec_ops::scale(&w, &(Scalar::from_integer(1.into()) / s.inner(p, &w)));
    let half = crate::mlinalg::q(1, 2);
    Some(vec_ops::sub(&w, &vec_ops::scale(p, &(&half * s.inner(&w, &w)))))
}

/// Places the model in the list of Lorentzian holonomy cases. The search
/// for invariant subspaces is heuristic; inconclusive searches give
/// [`CaseKind::Unknown`].
pub fn classify_case(model: &InfinitesimalModel) -> Result<CaseLabel, ModelError> {
    let space = model.space();
    let (pos, neg) = space.signature();
    if neg != 1 || space.dim() < 3 {
        return Err(ModelError::SignatureError { pos, neg });
    }
    let n = space.dim();
    let g = model.holonomy();
    let t = model.torsion();
    let mut evidence = vec![format!("holonomy dim {}", g.dim())];
    if t.is_zero() {
        evidence.push("torsion vanishes".into());
        return Ok(CaseLabel::new(CaseKind::Symmetric, evidence));
    }

    let lattice = invariant_subspaces(&g, model.candidates());
    let nondeg: Vec<&Subspace> = lattice.iter().filter(|s| s.is_nondegenerate()).collect();
    evidence.push(format!("{} invariant subspaces found, {} nondegenerate", lattice.len(), nondeg.len()));

    for s in &nondeg {
        if torsion_splits(t, s) {
            let (l, e) = if is_lorentzian_subspace(s) { ((*s).clone(), s.orthogonal_complement()) } else { (s.orthogonal_complement(), (*s).clone()) };
            evidence.push(format!("torsion splits along invariant subspaces of dims {} + {}", l.dim(), e.dim()));
            return Ok(CaseLabel { kind: CaseKind::Decomposable, l: Some(l), e: Some(e), weak_type: None, evidence });
        }
    }

    let lorentzian = nondeg
        .iter()
        .flat_map(|s| [(*s).clone(), s.orthogonal_complement()])
        .filter(is_lorentzian_subspace)
        .min_by_key(|s| s.dim());
    if let Some(l) = lorentzian {
        let l = refine_lorentzian(&g, l);
        let e = l.orthogonal_complement();
        if torsion_splits(t, &l) {
            evidence.push(format!("torsion splits along a fixed line, dims {} + {}", l.dim(), e.dim()));
            return Ok(CaseLabel { kind: CaseKind::Decomposable, l: Some(l), e: Some(e), weak_type: None, evidence });
        }
        evidence.push(format!("minimal Lorentzian invariant subspace of dim {}", l.dim()));
        let kind = CaseKind::from_dim_l(l.dim());
        return Ok(CaseLabel { kind, l: Some(l), e: Some(e), weak_type: None, evidence });
    }

    if g.dim() == n * (n - 1) / 2 {
        if n == 3 {
            evidence.push("holonomy is all of so(1,2)".into());
            return Ok(CaseLabel::new(CaseKind::Irreducible, evidence));
        }
        evidence.push("full holonomy with nonzero torsion".into());
        return Ok(CaseLabel::new(CaseKind::Unknown, evidence));
    }

    for line in lattice.iter().filter(|s| s.dim() == 1) {
        let p = &line.basis()[0];
        if !space.inner(p, p).is_zero() {
            continue;
        }
        let Some(q) = dual_isotropic(model, p) else { continue };
        match weak_type_at(&g, p, &q) {
            Ok(info) => {
                evidence.push(format!("invariant isotropic line, type {}", info.kind.number()));
                return Ok(CaseLabel {
                    kind: CaseKind::WeaklyIrreducible,
                    l: Some(Subspace::whole(space)),
                    e: None,
                    weak_type: Some(info.kind),
                    evidence,
                });
            }
            Err(err) => evidence.push(format!("isotropic line rejected: {err}")),
        }
    }
    evidence.push("no invariant nondegenerate subspace or adapted isotropic line found".into());
    Ok(CaseLabel::new(CaseKind::Unknown, evidence))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mlinalg::{qi, MultiVector, PseudoEuclideanSpace};
    use crate::torsioncurv::CurvatureTensor;

    fn witt_vol(alpha: i64) -> InfinitesimalModel {
        let s = PseudoEuclideanSpace::witt(1);
        let t = TorsionTensor::new(MultiVector::blade_by_labels(&s, &["p", "e1", "q"]).unwrap()).unwrap();
        let mut r = CurvatureTensor::zero(&s);
        r.set(2, 1, SkewEndomorphism::from_labels(&s, "p", "e1").unwrap().scale(&qi(alpha)));
        InfinitesimalModel::new(r, t).unwrap()
    }

    #[test]
    fn dim3_witt_family_is_weakly_irreducible() {
        let c = classify_case(&witt_vol(1)).unwrap();
        assert_eq!(c.kind, CaseKind::WeaklyIrreducible);
        assert_eq!(c.weak_type, Some(WeakType::Type2));
    }

    #[test]
    fn volume_torsion_with_full_holonomy_is_irreducible() {
        let s = PseudoEuclideanSpace::witt(1);
        let t = TorsionTensor::new(MultiVector::blade_by_labels(&s, &["p", "e1", "q"]).unwrap()).unwrap();
        let r = CurvatureTensor::constant_curvature(&s, &qi(1));
        let m = InfinitesimalModel::new(r, t).unwrap();
        assert_eq!(classify_case(&m).unwrap().kind, CaseKind::Irreducible);
    }

    #[test]
    fn riemannian_signature_rejected() {
        let s = PseudoEuclideanSpace::euclidean(3);
        let m = InfinitesimalModel::flat(&s);
        assert!(matches!(classify_case(&m), Err(ModelError::SignatureError { .. })));
    }

    #[test]
    fn timelike_fixed_line_gives_dim_l_one() {
        let s = PseudoEuclideanSpace::orthonormal(&[-1, 1, 1], Some(vec!["e0".into(), "e1".into(), "e2".into()]));
        let t = TorsionTensor::new(MultiVector::blade_by_labels(&s, &["e0", "e1", "e2"]).unwrap()).unwrap();
        let mut r = CurvatureTensor::zero(&s);
        r.set(1, 2, SkewEndomorphism::from_labels(&s, "e1", "e2").unwrap());
        let m = InfinitesimalModel::new(r, t).unwrap();
        let c = classify_case(&m).unwrap();
        assert_eq!(c.kind, CaseKind::DimL1);
        assert_eq!(c.l.unwrap().dim(), 1);
    }
}
