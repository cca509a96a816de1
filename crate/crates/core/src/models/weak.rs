use crate::liealg::SubalgebraSO;
use crate::mlinalg::matrix::vec_ops;
use crate::mlinalg::{bivector_endo, one, zero, FrameKind, MultiVector, QMatrix, Scalar, SkewEndomorphism, Subspace};
use num::Zero;

use super::ModelError;

/// The four families of weakly irreducible subalgebras preserving `ℝp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeakType {
    /// `(ℝ p∧q ⊕ h) ⋉ p∧E`
    Type1,
    /// `h ⋉ p∧E`
    Type2,
    /// `{φ(A)·(-p∧q) + A} ⋉ p∧E`
    Type3,
    /// `{A + p∧ψ(A)} ⋉ p∧W` with `W ⊊ E`
    Type4,
}

impl WeakType {
    pub fn number(&self) -> u8 {
        match self {
            WeakType::Type1 => 1,
            WeakType::Type2 => 2,
            WeakType::Type3 => 3,
            WeakType::Type4 => 4,
        }
    }
}

/// Decomposition of a subalgebra relative to `p`, `q` and `E = {p,q}^⊥`;
/// every element is written `-a p∧q + A + p∧X`.
#[derive(Clone, Debug)]
pub struct WeakTypeInfo {
    pub kind: WeakType,
    pub p: Vec<Scalar>,
    pub q: Vec<Scalar>,
    pub screen: Subspace,
    /// Projection of the algebra to `so(E)`.
    pub h: SubalgebraSO,
    /// `φ` on the basis of `h` (type 3; zero otherwise).
    pub phi: Vec<Scalar>,
    /// `ψ` on the basis of `h`, valued in `E ∩ W^⊥` (type 4).
    pub psi: Vec<Vec<Scalar>>,
    /// `W = {X : p∧X ∈ g}`.
    pub w: Subspace,
}

impl WeakTypeInfo {
    pub fn m(&self) -> usize {
        self.w.dim()
    }
}

struct Parts {
    a: Scalar,
    a_part: SkewEndomorphism,
    x: Vec<Scalar>,
}

/// `weak_type_at` for a Witt frame, with `p` and `q` the first and last
/// basis vectors.
pub fn weak_type(g: &SubalgebraSO) -> Result<WeakTypeInfo, ModelError> {
    let s = g.space();
    if s.frame() != FrameKind::Witt {
        return Err(ModelError::NotAdapted("space has no Witt frame".into()));
    }
    weak_type_at(g, &s.basis_vector(0), &s.basis_vector(s.dim() - 1))
}

/// Detects which weakly irreducible family `g` belongs to, for isotropic
/// `p`, `q` with `g(p,q) = 1`.
pub fn weak_type_at(g: &SubalgebraSO, p: &[Scalar], q: &[Scalar]) -> Result<WeakTypeInfo, ModelError> {
    let s = g.space();
    if !s.inner(p, p).is_zero() || !s.inner(q, q).is_zero() || s.inner(p, q) != one() {
        return Err(ModelError::NotAdapted("p, q are not a normalized isotropic pair".into()));
    }
    let screen = Subspace::span(s, &[p.to_vec(), q.to_vec()]).orthogonal_complement();
    let pv = MultiVector::vector(s, p);
    let pq = bivector_endo(&pv.wedge(&MultiVector::vector(s, q))?)?;
    let pivot = p.iter().position(|x| !x.is_zero()).expect("p is nonzero");

    let mut parts = Vec::new();
    for xi in g.basis() {
        let xp = xi.apply(p);
        let a = &xp[pivot] / &p[pivot];
        if xp != vec_ops::scale(p, &a) {
            return Err(ModelError::NotAdapted(format!("{xi:?} moves p off its line")));
        }
        let x = screen.project(&xi.apply(q)).expect("screen is nondegenerate");
        let px = bivector_endo(&pv.wedge(&MultiVector::vector(s, &x))?)?;
        let a_part = xi.add(&pq.scale(&a)).sub(&px);
        parts.push(Parts { a, a_part, x });
    }

    let k = parts.len();
    let n = s.dim();
    // kernel of g → ℝ ⊕ so(E) gives p∧W
    let rows = 1 + n * n;
    let cols: Vec<Vec<Scalar>> = parts
        .iter()
        .map(|pt| {
            let mut c = vec![pt.a.clone()];
            c.extend(pt.a_part.matrix().flat().iter().cloned());
            c
        })
        .collect();
    let w_vecs: Vec<Vec<Scalar>> = if k == 0 {
        Vec::new()
    } else {
        QMatrix::from_cols(&cols, rows)
            .nullspace()
            .iter()
            .map(|c| combine(c, parts.iter().map(|pt| &pt.x), n))
            .collect()
    };
    let w = Subspace::span(s, &w_vecs);
    let h = SubalgebraSO::span(s, &parts.iter().map(|pt| pt.a_part.clone()).collect::<Vec<_>>());

    // a preimage in g of every basis element of h
    let a_cols: Vec<Vec<Scalar>> = parts.iter().map(|pt| pt.a_part.matrix().flat().to_vec()).collect();
    let lifts: Vec<Vec<Scalar>> = h
        .basis()
        .iter()
        .map(|hb| QMatrix::from_cols(&a_cols, n * n).solve(hb.matrix().flat()).expect("h is the projection of g"))
        .collect();

    let info = |kind, phi, psi| WeakTypeInfo {
        kind,
        p: p.to_vec(),
        q: q.to_vec(),
        screen: screen.clone(),
        h: h.clone(),
        phi,
        psi,
        w: w.clone(),
    };

    if w.dim() == screen.dim() {
        if g.contains(&pq) {
            return Ok(info(WeakType::Type1, Vec::new(), Vec::new()));
        }
        if parts.iter().all(|pt| pt.a.is_zero()) {
            return Ok(info(WeakType::Type2, Vec::new(), Vec::new()));
        }
        let phi: Vec<Scalar> = lifts
            .iter()
            .map(|c| c.iter().zip(&parts).fold(zero(), |acc, (ci, pt)| acc + ci * &pt.a))
            .collect();
        return Ok(info(WeakType::Type3, phi, Vec::new()));
    }

    if parts.iter().any(|pt| !pt.a.is_zero()) {
        return Err(ModelError::NotWeaklyIrreducible("p∧q component with a proper p∧W".into()));
    }
    let u = screen.intersection(&w.orthogonal_complement());
    for hb in h.basis() {
        if u.basis().iter().any(|v| !vec_ops::is_zero(&hb.apply(v))) {
            return Err(ModelError::NotWeaklyIrreducible("h does not annihilate E ⊖ W".into()));
        }
    }
    let psi: Vec<Vec<Scalar>> = lifts
        .iter()
        .map(|c| {
            let x = combine(c, parts.iter().map(|pt| &pt.x), n);
            u.project(&x).unwrap_or_else(|| vec![zero(); n])
        })
        .collect();
    if Subspace::span(s, &psi).dim() != u.dim() {
        return Err(ModelError::NotWeaklyIrreducible("ψ is not surjective".into()));
    }
    Ok(info(WeakType::Type4, Vec::new(), psi))
}

fn combine<'a>(c: &[Scalar], vs: impl Iterator<Item = &'a Vec<Scalar>>, n: usize) -> Vec<Scalar> {
    let mut out = vec![zero(); n];
    for (ci, v) in c.iter().zip(vs) {
        vec_ops::axpy(&mut out, ci, v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mlinalg::PseudoEuclideanSpace;

    #[test]
    fn abelian_ideal_is_type2() {
        let s = PseudoEuclideanSpace::witt(3);
        let g = SubalgebraSO::from_label_pairs(&s, &[("p", "e1"), ("p", "e2"), ("p", "e3")]).unwrap();
        let info = weak_type(&g).unwrap();
        assert_eq!(info.kind, WeakType::Type2);
        assert_eq!(info.h.dim(), 0);
        assert_eq!(info.m(), 3);
    }

    #[test]
    fn with_boost_is_type1() {
        let s = PseudoEuclideanSpace::witt(2);
        let g = SubalgebraSO::from_label_pairs(&s, &[("p", "q"), ("p", "e1"), ("p", "e2")]).unwrap();
        assert_eq!(weak_type(&g).unwrap().kind, WeakType::Type1);
    }

    #[test]
    fn rotation_of_screen_not_adapted() {
        let s = PseudoEuclideanSpace::witt(2);
        let g = SubalgebraSO::from_label_pairs(&s, &[("q", "e1")]).unwrap();
        assert!(matches!(weak_type(&g), Err(ModelError::NotAdapted(_))));
    }

    #[test]
    fn partial_ideal_without_psi_fails() {
        let s = PseudoEuclideanSpace::witt(2);
        let g = SubalgebraSO::from_label_pairs(&s, &[("p", "e1")]).unwrap();
        assert!(matches!(weak_type(&g), Err(ModelError::NotWeaklyIrreducible(_))));
    }
}
