use crate::liealg::SubalgebraSO;
use crate::mlinalg::multivector::combinations;
use crate::mlinalg::{zero, QMatrix, Scalar, SkewEndomorphism};
use num::Zero;

use super::tensors::{sigma_vector, torsion_table};
use super::{CurvatureTensor, TorsionTensor, BIANCHI_SIGN};

/// Solutions `R ∈ Λ²⊗g` of the first Bianchi identity with torsion `T`:
/// `particular + span(homogeneous_basis)`.
#[derive(Clone, Debug)]
pub struct CurvatureSpace {
    pub algebra: SubalgebraSO,
    pub torsion: TorsionTensor,
    pub particular: Option<CurvatureTensor>,
    pub homogeneous_basis: Vec<CurvatureTensor>,
}

impl CurvatureSpace {
    pub fn is_consistent(&self) -> bool {
        self.particular.is_some()
    }

    /// Dimension of the torsion-free solution space `R(g)`.
    pub fn linear_dim(&self) -> usize {
        self.homogeneous_basis.len()
    }

    /// Span of the images of all solutions.
    pub fn image_span(&self) -> SubalgebraSO {
        let space = self.algebra.space();
        let mut elems = Vec::new();
        if let Some(p) = &self.particular {
            elems.extend(p.images());
            for h in &self.homogeneous_basis {
                elems.extend(h.images());
            }
        }
        SubalgebraSO::span(space, &elems)
    }
}

fn tensor_from_coords(g: &SubalgebraSO, coords: &[Scalar]) -> CurvatureTensor {
    let space = g.space();
    let d = g.dim();
    let mut r = CurvatureTensor::zero(space);
    for (p, ix) in combinations(space.dim(), 2).iter().enumerate() {
        let c = &coords[p * d..(p + 1) * d];
        if c.iter().any(|x| !x.is_zero()) {
            r.set(ix[0], ix[1], g.element(c));
        }
    }
    r
}

/// Affine space of curvature tensors with values in `g` satisfying the first
/// Bianchi identity with torsion `t`.
pub fn curvature_space(g: &SubalgebraSO, t: &TorsionTensor) -> CurvatureSpace {
    let space = g.space();
    let n = space.dim();
    let d = g.dim();
    let pairs = combinations(n, 2);
    let unknowns = pairs.len() * d;
    let pair_pos = |a: usize, b: usize| -> (usize, Scalar) {
        let (lo, hi, s) = if a < b { (a, b, 1) } else { (b, a, -1) };
        (pairs.iter().position(|p| p[0] == lo && p[1] == hi).expect("pair"), Scalar::from_integer(s.into()))
    };
    let tv = torsion_table(t);
    let endos = t.endos();
    let sign = Scalar::from_integer(BIANCHI_SIGN.into());
    let triples = combinations(n, 3);
    let mut rows = Vec::with_capacity(triples.len() * n);
    let mut rhs = Vec::with_capacity(triples.len() * n);
    for ix in &triples {
        let (i, j, k) = (ix[0], ix[1], ix[2]);
        let sig = sigma_vector(t, &tv, &endos, i, j, k);
        for m in 0..n {
            let mut row = vec![zero(); unknowns];
            for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                let (p, s) = pair_pos(a, b);
                for (ai, basis) in g.basis().iter().enumerate() {
                    let v = &basis.matrix()[(m, c)];
                    if !v.is_zero() {
                        row[p * d + ai] += &s * v;
                    }
                }
            }
            rows.push(row);
            rhs.push(&sign * &sig[m]);
        }
    }
    if unknowns == 0 {
        let consistent = rhs.iter().all(|x| x.is_zero());
        return CurvatureSpace {
            algebra: g.clone(),
            torsion: t.clone(),
            particular: consistent.then(|| CurvatureTensor::zero(space)),
            homogeneous_basis: Vec::new(),
        };
    }
    let (particular, homogeneous_basis) = if rows.is_empty() {
        let basis = (0..unknowns)
            .map(|u| tensor_from_coords(g, &crate::mlinalg::matrix::vec_ops::basis(unknowns, u)))
            .collect();
        (Some(CurvatureTensor::zero(space)), basis)
    } else {
        let m = QMatrix::from_rows(rows);
        let part = m.solve(&rhs).map(|c| tensor_from_coords(g, &c));
        let hom = m.nullspace().iter().map(|c| tensor_from_coords(g, c)).collect();
        (part, hom)
    };
    CurvatureSpace { algebra: g.clone(), torsion: t.clone(), particular, homogeneous_basis }
}

/// Span of images of all curvature tensors in `curvature_space(g, t)`.
pub fn holonomy_of_space(g: &SubalgebraSO, t: &TorsionTensor) -> SubalgebraSO {
    curvature_space(g, t).image_span()
}

/// Whether `g` is a Berger algebra with torsion `t`.
pub fn berger_check(g: &SubalgebraSO, t: &TorsionTensor) -> bool {
    if g.is_zero() {
        return true;
    }
    holonomy_of_space(g, t) == *g
}

/// Linear map `P: ℝ^k → h`, stored by its values on the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PMap {
    pub values: Vec<SkewEndomorphism>,
}

impl PMap {
    /// `Σ_cyc g(P(X)Y, Z)` on a basis triple.
    pub fn cyclic_sum(&self, i: usize, j: usize, k: usize) -> Scalar {
        let s = self.values[0].space();
        let e = |a: usize| s.basis_vector(a);
        self.values[i].form(&e(j), &e(k)) + self.values[j].form(&e(k), &e(i)) + self.values[k].form(&e(i), &e(j))
    }
}

/// Basis of the maps `P: ℝ^k → h` with `Σ_cyc g(P(X)Y, Z) = 0`.
pub fn p_space(h: &SubalgebraSO) -> Vec<PMap> {
    let space = h.space();
    let k = space.dim();
    let d = h.dim();
    let unknowns = k * d;
    if unknowns == 0 {
        return Vec::new();
    }
    let e = |a: usize| space.basis_vector(a);
    let mut rows = Vec::new();
    for ix in combinations(k, 3) {
        let (i, j, l) = (ix[0], ix[1], ix[2]);
        let mut row = vec![zero(); unknowns];
        for (a, b, c) in [(i, j, l), (j, l, i), (l, i, j)] {
            for (ai, basis) in h.basis().iter().enumerate() {
                row[a * d + ai] += basis.form(&e(b), &e(c));
            }
        }
        rows.push(row);
    }
    let sols: Vec<Vec<Scalar>> = if rows.is_empty() {
        (0..unknowns).map(|u| crate::mlinalg::matrix::vec_ops::basis(unknowns, u)).collect()
    } else {
        QMatrix::from_rows(rows).nullspace()
    };
    sols.iter()
        .map(|c| PMap { values: (0..k).map(|a| h.element(&c[a * d..(a + 1) * d])).collect() })
        .collect()
}
