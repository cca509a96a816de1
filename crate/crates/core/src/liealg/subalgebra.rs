use crate::mlinalg::matrix::{coords_in, EchelonBuilder};
use crate::mlinalg::space::same_space;
use crate::mlinalg::{so_action, QMatrix, Scalar, SkewEndomorphism, Space, Subspace, Tensor};
use crate::mlinalg::{bivector_endo, combinations, MultiVector};

use super::structure::AbstractLieAlgebra;

/// Subalgebra (or subspace) of `so(r,s)` with a reduced echelon basis taken
/// on the flattened matrices.
#[derive(Clone, Debug)]
pub struct SubalgebraSO {
    space: Space,
    basis: Vec<SkewEndomorphism>,
}

impl PartialEq for SubalgebraSO {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space) && self.dim() == other.dim() && self.contains_all(other)
    }
}

impl SubalgebraSO {
    /// Linear span of `elems`; no closure is taken.
    pub fn span(space: &Space, elems: &[SkewEndomorphism]) -> Self {
        let n = space.dim();
        let flats: Vec<Vec<Scalar>> = elems.iter().map(|e| e.matrix().flat().to_vec()).collect();
        let rows = crate::mlinalg::matrix::span_basis(&flats, n * n);
        let basis = rows
            .into_iter()
            .map(|r| SkewEndomorphism::new(space, QMatrix::from_flat(n, n, r)).expect("span of skew maps"))
            .collect();
        SubalgebraSO { space: space.clone(), basis }
    }

    pub fn zero(space: &Space) -> Self {
        SubalgebraSO { space: space.clone(), basis: Vec::new() }
    }

    /// The whole of `so(r,s)`.
    pub fn full(space: &Space) -> Self {
        let gens: Vec<_> = combinations(space.dim(), 2)
            .iter()
            .map(|ix| bivector_endo(&MultiVector::blade(space, ix).expect("grade 2")).expect("grade 2"))
            .collect();
        Self::span(space, &gens)
    }

    /// Span of the bivectors named by label pairs, e.g. `[("p","e1")]`.
    pub fn from_label_pairs(space: &Space, pairs: &[(&str, &str)]) -> Result<Self, crate::mlinalg::AlgebraError> {
        let gens: Result<Vec<_>, _> = pairs.iter().map(|(a, b)| SkewEndomorphism::from_labels(space, a, b)).collect();
        Ok(Self::span(space, &gens?))
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn basis(&self) -> &[SkewEndomorphism] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    fn flats(&self) -> Vec<Vec<Scalar>> {
        self.basis.iter().map(|b| b.matrix().flat().to_vec()).collect()
    }

    pub fn contains(&self, x: &SkewEndomorphism) -> bool {
        crate::mlinalg::matrix::in_span(&self.flats(), x.matrix().flat())
    }

    pub fn contains_all(&self, other: &SubalgebraSO) -> bool {
        let mut eb = EchelonBuilder::new();
        for f in self.flats() {
            eb.insert(&f);
        }
        other.basis.iter().all(|b| eb.contains(b.matrix().flat()))
    }

    /// Coordinates of `x` in the basis, if `x` lies in the span.
    pub fn coords(&self, x: &SkewEndomorphism) -> Option<Vec<Scalar>> {
        coords_in(&self.flats(), x.matrix().flat())
    }

    /// Element with the given coordinates.
    pub fn element(&self, coords: &[Scalar]) -> SkewEndomorphism {
        let mut acc = SkewEndomorphism::zero(&self.space);
        for (c, b) in coords.iter().zip(&self.basis) {
            acc = acc.add(&b.scale(c));
        }
        acc
    }

    /// Whether every bracket of basis elements stays inside.
    pub fn is_closed(&self) -> bool {
        let mut eb = EchelonBuilder::new();
        for f in self.flats() {
            eb.insert(&f);
        }
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                if !eb.contains(self.basis[i].bracket(&self.basis[j]).matrix().flat()) {
                    return false;
                }
            }
        }
        true
    }

    pub fn sum(&self, other: &SubalgebraSO) -> SubalgebraSO {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Self::span(&self.space, &all)
    }

    pub fn intersection(&self, other: &SubalgebraSO) -> SubalgebraSO {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.space);
        }
        let n = self.space.dim();
        let mut cols = self.flats();
        cols.extend(other.flats().into_iter().map(|v| v.iter().map(|x| -x).collect()));
        let m = QMatrix::from_cols(&cols, n * n);
        let elems: Vec<_> = m.nullspace().iter().map(|c| self.element(&c[..self.dim()])).collect();
        Self::span(&self.space, &elems)
    }

    /// Common kernel of the basis elements.
    pub fn fixed_vectors(&self) -> Subspace {
        fixed_vectors(self)
    }

    /// Bivector forms of the basis elements.
    pub fn bivectors(&self) -> Vec<MultiVector> {
        self.basis.iter().map(|b| b.to_bivector().expect("skew")).collect()
    }

    /// Structure constants in the stored basis; panics unless closed.
    pub fn to_abstract(&self) -> AbstractLieAlgebra {
        let k = self.dim();
        let flats = self.flats();
        let mut c = vec![vec![vec![crate::mlinalg::zero(); k]; k]; k];
        for i in 0..k {
            for j in 0..k {
                let br = self.basis[i].bracket(&self.basis[j]);
                c[i][j] = coords_in(&flats, br.matrix().flat()).expect("subalgebra is closed");
            }
        }
        let labels = self.bivectors().iter().map(|b| b.render()).collect();
        AbstractLieAlgebra::new(labels, c).expect("matrix brackets are antisymmetric")
    }
}

/// Smallest bracket-closed subspace containing `gens`.
pub fn lie_closure(space: &Space, gens: &[SkewEndomorphism]) -> SubalgebraSO {
    let mut eb = EchelonBuilder::new();
    let mut elems: Vec<SkewEndomorphism> = Vec::new();
    for g in gens {
        if eb.insert(g.matrix().flat()) {
            elems.push(g.clone());
        }
    }
    let mut start = 0;
    while start < elems.len() {
        let end = elems.len();
        for i in start..end {
            for j in 0..i {
                let br = elems[i].bracket(&elems[j]);
                if eb.insert(br.matrix().flat()) {
                    elems.push(br);
                }
            }
        }
        start = end;
    }
    SubalgebraSO::span(space, &elems)
}

/// Dense coordinates of a tensor, for linear conditions.
pub fn tensor_coords(t: &Tensor) -> Vec<Scalar> {
    match t {
        Tensor::Vector(v) => v.clone(),
        Tensor::Multi(m) => m.dense(),
        Tensor::Bilinear(b) | Tensor::Endo(b) => b.flat().to_vec(),
    }
}

/// Elements of `ambient` killing `t`.
pub fn annihilator(ambient: &SubalgebraSO, t: &Tensor) -> SubalgebraSO {
    annihilator_all(ambient, std::slice::from_ref(t))
}

/// Elements of `ambient` killing every tensor in `ts`.
pub fn annihilator_all(ambient: &SubalgebraSO, ts: &[Tensor]) -> SubalgebraSO {
    if ambient.is_zero() {
        return ambient.clone();
    }
    let cols: Vec<Vec<Scalar>> = ambient
        .basis
        .iter()
        .map(|b| {
            ts.iter()
                .flat_map(|t| tensor_coords(&so_action(b, t).expect("tensor over the ambient space")))
                .collect()
        })
        .collect();
    let rows = cols[0].len();
    if rows == 0 {
        return ambient.clone();
    }
    let m = QMatrix::from_cols(&cols, rows);
    let elems: Vec<_> = m.nullspace().iter().map(|c| ambient.element(c)).collect();
    SubalgebraSO::span(ambient.space(), &elems)
}

/// Vectors annihilated by every element of `alg`.
pub fn fixed_vectors(alg: &SubalgebraSO) -> Subspace {
    let space = alg.space();
    if alg.is_zero() {
        return Subspace::whole(space);
    }
    let n = space.dim();
    let mut rows = Vec::new();
    for b in alg.basis() {
        for r in 0..n {
            rows.push(b.matrix().row(r).to_vec());
        }
    }
    Subspace::span(space, &QMatrix::from_rows(rows).nullspace())
}
