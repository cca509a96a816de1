use crate::mlinalg::matrix::vec_ops;
use crate::mlinalg::multivector::combinations;
use crate::mlinalg::space::same_space;
use crate::mlinalg::{act_multivector, bivector_endo, zero, MultiVector, QMatrix, Scalar, SkewEndomorphism, Space};
use num::Zero;

use super::CurvError;

/// Totally skew torsion stored as a 3-vector; `T(X,Y,Z) = g(T(X,Y),Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionTensor {
    form: MultiVector,
}

impl TorsionTensor {
    pub fn new(form: MultiVector) -> Result<Self, CurvError> {
        if form.grade() != 3 {
            return Err(CurvError::GradeError { expected: 3, found: form.grade() });
        }
        Ok(TorsionTensor { form })
    }

    pub fn zero(space: &Space) -> Self {
        TorsionTensor { form: MultiVector::zero(space, 3).expect("grade 3") }
    }

    pub fn space(&self) -> &Space {
        self.form.space()
    }

    pub fn form(&self) -> &MultiVector {
        &self.form
    }

    pub fn is_zero(&self) -> bool {
        self.form.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self, CurvError> {
        Ok(TorsionTensor { form: self.form.add(&other.form)? })
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        TorsionTensor { form: self.form.scale(s) }
    }

    /// The vector `T(X,Y)`.
    pub fn value(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let ix = self.form.interior(x).expect("grade 3");
        ix.interior(y).expect("grade 2").as_vector().expect("grade 1")
    }

    /// The skew endomorphism `T(X) = T(X, ·)`.
    pub fn endo(&self, x: &[Scalar]) -> SkewEndomorphism {
        bivector_endo(&self.form.interior(x).expect("grade 3")).expect("grade 2")
    }

    /// Endomorphisms `T(e_i)` for every basis vector.
    pub fn endos(&self) -> Vec<SkewEndomorphism> {
        let s = self.space();
        (0..s.dim()).map(|i| self.endo(&s.basis_vector(i))).collect()
    }

    /// Derivation action `ξ·T`.
    pub fn acted_on(&self, xi: &SkewEndomorphism) -> MultiVector {
        act_multivector(xi, &self.form).expect("same space")
    }
}

/// Skew bilinear map `Λ²V → so(V)`, stored on basis pairs `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureTensor {
    space: Space,
    values: Vec<SkewEndomorphism>,
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    // pairs enumerated row by row: (0,1),(0,2),...,(1,2),...
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

impl CurvatureTensor {
    pub fn zero(space: &Space) -> Self {
        let n = space.dim();
        CurvatureTensor { space: space.clone(), values: vec![SkewEndomorphism::zero(space); n * (n.max(1) - 1) / 2] }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    /// Sets `R(e_i, e_j) = v` (and `R(e_j, e_i) = -v`).
    pub fn set(&mut self, i: usize, j: usize, v: SkewEndomorphism) {
        let n = self.space.dim();
        assert!(i != j);
        if i < j {
            self.values[pair_index(n, i, j)] = v;
        } else {
            self.values[pair_index(n, j, i)] = v.scale(&-crate::mlinalg::one());
        }
    }

    /// Adds `v` to `R(e_i, e_j)`.
    pub fn add_to(&mut self, i: usize, j: usize, v: &SkewEndomorphism) {
        let cur = self.get(i, j);
        self.set(i, j, cur.add(v));
    }

    pub fn get(&self, i: usize, j: usize) -> SkewEndomorphism {
        let n = self.space.dim();
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.values[pair_index(n, i, j)].clone(),
            std::cmp::Ordering::Greater => self.values[pair_index(n, j, i)].scale(&-crate::mlinalg::one()),
            std::cmp::Ordering::Equal => SkewEndomorphism::zero(&self.space),
        }
    }

    /// `R(X, Y)` by bilinear extension.
    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> SkewEndomorphism {
        let n = self.space.dim();
        let mut acc = QMatrix::zeros(n, n);
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if i == j || y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                acc = &acc + &self.get(i, j).matrix().scale(&c);
            }
        }
        SkewEndomorphism::new(&self.space, acc).expect("combination of skew maps")
    }

    /// Values on all pairs `i < j`, in lexicographic order.
    pub fn pair_values(&self) -> impl Iterator<Item = ((usize, usize), &SkewEndomorphism)> {
        let n = self.space.dim();
        combinations(n, 2).into_iter().map(|p| (p[0], p[1])).zip(self.values.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn add(&self, other: &Self) -> Result<Self, CurvError> {
        self.check(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.add(b)).collect();
        Ok(CurvatureTensor { space: self.space.clone(), values })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CurvError> {
        self.check(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.sub(b)).collect();
        Ok(CurvatureTensor { space: self.space.clone(), values })
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        CurvatureTensor { space: self.space.clone(), values: self.values.iter().map(|v| v.scale(s)).collect() }
    }

    fn check(&self, other: &Self) -> Result<(), CurvError> {
        if same_space(&self.space, &other.space) {
            Ok(())
        } else {
            Err(CurvError::SpaceMismatch)
        }
    }

    /// `R(X,Y) = a X∧Y`.
    pub fn constant_curvature(space: &Space, a: &Scalar) -> Self {
        let mut r = Self::zero(space);
        for ix in combinations(space.dim(), 2) {
            let b = MultiVector::blade(space, &ix).expect("grade 2");
            r.set(ix[0], ix[1], bivector_endo(&b).expect("grade 2").scale(a));
        }
        r
    }

    /// `R(X,Y) = α(X,Y) B` with `α(X,Y) = g(A X, Y)`; written `A∘B` for
    /// bivectors.
    pub fn product(a: &SkewEndomorphism, b: &SkewEndomorphism) -> Self {
        let space = a.space().clone();
        let mut r = Self::zero(&space);
        for ix in combinations(space.dim(), 2) {
            let c = a.form(&space.basis_vector(ix[0]), &space.basis_vector(ix[1]));
            if !c.is_zero() {
                r.set(ix[0], ix[1], b.scale(&c));
            }
        }
        r
    }

    /// Extends a tensor on a subspace block by zero: `values` are given on
    /// the basis indices `idx` of `space` and act through `embed`.
    pub fn embed(&self, space: &Space, idx: &[usize]) -> Self {
        let m = self.space.dim();
        let n = space.dim();
        let mut r = Self::zero(space);
        for ((i, j), v) in self.pair_values() {
            if v.is_zero() {
                continue;
            }
            let mut big = QMatrix::zeros(n, n);
            for a in 0..m {
                for b in 0..m {
                    big[(idx[a], idx[b])] = v.matrix()[(a, b)].clone();
                }
            }
            r.set(idx[i], idx[j], SkewEndomorphism::new(space, big).expect("block extension of a skew map"));
        }
        r
    }

    /// Distinct nonzero values; their span is `im R`.
    pub fn images(&self) -> Vec<SkewEndomorphism> {
        self.values.iter().filter(|v| !v.is_zero()).cloned().collect()
    }

    /// `g(R(e_i,e_j)e_k, e_l)`.
    pub fn lowered(&self, i: usize, j: usize, k: usize, l: usize) -> Scalar {
        if i == j {
            return zero();
        }
        let rv = self.get(i, j);
        let col = rv.matrix().col(k);
        self.space.inner(&col, &self.space.basis_vector(l))
    }

    /// Derivation action `(ξ·R)(X,Y) = [ξ, R(X,Y)] - R(ξX, Y) - R(X, ξY)`.
    pub fn acted_on(&self, xi: &SkewEndomorphism) -> Self {
        let n = self.space.dim();
        let mut out = Self::zero(&self.space);
        let xe: Vec<Vec<Scalar>> = (0..n).map(|i| xi.apply(&self.space.basis_vector(i))).collect();
        for ix in combinations(n, 2) {
            let (i, j) = (ix[0], ix[1]);
            let a = xi.bracket(&self.get(i, j));
            let b = self.eval(&xe[i], &self.space.basis_vector(j));
            let c = self.eval(&self.space.basis_vector(i), &xe[j]);
            out.set(i, j, a.sub(&b).sub(&c));
        }
        out
    }

    /// Dense coordinates: all matrix entries of every pair value.
    pub fn dense(&self) -> Vec<Scalar> {
        self.values.iter().flat_map(|v| v.matrix().flat().to_vec()).collect()
    }
}

/// Vector `Σ_cyc T(T(X,Y),Z)` on basis vectors `e_i, e_j, e_k`.
pub(crate) fn sigma_vector(t: &TorsionTensor, tv: &[Vec<Vec<Scalar>>], endos: &[SkewEndomorphism], i: usize, j: usize, k: usize) -> Vec<Scalar> {
    let n = t.space().dim();
    let mut acc = vec![zero(); n];
    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
        // T(T(e_a,e_b), e_c) = Σ_m T(e_a,e_b)_m T(e_m, e_c)
        for m in 0..n {
            let coef = &tv[a][b][m];
            if coef.is_zero() {
                continue;
            }
            vec_ops::axpy(&mut acc, coef, &endos[m].matrix().col(c));
        }
    }
    acc
}

/// Table `T(e_a, e_b)` for all basis pairs.
pub(crate) fn torsion_table(t: &TorsionTensor) -> Vec<Vec<Vec<Scalar>>> {
    let s = t.space();
    let n = s.dim();
    let endos = t.endos();
    (0..n).map(|a| (0..n).map(|b| endos[a].matrix().col(b)).collect()).collect()
}
