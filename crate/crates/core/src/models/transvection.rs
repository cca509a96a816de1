use crate::liealg::{AbstractLieAlgebra, SubalgebraSO};
use crate::mlinalg::matrix::coords_in;
use crate::mlinalg::multivector::combinations;
use crate::mlinalg::{zero, MultiVector, QMatrix, Scalar, SkewEndomorphism, Space};
use crate::torsioncurv::{CurvatureTensor, TorsionTensor};
use num::Zero;
use std::collections::BTreeMap;

use super::{InfinitesimalModel, ModelError};

/// The transvection algebra `f = g ⊕ m` with `g = span(im R)`.
#[derive(Clone, Debug)]
pub struct Transvection {
    pub algebra: AbstractLieAlgebra,
    pub holonomy: SubalgebraSO,
    pub g_dim: usize,
    pub m_dim: usize,
}

impl Transvection {
    /// Coordinates in `f` of an element of `g`.
    pub fn g_element(&self, x: &SkewEndomorphism) -> Option<Vec<Scalar>> {
        let mut c = self.holonomy.coords(x)?;
        c.extend(std::iter::repeat_with(zero).take(self.m_dim));
        Some(c)
    }

    /// Coordinates in `f` of a vector of `m`.
    pub fn m_element(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut c = vec![zero(); self.g_dim];
        c.extend(v.iter().cloned());
        c
    }

    /// Gram matrix of the Killing form on the given elements.
    pub fn killing_on(&self, elems: &[Vec<Scalar>]) -> QMatrix {
        let k = self.algebra.killing();
        let b = QMatrix::from_cols(elems, self.algebra.dim());
        &(&b.transpose() * &k) * &b
    }
}

/// Builds `f = g ⊕ m` with `[A,B]` the matrix bracket, `[A,X] = AX` and
/// `[X,Y] = -R(X,Y) - T(X,Y)`.
pub fn transvection(m: &InfinitesimalModel) -> Result<Transvection, ModelError> {
    let space = m.space();
    let n = space.dim();
    let g = m.holonomy();
    if !g.is_closed() {
        return Err(ModelError::ModelInconsistent("span(im R) is not a subalgebra".into()));
    }
    let k = g.dim();
    let d = k + n;
    let flats: Vec<Vec<Scalar>> = g.basis().iter().map(|b| b.matrix().flat().to_vec()).collect();
    let g_coords = |x: &SkewEndomorphism| -> Result<Vec<Scalar>, ModelError> {
        coords_in(&flats, x.matrix().flat()).ok_or_else(|| ModelError::ModelInconsistent("value outside span(im R)".into()))
    };
    let mut c = vec![vec![vec![zero(); d]; d]; d];
    for a in 0..k {
        for b in 0..k {
            let co = g_coords(&g.basis()[a].bracket(&g.basis()[b]))?;
            c[a][b][..k].clone_from_slice(&co);
        }
        for i in 0..n {
            let v = g.basis()[a].apply(&space.basis_vector(i));
            for (j, x) in v.into_iter().enumerate() {
                c[a][k + i][k + j] = x.clone();
                c[k + i][a][k + j] = -x;
            }
        }
    }
    let r = m.curvature();
    let t = m.torsion();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let co = g_coords(&r.get(i, j))?;
            for (a, x) in co.into_iter().enumerate() {
                c[k + i][k + j][a] = -x;
            }
            let tv = t.value(&space.basis_vector(i), &space.basis_vector(j));
            for (l, x) in tv.into_iter().enumerate() {
                c[k + i][k + j][k + l] = -x;
            }
        }
    }
    let mut labels: Vec<String> = g.bivectors().iter().map(|b| b.render()).collect();
    labels.extend(space.labels().iter().cloned());
    let algebra = AbstractLieAlgebra::new(labels, c)?;
    if let Some((a, b, cc)) = algebra.jacobi_failure() {
        let l = algebra.labels();
        return Err(ModelError::ModelInconsistent(format!("Jacobi fails on ({}, {}, {})", l[a], l[b], l[cc])));
    }
    Ok(Transvection { algebra, holonomy: g, g_dim: k, m_dim: n })
}

/// First basis triple violating `g([X,Y]_m, Z) = -g([X,Z]_m, Y)`.
pub fn natural_reductivity_failure(f: &Transvection, space: &Space) -> Option<(usize, usize, usize)> {
    let (k, n) = (f.g_dim, f.m_dim);
    let m_part = |i: usize, j: usize| -> Vec<Scalar> { f.algebra.structure_constant(k + i, k + j)[k..].to_vec() };
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let lhs = space.inner(&m_part(i, j), &space.basis_vector(l));
                let rhs = space.inner(&m_part(i, l), &space.basis_vector(j));
                if lhs != -rhs {
                    return Some((i, j, l));
                }
            }
        }
    }
    None
}

/// Model `(m, R_o, T_o)` of a reductive pair `f = g ⊕ m`, given bases of
/// `g` and `m` as coordinate vectors in `f` and a metric on `m`:
/// `T_o(X,Y) = -[X,Y]_m`, `R_o(X,Y) = -ad([X,Y]_g)|_m`.
pub fn from_reductive_pair(
    f: &AbstractLieAlgebra,
    g_basis: &[Vec<Scalar>],
    m_basis: &[Vec<Scalar>],
    m_space: &Space,
) -> Result<InfinitesimalModel, ModelError> {
    let (k, n) = (g_basis.len(), m_basis.len());
    if k + n != f.dim() || m_space.dim() != n {
        return Err(ModelError::NotReductive("bases do not match the dimensions".into()));
    }
    let mut all = g_basis.to_vec();
    all.extend(m_basis.iter().cloned());
    let split = |x: &[Scalar]| -> Result<(Vec<Scalar>, Vec<Scalar>), ModelError> {
        let c = coords_in(&all, x).ok_or_else(|| ModelError::NotReductive("bases do not span f".into()))?;
        Ok((c[..k].to_vec(), c[k..].to_vec()))
    };
    // ad(h)|_m for a g-coordinate vector, with the reductivity check
    let ad_m = |h: &[Scalar]| -> Result<QMatrix, ModelError> {
        let mut hx = vec![zero(); f.dim()];
        for (a, c) in h.iter().enumerate() {
            crate::mlinalg::matrix::vec_ops::axpy(&mut hx, c, &g_basis[a]);
        }
        let mut cols = Vec::with_capacity(n);
        for x in m_basis {
            let (gp, mp) = split(&f.bracket(&hx, x))?;
            if gp.iter().any(|c| !c.is_zero()) {
                return Err(ModelError::NotReductive("[g, m] leaves m".into()));
            }
            cols.push(mp);
        }
        Ok(QMatrix::from_cols(&cols, n))
    };
    for a in 0..k {
        let mut unit = vec![zero(); k];
        unit[a] = Scalar::from_integer(1.into());
        ad_m(&unit)?;
    }
    let mut r = CurvatureTensor::zero(m_space);
    let mut lowered = BTreeMap::new();
    for ix in combinations(n, 2) {
        let (i, j) = (ix[0], ix[1]);
        let (gp, mp) = split(&f.bracket(&m_basis[i], &m_basis[j]))?;
        let val = -&ad_m(&gp)?;
        let endo = SkewEndomorphism::new(m_space, val)
            .map_err(|_| ModelError::NotNaturallyReductive("ad(g) is not skew on m".into()))?;
        r.set(i, j, endo);
        for l in 0..n {
            let t_ijl = -m_space.inner(&mp, &m_space.basis_vector(l));
            lowered.insert((i, j, l), t_ijl);
        }
    }
    let mut comps = BTreeMap::new();
    for ix in combinations(n, 3) {
        let (a, b, c) = (ix[0], ix[1], ix[2]);
        let v = lowered[&(a, b, c)].clone();
        if v != -lowered[&(a, c, b)].clone() {
            return Err(ModelError::NotNaturallyReductive(format!("at basis triple ({a}, {b}, {c})")));
        }
        if !v.is_zero() {
            comps.insert(ix, v);
        }
    }
    for ((i, j, l), v) in &lowered {
        if (l == i || l == j) && !v.is_zero() {
            return Err(ModelError::NotNaturallyReductive(format!("at basis triple ({i}, {j}, {l})")));
        }
    }
    let t = TorsionTensor::new(MultiVector::from_lowered(m_space, 3, &comps)?)?;
    InfinitesimalModel::new(r, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::AbstractLieAlgebra;
    use crate::mlinalg::{qi, PseudoEuclideanSpace};

    fn dim3_model(alpha: i64) -> InfinitesimalModel {
        let s = PseudoEuclideanSpace::witt(1);
        let t = TorsionTensor::new(MultiVector::blade_by_labels(&s, &["p", "e1", "q"]).unwrap()).unwrap();
        let mut r = CurvatureTensor::zero(&s);
        r.set(2, 1, SkewEndomorphism::from_labels(&s, "p", "e1").unwrap().scale(&qi(alpha)));
        InfinitesimalModel::new(r, t).unwrap()
    }

    #[test]
    fn dim3_brackets() {
        let m = dim3_model(3);
        let f = transvection(&m).unwrap();
        assert_eq!((f.g_dim, f.m_dim), (1, 3));
        let s = m.space();
        let pe = SkewEndomorphism::from_labels(s, "p", "e1").unwrap();
        let [p, e, q] = [0, 1, 2].map(|i| f.m_element(&s.basis_vector(i)));
        let pe_f = f.g_element(&pe).unwrap();
        let neg = |v: &Vec<Scalar>| v.iter().map(|x| -x).collect::<Vec<_>>();
        assert_eq!(f.algebra.bracket(&p, &q), neg(&e));
        assert_eq!(f.algebra.bracket(&p, &e), p);
        let mut expect = q.clone();
        crate::mlinalg::matrix::vec_ops::axpy(&mut expect, &qi(3), &pe_f);
        assert_eq!(f.algebra.bracket(&e, &q), expect);
        assert_eq!(f.algebra.bracket(&pe_f, &q), e);
        assert_eq!(f.algebra.bracket(&pe_f, &e), neg(&p));
        assert!(natural_reductivity_failure(&f, s).is_none());
    }

    #[test]
    fn flat_model_gives_abelian_algebra() {
        let s = PseudoEuclideanSpace::witt(2);
        let f = transvection(&InfinitesimalModel::flat(&s)).unwrap();
        assert!(f.algebra.is_abelian());
        assert_eq!(f.algebra.dim(), 4);
    }

    #[test]
    fn reductive_pair_round_trip() {
        let m = dim3_model(-2);
        let f = transvection(&m).unwrap();
        let d = f.algebra.dim();
        let basis = |i: usize| crate::mlinalg::matrix::vec_ops::basis(d, i);
        let back = from_reductive_pair(&f.algebra, &[basis(0)], &[basis(1), basis(2), basis(3)], m.space()).unwrap();
        assert_eq!(back.torsion(), m.torsion());
        assert_eq!(back.curvature(), m.curvature());
    }

    #[test]
    fn non_reductive_split_rejected() {
        // [A,X] = A leaves m = span{X}
        let f = AbstractLieAlgebra::from_brackets(&["A", "X"], &[(0, 1, vec![qi(1), qi(0)])]).unwrap();
        let s = PseudoEuclideanSpace::euclidean(1);
        let r = from_reductive_pair(&f, &[vec![qi(1), qi(0)]], &[vec![qi(0), qi(1)]], &s);
        assert!(matches!(r, Err(ModelError::NotReductive(_))));
    }
}
