use crate::mlinalg::{qi, zero, MultiVector, PseudoEuclideanSpace, Scalar, Space};
use crate::models::InfinitesimalModel;
use crate::torsioncurv::{CurvatureTensor, TorsionTensor};
use num::Zero;

use super::frame::{labels, torsion};
use super::{ConstructionError, FamilyParams};

/// Riemannian infinitesimal models `(E_1, C_0, ω_{E_1})` used as input to
/// the reducible examples and the product extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RiemannianBase {
    Flat { dim: usize },
    /// `C_0(X,Y) = a X∧Y`, no torsion.
    ConstantCurvature { dim: usize, a: Scalar },
    /// `ℝ³` with `C_0(X,Y) = a X∧Y` and `ω = c e1∧e2∧e3`; holonomy `so(3)`
    /// unless `a = 0`.
    So3 { a: Scalar, c: Scalar },
    /// Orthogonal sum, blocks in order.
    Product(Vec<RiemannianBase>),
}

impl RiemannianBase {
    pub fn dim(&self) -> usize {
        match self {
            RiemannianBase::Flat { dim } | RiemannianBase::ConstantCurvature { dim, .. } => *dim,
            RiemannianBase::So3 { .. } => 3,
            RiemannianBase::Product(parts) => parts.iter().map(|p| p.dim()).sum(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            RiemannianBase::Flat { dim } => format!("flat{dim}"),
            RiemannianBase::ConstantCurvature { dim, a } => format!("const{dim}({a})"),
            RiemannianBase::So3 { a, c } => format!("so3({a},{c})"),
            RiemannianBase::Product(parts) => parts.iter().map(|p| p.name()).collect::<Vec<_>>().join("+"),
        }
    }

    /// The model on a Euclidean space labelled `{prefix}1, {prefix}2, …`.
    pub fn model(&self, prefix: &str) -> InfinitesimalModel {
        let space = PseudoEuclideanSpace::orthonormal(&vec![1; self.dim()], Some(labels(prefix, self.dim())));
        let (r, t) = self.tensors(&space, &(0..self.dim()).collect::<Vec<_>>());
        InfinitesimalModel::new(r, t).expect("same space")
    }

    fn tensors(&self, space: &Space, idx: &[usize]) -> (CurvatureTensor, TorsionTensor) {
        match self {
            RiemannianBase::Flat { .. } => (CurvatureTensor::zero(space), TorsionTensor::zero(space)),
            RiemannianBase::ConstantCurvature { dim, a } => {
                (block_constant(space, idx, *dim, a), TorsionTensor::zero(space))
            }
            RiemannianBase::So3 { a, c } => {
                let r = block_constant(space, idx, 3, a);
                let vol = MultiVector::blade(space, &idx[..3]).expect("grade 3").scale(c);
                (r, torsion(vol))
            }
            RiemannianBase::Product(parts) => {
                let mut r = CurvatureTensor::zero(space);
                let mut t = TorsionTensor::zero(space);
                let mut offset = 0;
                for part in parts {
                    let d = part.dim();
                    let (pr, pt) = part.tensors(space, &idx[offset..offset + d]);
                    r = r.add(&pr).expect("same space");
                    t = t.add(&pt).expect("same space");
                    offset += d;
                }
                (r, t)
            }
        }
    }

    /// Reads `base`, `base_dim`, `base_a`, `base_c`.
    pub fn from_params(p: &FamilyParams, default_dim: usize) -> Result<Self, ConstructionError> {
        let dim = p.count_or("base_dim", default_dim)?;
        let a = p.scalar_or("base_a", qi(1))?;
        let c = p.scalar_or("base_c", zero())?;
        let kind = p.choice("base")?.unwrap_or_else(|| "flat".into());
        match kind.as_str() {
            "flat" => Ok(RiemannianBase::Flat { dim }),
            "constant" => Ok(RiemannianBase::ConstantCurvature { dim, a }),
            "so3" => Ok(RiemannianBase::So3 { a, c }),
            other => Err(ConstructionError::InvalidParameter {
                name: "base".into(),
                reason: format!("unknown base `{other}` (flat, constant, so3)"),
            }),
        }
    }

    /// The shipped bases.
    pub fn catalog() -> Vec<RiemannianBase> {
        vec![
            RiemannianBase::Flat { dim: 2 },
            RiemannianBase::Flat { dim: 3 },
            RiemannianBase::Flat { dim: 4 },
            RiemannianBase::ConstantCurvature { dim: 2, a: qi(1) },
            RiemannianBase::ConstantCurvature { dim: 2, a: qi(-1) },
            RiemannianBase::ConstantCurvature { dim: 3, a: qi(1) },
            RiemannianBase::So3 { a: qi(1), c: qi(2) },
            RiemannianBase::So3 { a: qi(-1), c: qi(1) },
        ]
    }

    pub fn is_flat(&self) -> bool {
        match self {
            RiemannianBase::Flat { .. } => true,
            RiemannianBase::ConstantCurvature { a, .. } => a.is_zero(),
            RiemannianBase::So3 { a, c } => a.is_zero() && c.is_zero(),
            RiemannianBase::Product(parts) => parts.iter().all(|p| p.is_flat()),
        }
    }
}

fn block_constant(space: &Space, idx: &[usize], dim: usize, a: &Scalar) -> CurvatureTensor {
    let mut r = CurvatureTensor::zero(space);
    for i in 0..dim {
        for j in i + 1..dim {
            let b = MultiVector::blade(space, &[idx[i], idx[j]]).expect("grade 2");
            r.set(idx[i], idx[j], crate::mlinalg::bivector_endo(&b).expect("grade 2").scale(a));
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::validate;

    #[test]
    fn shipped_bases_validate() {
        for b in RiemannianBase::catalog() {
            let m = b.model("f");
            assert!(validate(&m).passed(), "{}", b.name());
        }
    }

    #[test]
    fn so3_base_has_full_holonomy() {
        let m = RiemannianBase::So3 { a: qi(1), c: qi(3) }.model("f");
        assert_eq!(m.holonomy().dim(), 3);
    }

    #[test]
    fn product_blocks_commute() {
        let b = RiemannianBase::Product(vec![
            RiemannianBase::So3 { a: qi(1), c: qi(1) },
            RiemannianBase::ConstantCurvature { dim: 2, a: qi(-1) },
        ]);
        let m = b.model("f");
        assert_eq!(m.space().dim(), 5);
        assert_eq!(m.holonomy().dim(), 4);
        assert!(validate(&m).passed());
    }
}
