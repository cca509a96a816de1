//! Extension of a model `(m_0, R_0, T_0)` by a commutative algebra of skew
//! maps `n = span{σ_i}` acting on `m_0`.

use crate::liealg::SubalgebraSO;
use crate::mlinalg::{qi, MultiVector, PseudoEuclideanSpace, SkewEndomorphism, Space};
use crate::models::InfinitesimalModel;
use crate::torsioncurv::CurvatureTensor;

use super::base::RiemannianBase;
use super::examples::{build_dim_l1, DimL1Input};
use super::frame::{commutes, commutes_with_all, embed_mv, embed_skew, kills_curvature, kills_form, labels, mv, skew, sum, torsion, wedge};
use super::{ConstraintReport, ConstructionError};

#[derive(Clone, Debug)]
pub struct ExtensionInput {
    pub base: InfinitesimalModel,
    /// `σ_1, …, σ_k ∈ so(m_0)`.
    pub n: Vec<SkewEndomorphism>,
    /// `g(V_i, V_i) = ε_i`.
    pub eps: Vec<i64>,
}

pub(crate) fn extension_report(input: &ExtensionInput) -> ConstraintReport {
    let base = &input.base;
    let b0 = base.holonomy();
    let mut report = ConstraintReport::new("extend-product");
    report.push("one sign per σ_i", input.n.len() == input.eps.len());
    report.push("ε_i = ±1", input.eps.iter().all(|e| *e == 1 || *e == -1));
    report.push("σ_i ∈ so(m_0)", input.n.iter().all(|s| s.space() == base.space()));
    report.push("[n, n] = 0", input.n.iter().all(|a| input.n.iter().all(|b| commutes(a, b))));
    report.push("[n, b_0] = 0", input.n.iter().all(|a| commutes_with_all(a, &b0)));
    report.push("σ_i·T_0 = 0", input.n.iter().all(|a| kills_form(a, base.torsion().form())));
    report.push("σ_i·R_0 = 0", input.n.iter().all(|a| kills_curvature(a, base.curvature())));
    report
}

/// `T = T_0 + Σ σ_i∧V_i`, `R = R_0 + Σ ε_i σ̄_i∘σ̄_i` on `m_0 ⊕ ⟨V_1, …, V_k⟩`.
/// With `b_0 ∩ n ≠ 0` the model is returned inside
/// [`ConstructionError::HolonomyOverlap`].
pub fn extend_product(input: &ExtensionInput) -> Result<InfinitesimalModel, ConstructionError> {
    extension_report(input).into_result()?;
    let base = &input.base;
    let d = base.space().dim();
    let k = input.n.len();
    if k == 0 {
        return Ok(base.clone());
    }
    let tail = PseudoEuclideanSpace::orthonormal(&input.eps, Some(labels("V", k)));
    let space = PseudoEuclideanSpace::direct_sum(base.space(), &tail);
    let idx: Vec<usize> = (0..d).collect();

    let mut t = embed_mv(base.torsion().form(), &space, &idx);
    let mut r = base.curvature().embed(&space, &idx);
    for (i, (sigma, eps)) in input.n.iter().zip(&input.eps).enumerate() {
        let s = embed_skew(sigma, &space, &idx);
        let v = mv(&space, &space.basis_vector(d + i));
        t = sum(&t, &wedge(&s.to_bivector()?, &v));
        r = r.add(&CurvatureTensor::product(&s, &s).scale(&qi(*eps)))?;
    }
    let model = InfinitesimalModel::new(r, torsion(t))?;

    let b0 = base.holonomy();
    let n = SubalgebraSO::span(base.space(), &input.n);
    let overlap = b0.intersection(&n).dim();
    if overlap > 0 {
        return Err(ConstructionError::HolonomyOverlap { model: Box::new(model), overlap });
    }
    Ok(model)
}

/// `b_0 ⊕ n` inside `so(m_0 ⊕ L_0)`.
pub fn expected_extension_holonomy(input: &ExtensionInput, model: &InfinitesimalModel) -> SubalgebraSO {
    let idx: Vec<usize> = (0..input.base.space().dim()).collect();
    let mut elems: Vec<SkewEndomorphism> =
        input.base.holonomy().basis().iter().map(|b| embed_skew(b, model.space(), &idx)).collect();
    elems.extend(input.n.iter().map(|s| embed_skew(s, model.space(), &idx)));
    SubalgebraSO::span(model.space(), &elems)
}

/// `J = f_1∧f_2 + … + f_{2m-1}∧f_{2m}` on the basis vectors `offset..offset+2m`.
fn complex_structure(space: &Space, offset: usize, m: usize) -> SkewEndomorphism {
    (0..m).fold(SkewEndomorphism::zero(space), |acc, i| {
        let b = MultiVector::blade(space, &[offset + 2 * i, offset + 2 * i + 1]).expect("grade 2");
        acc.add(&skew(&b))
    })
}

/// Flat `ℝ^{2m}` with `n = ⟨J⟩` and `ε = 1`. The result has holonomy `⟨J⟩`
/// and transvection algebra the oscillator algebra `d_{2m+2}`.
pub fn heisenberg_preset(m: usize) -> ExtensionInput {
    let base = RiemannianBase::Flat { dim: 2 * m }.model("f");
    let j = complex_structure(base.space(), 0, m);
    ExtensionInput { base, n: vec![j], eps: vec![1] }
}

/// Base `ℝe_- ⊕ ℝ^{2m}` with `T_0 = e_-∧J`, `R_0 = -J∘J`, extended by
/// `n = ⟨J⟩`, `ε = 1`. Here `n = b_0`, and the extension is the flat model
/// `T = J∧(e_- + V)` of the oscillator group `D_{2m+2}` with a bi-invariant
/// metric.
pub fn oscillator_preset(m: usize) -> ExtensionInput {
    let flat = RiemannianBase::Flat { dim: 2 * m }.model("f");
    let theta = complex_structure(flat.space(), 0, m);
    let base = build_dim_l1(&DimL1Input { base: flat, theta }).expect("J·0 = 0");
    let j = complex_structure(base.space(), 1, m);
    ExtensionInput { base, n: vec![j], eps: vec![1] }
}

fn rot(base: &InfinitesimalModel, pairs: &[(&str, &str, i64)]) -> SkewEndomorphism {
    let s = base.space();
    pairs.iter().fold(SkewEndomorphism::zero(s), |acc, (a, b, c)| {
        acc.add(&SkewEndomorphism::from_labels(s, a, b).expect("labels").scale(&qi(*c)))
    })
}

/// Instances with `b_0 ∩ n = 0` over the shipped bases.
pub fn extension_instances() -> Vec<(String, ExtensionInput)> {
    use RiemannianBase::*;
    type Gens = Vec<Vec<(&'static str, &'static str, i64)>>;
    let flat2_plus = |b: RiemannianBase| Product(vec![b, Flat { dim: 2 }]);
    let cases: Vec<(RiemannianBase, Gens, Vec<Vec<i64>>)> = vec![
        (Flat { dim: 2 }, vec![vec![("f1", "f2", 1)]], vec![vec![1], vec![-1]]),
        (Flat { dim: 3 }, vec![vec![("f1", "f2", 2)]], vec![vec![1], vec![-1]]),
        (Flat { dim: 4 }, vec![vec![("f1", "f2", 1)], vec![("f3", "f4", 1)]], vec![vec![1, 1], vec![1, -1], vec![-1, -1]]),
        (Flat { dim: 4 }, vec![vec![("f1", "f2", 1), ("f3", "f4", 1)]], vec![vec![1], vec![-1]]),
        (Flat { dim: 4 }, vec![vec![("f1", "f2", 1), ("f3", "f4", -2)]], vec![vec![1]]),
        (flat2_plus(So3 { a: qi(1), c: qi(2) }), vec![vec![("f4", "f5", 1)]], vec![vec![1], vec![-1]]),
        (flat2_plus(So3 { a: qi(-1), c: qi(1) }), vec![vec![("f4", "f5", 1)]], vec![vec![1], vec![-1]]),
        (flat2_plus(ConstantCurvature { dim: 2, a: qi(1) }), vec![vec![("f3", "f4", 1)]], vec![vec![1], vec![-1]]),
        (
            flat2_plus(ConstantCurvature { dim: 2, a: qi(-1) }),
            vec![vec![("f1", "f2", 1), ("f3", "f4", 1)]],
            vec![vec![1], vec![-1]],
        ),
        (
            flat2_plus(ConstantCurvature { dim: 2, a: qi(1) }),
            vec![vec![("f1", "f2", 1), ("f3", "f4", 3)]],
            vec![vec![1], vec![-1]],
        ),
        (
            Product(vec![ConstantCurvature { dim: 2, a: qi(1) }, ConstantCurvature { dim: 2, a: qi(-1) }, Flat { dim: 2 }]),
            vec![vec![("f5", "f6", 1)]],
            vec![vec![1]],
        ),
    ];
    let mut out = Vec::new();
    for (base, gens, signs) in cases {
        let model = base.model("f");
        let n: Vec<SkewEndomorphism> = gens.iter().map(|g| rot(&model, g)).collect();
        for eps in signs {
            let name = format!("{} × n{} ε{:?}", base.name(), n.len(), eps);
            out.push((name, ExtensionInput { base: model.clone(), n: n.clone(), eps }));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::validate;

    #[test]
    fn zero_n_returns_base() {
        let base = RiemannianBase::So3 { a: qi(1), c: qi(1) }.model("f");
        let m = extend_product(&ExtensionInput { base: base.clone(), n: vec![], eps: vec![] }).unwrap();
        assert_eq!(m.space().dim(), 3);
        assert_eq!(m.torsion(), base.torsion());
    }

    #[test]
    fn heisenberg_preset_has_oscillator_transvection_algebra() {
        let m = extend_product(&heisenberg_preset(1)).unwrap();
        assert_eq!(m.space().dim(), 3);
        assert!(validate(&m).passed());
        assert_eq!(m.holonomy().dim(), 1);
        let f = crate::models::transvection(&m).unwrap();
        // d_4: dim 4, center and derived algebra of dims 1 and 3
        assert_eq!(f.algebra.dim(), 4);
        assert_eq!(f.algebra.center().len(), 1);
        assert_eq!(f.algebra.derived().len(), 3);
    }

    #[test]
    fn oscillator_preset_is_flat_group() {
        for m in 1..=2 {
            let model = match extend_product(&oscillator_preset(m)) {
                Err(ConstructionError::HolonomyOverlap { model, overlap: 1 }) => *model,
                other => panic!("expected overlap, got {other:?}"),
            };
            assert_eq!(model.space().dim(), 2 * m + 2);
            assert!(model.curvature().is_zero());
            assert!(!model.torsion().is_zero());
            assert!(validate(&model).passed());
        }
    }

    #[test]
    fn so3_with_commuting_rotation() {
        let inputs = extension_instances();
        let (_, input) = inputs.iter().find(|(n, _)| n.starts_with("so3(1,2)")).unwrap();
        let m = extend_product(input).unwrap();
        assert!(validate(&m).passed());
        assert_eq!(m.holonomy().dim(), 3 + 1);
    }

    #[test]
    fn overlap_still_builds_model() {
        let base = RiemannianBase::ConstantCurvature { dim: 2, a: qi(1) }.model("f");
        let n = vec![rot(&base, &[("f1", "f2", 1)])];
        match extend_product(&ExtensionInput { base, n, eps: vec![1] }) {
            Err(ConstructionError::HolonomyOverlap { model, overlap }) => {
                assert_eq!(overlap, 1);
                assert_eq!(model.space().dim(), 3);
            }
            other => panic!("expected overlap, got {other:?}"),
        }
    }

    #[test]
    fn torsion_must_be_invariant() {
        let base = RiemannianBase::Product(vec![RiemannianBase::So3 { a: qi(0), c: qi(1) }, RiemannianBase::Flat { dim: 1 }]).model("f");
        let n = vec![rot(&base, &[("f3", "f4", 1)])];
        let err = extend_product(&ExtensionInput { base, n, eps: vec![1] }).unwrap_err();
        assert!(err.to_string().contains("σ_i·T_0 = 0"), "{err}");
    }

    #[test]
    fn instances_validate_with_expected_holonomy() {
        let inputs = extension_instances();
        assert!(inputs.len() >= 20);
        for (name, input) in &inputs {
            let m = extend_product(input).unwrap();
            let report = validate(&m);
            assert!(report.passed(), "{name}: {:?}", report.first_failure());
            let expected = expected_extension_holonomy(input, &m);
            let hol = m.holonomy();
            assert_eq!(hol.dim(), expected.dim(), "{name}");
            assert!(hol.contains_all(&expected), "{name}");
        }
    }
}
