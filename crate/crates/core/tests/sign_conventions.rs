//! Pins the torsion sign in the Levi-Civita relation and the Bianchi sign.

use nrh_core::liealg::{AbstractLieAlgebra, SubalgebraSO};
use nrh_core::mlinalg::matrix::vec_ops;
use nrh_core::mlinalg::multivector::combinations;
use nrh_core::mlinalg::{qi, FrameKind, MultiVector, PseudoEuclideanSpace, QMatrix, Scalar, SkewEndomorphism, Space};
use nrh_core::models::{from_reductive_pair, transvection, validate, InfinitesimalModel};
use nrh_core::torsioncurv::{bianchi_residual, curvature_from_lc, CurvatureTensor, TorsionTensor, BIANCHI_SIGN, LC_TORSION_SIGN};
use std::collections::BTreeMap;

/// `d_4` on coordinates `(v1, v2, v⁻, v⁺)`:
/// `[(v,v⁻,v⁺),(w,w⁻,w⁺)] = (v⁻Jw - w⁻Jv, 0, v·Jw)`, `J e1 = e2`.
fn d4() -> AbstractLieAlgebra {
    let j = QMatrix::from_i64(&[&[0, -1], &[1, 0]]);
    let bracket = |x: &[Scalar], y: &[Scalar]| -> Vec<Scalar> {
        let (v, w) = (&x[..2], &y[..2]);
        let jw = j.mul_vec(w);
        let jv = j.mul_vec(v);
        let top = vec_ops::sub(&vec_ops::scale(&jw, &x[2]), &vec_ops::scale(&jv, &y[2]));
        let plus = v.iter().zip(&jw).fold(qi(0), |a, (s, t)| a + s * t);
        vec![top[0].clone(), top[1].clone(), qi(0), plus]
    };
    let mut c = vec![vec![vec![qi(0); 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            c[a][b] = bracket(&vec_ops::basis(4, a), &vec_ops::basis(4, b));
        }
    }
    AbstractLieAlgebra::new(["v1", "v2", "vm", "vp"].map(String::from).to_vec(), c).unwrap()
}

/// Invariant metric `|v|² + c(v⁻w⁺ + v⁺w⁻)` on `d_4`.
fn d4_space(c: i64) -> Space {
    let mut g = QMatrix::identity(4);
    g[(2, 2)] = qi(0);
    g[(3, 3)] = qi(0);
    g[(2, 3)] = qi(c);
    g[(3, 2)] = qi(c);
    PseudoEuclideanSpace::new(g, ["v1", "v2", "vm", "vp"].map(String::from).to_vec(), FrameKind::General).unwrap()
}

fn ad_is_skew(f: &AbstractLieAlgebra, s: &Space) -> bool {
    (0..f.dim()).all(|i| SkewEndomorphism::new(s, f.ad(&vec_ops::basis(f.dim(), i))).is_ok())
}

fn torsion_of_bracket(f: &AbstractLieAlgebra, s: &Space) -> TorsionTensor {
    // T(X,Y) = -[X,Y]
    let mut comps = BTreeMap::new();
    for ix in combinations(f.dim(), 3) {
        let br = f.bracket(&vec_ops::basis(4, ix[0]), &vec_ops::basis(4, ix[1]));
        let v = -s.inner(&br, &s.basis_vector(ix[2]));
        comps.insert(ix, v);
    }
    TorsionTensor::new(MultiVector::from_lowered(s, 3, &comps).unwrap()).unwrap()
}

#[test]
fn d4_metric_is_bi_invariant_for_negative_pairing() {
    let f = d4();
    assert!(f.jacobi_failure().is_none());
    assert!(ad_is_skew(&f, &d4_space(-1)));
    assert!(!ad_is_skew(&f, &d4_space(1)));
}

#[test]
fn levi_civita_sign_makes_the_group_connection_flat() {
    let f = d4();
    let s = d4_space(-1);
    let t = torsion_of_bracket(&f, &s);
    // R^g(X,Y) = -1/4 ad([X,Y])
    let mut rg = CurvatureTensor::zero(&s);
    for ix in combinations(4, 2) {
        let br = f.bracket(&vec_ops::basis(4, ix[0]), &vec_ops::basis(4, ix[1]));
        let ad = SkewEndomorphism::new(&s, f.ad(&br)).unwrap();
        rg.set(ix[0], ix[1], ad.scale(&nrh_core::mlinalg::q(-1, 4)));
    }
    assert!(!rg.is_zero());
    assert_eq!(LC_TORSION_SIGN, -1);
    let r = curvature_from_lc(&rg, &t).unwrap();
    assert!(r.is_zero());
}

#[test]
fn flat_group_model_recovers_the_bracket() {
    let f = d4();
    let s = d4_space(-1);
    let model = InfinitesimalModel::new(CurvatureTensor::zero(&s), torsion_of_bracket(&f, &s)).unwrap();
    assert!(validate(&model).passed());
    let tv = transvection(&model).unwrap();
    assert_eq!(tv.g_dim, 0);
    for a in 0..4 {
        for b in 0..4 {
            assert_eq!(tv.algebra.structure_constant(a, b), f.structure_constant(a, b));
        }
    }
}

#[test]
fn bianchi_sign_from_a_reductive_pair() {
    let e4 = PseudoEuclideanSpace::euclidean(4);
    let so4 = SubalgebraSO::full(&e4);
    let f = so4.to_abstract();
    let e12 = so4.coords(&SkewEndomorphism::from_labels(&e4, "e1", "e2").unwrap()).unwrap();
    let others: Vec<Vec<Scalar>> = [("e1", "e3"), ("e1", "e4"), ("e2", "e3"), ("e2", "e4"), ("e3", "e4")]
        .iter()
        .map(|(a, b)| so4.coords(&SkewEndomorphism::from_labels(&e4, a, b).unwrap()).unwrap())
        .collect();
    // the trace form is a multiple of the identity on the blade basis
    let m_space = PseudoEuclideanSpace::euclidean(5);
    let model = from_reductive_pair(&f, &[e12], &others, &m_space).unwrap();
    assert!(!model.torsion().is_zero());
    assert_eq!(BIANCHI_SIGN, 1);
    assert!(bianchi_residual(model.curvature(), model.torsion(), 1).unwrap().is_zero());
    assert!(!bianchi_residual(model.curvature(), model.torsion(), -1).unwrap().is_zero());
}
