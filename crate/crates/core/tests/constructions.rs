use nrh_core::constructions::{
    build_dim_l1, build_family, family_constraint_check, grid, DimL1Input, FamilyParams, RiemannianBase,
};
use nrh_core::mlinalg::{qi, MultiVector, QMatrix, Scalar, SkewEndomorphism};
use nrh_core::models::{classify_case, validate};
use nrh_core::torsioncurv::CurvatureTensor;
use proptest::prelude::*;

#[test]
fn dim_l1_on_flat_base_is_minus_theta_squared() {
    for a in [qi(1), qi(-2), Scalar::new(3.into(), 2.into())] {
        let base = RiemannianBase::Flat { dim: 2 }.model("f");
        let theta = SkewEndomorphism::from_labels(base.space(), "f1", "f2").unwrap().scale(&a);
        let m = build_dim_l1(&DimL1Input { base, theta }).unwrap();
        let s = m.space();
        let e12 = SkewEndomorphism::from_labels(s, "f1", "f2").unwrap();
        let expected = CurvatureTensor::product(&e12, &e12).scale(&-(&a * &a));
        assert_eq!(m.curvature(), &expected);
        assert_eq!(m.curvature().get(1, 2), e12.scale(&-(&a * &a)));
        let t = MultiVector::blade_by_labels(s, &["em", "f1", "f2"]).unwrap().scale(&a);
        assert_eq!(m.torsion().form(), &t);
        assert!(validate(&m).passed());
    }
}

#[test]
fn vertical_lambda_must_preserve_omega_e() {
    let base = FamilyParams::new().with_choice("base", "flat").with_int("base_dim", 4);
    // λ = V_1∧V_2 on E = ⟨f_1..f_4, V_1, V_2⟩ moves φ = f_1∧f_2∧V_1 + f_3∧f_4∧V_2
    let mut lambda = QMatrix::zeros(6, 6);
    lambda[(4, 5)] = qi(1);
    let p = base.clone().with_matrix("lambda", lambda);
    let report = family_constraint_check("vertical", &p).unwrap();
    assert_eq!(report.failures(), vec!["λ·ω_E = 0".to_string()]);
    assert!(build_family("vertical", &p).is_err());
    assert!(family_constraint_check("vertical", &base).unwrap().passed());
}

#[test]
fn zero_parameters_pass_vacuously() {
    let flat = |d: i64| FamilyParams::new().with_choice("base", "flat").with_int("base_dim", d).with_int("a", 0);
    let cases = [
        ("dimL1", flat(2)),
        ("dimL2", flat(2).with_int("s", 0).with_int("alpha", 0)),
        ("dimL3", flat(3).with_int("s", 0).with_int("alpha", 0).with_int("beta", 0)),
        ("extend-product", flat(2)),
    ];
    for (id, p) in cases {
        let report = family_constraint_check(id, &p).unwrap();
        assert!(report.passed(), "{id}: {:?}", report.failures());
        let m = build_family(id, &p).unwrap();
        assert!(validate(&m).passed(), "{id}");
    }
}

#[test]
fn dim_l2_without_v_is_decomposable() {
    let p = FamilyParams::new()
        .with_choice("base", "so3")
        .with_int("base_dim", 3)
        .with_int("base_a", 1)
        .with_int("base_c", 2)
        .with_int("a", 0)
        .with_int("s", 0);
    let m = build_family("dimL2", &p).unwrap();
    assert!(validate(&m).passed());
    assert_eq!(classify_case(&m).unwrap().kind.number(), Some(3));
}

#[test]
fn grids_are_nonempty_and_hit_boundaries() {
    let betas: Vec<Scalar> = grid("dim3-timelike").unwrap().iter().map(|p| p.scalar("beta").unwrap().unwrap()).collect();
    assert!(betas.contains(&qi(-1)));
    assert!(!betas.contains(&qi(0)));
}

fn small() -> impl Strategy<Value = Scalar> {
    (-3i64..=3, 1i64..=2).prop_map(|(n, d)| Scalar::new(n.into(), d.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dim_l3_constraints_then_validate(
        base in prop_oneof![Just(("flat", 2i64, 0i64)), Just(("flat", 3, 0)), Just(("constant", 2, 1)), Just(("constant", 2, -1))],
        a in small(), s in small(), alpha in small(), beta in small(),
        lam in proptest::collection::vec(small(), 3),
    ) {
        let (kind, d, ba) = base;
        let n = d as usize + 1;
        let mut lambda = QMatrix::zeros(n, n);
        let mut k = 0;
        for i in 0..d as usize {
            for j in i + 1..d as usize {
                lambda[(i, j)] = lam[k].clone();
                k += 1;
            }
        }
        let p = FamilyParams::new()
            .with_choice("base", kind)
            .with_int("base_dim", d)
            .with_int("base_a", ba)
            .with("a", a)
            .with("s", s)
            .with("alpha", alpha)
            .with("beta", beta)
            .with_matrix("lambda", lambda);
        let report = family_constraint_check("dimL3", &p).unwrap();
        prop_assume!(report.passed());
        let m = build_family("dimL3", &p).unwrap();
        let v = validate(&m);
        prop_assert!(v.passed(), "{:?}: {:?}", p, v.first_failure());
    }
}
