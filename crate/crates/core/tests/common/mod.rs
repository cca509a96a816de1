#![allow(dead_code)]

use nrh_core::constructions::{build_family, FamilyParams};
use nrh_core::liealg::LieLabel;
use nrh_core::mlinalg::{qi, QMatrix, Scalar, SkewEndomorphism};
use nrh_core::models::{transvection, InfinitesimalModel, Transvection};

pub const DIM3_FAMILIES: [&str; 3] = ["dim3-witt", "dim3-timelike", "dim3-null-plane"];

pub fn dim3_param(id: &str) -> &'static str {
    if id == "dim3-witt" {
        "alpha"
    } else {
        "beta"
    }
}

pub fn dim3_model(id: &str, x: &Scalar) -> InfinitesimalModel {
    build_family(id, &FamilyParams::new().with(dim3_param(id), x.clone())).unwrap()
}

/// `(A, B, C)` in the transvection algebra, with `C = c_0 + x·c_1∧c_2`.
pub fn dim3_basis(id: &str, x: &Scalar, f: &Transvection, m: &InfinitesimalModel) -> [Vec<Scalar>; 3] {
    let (a, b, c0, (c1, c2), coef) = match id {
        "dim3-witt" => ("p", "e1", "q", ("p", "e1"), x.clone()),
        "dim3-timelike" => ("e1", "e2", "em", ("e1", "e2"), x.clone()),
        "dim3-null-plane" => ("p", "q", "e", ("p", "q"), -x.clone()),
        _ => panic!("not a dim-3 family: {id}"),
    };
    let s = m.space();
    let v = |l: &str| f.m_element(&s.basis_vector(s.index_of(l).unwrap()));
    let g = f.g_element(&SkewEndomorphism::from_labels(s, c1, c2).unwrap()).unwrap();
    let c: Vec<Scalar> = v(c0).iter().zip(&g).map(|(u, w)| u + w * &coef).collect();
    [v(a), v(b), c]
}

/// Killing form of the transvection algebra on `(A, B, C)`.
pub fn dim3_killing(id: &str, x: &Scalar) -> QMatrix {
    let m = dim3_model(id, x);
    let f = transvection(&m).unwrap();
    f.killing_on(&dim3_basis(id, x, &f, &m))
}

fn sym3(d: [[Scalar; 3]; 3]) -> QMatrix {
    QMatrix::from_rows(d.into_iter().map(|r| r.to_vec()).collect())
}

/// The Killing matrices as stated alongside the dim-3 classification.
pub fn stated_killing(id: &str, x: &Scalar) -> QMatrix {
    let z = qi(0);
    let two = qi(2);
    let g = qi(1) + x;
    match id {
        "dim3-witt" => sym3([[z.clone(), z.clone(), two.clone()], [z.clone(), two.clone(), z.clone()], [two, z, -qi(2) * x]]),
        "dim3-timelike" => sym3([
            [-&two * &g, z.clone(), z.clone()],
            [z.clone(), -&two * &g, z.clone()],
            [z.clone(), z, -&two * &g * &g],
        ]),
        "dim3-null-plane" => sym3([
            [z.clone(), &two * &g, z.clone()],
            [&two * &g, z.clone(), z.clone()],
            [z.clone(), z, &two * &g * &g],
        ]),
        _ => panic!("not a dim-3 family: {id}"),
    }
}

/// Label predicted by the Killing signature of a 3-dimensional algebra.
pub fn signature_label(k: &QMatrix) -> LieLabel {
    match k.inertia() {
        (0, 3, 0) => LieLabel::So3,
        (_, _, 0) => LieLabel::So12,
        _ => LieLabel::Heisenberg3,
    }
}

/// Every catalog model and every shipped extension instance.
pub fn shipped_models() -> Vec<(String, InfinitesimalModel)> {
    use nrh_core::constructions::{catalog, extend_product, extension_instances};
    let mut out: Vec<(String, InfinitesimalModel)> =
        catalog().into_iter().map(|e| (e.name.clone(), build_family(e.family, &e.params).unwrap())).collect();
    for (name, input) in extension_instances() {
        out.push((name, extend_product(&input).unwrap()));
    }
    out
}

/// Every grid point of every family.
pub fn grid_models() -> Vec<(String, InfinitesimalModel)> {
    use nrh_core::constructions::{grid, FAMILIES};
    let mut out = Vec::new();
    for fam in FAMILIES {
        for p in grid(fam.id).unwrap() {
            out.push((format!("{} {:?}", fam.id, p), build_family(fam.id, &p).unwrap()));
        }
    }
    out
}
