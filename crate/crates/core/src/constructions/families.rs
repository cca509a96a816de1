//! Named families: the low-dimensional catalog, the plane waves, the
//! reducible-holonomy constructions and the product extension.

use crate::mlinalg::{
    one, q, qi, zero, FrameKind, MultiVector, PseudoEuclideanSpace, QMatrix, Scalar, SkewEndomorphism, Space, Subspace,
};
use crate::models::{CaseKind, InfinitesimalModel};
use crate::torsioncurv::CurvatureTensor;
use num::Zero;

use super::base::RiemannianBase;
use super::examples::{
    assemble_dim_l1, assemble_dim_l2, assemble_dim_l3, assemble_dim_l4, assemble_vertical, DimL1Input, DimL2Input,
    DimL3Input, DimL4Input, VerticalInput,
};
use super::extension::{extend_product, extension_report, heisenberg_preset, oscillator_preset, ExtensionInput};
use super::frame::{labels, mv, skew, torsion, two_form, wedge};
use super::params::{FamilyParams, GRID};
use super::{ConstraintReport, ConstructionError};

/// A named family and its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Family {
    pub id: &'static str,
    /// Dimension of the built models, when fixed.
    pub dim: Option<usize>,
    pub params: &'static [&'static str],
    pub summary: &'static str,
}

pub const FAMILIES: &[Family] = &[
    Family {
        id: "dim3-witt",
        dim: Some(3),
        params: &["alpha"],
        summary: "T = p∧e∧q, R(q,e) = α p∧e; f' ≅ so(1,2)",
    },
    Family {
        id: "dim3-timelike",
        dim: Some(3),
        params: &["beta"],
        summary: "T = e_-∧e_1∧e_2, R(e_1,e_2) = β e_1∧e_2",
    },
    Family {
        id: "dim3-null-plane",
        dim: Some(3),
        params: &["beta"],
        summary: "T = p∧q∧e, R(p,q) = β p∧q",
    },
    Family {
        id: "dim4-plane-wave",
        dim: Some(4),
        params: &["lambda1", "lambda2"],
        summary: "T = p∧e_1∧e_2, R(q,X) = p∧K(X), K = diag(λ_1, λ_2)",
    },
    Family {
        id: "dim4-line-split",
        dim: Some(4),
        params: &["gamma"],
        summary: "T = e_1∧e_2∧(e_- + e_3), R(e_1,e_2) = γ e_1∧e_2",
    },
    Family {
        id: "dim5-berger",
        dim: Some(5),
        params: &["a", "b"],
        summary: "C_0 = a(X∧Y + JX∧JY + 2g(JX,Y)J), θ = bJ; Berger sphere type",
    },
    Family {
        id: "dim5-so2so2",
        dim: Some(5),
        params: &["a", "b", "c1", "c2"],
        summary: "C_0 = a e_1∧e_2∘e_1∧e_2 + b e_3∧e_4∘e_3∧e_4, θ = c_1 e_1∧e_2 + c_2 e_3∧e_4",
    },
    Family {
        id: "dim5-heisenberg",
        dim: Some(5),
        params: &["c1", "c2"],
        summary: "C_0 = 0, θ = c_1 e_1∧e_2 + c_2 e_3∧e_4; Heisenberg group H_5",
    },
    Family {
        id: "dim5-null-plane",
        dim: Some(5),
        params: &["a", "b", "c"],
        summary: "T = η∧v, η = p∧q + a e_1∧e_2, R = C_0 + η∘η",
    },
    Family {
        id: "dim5-lorentz3",
        dim: Some(5),
        params: &["alpha", "a", "beta", "c"],
        summary: "T = α p∧e_1∧q + a p∧v_1∧v_2",
    },
    Family {
        id: "plane-wave",
        dim: None,
        params: &["K", "omega"],
        summary: "T = p∧ω, R(q,X) = p∧K(X) on a Witt frame; K symmetric",
    },
    Family {
        id: "dimL1",
        dim: None,
        params: &["base", "base_dim", "base_a", "base_c", "a", "theta"],
        summary: "T = e_-∧θ + ω_E, R = C_0 - θ∘θ",
    },
    Family {
        id: "dimL2",
        dim: None,
        params: &["base", "base_dim", "base_a", "base_c", "a", "theta", "s", "alpha"],
        summary: "T = p∧q∧v + θ∧v + ω_{E_1}",
    },
    Family {
        id: "dimL3",
        dim: None,
        params: &["base", "base_dim", "base_a", "base_c", "a", "theta", "lambda", "s", "alpha", "beta"],
        summary: "T = p∧(α e_1∧q + e_1∧v + λ) + ω_{E_1} + θ∧v",
    },
    Family {
        id: "dimL4plus",
        dim: None,
        params: &["base", "base_dim", "base_a", "base_c", "a", "sigma", "k", "K", "omega_k", "lambda", "zeta1"],
        summary: "T = p∧ζ + ω_{E_1} + φ with dim L ≥ 4",
    },
    Family {
        id: "vertical",
        dim: None,
        params: &["base", "base_dim", "base_a", "base_c", "a", "b", "theta", "theta2", "psi", "lambda"],
        summary: "g = {A + p∧ψ(A)}, vertical Lorentzian part",
    },
    Family {
        id: "extend-product",
        dim: None,
        params: &["preset", "m", "base", "base_dim", "base_a", "base_c", "a", "sigma", "eps"],
        summary: "T = T_0 + σ∧V, R = R_0 + ε σ∘σ; preset=d gives the oscillator-type model",
    },
];

pub fn family_ids() -> Vec<&'static str> {
    FAMILIES.iter().map(|f| f.id).collect()
}

pub fn family(id: &str) -> Result<&'static Family, ConstructionError> {
    FAMILIES.iter().find(|f| f.id == id).ok_or_else(|| ConstructionError::UnknownFamily(id.to_string()))
}

/// Evaluates every constraint of the family on the given parameters.
pub fn family_constraint_check(id: &str, p: &FamilyParams) -> Result<ConstraintReport, ConstructionError> {
    Ok(assemble(id, p)?.0)
}

/// Builds the model after checking the family constraints. For
/// `extend-product` an overlap `b_0 ∩ n ≠ 0` only withholds the holonomy
/// statement, so the model is returned.
pub fn build_family(id: &str, p: &FamilyParams) -> Result<InfinitesimalModel, ConstructionError> {
    let (report, model) = assemble(id, p)?;
    report.into_result()?;
    match model {
        Built::Model(m) => Ok(m),
        Built::Extension(input) => match extend_product(&input) {
            Err(ConstructionError::HolonomyOverlap { model, .. }) => Ok(*model),
            other => other,
        },
    }
}

enum Built {
    Model(InfinitesimalModel),
    Extension(ExtensionInput),
}

fn assemble(id: &str, p: &FamilyParams) -> Result<(ConstraintReport, Built), ConstructionError> {
    let fam = family(id)?;
    if let Some((name, _)) = p.iter().find(|(n, _)| !fam.params.contains(&n.as_str())) {
        return Err(ConstructionError::InvalidParameter {
            name: name.clone(),
            reason: format!("not a parameter of `{id}` (expected one of {})", fam.params.join(", ")),
        });
    }
    let (report, model) = match id {
        "dim3-witt" => dim3_witt(p)?,
        "dim3-timelike" => dim3_timelike(p)?,
        "dim3-null-plane" => dim3_null_plane(p)?,
        "dim4-plane-wave" => dim4_plane_wave(p)?,
        "dim4-line-split" => dim4_line_split(p)?,
        "dim5-berger" => dim5_berger(p)?,
        "dim5-so2so2" => dim5_so2so2(p)?,
        "dim5-heisenberg" => dim5_heisenberg(p)?,
        "dim5-null-plane" => dim5_null_plane(p)?,
        "dim5-lorentz3" => dim5_lorentz3(p)?,
        "plane-wave" => plane_wave(p)?,
        "dimL1" => {
            let base = RiemannianBase::from_params(p, 2)?.model("f");
            let theta = theta_param(p, &base, "theta")?;
            assemble_dim_l1(&DimL1Input { base, theta })?
        }
        "dimL2" => {
            let base = RiemannianBase::from_params(p, 2)?.model("f");
            let theta = theta_param(p, &base, "theta")?;
            let s = p.scalar_or("s", one())?;
            let alpha = p.scalar_or("alpha", one())?;
            assemble_dim_l2(&DimL2Input { base, theta, s, alpha })?
        }
        "dimL3" => {
            let base = RiemannianBase::from_params(p, 2)?.model("f");
            let theta = theta_param(p, &base, "theta")?;
            let d = base.space().dim();
            let lambda = p.matrix("lambda")?.unwrap_or_else(|| QMatrix::zeros(d + 1, d + 1));
            assemble_dim_l3(&DimL3Input {
                base,
                theta,
                lambda,
                s: p.scalar_or("s", one())?,
                alpha: p.scalar_or("alpha", one())?,
                beta: p.scalar_or("beta", one())?,
            })?
        }
        "dimL4plus" => {
            let base = RiemannianBase::from_params(p, 2)?.model("f");
            let sigma = theta_param(p, &base, "sigma")?;
            let k = p.count_or("k", 2)?;
            let mut input = DimL4Input::new(base, vec![sigma], k);
            if let Some(m) = p.matrix("K")? {
                input.k_map = m;
            }
            if let Some(m) = p.matrix("omega_k")? {
                input.omega_k = m;
            }
            if let Some(m) = p.matrix("lambda")? {
                input.lambda = m;
            }
            if let Some(m) = p.matrix("zeta1")? {
                input.zeta1 = m;
            }
            assemble_dim_l4(&input)?
        }
        "vertical" => {
            let base = RiemannianBase::from_params(p, 4)?.model("f");
            let thetas = vertical_thetas(p, &base)?;
            let mut input = VerticalInput::new(base, thetas);
            if let Some(m) = p.matrix("psi")? {
                input.psi = m;
            }
            if let Some(m) = p.matrix("lambda")? {
                input.lambda = m;
            }
            assemble_vertical(&input)?
        }
        "extend-product" => {
            let input = extension_input(p)?;
            return Ok((extension_report(&input), Built::Extension(input)));
        }
        _ => unreachable!("listed in FAMILIES"),
    };
    Ok((report, Built::Model(model)))
}

fn extension_input(p: &FamilyParams) -> Result<ExtensionInput, ConstructionError> {
    if let Some(preset) = p.choice("preset")? {
        let m = p.count_or("m", 1)?;
        return match preset.as_str() {
            "d" => Ok(oscillator_preset(m)),
            "heisenberg" => Ok(heisenberg_preset(m)),
            other => Err(ConstructionError::InvalidParameter {
                name: "preset".into(),
                reason: format!("unknown preset `{other}` (d, heisenberg)"),
            }),
        };
    }
    let base = RiemannianBase::from_params(p, 2)?.model("f");
    let sigma = theta_param(p, &base, "sigma")?;
    let eps = p.scalar_or("eps", one())?;
    let eps = if eps == one() {
        1
    } else if eps == -one() {
        -1
    } else {
        return Err(ConstructionError::InvalidParameter { name: "eps".into(), reason: "must be 1 or -1".into() });
    };
    Ok(ExtensionInput { base, n: vec![sigma], eps: vec![eps] })
}

/// `θ_1 = a f_1∧f_2`, `θ_2 = b f_3∧f_4` unless given as matrices.
fn vertical_thetas(p: &FamilyParams, base: &InfinitesimalModel) -> Result<Vec<SkewEndomorphism>, ConstructionError> {
    let s = base.space();
    let idx: Vec<usize> = (0..s.dim()).collect();
    let mut out = Vec::new();
    for (name, scale, pair) in [("theta", "a", [0, 1]), ("theta2", "b", [2, 3])] {
        if let Some(c) = p.matrix(name)? {
            out.push(skew(&two_form(s, &c, &idx, name)?));
        } else if s.dim() > pair[1] {
            out.push(skew(&MultiVector::blade(s, &pair)?).scale(&p.scalar_or(scale, one())?));
        } else {
            return Err(ConstructionError::InvalidParameter {
                name: name.into(),
                reason: "base of dimension at least 4 needed for the default".into(),
            });
        }
    }
    Ok(out)
}

/// A coefficient matrix on the base basis, or `a f_1∧f_2`.
fn theta_param(p: &FamilyParams, base: &InfinitesimalModel, name: &str) -> Result<SkewEndomorphism, ConstructionError> {
    let s = base.space();
    let idx: Vec<usize> = (0..s.dim()).collect();
    if let Some(c) = p.matrix(name)? {
        return Ok(skew(&two_form(s, &c, &idx, name)?));
    }
    let a = p.scalar_or("a", one())?;
    if s.dim() < 2 {
        return Ok(SkewEndomorphism::zero(s));
    }
    Ok(skew(&MultiVector::blade(s, &[0, 1])?).scale(&a))
}

fn nonzero(report: &mut ConstraintReport, name: &str, x: &Scalar) {
    report.push(format!("{name} ≠ 0"), !x.is_zero());
}

fn pair(s: &Space, i: usize, j: usize) -> SkewEndomorphism {
    skew(&MultiVector::blade(s, &[i, j]).expect("grade 2"))
}

fn hyperbolic_plus(tail: &[&str]) -> Space {
    let g = QMatrix::from_i64(&[&[0, 1], &[1, 0]]);
    let head = PseudoEuclideanSpace::new(g, vec!["p".into(), "q".into()], FrameKind::General).expect("hyperbolic plane");
    let rest = PseudoEuclideanSpace::orthonormal(&vec![1; tail.len()], Some(tail.iter().map(|s| s.to_string()).collect()));
    PseudoEuclideanSpace::direct_sum(&head, &rest)
}

fn split(s: &Space, first: &[usize]) -> Vec<Subspace> {
    let l = Subspace::span(s, &first.iter().map(|&i| s.basis_vector(i)).collect::<Vec<_>>());
    vec![l.clone(), l.orthogonal_complement()]
}

type Assembled = (ConstraintReport, InfinitesimalModel);

fn dim3_witt(p: &FamilyParams) -> Result<Assembled, ConstructionError> {
    let alpha = p.require("dim3-witt", "alpha")?;
    let mut report = ConstraintReport::new("dim3-witt");
    nonzero(&mut report, "α", &alpha);
    let s = PseudoEuclideanSpace::witt(1);
    let mut r = CurvatureTensor::zero(&s);
    r.set(2, 1, pair(&s, 0, 1).scale(&alpha));
    let t = torsion(MultiVector::blade(&s, &[0, 1, 2])?);
    Ok((report, InfinitesimalModel::new(r, t)?))
}

fn dim3_timelike(p: &FamilyParams) -> Result<Assembled, ConstructionError> {
    let beta = p.require("dim3-timelike", "beta")?;
    let mut report = ConstraintReport::new("dim3-timelike");
    nonzero(&mut report, "β", &beta);
    let s = PseudoEuclideanSpace::orthonormal(&[-1, 1, 1], Some(vec!["em".into(), "e1".into(), "e2".into()]));
    let mut r = CurvatureTensor::zero(&s);
    r.set(1, 2, pair(&s, 1, 2).scale(&beta));
    let t = torsion(MultiVector::blade(&s, &[0, 1, 2])?);
    Ok((report, InfinitesimalModel::new(r, t)?.with_candidates(split(&s, &[0]))))
}

fn dim3_null_plane(p: &FamilyParams) -> Result<Assembled, ConstructionError> {
    let beta = p.require("dim3-null-plane", "beta")?;
    let mut report = ConstraintReport::new("dim3-null-plane");
    nonzero(&mut report, "β", &beta);
    let s = hyperbolic_plus(&["e"]);
    let mut r = CurvatureTensor::zero(&s);
    r.set(0, 1, pair(&s, 0, 1).scale(&beta));
    let t = torsion(MultiVector::blade(&s, &[0, 1, 2])?);
    Ok((report, InfinitesimalModel::new(r, t)?.with_candidates(split(&s, &[0, 1]))))
}

fn dim4_plane_wave(p: &FamilyParams) -> Result<Assembled, ConstructionError> {
    let l1 = p.require("dim4-plane-wave", "lambda1")?;
    let l2 = p.require("dim4-plane-wave", "lambda2")?;
    let mut report = ConstraintReport::new("dim4-plane-wave");
    nonzero(&mut report, "λ_1", &l1);
    nonzero(&mut report, "λ_2", &l2);
    let k = QMatrix::from_rows(vec![vec![l1, zero()], vec![zero(), l2]]);
    let omega = QMatrix::from_i64(&[&[0, 1], &[-1, 0]]);
    let model = plane_wave_model(&k, &omega, "omega")?;
    Ok((report, model))
}

fn dim4_line_split(p: &FamilyParams) -> Result<Assembled, ConstructionError> {
    let gamma = p.require("dim4-line-split", "gamma")?;
    let mut report = ConstraintReport::new("dim4-line-split");
    nonzero(&mut report, "γ", &gamma);
    let names = ["em", "e1", "e2", "e3"].iter().map(|s| s.to_string()).collect();
    let s = PseudoEuclideanSpace::orthonormal(&[-1, 1, 1, 1], Some(names));
    let mut r = CurvatureTensor::zero(&s);
    r.set(1, 2, pair(&s, 1, 2).scale(&gamma));
    let e12 = MultiVector::blade(&s, &[1, 2])?;
    let null = mv(&s, &[one(), zero(), zero(), one()]);
    let t = torsion(wedge(&e12, &null));
    Ok((report, InfinitesimalModel::new(r, t)?.with_candidates(split(&s, &[0]))))
}

/// `ℝe_- ⊕ ℝ⁴` with `C_0` and `θ` given on `ℝ⁴`.
fn dim5_line(family: &str, report: ConstraintReport, c0: CurvatureTensor, theta: SkewEndomorphism) -> Result<Assembled, ConstructionError> {
    let base = InfinitesimalModel::new(c0, crate::torsioncurv::TorsionTensor::zero(theta.space()))?;
    let (mut inner, model) = assemble_dim_l1(&DimL1Input { base, theta })?;
    let mut out = report;
    out.family = family.to_string();
    out.clauses.append(&mut inner.clauses);
    Ok((out, model))
}

fn r4() -> Space {
    PseudoEuclideanSpace::orthonormal(&[1, 1, 1, 1], Some(labels("f", 4)))
}

fn dim5_berger(p: &FamilyParams) -> Result<Assembled, ConstructionError> {
    let a = p.require("dim5-berger", "a")?;
    let b = p.require("dim5-berger", "b")?;
    let mut report = ConstraintReport::new("dim5-berger");
    nonzero(&mut report, "a", &a);
    let s = r4();
    let j = pair(&s, 0, 1).add(&pair(&s, 2, 3));
    let mut c0 = CurvatureTensor::zero(&s);
    for i in 0..4 {
        for k in i + 1..4 {
            let (x, y) = (s.basis_vector(i), s.basis_vector(k));
            let (jx, jy) = (j.apply(&x), j.apply(&y));
            let xy = skew(&wedge(&mv(&s, &x), &mv(&s, &y)));
            let jxjy = skew(&wedge(&mv(&s, &jx), &mv(&s, &jy)));
            let v = xy.add(&jxjy).add(&j.scale(&(qi(2) * s.inner(&jx, &y))));
            c0.set(i, k, v.scale(&a));
        }
    }
    dim5_line("dim5-berger", report, c0, j.scale(&b))
}

fn so2so2_curvature(s: &Space, a: &Scalar, b: &Scalar) -> CurvatureTensor {
    let mut c0 = CurvatureTensor::zero(s);
    c0.set(0, 1, pair(s, 0, 1).scale(a));
    c0.set(2, 3, pair(s, 2, 3).scale(b));
    c0
}

fn dim5_so2so2(p: &FamilyParams) -> Result<Assembled, ConstructionError> {
    let [a, b, c1, c2] = ["a", "b", "c1", "c2"].map(|n| p.require("dim5-so2so2", n));
    let (a, b, c1, c2) = (a?, b?, c1?, c2?);
    let mut report = ConstraintReport::new("dim5-so2so2");
    nonzero(&mut report, "a", &a);
    report.push("c_1 c_2 ≠ 0", !(&c1 * &c2).is_zero());
    let s = r4();
    let theta = pair(&s, 0, 1).scale(&c1).add(&pair(&s, 2, 3).scale(&c2));
    dim5_line("dim5-so2so2", report, so2so2_curvature(&s, &a, &b), theta)
}

fn dim5_heisenberg(p: &FamilyParams) -> Result<Assembled, ConstructionError> {
    let c1 = p.require("dim5-heisenberg", "c1")?;
    let c2 = p.require("dim5-heisenberg", "c2")?;
    let mut report = ConstraintReport::new("dim5-heisenberg");
    report.push("c_1 c_2 ≠ 0", !(&c1 * &c2).is_zero());
    let s = r4();
    let theta = pair(&s, 0, 1).scale(&c1).add(&pair(&s, 2, 3).scale(&c2));
    dim5_line("dim5-heisenberg", report, CurvatureTensor::zero(&s), theta)
}

fn dim5_null_plane(p: &FamilyParams) -> Result<Assembled, ConstructionError> {
    let a = p.require("dim5-null-plane", "a")?;
    let b = p.require("dim5-null-plane", "b")?;
    let c = p.require("dim5-null-plane", "c")?;
    let mut report = ConstraintReport::new("dim5-null-plane");
    nonzero(&mut report, "a", &a);
    let s = hyperbolic_plus(&["e1", "e2", "v"]);
    let eta_b = MultiVector::blade(&s, &[0, 1])?.add(&MultiVector::blade(&s, &[2, 3])?.scale(&a))?;
    let eta = skew(&eta_b);
    let t = torsion(wedge(&eta_b, &mv(&s, &s.basis_vector(4))));
    let mut r = CurvatureTensor::product(&eta, &eta);
    r.add_to(0, 1, &pair(&s, 0, 1).scale(&b));
    r.add_to(2, 3, &pair(&s, 2, 3).scale(&c));
    Ok((report, InfinitesimalModel::new(r, t)?.with_candidates(split(&s, &[0, 1]))))
}

fn dim5_lorentz3(p: &FamilyParams) -> Result<Assembled, ConstructionError> {
    let [alpha, a, beta, c] = ["alpha", "a", "beta", "c"].map(|n| p.require("dim5-lorentz3", n));
    let (alpha, a, beta, c) = (alpha?, a?, beta?, c?);
    let mut report = ConstraintReport::new("dim5-lorentz3");
    nonzero(&mut report, "α", &alpha);
    nonzero(&mut report, "a", &a);
    let head = PseudoEuclideanSpace::witt(1);
    let tail = PseudoEuclideanSpace::orthonormal(&[1, 1], Some(vec!["v1".into(), "v2".into()]));
    let s = PseudoEuclideanSpace::direct_sum(&head, &tail);
    let (ip, ie, iq, i1, i2) = (0, 1, 2, 3, 4);
    let t = MultiVector::blade(&s, &[ip, ie, iq])?
        .scale(&alpha)
        .add(&MultiVector::blade(&s, &[ip, i1, i2])?.scale(&a))?;
    let aa = &alpha * &a;
    let mut r = CurvatureTensor::zero(&s);
    r.set(iq, ie, pair(&s, ip, ie).scale(&beta).add(&pair(&s, i1, i2).scale(&aa)));
    r.set(i1, i2, pair(&s, ip, ie).scale(&aa).add(&pair(&s, i1, i2).scale(&c)));
    Ok((report, InfinitesimalModel::new(r, torsion(t))?.with_candidates(split(&s, &[ip, ie, iq]))))
}

/// `T = p∧ω`, `R(q,X) = p∧K(X)` on the Witt frame of `ℝ^{1,n+1}`.
pub fn plane_wave_model(k: &QMatrix, omega: &QMatrix, name: &str) -> Result<InfinitesimalModel, ConstructionError> {
    let n = k.rows();
    if !k.is_square() || !k.is_symmetric() {
        return Err(ConstructionError::InvalidParameter { name: "K".into(), reason: "must be a symmetric square matrix".into() });
    }
    let s = PseudoEuclideanSpace::witt(n);
    let idx: Vec<usize> = (1..=n).collect();
    let w = two_form(&s, omega, &idx, name)?;
    let pv = mv(&s, &s.basis_vector(0));
    let t = torsion(wedge(&pv, &w));
    let mut r = CurvatureTensor::zero(&s);
    for j in 0..n {
        let mut kx = vec![zero(); n + 2];
        for i in 0..n {
            kx[i + 1] = k[(i, j)].clone();
        }
        r.set(n + 1, j + 1, skew(&wedge(&pv, &mv(&s, &kx))));
    }
    Ok(InfinitesimalModel::new(r, t)?)
}

fn plane_wave(p: &FamilyParams) -> Result<Assembled, ConstructionError> {
    let k = p.matrix("K")?.unwrap_or_else(|| QMatrix::identity(2));
    let omega = p.matrix("omega")?.unwrap_or_else(|| QMatrix::zeros(k.rows(), k.rows()));
    let mut report = ConstraintReport::new("plane-wave");
    report.push("K symmetric", k.is_square() && k.is_symmetric());
    report.into_result()?;
    let model = plane_wave_model(&k, &omega, "omega")?;
    let mut report = ConstraintReport::new("plane-wave");
    report.push("K ≠ 0", !k.is_zero());
    Ok((report, model))
}

fn grid_scalars() -> Vec<Scalar> {
    GRID.iter().map(|&(n, d)| q(n, d)).collect()
}

/// Cartesian product of `values` over `names`, on top of `fixed`.
fn sweep(fixed: &FamilyParams, names: &[&str], values: &[Scalar]) -> Vec<FamilyParams> {
    let mut out = vec![fixed.clone()];
    for name in names {
        out = out
            .into_iter()
            .flat_map(|p| values.iter().map(move |v| p.clone().with(name, v.clone())))
            .collect();
    }
    out
}

fn base_params(kind: &str, dim: usize, a: i64, c: i64) -> FamilyParams {
    FamilyParams::new()
        .with_choice("base", kind)
        .with_int("base_dim", dim as i64)
        .with_int("base_a", a)
        .with_int("base_c", c)
}

/// Default parameter points of a family, filtered by its constraints.
pub fn grid(id: &str) -> Result<Vec<FamilyParams>, ConstructionError> {
    let g = grid_scalars();
    let short: Vec<Scalar> = vec![qi(-1), q(1, 2), qi(2)];
    let none = FamilyParams::new();
    let raw: Vec<FamilyParams> = match id {
        "dim3-witt" => sweep(&none, &["alpha"], &g),
        "dim3-timelike" | "dim3-null-plane" => sweep(&none, &["beta"], &g),
        "dim4-plane-wave" => sweep(&none, &["lambda1", "lambda2"], &g),
        "dim4-line-split" => sweep(&none, &["gamma"], &g),
        "dim5-berger" => {
            let mut v = sweep(&none, &["a", "b"], &g);
            // b² = 3a: holonomy su(2)
            v.push(FamilyParams::new().with("a", q(1, 3)).with_int("b", 1));
            v.push(FamilyParams::new().with("a", q(4, 3)).with_int("b", -2));
            v.push(FamilyParams::new().with("a", q(1, 12)).with("b", q(1, 2)));
            v
        }
        "dim5-so2so2" => {
            let mut v = sweep(&none, &["a", "b"], &g)
                .into_iter()
                .flat_map(|p| sweep(&p, &["c1", "c2"], &short))
                .collect::<Vec<_>>();
            // ab = a c_2² + b c_1²: one-dimensional holonomy
            v.push(FamilyParams::new().with_int("a", 2).with_int("b", 2).with_int("c1", 1).with_int("c2", 1));
            v.push(FamilyParams::new().with_int("a", 5).with_int("b", 5).with_int("c1", 2).with_int("c2", 1));
            v
        }
        "dim5-heisenberg" => sweep(&none, &["c1", "c2"], &g),
        "dim5-null-plane" => {
            let mut v = sweep(&none, &["a", "b", "c"], &g);
            // a²b + cb - c = 0
            v.push(FamilyParams::new().with_int("a", 1).with("b", q(1, 2)).with_int("c", 1));
            v
        }
        "dim5-lorentz3" => sweep(&none, &["alpha", "a"], &short).into_iter().flat_map(|p| sweep(&p, &["beta", "c"], &g)).collect(),
        "plane-wave" => {
            let mut v = Vec::new();
            for (l1, l2) in [(1, 1), (1, -1), (2, 0), (-1, -2)] {
                for w in [0, 1, -2] {
                    v.push(
                        FamilyParams::new()
                            .with_matrix("K", QMatrix::from_i64(&[&[l1, 0], &[0, l2]]))
                            .with_matrix("omega", QMatrix::from_i64(&[&[0, w], &[-w, 0]])),
                    );
                }
            }
            v.push(
                FamilyParams::new()
                    .with_matrix("K", QMatrix::from_i64(&[&[1, 1, 0], &[1, 2, 0], &[0, 0, -1]]))
                    .with_matrix("omega", QMatrix::from_i64(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]])),
            );
            v
        }
        "vertical" => {
            let bases = [base_params("flat", 4, 0, 0), base_params("flat", 5, 0, 0)];
            bases.iter().flat_map(|b| sweep(b, &["a", "b"], &short)).collect()
        }
        "dimL1" | "dimL2" | "dimL3" => {
            let bases = [
                base_params("flat", 2, 0, 0),
                base_params("flat", 3, 0, 0),
                base_params("constant", 2, 1, 0),
                base_params("constant", 2, -1, 0),
                base_params("so3", 3, 1, 2),
            ];
            let mut v: Vec<FamilyParams> = bases.iter().flat_map(|b| sweep(b, &["a"], &short)).collect();
            if id == "dimL2" || id == "dimL3" {
                v = v.into_iter().flat_map(|p| sweep(&p, &["s"], &[qi(0), qi(1), qi(2)])).collect();
                v = v.into_iter().flat_map(|p| sweep(&p, &["alpha"], &[qi(0), qi(1), q(-1, 2)])).collect();
            }
            if id == "dimL3" {
                v = v.into_iter().flat_map(|p| sweep(&p, &["beta"], &[qi(-1), qi(2)])).collect();
            }
            v
        }
        "dimL4plus" => {
            let bases = [base_params("flat", 2, 0, 0), base_params("flat", 3, 0, 0), base_params("constant", 2, 1, 0)];
            bases
                .iter()
                .flat_map(|b| sweep(b, &["a"], &short))
                .flat_map(|p| [p.clone().with_int("k", 2), p.with_int("k", 3)])
                .collect()
        }
        "extend-product" => {
            let mut v = vec![
                FamilyParams::new().with_choice("preset", "d").with_int("m", 1),
                FamilyParams::new().with_choice("preset", "d").with_int("m", 2),
            ];
            for b in [base_params("flat", 2, 0, 0), base_params("flat", 3, 0, 0)] {
                for e in [1, -1] {
                    v.extend(sweep(&b.clone().with_int("eps", e), &["a"], &short));
                }
            }
            v
        }
        other => return Err(ConstructionError::UnknownFamily(other.to_string())),
    };
    let mut out = Vec::new();
    for p in raw {
        if family_constraint_check(id, &p)?.passed() {
            out.push(p);
        }
    }
    Ok(out)
}

/// Holonomy situation of a catalog model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogLabel {
    Symmetric,
    PlaneWave,
    DimL1,
    DimL2,
    DimL3,
    DimL4Plus,
}

impl CatalogLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            CatalogLabel::Symmetric => "symmetric",
            CatalogLabel::PlaneWave => "plane-wave",
            CatalogLabel::DimL1 => "dim L = 1",
            CatalogLabel::DimL2 => "dim L = 2",
            CatalogLabel::DimL3 => "dim L = 3",
            CatalogLabel::DimL4Plus => "dim L >= 4",
        }
    }

    /// The classifier case this label corresponds to.
    pub fn case(&self) -> CaseKind {
        match self {
            CatalogLabel::Symmetric => CaseKind::Symmetric,
            CatalogLabel::PlaneWave => CaseKind::WeaklyIrreducible,
            CatalogLabel::DimL1 => CaseKind::DimL1,
            CatalogLabel::DimL2 => CaseKind::DimL2,
            CatalogLabel::DimL3 => CaseKind::DimL3,
            CatalogLabel::DimL4Plus => CaseKind::DimL4Plus,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub family: &'static str,
    pub dim: usize,
    pub params: FamilyParams,
    pub label: CatalogLabel,
    pub note: &'static str,
}

/// Shipped models of dimension 3, 4 and 5, plus one model of each
/// reducible construction.
pub fn catalog() -> Vec<CatalogEntry> {
    let e = |name: &str, family: &'static str, dim: usize, params: FamilyParams, label: CatalogLabel, note: &'static str| {
        CatalogEntry { name: name.to_string(), family, dim, params, label, note }
    };
    let p = FamilyParams::new;
    use CatalogLabel::*;
    vec![
        e("sl2-witt", "dim3-witt", 3, p().with_int("alpha", 1), PlaneWave, "left-invariant metric on the universal cover of SL(2,R)"),
        e("su2", "dim3-timelike", 3, p().with_int("beta", 1), DimL1, "f' ≅ so(3)"),
        e("sl2-timelike", "dim3-timelike", 3, p().with_int("beta", -2), DimL1, "f' ≅ so(1,2)"),
        e("heisenberg3-timelike", "dim3-timelike", 3, p().with_int("beta", -1), DimL1, "f' ≅ h_3"),
        e("sl2-null", "dim3-null-plane", 3, p().with_int("beta", 1), DimL2, "f' ≅ so(1,2)"),
        e("heisenberg3-null", "dim3-null-plane", 3, p().with_int("beta", -1), DimL2, "f' ≅ h_3"),
        e(
            "plane-wave-4",
            "dim4-plane-wave",
            4,
            p().with_int("lambda1", 1).with_int("lambda2", 2),
            PlaneWave,
            "solvable transvection algebra",
        ),
        e("sl2xr2", "dim4-line-split", 4, p().with_int("gamma", 1), DimL1, "F = SL(2,R)~ × R²"),
        e("su2xr2", "dim4-line-split", 4, p().with_int("gamma", -1), DimL1, "F = SU(2) × R²"),
        e(
            "plane-wave-5",
            "plane-wave",
            5,
            p().with_matrix("K", QMatrix::from_i64(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, -1]]))
                .with_matrix("omega", QMatrix::from_i64(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]])),
            PlaneWave,
            "homogeneous plane wave",
        ),
        e("berger-su12", "dim5-berger", 5, p().with("a", q(1, 3)).with_int("b", 1), DimL1, "SU(1,2)/SU(2), holonomy su(2)"),
        e("berger-su3", "dim5-berger", 5, p().with("a", q(-1, 3)).with_int("b", 1), DimL1, "Berger sphere SU(3)/SU(2), holonomy u(2)"),
        e(
            "so2so2-diagonal",
            "dim5-so2so2",
            5,
            p().with_int("a", 2).with_int("b", 2).with_int("c1", 1).with_int("c2", 1),
            DimL1,
            "(F_1 × F_2)/SO(2), g one-dimensional",
        ),
        e(
            "so2so2",
            "dim5-so2so2",
            5,
            p().with_int("a", 1).with_int("b", -1).with_int("c1", 1).with_int("c2", 2),
            DimL1,
            "(F_1 × F_2)/SO(2) with central direction",
        ),
        e(
            "so2-h3",
            "dim5-so2so2",
            5,
            p().with_int("a", 1).with_int("b", 0).with_int("c1", 1).with_int("c2", 1),
            DimL1,
            "(H_3 × SU(2))/SO(2)",
        ),
        e("heisenberg5", "dim5-heisenberg", 5, p().with_int("c1", 1).with_int("c2", 2), DimL1, "Heisenberg group H_5"),
        e(
            "null-plane-5",
            "dim5-null-plane",
            5,
            p().with_int("a", 1).with_int("b", 1).with_int("c", 2),
            DimL2,
            "SO(1,1) isotropy",
        ),
        e("null-plane-h5", "dim5-null-plane", 5, p().with_int("a", 1).with_int("b", 0).with_int("c", 0), DimL2, "H_5 transversal"),
        e(
            "lorentz3-5",
            "dim5-lorentz3",
            5,
            p().with_int("alpha", 1).with_int("a", 1).with_int("beta", 1).with_int("c", 1),
            DimL3,
            "f' = f_1 ⊕ f_2",
        ),
        e("line-flat2", "dimL1", 3, base_params("flat", 2, 0, 0).with_int("a", 2), DimL1, "flat base"),
        e("plane-const2", "dimL2", 5, base_params("constant", 2, -1, 0).with_int("a", 1), DimL2, "constant curvature base"),
        e("three-flat2", "dimL3", 6, base_params("flat", 2, 0, 0).with_int("a", 1), DimL3, "flat base"),
        e("big-flat2", "dimL4plus", 7, base_params("flat", 2, 0, 0).with_int("a", 1), DimL4Plus, "k = 2, l = 1"),
    ]
}
