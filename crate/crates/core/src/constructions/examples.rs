//! Models with a Lorentzian invariant subspace `L` of dimension 1, 2, 3 or
//! at least 4, and the vertical variant.

use crate::liealg::SubalgebraSO;
use crate::mlinalg::matrix::vec_ops;
use crate::mlinalg::{
    one, zero, FrameKind, MultiVector, PseudoEuclideanSpace, QMatrix, Scalar, SkewEndomorphism, Space, Subspace,
};
use crate::models::InfinitesimalModel;
use crate::torsioncurv::CurvatureTensor;
use num::Zero;

use super::frame::{
    commutes, commutes_with_all, embed_mv, embed_skew, kills_curvature, kills_form, labels, mv, skew, sum, torsion,
    two_form, wedge,
};
use super::{ConstraintReport, ConstructionError};

/// `T = e_-∧θ + ω_E`, `R = C_0 - θ∘θ` on `ℝe_- ⊕ E`.
#[derive(Clone, Debug)]
pub struct DimL1Input {
    /// Riemannian model `(E, C_0, ω_E)`.
    pub base: InfinitesimalModel,
    pub theta: SkewEndomorphism,
}

/// `T = p∧q∧v + θ∧v + ω_{E_1}` on `⟨p,q⟩ ⊕ E_1 ⊕ ℝu`, `v = s u`.
#[derive(Clone, Debug)]
pub struct DimL2Input {
    pub base: InfinitesimalModel,
    pub theta: SkewEndomorphism,
    pub s: Scalar,
    pub alpha: Scalar,
}

/// `T = p∧(α e_1∧q + e_1∧v + λ) + ω_{E_1} + θ∧v` on
/// `⟨p,e_1,q⟩ ⊕ E_1 ⊕ ℝu`, `v = s u`.
#[derive(Clone, Debug)]
pub struct DimL3Input {
    pub base: InfinitesimalModel,
    pub theta: SkewEndomorphism,
    /// Coefficient matrix of `λ ∈ Λ²E` on the basis `f_1, …, f_d, u`.
    pub lambda: QMatrix,
    pub s: Scalar,
    pub alpha: Scalar,
    pub beta: Scalar,
}

/// `T = p∧ζ + ω_{E_1} + φ` on `⟨p, e_1..e_k, q⟩ ⊕ E_1 ⊕ E_0`, with
/// `E_0 ≅ n ≅ ⟨e_{k-l+1}, …, e_k⟩`.
#[derive(Clone, Debug)]
pub struct DimL4Input {
    pub base: InfinitesimalModel,
    /// Basis `σ_1, …, σ_l` of the commutative subalgebra `n ⊂ so(E_1)`.
    pub n: Vec<SkewEndomorphism>,
    pub k: usize,
    /// Symmetric `K` on `ℝ^k`.
    pub k_map: QMatrix,
    /// Coefficient matrix of `ω_{ℝ^k}`.
    pub omega_k: QMatrix,
    /// Coefficient matrix of `λ ∈ Λ²E` on `f_1, …, f_d, V_1, …, V_l`.
    pub lambda: QMatrix,
    /// `ζ_1 = Σ Z_ij e_i∧f_j`, a `k × d` matrix.
    pub zeta1: QMatrix,
}

impl DimL4Input {
    /// `K = 1`, all optional forms zero.
    pub fn new(base: InfinitesimalModel, n: Vec<SkewEndomorphism>, k: usize) -> Self {
        let d = base.space().dim();
        let l = n.len();
        DimL4Input {
            base,
            n,
            k,
            k_map: QMatrix::identity(k),
            omega_k: QMatrix::zeros(k, k),
            lambda: QMatrix::zeros(d + l, d + l),
            zeta1: QMatrix::zeros(k, d),
        }
    }
}

/// Vertical Lorentzian part: `g = {p∧ψ(A) + A : A ∈ b}` with `k = dim n`.
#[derive(Clone, Debug)]
pub struct VerticalInput {
    pub base: InfinitesimalModel,
    /// `θ_1, …, θ_k`.
    pub theta: Vec<SkewEndomorphism>,
    /// Column `i` is `ψ(θ_i)` in `ℝ^k`; `ψ` vanishes on `b_0`.
    pub psi: QMatrix,
    pub omega_k: QMatrix,
    pub lambda: QMatrix,
}

impl VerticalInput {
    /// `ψ(θ_i) = X_i`, the choice forced when the forms `θ_i(·,·)` are
    /// independent.
    pub fn new(base: InfinitesimalModel, theta: Vec<SkewEndomorphism>) -> Self {
        let k = theta.len();
        let d = base.space().dim();
        VerticalInput {
            base,
            theta,
            psi: QMatrix::identity(k),
            omega_k: QMatrix::zeros(k, k),
            lambda: QMatrix::zeros(d + k, d + k),
        }
    }
}

fn check_riemannian(report: &mut ConstraintReport, base: &InfinitesimalModel) {
    report.push("base is Riemannian", base.space().signature().1 == 0);
}

fn embed_curvature(r: &CurvatureTensor, space: &Space, idx: &[usize]) -> CurvatureTensor {
    r.embed(space, idx)
}

fn base_holonomy(base: &InfinitesimalModel, space: &Space, idx: &[usize]) -> SubalgebraSO {
    let elems: Vec<_> = base.holonomy().basis().iter().map(|b| embed_skew(b, space, idx)).collect();
    SubalgebraSO::span(space, &elems)
}

pub(crate) fn assemble_dim_l1(input: &DimL1Input) -> Result<(ConstraintReport, InfinitesimalModel), ConstructionError> {
    let base = &input.base;
    let d = base.space().dim();
    let mut report = ConstraintReport::new("dimL1");
    check_riemannian(&mut report, base);
    report.push("θ·C_0 = 0", kills_curvature(&input.theta, base.curvature()));
    report.push("θ·ω_E = 0", kills_form(&input.theta, base.torsion().form()));
    report.push("[θ, im C_0] = 0", commutes_with_all(&input.theta, &base.holonomy()));

    let mut signs = vec![-1];
    signs.extend(std::iter::repeat_n(1, d));
    let mut names = vec!["em".to_string()];
    names.extend(labels("f", d));
    let space = PseudoEuclideanSpace::orthonormal(&signs, Some(names));
    let idx: Vec<usize> = (1..=d).collect();

    let theta = embed_skew(&input.theta, &space, &idx);
    let em = mv(&space, &space.basis_vector(0));
    let t = sum(&wedge(&em, &theta.to_bivector()?), &embed_mv(base.torsion().form(), &space, &idx));
    let r = embed_curvature(base.curvature(), &space, &idx).sub(&CurvatureTensor::product(&theta, &theta))?;
    let l = Subspace::span(&space, &[space.basis_vector(0)]);
    let model = InfinitesimalModel::new(r, torsion(t))?.with_candidates(vec![l.clone(), l.orthogonal_complement()]);
    Ok((report, model))
}

pub fn build_dim_l1(input: &DimL1Input) -> Result<InfinitesimalModel, ConstructionError> {
    let (report, model) = assemble_dim_l1(input)?;
    report.into_result()?;
    Ok(model)
}

/// `⟨p,q⟩` (or `⟨p,e_1,q⟩`) followed by `f_1..f_d` and `u`.
fn lorentz_block_space(witt_k: Option<usize>, d: usize) -> Space {
    let head = match witt_k {
        Some(k) => PseudoEuclideanSpace::witt(k),
        None => {
            let g = QMatrix::from_i64(&[&[0, 1], &[1, 0]]);
            PseudoEuclideanSpace::new(g, vec!["p".into(), "q".into()], FrameKind::General).expect("hyperbolic plane")
        }
    };
    let mut names = labels("f", d);
    names.push("u".into());
    let tail = PseudoEuclideanSpace::orthonormal(&vec![1; d + 1], Some(names));
    PseudoEuclideanSpace::direct_sum(&head, &tail)
}

pub(crate) fn assemble_dim_l2(input: &DimL2Input) -> Result<(ConstraintReport, InfinitesimalModel), ConstructionError> {
    let base = &input.base;
    let d = base.space().dim();
    let mut report = ConstraintReport::new("dimL2");
    check_riemannian(&mut report, base);
    report.push("[θ, im C_0] = 0", commutes_with_all(&input.theta, &base.holonomy()));
    report.push("θ·C_0 = 0", kills_curvature(&input.theta, base.curvature()));
    report.push("θ·ω_{E_1} = 0", kills_form(&input.theta, base.torsion().form()));

    let space = lorentz_block_space(None, d);
    let (ip, iq, iu) = (0, 1, d + 2);
    let idx: Vec<usize> = (2..d + 2).collect();
    let p = mv(&space, &space.basis_vector(ip));
    let qv = mv(&space, &space.basis_vector(iq));
    let v = vec_ops::scale(&space.basis_vector(iu), &input.s);
    let vv = space.inner(&v, &v);
    let vm = mv(&space, &v);
    let theta = embed_skew(&input.theta, &space, &idx);
    let theta_b = theta.to_bivector()?;
    let pq_b = wedge(&p, &qv);
    let pq = skew(&pq_b);

    let t = sum(
        &sum(&wedge(&pq_b, &vm), &wedge(&theta_b, &vm)),
        &embed_mv(base.torsion().form(), &space, &idx),
    );

    let mut r = embed_curvature(base.curvature(), &space, &idx);
    r.add_to(ip, iq, &pq.scale(&input.alpha).sub(&theta.scale(&vv)));
    for a in 0..d {
        for b in a + 1..d {
            let (x, y) = (space.basis_vector(idx[a]), space.basis_vector(idx[b]));
            let c = theta.form(&x, &y);
            if !c.is_zero() {
                r.add_to(idx[a], idx[b], &pq.add(&theta).scale(&(&vv * &c)));
            }
        }
    }
    let l = Subspace::span(&space, &[space.basis_vector(ip), space.basis_vector(iq)]);
    let model = InfinitesimalModel::new(r, torsion(t))?.with_candidates(vec![l.clone(), l.orthogonal_complement()]);
    Ok((report, model))
}

pub fn build_dim_l2(input: &DimL2Input) -> Result<InfinitesimalModel, ConstructionError> {
    let (report, model) = assemble_dim_l2(input)?;
    report.into_result()?;
    Ok(model)
}

pub(crate) fn assemble_dim_l3(input: &DimL3Input) -> Result<(ConstraintReport, InfinitesimalModel), ConstructionError> {
    let base = &input.base;
    let d = base.space().dim();
    let space = lorentz_block_space(Some(1), d);
    let (ip, ie, iq, iu) = (0, 1, 2, d + 3);
    let idx: Vec<usize> = (3..d + 3).collect();
    let mut e_idx = idx.clone();
    e_idx.push(iu);

    let p = mv(&space, &space.basis_vector(ip));
    let e1 = mv(&space, &space.basis_vector(ie));
    let qv = mv(&space, &space.basis_vector(iq));
    let v = vec_ops::scale(&space.basis_vector(iu), &input.s);
    let vv = space.inner(&v, &v);
    let vm = mv(&space, &v);
    let theta = embed_skew(&input.theta, &space, &idx);
    let lambda_b = two_form(&space, &input.lambda, &e_idx, "lambda")?;
    let lambda = skew(&lambda_b);
    let b0 = base_holonomy(base, &space, &idx);

    let mut report = ConstraintReport::new("dimL3");
    check_riemannian(&mut report, base);
    report.push("[θ, im C_0] = 0", commutes_with_all(&theta, &b0));
    report.push("[λ, im C_0] = 0", commutes_with_all(&lambda, &b0));
    let omega = embed_mv(base.torsion().form(), &space, &idx);
    report.push("θ·ω_{E_1} = 0", kills_form(&theta, &omega));
    report.push("λ·ω_{E_1} = 0", kills_form(&lambda, &omega));
    report.push("λ(v) = 0", vec_ops::is_zero(&lambda.apply(&v)));
    report.push("[θ, λ] = 0 when v ≠ 0", vv.is_zero() || commutes(&theta, &lambda));

    let zeta = sum(&sum(&wedge(&e1, &qv).scale(&input.alpha), &wedge(&e1, &vm)), &lambda_b);
    let t = sum(&sum(&wedge(&p, &zeta), &omega), &wedge(&theta.to_bivector()?, &vm));

    let pe = skew(&wedge(&p, &e1));
    let core = theta.scale(&vv).add(&lambda.scale(&input.alpha));
    let mut r = embed_curvature(base.curvature(), &space, &idx);
    r.add_to(iq, ie, &pe.scale(&input.beta).add(&core));
    for a in 0..e_idx.len() {
        for b in a + 1..e_idx.len() {
            let (x, y) = (space.basis_vector(e_idx[a]), space.basis_vector(e_idx[b]));
            let c = core.form(&x, &y);
            let th = theta.form(&x, &y);
            let val = pe.scale(&c).add(&theta.scale(&(&vv * &th)));
            if !val.is_zero() {
                r.add_to(e_idx[a], e_idx[b], &val);
            }
        }
    }
    let l = Subspace::span(&space, &(0..3).map(|i| space.basis_vector(i)).collect::<Vec<_>>());
    let model = InfinitesimalModel::new(r, torsion(t))?.with_candidates(vec![l.clone(), l.orthogonal_complement()]);
    Ok((report, model))
}

pub fn build_dim_l3(input: &DimL3Input) -> Result<InfinitesimalModel, ConstructionError> {
    let (report, model) = assemble_dim_l3(input)?;
    report.into_result()?;
    Ok(model)
}

/// Layout of `⟨p, e_1..e_k, q⟩ ⊕ E_1 ⊕ E_0`.
struct Big {
    space: Space,
    k: usize,
    f: Vec<usize>,
    v: Vec<usize>,
}

impl Big {
    fn new(k: usize, d: usize, l: usize) -> Self {
        let mut names = labels("f", d);
        names.extend(labels("V", l));
        let tail = PseudoEuclideanSpace::orthonormal(&vec![1; d + l], Some(names));
        let space = PseudoEuclideanSpace::direct_sum(&PseudoEuclideanSpace::witt(k), &tail);
        let f = (k + 2..k + 2 + d).collect();
        let v = (k + 2 + d..k + 2 + d + l).collect();
        Big { space, k, f, v }
    }

    fn e(&self, i: usize) -> usize {
        i
    }

    fn q(&self) -> usize {
        self.k + 1
    }

    fn vec(&self, i: usize) -> Vec<Scalar> {
        self.space.basis_vector(i)
    }
}

pub(crate) fn assemble_dim_l4(input: &DimL4Input) -> Result<(ConstraintReport, InfinitesimalModel), ConstructionError> {
    let base = &input.base;
    let (d, l, k) = (base.space().dim(), input.n.len(), input.k);
    let mut report = ConstraintReport::new("dimL4+");
    report.push("k ≥ 2", k >= 2);
    report.push("dim n ≤ k", l <= k);
    check_riemannian(&mut report, base);
    if k < 2 || l > k {
        return Ok((report, InfinitesimalModel::flat(base.space())));
    }
    if input.k_map.rows() != k || input.k_map.cols() != k {
        return Err(ConstructionError::InvalidParameter { name: "K".into(), reason: format!("expected {k}×{k}") });
    }
    if input.zeta1.rows() != k || input.zeta1.cols() != d {
        return Err(ConstructionError::InvalidParameter { name: "zeta1".into(), reason: format!("expected {k}×{d}") });
    }
    let big = Big::new(k, d, l);
    let s = &big.space;
    let p = mv(s, &big.vec(0));
    let mut ev_idx = big.f.clone();
    ev_idx.extend(big.v.iter().copied());

    let sigma: Vec<SkewEndomorphism> = input.n.iter().map(|x| embed_skew(x, s, &big.f)).collect();
    let b0 = base_holonomy(base, s, &big.f);
    let b = b0.sum(&SubalgebraSO::span(s, &sigma));
    let omega_e1 = embed_mv(base.torsion().form(), s, &big.f);
    let c0 = embed_curvature(base.curvature(), s, &big.f);

    let mut phi = MultiVector::zero(s, 3)?;
    let mut zeta2 = MultiVector::zero(s, 2)?;
    for (i, sg) in sigma.iter().enumerate() {
        let vi = mv(s, &big.vec(big.v[i]));
        phi = sum(&phi, &wedge(&sg.to_bivector()?, &vi));
        zeta2 = sum(&zeta2, &wedge(&mv(s, &big.vec(big.e(k - l + i + 1))), &vi));
    }
    let thetas: Vec<SkewEndomorphism> = big.v.iter().map(|&vi| skew(&phi.interior(&big.vec(vi)).expect("grade 3"))).collect();
    // contraction in the last slot: ζ_2(V_i) = e_{k-l+i}, φ(V_i) = σ_i
    let xs: Vec<Vec<Scalar>> = big
        .v
        .iter()
        .map(|&vi| vec_ops::scale(&zeta2.interior(&big.vec(vi)).and_then(|x| x.as_vector()).expect("grade 2"), &-one()))
        .collect();

    let e_idx: Vec<usize> = (1..=k).collect();
    let omega_k = two_form(s, &input.omega_k, &e_idx, "omega_k")?;
    let lambda_b = two_form(s, &input.lambda, &ev_idx, "lambda")?;
    let mut zeta1 = MultiVector::zero(s, 2)?;
    for i in 0..k {
        for j in 0..d {
            zeta1.add_term(&[big.e(i + 1), big.f[j]], input.zeta1[(i, j)].clone());
        }
    }
    let zeta = sum(&sum(&sum(&omega_k, &zeta1), &zeta2), &lambda_b);
    let omega_e = sum(&omega_e1, &phi);
    let t = sum(&wedge(&p, &zeta), &omega_e);

    let nn = &sigma;
    report.push("n commutative", nn.iter().all(|a| nn.iter().all(|b2| commutes(a, b2))));
    report.push("[n, im C_0] = 0", nn.iter().all(|a| commutes_with_all(a, &b0)));
    report.push("n·C_0 = 0", nn.iter().all(|a| kills_curvature(a, &c0)));
    report.push("b·ω_{E_1} = 0", b.basis().iter().all(|a| kills_form(a, &omega_e1)));
    report.push("b·φ = 0", b.basis().iter().all(|a| kills_form(a, &phi)));
    report.push("b·ζ = 0", b.basis().iter().all(|a| kills_form(a, &zeta)));
    let zeta1_image: Vec<Vec<Scalar>> =
        (1..=k).map(|i| zeta1.interior(&big.vec(i)).and_then(|x| x.as_vector()).expect("grade 2")).collect();
    report.push(
        "ω_{E_1}(ζ_1(ℝ^k)) = 0",
        zeta1_image.iter().all(|x| vec_ops::is_zero(x) || omega_e1.interior(x).expect("grade 3").is_zero()),
    );
    report.push("λ·ω_E = 0", kills_form(&skew(&lambda_b), &omega_e));
    let zeta1_e1: Vec<Vec<Scalar>> =
        big.f.iter().map(|&fj| zeta1.interior(&big.vec(fj)).and_then(|x| x.as_vector()).expect("grade 2")).collect();
    let z1 = Subspace::span(s, &zeta1_e1);
    let z2 = Subspace::span(s, &xs);
    report.push("ζ_1(E_1) ∩ ζ_2(E_0) = 0", z1.intersection(&z2).dim() == 0);
    report.push("K symmetric", input.k_map.is_symmetric());
    let im_k: Vec<Vec<Scalar>> = (0..k).map(|j| embed_rk(s, &input.k_map.col(j))).collect();
    report.push("im K + ζ_2(E_0) = ℝ^k", Subspace::span(s, &im_k).sum(&z2).dim() == k);

    let mut r = c0.clone();
    for j in 1..=k {
        let ej = big.vec(j);
        let kx = embed_rk(s, &input.k_map.col(j - 1));
        let mut val = skew(&wedge(&p, &mv(s, &kx)));
        for (x, th) in xs.iter().zip(&thetas) {
            val = val.add(&th.scale(&s.inner(&ej, x)));
        }
        r.add_to(big.q(), j, &val);
    }
    for a in 0..d {
        for b2 in a + 1..d {
            let (y, z) = (big.vec(big.f[a]), big.vec(big.f[b2]));
            let mut val = SkewEndomorphism::zero(s);
            let mut pv = vec![zero(); s.dim()];
            for (x, th) in xs.iter().zip(&thetas) {
                let c = th.form(&y, &z);
                if c.is_zero() {
                    continue;
                }
                vec_ops::axpy(&mut pv, &c, x);
                val = val.add(&th.scale(&c));
            }
            val = val.add(&skew(&wedge(&p, &mv(s, &pv))));
            if !val.is_zero() {
                r.add_to(big.f[a], big.f[b2], &val);
            }
        }
    }
    let lsub = Subspace::span(s, &(0..k + 2).map(|i| big.vec(i)).collect::<Vec<_>>());
    let model = InfinitesimalModel::new(r, torsion(t))?.with_candidates(vec![lsub.clone(), lsub.orthogonal_complement()]);
    Ok((report, model))
}

/// Vector `Σ c_i e_i` of `ℝ^k` inside the big space.
fn embed_rk(s: &Space, c: &[Scalar]) -> Vec<Scalar> {
    let mut v = s.zero_vector();
    for (i, x) in c.iter().enumerate() {
        v[i + 1] = x.clone();
    }
    v
}

pub fn build_dim_l4(input: &DimL4Input) -> Result<InfinitesimalModel, ConstructionError> {
    let (report, model) = assemble_dim_l4(input)?;
    report.into_result()?;
    Ok(model)
}

pub(crate) fn assemble_vertical(input: &VerticalInput) -> Result<(ConstraintReport, InfinitesimalModel), ConstructionError> {
    let base = &input.base;
    let k = input.theta.len();
    let d = base.space().dim();
    if input.psi.rows() != k || input.psi.cols() != k {
        return Err(ConstructionError::InvalidParameter { name: "psi".into(), reason: format!("expected {k}×{k}") });
    }
    // X_i = ζ_2(V_i) = e_i with l = k
    let xs: Vec<Vec<Scalar>> = (0..k).map(|i| vec_ops::basis(k, i)).collect();
    // K(X) = Σ g(X, X_i) ψ(θ_i)
    let mut k_map = QMatrix::zeros(k, k);
    for (i, x) in xs.iter().enumerate() {
        for r in 0..k {
            for c in 0..k {
                k_map[(r, c)] += &input.psi[(r, i)] * &x[c];
            }
        }
    }
    let mut l4 = DimL4Input::new(base.clone(), input.theta.clone(), k);
    l4.k_map = k_map;
    l4.omega_k = input.omega_k.clone();
    l4.lambda = input.lambda.clone();
    let (_, model) = assemble_dim_l4(&l4)?;

    let big = Big::new(k, d, k);
    let s = &big.space;
    let mut ev_idx = big.f.clone();
    ev_idx.extend(big.v.iter().copied());
    let thetas: Vec<SkewEndomorphism> = input.theta.iter().map(|x| embed_skew(x, s, &big.f)).collect();
    let b0 = base_holonomy(base, s, &big.f);
    let b = b0.sum(&SubalgebraSO::span(s, &thetas));
    let omega_e1 = embed_mv(base.torsion().form(), s, &big.f);
    let lambda_b = two_form(s, &input.lambda, &ev_idx, "lambda")?;
    let lambda = skew(&lambda_b);
    let mut omega_e = omega_e1.clone();
    for (th, &vi) in thetas.iter().zip(&big.v) {
        omega_e = sum(&omega_e, &wedge(&th.to_bivector()?, &mv(s, &big.vec(vi))));
    }

    let mut report = ConstraintReport::new("vertical");
    check_riemannian(&mut report, base);
    report.push("k ≥ 2", k >= 2);
    report.push("θ_i mutually commuting", thetas.iter().all(|a| thetas.iter().all(|c| commutes(a, c))));
    report.push("b_0·θ_i = 0", thetas.iter().all(|a| commutes_with_all(a, &b0)));
    report.push("b_0·λ = 0", b0.basis().iter().all(|a| kills_form(a, &lambda_b)));
    report.push("θ_i·λ = 0", thetas.iter().all(|a| kills_form(a, &lambda_b)));
    report.push("θ_i·ω_{E_1} = 0", thetas.iter().all(|a| kills_form(a, &omega_e1)));
    report.push("λ·ω_E = 0", kills_form(&lambda, &omega_e));

    // ψ on b: zero on b_0, ψ(θ_i) given
    let psi_cols: Vec<Vec<Scalar>> = (0..k).map(|i| input.psi.col(i)).collect();
    let mut gens: Vec<Vec<Scalar>> = b0.basis().iter().map(|x| x.matrix().flat().to_vec()).collect();
    let mut vals: Vec<Vec<Scalar>> = vec![vec![zero(); k]; gens.len()];
    gens.extend(thetas.iter().map(|x| x.matrix().flat().to_vec()));
    vals.extend(psi_cols.iter().cloned());
    let psi_map = LinearMap::fit(&gens, &vals);
    report.push("ψ well defined on b", psi_map.is_some());
    let Some(psi_map) = psi_map else {
        return Ok((report, model));
    };
    report.push("ψ surjective", crate::mlinalg::matrix::rank_of(&psi_cols) == k);
    let derived_ok = b.basis().iter().all(|x| {
        b.basis().iter().all(|y| psi_map.apply(x.bracket(y).matrix().flat()).iter().all(|c| c.is_zero()))
    });
    report.push("ψ|[b,b] = 0", derived_ok);
    let mut cond = true;
    for a in 0..d {
        for c in a + 1..d {
            let (y, z) = (big.vec(big.f[a]), big.vec(big.f[c]));
            let mut cyz = embed_curvature(base.curvature(), s, &big.f).get(big.f[a], big.f[c]);
            let mut rhs = vec![zero(); k];
            for (th, x) in thetas.iter().zip(&xs) {
                let f = th.form(&y, &z);
                cyz = cyz.add(&th.scale(&f));
                vec_ops::axpy(&mut rhs, &f, x);
            }
            if psi_map.apply(cyz.matrix().flat()) != rhs {
                cond = false;
            }
        }
    }
    report.push("ψ(C(Y,Z)) = Σ θ_i(Y,Z) X_i", cond);
    Ok((report, model))
}

pub fn build_vertical(input: &VerticalInput) -> Result<InfinitesimalModel, ConstructionError> {
    let (report, model) = assemble_vertical(input)?;
    report.into_result()?;
    Ok(model)
}

/// Linear map on the span of `inputs` determined by prescribed values.
struct LinearMap {
    basis: Vec<Vec<Scalar>>,
    images: Vec<Vec<Scalar>>,
}

impl LinearMap {
    /// `None` when the prescribed values are inconsistent.
    fn fit(inputs: &[Vec<Scalar>], values: &[Vec<Scalar>]) -> Option<Self> {
        let mut basis: Vec<Vec<Scalar>> = Vec::new();
        let mut images: Vec<Vec<Scalar>> = Vec::new();
        for (x, y) in inputs.iter().zip(values) {
            match crate::mlinalg::matrix::coords_in(&basis, x) {
                Some(c) => {
                    let mut pred = vec![zero(); y.len()];
                    for (ci, im) in c.iter().zip(&images) {
                        vec_ops::axpy(&mut pred, ci, im);
                    }
                    if &pred != y {
                        return None;
                    }
                }
                None => {
                    basis.push(x.clone());
                    images.push(y.clone());
                }
            }
        }
        Some(LinearMap { basis, images })
    }

    fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        let width = self.images.first().map_or(0, |v| v.len());
        let mut out = vec![zero(); width];
        if let Some(c) = crate::mlinalg::matrix::coords_in(&self.basis, x) {
            for (ci, im) in c.iter().zip(&self.images) {
                vec_ops::axpy(&mut out, ci, im);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::RiemannianBase;
    use crate::mlinalg::{q, qi};
    use crate::models::{classify_case, validate, CaseKind};

    fn e12(d: usize) -> SkewEndomorphism {
        let s = RiemannianBase::Flat { dim: d }.model("f");
        SkewEndomorphism::from_labels(s.space(), "f1", "f2").unwrap()
    }

    fn rot(base: &InfinitesimalModel, a: &str, b: &str) -> SkewEndomorphism {
        SkewEndomorphism::from_labels(base.space(), a, b).unwrap()
    }

    #[test]
    fn dim_l1_heisenberg_shape() {
        let base = RiemannianBase::Flat { dim: 2 }.model("f");
        let theta = e12(2).scale(&qi(3));
        let m = build_dim_l1(&DimL1Input { base, theta }).unwrap();
        let report = validate(&m);
        assert!(report.passed(), "{:?}", report.first_failure());
        // R = -9 (f1∧f2)∘(f1∧f2)
        let s = m.space();
        let r12 = m.curvature().get(1, 2);
        assert_eq!(r12, SkewEndomorphism::from_labels(s, "f1", "f2").unwrap().scale(&qi(-9)));
    }

    #[test]
    fn dim_l2_validates_for_unit_and_long_v() {
        for s in [qi(1), qi(2), q(1, 2)] {
            let base = RiemannianBase::ConstantCurvature { dim: 2, a: qi(-1) }.model("f");
            let theta = rot(&base, "f1", "f2").scale(&qi(2));
            let m = build_dim_l2(&DimL2Input { base, theta, s: s.clone(), alpha: qi(3) }).unwrap();
            let report = validate(&m);
            assert!(report.passed(), "s = {s}: {:?}", report.first_failure());
            assert_eq!(classify_case(&m).unwrap().kind, CaseKind::DimL2);
        }
    }

    #[test]
    fn dim_l2_with_zero_v_is_decomposable() {
        let base = RiemannianBase::So3 { a: qi(1), c: qi(2) }.model("f");
        let theta = SkewEndomorphism::zero(base.space());
        let m = build_dim_l2(&DimL2Input { base, theta, s: qi(0), alpha: qi(1) }).unwrap();
        assert!(validate(&m).passed());
        assert_eq!(classify_case(&m).unwrap().kind, CaseKind::Decomposable);
    }

    #[test]
    fn dim_l3_validates() {
        let base = RiemannianBase::ConstantCurvature { dim: 2, a: qi(2) }.model("f");
        let theta = rot(&base, "f1", "f2");
        let lambda = QMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]);
        let m = build_dim_l3(&DimL3Input { base, theta, lambda, s: qi(0), alpha: qi(1), beta: qi(2) }).unwrap();
        let report = validate(&m);
        assert!(report.passed(), "{:?}", report.first_failure());
        let m2 = {
            let base = RiemannianBase::Flat { dim: 2 }.model("f");
            let theta = rot(&base, "f1", "f2");
            build_dim_l3(&DimL3Input {
                base,
                theta,
                lambda: QMatrix::zeros(3, 3),
                s: qi(1),
                alpha: qi(1),
                beta: qi(-1),
            })
            .unwrap()
        };
        let report = validate(&m2);
        assert!(report.passed(), "{:?}", report.first_failure());
    }

    #[test]
    fn dim_l4_flat_base() {
        let base = RiemannianBase::Flat { dim: 2 }.model("f");
        let n = vec![rot(&base, "f1", "f2")];
        let m = build_dim_l4(&DimL4Input::new(base, n, 2)).unwrap();
        let report = validate(&m);
        assert!(report.passed(), "{:?}", report.first_failure());
        assert_eq!(classify_case(&m).unwrap().kind, CaseKind::DimL4Plus);
    }

    #[test]
    fn vertical_flat_base() {
        let base = RiemannianBase::Flat { dim: 4 }.model("f");
        let th = vec![rot(&base, "f1", "f2"), rot(&base, "f3", "f4")];
        let m = build_vertical(&VerticalInput::new(base, th)).unwrap();
        let report = validate(&m);
        assert!(report.passed(), "{:?}", report.first_failure());
    }
}
