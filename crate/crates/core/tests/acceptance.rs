//! Acceptance criteria 1–7. Prints one line per criterion.
//!
//! Sub-checks listed in `KNOWN_FAILURES` are expected to fail; the run fails
//! if any other sub-check fails or if a listed one starts passing.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use nalgebra::DMatrix;
use nrh_core::constructions::{build_family, extend_product, extension_instances, grid, FamilyParams};
use nrh_core::coordgeo::{
    example_full_holonomy, example_reduced_holonomy, infinitesimal_holonomy, matrix_rank, nabla_t_residual, plane_wave_torsion,
    sample_points, CoordinateMetric, NumericTolerance,
};
use nrh_core::liealg::{classify, classify_dim3, AbstractLieAlgebra, LieLabel, SubalgebraSO};
use nrh_core::mlinalg::matrix::{span_basis, vec_ops};
use nrh_core::mlinalg::multivector::combinations;
use nrh_core::mlinalg::{
    act_multivector, bivector_endo, endo_bivector, q, qi, so_action, FrameKind, MultiVector, PseudoEuclideanSpace, QMatrix, Scalar,
    SkewEndomorphism, Space, Tensor,
};
use nrh_core::models::{natural_reductivity_failure, transvection, validate, InfinitesimalModel};
use nrh_core::torsioncurv::{
    berger_check, bianchi_residual, curvature_from_lc, curvature_space, pair_symmetry_check, second_bianchi_failure, sigma_of,
    CurvatureTensor, TorsionTensor, BIANCHI_SIGN, LC_TORSION_SIGN,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Displayed values that the computation does not reproduce; see the README.
const KNOWN_FAILURES: &[&str] = &["1/timelike-killing-display", "6/reduced-example-rank"];

#[derive(Default)]
struct Outcome {
    failed: Vec<(String, String)>,
    notes: Vec<String>,
}

impl Outcome {
    fn check(&mut self, id: &str, ok: bool, detail: impl FnOnce() -> String) {
        if !ok && !self.failed.iter().any(|(f, _)| f == id) {
            self.failed.push((id.to_string(), detail()));
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

fn dim3_grid() -> Vec<(&'static str, Scalar)> {
    DIM3_FAMILIES
        .iter()
        .flat_map(|id| grid(id).unwrap().into_iter().map(move |p| (*id, p.scalar(dim3_param(id)).unwrap().unwrap())))
        .collect()
}

fn criterion_1(o: &mut Outcome) {
    let points = dim3_grid();
    for (id, x) in &points {
        let m = dim3_model(id, x);
        o.check("1/validate", validate(&m).passed(), || format!("{id} at {x}"));
        let k = dim3_killing(id, x);
        let sub = if *id == "dim3-timelike" { "1/timelike-killing-display" } else { "1/killing-display" };
        o.check(sub, k == stated_killing(id, x), || format!("{id} at {x}: computed {}", rows(&k)));
        let derived = transvection(&m).unwrap().algebra.derived_algebra();
        let label = classify_dim3(&derived).map(|c| c.label);
        o.check("1/classifier", label.as_ref().ok() == Some(&signature_label(&k)), || format!("{id} at {x}: {label:?}"));
    }
    o.note(format!("{} grid points", points.len()));
}

fn rows(m: &QMatrix) -> String {
    let r: Vec<String> = (0..m.rows()).map(|i| format!("[{}]", m.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))).collect();
    format!("[{}]", r.join(", "))
}

fn span_eq(a: &[Vec<Scalar>], b: &[Vec<Scalar>], dim: usize) -> bool {
    let joint: Vec<Vec<Scalar>> = a.iter().chain(b).cloned().collect();
    let ra = span_basis(a, dim).len();
    ra == span_basis(b, dim).len() && ra == span_basis(&joint, dim).len()
}

fn criterion_2(o: &mut Outcome) {
    for p in grid("dim4-plane-wave").unwrap() {
        let m = build_family("dim4-plane-wave", &p).unwrap();
        o.check("2/validate", validate(&m).passed(), || format!("plane wave {p:?}"));
        let f = transvection(&m).unwrap();
        let s = m.space();
        let v = |l: &str| f.m_element(&s.basis_vector(s.index_of(l).unwrap()));
        let w = |a: &str, b: &str| f.g_element(&SkewEndomorphism::from_labels(s, a, b).unwrap()).unwrap();
        let series = f.algebra.derived_series();
        let n = f.algebra.dim();
        let dims: Vec<usize> = series.iter().map(|t| t.len()).collect();
        o.check("2/plane-wave-series", dims == [6, 5, 1, 0], || format!("{p:?}: {dims:?}"));
        if dims == [6, 5, 1, 0] {
            let first = span_eq(&series[1], &[v("p"), v("e1"), v("e2"), w("p", "e1"), w("p", "e2")], n);
            let second = span_eq(&series[2], &[v("p")], n);
            o.check("2/plane-wave-series", first && second, || format!("{p:?}: derived algebras differ"));
        }
        o.check("2/plane-wave-solvable", classify(&f.algebra).label == LieLabel::Solvable, || format!("{p:?}"));
    }
    let mut signs = BTreeSet::new();
    for p in grid("dim4-line-split").unwrap() {
        let gamma = p.scalar("gamma").unwrap().unwrap();
        let m = build_family("dim4-line-split", &p).unwrap();
        o.check("2/validate", validate(&m).passed(), || format!("line split γ = {gamma}"));
        let derived = transvection(&m).unwrap().algebra.derived_algebra();
        let expected = if gamma > qi(0) { LieLabel::So12 } else { LieLabel::So3 };
        let label = classify_dim3(&derived).map(|c| c.label);
        o.check("2/line-split-type", label.as_ref().ok() == Some(&expected), || format!("γ = {gamma}: {label:?}"));
        signs.insert(gamma > qi(0));
    }
    o.check("2/line-split-both-signs", signs.len() == 2, || "grid misses a sign of γ".into());
}

fn pad(x: &SkewEndomorphism, s: &Space) -> SkewEndomorphism {
    let n = s.dim();
    let m = x.matrix();
    let mut big = QMatrix::zeros(n, n);
    for a in 0..m.rows() {
        for b in 0..m.rows() {
            big[(a, b)] = m[(a, b)].clone();
        }
    }
    SkewEndomorphism::new(s, big).unwrap()
}

fn criterion_3(o: &mut Outcome) {
    let instances = extension_instances();
    o.check("3/count", instances.len() >= 20, || format!("only {} instances", instances.len()));
    for (name, input) in &instances {
        let model = extend_product(input).unwrap();
        let s = model.space();
        let b0: Vec<SkewEndomorphism> = input.base.holonomy().basis().iter().map(|x| pad(x, s)).collect();
        let n: Vec<SkewEndomorphism> = input.n.iter().map(|x| pad(x, s)).collect();
        let disjoint = SubalgebraSO::span(s, &b0).intersection(&SubalgebraSO::span(s, &n)).is_zero();
        o.check("3/disjoint", disjoint, || name.clone());
        let expected: Vec<SkewEndomorphism> = b0.iter().chain(&n).cloned().collect();
        let hol = model.holonomy();
        o.check("3/rank", hol.dim() == b0.len() + n.len(), || format!("{name}: rank {} ≠ {} + {}", hol.dim(), b0.len(), n.len()));
        o.check("3/span", hol == SubalgebraSO::span(s, &expected), || name.clone());
        o.check("3/validate", validate(&model).passed(), || name.clone());
    }
    o.note(format!("{} instances", instances.len()));
}

/// `d_4` with the invariant metric `|v|² − (v⁻w⁺ + v⁺w⁻)`, `T = −[X,Y]`,
/// `R^g = −¼ ad[X,Y]`.
fn oscillator_flat_check() -> bool {
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
    let labels = ["v1", "v2", "vm", "vp"].map(String::from).to_vec();
    let f = AbstractLieAlgebra::new(labels.clone(), c).unwrap();
    let mut g = QMatrix::identity(4);
    g[(2, 2)] = qi(0);
    g[(3, 3)] = qi(0);
    g[(2, 3)] = qi(-1);
    g[(3, 2)] = qi(-1);
    let s = PseudoEuclideanSpace::new(g, labels, FrameKind::General).unwrap();
    let mut comps = std::collections::BTreeMap::new();
    let mut rg = CurvatureTensor::zero(&s);
    for ix in combinations(4, 3) {
        let br = f.bracket(&vec_ops::basis(4, ix[0]), &vec_ops::basis(4, ix[1]));
        comps.insert(ix.clone(), -s.inner(&br, &s.basis_vector(ix[2])));
    }
    for ix in combinations(4, 2) {
        let br = f.bracket(&vec_ops::basis(4, ix[0]), &vec_ops::basis(4, ix[1]));
        rg.set(ix[0], ix[1], SkewEndomorphism::new(&s, f.ad(&br)).unwrap().scale(&q(-1, 4)));
    }
    let t = TorsionTensor::new(MultiVector::from_lowered(&s, 3, &comps).unwrap()).unwrap();
    !rg.is_zero() && curvature_from_lc(&rg, &t).unwrap().is_zero()
}

fn small(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::new(rng.gen_range(-4i64..=4).into(), rng.gen_range(1i64..=3).into())
}

fn criterion_4(o: &mut Outcome) {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut nonzero = 0;
    for i in 0..50 {
        let n = 2 + i % 5;
        let s = PseudoEuclideanSpace::witt(n);
        let p = MultiVector::blade(&s, &[0]).unwrap();
        let mut omega = MultiVector::zero(&s, 2).unwrap();
        for a in 1..=n {
            for b in a + 1..=n {
                omega.add_term(&[a, b], small(&mut rng));
            }
        }
        let t = TorsionTensor::new(p.wedge(&omega).unwrap()).unwrap();
        nonzero += usize::from(!t.is_zero());
        o.check("4/sigma", sigma_of(&t).unwrap().is_zero(), || format!("sample {i}, dim {}", n + 2));
    }
    o.check("4/sigma-nontrivial", nonzero >= 45, || format!("{nonzero} nonzero samples"));
    let mut count = 0;
    for (name, m) in shipped_models().into_iter().chain(grid_models()) {
        if validate(&m).passed() {
            count += 1;
            o.check("4/bianchi", bianchi_residual(m.curvature(), m.torsion(), BIANCHI_SIGN).unwrap().is_zero(), || name);
        }
    }
    o.check("4/sign", LC_TORSION_SIGN == -1 && oscillator_flat_check(), || "oscillator group connection not flat".into());
    o.note(format!("50 σ_T samples, {count} validated models"));
}

fn criterion_5(o: &mut Outcome) {
    for k in 2..=5 {
        let s = PseudoEuclideanSpace::witt(k);
        let gens: Vec<SkewEndomorphism> = (1..=k).map(|i| SkewEndomorphism::from_labels(&s, "p", &format!("e{i}")).unwrap()).collect();
        let g = SubalgebraSO::span(&s, &gens);
        let t = TorsionTensor::new(MultiVector::zero(&s, 3).unwrap()).unwrap();
        let space = curvature_space(&g, &t);
        let dim = space.linear_dim();
        o.check("5/dimension", dim == k * (k + 1) / 2, || format!("k = {k}: {dim}"));
        o.check("5/berger", berger_check(&g, &t), || format!("k = {k}"));
        // K = diag(1..k) realizes the whole algebra
        let diag = |f: &dyn Fn(usize) -> i64| {
            let rows: Vec<String> = (0..k).map(|i| format!("[{}]", (0..k).map(|j| if i == j { f(i) } else { 0 }).map(|x| x.to_string()).collect::<Vec<_>>().join(","))).collect();
            format!("[{}]", rows.join(","))
        };
        let mut p = FamilyParams::new();
        p.parse_assignment(&format!("K={}", diag(&|i| i as i64 + 1))).unwrap();
        p.parse_assignment(&format!("omega={}", diag(&|_| 0))).unwrap();
        let m = build_family("plane-wave", &p).unwrap();
        o.check("5/realized", validate(&m).passed() && m.holonomy().dim() == k, || format!("k = {k}"));
    }
}

fn criterion_6(o: &mut Outcome) {
    let tol = NumericTolerance::default();
    for (name, (g, t), expected) in [("full", example_full_holonomy(2, 1), 4), ("reduced", example_reduced_holonomy(2, 1), 2)] {
        let pts = sample_points(6, g.dim(), 20);
        let worst = pts.iter().map(|p| nabla_t_residual(&g, &t, p).unwrap()).fold(0.0, f64::max);
        o.check("6/nabla-t", worst < 1e-8, || format!("{name}: {worst:e}"));
        let h = infinitesimal_holonomy(&g, &t, &pts[..4], &tol).unwrap();
        o.check("6/stable", h.stable(), || format!("{name}: {:?}", h.warnings));
        let sub = if name == "full" { "6/full-example-rank" } else { "6/reduced-example-rank" };
        o.check(sub, h.rank == expected, || format!("{name}: rank {} (expected {expected})", h.rank));
        o.note(format!("{name}: max |∇T| {worst:.1e}, rank {}", h.rank));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    for i in 0..5 {
        let n = rng.gen_range(2..=4);
        let mut a = DMatrix::<f64>::zeros(n, n);
        let mut f = DMatrix::<f64>::zeros(n, n);
        for r in 0..n {
            for c in r..n {
                let x = rng.gen_range(-2.0..2.0);
                a[(r, c)] = x;
                a[(c, r)] = x;
                if c > r {
                    let y = rng.gen_range(-1.0..1.0);
                    f[(r, c)] = y;
                    f[(c, r)] = -y;
                }
            }
        }
        let expected = matrix_rank(&(&a * 2.0 - &f * &f), tol.svd_cut, tol.abs_tol);
        let g = CoordinateMetric::plane_wave(a, f.clone()).unwrap();
        let h = infinitesimal_holonomy(&g, &plane_wave_torsion(&f), &sample_points(i, g.dim(), 3), &tol).unwrap();
        o.check("6/plane-wave-rank", h.rank == expected && h.stable(), || format!("sample {i}, n = {n}: {} vs {expected}", h.rank));
    }
}

fn criterion_7(o: &mut Outcome) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let spaces: Vec<Space> = vec![
        PseudoEuclideanSpace::witt(1),
        PseudoEuclideanSpace::witt(3),
        PseudoEuclideanSpace::orthonormal(&[-1, 1, 1, 1], None),
        PseudoEuclideanSpace::orthonormal(&[1, -1, 1, -1, 1], None),
    ];
    let random = |s: &Space, grade: usize, rng: &mut ChaCha8Rng| {
        let len = combinations(s.dim(), grade).len();
        let c: Vec<Scalar> = (0..len).map(|_| small(rng)).collect();
        MultiVector::from_dense(s, grade, &c).unwrap()
    };
    for i in 0..100 {
        let s = &spaces[i % spaces.len()];
        let b = random(s, 2, &mut rng);
        let xi = bivector_endo(&b).unwrap();
        o.check("7/round-trip", endo_bivector(&xi).unwrap() == b, || format!("sample {i}"));
        let (x, y) = (random(s, 1, &mut rng), random(s, 2, &mut rng));
        let lhs = act_multivector(&xi, &x.wedge(&y).unwrap()).unwrap();
        let rhs = act_multivector(&xi, &x).unwrap().wedge(&y).unwrap().add(&x.wedge(&act_multivector(&xi, &y).unwrap()).unwrap()).unwrap();
        o.check("7/leibniz", lhs == rhs, || format!("sample {i}"));
        let g = so_action(&xi, &Tensor::Bilinear(s.metric().clone())).unwrap();
        o.check("7/leibniz", g == Tensor::Bilinear(QMatrix::zeros(s.dim(), s.dim())), || format!("metric, sample {i}"));
    }
    let pool: Vec<(String, InfinitesimalModel)> = shipped_models().into_iter().chain(grid_models()).collect();
    let shipped = shipped_models().len();
    for (k, (name, m)) in pool.iter().enumerate() {
        let f = transvection(m).unwrap();
        o.check("7/jacobi", f.algebra.jacobi_failure().is_none(), || name.clone());
        if k < shipped {
            o.check("7/natural-reductivity", natural_reductivity_failure(&f, m.space()).is_none(), || name.clone());
        }
        let (r, t) = (m.curvature(), m.torsion());
        if pair_symmetry_check(r) {
            o.check("7/second-bianchi", second_bianchi_failure(r, t).is_none(), || name.clone());
        }
    }
    o.note(format!("{} transvection algebras", pool.len()));
}

type Criterion = (usize, &'static str, fn(&mut Outcome), Duration);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        (1, "dim-3 catalog", criterion_1, Duration::from_secs(10)),
        (2, "dim-4 families", criterion_2, Duration::from_secs(10)),
        (3, "extension holonomy", criterion_3, Duration::from_secs(30)),
        (4, "torsion calculus", criterion_4, Duration::from_secs(60)),
        (5, "curvature spaces", criterion_5, Duration::from_secs(60)),
        (6, "coordinate module", criterion_6, Duration::from_secs(60)),
        (7, "property suites", criterion_7, Duration::from_secs(30)),
    ];
    let known: BTreeSet<&str> = KNOWN_FAILURES.iter().copied().collect();
    let mut unexpected = Vec::new();
    let mut seen_known = BTreeSet::new();
    for (n, title, run, budget) in criteria {
        let mut o = Outcome::default();
        let start = Instant::now();
        run(&mut o);
        let elapsed = start.elapsed();
        o.check(&format!("{n}/runtime"), elapsed <= budget, || format!("{elapsed:.1?} > {budget:?}"));
        let status = if o.failed.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {n} ({title}): {status} in {elapsed:.2?}{}", if o.notes.is_empty() { String::new() } else { format!(" [{}]", o.notes.join("; ")) });
        for (id, detail) in &o.failed {
            let tag = if known.contains(id.as_str()) { "known" } else { "unexpected" };
            println!("    {tag} failure {id}: {detail}");
            if known.contains(id.as_str()) {
                seen_known.insert(id.clone());
            } else {
                unexpected.push(id.clone());
            }
        }
    }
    let fixed: Vec<&&str> = known.iter().filter(|k| !seen_known.contains(**k)).collect();
    for k in &fixed {
        println!("known failure {k} now passes; remove it from KNOWN_FAILURES");
    }
    if unexpected.is_empty() && fixed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
