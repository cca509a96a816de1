use super::*;

fn tol() -> NumericTolerance {
    NumericTolerance::default()
}

fn close(a: &DMatrix<f64>, b: &DMatrix<f64>, eps: f64) -> bool {
    (a - b).amax() <= eps
}

fn random_plane_wave(seed: u64, n: usize) -> (DMatrix<f64>, DMatrix<f64>) {
    let v = sample_points(seed, 2 * n * n, 1).remove(0);
    let a = DMatrix::from_fn(n, n, |i, j| v[i.min(j) * n + i.max(j)]);
    let f = DMatrix::from_fn(n, n, |i, j| {
        let x = v[n * n + i.min(j) * n + i.max(j)];
        if i < j {
            x
        } else if i > j {
            -x
        } else {
            0.0
        }
    });
    (a, f)
}

#[test]
fn flat_pp_wave_has_no_christoffels() {
    let g = CoordinateMetric::pp_wave(3, Poly::zero()).unwrap();
    for pt in sample_points(1, 5, 3) {
        assert!(christoffels(&g, &pt).unwrap().iter().all(|m| m.amax() == 0.0));
        let r = curvature_at(&g, &TorsionDescriptor::zero(), &pt).unwrap();
        assert_eq!(r.max_abs(), 0.0);
    }
    let h = infinitesimal_holonomy(&g, &TorsionDescriptor::zero(), &sample_points(1, 5, 2), &tol()).unwrap();
    assert_eq!(h.rank, 0);
    assert!(h.stable());
}

#[test]
fn cahen_wallach_curvature() {
    let (g, _) = example_full_holonomy(2, 1);
    let pt = [0.1, 0.5, -0.2, 0.3, 0.9, -0.4];
    let r = curvature_at(&g, &TorsionDescriptor::zero(), &pt).unwrap();
    let e = |i: usize| (0..6).map(|k| if k == i { 1.0 } else { 0.0 }).collect::<Vec<_>>();
    for i in 1..=4 {
        let expected = if i <= 2 { wedge_endo(&r.metric, &e(0), &e(i)) } else { DMatrix::zeros(6, 6) };
        assert!(close(r.get(5, i), &expected, 1e-12), "i = {i}");
    }
}

#[test]
fn koszul_matches_finite_differences() {
    let h = Poly::monomial(0.7, 1, 2)
        .plus(Poly::monomial(-1.3, 2, 2))
        .plus(Poly { terms: vec![(vec![0, 1, 1, 1], 0.4)] })
        .plus(Poly { terms: vec![(vec![0, 2, 0, 0, 1], 0.25)] });
    let g = CoordinateMetric::pp_wave(3, h).unwrap();
    for pt in sample_points(7, 5, 5) {
        let exact = christoffels(&g, &pt).unwrap();
        let fd = christoffels_fd(&g, &pt, tol().fd_step).unwrap();
        for (a, b) in exact.iter().zip(&fd) {
            assert!(close(a, b, 1e-8), "{a} vs {b}");
            assert!(close(a, &a.transpose(), 0.0));
        }
    }
}

#[test]
fn plane_wave_christoffels_match_finite_differences() {
    let (a, f) = random_plane_wave(3, 3);
    let g = CoordinateMetric::plane_wave(a, f).unwrap();
    for pt in sample_points(8, 5, 3) {
        let exact = christoffels(&g, &pt).unwrap();
        let fd = christoffels_fd(&g, &pt, tol().fd_step).unwrap();
        for (x, y) in exact.iter().zip(&fd) {
            assert!(close(x, y, 1e-8));
        }
    }
}

#[test]
fn pp_wave_curvature_matches_closed_form() {
    // R(∂_u, ∂_{x^i}) = ∂_v∧(K_0 - ¼ω²)∂_{x^i}, K_0 = ½ Hess H, ω the endomorphism of T(∂_u)
    let h = Poly::monomial(1.0, 1, 2).plus(Poly::monomial(-0.5, 2, 2)).plus(Poly { terms: vec![(vec![0, 1, 1], 0.6)] });
    let g = CoordinateMetric::pp_wave(3, h).unwrap();
    let w = DMatrix::from_row_slice(3, 3, &[0.0, 0.4, -0.2, -0.4, 0.0, 0.7, 0.2, -0.7, 0.0]);
    let t = TorsionDescriptor::constant(&w).unwrap();
    let k0 = DMatrix::from_row_slice(3, 3, &[1.0, 0.3, 0.0, 0.3, -0.5, 0.0, 0.0, 0.0, 0.0]);
    let om = &w * 2.0;
    let block = &k0 - &om * &om / 4.0;
    for pt in sample_points(11, 5, 4) {
        let r = curvature_at(&g, &t, &pt).unwrap();
        for i in 0..3 {
            let mut x = vec![0.0; 5];
            for j in 0..3 {
                x[j + 1] = block[(j, i)];
            }
            let p = [1.0, 0.0, 0.0, 0.0, 0.0];
            assert!(close(r.get(4, i + 1), &wedge_endo(&r.metric, &p, &x), 1e-10));
        }
        assert!(nabla_t_residual(&g, &t, &pt).unwrap() < tol().abs_tol);
    }
}

#[test]
fn zero_torsion_has_zero_residual() {
    let (g, _) = example_reduced_holonomy(2, 1);
    assert_eq!(nabla_t_residual(&g, &TorsionDescriptor::zero(), &[0.0; 6]).unwrap(), 0.0);
}

#[test]
fn nonconstant_omega_is_not_parallel() {
    let (g, _) = example_full_holonomy(2, 1);
    let mut omega = vec![vec![Poly::zero(); 4]; 4];
    omega[2][3] = Poly::monomial(-1.0, 1, 1);
    omega[3][2] = Poly::monomial(1.0, 1, 1);
    let t = TorsionDescriptor::du_wedge(omega).unwrap();
    for pt in sample_points(5, 6, 5) {
        assert!(nabla_t_residual(&g, &t, &pt).unwrap() > 1.0);
    }
}

#[test]
fn residual_invariant_under_v_translation() {
    let (a, f) = random_plane_wave(9, 3);
    let g = CoordinateMetric::plane_wave(a, f.clone()).unwrap();
    let mut omega = vec![vec![Poly::zero(); 3]; 3];
    omega[0][1] = Poly::monomial(0.5, 3, 1);
    omega[1][0] = Poly::monomial(-0.5, 3, 1);
    let t = TorsionDescriptor::du_wedge(omega).unwrap();
    for pt in sample_points(10, 5, 3) {
        let base = nabla_t_residual(&g, &t, &pt).unwrap();
        let mut moved = pt.clone();
        moved[0] += 0.73;
        assert!((nabla_t_residual(&g, &t, &moved).unwrap() - base).abs() < tol().abs_tol);
    }
}

#[test]
fn plane_wave_curvature_block() {
    // the computed block is EᵀAE - F², not the displayed ¼(2EᵀAE - F²)
    let (a, f) = random_plane_wave(21, 3);
    let g = CoordinateMetric::plane_wave(a.clone(), f.clone()).unwrap();
    let t = plane_wave_torsion(&f);
    for pt in sample_points(22, 5, 4) {
        let u = pt[4];
        let e = (&f * -u).exp();
        let block = e.transpose() * &a * &e - &f * &f;
        let r = curvature_at(&g, &t, &pt).unwrap();
        let displayed = plane_wave_displayed_block(&a, &f, u);
        for i in 0..3 {
            let mut x = vec![0.0; 5];
            let mut y = vec![0.0; 5];
            for j in 0..3 {
                x[j + 1] = block[(j, i)];
                y[j + 1] = displayed[(j, i)];
            }
            let p = [1.0, 0.0, 0.0, 0.0, 0.0];
            assert!(close(r.get(4, i + 1), &wedge_endo(&r.metric, &p, &x), 1e-10));
            assert!(!close(r.get(4, i + 1), &wedge_endo(&r.metric, &p, &y), 1e-3));
        }
        assert!(nabla_t_residual(&g, &t, &pt).unwrap() < tol().abs_tol);
    }
}

#[test]
fn plane_wave_holonomy_is_image_of_a_minus_f_squared() {
    let f = DMatrix::from_row_slice(3, 3, &[0.0, 0.8, 0.0, -0.8, 0.0, 0.0, 0.0, 0.0, 0.0]);
    // A = F² kills the e1, e2 block; 2A - F² = F² would keep it
    let a = &f * &f + DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![0.0, 0.0, 1.0]));
    let g = CoordinateMetric::plane_wave(a.clone(), f.clone()).unwrap();
    let h = infinitesimal_holonomy(&g, &plane_wave_torsion(&f), &sample_points(4, 5, 2), &tol()).unwrap();
    assert!(h.stable());
    assert_eq!(h.rank, matrix_rank(&(&a - &f * &f), 1e-6, 1e-8));
    assert_eq!(h.rank, 1);
    assert_eq!(matrix_rank(&(&a * 2.0 - &f * &f), 1e-6, 1e-8), 3);
    assert!(h.basis().iter().all(|m| off_p_wedge(m) < 1e-10));
}

#[test]
fn generic_plane_wave_holonomy_rank() {
    for seed in 0..3 {
        let (a, f) = random_plane_wave(100 + seed, 3);
        let g = CoordinateMetric::plane_wave(a.clone(), f.clone()).unwrap();
        let h = infinitesimal_holonomy(&g, &plane_wave_torsion(&f), &sample_points(seed, 5, 2), &tol()).unwrap();
        assert!(h.stable());
        assert_eq!(h.rank, matrix_rank(&(&a * 2.0 - &f * &f), 1e-6, 1e-8));
        assert_eq!(h.rank, matrix_rank(&(&a - &f * &f), 1e-6, 1e-8));
    }
}

#[test]
fn full_and_reduced_examples() {
    let pts = sample_points(2024, 6, 3);
    let (g1, t1) = example_full_holonomy(2, 1);
    let h1 = infinitesimal_holonomy(&g1, &t1, &pts, &tol()).unwrap();
    assert_eq!(h1.rank, 4);
    let (g2, t2) = example_reduced_holonomy(2, 1);
    let h2 = infinitesimal_holonomy(&g2, &t2, &pts, &tol()).unwrap();
    // the torsion block has curvature (1 + 1/4) ∂_v∧∂_{x^i}, so nothing drops out
    assert_eq!(h2.rank, 4);
    let r = curvature_at(&g2, &t2, &pts[0]).unwrap();
    let mut x3 = vec![0.0; 6];
    x3[3] = 1.25;
    assert!(close(r.get(5, 3), &wedge_endo(&r.metric, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0], &x3), 1e-12));
}

#[test]
fn screen_holonomies_coincide() {
    let (g, t) = example_full_holonomy(2, 1);
    let pts = sample_points(31, 6, 2);
    let with = infinitesimal_holonomy(&g, &t, &pts, &tol()).unwrap();
    let without = infinitesimal_holonomy(&g, &TorsionDescriptor::zero(), &pts, &tol()).unwrap();
    let a: Vec<_> = with.basis().iter().map(screen_block).collect();
    let b: Vec<_> = without.basis().iter().map(screen_block).collect();
    let (ra, rb, rab) = span_ranks(&a, &b, tol().svd_cut, tol().abs_tol);
    assert_eq!((ra, rb), (rab, rab));
}

#[test]
fn rejects_bad_input() {
    let a = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.0, 1.0]);
    assert!(CoordinateMetric::plane_wave(a, DMatrix::zeros(2, 2)).is_err());
    let w = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
    assert!(TorsionDescriptor::constant(&w).is_err());
    let g = CoordinateMetric::pp_wave(2, Poly::zero()).unwrap();
    assert!(matches!(christoffels(&g, &[0.0; 3]), Err(CoordError::DimensionMismatch { .. })));
    let degenerate = CoordinateMetric::walker(vec![vec![Poly::zero()]], vec![Poly::zero()], Poly::zero()).unwrap();
    assert_eq!(christoffels(&degenerate, &[0.0; 3]).unwrap_err(), CoordError::SingularMetric);
    assert_eq!(infinitesimal_holonomy(&g, &TorsionDescriptor::zero(), &[], &tol()).unwrap_err(), CoordError::NoSamples);
}

#[test]
fn walker_metric_signature() {
    let h = vec![vec![Poly::constant(1.0), Poly::zero()], vec![Poly::zero(), Poly::constant(1.0).plus(Poly::monomial(0.1, 1, 2))]];
    let a = vec![Poly::monomial(0.3, 3, 1), Poly::zero()];
    let g = CoordinateMetric::walker(h, a, Poly::monomial(1.0, 2, 2)).unwrap();
    for pt in sample_points(12, 4, 3) {
        let m = g.matrix_at(&pt);
        let eig = m.symmetric_eigen().eigenvalues;
        assert_eq!(eig.iter().filter(|&&x| x < 0.0).count(), 1);
        let fd = christoffels_fd(&g, &pt, tol().fd_step).unwrap();
        for (x, y) in christoffels(&g, &pt).unwrap().iter().zip(&fd) {
            assert!(close(x, y, 1e-8));
        }
    }
}
