//! Floating-point checks on explicit Walker, pp-wave and plane-wave metrics:
//! Christoffel symbols, curvature of `∇ = ∇^g + ½T`, `∇T` residuals and
//! infinitesimal holonomy.
//!
//! Coordinates are ordered `v, x^1, …, x^n, u`. Derivatives come from
//! truncated Taylor jets, exact for the polynomial and plane-wave data.

mod geometry;
mod jet;
mod metric;

pub use geometry::{christoffels, christoffels_fd, curvature_at, nabla_t_residual, NumericCurvature};
pub use metric::{CoordinateMetric, Poly, TorsionDescriptor};

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoordError {
    #[error("metric is singular at the sample point")]
    SingularMetric,
    #[error("expected dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
    #[error("invalid torsion: {0}")]
    InvalidTorsion(String),
    #[error("no sample points")]
    NoSamples,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericTolerance {
    pub abs_tol: f64,
    pub svd_cut: f64,
    pub fd_step: f64,
}

impl Default for NumericTolerance {
    fn default() -> Self {
        NumericTolerance { abs_tol: 1e-8, svd_cut: 1e-6, fd_step: 1e-5 }
    }
}

/// `count` points uniform in `[-1, 1]^dim` from a ChaCha stream.
pub fn sample_points(seed: u64, dim: usize, count: usize) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect()).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub enum HolonomyWarning {
    /// Ranks at `svd_cut / 10`, `svd_cut`, `svd_cut · 10` disagree.
    RankUnstable { sample: usize, ranks: [usize; 3] },
}

#[derive(Clone, Debug)]
pub struct SampleHolonomy {
    pub point: Vec<f64>,
    pub rank: usize,
    /// normalized by the largest one
    pub singular_values: Vec<f64>,
    pub basis: Vec<DMatrix<f64>>,
}

/// Span of `R`, `∇R`, `∇²R` at each sample, closed under brackets.
#[derive(Clone, Debug)]
pub struct NumericHolonomy {
    pub rank: usize,
    pub samples: Vec<SampleHolonomy>,
    pub warnings: Vec<HolonomyWarning>,
}

impl NumericHolonomy {
    pub fn stable(&self) -> bool {
        self.warnings.is_empty()
    }

    /// Basis at the first sample reaching the maximal rank.
    pub fn basis(&self) -> &[DMatrix<f64>] {
        self.samples.iter().find(|s| s.rank == self.rank).map_or(&[], |s| &s.basis)
    }
}

/// Numeric rank of `rows` relative to the largest singular value, with the
/// orthonormal row-space basis and the normalized spectrum.
fn numeric_span(rows: &[Vec<f64>], cut: f64, abs_tol: f64) -> (usize, Vec<Vec<f64>>, Vec<f64>) {
    if rows.is_empty() {
        return (0, Vec::new(), Vec::new());
    }
    let m = DMatrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j]);
    let svd = m.svd(false, true);
    let vt = svd.v_t.expect("requested");
    let smax = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    if smax < abs_tol {
        return (0, Vec::new(), vec![0.0; svd.singular_values.len()]);
    }
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let normalized: Vec<f64> = order.iter().map(|&i| svd.singular_values[i] / smax).collect();
    let rank = normalized.iter().filter(|&&s| s > cut).count();
    let basis = order[..rank].iter().map(|&i| vt.row(i).iter().cloned().collect()).collect();
    (rank, basis, normalized)
}

fn flatten(m: &DMatrix<f64>) -> Vec<f64> {
    m.iter().cloned().collect()
}

fn unflatten(v: &[f64], d: usize) -> DMatrix<f64> {
    DMatrix::from_column_slice(d, d, v)
}

fn closed_span(gens: &[DMatrix<f64>], d: usize, cut: f64, abs_tol: f64) -> (usize, Vec<DMatrix<f64>>, Vec<f64>) {
    let mut rows: Vec<Vec<f64>> = gens.iter().map(flatten).collect();
    loop {
        let (rank, basis, sv) = numeric_span(&rows, cut, abs_tol);
        let mats: Vec<DMatrix<f64>> = basis.iter().map(|b| unflatten(b, d)).collect();
        let mut grown = basis.clone();
        for (i, a) in mats.iter().enumerate() {
            for b in &mats[i + 1..] {
                grown.push(flatten(&(a * b - b * a)));
            }
        }
        let (next, _, _) = numeric_span(&grown, cut, abs_tol);
        if next <= rank {
            return (rank, mats, sv);
        }
        rows = grown;
    }
}

pub fn infinitesimal_holonomy(
    g: &CoordinateMetric,
    t: &TorsionDescriptor,
    samples: &[Vec<f64>],
    tol: &NumericTolerance,
) -> Result<NumericHolonomy, CoordError> {
    if samples.is_empty() {
        return Err(CoordError::NoSamples);
    }
    let d = g.dim();
    let mut out = NumericHolonomy { rank: 0, samples: Vec::new(), warnings: Vec::new() };
    for (k, pt) in samples.iter().enumerate() {
        let (gens, _) = geometry::curvature_jets(g, t, pt)?;
        let ranks = [tol.svd_cut / 10.0, tol.svd_cut, tol.svd_cut * 10.0].map(|c| closed_span(&gens, d, c, tol.abs_tol).0);
        if ranks.iter().any(|&r| r != ranks[1]) {
            out.warnings.push(HolonomyWarning::RankUnstable { sample: k, ranks });
        }
        let (rank, basis, singular_values) = closed_span(&gens, d, tol.svd_cut, tol.abs_tol);
        out.rank = out.rank.max(rank);
        out.samples.push(SampleHolonomy { point: pt.clone(), rank, singular_values, basis });
    }
    Ok(out)
}

/// Endomorphism `(X∧Y)Z = g(X,Z)Y − g(Y,Z)X` in coordinates.
pub fn wedge_endo(metric: &DMatrix<f64>, x: &[f64], y: &[f64]) -> DMatrix<f64> {
    let d = metric.nrows();
    let xv = nalgebra::DVector::from_column_slice(x);
    let yv = nalgebra::DVector::from_column_slice(y);
    let gx = metric * &xv;
    let gy = metric * &yv;
    DMatrix::from_fn(d, d, |e, c| gx[c] * yv[e] - gy[c] * xv[e])
}

/// Largest entry of `m` outside the pattern of `∂_v∧ℝ^n`.
pub fn off_p_wedge(m: &DMatrix<f64>) -> f64 {
    let d = m.nrows();
    let mut worst: f64 = 0.0;
    for e in 0..d {
        for c in 0..d {
            let fiber = (1..d - 1).contains(&e) && c == d - 1 || e == 0 && (1..d - 1).contains(&c);
            if !fiber {
                worst = worst.max(m[(e, c)].abs());
            }
        }
    }
    worst
}

/// Restriction to the screen `⟨∂_{x^1}, …, ∂_{x^n}⟩`.
pub fn screen_block(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows() - 2;
    m.view((1, 1), (n, n)).into_owned()
}

/// Rank of the union of two numeric spans and of each one.
pub fn span_ranks(a: &[DMatrix<f64>], b: &[DMatrix<f64>], cut: f64, abs_tol: f64) -> (usize, usize, usize) {
    let ra: Vec<Vec<f64>> = a.iter().map(flatten).collect();
    let rb: Vec<Vec<f64>> = b.iter().map(flatten).collect();
    let both: Vec<Vec<f64>> = ra.iter().chain(&rb).cloned().collect();
    (numeric_span(&ra, cut, abs_tol).0, numeric_span(&rb, cut, abs_tol).0, numeric_span(&both, cut, abs_tol).0)
}

/// Numeric rank by singular values relative to the largest.
pub fn matrix_rank(m: &DMatrix<f64>, cut: f64, abs_tol: f64) -> usize {
    let rows: Vec<Vec<f64>> = m.row_iter().map(|r| r.iter().cloned().collect()).collect();
    numeric_span(&rows, cut, abs_tol).0
}

/// Pairs `(k + 2i - 1, k + 2i)`, `i = 1..m`, of fiber coordinates.
fn pairs(k: usize, m: usize) -> Vec<(usize, usize)> {
    (1..=m).map(|i| (k + 2 * i - 1, k + 2 * i)).collect()
}

fn pair_torsion(n: usize, pairs: &[(usize, usize)], omega: f64) -> TorsionDescriptor {
    let mut w = DMatrix::zeros(n, n);
    for &(a, b) in pairs {
        w[(a - 1, b - 1)] = omega;
        w[(b - 1, a - 1)] = -omega;
    }
    TorsionDescriptor::constant(&w).expect("skew by construction")
}

fn sum_of_squares(vars: impl Iterator<Item = usize>) -> Poly {
    vars.fold(Poly::zero(), |h, i| h.plus(Poly::monomial(1.0, i, 2)))
}

/// Cahen–Wallach factor times flat `ℝ^{2m}` with `H = Σ_{j≤k} (x^j)²` and
/// `T = -2 ∂_v ∧ Σ ∂_{x^{k+2i-1}}∧∂_{x^{k+2i}}`.
pub fn example_full_holonomy(k: usize, m: usize) -> (CoordinateMetric, TorsionDescriptor) {
    let n = k + 2 * m;
    let g = CoordinateMetric::pp_wave(n, sum_of_squares(1..=k)).expect("valid");
    // ∂_v lowers to du, so T = -2 du∧Σ dx∧dx and ω_ij = -1
    (g, pair_torsion(n, &pairs(k, m), -1.0))
}

/// `H = Σ_{i≤n} (x^i)²` with `T = ∂_v ∧ Σ ∂_{x^{k+2i-1}}∧∂_{x^{k+2i}}`.
pub fn example_reduced_holonomy(k: usize, m: usize) -> (CoordinateMetric, TorsionDescriptor) {
    let n = k + 2 * m;
    let g = CoordinateMetric::pp_wave(n, sum_of_squares(1..=n)).expect("valid");
    (g, pair_torsion(n, &pairs(k, m), 0.5))
}

/// `T = du∧ω`, `ω = 2 Σ_{i<j} F_ij dx^i∧dx^j`, for the plane wave `(A, F)`.
pub fn plane_wave_torsion(f: &DMatrix<f64>) -> TorsionDescriptor {
    TorsionDescriptor::constant(f).expect("F skew")
}

/// `¼(2 EᵀAE − F²)` with `E = e^{-uF}`, the displayed plane-wave curvature block.
pub fn plane_wave_displayed_block(a: &DMatrix<f64>, f: &DMatrix<f64>, u: f64) -> DMatrix<f64> {
    let e = (f * -u).exp();
    (e.transpose() * a * &e * 2.0 - f * f) / 4.0
}

#[cfg(test)]
mod tests;
