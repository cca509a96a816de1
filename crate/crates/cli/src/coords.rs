use clap::{Args, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use nrh_core::coordgeo::{
    curvature_at, example_full_holonomy, example_reduced_holonomy, infinitesimal_holonomy, matrix_rank, nabla_t_residual,
    plane_wave_torsion, sample_points, CoordinateMetric, HolonomyWarning, NumericTolerance,
};
use nrh_core::mlinalg::parse_scalar;
use nrh_core::mlinalg::scalar::to_f64;
use serde_json::json;

use crate::report::Report;
use crate::{Cli, CliError, Outcome};

#[derive(Subcommand, Debug)]
pub enum CoordsMetric {
    /// `H = A(e^{-uF}x, e^{-uF}x)` with `T = du∧ω`, `ω = 2Σ F_ij dx^i∧dx^j`.
    PlaneWave {
        /// Symmetric matrix: `I`, `0` or `[[a,b],[c,d]]`.
        #[arg(long = "A")]
        a: String,
        /// Skew matrix, same syntax.
        #[arg(long = "F", default_value = "0")]
        f: String,
        /// Fiber dimension when both matrices are `I` or `0`.
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// The two pp-wave examples on `ℝ^{n+2}`, `n = k + 2m`.
    PpWave {
        #[arg(long, value_enum)]
        example: PpExample,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum PpExample {
    /// `H = Σ_{j≤k}(x^j)²`, `T = -2∂_v∧Σ∂∧∂`.
    Full,
    /// `H = Σ(x^i)²`, `T = ∂_v∧Σ∂∧∂`.
    Reduced,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Check {
    Holonomy,
    NablaT,
    Curvature,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[arg(long, value_enum, default_value = "holonomy")]
    check: Check,
    #[arg(long, default_value_t = 4)]
    samples: usize,
    /// Relative singular value cut for rank decisions.
    #[arg(long)]
    svd_cut: Option<f64>,
}

fn parse_matrix(s: &str, n: Option<usize>) -> Result<DMatrix<f64>, CliError> {
    let s = s.trim();
    let bad = || CliError::Usage(format!("bad matrix `{s}`: use I, 0 or [[a,b],[c,d]]"));
    match s {
        "I" => return Ok(DMatrix::identity(n.ok_or_else(bad)?, n.ok_or_else(bad)?)),
        "0" => return Ok(DMatrix::zeros(n.ok_or_else(bad)?, n.ok_or_else(bad)?)),
        _ => {}
    }
    let inner = s.strip_prefix("[[").and_then(|x| x.strip_suffix("]]")).ok_or_else(bad)?;
    let rows: Vec<Vec<f64>> = inner
        .split("],[")
        .map(|r| r.split(',').map(|x| parse_scalar(x).map(|q| to_f64(&q)).ok_or_else(bad)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    let size = rows.len();
    if rows.iter().any(|r| r.len() != size) {
        return Err(bad());
    }
    Ok(DMatrix::from_fn(size, size, |i, j| rows[i][j]))
}

fn literal_size(s: &str) -> Option<usize> {
    let s = s.trim();
    s.starts_with('[').then(|| s.matches("],[").count() + 1)
}

pub fn run(cli: &Cli, metric: &CoordsMetric) -> Result<Outcome, CliError> {
    let mut tol = NumericTolerance::default();
    if let Some(t) = cli.tol {
        tol.abs_tol = t;
    }
    let mut rep = Report::new("coords");
    let (g, t, run) = match metric {
        CoordsMetric::PlaneWave { a, f, n, run } => {
            let size = literal_size(a).or(literal_size(f)).unwrap_or(*n);
            let am = parse_matrix(a, Some(size))?;
            let fm = parse_matrix(f, Some(size))?;
            let g = CoordinateMetric::plane_wave(am.clone(), fm.clone()).map_err(|e| CliError::Usage(e.to_string()))?;
            let cut = run.svd_cut.unwrap_or(tol.svd_cut);
            let expected = matrix_rank(&(&am * 2.0 - &fm * &fm), cut, tol.abs_tol);
            let computed_block = matrix_rank(&(&am - &fm * &fm), cut, tol.abs_tol);
            rep.set("metric", json!({ "family": "plane_wave", "n": size }));
            rep.set("rank_2a_minus_f2", json!(expected));
            rep.set("rank_a_minus_f2", json!(computed_block));
            rep.line(format!("plane wave, n = {size}: rank(2A − F²) = {expected}, rank(A − F²) = {computed_block}"));
            (g, plane_wave_torsion(&fm), run)
        }
        CoordsMetric::PpWave { example, k, m, run } => {
            let (g, t) = match example {
                PpExample::Full => example_full_holonomy(*k, *m),
                PpExample::Reduced => example_reduced_holonomy(*k, *m),
            };
            rep.set("metric", json!({ "family": "pp_wave", "example": format!("{example:?}").to_lowercase(), "k": k, "m": m }));
            rep.line(format!("pp-wave {example:?}, k = {k}, m = {m}"));
            (g, t, run)
        }
    };
    if let Some(c) = run.svd_cut {
        tol.svd_cut = c;
    }
    let samples = sample_points(cli.seed, g.dim(), run.samples.max(1));
    rep.set("seed", json!(cli.seed));
    rep.set("tolerance", json!({ "abs_tol": tol.abs_tol, "svd_cut": tol.svd_cut, "fd_step": tol.fd_step }));
    let numeric = |e: nrh_core::coordgeo::CoordError| CliError::Usage(e.to_string());
    let outcome = match run.check {
        Check::Holonomy => {
            let h = infinitesimal_holonomy(&g, &t, &samples, &tol).map_err(numeric)?;
            let warnings: Vec<String> = h
                .warnings
                .iter()
                .map(|HolonomyWarning::RankUnstable { sample, ranks }| format!("rank unstable at sample {sample}: {ranks:?}"))
                .collect();
            rep.set("rank", json!(h.rank));
            rep.set("per_sample", json!(h.samples.iter().map(|s| s.rank).collect::<Vec<_>>()));
            rep.set("warnings", json!(warnings));
            rep.line(format!("holonomy rank = {} over {} samples (seed {})", h.rank, samples.len(), cli.seed));
            for w in &warnings {
                rep.line(format!("  warning: {w}"));
            }
            if h.stable() {
                Outcome::Pass
            } else {
                Outcome::Fail
            }
        }
        Check::NablaT => {
            let mut worst: f64 = 0.0;
            for p in &samples {
                worst = worst.max(nabla_t_residual(&g, &t, p).map_err(numeric)?);
            }
            rep.set("nabla_t_residual", json!(worst));
            rep.set("passed", json!(worst <= tol.abs_tol));
            rep.line(format!("max |∇T| = {worst:e} over {} samples (tol {:e})", samples.len(), tol.abs_tol));
            if worst <= tol.abs_tol {
                Outcome::Pass
            } else {
                Outcome::Fail
            }
        }
        Check::Curvature => {
            let r = curvature_at(&g, &t, &samples[0]).map_err(numeric)?;
            let n = g.n();
            let u = n + 1;
            // R(∂_u, ∂_{x^i}) ∂_u has x-components: the block K with R = ∂_v∧K(∂_{x^i})
            let block = DMatrix::from_fn(n, n, |j, i| r.get(u, i + 1)[(j + 1, u)]);
            rep.set("point", json!(samples[0]));
            rep.set("block", json!((0..n).map(|i| block.row(i).iter().cloned().collect::<Vec<_>>()).collect::<Vec<_>>()));
            rep.line(format!("R(∂_u, ∂_x^i) = ∂_v∧K ∂_x^i at {:?}, K =", samples[0]));
            for i in 0..n {
                rep.line(format!("  {:?}", block.row(i).iter().map(|x| format!("{x:.6}")).collect::<Vec<_>>()));
            }
            Outcome::Pass
        }
    };
    rep.emit(cli.json);
    Ok(outcome)
}
