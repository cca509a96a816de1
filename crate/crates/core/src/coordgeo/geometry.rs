use nalgebra::DMatrix;

use super::jet::{Jet, JetSpace};
use super::metric::{CoordinateMetric, TorsionDescriptor};
use super::CoordError;

/// Jets of the metric data about one point, with `∇ = ∇^g + ½T`.
pub(crate) struct LocalData {
    pub js: JetSpace,
    pub d: usize,
    pub g0: DMatrix<f64>,
    /// `Γ^c_{ab}` at index `c·d² + a·d + b`
    pub lc: Vec<Jet>,
    /// `Γ̃^c_{ab} = Γ^c_{ab} + ½ T_{ab}{}^c`
    pub conn: Vec<Jet>,
    /// lowered `T_{abc}`
    pub torsion: Vec<Jet>,
}

impl LocalData {
    pub fn new(g: &CoordinateMetric, t: &TorsionDescriptor, pt: &[f64], order: usize) -> Result<Self, CoordError> {
        let d = g.dim();
        if pt.len() != d {
            return Err(CoordError::DimensionMismatch { expected: d, found: pt.len() });
        }
        let js = JetSpace::new(d, order);
        let gj = g.jets(&js, pt);
        let g0 = DMatrix::from_fn(d, d, |i, j| js.value(&gj[i][j]));
        let ginv0 = g0.clone().try_inverse().ok_or(CoordError::SingularMetric)?;
        if g0.determinant().abs() < 1e-12 {
            return Err(CoordError::SingularMetric);
        }
        let ginv = inverse_jets(&js, &gj, &g0, &ginv0);

        let idx3 = |a: usize, b: usize, c: usize| a * d * d + b * d + c;
        // first kind Γ_{lab} = ½(∂_a g_lb + ∂_b g_la − ∂_l g_ab)
        let dg: Vec<Vec<Vec<Jet>>> = (0..d).map(|c| gj.iter().map(|row| row.iter().map(|x| js.diff(x, c)).collect()).collect()).collect();
        let mut first = vec![js.zero(); d * d * d];
        for l in 0..d {
            for a in 0..d {
                for b in 0..d {
                    let mut s = js.add(&dg[a][l][b], &dg[b][l][a]);
                    js.axpy(&mut s, -1.0, &dg[l][a][b]);
                    first[idx3(l, a, b)] = js.scale(0.5, &s);
                }
            }
        }
        let tj = t.jets(&js, d, pt)?;
        let mut lc = vec![js.zero(); d * d * d];
        let mut conn = vec![js.zero(); d * d * d];
        for c in 0..d {
            for a in 0..d {
                for b in 0..d {
                    let mut acc = js.zero();
                    let mut tor = js.zero();
                    for l in 0..d {
                        js.fma(&mut acc, 1.0, &ginv[c][l], &first[idx3(l, a, b)]);
                        js.fma(&mut tor, 0.5, &ginv[c][l], &tj[idx3(a, b, l)]);
                    }
                    conn[idx3(c, a, b)] = js.add(&acc, &tor);
                    lc[idx3(c, a, b)] = acc;
                }
            }
        }
        Ok(LocalData { js, d, g0, lc, conn, torsion: tj })
    }

    fn idx3(&self, a: usize, b: usize, c: usize) -> usize {
        a * self.d * self.d + b * self.d + c
    }

    /// `R^e_{cab}` for `R(∂_a,∂_b)∂_c = R^e_{cab} ∂_e`, flattened `(e, c, a, b)`.
    pub fn curvature(&self) -> Vec<Jet> {
        let (d, js) = (self.d, &self.js);
        let mut r = vec![js.zero(); d.pow(4)];
        for e in 0..d {
            for c in 0..d {
                for a in 0..d {
                    for b in 0..d {
                        let mut acc = js.diff(&self.conn[self.idx3(e, b, c)], a);
                        js.axpy(&mut acc, -1.0, &js.diff(&self.conn[self.idx3(e, a, c)], b));
                        for f in 0..d {
                            js.fma(&mut acc, 1.0, &self.conn[self.idx3(e, a, f)], &self.conn[self.idx3(f, b, c)]);
                            js.fma(&mut acc, -1.0, &self.conn[self.idx3(e, b, f)], &self.conn[self.idx3(f, a, c)]);
                        }
                        r[((e * d + c) * d + a) * d + b] = acc;
                    }
                }
            }
        }
        r
    }

    /// `∇` of a tensor field; `up[s]` marks contravariant slots. The new
    /// covariant slot comes first.
    pub fn covariant(&self, t: &[Jet], up: &[bool]) -> Vec<Jet> {
        let rank = up.len();
        let (d, js) = (self.d, &self.js);
        let size = d.pow(rank as u32);
        let mut out = Vec::with_capacity(d * size);
        let mut digits = vec![0usize; rank];
        for e in 0..d {
            for flat in 0..size {
                let mut rem = flat;
                for s in (0..rank).rev() {
                    digits[s] = rem % d;
                    rem /= d;
                }
                let mut acc = js.diff(&t[flat], e);
                for s in 0..rank {
                    let stride = d.pow((rank - 1 - s) as u32);
                    let base = flat - digits[s] * stride;
                    for f in 0..d {
                        let other = &t[base + f * stride];
                        if up[s] {
                            js.fma(&mut acc, 1.0, &self.conn[self.idx3(digits[s], e, f)], other);
                        } else {
                            js.fma(&mut acc, -1.0, &self.conn[self.idx3(f, e, digits[s])], other);
                        }
                    }
                }
                out.push(acc);
            }
        }
        out
    }
}

/// `g^{-1} = Σ_k (-g_0^{-1} δ)^k g_0^{-1}` with `δ = g - g_0`, truncated at the jet order.
fn inverse_jets(js: &JetSpace, g: &[Vec<Jet>], g0: &DMatrix<f64>, ginv0: &DMatrix<f64>) -> Vec<Vec<Jet>> {
    let d = g0.nrows();
    let delta: Vec<Vec<Jet>> = (0..d)
        .map(|i| (0..d).map(|j| js.add(&g[i][j], &js.constant(-g0[(i, j)]))).collect())
        .collect();
    // N = -g_0^{-1} δ
    let mut nmat: Vec<Vec<Jet>> = vec![vec![js.zero(); d]; d];
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                js.axpy(&mut nmat[i][j], -ginv0[(i, k)], &delta[k][j]);
            }
        }
    }
    let constant = |m: &DMatrix<f64>| -> Vec<Vec<Jet>> { (0..d).map(|i| (0..d).map(|j| js.constant(m[(i, j)])).collect()).collect() };
    let mut term = constant(ginv0);
    let mut sum = term.clone();
    for _ in 0..js.order() {
        let mut next = vec![vec![js.zero(); d]; d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    js.fma(&mut next[i][j], 1.0, &nmat[i][k], &term[k][j]);
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                sum[i][j] = js.add(&sum[i][j], &next[i][j]);
            }
        }
        term = next;
    }
    sum
}

/// Koszul Christoffel symbols `Γ^c_{ab}` at `pt`, as `gamma[c][(a, b)]`.
pub fn christoffels(g: &CoordinateMetric, pt: &[f64]) -> Result<Vec<DMatrix<f64>>, CoordError> {
    let data = LocalData::new(g, &TorsionDescriptor::zero(), pt, 1)?;
    let d = data.d;
    Ok((0..d).map(|c| DMatrix::from_fn(d, d, |a, b| data.js.value(&data.lc[data.idx3(c, a, b)]))).collect())
}

/// Christoffel symbols from central differences of the metric with one
/// Richardson step. Only used as an independent oracle.
pub fn christoffels_fd(g: &CoordinateMetric, pt: &[f64], step: f64) -> Result<Vec<DMatrix<f64>>, CoordError> {
    let d = g.dim();
    let central = |c: usize, h: f64| -> DMatrix<f64> {
        let mut plus = pt.to_vec();
        let mut minus = pt.to_vec();
        plus[c] += h;
        minus[c] -= h;
        (g.matrix_at(&plus) - g.matrix_at(&minus)) / (2.0 * h)
    };
    let dg: Vec<DMatrix<f64>> = (0..d).map(|c| (central(c, step / 2.0) * 4.0 - central(c, step)) / 3.0).collect();
    let ginv = g.matrix_at(pt).try_inverse().ok_or(CoordError::SingularMetric)?;
    Ok((0..d)
        .map(|c| {
            DMatrix::from_fn(d, d, |a, b| {
                (0..d).map(|l| 0.5 * ginv[(c, l)] * (dg[a][(l, b)] + dg[b][(l, a)] - dg[l][(a, b)])).sum()
            })
        })
        .collect())
}

/// Curvature endomorphisms `R(∂_a, ∂_b)` of `∇ = ∇^g + ½T` at a point.
#[derive(Clone, Debug)]
pub struct NumericCurvature {
    pub dim: usize,
    /// `values[a * dim + b]`, entry `(e, c)` is the `∂_e`-component of `R(∂_a,∂_b)∂_c`
    pub values: Vec<DMatrix<f64>>,
    pub metric: DMatrix<f64>,
}

impl NumericCurvature {
    pub fn get(&self, a: usize, b: usize) -> &DMatrix<f64> {
        &self.values[a * self.dim + b]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|m| m.amax()).fold(0.0, f64::max)
    }
}

fn endos_from(js: &JetSpace, r: &[Jet], d: usize, lead: usize) -> Vec<DMatrix<f64>> {
    // layout (e, c, rest…) after `lead` covariant-derivative slots in front
    let block = d.pow(4);
    let mut out = Vec::new();
    for prefix in 0..d.pow(lead as u32) {
        let base = prefix * block;
        for a in 0..d {
            for b in 0..d {
                out.push(DMatrix::from_fn(d, d, |e, c| js.value(&r[base + ((e * d + c) * d + a) * d + b])));
            }
        }
    }
    out
}

pub fn curvature_at(g: &CoordinateMetric, t: &TorsionDescriptor, pt: &[f64]) -> Result<NumericCurvature, CoordError> {
    let data = LocalData::new(g, t, pt, 2)?;
    let r = data.curvature();
    Ok(NumericCurvature { dim: data.d, values: endos_from(&data.js, &r, data.d, 0), metric: data.g0.clone() })
}

/// Max-norm of `∇T` at `pt`.
pub fn nabla_t_residual(g: &CoordinateMetric, t: &TorsionDescriptor, pt: &[f64]) -> Result<f64, CoordError> {
    if t.is_zero() {
        return Ok(0.0);
    }
    let data = LocalData::new(g, t, pt, 1)?;
    let nt = data.covariant(&data.torsion, &[false; 3]);
    Ok(nt.iter().map(|j| data.js.value(j).abs()).fold(0.0, f64::max))
}

/// `R`, `∇R` and `∇²R` at `pt` as endomorphisms.
pub(crate) fn curvature_jets(g: &CoordinateMetric, t: &TorsionDescriptor, pt: &[f64]) -> Result<(Vec<DMatrix<f64>>, DMatrix<f64>), CoordError> {
    let data = LocalData::new(g, t, pt, 4)?;
    let r = data.curvature();
    let dr = data.covariant(&r, &[true, false, false, false]);
    let ddr = data.covariant(&dr, &[false, true, false, false, false]);
    let mut out = endos_from(&data.js, &r, data.d, 0);
    out.extend(endos_from(&data.js, &dr, data.d, 1));
    out.extend(endos_from(&data.js, &ddr, data.d, 2));
    Ok((out, data.g0))
}
