use nalgebra::DMatrix;

use super::jet::{Jet, JetSpace};
use super::CoordError;

/// Polynomial in the coordinates `v, x^1, …, x^n, u`, as `(exponents, coefficient)` terms.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Poly {
    pub terms: Vec<(Vec<u32>, f64)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: f64) -> Self {
        Poly { terms: vec![(Vec::new(), c)] }
    }

    /// `c · y_v^e`
    pub fn monomial(c: f64, v: usize, e: u32) -> Self {
        let mut exps = vec![0; v + 1];
        exps[v] = e;
        Poly { terms: vec![(exps, c)] }
    }

    pub fn plus(mut self, other: Poly) -> Self {
        self.terms.extend(other.terms);
        self
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(e, c)| *c == 0.0 || e.iter().all(|&x| x == 0))
    }

    pub fn eval(&self, pt: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c * e.iter().enumerate().map(|(v, &k)| pt[v].powi(k as i32)).product::<f64>())
            .sum()
    }

    pub(crate) fn jet(&self, js: &JetSpace, pt: &[f64]) -> Jet {
        let mut out = js.zero();
        for (exps, c) in &self.terms {
            let mut term = js.constant(*c);
            for (v, &k) in exps.iter().enumerate() {
                let y = js.variable(v, pt[v]);
                for _ in 0..k {
                    term = js.mul(&term, &y);
                }
            }
            out = js.add(&out, &term);
        }
        out
    }

    fn max_var(&self) -> Option<usize> {
        self.terms.iter().filter_map(|(e, _)| e.iter().rposition(|&k| k > 0)).max()
    }
}

/// Walker-type metric `2 dv du + h + 2A du + H du²` on `ℝ^{n+2}` with
/// coordinates ordered `v, x^1, …, x^n, u`.
#[derive(Clone, Debug, PartialEq)]
pub enum CoordinateMetric {
    /// `h = Σ (dx^i)²`, `A = 0`.
    PpWave { n: usize, h: Poly },
    /// `H(x,u) = A(e^{-uF}x, e^{-uF}x)` with `A` symmetric and `F` skew.
    PlaneWave { a: DMatrix<f64>, f: DMatrix<f64> },
    WalkerGeneral { n: usize, h: Vec<Vec<Poly>>, a: Vec<Poly>, hh: Poly },
}

impl CoordinateMetric {
    pub fn pp_wave(n: usize, h: Poly) -> Result<Self, CoordError> {
        let m = CoordinateMetric::PpWave { n, h };
        m.check()?;
        Ok(m)
    }

    pub fn plane_wave(a: DMatrix<f64>, f: DMatrix<f64>) -> Result<Self, CoordError> {
        let m = CoordinateMetric::PlaneWave { a, f };
        m.check()?;
        Ok(m)
    }

    pub fn walker(h: Vec<Vec<Poly>>, a: Vec<Poly>, hh: Poly) -> Result<Self, CoordError> {
        let m = CoordinateMetric::WalkerGeneral { n: a.len(), h, a, hh };
        m.check()?;
        Ok(m)
    }

    /// Fiber dimension `n`.
    pub fn n(&self) -> usize {
        match self {
            CoordinateMetric::PpWave { n, .. } | CoordinateMetric::WalkerGeneral { n, .. } => *n,
            CoordinateMetric::PlaneWave { a, .. } => a.nrows(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n() + 2
    }

    fn check(&self) -> Result<(), CoordError> {
        let n = self.n();
        let bad = |msg: &str| Err(CoordError::InvalidMetric(msg.to_string()));
        match self {
            CoordinateMetric::PpWave { h, .. } => {
                if h.max_var().is_some_and(|v| v > n + 1) {
                    return bad("H uses a variable beyond u");
                }
            }
            CoordinateMetric::PlaneWave { a, f } => {
                if !a.is_square() || f.shape() != a.shape() {
                    return bad("A and F must be square of the same size");
                }
                if (a - a.transpose()).amax() > 0.0 {
                    return bad("A must be symmetric");
                }
                if (f + f.transpose()).amax() > 0.0 {
                    return bad("F must be skew-symmetric");
                }
            }
            CoordinateMetric::WalkerGeneral { h, a, hh, .. } => {
                if h.len() != n || h.iter().any(|r| r.len() != n) {
                    return bad("h must be n × n");
                }
                for i in 0..n {
                    for j in 0..n {
                        if h[i][j] != h[j][i] {
                            return bad("h must be symmetric");
                        }
                    }
                }
                let vars = h.iter().flatten().chain(a).chain(std::iter::once(hh)).filter_map(Poly::max_var).max();
                if vars.is_some_and(|v| v > n + 1) {
                    return bad("coefficients use a variable beyond u");
                }
            }
        }
        Ok(())
    }

    /// Metric components as jets about `pt`.
    pub(crate) fn jets(&self, js: &JetSpace, pt: &[f64]) -> Vec<Vec<Jet>> {
        let d = self.dim();
        let n = self.n();
        let u = n + 1;
        let mut g: Vec<Vec<Jet>> = (0..d).map(|_| (0..d).map(|_| js.zero()).collect()).collect();
        g[0][u] = js.constant(1.0);
        g[u][0] = js.constant(1.0);
        match self {
            CoordinateMetric::PpWave { h, .. } => {
                for i in 1..=n {
                    g[i][i] = js.constant(1.0);
                }
                g[u][u] = h.jet(js, pt);
            }
            CoordinateMetric::PlaneWave { a, f } => {
                for i in 1..=n {
                    g[i][i] = js.constant(1.0);
                }
                g[u][u] = plane_wave_h(js, a, f, pt);
            }
            CoordinateMetric::WalkerGeneral { h, a, hh, .. } => {
                for i in 0..n {
                    for j in 0..n {
                        g[i + 1][j + 1] = h[i][j].jet(js, pt);
                    }
                    g[i + 1][u] = a[i].jet(js, pt);
                    g[u][i + 1] = g[i + 1][u].clone();
                }
                g[u][u] = hh.jet(js, pt);
            }
        }
        g
    }

    /// The metric matrix at `pt`.
    pub fn matrix_at(&self, pt: &[f64]) -> DMatrix<f64> {
        let js = JetSpace::new(self.dim(), 0);
        let g = self.jets(&js, pt);
        DMatrix::from_fn(self.dim(), self.dim(), |i, j| js.value(&g[i][j]))
    }
}

/// `H = xᵀ M(u) x` with `M(u) = EᵀAE`, `E = e^{-uF}`; the `u`-derivatives are
/// `M^{(r)} = Eᵀ C_r E` with `C_0 = A`, `C_{r+1} = F C_r - C_r F`.
fn plane_wave_h(js: &JetSpace, a: &DMatrix<f64>, f: &DMatrix<f64>, pt: &[f64]) -> Jet {
    let n = a.nrows();
    let uvar = n + 1;
    let e = (f * -pt[uvar]).exp();
    let mut c = a.clone();
    let mut derivs = Vec::new();
    for _ in 0..=js.order() {
        derivs.push(e.transpose() * &c * &e);
        c = f * &c - &c * f;
    }
    let x: Vec<Jet> = (0..n).map(|i| js.variable(i + 1, pt[i + 1])).collect();
    let mut h = js.zero();
    for i in 0..n {
        for j in 0..n {
            let mij: Vec<f64> = derivs.iter().map(|m| m[(i, j)]).collect();
            let mj = js.univariate(uvar, &mij);
            h = js.add(&h, &js.mul(&js.mul(&x[i], &x[j]), &mj));
        }
    }
    h
}

/// Parallel skew torsion data.
#[derive(Clone, Debug, PartialEq)]
pub enum TorsionDescriptor {
    /// `T = du∧ω` with `ω = 2 Σ_{i<j} ω_ij dx^i∧dx^j`, given as the full skew table.
    DuWedge { omega: Vec<Vec<Poly>> },
    /// Components `T_{abc}`, `a < b < c`, of a 3-form.
    General { components: Vec<([usize; 3], Poly)> },
}

impl TorsionDescriptor {
    pub fn zero() -> Self {
        TorsionDescriptor::General { components: Vec::new() }
    }

    pub fn constant(omega: &DMatrix<f64>) -> Result<Self, CoordError> {
        let n = omega.nrows();
        let table = (0..n).map(|i| (0..n).map(|j| Poly::constant(omega[(i, j)])).collect()).collect();
        Self::du_wedge(table)
    }

    pub fn du_wedge(omega: Vec<Vec<Poly>>) -> Result<Self, CoordError> {
        let n = omega.len();
        if omega.iter().any(|r| r.len() != n) {
            return Err(CoordError::InvalidTorsion("ω must be square".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let neg = Poly { terms: omega[j][i].terms.iter().map(|(e, c)| (e.clone(), -c)).collect() };
                if !same_poly(&omega[i][j], &neg) {
                    return Err(CoordError::InvalidTorsion("ω_ij = -ω_ji fails".into()));
                }
            }
        }
        Ok(TorsionDescriptor::DuWedge { omega })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            TorsionDescriptor::DuWedge { omega } => omega.iter().flatten().all(|p| p.terms.iter().all(|(_, c)| *c == 0.0)),
            TorsionDescriptor::General { components } => components.iter().all(|(_, p)| p.terms.iter().all(|(_, c)| *c == 0.0)),
        }
    }

    /// Fully skew lowered components `T_{abc}` as jets, flattened `a·d² + b·d + c`.
    pub(crate) fn jets(&self, js: &JetSpace, d: usize, pt: &[f64]) -> Result<Vec<Jet>, CoordError> {
        let mut t = vec![js.zero(); d * d * d];
        let mut put = |a: usize, b: usize, c: usize, val: &Jet| {
            for (x, y, z, s) in [(a, b, c, 1.0), (b, c, a, 1.0), (c, a, b, 1.0), (b, a, c, -1.0), (a, c, b, -1.0), (c, b, a, -1.0)] {
                js.axpy(&mut t[x * d * d + y * d + z], s, val);
            }
        };
        match self {
            TorsionDescriptor::DuWedge { omega } => {
                let n = omega.len();
                if n + 2 != d {
                    return Err(CoordError::DimensionMismatch { expected: d - 2, found: n });
                }
                for i in 0..n {
                    for j in i + 1..n {
                        let w = omega[i][j].jet(js, pt);
                        put(d - 1, i + 1, j + 1, &js.scale(2.0, &w));
                    }
                }
            }
            TorsionDescriptor::General { components } => {
                for ([a, b, c], p) in components {
                    if *a.max(b).max(c) >= d || a == b || b == c || a == c {
                        return Err(CoordError::InvalidTorsion(format!("bad index triple ({a}, {b}, {c})")));
                    }
                    put(*a, *b, *c, &p.jet(js, pt));
                }
            }
        }
        Ok(t)
    }
}

fn same_poly(a: &Poly, b: &Poly) -> bool {
    let len = a.max_var().max(b.max_var()).map_or(1, |v| v + 1);
    let probe: Vec<Vec<f64>> = (0..6).map(|s| (0..len).map(|v| 0.37 + (0.11 * (s * len + v) as f64) % 1.3).collect()).collect();
    let scale = a.terms.iter().chain(&b.terms).map(|(_, c)| c.abs()).fold(1.0, f64::max);
    probe.iter().all(|p| (a.eval(p) - b.eval(p)).abs() <= 1e-12 * scale)
}
