use super::matrix::QMatrix;
use super::scalar::{one, zero, Scalar};
use super::AlgebraError;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FrameKind {
    Witt,
    Orthonormal,
    General,
}

impl FrameKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            FrameKind::Witt => "witt",
            FrameKind::Orthonormal => "orthonormal",
            FrameKind::General => "general",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "witt" => Some(FrameKind::Witt),
            "orthonormal" => Some(FrameKind::Orthonormal),
            "general" => Some(FrameKind::General),
            _ => None,
        }
    }
}

/// A real vector space with a nondegenerate symmetric bilinear form given
/// on an explicit basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoEuclideanSpace {
    metric: QMatrix,
    inverse: QMatrix,
    labels: Vec<String>,
    frame: FrameKind,
}

pub type Space = Arc<PseudoEuclideanSpace>;

impl PseudoEuclideanSpace {
    pub fn new(metric: QMatrix, labels: Vec<String>, frame: FrameKind) -> Result<Space, AlgebraError> {
        if !metric.is_symmetric() {
            return Err(AlgebraError::InvalidMetric("metric is not symmetric".into()));
        }
        if labels.len() != metric.rows() {
            return Err(AlgebraError::InvalidMetric(format!(
                "{} labels for a {}-dimensional metric",
                labels.len(),
                metric.rows()
            )));
        }
        let inverse = metric
            .inverse()
            .ok_or_else(|| AlgebraError::InvalidMetric("metric is degenerate".into()))?;
        if frame == FrameKind::Witt {
            check_witt(&metric)?;
        }
        if frame == FrameKind::Orthonormal {
            let n = metric.rows();
            let ok = (0..n).all(|i| {
                (0..n).all(|j| {
                    let x = &metric[(i, j)];
                    if i == j {
                        *x == one() || *x == -one()
                    } else {
                        *x == zero()
                    }
                })
            });
            if !ok {
                return Err(AlgebraError::InvalidMetric("orthonormal frame needs a diagonal ±1 metric".into()));
            }
        }
        Ok(Arc::new(PseudoEuclideanSpace { metric, inverse, labels, frame }))
    }

    /// Witt basis `p, e_1..e_n, q` of the Minkowski space of dimension `n + 2`.
    pub fn witt(n: usize) -> Space {
        let d = n + 2;
        let mut g = QMatrix::zeros(d, d);
        g[(0, d - 1)] = one();
        g[(d - 1, 0)] = one();
        for i in 1..=n {
            g[(i, i)] = one();
        }
        let mut labels = vec!["p".to_string()];
        labels.extend((1..=n).map(|i| format!("e{i}")));
        labels.push("q".into());
        Self::new(g, labels, FrameKind::Witt).expect("witt metric")
    }

    /// Diagonal ±1 metric; `signs[i] < 0` marks a timelike basis vector.
    pub fn orthonormal(signs: &[i64], labels: Option<Vec<String>>) -> Space {
        let d = signs.len();
        let mut g = QMatrix::zeros(d, d);
        for (i, &s) in signs.iter().enumerate() {
            g[(i, i)] = if s < 0 { -one() } else { one() };
        }
        let labels = labels.unwrap_or_else(|| (1..=d).map(|i| format!("e{i}")).collect());
        Self::new(g, labels, FrameKind::Orthonormal).expect("orthonormal metric")
    }

    /// Euclidean space of dimension `d`.
    pub fn euclidean(d: usize) -> Space {
        Self::orthonormal(&vec![1; d], None)
    }

    pub fn dim(&self) -> usize {
        self.metric.rows()
    }

    pub fn metric(&self) -> &QMatrix {
        &self.metric
    }

    pub fn metric_inverse(&self) -> &QMatrix {
        &self.inverse
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn frame(&self) -> FrameKind {
        self.frame
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `(positive, negative)` counts of the metric.
    pub fn signature(&self) -> (usize, usize) {
        let (p, n, _) = self.metric.inertia();
        (p, n)
    }

    pub fn is_lorentzian(&self) -> bool {
        self.signature().1 == 1
    }

    pub fn inner(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let gy = self.metric.mul_vec(y);
        x.iter().zip(&gy).fold(zero(), |acc, (a, b)| acc + a * b)
    }

    /// Lowers the index of a vector.
    pub fn flat(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.metric.mul_vec(x)
    }

    /// Raises the index of a covector.
    pub fn sharp(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.inverse.mul_vec(x)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        super::matrix::vec_ops::basis(self.dim(), i)
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vec![zero(); self.dim()]
    }

    /// Orthogonal direct sum with the basis of `self` first.
    pub fn direct_sum(a: &Space, b: &Space) -> Space {
        let (n, m) = (a.dim(), b.dim());
        let mut g = QMatrix::zeros(n + m, n + m);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = a.metric[(i, j)].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                g[(n + i, n + j)] = b.metric[(i, j)].clone();
            }
        }
        let mut labels = a.labels.clone();
        labels.extend(b.labels.iter().cloned());
        let frame = if a.frame == FrameKind::Orthonormal && b.frame == FrameKind::Orthonormal {
            FrameKind::Orthonormal
        } else {
            FrameKind::General
        };
        Self::new(g, labels, frame).expect("direct sum of nondegenerate spaces")
    }
}

fn check_witt(g: &QMatrix) -> Result<(), AlgebraError> {
    let d = g.rows();
    if d < 2 {
        return Err(AlgebraError::InvalidMetric("witt frame needs dimension at least 2".into()));
    }
    for i in 0..d {
        for j in 0..d {
            let expect = if (i == 0 && j == d - 1) || (i == d - 1 && j == 0) || (i == j && i > 0 && i < d - 1) {
                one()
            } else {
                zero()
            };
            if g[(i, j)] != expect {
                return Err(AlgebraError::InvalidMetric(format!("entry ({i},{j}) violates the witt pattern")));
            }
        }
    }
    Ok(())
}

/// Whether two handles denote the same space.
pub fn same_space(a: &Space, b: &Space) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_signature() {
        let s = PseudoEuclideanSpace::witt(3);
        assert_eq!(s.signature(), (4, 1));
        assert_eq!(s.labels()[0], "p");
        assert_eq!(s.labels()[4], "q");
        assert!(s.is_lorentzian());
    }

    #[test]
    fn bad_witt_rejected() {
        let g = QMatrix::identity(3);
        let err = PseudoEuclideanSpace::new(g, vec!["p".into(), "e1".into(), "q".into()], FrameKind::Witt);
        assert!(err.is_err());
    }

    #[test]
    fn degenerate_rejected() {
        let g = QMatrix::zeros(2, 2);
        assert!(PseudoEuclideanSpace::new(g, vec!["a".into(), "b".into()], FrameKind::General).is_err());
    }
}
