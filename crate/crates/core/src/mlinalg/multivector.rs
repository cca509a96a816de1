use super::scalar::{zero, Scalar};
use super::space::{same_space, Space};
use super::AlgebraError;
use num::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// Highest grade stored; the 4-form of a torsion is the largest object needed.
pub const MAX_GRADE: usize = 4;

/// Element of `Λ^k V` stored on strictly increasing index tuples of the
/// space's basis. Forms are identified with multivectors through the metric,
/// with the determinant pairing `(a∧b)(X,Y) = g(a,X)g(b,Y) - g(b,X)g(a,Y)`.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiVector {
    space: Space,
    grade: usize,
    coeffs: BTreeMap<Vec<usize>, Scalar>,
}

impl fmt::Debug for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Sorts `idx` in place and returns the permutation sign, or `None` if an
/// index repeats.
pub fn sort_with_sign(idx: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

/// All strictly increasing `k`-tuples from `0..n`.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

impl MultiVector {
    pub fn zero(space: &Space, grade: usize) -> Result<Self, AlgebraError> {
        if grade > MAX_GRADE {
            return Err(AlgebraError::RankError(grade));
        }
        Ok(MultiVector { space: space.clone(), grade, coeffs: BTreeMap::new() })
    }

    pub fn scalar(space: &Space, c: Scalar) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(Vec::new(), c);
        }
        MultiVector { space: space.clone(), grade: 0, coeffs: m }
    }

    pub fn vector(space: &Space, v: &[Scalar]) -> Self {
        assert_eq!(v.len(), space.dim());
        let coeffs = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (vec![i], c.clone()))
            .collect();
        MultiVector { space: space.clone(), grade: 1, coeffs }
    }

    /// Basis blade `e_{i_1} ∧ ... ∧ e_{i_k}` in any index order.
    pub fn blade(space: &Space, indices: &[usize]) -> Result<Self, AlgebraError> {
        let mut m = Self::zero(space, indices.len())?;
        m.add_term(indices, super::scalar::one());
        Ok(m)
    }

    /// Blade from basis labels, e.g. `["p", "e1", "q"]`.
    pub fn blade_by_labels(space: &Space, labels: &[&str]) -> Result<Self, AlgebraError> {
        let idx: Option<Vec<usize>> = labels.iter().map(|l| space.index_of(l)).collect();
        let idx = idx.ok_or_else(|| AlgebraError::UnknownLabel(labels.join(",")))?;
        Self::blade(space, &idx)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of the blade with the given indices in any order.
    pub fn coeff(&self, indices: &[usize]) -> Scalar {
        let mut idx = indices.to_vec();
        match sort_with_sign(&mut idx) {
            None => zero(),
            Some(s) => match self.coeffs.get(&idx) {
                None => zero(),
                Some(c) => {
                    if s < 0 {
                        -c.clone()
                    } else {
                        c.clone()
                    }
                }
            },
        }
    }

    /// Adds `c · e_{indices}`; repeated indices contribute nothing.
    pub fn add_term(&mut self, indices: &[usize], c: Scalar) {
        assert_eq!(indices.len(), self.grade, "blade grade mismatch");
        if c.is_zero() {
            return;
        }
        let mut idx = indices.to_vec();
        let Some(s) = sort_with_sign(&mut idx) else { return };
        let c = if s < 0 { -c } else { c };
        let entry = self.coeffs.entry(idx.clone()).or_insert_with(zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&idx);
        }
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if !same_space(&self.space, &other.space) {
            return Err(AlgebraError::SpaceMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        if self.grade != other.grade {
            return Err(AlgebraError::GradeError { expected: self.grade, found: other.grade });
        }
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_term(k, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.scale(&-super::scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return MultiVector { space: self.space.clone(), grade: self.grade, coeffs: BTreeMap::new() };
        }
        MultiVector {
            space: self.space.clone(),
            grade: self.grade,
            coeffs: self.coeffs.iter().map(|(k, v)| (k.clone(), v * s)).collect(),
        }
    }

    /// Exterior product. Grades beyond the dimension give zero.
    pub fn wedge(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let g = self.grade + other.grade;
        if g > self.space.dim() {
            return Ok(MultiVector { space: self.space.clone(), grade: g.min(MAX_GRADE), coeffs: BTreeMap::new() });
        }
        let mut out = Self::zero(&self.space, g)?;
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                let mut idx = a.clone();
                idx.extend(b);
                out.add_term(&idx, ca * cb);
            }
        }
        Ok(out)
    }

    /// Metric contraction of `v` into the first slot.
    pub fn interior(&self, v: &[Scalar]) -> Result<Self, AlgebraError> {
        if self.grade == 0 {
            return Err(AlgebraError::GradeError { expected: 1, found: 0 });
        }
        let gv = self.space.flat(v);
        let mut out = Self::zero(&self.space, self.grade - 1)?;
        for (idx, c) in &self.coeffs {
            for (pos, &i) in idx.iter().enumerate() {
                if gv[i].is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(pos);
                let mut coef = c * &gv[i];
                if pos % 2 == 1 {
                    coef = -coef;
                }
                out.add_term(&rest, coef);
            }
        }
        Ok(out)
    }

    /// Grade-1 multivector as a coordinate vector.
    pub fn as_vector(&self) -> Result<Vec<Scalar>, AlgebraError> {
        if self.grade != 1 {
            return Err(AlgebraError::GradeError { expected: 1, found: self.grade });
        }
        let mut v = self.space.zero_vector();
        for (k, c) in &self.coeffs {
            v[k[0]] = c.clone();
        }
        Ok(v)
    }

    /// Value of the associated form on `args` (one vector per slot).
    pub fn eval(&self, args: &[&[Scalar]]) -> Scalar {
        assert_eq!(args.len(), self.grade);
        let lowered: Vec<Vec<Scalar>> = args.iter().map(|a| self.space.flat(a)).collect();
        let mut total = zero();
        for (idx, c) in &self.coeffs {
            let mut m = super::matrix::QMatrix::zeros(self.grade, self.grade);
            for (r, &i) in idx.iter().enumerate() {
                for (s, l) in lowered.iter().enumerate() {
                    m[(r, s)] = l[i].clone();
                }
            }
            let d = m.determinant();
            if !d.is_zero() {
                total += c * d;
            }
        }
        total
    }

    /// Covariant components `α(e_{i_1}, ..., e_{i_k})` on increasing tuples.
    pub fn lowered(&self) -> BTreeMap<Vec<usize>, Scalar> {
        let n = self.space.dim();
        let mut out = BTreeMap::new();
        for idx in combinations(n, self.grade) {
            let args: Vec<Vec<Scalar>> = idx.iter().map(|&i| self.space.basis_vector(i)).collect();
            let refs: Vec<&[Scalar]> = args.iter().map(|a| a.as_slice()).collect();
            let v = self.eval(&refs);
            if !v.is_zero() {
                out.insert(idx, v);
            }
        }
        out
    }

    /// Multivector whose form has the given covariant components on
    /// increasing tuples.
    pub fn from_lowered(space: &Space, grade: usize, comps: &BTreeMap<Vec<usize>, Scalar>) -> Result<Self, AlgebraError> {
        let n = space.dim();
        let gi = space.metric_inverse();
        let mut out = Self::zero(space, grade)?;
        for blade in combinations(n, grade) {
            let mut c = zero();
            for (idx, v) in comps {
                let mut m = super::matrix::QMatrix::zeros(grade, grade);
                for (r, &a) in blade.iter().enumerate() {
                    for (s, &b) in idx.iter().enumerate() {
                        m[(r, s)] = gi[(a, b)].clone();
                    }
                }
                let d = m.determinant();
                if !d.is_zero() {
                    c += v * d;
                }
            }
            out.add_term(&blade, c);
        }
        Ok(out)
    }

    /// Coefficients on all increasing tuples, zeros included.
    pub fn dense(&self) -> Vec<Scalar> {
        combinations(self.space.dim(), self.grade).iter().map(|k| self.coeff(k)).collect()
    }

    pub fn from_dense(space: &Space, grade: usize, values: &[Scalar]) -> Result<Self, AlgebraError> {
        let mut m = Self::zero(space, grade)?;
        for (k, v) in combinations(space.dim(), grade).iter().zip(values) {
            m.add_term(k, v.clone());
        }
        Ok(m)
    }

    /// Human-readable form such as `2 p∧e1 - 1/2 e2∧q`.
    pub fn render(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let labels = self.space.labels();
        let mut parts = Vec::new();
        for (idx, c) in &self.coeffs {
            let blade = if idx.is_empty() {
                String::new()
            } else {
                idx.iter().map(|&i| labels[i].as_str()).collect::<Vec<_>>().join("∧")
            };
            let cs = super::scalar::fmt_scalar(c);
            parts.push(match (cs.as_str(), blade.is_empty()) {
                (_, true) => cs,
                ("1", false) => blade,
                ("-1", false) => format!("-{blade}"),
                _ => format!("{cs} {blade}"),
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}
