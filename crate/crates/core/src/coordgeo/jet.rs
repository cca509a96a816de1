//! Truncated multivariate Taylor expansions.

use std::collections::HashMap;

/// Monomial bookkeeping for jets in `nvars` variables up to total degree `order`.
#[derive(Debug)]
pub struct JetSpace {
    order: usize,
    degree: Vec<usize>,
    /// `(i, j, k)` with `m_i · m_j = m_k`, sorted by the degree of `m_k`.
    products: Vec<(usize, usize, usize)>,
    /// number of entries of `products` whose target has degree `≤ d`
    product_prefix: Vec<usize>,
    /// per variable: `(source, target, factor)` for `∂/∂y_v`
    derivs: Vec<Vec<(usize, usize, f64)>>,
    /// index of each single variable `y_v`
    linear: Vec<usize>,
}

/// Taylor coefficients `Σ c_α y^α`, valid up to total degree `order`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    pub order: usize,
    pub coeffs: Vec<f64>,
}

impl JetSpace {
    pub fn new(nvars: usize, order: usize) -> Self {
        let mut monos: Vec<Vec<u8>> = vec![vec![0; nvars]];
        let mut frontier = monos.clone();
        for _ in 0..order {
            let mut next = Vec::new();
            for m in &frontier {
                let last = m.iter().rposition(|&e| e > 0).unwrap_or(0);
                for v in last..nvars {
                    let mut n = m.clone();
                    n[v] += 1;
                    next.push(n);
                }
            }
            monos.extend(next.iter().cloned());
            frontier = next;
        }
        let index: HashMap<Vec<u8>, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let degree: Vec<usize> = monos.iter().map(|m| m.iter().map(|&e| e as usize).sum()).collect();

        let mut products = Vec::new();
        for (i, a) in monos.iter().enumerate() {
            for (j, b) in monos.iter().enumerate() {
                if degree[i] + degree[j] <= order {
                    let s: Vec<u8> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                    products.push((i, j, index[&s]));
                }
            }
        }
        products.sort_by_key(|&(_, _, k)| degree[k]);
        let product_prefix = (0..=order).map(|d| products.iter().filter(|&&(_, _, k)| degree[k] <= d).count()).collect();

        let derivs = (0..nvars)
            .map(|v| {
                monos
                    .iter()
                    .enumerate()
                    .filter(|(_, m)| m[v] > 0)
                    .map(|(src, m)| {
                        let mut t = m.clone();
                        t[v] -= 1;
                        (src, index[&t], m[v] as f64)
                    })
                    .collect()
            })
            .collect();
        let linear = (0..nvars)
            .map(|v| {
                let mut m = vec![0u8; nvars];
                m[v] = 1;
                index.get(&m).copied().unwrap_or(usize::MAX)
            })
            .collect();
        JetSpace { order, degree, products, product_prefix, derivs, linear }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn len(&self) -> usize {
        self.degree.len()
    }

    pub fn constant(&self, c: f64) -> Jet {
        let mut coeffs = vec![0.0; self.len()];
        coeffs[0] = c;
        Jet { order: self.order, coeffs }
    }

    pub fn zero(&self) -> Jet {
        self.constant(0.0)
    }

    /// The coordinate function `y_v + at`.
    pub fn variable(&self, v: usize, at: f64) -> Jet {
        let mut j = self.constant(at);
        if self.order > 0 {
            j.coeffs[self.linear[v]] = 1.0;
        }
        j
    }

    /// Univariate expansion in `y_v` from the derivatives `f, f', f'', …` at the base point.
    pub fn univariate(&self, v: usize, derivs: &[f64]) -> Jet {
        let mut out = self.zero();
        let mut power = self.constant(1.0);
        let mut fact = 1.0;
        let y = self.variable(v, 0.0);
        for (r, d) in derivs.iter().enumerate().take(self.order + 1) {
            if r > 0 {
                fact *= r as f64;
                power = self.mul(&power, &y);
            }
            self.axpy(&mut out, d / fact, &power);
        }
        out
    }

    pub fn add(&self, a: &Jet, b: &Jet) -> Jet {
        let order = a.order.min(b.order);
        Jet { order, coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }

    pub fn scale(&self, s: f64, a: &Jet) -> Jet {
        Jet { order: a.order, coeffs: a.coeffs.iter().map(|x| s * x).collect() }
    }

    /// `acc += s · a`
    pub fn axpy(&self, acc: &mut Jet, s: f64, a: &Jet) {
        acc.order = acc.order.min(a.order);
        for (x, y) in acc.coeffs.iter_mut().zip(&a.coeffs) {
            *x += s * y;
        }
    }

    pub fn mul(&self, a: &Jet, b: &Jet) -> Jet {
        let order = a.order.min(b.order);
        let mut coeffs = vec![0.0; self.len()];
        for &(i, j, k) in &self.products[..self.product_prefix[order]] {
            coeffs[k] += a.coeffs[i] * b.coeffs[j];
        }
        Jet { order, coeffs }
    }

    /// `acc += s · a · b`
    pub fn fma(&self, acc: &mut Jet, s: f64, a: &Jet, b: &Jet) {
        let order = acc.order.min(a.order).min(b.order);
        acc.order = order;
        for &(i, j, k) in &self.products[..self.product_prefix[order]] {
            acc.coeffs[k] += s * a.coeffs[i] * b.coeffs[j];
        }
    }

    /// `∂a/∂y_v`, one order lower.
    pub fn diff(&self, a: &Jet, v: usize) -> Jet {
        let order = a.order.saturating_sub(1);
        let mut coeffs = vec![0.0; self.len()];
        for &(src, dst, f) in &self.derivs[v] {
            if self.degree[dst] <= order {
                coeffs[dst] += f * a.coeffs[src];
            }
        }
        if a.order == 0 {
            coeffs.iter_mut().for_each(|c| *c = 0.0);
        }
        Jet { order, coeffs }
    }

    pub fn value(&self, a: &Jet) -> f64 {
        a.coeffs[0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_derivative() {
        let s = JetSpace::new(2, 3);
        let x = s.variable(0, 1.0);
        let y = s.variable(1, 2.0);
        // f = x^2 y at (1, 2): f = 2, f_x = 4, f_y = 1, f_xy = 2
        let f = s.mul(&s.mul(&x, &x), &y);
        assert_eq!(s.value(&f), 2.0);
        assert_eq!(s.value(&s.diff(&f, 0)), 4.0);
        assert_eq!(s.value(&s.diff(&f, 1)), 1.0);
        assert_eq!(s.value(&s.diff(&s.diff(&f, 0), 1)), 2.0);
        assert_eq!(s.diff(&s.diff(&f, 0), 1).order, 1);
    }

    #[test]
    fn univariate_exponential() {
        let s = JetSpace::new(1, 4);
        let e = s.univariate(0, &[1.0; 5]);
        let d = s.diff(&s.diff(&e, 0), 0);
        assert!((s.value(&d) - 1.0).abs() < 1e-15);
        assert_eq!(s.len(), 5);
    }
}
