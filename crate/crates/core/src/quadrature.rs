//! Gauss quadrature rules used for the continuous families.

use crate::error::{Error, Result};

/// Gauss-Legendre rule on `[-1, 1]`.
///
/// An `n`-point rule integrates polynomials of degree `2n - 1` exactly; for
/// smooth integrands the error decays spectrally, which keeps all quadrature
/// results in this crate deterministic and far below the stated tolerances.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds an `n`-point rule by Newton iteration on the Legendre roots.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "quadrature rule needs at least one node".into(),
            ));
        }
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n {
            // Tricomi initial guess for the i-th root (decreasing order).
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, pm1) = legendre_pair(n, x);
                dp = n as f64 * (x * p - pm1) / (x * x - 1.0);
                let step = p / dp;
                x -= step;
                if step.abs() < 1e-15 {
                    break;
                }
            }
            let (_, _) = legendre_pair(n, x);
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        Ok(Self { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Integrates `f` over `[-1, 1]`.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    /// Integrates `f` over `[a, b]` by an affine change of variables.
    pub fn integrate_over<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        half * self.integrate(|t| f(mid + half * t))
    }
}

/// Returns `(P_n(x), P_{n-1}(x))` by the three-term recurrence.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut pm1 = 1.0;
    let mut p = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let next = ((2 * k + 1) as f64 * x * p - k as f64 * pm1) / (k + 1) as f64;
        pm1 = p;
        p = next;
    }
    (p, pm1)
}

/// Gauss-Chebyshev integration of `f` against the weight `(1-x^2)^{-1/2}`
/// over `[-1, 1]`, using `n` nodes. Exact for polynomial `f` of degree
/// `2n - 1`.
pub fn gauss_chebyshev<F: FnMut(f64) -> f64>(n: usize, mut f: F) -> f64 {
    let pi = std::f64::consts::PI;
    let scale = pi / n as f64;
    (0..n)
        .map(|k| f((scale * (k as f64 + 0.5)).cos()))
        .sum::<f64>()
        * scale
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_measure_of_interval() {
        for n in [1, 2, 5, 16, 64] {
            let q = GaussLegendre::new(n).unwrap();
            let total: f64 = q.weights().iter().sum();
            assert!((total - 2.0).abs() < 1e-13, "n={n} total={total}");
        }
    }

    #[test]
    fn polynomial_exactness() {
        let q = GaussLegendre::new(6).unwrap();
        // degree 11 is the highest exact degree for 6 nodes
        let val = q.integrate(|x| x.powi(10));
        assert!((val - 2.0 / 11.0).abs() < 1e-14);
        let odd = q.integrate(|x| x.powi(11));
        assert!(odd.abs() < 1e-15);
    }

    #[test]
    fn smooth_integrand() {
        let q = GaussLegendre::new(24).unwrap();
        let val = q.integrate(f64::exp);
        let expect = std::f64::consts::E - 1.0 / std::f64::consts::E;
        assert!((val - expect).abs() < 1e-14);
        let shifted = q.integrate_over(0.0, 1.0, f64::exp);
        assert!((shifted - (std::f64::consts::E - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn chebyshev_rule_reproduces_orthogonality() {
        // T_2 * T_2 integrates to pi/2, T_1 * T_2 to zero.
        let t2 = |x: f64| 2.0 * x * x - 1.0;
        let val = gauss_chebyshev(16, |x| t2(x) * t2(x));
        assert!((val - std::f64::consts::PI / 2.0).abs() < 1e-13);
        let zero = gauss_chebyshev(16, |x| x * t2(x));
        assert!(zero.abs() < 1e-14);
    }
}
