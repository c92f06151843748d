//! Christoffel-Darboux reproducing kernels and least-squares projection.
//!
//! The degree-`n` kernel `K_n(x, y) = sum_{k<=n} p_k(x) p_k(y) / h_k`
//! reproduces polynomials of degree at most `n` in `L^2(mu)`; its
//! eta-derivatives at 0 are exactly the coefficient sums from which the
//! derivative filters in [`crate::filter`] are built.

use num::traits::Zero;

use crate::error::{Error, Result};
use crate::measures::Family;
use crate::rational::{int, to_f64, Rat};

/// A family together with a kernel degree.
#[derive(Debug, Clone)]
pub struct KernelSpec {
    family: Family,
    degree: usize,
}

impl KernelSpec {
    pub fn new(family: Family, degree: usize) -> Result<Self> {
        if let Some(max) = family.max_degree() {
            if degree > max {
                return Err(Error::DegreeTooHigh {
                    family: family.to_string(),
                    degree,
                    max,
                });
            }
        }
        Ok(KernelSpec { family, degree })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

/// Kernel value by the sum form. This is the primary evaluation path; the
/// quotient form [`cd_kernel_quotient`] is a cross-check only, since it
/// degenerates to 0/0 near the diagonal.
pub fn cd_kernel(spec: &KernelSpec, x: f64, y: f64) -> Result<f64> {
    let mut acc = 0.0;
    for k in 0..=spec.degree {
        acc += spec.family.eval_poly(k, x)? * spec.family.eval_poly(k, y)?
            / spec.family.norm_h(k)?;
    }
    Ok(acc)
}

/// Kernel value by the sum form in exact rational arithmetic.
///
/// Available for every family with rational norms (all but `Chebyshev1`).
pub fn cd_kernel_exact(spec: &KernelSpec, x: &Rat, y: &Rat) -> Result<Rat> {
    let mut acc = Rat::zero();
    for k in 0..=spec.degree {
        let pk = spec.family.poly_coeffs(k)?;
        acc += pk.eval_exact(x) * pk.eval_exact(y) / spec.family.norm_h_exact(k)?;
    }
    Ok(acc)
}

/// Kernel value by the Christoffel-Darboux quotient form
/// `k_n / (k_{n+1} h_n) (p_{n+1}(x) p_n(y) - p_n(x) p_{n+1}(y)) / (x - y)`.
///
/// Errors when `|x - y|` is too small for the quotient to be meaningful or
/// when the family has no polynomial of degree `n + 1`.
pub fn cd_kernel_quotient(spec: &KernelSpec, x: f64, y: f64) -> Result<f64> {
    if (x - y).abs() < 1e-9 {
        return Err(Error::InvalidArgument(
            "quotient form of the kernel is ill-conditioned near the diagonal".into(),
        ));
    }
    let n = spec.degree;
    if let Some(max) = spec.family.max_degree() {
        if n + 1 > max {
            return Err(Error::DegreeTooHigh {
                family: spec.family.to_string(),
                degree: n + 1,
                max,
            });
        }
    }
    let kn = spec.family.leading_k(n)?;
    let kn1 = spec.family.leading_k(n + 1)?;
    let hn = spec.family.norm_h(n)?;
    let pn_x = spec.family.eval_poly(n, x)?;
    let pn_y = spec.family.eval_poly(n, y)?;
    let pn1_x = spec.family.eval_poly(n + 1, x)?;
    let pn1_y = spec.family.eval_poly(n + 1, y)?;
    Ok(kn / (kn1 * hn) * (pn1_x * pn_y - pn_x * pn1_y) / (x - y))
}

/// The `m`-th eta-derivative of `K_n(xi, eta)` at `eta = 0`:
/// `sum_{j=m}^{n} p_j^{(m)}(0) p_j(xi) / h_j`, exact.
///
/// `p_j^{(m)}(0)` is read off the exact monomial coefficients.
pub fn cd_kernel_deriv_at_zero(spec: &KernelSpec, m: usize, xi: &Rat) -> Result<Rat> {
    if m > spec.degree {
        return Err(Error::InvalidArgument(format!(
            "derivative order {m} exceeds kernel degree {}",
            spec.degree
        )));
    }
    let mut acc = Rat::zero();
    for j in m..=spec.degree {
        let pj = spec.family.poly_coeffs(j)?;
        let deriv0 = pj.deriv_at_zero(m);
        if deriv0.is_zero() {
            continue;
        }
        acc += deriv0 * pj.eval_exact(xi) / spec.family.norm_h_exact(j)?;
    }
    Ok(acc)
}

/// Floating-point version of [`cd_kernel_deriv_at_zero`], usable for every
/// family.
pub fn cd_kernel_deriv_at_zero_f64(spec: &KernelSpec, m: usize, xi: f64) -> Result<f64> {
    if m > spec.degree {
        return Err(Error::InvalidArgument(format!(
            "derivative order {m} exceeds kernel degree {}",
            spec.degree
        )));
    }
    let mut acc = 0.0;
    for j in m..=spec.degree {
        let deriv0 = to_f64(&spec.family.poly_coeffs(j)?.deriv_at_zero(m));
        if deriv0 == 0.0 {
            continue;
        }
        acc += deriv0 * spec.family.eval_poly(j, xi)? / spec.family.norm_h(j)?;
    }
    Ok(acc)
}

/// Coefficients of the weighted least-squares fit of degree `<= n` in the
/// family basis.
#[derive(Debug, Clone)]
pub struct Projection {
    family: Family,
    coeffs: Vec<Rat>,
}

impl Projection {
    /// Coefficients `a_0 .. a_n` with respect to the family polynomials.
    pub fn coefficients(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Exact value of the fitted polynomial at a rational point.
    pub fn eval_exact(&self, x: &Rat) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            acc += a * self.family.eval_poly_exact(k, x)?;
        }
        Ok(acc)
    }

    /// Monomial coefficients of the fitted polynomial (length `n + 1`,
    /// trailing zeros kept).
    pub fn monomial_coeffs(&self) -> Result<Vec<Rat>> {
        let mut out = vec![Rat::zero(); self.coeffs.len()];
        for (k, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let pk = self.family.poly_coeffs(k)?;
            for (i, c) in pk.coeffs().iter().enumerate() {
                out[i] += a * c;
            }
        }
        Ok(out)
    }
}

/// Projects samples on the full discrete support onto polynomials of
/// degree `<= n`: `a_k = (sum_x f(x) p_k(x) w_x) / h_k`.
///
/// `samples` must list `f` at every support point in increasing order.
pub fn project(spec: &KernelSpec, samples: &[Rat]) -> Result<Projection> {
    let support = spec.family.support().ok_or_else(|| {
        Error::InvalidArgument("projection requires a discrete family".into())
    })?;
    let count = (support.end() - support.start() + 1) as usize;
    if samples.len() != count {
        return Err(Error::InvalidInput(format!(
            "expected {count} samples on the support of {}, got {}",
            spec.family,
            samples.len()
        )));
    }
    let mut coeffs = Vec::with_capacity(spec.degree + 1);
    for k in 0..=spec.degree {
        let pk = spec.family.poly_coeffs(k)?;
        let mut acc = Rat::zero();
        for (x, f) in support.clone().zip(samples) {
            acc += f * pk.eval_exact(&int(x)) * spec.family.weight(x)?;
        }
        coeffs.push(acc / spec.family.norm_h_exact(k)?);
    }
    Ok(Projection {
        family: spec.family.clone(),
        coeffs,
    })
}

/// Weighted squared distance between samples and a fit; used by the
/// optimality tests.
pub fn weighted_sq_error(family: &Family, samples: &[Rat], fit: &Projection) -> Result<Rat> {
    let support = family.support().ok_or_else(|| {
        Error::InvalidArgument("weighted error requires a discrete family".into())
    })?;
    let mut acc = Rat::zero();
    for (x, f) in support.zip(samples) {
        let diff = f - fit.eval_exact(&int(x))?;
        acc += &diff * &diff * family.weight(x)?;
    }
    Ok(acc)
}
