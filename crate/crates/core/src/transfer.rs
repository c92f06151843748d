//! Frequency-domain analysis: characteristic (transfer) functions, their
//! closed forms, stability and flatness checks, and a Butterworth
//! reference.
//!
//! Convention: the response of a filter is evaluated on `e^{i omega t}`,
//! so a discrete kernel has `phi(omega) = delta^{-m} sum rho(xi)
//! e^{i delta omega xi}` and an ideal `m`-th order differentiator has
//! `phi(omega) = (i omega)^m`. Smoothing kernels then have real `phi` and
//! odd-`m` kernels purely imaginary `phi`. Fourier-Bessel functions keep
//! the opposite (`e^{-i omega x}`) sign, matching their classical Bessel
//! evaluations; the two are complex conjugates for real kernels.

use num::complex::Complex64;
use num::traits::Zero;

use crate::error::{Error, Result};
use crate::filter::FilterKernel;
use crate::measures::Family;
use crate::quadrature::{gauss_chebyshev, GaussLegendre};
use crate::rational::{to_f64, Rat};
use crate::special::{bessel_jn, gegenbauer, pochhammer_f64, spherical_jn};

/// One point of a transfer-function sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferSample {
    pub omega: f64,
    pub value: Complex64,
}

/// `i^k` for any integer `k`.
fn ipow(k: i64) -> Complex64 {
    match k.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Characteristic function of a discrete kernel at sampling interval
/// `delta`: `delta^{-m} sum_xi rho(xi) e^{i delta omega xi}`.
pub fn characteristic_discrete(kernel: &FilterKernel, delta: f64, omega: f64) -> Complex64 {
    let scale = delta.powi(-(kernel.m() as i32));
    let mut acc = Complex64::zero();
    for (xi, rho) in kernel.offsets().zip(kernel.coeffs_f64()) {
        acc += rho * Complex64::from_polar(1.0, delta * omega * xi as f64);
    }
    scale * acc
}

/// Characteristic function of the continuous Legendre derivative filter:
/// `delta^{-m} sum_{j=m,m+2,..,n-1} (p_j^{(m)}(0)/h_j)
/// \int e^{i delta omega xi} P_j(xi) dxi`, evaluated through spherical
/// Bessel functions. Requires `n - m` odd (the even-measure form).
pub fn characteristic_continuous(
    family: &Family,
    m: usize,
    n: usize,
    delta: f64,
    omega: f64,
) -> Result<Complex64> {
    check_continuous_args(family, m, n)?;
    let u = delta * omega;
    let mut acc = Complex64::zero();
    let mut j = m;
    while j < n {
        let deriv0 = to_f64(&family.poly_coeffs(j)?.deriv_at_zero(m));
        // int_{-1}^{1} e^{i u xi} P_j(xi) dxi = 2 i^j j_j(u)
        let integral = 2.0 * ipow(j as i64) * spherical_jn(j, u);
        acc += deriv0 / family.norm_h(j)? * integral;
        j += 2;
    }
    Ok(acc * delta.powi(-(m as i32)))
}

/// Same sum as [`characteristic_continuous`] with the defining integrals
/// evaluated by Gauss-Legendre quadrature; the independent route used by
/// the cross-check tests.
pub fn characteristic_continuous_quadrature(
    family: &Family,
    m: usize,
    n: usize,
    delta: f64,
    omega: f64,
) -> Result<Complex64> {
    check_continuous_args(family, m, n)?;
    let rule = GaussLegendre::new(64)?;
    let u = delta * omega;
    let mut acc = Complex64::zero();
    let mut j = m;
    while j < n {
        let deriv0 = to_f64(&family.poly_coeffs(j)?.deriv_at_zero(m));
        let re = rule.integrate(|xi| (u * xi).cos() * family.eval_poly(j, xi).unwrap());
        let im = rule.integrate(|xi| (u * xi).sin() * family.eval_poly(j, xi).unwrap());
        acc += deriv0 / family.norm_h(j)? * Complex64::new(re, im);
        j += 2;
    }
    Ok(acc * delta.powi(-(m as i32)))
}

fn check_continuous_args(family: &Family, m: usize, n: usize) -> Result<()> {
    if *family != Family::Legendre {
        return Err(Error::InvalidArgument(format!(
            "continuous characteristic functions are implemented for the Legendre family, got {family}"
        )));
    }
    if n <= m || (n - m) % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "the even-measure characteristic function needs n - m odd and positive, got m={m}, n={n}"
        )));
    }
    Ok(())
}

/// Fourier-Bessel function `\int p_n(x) e^{-i omega x} dmu(x)` in closed
/// form: `2 i^{-n} j_n(omega)` for Legendre, `pi i^{-n} J_n(omega)` for
/// Chebyshev, and the Gegenbauer expression for symmetric Hahn.
pub fn fourier_bessel(family: &Family, n: usize, omega: f64) -> Result<Complex64> {
    match family {
        Family::Legendre => {
            if n > 64 {
                return Err(Error::DegreeTooHigh {
                    family: family.to_string(),
                    degree: n,
                    max: 64,
                });
            }
            Ok(2.0 * ipow(-(n as i64)) * spherical_jn(n, omega))
        }
        Family::Chebyshev1 => {
            if n > 64 {
                return Err(Error::DegreeTooHigh {
                    family: family.to_string(),
                    degree: n,
                    max: 64,
                });
            }
            Ok(std::f64::consts::PI * ipow(-(n as i64)) * bessel_jn(n, omega))
        }
        Family::SymmetricHahn { half_width, alpha } => {
            let max = family.max_degree().unwrap();
            if n > max {
                return Err(Error::DegreeTooHigh {
                    family: family.to_string(),
                    degree: n,
                    max,
                });
            }
            let big_n = *half_width as f64;
            let a = to_f64(alpha);
            let half = 0.5 * omega;
            let pref = pochhammer_f64(a + 1.0, n) / pochhammer_f64(-2.0 * big_n, n);
            let geg = gegenbauer(2 * half_width - n, n as f64 + a + 1.0, half.cos());
            Ok(pref * ipow(-(n as i64)) * (2.0 * half.sin()).powi(n as i32) * geg)
        }
        _ => Err(Error::InvalidArgument(format!(
            "no closed-form Fourier-Bessel function for {family}"
        ))),
    }
}

/// Fourier-Bessel function by direct summation (discrete families, with
/// exact weights and polynomial values) or quadrature (continuous
/// families); the oracle route.
pub fn fourier_bessel_direct(family: &Family, n: usize, omega: f64) -> Result<Complex64> {
    if let Some(support) = family.support() {
        let poly = family.poly_coeffs(n)?;
        let mut acc = Complex64::zero();
        for x in support {
            let coeff = to_f64(&(poly.eval_exact(&crate::rational::int(x)) * family.weight(x)?));
            acc += coeff * Complex64::from_polar(1.0, -omega * x as f64);
        }
        return Ok(acc);
    }
    let rule = GaussLegendre::new(64)?;
    let value = match family {
        Family::Legendre => Complex64::new(
            rule.integrate(|x| (omega * x).cos() * family.eval_poly(n, x).unwrap()),
            -rule.integrate(|x| (omega * x).sin() * family.eval_poly(n, x).unwrap()),
        ),
        Family::ShiftedLegendre => Complex64::new(
            rule.integrate_over(0.0, 1.0, |x| (omega * x).cos() * family.eval_poly(n, x).unwrap()),
            -rule.integrate_over(0.0, 1.0, |x| {
                (omega * x).sin() * family.eval_poly(n, x).unwrap()
            }),
        ),
        Family::Chebyshev1 => Complex64::new(
            gauss_chebyshev(64, |x| (omega * x).cos() * family.eval_poly(n, x).unwrap()),
            -gauss_chebyshev(64, |x| (omega * x).sin() * family.eval_poly(n, x).unwrap()),
        ),
        _ => unreachable!(),
    };
    Ok(value)
}

/// The finite trigonometric sum available for the symmetric Hahn
/// Fourier-Bessel function at integer `alpha`, whose term count does not
/// grow with `N`. Returns the value together with the summed magnitude of
/// its terms; the sum cancels heavily for large `n + alpha`, so error
/// bounds on the value must be scaled by that magnitude.
///
/// As printed in the source the expression carries a global sign slip: it
/// evaluates to `-conj(J_n)` where `J_n` is [`fourier_bessel`]; the tests
/// pin that orientation down.
pub fn hahn_fourier_bessel_trig(
    half_width: usize,
    n: usize,
    alpha: u32,
    theta: f64,
) -> Result<(Complex64, f64)> {
    if n > 2 * half_width {
        return Err(Error::DegreeTooHigh {
            family: format!("hahn(N={half_width}, alpha={alpha})"),
            degree: n,
            max: 2 * half_width,
        });
    }
    let big_n = half_width as f64;
    let a = alpha as f64;
    let nf = n as f64;
    let mut sum = 0.0;
    let mut magnitude = 0.0;
    for k in 0..=(n + alpha as usize) {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let kf = k as f64;
        let binom = binom_f64(n + alpha as usize, k);
        let ratio = pochhammer_f64(-2.0 * big_n - 2.0 * a - nf - 1.0, k)
            / pochhammer_f64(-2.0 * big_n - a, k);
        let term =
            binom * ratio * (0.5 * (2.0 * big_n + 2.0 * a + nf - 2.0 * kf + 1.0) * theta).sin();
        sum += sign * term;
        magnitude += term.abs();
    }
    let pref_mag = 2.0
        * binom_f64(2 * half_width + alpha as usize, alpha as usize)
        * (2.0 * (0.5 * theta).sin()).powi(-(n as i32) - 2 * alpha as i32 - 1);
    let pref = -ipow(n as i64 + 2 * alpha as i64) * pref_mag;
    Ok((pref * sum, pref_mag.abs() * magnitude))
}

fn binom_f64(n: usize, k: usize) -> f64 {
    to_f64(&Rat::from_integer(crate::rational::binomial(n, k)))
}

/// Greville's closed form for the characteristic function of the minimum
/// R_alpha smoother:
/// `phi(omega) = 1 + ((-1)^n/n!) sum_{k=n+1}^{N}
/// (N+a+1)_k (-N)_k / ((n+a+3/2)_k (k-n-1)!) s^k / k`, `s = sin^2(omega/2)`.
pub fn min_r_alpha_phi(half_width: usize, n: usize, alpha: u32, omega: f64) -> Result<f64> {
    if n >= half_width {
        return Err(Error::InvalidArgument(format!(
            "minimum R_alpha characteristic needs n < N, got n={n}, N={half_width}"
        )));
    }
    let s = (0.5 * omega).sin().powi(2);
    let big_n = half_width as f64;
    let a = alpha as f64;
    let nf = n as f64;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let mut acc = 1.0;
    let mut n_fact = 1.0;
    for i in 1..=n {
        n_fact *= i as f64;
    }
    for k in n + 1..=half_width {
        let kf = k as f64;
        let term = pochhammer_f64(big_n + a + 1.0, k) * pochhammer_f64(-big_n, k)
            / (pochhammer_f64(nf + a + 1.5, k) * factorial_f64(k - n - 1))
            * s.powi(k as i32)
            / kf;
        acc += sign / n_fact * term;
    }
    Ok(acc)
}

/// The `alpha -> infinity` limit of [`min_r_alpha_phi`]: the minimum
/// R_infinity (maximally flat) characteristic function
/// `phi(omega) = 1 + ((-1)^n/n!) sum_{k=n+1}^{N} (-N)_k/(k-n-1)! s^k / k`.
pub fn min_r_inf_phi(half_width: usize, n: usize, omega: f64) -> Result<f64> {
    if n >= half_width {
        return Err(Error::InvalidArgument(format!(
            "minimum R_infinity characteristic needs n < N, got n={n}, N={half_width}"
        )));
    }
    let s = (0.5 * omega).sin().powi(2);
    let big_n = half_width as f64;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let mut acc = 1.0;
    for k in n + 1..=half_width {
        let term = pochhammer_f64(-big_n, k) / factorial_f64(k - n - 1) * s.powi(k as i32)
            / k as f64;
        acc += sign / factorial_f64(n) * term;
    }
    Ok(acc)
}

fn factorial_f64(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// `Q(z) = sum_{k=0}^{n} (N-n)_k / k! z^k`, the truncated binomial series
/// of `(1-z)^{n-N}`; strictly positive on `[0, 1]`.
pub fn maxflat_q(half_width: usize, n: usize, z: f64) -> f64 {
    let c = (half_width - n) as f64;
    (0..=n)
        .map(|k| pochhammer_f64(c, k) / factorial_f64(k) * z.powi(k as i32))
        .sum()
}

/// `P(z) = sum_{k=0}^{N-n-1} (n+1)_k / k! (1-z)^k`; strictly positive on
/// `[0, 1]`.
pub fn maxflat_p(half_width: usize, n: usize, z: f64) -> f64 {
    (0..half_width - n)
        .map(|k| pochhammer_f64(n as f64 + 1.0, k) / factorial_f64(k) * (1.0 - z).powi(k as i32))
        .sum()
}

/// The maximally flat characteristic through the factored form
/// `(cos^2(omega/2))^{N-n} Q(sin^2(omega/2))`.
pub fn min_r_inf_phi_factored_q(half_width: usize, n: usize, omega: f64) -> Result<f64> {
    if n >= half_width {
        return Err(Error::InvalidArgument(format!(
            "factored characteristic needs n < N, got n={n}, N={half_width}"
        )));
    }
    let s = (0.5 * omega).sin().powi(2);
    Ok((1.0 - s).powi((half_width - n) as i32) * maxflat_q(half_width, n, s))
}

/// The maximally flat characteristic through the complementary factored
/// form `1 - (sin^2(omega/2))^{n+1} P(sin^2(omega/2))`.
pub fn min_r_inf_phi_factored_p(half_width: usize, n: usize, omega: f64) -> Result<f64> {
    if n >= half_width {
        return Err(Error::InvalidArgument(format!(
            "factored characteristic needs n < N, got n={n}, N={half_width}"
        )));
    }
    let s = (0.5 * omega).sin().powi(2);
    Ok(1.0 - s.powi(n as i32 + 1) * maxflat_p(half_width, n, s))
}

/// The incomplete-beta representation
/// `phi(omega) = (N-n) C(N,n) \int_0^{cos^2(omega/2)} s^{N-n-1} (1-s)^n ds`,
/// which exhibits the monotone decrease of `phi` on `[0, pi]`.
pub fn min_r_inf_phi_beta(half_width: usize, n: usize, omega: f64) -> Result<f64> {
    if n >= half_width {
        return Err(Error::InvalidArgument(format!(
            "incomplete-beta characteristic needs n < N, got n={n}, N={half_width}"
        )));
    }
    let c = (0.5 * omega).cos().powi(2);
    let rule = GaussLegendre::new(half_width + 2)?;
    let integral = rule.integrate_over(0.0, c, |s| {
        s.powi((half_width - n) as i32 - 1) * (1.0 - s).powi(n as i32)
    });
    Ok((half_width - n) as f64 * binom_f64(half_width, n) * integral)
}

/// Outcome of a stability scan.
#[derive(Debug, Clone, Copy)]
pub struct StabilityReport {
    pub stable: bool,
    pub max_abs: f64,
    pub at_omega: f64,
}

/// Samples `|phi|` of a smoothing kernel on a uniform open grid of
/// `(0, 2 pi / delta)` (endpoints excluded; the condition is an
/// open-interval one) and reports stability.
///
/// Since `phi` is continuous with `phi(0) = phi(2 pi) = 1`, any interior
/// excursion to `|phi| >= 1` produces an interior local maximum at that
/// level, while a stable kernel only approaches 1 in the endpoint
/// lead-ins. The scan therefore flags instability when any sample reaches
/// `1 + 1e-12` or any interior local maximum of the sampled `|phi|`
/// reaches `1 - 1e-12`; testing the raw grid maximum against 1 would
/// misclassify every design of exactness degree 3 or more, whose `|phi|`
/// sits within 1e-12 of 1 at the first grid point.
pub fn stability_scan(
    kernel: &FilterKernel,
    delta: f64,
    grid_size: usize,
) -> Result<StabilityReport> {
    if kernel.m() != 0 {
        return Err(Error::InvalidArgument(format!(
            "stability is defined for smoothing kernels (m = 0), got m = {}",
            kernel.m()
        )));
    }
    if grid_size < 3 {
        return Err(Error::InvalidArgument(
            "stability scan needs at least 3 grid points".into(),
        ));
    }
    let period = 2.0 * std::f64::consts::PI / delta;
    let values: Vec<f64> = (1..=grid_size)
        .map(|k| {
            let omega = period * k as f64 / (grid_size + 1) as f64;
            characteristic_discrete(kernel, delta, omega).norm()
        })
        .collect();
    let (argmax, max_abs) = values
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, &v)| {
            if v > best.1 {
                (i, v)
            } else {
                best
            }
        });
    // Skip the monotone lead-in runs at both ends (with roundoff slack):
    // there |phi| legitimately approaches 1. Instability shows up either
    // as a sample above 1 or as interior values reaching the margin.
    let slack = 1e-12;
    let mut left = 0;
    while left + 1 < values.len() && values[left + 1] <= values[left] + slack {
        left += 1;
    }
    let mut right = values.len() - 1;
    while right > left && values[right - 1] <= values[right] + slack {
        right -= 1;
    }
    let mut stable = values.iter().all(|&v| v < 1.0 + 1e-12);
    if let Some(interior) = values.get(left + 1..right) {
        if interior.iter().any(|&v| v >= 1.0 - 1e-12) {
            stable = false;
        }
    }
    Ok(StabilityReport {
        stable,
        max_abs,
        at_omega: period * (argmax + 1) as f64 / (grid_size + 1) as f64,
    })
}

/// Number of leading derivatives of the maximally flat characteristic that
/// vanish at `omega = pi`, read off the factored form: the zero of
/// `(cos^2(omega/2))^{N-n} Q(sin^2(omega/2))` at `pi` has order exactly
/// `2(N-n)` since `Q(1) > 0`.
pub fn flatness_check(half_width: usize, n: usize) -> Result<usize> {
    if n >= half_width {
        return Err(Error::InvalidArgument(format!(
            "flatness check needs n < N, got n={n}, N={half_width}"
        )));
    }
    debug_assert!(maxflat_q(half_width, n, 1.0) > 0.0);
    Ok(2 * (half_width - n))
}

/// Magnitude of the order-`n` analog Butterworth filter that
/// differentiates with order `m`:
/// `|H(omega)| = omega^m / sqrt(1 + (omega/omega0)^{2n})`.
pub fn butterworth_magnitude(m: usize, n: usize, omega0: f64, omega: f64) -> Result<f64> {
    check_butterworth(m, n, omega0)?;
    Ok(omega.powi(m as i32) / (1.0 + (omega / omega0).powi(2 * n as i32)).sqrt())
}

/// Complex transfer function `(i omega)^m / p_n(i omega)` for the
/// Butterworth orders with stated denominator polynomials (`n = 1, 2`);
/// `None` for higher orders, where only the magnitude is defined here.
pub fn butterworth_transfer(
    m: usize,
    n: usize,
    omega0: f64,
    omega: f64,
) -> Result<Option<Complex64>> {
    check_butterworth(m, n, omega0)?;
    let iw = Complex64::new(0.0, omega);
    let s = iw / omega0;
    let denom = match n {
        1 => Complex64::new(1.0, 0.0) + s,
        2 => Complex64::new(1.0, 0.0) + std::f64::consts::SQRT_2 * s + s * s,
        _ => return Ok(None),
    };
    Ok(Some(iw.powu(m as u32) / denom))
}

/// Impulse response of the low-pass Butterworth filter for `n = 1`
/// (`omega0 e^{-omega0 t}`) and `n = 2`
/// (`sqrt(2) omega0 e^{-omega0 t / sqrt 2} sin(omega0 t / sqrt 2)`),
/// zero for `t < 0`.
pub fn butterworth_impulse(n: usize, omega0: f64, t: f64) -> Result<f64> {
    if !(omega0 > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "cutoff frequency must be positive, got {omega0}"
        )));
    }
    if t < 0.0 {
        return Ok(0.0);
    }
    match n {
        1 => Ok(omega0 * (-omega0 * t).exp()),
        2 => {
            let r = omega0 / std::f64::consts::SQRT_2;
            Ok(std::f64::consts::SQRT_2 * omega0 * (-r * t).exp() * (r * t).sin())
        }
        _ => Err(Error::InvalidArgument(format!(
            "impulse responses are stated for orders 1 and 2, got {n}"
        ))),
    }
}

fn check_butterworth(m: usize, n: usize, omega0: f64) -> Result<()> {
    if n <= m {
        return Err(Error::InvalidArgument(format!(
            "butterworth filter needs n > m, got m={m}, n={n}"
        )));
    }
    if !(omega0 > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "cutoff frequency must be positive, got {omega0}"
        )));
    }
    Ok(())
}

/// Closed-form transfer functions collected behind one evaluator.
#[derive(Debug, Clone)]
pub enum ClosedForm {
    /// First-order Legendre (Lanczos) derivative filter.
    LanczosH { delta: f64 },
    /// Two-term Legendre derivative filter (orders 1 and 3).
    MultiTermH13 { delta: f64 },
    /// First-order uniform-weight discrete derivative filter on
    /// `2N + 1` points, in the closed trigonometric form.
    SgFirstOrder { half_width: usize, delta: f64 },
    /// Greville's minimum R_alpha smoothing characteristic.
    MinRAlphaPhi {
        half_width: usize,
        n: usize,
        alpha: u32,
    },
    /// Minimum R_infinity smoothing characteristic.
    MinRInfPhi { half_width: usize, n: usize },
    /// Factored maximally flat form `(cos^2)^{N-n} Q(sin^2)`.
    MaxFlatFactored { half_width: usize, n: usize },
    /// Butterworth magnitude (returned in the real part).
    ButterworthH { m: usize, n: usize, omega0: f64 },
}

impl ClosedForm {
    pub fn eval(&self, omega: f64) -> Result<Complex64> {
        match *self {
            ClosedForm::LanczosH { delta } => {
                // i omega 3 (sin u - u cos u) / u^3 with u = delta omega,
                // evaluated as 3 i j_1(u) / delta (series below |u| < 0.5)
                let u = delta * omega;
                if u == 0.0 {
                    return Ok(Complex64::zero());
                }
                Ok(Complex64::new(0.0, 3.0 / delta) * spherical_jn(1, u))
            }
            ClosedForm::MultiTermH13 { delta } => {
                let u = delta * omega;
                if u == 0.0 {
                    return Ok(Complex64::zero());
                }
                Ok(Complex64::new(0.0, 1.0 / delta)
                    * (3.0 * spherical_jn(1, u) + 10.5 * spherical_jn(3, u)))
            }
            ClosedForm::SgFirstOrder { half_width, delta } => {
                let nf = half_width as f64;
                let u = delta * omega;
                let s = (0.5 * u).sin();
                let value = 3.0 / (2.0 * (2.0 * nf + 1.0) * delta) / (s * s)
                    * ((nf * u).sin() / nf - ((nf + 1.0) * u).sin() / (nf + 1.0));
                Ok(Complex64::new(0.0, value))
            }
            ClosedForm::MinRAlphaPhi {
                half_width,
                n,
                alpha,
            } => Ok(min_r_alpha_phi(half_width, n, alpha, omega)?.into()),
            ClosedForm::MinRInfPhi { half_width, n } => {
                Ok(min_r_inf_phi(half_width, n, omega)?.into())
            }
            ClosedForm::MaxFlatFactored { half_width, n } => {
                Ok(min_r_inf_phi_factored_q(half_width, n, omega)?.into())
            }
            ClosedForm::ButterworthH { m, n, omega0 } => {
                Ok(butterworth_magnitude(m, n, omega0, omega)?.into())
            }
        }
    }
}

/// Sweeps a kernel's characteristic function over the given frequencies.
pub fn transfer_table(kernel: &FilterKernel, delta: f64, omegas: &[f64]) -> Vec<TransferSample> {
    omegas
        .iter()
        .map(|&omega| TransferSample {
            omega,
            value: characteristic_discrete(kernel, delta, omega),
        })
        .collect()
}

/// Writes a transfer table as `omega,re,im,abs,arg`.
pub fn write_transfer_csv<W: std::io::Write>(w: &mut W, table: &[TransferSample]) -> Result<()> {
    writeln!(w, "omega,re,im,abs,arg")?;
    for s in table {
        writeln!(
            w,
            "{},{},{},{},{}",
            s.omega,
            s.value.re,
            s.value.im,
            s.value.norm(),
            s.value.arg()
        )?;
    }
    Ok(())
}

/// Log-log plot tables reproducing the survey's figures.
pub mod figures {
    use super::*;

    /// A named `log10_omega, log10_abs` table.
    #[derive(Debug, Clone)]
    pub struct LogLogTable {
        pub name: String,
        pub rows: Vec<(f64, f64)>,
    }

    impl LogLogTable {
        pub fn write_csv<W: std::io::Write>(&self, w: &mut W) -> Result<()> {
            writeln!(w, "log10_omega,log10_abs")?;
            for (lw, la) in &self.rows {
                writeln!(w, "{lw},{la}")?;
            }
            Ok(())
        }

        /// Least-squares slope of the table over `log10_omega` in
        /// `[lo, hi]`.
        pub fn slope_over(&self, lo: f64, hi: f64) -> Option<f64> {
            let pts: Vec<(f64, f64)> = self
                .rows
                .iter()
                .copied()
                .filter(|(lw, _)| *lw >= lo && *lw <= hi)
                .collect();
            if pts.len() < 2 {
                return None;
            }
            let k = pts.len() as f64;
            let xbar = pts.iter().map(|p| p.0).sum::<f64>() / k;
            let ybar = pts.iter().map(|p| p.1).sum::<f64>() / k;
            let sxx: f64 = pts.iter().map(|p| (p.0 - xbar).powi(2)).sum();
            let sxy: f64 = pts.iter().map(|p| (p.0 - xbar) * (p.1 - ybar)).sum();
            Some(sxy / sxx)
        }
    }

    /// Four-decade grid `10^-2 .. 10^2` with 100 points per decade; the
    /// exact value 1 sits on the grid, which the Butterworth table relies
    /// on.
    pub fn log_grid() -> Vec<f64> {
        (0..=400).map(|i| 10f64.powf(-2.0 + i as f64 / 100.0)).collect()
    }

    fn table_of(name: &str, form: &ClosedForm) -> Result<LogLogTable> {
        let rows = log_grid()
            .into_iter()
            .map(|omega| {
                let v = form.eval(omega)?.norm();
                Ok((omega.log10(), v.log10()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LogLogTable {
            name: name.to_string(),
            rows,
        })
    }

    /// Moduli of the first-order analog derivative filters of orders 1
    /// and 3, at unit window scale.
    pub fn figure1() -> Result<Vec<LogLogTable>> {
        Ok(vec![
            table_of("figure1_n1", &ClosedForm::LanczosH { delta: 1.0 })?,
            table_of("figure1_n3", &ClosedForm::MultiTermH13 { delta: 1.0 })?,
        ])
    }

    /// Moduli of the first-order discrete derivative filter for N = 1, 2
    /// at unit sample interval.
    pub fn figure2() -> Result<Vec<LogLogTable>> {
        Ok(vec![
            table_of(
                "figure2_N1",
                &ClosedForm::SgFirstOrder {
                    half_width: 1,
                    delta: 1.0,
                },
            )?,
            table_of(
                "figure2_N2",
                &ClosedForm::SgFirstOrder {
                    half_width: 2,
                    delta: 1.0,
                },
            )?,
        ])
    }

    /// Seventh-order Butterworth magnitude with unit cutoff. The source
    /// figure does not state the differentiation order, so both the
    /// low-pass (m = 0) and the differentiating (m = 1) tables are
    /// emitted.
    pub fn figure3() -> Result<Vec<LogLogTable>> {
        Ok(vec![
            table_of(
                "figure3_m0",
                &ClosedForm::ButterworthH {
                    m: 0,
                    n: 7,
                    omega0: 1.0,
                },
            )?,
            table_of(
                "figure3_m1",
                &ClosedForm::ButterworthH {
                    m: 1,
                    n: 7,
                    omega0: 1.0,
                },
            )?,
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::{
        design_derivative_filter, design_min_r_alpha, design_min_r_inf, DesignSpec,
    };
    use crate::rational::{int, rat};

    fn five_point_first() -> FilterKernel {
        let fam = Family::centered_gram(2).unwrap();
        design_derivative_filter(&DesignSpec::new(fam, 1, 1).unwrap()).unwrap()
    }

    fn literal_h11(delta: f64, omega: f64) -> Complex64 {
        let u = delta * omega;
        Complex64::new(0.0, omega) * 3.0 * (u.sin() - u * u.cos()) / (u * u * u)
    }

    fn literal_h13(delta: f64, omega: f64) -> Complex64 {
        let u = delta * omega;
        Complex64::new(0.0, 7.5 * omega)
            * ((21.0 - 8.0 * u * u) * u.sin() + (-21.0 * u + u * u * u) * u.cos())
            / u.powi(5)
    }

    #[test]
    fn smoothing_kernel_has_unit_dc_gain() {
        let k = design_min_r_inf(3, 1).unwrap();
        let v = characteristic_discrete(&k, 1.0, 0.0);
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn discrete_first_order_matches_closed_trig_form() {
        let k = five_point_first();
        for delta in [1.0, 0.25] {
            let form = ClosedForm::SgFirstOrder {
                half_width: 2,
                delta,
            };
            for step in 1..40 {
                let omega = step as f64 * 0.15;
                let direct = characteristic_discrete(&k, delta, omega);
                let closed = form.eval(omega).unwrap();
                assert!(
                    (direct - closed).norm() < 1e-12,
                    "delta={delta} omega={omega}: {direct} vs {closed}"
                );
                // odd-m kernel: purely imaginary response
                assert!(direct.re.abs() < 1e-15);
            }
        }
    }

    #[test]
    fn continuous_characteristic_routes_agree() {
        for omega in [0.05, 0.3, 1.0, 2.5, 5.0, 7.9] {
            let bessel = characteristic_continuous(&Family::Legendre, 1, 2, 1.0, omega).unwrap();
            let quad =
                characteristic_continuous_quadrature(&Family::Legendre, 1, 2, 1.0, omega).unwrap();
            assert!((bessel - quad).norm() < 1e-12, "omega={omega}");

            let bessel4 = characteristic_continuous(&Family::Legendre, 1, 4, 1.0, omega).unwrap();
            let quad4 =
                characteristic_continuous_quadrature(&Family::Legendre, 1, 4, 1.0, omega).unwrap();
            assert!((bessel4 - quad4).norm() < 1e-12, "omega={omega}");

            // the literal trigonometric forms cancel catastrophically for
            // small arguments; compare them only past the series threshold
            if omega >= 0.5 {
                let lit = literal_h11(1.0, omega);
                let lit4 = literal_h13(1.0, omega);
                assert!((bessel - lit).norm() < 1e-12, "omega={omega}");
                assert!((bessel4 - lit4).norm() < 1e-11, "omega={omega}");
            }
        }
        assert!(characteristic_continuous(&Family::Legendre, 1, 3, 1.0, 1.0).is_err());
        assert!(characteristic_continuous(&Family::Chebyshev1, 1, 2, 1.0, 1.0).is_err());
    }

    #[test]
    fn continuous_characteristic_low_frequency_limit() {
        // phi / (i omega) = 1 - (delta omega)^2 / 10 + O(omega^4): the
        // quadratic coefficient is a finite negative constant
        for omega in [1e-2, 1e-3] {
            let phi = characteristic_continuous(&Family::Legendre, 1, 2, 1.0, omega).unwrap();
            let ratio = phi / Complex64::new(0.0, omega);
            let coeff = (ratio.re - 1.0) / (omega * omega);
            assert!((coeff + 0.1).abs() < 1e-3, "omega={omega}: coeff {coeff}");
            assert!(ratio.im.abs() < 1e-12);
        }
        // two-term variant: phi / (i omega) = 1 - omega^4 / 504 + ...
        for omega in [5e-2, 2e-2] {
            let phi = characteristic_continuous(&Family::Legendre, 1, 4, 1.0, omega).unwrap();
            let ratio = phi / Complex64::new(0.0, omega);
            let coeff = (ratio.re - 1.0) / omega.powi(4);
            assert!(
                (coeff + 1.0 / 504.0).abs() < 1e-4,
                "omega={omega}: coeff {coeff}"
            );
        }
    }

    #[test]
    fn smoothing_phi_derivative_matches_fourier_bessel() {
        // d phi / d omega = k_{2n} p_{2n}(0) / (i k_{2n+1} h_{2n}) J_{2n+1},
        // checked by central differences with step 1e-4 to 1e-6
        let h = 1e-4;
        // discrete: symmetric Hahn smoothing kernels
        for (half, alpha, n) in [(3usize, 0i64, 0usize), (3, 2, 1), (4, 1, 2)] {
            let fam = Family::symmetric_hahn(half, int(alpha)).unwrap();
            let kernel = crate::filter::design_smoothing_filter(&fam, n).unwrap();
            let constant = to_f64(
                &(fam.leading_k_exact(2 * n).unwrap()
                    * fam.eval_poly_exact(2 * n, &Rat::zero()).unwrap()
                    / (fam.leading_k_exact(2 * n + 1).unwrap()
                        * fam.norm_h_exact(2 * n).unwrap())),
            );
            for omega in [0.6, 1.4, 2.9, 4.2] {
                let dphi = (characteristic_discrete(&kernel, 1.0, omega + h).re
                    - characteristic_discrete(&kernel, 1.0, omega - h).re)
                    / (2.0 * h);
                let fb = fourier_bessel(&fam, 2 * n + 1, omega).unwrap();
                let expect = constant * (fb / Complex64::new(0.0, 1.0)).re;
                assert!(
                    (dphi - expect).abs() < 1e-6,
                    "N={half} alpha={alpha} n={n} omega={omega}: {dphi} vs {expect}"
                );
            }
        }
        // continuous: the Legendre smoothing characteristic, assembled
        // from the even Fourier-Bessel terms
        for n in 1..=3usize {
            let fam = Family::Legendre;
            let phi = |omega: f64| -> Complex64 {
                (0..=n)
                    .map(|j| {
                        let p0 = to_f64(&fam.poly_coeffs(2 * j).unwrap().deriv_at_zero(0));
                        p0 / fam.norm_h(2 * j).unwrap()
                            * fourier_bessel(&fam, 2 * j, omega).unwrap()
                    })
                    .sum()
            };
            let constant = to_f64(
                &(fam.leading_k_exact(2 * n).unwrap()
                    * fam.poly_coeffs(2 * n).unwrap().deriv_at_zero(0)
                    / (fam.leading_k_exact(2 * n + 1).unwrap()
                        * fam.norm_h_exact(2 * n).unwrap())),
            );
            for omega in [0.7, 1.9, 3.8] {
                let dphi = (phi(omega + h).re - phi(omega - h).re) / (2.0 * h);
                let fb = fourier_bessel(&fam, 2 * n + 1, omega).unwrap();
                let expect = constant * (fb / Complex64::new(0.0, 1.0)).re;
                assert!(
                    (dphi - expect).abs() < 1e-6,
                    "legendre n={n} omega={omega}: {dphi} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn fourier_bessel_legendre_values() {
        // n = 0: 2 sin(omega)/omega
        for omega in [0.3, 1.7, 6.2] {
            let v = fourier_bessel(&Family::Legendre, 0, omega).unwrap();
            assert!((v - Complex64::from(2.0 * omega.sin() / omega)).norm() < 1e-14);
        }
        // n = 1 at pi: -2i/pi
        let v = fourier_bessel(&Family::Legendre, 1, std::f64::consts::PI).unwrap();
        let expect = Complex64::new(0.0, -2.0 / std::f64::consts::PI);
        assert!((v - expect).norm() < 1e-14);
    }

    #[test]
    fn fourier_bessel_closed_forms_match_direct_routes() {
        for n in 0..=6usize {
            for omega in [0.4, 1.3, 2.9, 5.5, 7.7] {
                let leg = fourier_bessel(&Family::Legendre, n, omega).unwrap();
                let leg_direct = fourier_bessel_direct(&Family::Legendre, n, omega).unwrap();
                assert!((leg - leg_direct).norm() < 1e-12, "legendre n={n}");

                let ch = fourier_bessel(&Family::Chebyshev1, n, omega).unwrap();
                let ch_direct = fourier_bessel_direct(&Family::Chebyshev1, n, omega).unwrap();
                assert!((ch - ch_direct).norm() < 1e-12, "chebyshev n={n}");
            }
        }
        // symmetric Hahn including a rational alpha
        for alpha in [int(0), int(2), rat(5, 2)] {
            let fam = Family::symmetric_hahn(3, alpha).unwrap();
            for n in 0..=6usize {
                for omega in [0.7, 2.0, 4.4] {
                    let closed = fourier_bessel(&fam, n, omega).unwrap();
                    let direct = fourier_bessel_direct(&fam, n, omega).unwrap();
                    assert!(
                        (closed - direct).norm() < 1e-10,
                        "{fam} n={n} omega={omega}: {closed} vs {direct}"
                    );
                }
            }
        }
        assert!(fourier_bessel(&Family::centered_gram(2).unwrap(), 1, 1.0).is_err());
    }

    #[test]
    fn hahn_trig_sum_orientation_and_sg_reduction() {
        // the finite sum evaluates to -conj(fourier_bessel); the forward
        // error of the cancelling sum is bounded by eps times the summed
        // term magnitude
        let eps = f64::EPSILON;
        for half in 1..=8usize {
            for alpha in [0u32, 1, 2] {
                let fam = Family::symmetric_hahn(half, int(alpha as i64)).unwrap();
                for n in 0..=2 * half {
                    for k in 1..=16 {
                        let theta = 2.0 * std::f64::consts::PI * k as f64 / 17.0;
                        let (trig, magnitude) =
                            hahn_fourier_bessel_trig(half, n, alpha, theta).unwrap();
                        let fb = fourier_bessel(&fam, n, theta).unwrap();
                        assert!(
                            (trig + fb.conj()).norm() < 1e-10 + 64.0 * eps * magnitude,
                            "N={half} alpha={alpha} n={n} theta={theta}: {trig} vs {fb}"
                        );
                    }
                }
            }
        }
        // alpha = 0, n = 1 reduces to the first-order closed form: the sum
        // equals (2 (N + 1/2)(N + 1) / 3) H(omega) at delta = 1
        for half_width in [1usize, 2, 5] {
            let nf = half_width as f64;
            let scale = 2.0 * (nf + 0.5) * (nf + 1.0) / 3.0;
            let form = ClosedForm::SgFirstOrder {
                half_width,
                delta: 1.0,
            };
            for theta in [0.4, 1.1, 2.8] {
                let (trig, _) = hahn_fourier_bessel_trig(half_width, 1, 0, theta).unwrap();
                let h = form.eval(theta).unwrap();
                assert!(
                    (trig - scale * h).norm() < 1e-11,
                    "N={half_width} theta={theta}"
                );
            }
        }
    }

    #[test]
    fn greville_phi_matches_designed_kernel() {
        for (half, n, alpha) in [(2usize, 0usize, 0u32), (3, 1, 1), (4, 2, 2), (6, 3, 2)] {
            let kernel = design_min_r_alpha(half, n, &int(alpha as i64)).unwrap();
            for step in 1..=20 {
                let omega = step as f64 * 0.3;
                let phi = min_r_alpha_phi(half, n, alpha, omega).unwrap();
                let direct = characteristic_discrete(&kernel, 1.0, omega);
                assert!(
                    (phi - direct.re).abs() < 1e-10 && direct.im.abs() < 1e-12,
                    "N={half} n={n} alpha={alpha} omega={omega}"
                );
            }
        }
        assert!((min_r_alpha_phi(4, 1, 3, 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(min_r_alpha_phi(2, 2, 0, 1.0).is_err());
    }

    #[test]
    fn min_r_inf_phi_forms_agree() {
        for half in 1..=6usize {
            for n in 0..half {
                for step in 0..=40 {
                    let omega = step as f64 * 2.0 * std::f64::consts::PI / 40.0;
                    let series = min_r_inf_phi(half, n, omega).unwrap();
                    let q_form = min_r_inf_phi_factored_q(half, n, omega).unwrap();
                    let p_form = min_r_inf_phi_factored_p(half, n, omega).unwrap();
                    let beta = min_r_inf_phi_beta(half, n, omega).unwrap();
                    assert!((series - q_form).abs() < 1e-12, "N={half} n={n}");
                    assert!((series - p_form).abs() < 1e-12, "N={half} n={n}");
                    assert!((series - beta).abs() < 1e-12, "N={half} n={n}");
                }
            }
        }
        // N=1, n=0 is cos^2(omega/2)
        for omega in [0.3, 1.9, 4.4] {
            let v = min_r_inf_phi(1, 0, omega).unwrap();
            assert!((v - (0.5 * omega).cos().powi(2)).abs() < 1e-14);
        }
        // phi(pi) = 0
        for (half, n) in [(2usize, 0usize), (3, 1), (5, 2)] {
            assert!(min_r_inf_phi(half, n, std::f64::consts::PI)
                .unwrap()
                .abs()
                < 1e-14);
        }
        // small omega: phi = 1 - s^2 = 1 - omega^4/16 + O(omega^6) for
        // N=2, n=1
        for omega in [1e-2, 5e-3] {
            let a = (1.0 - min_r_inf_phi(2, 1, omega).unwrap()) / omega.powi(4);
            assert!(a > 0.0 && (a - 1.0 / 16.0).abs() < 1e-3, "a={a}");
        }
    }

    #[test]
    fn min_r_alpha_phi_tends_to_min_r_inf_phi() {
        for omega in [0.5, 1.5, 3.0] {
            let a = min_r_alpha_phi(4, 1, 1_000_000, omega).unwrap();
            let b = min_r_inf_phi(4, 1, omega).unwrap();
            assert!((a - b).abs() < 1e-4, "omega={omega}: {a} vs {b}");
        }
    }

    #[test]
    fn maxflat_identity_and_positivity() {
        for half in 1..=10usize {
            for n in 0..half {
                for i in 0..=50 {
                    let s = i as f64 / 50.0;
                    let p = maxflat_p(half, n, s);
                    let q = maxflat_q(half, n, s);
                    assert!(p > 0.0 && q > 0.0, "N={half} n={n} s={s}");
                    let lhs = 1.0 - s.powi(n as i32 + 1) * p;
                    let rhs = (1.0 - s).powi((half - n) as i32) * q;
                    assert!((lhs - rhs).abs() < 1e-12, "N={half} n={n} s={s}");
                }
            }
        }
    }

    #[test]
    fn stability_scan_examples() {
        let smoother = design_min_r_inf(1, 0).unwrap();
        let report = stability_scan(&smoother, 1.0, 512).unwrap();
        assert!(report.stable);
        assert!(report.max_abs < 1.0);
        // an artificial unstable kernel: phi(pi) = 5
        let bad = FilterKernel::new(0, -1, vec![int(-1), int(3), int(-1)]).unwrap();
        let report = stability_scan(&bad, 1.0, 512).unwrap();
        assert!(!report.stable);
        assert!(report.max_abs > 4.9);
        // derivative kernels are rejected
        assert!(stability_scan(&five_point_first(), 1.0, 64).is_err());
    }

    #[test]
    fn flatness_counts() {
        assert_eq!(flatness_check(1, 0).unwrap(), 2);
        assert_eq!(flatness_check(3, 1).unwrap(), 4);
        assert_eq!(flatness_check(2, 0).unwrap(), 4);
        assert!(flatness_check(2, 2).is_err());
    }

    #[test]
    fn butterworth_values() {
        // half-power point
        for n in [1usize, 2, 7] {
            let v = butterworth_magnitude(0, n, 1.0, 1.0).unwrap();
            assert!((v - 1.0 / 2.0f64.sqrt()).abs() < 1e-15);
        }
        // ideal differentiator asymptote at low frequency
        let v = butterworth_magnitude(1, 7, 1.0, 1e-3).unwrap();
        assert!((v - 1e-3).abs() < 1e-9);
        // complex transfer magnitude agrees with the stated magnitude
        for (m, n) in [(0usize, 1usize), (0, 2), (1, 2)] {
            for omega in [0.2, 1.0, 3.7] {
                let h = butterworth_transfer(m, n, 2.0, omega).unwrap().unwrap();
                let mag = butterworth_magnitude(m, n, 2.0, omega).unwrap();
                assert!((h.norm() - mag).abs() < 1e-14, "m={m} n={n} omega={omega}");
            }
        }
        assert!(butterworth_transfer(0, 3, 1.0, 1.0).unwrap().is_none());
        assert!(butterworth_magnitude(2, 2, 1.0, 1.0).is_err());
        // impulse responses
        assert!((butterworth_impulse(1, 2.0, 0.5).unwrap() - 2.0 * (-1.0f64).exp()).abs() < 1e-15);
        assert_eq!(butterworth_impulse(2, 1.0, -1.0).unwrap(), 0.0);
        assert!(butterworth_impulse(3, 1.0, 0.0).is_err());
    }

    #[test]
    fn conjugate_symmetry() {
        let k = design_min_r_alpha(3, 1, &int(1)).unwrap();
        for omega in [0.3, 1.1, 2.9] {
            let plus = characteristic_discrete(&k, 1.0, omega);
            let minus = characteristic_discrete(&k, 1.0, -omega);
            assert!((plus.conj() - minus).norm() < 1e-15);
        }
    }

    #[test]
    fn figure_tables_have_unit_low_frequency_slope() {
        for table in figures::figure1()
            .unwrap()
            .iter()
            .chain(figures::figure2().unwrap().iter())
        {
            let slope = table.slope_over(-2.0, -1.0).unwrap();
            assert!((slope - 1.0).abs() < 0.05, "{}: slope {slope}", table.name);
        }
        // Butterworth tables contain the exact half-power row at omega = 1
        for (i, table) in figures::figure3().unwrap().iter().enumerate() {
            let row = table.rows.iter().find(|(lw, _)| *lw == 0.0).unwrap();
            let expect = (1.0f64 / 2.0f64.sqrt()).log10();
            assert!((row.1 - expect).abs() < 1e-12, "m={i}");
        }
    }

    #[test]
    fn transfer_csv_format() {
        let k = design_min_r_inf(2, 1).unwrap();
        let table = transfer_table(&k, 1.0, &[0.5, 1.0]);
        let mut buf = Vec::new();
        write_transfer_csv(&mut buf, &table).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "omega,re,im,abs,arg");
        assert_eq!(text.lines().count(), 3);
    }
}
