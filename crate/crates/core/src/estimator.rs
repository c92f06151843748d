//! Applying kernels to sampled signals and measuring convergence orders.
//!
//! Kernels are stored unscaled; applying one to a signal with spacing
//! `delta` multiplies by `delta^{-m}`. Convolution is valid-region only:
//! the formulas are interior formulas and no padding scheme is invented.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::filter::FilterKernel;
use crate::measures::Family;
use crate::quadrature::{gauss_chebyshev, GaussLegendre};
use crate::rational::to_f64;

/// A uniformly sampled real signal.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    samples: Vec<f64>,
    spacing: f64,
    origin: f64,
}

impl Signal {
    pub fn new(samples: Vec<f64>, spacing: f64, origin: f64) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidInput("signal has no samples".into()));
        }
        if !(spacing > 0.0) {
            return Err(Error::InvalidInput(format!(
                "signal spacing must be positive, got {spacing}"
            )));
        }
        Ok(Signal {
            samples,
            spacing,
            origin,
        })
    }

    /// Samples `f` at `len` points starting at `origin`.
    pub fn from_fn<F: FnMut(f64) -> f64>(
        mut f: F,
        origin: f64,
        spacing: f64,
        len: usize,
    ) -> Result<Self> {
        let samples = (0..len).map(|i| f(origin + spacing * i as f64)).collect();
        Signal::new(samples, spacing, origin)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn origin(&self) -> f64 {
        self.origin
    }

    /// Abscissa of sample `i`.
    pub fn x(&self, i: usize) -> f64 {
        self.origin + self.spacing * i as f64
    }

    /// Reads an `x,y` CSV with strictly increasing, uniformly spaced `x`
    /// (relative tolerance 1e-9 on the spacing).
    pub fn from_csv<R: BufRead>(r: R) -> Result<Self> {
        let mut xs: Vec<f64> = Vec::new();
        let mut ys: Vec<f64> = Vec::new();
        for (lineno, line) in r.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if lineno == 0 {
                if line != "x,y" {
                    return Err(Error::Parse(format!(
                        "bad signal header: {line:?} (expected x,y)"
                    )));
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let (xs_str, ys_str) = line
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad signal row: {line:?}")))?;
            let x: f64 = xs_str
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad x on line {}: {e}", lineno + 1)))?;
            let y: f64 = ys_str
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad y on line {}: {e}", lineno + 1)))?;
            xs.push(x);
            ys.push(y);
        }
        if xs.len() < 2 {
            return Err(Error::InvalidInput(
                "signal needs at least two rows to establish its spacing".into(),
            ));
        }
        let spacing = (xs[xs.len() - 1] - xs[0]) / (xs.len() - 1) as f64;
        if !(spacing > 0.0) {
            return Err(Error::InvalidInput(
                "signal x values must be strictly increasing".into(),
            ));
        }
        for pair in xs.windows(2) {
            let step = pair[1] - pair[0];
            if (step - spacing).abs() > 1e-9 * spacing.abs() {
                return Err(Error::InvalidInput(format!(
                    "signal spacing is not uniform: step {step} vs {spacing}"
                )));
            }
        }
        Signal::new(ys, spacing, xs[0])
    }

    /// Writes the `x,y` CSV form.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "x,y")?;
        for (i, y) in self.samples.iter().enumerate() {
            writeln!(w, "{},{}", self.x(i), y)?;
        }
        Ok(())
    }
}

/// Convolves a kernel with a signal over the valid region:
/// `out_i = delta^{-m} sum_xi y_{i+xi} rho(xi)`.
pub fn apply_kernel(kernel: &FilterKernel, signal: &Signal) -> Result<Signal> {
    if signal.len() < kernel.len() {
        return Err(Error::InvalidInput(format!(
            "signal of length {} is shorter than the kernel support {}",
            signal.len(),
            kernel.len()
        )));
    }
    let taps = kernel.coeffs_f64();
    let scale = signal.spacing().powi(-(kernel.m() as i32));
    let lo = kernel.min_offset();
    let hi = kernel.max_offset();
    let first = (-lo).max(0);
    let last = signal.len() as i64 - 1 - hi.max(0);
    let mut out = Vec::with_capacity((last + 1 - first).max(0) as usize);
    for i in first..=last {
        let mut acc = 0.0;
        for (t, rho) in taps.iter().enumerate() {
            acc += signal.samples[(i + lo) as usize + t] * rho;
        }
        out.push(scale * acc);
    }
    Signal::new(out, signal.spacing(), signal.x(first as usize))
}

/// Single-point kernel estimate of `f^{(m)}(x)` at window scale `delta`:
/// `delta^{-m} sum_xi f(x + delta xi) rho(xi)`.
pub fn kernel_estimate_at<F: FnMut(f64) -> f64>(
    kernel: &FilterKernel,
    mut f: F,
    x: f64,
    delta: f64,
) -> f64 {
    let scale = delta.powi(-(kernel.m() as i32));
    let mut acc = 0.0;
    for (xi, rho) in kernel.offsets().zip(kernel.coeffs_f64()) {
        acc += f(x + delta * xi as f64) * rho;
    }
    scale * acc
}

/// Continuous differentiation-by-integration estimate of `f^{(m)}(x)`:
/// `delta^{-m} sum_{j=m}^{n} (p_j^{(m)}(0)/h_j) \int f(x + delta xi) p_j(xi) dmu(xi)`,
/// evaluated by Gauss quadrature with `max(32, n + 8)` nodes.
///
/// Over an even measure only the terms with `j - m` even survive; with the
/// largest surviving index `J`, the error is `O(delta^{J + 2 - m})` for
/// smooth `f`. For `m = n` this is the single-term estimator.
pub fn estimate_continuous<F: FnMut(f64) -> f64>(
    family: &Family,
    m: usize,
    n: usize,
    mut f: F,
    x: f64,
    delta: f64,
) -> Result<f64> {
    if family.is_discrete() {
        return Err(Error::InvalidArgument(format!(
            "continuous estimator needs a continuous family, got {family}"
        )));
    }
    if !(delta > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "window scale delta must be positive, got {delta}"
        )));
    }
    if m > n {
        return Err(Error::InvalidArgument(format!(
            "derivative order m={m} exceeds estimator degree n={n}"
        )));
    }
    let nodes = 32.max(n + 8);
    let rule = GaussLegendre::new(nodes)?;
    let mut acc = 0.0;
    for j in m..=n {
        let deriv0 = to_f64(&family.poly_coeffs(j)?.deriv_at_zero(m));
        if deriv0 == 0.0 {
            continue;
        }
        let integral = match family {
            Family::Legendre => {
                rule.integrate(|xi| f(x + delta * xi) * eval_poly_f64(family, j, xi))
            }
            Family::ShiftedLegendre => rule.integrate_over(0.0, 1.0, |xi| {
                f(x + delta * xi) * eval_poly_f64(family, j, xi)
            }),
            Family::Chebyshev1 => {
                gauss_chebyshev(nodes, |xi| f(x + delta * xi) * eval_poly_f64(family, j, xi))
            }
            _ => unreachable!(),
        };
        acc += deriv0 / family.norm_h(j)? * integral;
    }
    Ok(acc * delta.powi(-(m as i32)))
}

fn eval_poly_f64(family: &Family, j: usize, xi: f64) -> f64 {
    family.eval_poly(j, xi).expect("degree validated")
}

/// Result of a convergence probe: signed errors of an estimator over a
/// decreasing window grid and the fitted error order.
#[derive(Debug, Clone)]
pub struct EstimateReport {
    pub deltas: Vec<f64>,
    pub estimates: Vec<f64>,
    pub truth: f64,
    /// `estimate - truth`, signed.
    pub errors: Vec<f64>,
    /// All errors at roundoff level (the estimator is exact on this input).
    pub exact: bool,
    /// Least-squares slope of `log |error|` against `log delta`, fitted on
    /// the middle of the grid (largest and smallest delta dropped).
    pub slope: Option<f64>,
    /// Two standard errors of the fitted slope.
    pub slope_half_width: Option<f64>,
    /// Signed estimate of the leading error coefficient `c` in
    /// `error ~ c delta^slope`.
    pub leading_coeff: Option<f64>,
}

impl EstimateReport {
    /// One-line summary used by the command-line tools.
    pub fn summary(&self) -> String {
        if self.exact {
            return "exact: estimator reproduces the input to roundoff; slope undefined".into();
        }
        format!(
            "slope={} half_width={} leading_coeff={}",
            self.slope.unwrap_or(f64::NAN),
            self.slope_half_width.unwrap_or(f64::NAN),
            self.leading_coeff.unwrap_or(f64::NAN)
        )
    }
}

/// Runs `estimate` over a strictly decreasing window grid (at least 4
/// points) and fits the empirical convergence order against `truth`.
pub fn convergence_probe<E: FnMut(f64) -> Result<f64>>(
    mut estimate: E,
    truth: f64,
    deltas: &[f64],
) -> Result<EstimateReport> {
    if deltas.len() < 4 {
        return Err(Error::InvalidArgument(
            "convergence probe needs at least 4 window scales".into(),
        ));
    }
    if deltas.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::InvalidArgument(
            "window scales must be strictly decreasing".into(),
        ));
    }
    let mut estimates = Vec::with_capacity(deltas.len());
    let mut errors = Vec::with_capacity(deltas.len());
    for &d in deltas {
        let e = estimate(d)?;
        estimates.push(e);
        errors.push(e - truth);
    }
    let tol = 1e-12 * truth.abs().max(1.0);
    if errors.iter().any(|e| e.abs() <= tol) {
        return Ok(EstimateReport {
            deltas: deltas.to_vec(),
            estimates,
            truth,
            errors,
            exact: true,
            slope: None,
            slope_half_width: None,
            leading_coeff: None,
        });
    }
    // middle of the grid: drop the largest and smallest delta to avoid
    // pre-asymptotic and roundoff contamination
    let mid = 1..deltas.len() - 1;
    let xs: Vec<f64> = deltas[mid.clone()].iter().map(|d| d.ln()).collect();
    let ys: Vec<f64> = errors[mid].iter().map(|e| e.abs().ln()).collect();
    let k = xs.len() as f64;
    let xbar = xs.iter().sum::<f64>() / k;
    let ybar = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - xbar).powi(2)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - xbar) * (y - ybar))
        .sum();
    let slope = sxy / sxx;
    let half_width = if xs.len() > 2 {
        let ss_res: f64 = xs
            .iter()
            .zip(&ys)
            .map(|(x, y)| {
                let fit = ybar + slope * (x - xbar);
                (y - fit).powi(2)
            })
            .sum();
        Some(2.0 * (ss_res / (k - 2.0) / sxx).sqrt())
    } else {
        None
    };
    let leading: f64 = deltas[1..deltas.len() - 1]
        .iter()
        .zip(&errors[1..deltas.len() - 1])
        .map(|(d, e)| e / d.powf(slope))
        .sum::<f64>()
        / k;
    Ok(EstimateReport {
        deltas: deltas.to_vec(),
        estimates,
        truth,
        errors,
        exact: false,
        slope: Some(slope),
        slope_half_width: half_width,
        leading_coeff: Some(leading),
    })
}

/// Convergence probe for a discrete kernel: for each window scale the
/// signal is resampled around `x` so the kernel has exactly one valid
/// output point.
pub fn kernel_convergence_probe<F: Fn(f64) -> f64>(
    kernel: &FilterKernel,
    f: F,
    truth: f64,
    x: f64,
    deltas: &[f64],
) -> Result<EstimateReport> {
    convergence_probe(|d| Ok(kernel_estimate_at(kernel, &f, x, d)), truth, deltas)
}

/// Geometric window grid `start * ratio^k` for `k = 0 .. count`.
pub fn geometric_deltas(start: f64, ratio: f64, count: usize) -> Vec<f64> {
    (0..count).map(|k| start * ratio.powi(k as i32)).collect()
}
