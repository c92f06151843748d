//! Synthesis of discrete FIR kernels.
//!
//! Derivative kernels realize the local weighted least-squares derivative
//! estimate: over a lattice family with weights `w` the kernel is
//! `rho(xi) = w_xi sum_{j=m}^{n} p_j^{(m)}(0) p_j(xi) / h_j`, so that
//! `delta^{-m} sum_xi f(x + delta xi) rho(xi)` approximates `f^{(m)}(x)`
//! and is exact whenever `f` is a polynomial of degree at most the kernel's
//! exactness degree. Smoothing kernels are the `m = 0` Christoffel-Darboux
//! designs `rho(x) = K_{2n}(x, 0) w(x)`; over symmetric Hahn weights these
//! are Greville's minimum R_alpha formulas, and over symmetric Krawtchouk
//! weights his minimum R_infinity (maximally flat) formulas.
//!
//! Every design is carried out in exact rational arithmetic, and an
//! independent normal-equations oracle is provided to pin the results down.

use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::path::Path;

use num::traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::kernels::{cd_kernel_deriv_at_zero, cd_kernel_exact, KernelSpec};
use crate::linalg;
use crate::measures::Family;
use crate::rational::{self, binomial, int, pow, to_f64, Rat};

/// Coefficient symmetry of a kernel on a symmetric support.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// A finite impulse response kernel with exact rational taps.
///
/// Taps sit on the contiguous integer offsets
/// `min_offset ..= min_offset + len - 1`. Symmetric designs use
/// `-N ..= N`; the finite-difference specialization uses `0 ..= n`.
/// Kernels are stored unscaled; the `delta^{-m}` factor is applied when a
/// kernel meets a signal.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterKernel {
    m: usize,
    min_offset: i64,
    coeffs: Vec<Rat>,
    exactness_degree: i64,
}

impl FilterKernel {
    /// Builds a kernel and determines its exactness degree.
    pub fn new(m: usize, min_offset: i64, coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("kernel has no taps".into()));
        }
        let exactness_degree = verify_exactness(m, min_offset, &coeffs);
        Ok(FilterKernel {
            m,
            min_offset,
            coeffs,
            exactness_degree,
        })
    }

    /// Derivative order the kernel estimates.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn min_offset(&self) -> i64 {
        self.min_offset
    }

    pub fn max_offset(&self) -> i64 {
        self.min_offset + self.coeffs.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Half-width `N` when the support is `-N ..= N`.
    pub fn half_width(&self) -> Option<usize> {
        if self.min_offset <= 0 && self.max_offset() == -self.min_offset {
            Some((-self.min_offset) as usize)
        } else {
            None
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Tap at offset `x` (zero outside the support).
    pub fn coeff_at(&self, x: i64) -> Rat {
        if x < self.min_offset || x > self.max_offset() {
            return Rat::zero();
        }
        self.coeffs[(x - self.min_offset) as usize].clone()
    }

    pub fn offsets(&self) -> impl Iterator<Item = i64> + '_ {
        self.min_offset..=self.max_offset()
    }

    /// Largest degree through which all moment conditions hold; `-1` if the
    /// kernel fails even on constants.
    pub fn exactness_degree(&self) -> i64 {
        self.exactness_degree
    }

    /// Coefficient symmetry over a symmetric support, if any.
    pub fn parity(&self) -> Option<Parity> {
        self.half_width()?;
        let even = self.offsets().all(|x| self.coeff_at(-x) == self.coeff_at(x));
        if even {
            return Some(Parity::Even);
        }
        let odd = self
            .offsets()
            .all(|x| self.coeff_at(-x) == -self.coeff_at(x));
        if odd {
            return Some(Parity::Odd);
        }
        None
    }

    /// Nearest-double taps.
    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }

    /// Nearest-double taps together with the largest absolute rounding
    /// error incurred.
    pub fn coeffs_f64_with_roundoff(&self) -> (Vec<f64>, f64) {
        let floats = self.coeffs_f64();
        let err = self
            .coeffs
            .iter()
            .map(rational::float_roundoff)
            .fold(0.0, f64::max);
        (floats, err)
    }

    /// Writes the kernel in the CSV export format
    /// (`offset,num,den,float`, one row per tap).
    pub fn write_csv<W: Write>(&self, w: &mut W) -> Result<()> {
        writeln!(w, "offset,num,den,float")?;
        for (x, c) in self.offsets().zip(&self.coeffs) {
            writeln!(w, "{},{},{},{}", x, c.numer(), c.denom(), to_f64(c))?;
        }
        Ok(())
    }

    /// Parses the CSV export format; `m` comes from the metadata sidecar.
    pub fn read_csv<R: BufRead>(r: R, m: usize) -> Result<Self> {
        let mut min_offset = None;
        let mut next_offset = 0i64;
        let mut coeffs = Vec::new();
        for (lineno, line) in r.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if lineno == 0 {
                if line != "offset,num,den,float" {
                    return Err(Error::Parse(format!(
                        "bad kernel header: {line:?} (expected offset,num,den,float)"
                    )));
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split(',');
            let mut next = |what: &str| {
                fields
                    .next()
                    .ok_or_else(|| Error::Parse(format!("kernel row missing {what}: {line:?}")))
            };
            let offset: i64 = next("offset")?
                .parse()
                .map_err(|e| Error::Parse(format!("bad offset on line {}: {e}", lineno + 1)))?;
            let num = next("num")?
                .parse()
                .map_err(|e| Error::Parse(format!("bad numerator on line {}: {e}", lineno + 1)))?;
            let den = next("den")?.parse().map_err(|e| {
                Error::Parse(format!("bad denominator on line {}: {e}", lineno + 1))
            })?;
            match min_offset {
                None => {
                    min_offset = Some(offset);
                    next_offset = offset + 1;
                }
                Some(_) => {
                    if offset != next_offset {
                        return Err(Error::Parse(format!(
                            "kernel offsets must be contiguous, got {offset} after {}",
                            next_offset - 1
                        )));
                    }
                    next_offset += 1;
                }
            }
            coeffs.push(Rat::new(num, den));
        }
        let min_offset =
            min_offset.ok_or_else(|| Error::Parse("kernel file has no taps".into()))?;
        FilterKernel::new(m, min_offset, coeffs)
    }

    /// Metadata sidecar body (`key: value` lines).
    pub fn metadata_text(&self, family: &str, n: usize) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "family: {family}");
        let _ = writeln!(s, "m: {}", self.m);
        let _ = writeln!(s, "n: {n}");
        let _ = writeln!(s, "exactness_degree: {}", self.exactness_degree);
        s
    }

    /// Writes `<path>` (CSV) and `<path>.meta` (sidecar).
    pub fn save(&self, path: &Path, family: &str, n: usize) -> Result<()> {
        let mut csv = Vec::new();
        self.write_csv(&mut csv)?;
        std::fs::write(path, csv)?;
        let meta_path = sidecar_path(path);
        std::fs::write(meta_path, self.metadata_text(family, n))?;
        Ok(())
    }

    /// Reads `<path>` plus its sidecar.
    pub fn load(path: &Path) -> Result<(Self, KernelMeta)> {
        let meta_raw = std::fs::read_to_string(sidecar_path(path)).map_err(|e| {
            Error::Parse(format!(
                "cannot read kernel metadata {}: {e}",
                sidecar_path(path).display()
            ))
        })?;
        let meta = KernelMeta::parse(&meta_raw)?;
        let file = std::fs::File::open(path)?;
        let kernel = FilterKernel::read_csv(std::io::BufReader::new(file), meta.m)?;
        Ok((kernel, meta))
    }
}

fn sidecar_path(path: &Path) -> std::path::PathBuf {
    let mut os = path.as_os_str().to_os_string();
    os.push(".meta");
    std::path::PathBuf::from(os)
}

/// Parsed kernel metadata sidecar.
#[derive(Debug, Clone)]
pub struct KernelMeta {
    pub family: String,
    pub m: usize,
    pub n: Option<usize>,
    pub exactness_degree: Option<i64>,
}

impl KernelMeta {
    pub fn parse(text: &str) -> Result<Self> {
        let mut family = None;
        let mut m = None;
        let mut n = None;
        let mut exactness = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("bad metadata line: {line:?}")))?;
            let value = value.trim();
            match key.trim() {
                "family" => family = Some(value.to_string()),
                "m" => {
                    m = Some(value.parse().map_err(|e| {
                        Error::Parse(format!("bad m in metadata: {e}"))
                    })?)
                }
                "n" => {
                    n = Some(value.parse().map_err(|e| {
                        Error::Parse(format!("bad n in metadata: {e}"))
                    })?)
                }
                "exactness_degree" => {
                    exactness = Some(value.parse().map_err(|e| {
                        Error::Parse(format!("bad exactness_degree in metadata: {e}"))
                    })?)
                }
                _ => {}
            }
        }
        Ok(KernelMeta {
            family: family.unwrap_or_else(|| "unknown".into()),
            m: m.ok_or_else(|| Error::Parse("metadata is missing m".into()))?,
            n,
            exactness_degree: exactness,
        })
    }
}

/// Largest degree `j` such that the moment conditions
/// `sum_x rho(x) x^k = m! [k = m]` hold for all `k <= j`, capped at the tap
/// count minus one (conditions beyond the node count are meaningless).
/// Returns `-1` when the kernel fails already on constants.
pub fn verify_exactness(m: usize, min_offset: i64, coeffs: &[Rat]) -> i64 {
    let cap = coeffs.len() - 1;
    let m_fact = Rat::from_integer(rational::factorial(m));
    for k in 0..=cap {
        let mut s = Rat::zero();
        for (i, c) in coeffs.iter().enumerate() {
            let x = int(min_offset + i as i64);
            s += c * pow(&x, k);
        }
        let expect = if k == m { m_fact.clone() } else { Rat::zero() };
        if s != expect {
            return k as i64 - 1;
        }
    }
    cap as i64
}

/// Request for a derivative kernel over a discrete family.
#[derive(Debug, Clone)]
pub struct DesignSpec {
    pub family: Family,
    /// Derivative order.
    pub m: usize,
    /// Kernel degree (degree of the underlying least-squares fit).
    pub n: usize,
}

impl DesignSpec {
    pub fn new(family: Family, m: usize, n: usize) -> Result<Self> {
        let spec = DesignSpec { family, m, n };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.family.is_discrete() {
            return Err(Error::InvalidDesign(format!(
                "derivative kernels are designed over discrete families, got {}",
                self.family
            )));
        }
        if self.m > self.n {
            return Err(Error::InvalidDesign(format!(
                "derivative order m={} exceeds kernel degree n={}",
                self.m, self.n
            )));
        }
        let max = self.family.max_degree().unwrap();
        if self.n > max {
            return Err(Error::InvalidDesign(format!(
                "kernel degree n={} exceeds maximum degree {} of {}",
                self.n, max, self.family
            )));
        }
        Ok(())
    }
}

/// Designs the derivative kernel
/// `rho(xi) = w_xi sum_{j=m}^{n} p_j^{(m)}(0) p_j(xi) / h_j`.
pub fn design_derivative_filter(spec: &DesignSpec) -> Result<FilterKernel> {
    spec.validate()?;
    let kspec = KernelSpec::new(spec.family.clone(), spec.n)?;
    let support = spec.family.support().unwrap();
    let mut coeffs = Vec::new();
    for x in support.clone() {
        let xi = int(x);
        let v = cd_kernel_deriv_at_zero(&kspec, spec.m, &xi)? * spec.family.weight(x)?;
        coeffs.push(v);
    }
    FilterKernel::new(spec.m, *support.start(), coeffs)
}

/// Designs the smoothing kernel `rho(x) = K_{2n}(x, 0) w(x)`, exact for
/// degree exactly `2n + 1` over an even discrete family.
///
/// Among all weight sequences of that exactness it minimizes
/// `sum rho(x)^2 / w(x)`; with uniform weights that is the classical
/// minimum sum-of-squares smoother.
pub fn design_smoothing_filter(family: &Family, n: usize) -> Result<FilterKernel> {
    if !family.is_discrete() || !family.is_even() {
        return Err(Error::InvalidDesign(format!(
            "smoothing kernels are designed over even discrete families, got {family}"
        )));
    }
    let half = (*family.support().unwrap().end()) as usize;
    if n >= half {
        return Err(Error::InvalidDesign(format!(
            "smoothing degree n={n} must satisfy n < N={half}"
        )));
    }
    let kspec = KernelSpec::new(family.clone(), 2 * n)?;
    let support = family.support().unwrap();
    let mut coeffs = Vec::new();
    for x in support.clone() {
        let v = cd_kernel_exact(&kspec, &int(x), &Rat::zero())? * family.weight(x)?;
        coeffs.push(v);
    }
    FilterKernel::new(0, *support.start(), coeffs)
}

/// Greville's minimum R_alpha smoothing formula: the symmetric-Hahn
/// instance of [`design_smoothing_filter`]. Among all kernels of exactness
/// `2n + 1` it minimizes the summed squared `alpha`-th finite difference of
/// the coefficients; `alpha = 0` recovers the uniform-weight minimum
/// sum-of-squares smoother.
///
/// `alpha` must be a nonnegative integer (that is what gives the objective
/// its finite-difference meaning), but is accepted as a rational so the
/// violation surfaces as a design error.
pub fn design_min_r_alpha(half_width: usize, n: usize, alpha: &Rat) -> Result<FilterKernel> {
    if !alpha.is_integer() || alpha.is_negative() {
        return Err(Error::InvalidDesign(format!(
            "minimum R_alpha designs need integer alpha >= 0, got {alpha}"
        )));
    }
    let family = Family::symmetric_hahn(half_width, alpha.clone())?;
    design_smoothing_filter(&family, n)
}

/// Greville's minimum R_infinity (maximally flat) smoothing formula: the
/// symmetric-Krawtchouk instance of [`design_smoothing_filter`].
pub fn design_min_r_inf(half_width: usize, n: usize) -> Result<FilterKernel> {
    let family = Family::symmetric_krawtchouk(half_width)?;
    design_smoothing_filter(&family, n)
}

/// Independent oracle: solves the weighted normal equations for the
/// degree-`n` fit through samples at the given contiguous integer nodes and
/// returns the kernel whose inner product with the samples is
/// `m!` times the `x^m` coefficient of the fit (the `m`-th derivative of
/// the fit at 0). Must coincide with [`design_derivative_filter`] exactly.
pub fn least_squares_oracle_on(
    nodes: &[i64],
    weights: &[Rat],
    m: usize,
    n: usize,
) -> Result<FilterKernel> {
    if nodes.is_empty() || nodes.len() != weights.len() {
        return Err(Error::InvalidArgument(
            "oracle needs matching nonempty nodes and weights".into(),
        ));
    }
    if nodes.windows(2).any(|w| w[1] != w[0] + 1) {
        return Err(Error::InvalidArgument(
            "oracle nodes must be contiguous and increasing".into(),
        ));
    }
    if weights.iter().any(|w| !w.is_positive()) {
        return Err(Error::InvalidArgument(
            "oracle weights must be strictly positive".into(),
        ));
    }
    if m > n {
        return Err(Error::InvalidDesign(format!(
            "derivative order m={m} exceeds fit degree n={n}"
        )));
    }
    if n >= nodes.len() {
        return Err(Error::InvalidDesign(format!(
            "fit degree n={n} needs more than {} nodes",
            nodes.len()
        )));
    }
    // Gram matrix of monomials: G[a][b] = sum w x^{a+b}.
    let mut gram = vec![vec![Rat::zero(); n + 1]; n + 1];
    for (x, w) in nodes.iter().zip(weights) {
        let xr = int(*x);
        let mut xa = Rat::one();
        let mut powers = Vec::with_capacity(2 * n + 1);
        for _ in 0..=2 * n {
            powers.push(xa.clone());
            xa *= &xr;
        }
        for a in 0..=n {
            for b in 0..=n {
                gram[a][b] += w * &powers[a + b];
            }
        }
    }
    let mut rhs = vec![Rat::zero(); n + 1];
    rhs[m] = Rat::one();
    // Positive weights on distinct nodes make the system nonsingular.
    let solution = linalg::solve(gram, rhs)
        .map_err(|_| Error::Internal("singular normal matrix for distinct nodes".into()))?;
    let m_fact = Rat::from_integer(rational::factorial(m));
    let coeffs = nodes
        .iter()
        .zip(weights)
        .map(|(x, w)| {
            let xr = int(*x);
            let mut acc = Rat::zero();
            for (a, c) in solution.iter().enumerate() {
                acc += c * pow(&xr, a);
            }
            acc * w * &m_fact
        })
        .collect();
    FilterKernel::new(m, nodes[0], coeffs)
}

/// [`least_squares_oracle_on`] over the symmetric support `-N ..= N`.
pub fn least_squares_oracle(
    half_width: usize,
    weights: &[Rat],
    m: usize,
    n: usize,
) -> Result<FilterKernel> {
    let nodes: Vec<i64> = (-(half_width as i64)..=half_width as i64).collect();
    least_squares_oracle_on(&nodes, weights, m, n)
}

/// The `n`-th order forward finite difference as a kernel: the Gram-family
/// design with `n + 1` points `{0, .., n}` and `m = n`, whose taps are
/// `(-1)^{n-xi} C(n, xi)`.
pub fn finite_difference_kernel(n: usize) -> Result<FilterKernel> {
    if n == 0 {
        return Err(Error::InvalidDesign(
            "finite differences need order n >= 1".into(),
        ));
    }
    let family = Family::gram(n + 1)?;
    design_derivative_filter(&DesignSpec::new(family, n, n)?)
}

/// Greville's objective: the summed squared `alpha`-th finite difference
/// `sum_x (Delta^alpha rho)(x)^2` with `rho` extended by zero outside its
/// support.
pub fn diff_alpha_sq_sum(kernel: &FilterKernel, alpha: usize) -> Rat {
    let lo = kernel.min_offset() - alpha as i64;
    let hi = kernel.max_offset();
    let mut acc = Rat::zero();
    for x in lo..=hi {
        let mut d = Rat::zero();
        for j in 0..=alpha {
            let sign = if (alpha - j) % 2 == 0 { 1 } else { -1 };
            d += int(sign) * Rat::from_integer(binomial(alpha, j)) * kernel.coeff_at(x + j as i64);
        }
        acc += &d * &d;
    }
    acc
}

/// Sweeps every discrete family with `N <= 6`, `n <= min(6, max degree)`,
/// `m <= n` and checks that [`design_derivative_filter`] and
/// [`least_squares_oracle_on`] agree as exact rational vectors. Returns the
/// number of cases checked.
pub fn oracle_equivalence_sweep() -> Result<usize> {
    let mut families = Vec::new();
    for points in 2..=7usize {
        families.push(Family::gram(points)?);
    }
    for half in 1..=6usize {
        families.push(Family::centered_gram(half)?);
        families.push(Family::symmetric_krawtchouk(half)?);
        for alpha in [0i64, 1, 2, 5] {
            families.push(Family::symmetric_hahn(half, int(alpha))?);
        }
    }
    let mut cases = 0;
    for family in families {
        let support: Vec<i64> = family.support().unwrap().collect();
        let weights: Vec<Rat> = support
            .iter()
            .map(|&x| family.weight(x))
            .collect::<Result<_>>()?;
        let n_max = family.max_degree().unwrap().min(6);
        for n in 0..=n_max {
            for m in 0..=n {
                let designed =
                    design_derivative_filter(&DesignSpec::new(family.clone(), m, n)?)?;
                let oracle = least_squares_oracle_on(&support, &weights, m, n)?;
                if designed.coeffs() != oracle.coeffs()
                    || designed.min_offset() != oracle.min_offset()
                {
                    return Err(Error::Internal(format!(
                        "oracle mismatch for {family}, m={m}, n={n}"
                    )));
                }
                cases += 1;
            }
        }
    }
    Ok(cases)
}
