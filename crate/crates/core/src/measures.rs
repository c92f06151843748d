//! Orthogonality measures and their polynomial families.
//!
//! Seven families are supported. The discrete ones live on an integer
//! lattice and are computed in exact rational arithmetic throughout; the
//! continuous ones (Legendre, shifted Legendre, Chebyshev of the first
//! kind) use the classical three-term recurrences in floating point, with
//! exact monomial coefficients available up to degree 64.
//!
//! Normalizations are fixed once and for all:
//!
//! - `Legendre`: `P_n` with `P_n(1) = 1` on `[-1, 1]`, unit weight.
//! - `ShiftedLegendre`: `x -> P_n(2x - 1)` on `[0, 1]`.
//! - `Chebyshev1`: `T_n(cos t) = cos(n t)` with weight `(1 - x^2)^{-1/2}`.
//! - `Gram { points: P }`: `t_n(x, P)` on `{0, .., P-1}`, unit weights,
//!   `t_n(0, P) = (-P+1)_n`.
//! - `CenteredGram { half_width: N }`: `x -> t_n(x + N, 2N + 1)` on
//!   `{-N, .., N}`.
//! - `SymmetricHahn { half_width: N, alpha }`: `x -> Q_n(N + x; a, a, 2N)`
//!   with `Q_n(0; ..) = 1` at the left endpoint.
//! - `SymmetricKrawtchouk { half_width: N }`: `x -> K_n(N + x; 1/2, 2N)`.

use std::fmt;
use std::ops::RangeInclusive;

use num::traits::{One, Zero};

use crate::error::{Error, Result};
use crate::quadrature::{gauss_chebyshev, GaussLegendre};
use crate::rational::{self, binomial, int, pochhammer, pochhammer_int, rat, to_f64, Rat};

/// Largest degree for which monomial coefficients of the continuous
/// families are materialized; bounds rational coefficient growth.
pub const CONTINUOUS_COEFF_CAP: usize = 64;

/// An orthogonality measure together with its polynomial family.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// Legendre polynomials on `[-1, 1]`.
    Legendre,
    /// Shifted Legendre polynomials on `[0, 1]`.
    ShiftedLegendre,
    /// Chebyshev polynomials of the first kind on `[-1, 1]`.
    Chebyshev1,
    /// Gram (discrete Chebyshev) polynomials on `{0, .., points-1}`.
    Gram { points: usize },
    /// Centered Gram polynomials on `{-N, .., N}`.
    CenteredGram { half_width: usize },
    /// Shifted symmetric Hahn polynomials on `{-N, .., N}`.
    SymmetricHahn { half_width: usize, alpha: Rat },
    /// Symmetric Krawtchouk polynomials on `{-N, .., N}`.
    SymmetricKrawtchouk { half_width: usize },
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Legendre => write!(f, "legendre"),
            Family::ShiftedLegendre => write!(f, "shifted-legendre"),
            Family::Chebyshev1 => write!(f, "chebyshev1"),
            Family::Gram { points } => write!(f, "gram(points={points})"),
            Family::CenteredGram { half_width } => write!(f, "centered-gram(N={half_width})"),
            Family::SymmetricHahn { half_width, alpha } => {
                write!(f, "hahn(N={half_width}, alpha={alpha})")
            }
            Family::SymmetricKrawtchouk { half_width } => {
                write!(f, "krawtchouk(N={half_width})")
            }
        }
    }
}

impl Family {
    /// Gram family on `points` equidistant nodes.
    pub fn gram(points: usize) -> Result<Self> {
        if points == 0 {
            return Err(Error::InvalidArgument(
                "gram family needs at least one point".into(),
            ));
        }
        Ok(Family::Gram { points })
    }

    /// Centered Gram family on `2N + 1` nodes.
    pub fn centered_gram(half_width: usize) -> Result<Self> {
        if half_width == 0 {
            return Err(Error::InvalidArgument(
                "centered-gram family needs half-width N >= 1".into(),
            ));
        }
        Ok(Family::CenteredGram { half_width })
    }

    /// Symmetric Hahn family on `2N + 1` nodes with rational `alpha >= 0`.
    pub fn symmetric_hahn(half_width: usize, alpha: Rat) -> Result<Self> {
        if half_width == 0 {
            return Err(Error::InvalidArgument(
                "hahn family needs half-width N >= 1".into(),
            ));
        }
        if alpha < Rat::zero() {
            return Err(Error::InvalidArgument(format!(
                "hahn parameter alpha must be >= 0, got {alpha}"
            )));
        }
        Ok(Family::SymmetricHahn { half_width, alpha })
    }

    /// Symmetric Krawtchouk family on `2N + 1` nodes.
    pub fn symmetric_krawtchouk(half_width: usize) -> Result<Self> {
        if half_width == 0 {
            return Err(Error::InvalidArgument(
                "krawtchouk family needs half-width N >= 1".into(),
            ));
        }
        Ok(Family::SymmetricKrawtchouk { half_width })
    }

    /// True for the lattice families.
    pub fn is_discrete(&self) -> bool {
        matches!(
            self,
            Family::Gram { .. }
                | Family::CenteredGram { .. }
                | Family::SymmetricHahn { .. }
                | Family::SymmetricKrawtchouk { .. }
        )
    }

    /// True when the measure is symmetric about 0, so that `p_n` has the
    /// parity of `n`.
    pub fn is_even(&self) -> bool {
        matches!(
            self,
            Family::Legendre
                | Family::Chebyshev1
                | Family::CenteredGram { .. }
                | Family::SymmetricHahn { .. }
                | Family::SymmetricKrawtchouk { .. }
        )
    }

    /// Discrete support as an inclusive range, `None` for continuous
    /// families.
    pub fn support(&self) -> Option<RangeInclusive<i64>> {
        match self {
            Family::Gram { points } => Some(0..=(*points as i64 - 1)),
            Family::CenteredGram { half_width }
            | Family::SymmetricHahn { half_width, .. }
            | Family::SymmetricKrawtchouk { half_width } => {
                let n = *half_width as i64;
                Some(-n..=n)
            }
            _ => None,
        }
    }

    /// Highest available polynomial degree; `None` means unbounded.
    pub fn max_degree(&self) -> Option<usize> {
        match self {
            Family::Gram { points } => Some(points - 1),
            Family::CenteredGram { half_width }
            | Family::SymmetricHahn { half_width, .. }
            | Family::SymmetricKrawtchouk { half_width } => Some(2 * half_width),
            _ => None,
        }
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if let Some(max) = self.max_degree() {
            if n > max {
                return Err(Error::DegreeTooHigh {
                    family: self.to_string(),
                    degree: n,
                    max,
                });
            }
        }
        Ok(())
    }

    /// Weight at a lattice point, exact. Errors for continuous families and
    /// for points outside the support.
    pub fn weight(&self, x: i64) -> Result<Rat> {
        let support = self.support().ok_or_else(|| {
            Error::InvalidArgument(format!(
                "{self} is continuous; use weight_density for its weight function"
            ))
        })?;
        if !support.contains(&x) {
            return Err(Error::OutsideSupport {
                family: self.to_string(),
                point: x,
            });
        }
        match self {
            Family::Gram { .. } | Family::CenteredGram { .. } => Ok(Rat::one()),
            Family::SymmetricHahn { half_width, alpha } => {
                let n = *half_width as i64;
                let a1 = alpha + Rat::one();
                let up = pochhammer(&a1, (n + x) as usize);
                let down = pochhammer(&a1, (n - x) as usize);
                let denom = rational::factorial((n + x) as usize)
                    * rational::factorial((n - x) as usize);
                Ok(up * down / Rat::from_integer(denom))
            }
            Family::SymmetricKrawtchouk { half_width } => {
                let n = *half_width as i64;
                Ok(Rat::from_integer(binomial(
                    2 * *half_width,
                    (n + x) as usize,
                )))
            }
            _ => unreachable!(),
        }
    }

    /// Weight function of a continuous family at a real point.
    pub fn weight_density(&self, x: f64) -> Result<f64> {
        let interval = match self {
            Family::Legendre | Family::Chebyshev1 => (-1.0, 1.0),
            Family::ShiftedLegendre => (0.0, 1.0),
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "{self} is discrete; use weight for its lattice weights"
                )))
            }
        };
        if x < interval.0 || x > interval.1 {
            return Err(Error::InvalidArgument(format!(
                "point {x} lies outside the support interval of {self}"
            )));
        }
        match self {
            Family::Chebyshev1 => Ok(1.0 / (1.0 - x * x).sqrt()),
            _ => Ok(1.0),
        }
    }

    /// Total mass of the measure, exact where representable.
    pub fn total_mass(&self) -> Result<Rat> {
        match self {
            Family::Legendre => Ok(int(2)),
            Family::ShiftedLegendre => Ok(int(1)),
            Family::Chebyshev1 => Err(Error::InvalidArgument(
                "chebyshev1 total mass (pi) is not rational".into(),
            )),
            _ => {
                let mut acc = Rat::zero();
                for x in self.support().unwrap() {
                    acc += self.weight(x)?;
                }
                Ok(acc)
            }
        }
    }

    /// Exact monomial coefficients of the degree-`n` family polynomial.
    pub fn poly_coeffs(&self, n: usize) -> Result<PolyCoeffs> {
        self.check_degree(n)?;
        if !self.is_discrete() && n > CONTINUOUS_COEFF_CAP {
            return Err(Error::DegreeTooHigh {
                family: self.to_string(),
                degree: n,
                max: CONTINUOUS_COEFF_CAP,
            });
        }
        let coeffs = match self {
            Family::Legendre => legendre_coeffs(n),
            Family::ShiftedLegendre => shifted_legendre_coeffs(n),
            Family::Chebyshev1 => chebyshev_coeffs(n),
            Family::Gram { points } => gram_coeffs(n, *points, 0),
            Family::CenteredGram { half_width } => {
                gram_coeffs(n, 2 * half_width + 1, *half_width as i64)
            }
            Family::SymmetricHahn { half_width, alpha } => {
                hahn_coeffs(n, *half_width, alpha)
            }
            Family::SymmetricKrawtchouk { half_width } => krawtchouk_coeffs(n, *half_width),
        };
        PolyCoeffs::new(coeffs)
    }

    /// Evaluates the degree-`n` polynomial at a real point via its
    /// three-term recurrence.
    pub fn eval_poly(&self, n: usize, x: f64) -> Result<f64> {
        self.check_degree(n)?;
        Ok(match self {
            Family::Legendre => legendre_eval(n, x),
            Family::ShiftedLegendre => legendre_eval(n, 2.0 * x - 1.0),
            Family::Chebyshev1 => chebyshev_eval(n, x),
            Family::Gram { points } => gram_eval(n, x, *points),
            Family::CenteredGram { half_width } => {
                gram_eval(n, x + *half_width as f64, 2 * half_width + 1)
            }
            Family::SymmetricHahn { half_width, alpha } => hahn_q_eval(
                n,
                x + *half_width as f64,
                to_f64(alpha),
                2 * half_width,
            ),
            Family::SymmetricKrawtchouk { half_width } => {
                krawtchouk_eval(n, x + *half_width as f64, 2 * half_width)
            }
        })
    }

    /// Evaluates the degree-`n` polynomial at a rational point, exactly.
    pub fn eval_poly_exact(&self, n: usize, x: &Rat) -> Result<Rat> {
        Ok(self.poly_coeffs(n)?.eval_exact(x))
    }

    /// Squared norm `h_n` of the degree-`n` polynomial, exact.
    ///
    /// Errors for `Chebyshev1`, whose norms are multiples of pi; use
    /// [`Family::norm_h`] there.
    pub fn norm_h_exact(&self, n: usize) -> Result<Rat> {
        self.check_degree(n)?;
        match self {
            Family::Legendre => Ok(rat(2, 2 * n as i64 + 1)),
            Family::ShiftedLegendre => Ok(rat(1, 2 * n as i64 + 1)),
            Family::Chebyshev1 => Err(Error::InvalidArgument(
                "chebyshev1 norms are multiples of pi; use norm_h".into(),
            )),
            Family::Gram { points } => {
                Ok(pochhammer_int(*points as i64 - n as i64, 2 * n + 1)
                    / int(2 * n as i64 + 1))
            }
            Family::CenteredGram { half_width } => Ok(pochhammer_int(
                2 * *half_width as i64 + 1 - n as i64,
                2 * n + 1,
            ) / int(2 * n as i64 + 1)),
            Family::SymmetricHahn { .. } | Family::SymmetricKrawtchouk { .. } => {
                // Direct rational summation over the support.
                let poly = self.poly_coeffs(n)?;
                let mut acc = Rat::zero();
                for x in self.support().unwrap() {
                    let v = poly.eval_exact(&int(x));
                    acc += &v * &v * self.weight(x)?;
                }
                Ok(acc)
            }
        }
    }

    /// Squared norm `h_n` as a float.
    pub fn norm_h(&self, n: usize) -> Result<f64> {
        match self {
            Family::Chebyshev1 => {
                self.check_degree(n)?;
                Ok(if n == 0 {
                    std::f64::consts::PI
                } else {
                    std::f64::consts::PI / 2.0
                })
            }
            _ => Ok(to_f64(&self.norm_h_exact(n)?)),
        }
    }

    /// Leading monomial coefficient `k_n`, exact for every family.
    pub fn leading_k_exact(&self, n: usize) -> Result<Rat> {
        let poly = self.poly_coeffs(n)?;
        Ok(poly.coeff(poly.degree()))
    }

    /// Leading monomial coefficient as a float.
    pub fn leading_k(&self, n: usize) -> Result<f64> {
        Ok(to_f64(&self.leading_k_exact(n)?))
    }

    /// The moment `\int x^n p_n(x) dmu(x)`, by direct summation, exact.
    ///
    /// Checks the result against `h_n / k_n` and reports an internal error
    /// on mismatch. Discrete families only.
    pub fn moment_exact(&self, n: usize) -> Result<Rat> {
        if !self.is_discrete() {
            return Err(Error::InvalidArgument(format!(
                "{self} is continuous; use moment for a quadrature evaluation"
            )));
        }
        self.check_degree(n)?;
        let poly = self.poly_coeffs(n)?;
        let mut acc = Rat::zero();
        for x in self.support().unwrap() {
            let xr = int(x);
            acc += rational::pow(&xr, n) * poly.eval_exact(&xr) * self.weight(x)?;
        }
        let expect = self.norm_h_exact(n)? / self.leading_k_exact(n)?;
        if acc != expect {
            return Err(Error::Internal(format!(
                "moment identity violated for {self}, n={n}: {acc} != {expect}"
            )));
        }
        Ok(acc)
    }

    /// The moment `\int x^n p_n(x) dmu(x)` as a float, by direct summation
    /// (discrete) or Gauss quadrature (continuous), checked against
    /// `h_n / k_n` to relative `1e-12`.
    pub fn moment(&self, n: usize) -> Result<f64> {
        if self.is_discrete() {
            return Ok(to_f64(&self.moment_exact(n)?));
        }
        self.check_degree(n)?;
        let value = match self {
            Family::Legendre => {
                let q = GaussLegendre::new(n + 4)?;
                q.integrate(|x| x.powi(n as i32) * legendre_eval(n, x))
            }
            Family::ShiftedLegendre => {
                let q = GaussLegendre::new(n + 4)?;
                q.integrate_over(0.0, 1.0, |x| {
                    x.powi(n as i32) * legendre_eval(n, 2.0 * x - 1.0)
                })
            }
            Family::Chebyshev1 => {
                gauss_chebyshev(n + 4, |x| x.powi(n as i32) * chebyshev_eval(n, x))
            }
            _ => unreachable!(),
        };
        let expect = self.norm_h(n)? / self.leading_k(n)?;
        if (value - expect).abs() > 1e-12 * expect.abs().max(1.0) {
            return Err(Error::Internal(format!(
                "moment identity violated for {self}, n={n}: {value} vs {expect}"
            )));
        }
        Ok(value)
    }
}

/// Monomial coefficients `c_0 + c_1 x + ... + c_n x^n` of a family
/// polynomial, exact.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyCoeffs {
    coeffs: Vec<Rat>,
}

impl PolyCoeffs {
    fn new(coeffs: Vec<Rat>) -> Result<Self> {
        let poly = PolyCoeffs { coeffs };
        if poly.coeffs.is_empty() || poly.coeffs.last().unwrap().is_zero() {
            return Err(Error::Internal(
                "polynomial with vanishing leading coefficient".into(),
            ));
        }
        Ok(poly)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Exact Horner evaluation.
    pub fn eval_exact(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Floating-point Horner evaluation.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + to_f64(c);
        }
        acc
    }

    /// `m`-th derivative at zero, `m! c_m`, exact.
    pub fn deriv_at_zero(&self, m: usize) -> Rat {
        self.coeff(m) * Rat::from_integer(rational::factorial(m))
    }
}

// --- coefficient construction -------------------------------------------

/// Multiplies `p` by the linear factor `a x + b`, in place semantics.
fn mul_linear(p: &[Rat], a: &Rat, b: &Rat) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); p.len() + 1];
    for (i, c) in p.iter().enumerate() {
        out[i] += c * b;
        out[i + 1] += c * a;
    }
    out
}

fn add_scaled(acc: &mut Vec<Rat>, p: &[Rat], s: &Rat) {
    if acc.len() < p.len() {
        acc.resize(p.len(), Rat::zero());
    }
    for (a, c) in acc.iter_mut().zip(p) {
        *a += c * s;
    }
}

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    p
}

fn legendre_coeffs(n: usize) -> Vec<Rat> {
    // (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}
    let mut prev = vec![Rat::one()];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![Rat::zero(), Rat::one()];
    for k in 1..n {
        let mut next = mul_linear(&cur, &rat(2 * k as i64 + 1, k as i64 + 1), &Rat::zero());
        add_scaled(&mut next, &prev, &rat(-(k as i64), k as i64 + 1));
        prev = cur;
        cur = trim(next);
    }
    cur
}

fn shifted_legendre_coeffs(n: usize) -> Vec<Rat> {
    // Same recurrence in the variable 2x - 1.
    let mut prev = vec![Rat::one()];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![int(-1), int(2)];
    for k in 1..n {
        let s = rat(2 * k as i64 + 1, k as i64 + 1);
        let mut next = mul_linear(&cur, &(&s * int(2)), &-&s);
        add_scaled(&mut next, &prev, &rat(-(k as i64), k as i64 + 1));
        prev = cur;
        cur = trim(next);
    }
    cur
}

fn chebyshev_coeffs(n: usize) -> Vec<Rat> {
    let mut prev = vec![Rat::one()];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![Rat::zero(), Rat::one()];
    for _ in 1..n {
        let mut next = mul_linear(&cur, &int(2), &Rat::zero());
        add_scaled(&mut next, &prev, &int(-1));
        prev = cur;
        cur = trim(next);
    }
    cur
}

/// Coefficients of the hypergeometric-type sum
/// `sum_k t_k * (-(x + shift))_k` where `t_k` is supplied per term.
/// `(-(x + shift))_k` is accumulated as a product of linear factors
/// `(-x + (i - shift))`.
fn hyp_sum_coeffs<T: Fn(usize) -> Rat>(n: usize, shift: i64, term: T) -> Vec<Rat> {
    let mut acc = vec![Rat::zero()];
    let mut basis = vec![Rat::one()]; // (-(x + shift))_k, starting at k = 0
    for k in 0..=n {
        if k > 0 {
            basis = mul_linear(&basis, &int(-1), &int(k as i64 - 1 - shift));
        }
        add_scaled(&mut acc, &basis, &term(k));
    }
    trim(acc)
}

/// Gram polynomial `t_n(x + shift, points)` as a polynomial in `x`.
fn gram_coeffs(n: usize, points: usize, shift: i64) -> Vec<Rat> {
    let p = points as i64;
    let scale = pochhammer_int(-p + 1, n);
    let coeffs = hyp_sum_coeffs(n, shift, |k| {
        let num = pochhammer_int(-(n as i64), k) * pochhammer_int(n as i64 + 1, k);
        let den = Rat::from_integer(rational::factorial(k) * rational::factorial(k))
            * pochhammer_int(-p + 1, k);
        num / den
    });
    coeffs.into_iter().map(|c| &scale * c).collect()
}

/// Shifted symmetric Hahn polynomial `Q_n(N + x; alpha, alpha, 2N)`.
fn hahn_coeffs(n: usize, half_width: usize, alpha: &Rat) -> Vec<Rat> {
    let two_n = 2 * half_width as i64;
    let a1 = alpha + Rat::one();
    let ab1 = alpha + alpha + Rat::one();
    hyp_sum_coeffs(n, half_width as i64, |k| {
        let num = pochhammer_int(-(n as i64), k) * pochhammer(&(&ab1 + int(n as i64)), k);
        let den = pochhammer(&a1, k)
            * pochhammer_int(-two_n, k)
            * Rat::from_integer(rational::factorial(k));
        num / den
    })
}

/// Symmetric Krawtchouk polynomial `K_n(N + x; 1/2, 2N)`.
fn krawtchouk_coeffs(n: usize, half_width: usize) -> Vec<Rat> {
    let two_n = 2 * half_width as i64;
    hyp_sum_coeffs(n, half_width as i64, |k| {
        let num = pochhammer_int(-(n as i64), k) * rational::pow(&int(2), k);
        let den = pochhammer_int(-two_n, k) * Rat::from_integer(rational::factorial(k));
        num / den
    })
}

// --- floating-point recurrences -------------------------------------------

fn legendre_eval(n: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = x;
    for k in 1..n {
        let next = ((2 * k + 1) as f64 * x * cur - k as f64 * prev) / (k + 1) as f64;
        prev = cur;
        cur = next;
    }
    cur
}

fn chebyshev_eval(n: usize, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = x;
    for _ in 1..n {
        let next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Hahn polynomial `Q_n(y; alpha, alpha, points_m)` by the three-term
/// recurrence, with `points_m` the lattice parameter (support size minus 1).
fn hahn_q_eval(n: usize, y: f64, alpha: f64, points_m: usize) -> f64 {
    let m = points_m as f64;
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = f64::NAN;
    for k in 0..n {
        let kf = k as f64;
        let a_k = (kf + 2.0 * alpha + 1.0) * (kf + alpha + 1.0) * (m - kf)
            / ((2.0 * kf + 2.0 * alpha + 1.0) * (2.0 * kf + 2.0 * alpha + 2.0));
        let c_k = if k == 0 {
            0.0
        } else {
            kf * (kf + 2.0 * alpha + m + 1.0) * (kf + alpha)
                / ((2.0 * kf + 2.0 * alpha) * (2.0 * kf + 2.0 * alpha + 1.0))
        };
        let q_k = if k == 0 { prev } else { cur };
        let q_km1 = if k == 0 { 0.0 } else { prev };
        let next = ((a_k + c_k - y) * q_k - c_k * q_km1) / a_k;
        if k > 0 {
            prev = cur;
        }
        cur = next;
    }
    cur
}

/// Gram polynomial `t_n(y, points)` by the Hahn recurrence and the
/// normalization factor `(-points+1)_n`.
fn gram_eval(n: usize, y: f64, points: usize) -> f64 {
    let q = hahn_q_eval(n, y, 0.0, points - 1);
    let mut scale = 1.0;
    for i in 0..n {
        scale *= -(points as f64) + 1.0 + i as f64;
    }
    scale * q
}

/// Krawtchouk polynomial `K_n(y; 1/2, points_m)` by the three-term
/// recurrence.
fn krawtchouk_eval(n: usize, y: f64, points_m: usize) -> f64 {
    let m = points_m as f64;
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = f64::NAN;
    for k in 0..n {
        let kf = k as f64;
        let a_k = 0.5 * (m - kf);
        let c_k = 0.5 * kf;
        let q_k = if k == 0 { prev } else { cur };
        let q_km1 = if k == 0 { 0.0 } else { prev };
        let next = ((a_k + c_k - y) * q_k - c_k * q_km1) / a_k;
        if k > 0 {
            prev = cur;
        }
        cur = next;
    }
    cur
}
