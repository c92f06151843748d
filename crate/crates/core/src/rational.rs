//! Exact rational arithmetic helpers.
//!
//! All discrete-family computations in this crate (weights, polynomial
//! coefficients, norms, filter coefficients) are carried out over
//! arbitrary-precision rationals so that exactness claims are literal
//! equalities. The carrier type is [`num::BigRational`], which keeps values
//! in canonical form (gcd 1, positive denominator) after every operation.

use num::bigint::BigInt;
use num::traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number in canonical form.
pub type Rat = num::BigRational;

/// Rational from a numerator/denominator pair.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Nearest `f64` to a rational.
pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Pochhammer symbol `(a)_k = a (a+1) ... (a+k-1)` over the rationals.
pub fn pochhammer(a: &Rat, k: usize) -> Rat {
    let mut acc = Rat::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc *= &term;
        term += Rat::one();
    }
    acc
}

/// Pochhammer symbol for an integer start, as a rational.
pub fn pochhammer_int(a: i64, k: usize) -> Rat {
    pochhammer(&int(a), k)
}

/// Integer power of a rational (non-negative exponent).
pub fn pow(base: &Rat, exp: usize) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Absolute gap between a rational and its nearest `f64`.
///
/// Used to report the rounding error of floating-point kernel exports.
pub fn float_roundoff(r: &Rat) -> f64 {
    let f = to_f64(r);
    match Rat::from_float(f) {
        Some(back) => to_f64(&(r - back).abs()),
        None => f64::INFINITY,
    }
}
