//! Spherical Bessel, integer-order Bessel and Gegenbauer evaluations.

/// Spherical Bessel function of the first kind `j_n(z)`.
///
/// Uses the Taylor series (terms until relative 1e-16) for `|z| < 0.5`,
/// where the closed trigonometric forms cancel catastrophically, and the
/// trigonometric recursion above that: upward while `n <= z` (where it is
/// stable), otherwise downward with normalization against the closed-form
/// `j_0` / `j_1`.
pub fn spherical_jn(n: usize, z: f64) -> f64 {
    let sign = if z < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
    let z = z.abs();
    if z < 0.5 {
        return sign * spherical_jn_series(n, z);
    }
    let j0 = z.sin() / z;
    if n == 0 {
        return sign * j0;
    }
    let j1 = z.sin() / (z * z) - z.cos() / z;
    if n == 1 {
        return sign * j1;
    }
    if (n as f64) <= z {
        let mut prev = j0;
        let mut cur = j1;
        for k in 1..n {
            let next = (2 * k + 1) as f64 / z * cur - prev;
            prev = cur;
            cur = next;
        }
        return sign * cur;
    }
    // Downward recursion from well above n, then scale to match the
    // closed-form value of whichever of j_0, j_1 is larger.
    let start = n + 16 + (1.5 * z) as usize;
    let mut jp1 = 0.0f64;
    let mut j = 1e-300f64;
    let mut out = 0.0f64;
    let mut f0 = 0.0f64;
    let mut f1 = 0.0f64;
    for k in (0..start).rev() {
        let jm1 = (2 * (k + 1) + 1) as f64 / z * j - jp1;
        jp1 = j;
        j = jm1;
        match k {
            _ if k == n => out = j,
            0 => f0 = j,
            1 => f1 = j,
            _ => {}
        }
        if j.abs() > 1e250 {
            let s = 1e-250;
            j *= s;
            jp1 *= s;
            out *= s;
            f0 *= s;
            f1 *= s;
        }
    }
    let scale = if j0.abs() > j1.abs() { j0 / f0 } else { j1 / f1 };
    sign * out * scale
}

/// Series `j_n(z) = z^n / (2n+1)!! * sum_k (-z^2/2)^k / (k! (2n+3)...(2n+2k+1))`.
fn spherical_jn_series(n: usize, z: f64) -> f64 {
    let mut lead = 1.0;
    for k in 0..n {
        lead *= z / (2 * k + 3) as f64;
    }
    if n == 0 {
        lead = 1.0;
    }
    // lead is now z^n / (2n+1)!! up to the n = 0 special case
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let half_z2 = -0.5 * z * z;
    for k in 1..200 {
        term *= half_z2 / (k as f64 * (2 * n + 2 * k + 1) as f64);
        sum += term;
        if term.abs() <= 1e-16 * sum.abs() {
            break;
        }
    }
    lead * sum
}

/// Bessel function of the first kind of integer order, `J_n(z)`.
///
/// Computed by Miller's downward recurrence normalized with
/// `J_0 + 2 J_2 + 2 J_4 + ... = 1`, which is uniformly accurate over the
/// argument ranges used here.
pub fn bessel_jn(n: usize, z: f64) -> f64 {
    if z == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    let sign = if z < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
    let z = z.abs();
    if z < 1e-8 {
        // leading series term is enough at this scale
        let mut lead = 1.0;
        for k in 1..=n {
            lead *= z / (2 * k) as f64;
        }
        return sign * lead;
    }
    let start = n + 16 + (1.5 * z) as usize;
    let start = start + start % 2; // even starting order
    let mut jp1 = 0.0f64;
    let mut j = 1e-300f64;
    let mut norm = 0.0f64;
    let mut out = if n == start { j } else { 0.0 };
    for k in (0..start).rev() {
        let jm1 = (2 * (k + 1)) as f64 / z * j - jp1;
        jp1 = j;
        j = jm1;
        if k == n {
            out = j;
        }
        if k % 2 == 0 {
            norm += if k == 0 { j } else { 2.0 * j };
        }
        // rescale to dodge overflow on long recurrences
        if j.abs() > 1e250 {
            let s = 1e-250;
            j *= s;
            jp1 *= s;
            norm *= s;
            out *= s;
        }
    }
    sign * out / norm
}

/// Gegenbauer (ultraspherical) polynomial `C_n^{lambda}(x)`, `lambda > 0`.
pub fn gegenbauer(n: usize, lambda: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * lambda * x;
    for k in 2..=n {
        let kf = k as f64;
        let next = (2.0 * (kf + lambda - 1.0) * x * cur - (kf + 2.0 * lambda - 2.0) * prev) / kf;
        prev = cur;
        cur = next;
    }
    cur
}

/// Pochhammer symbol `(a)_k` in floating point.
pub fn pochhammer_f64(a: f64, k: usize) -> f64 {
    let mut acc = 1.0;
    for i in 0..k {
        acc *= a + i as f64;
    }
    acc
}
