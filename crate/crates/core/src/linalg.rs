//! Exact rational linear algebra, just enough for small normal equations.

use num::traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rat;

/// Solves `A x = b` by Gaussian elimination over the rationals.
///
/// The matrix is consumed as a dense row-major `Vec<Vec<Rat>>`. Errors on
/// dimension mismatch or a singular matrix.
pub fn solve(mut a: Vec<Vec<Rat>>, mut b: Vec<Rat>) -> Result<Vec<Rat>> {
    let n = a.len();
    if n == 0 || b.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidArgument(
            "linear system dimensions do not match".into(),
        ));
    }
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::InvalidArgument("singular matrix".into()))?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            if a[row][col].is_zero() {
                continue;
            }
            let factor = &a[row][col] / &a[col][col];
            for k in col..n {
                let sub = &factor * &a[col][k];
                a[row][k] -= sub;
            }
            let sub = &factor * &b[col];
            b[row] -= sub;
        }
    }
    let mut x = vec![Rat::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row].clone();
        for col in row + 1..n {
            acc -= &a[row][col] * &x[col];
        }
        x[row] = acc / &a[row][row];
    }
    Ok(x)
}
