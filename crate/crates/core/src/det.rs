//! Exact determinants: fraction-free elimination for rational matrices and
//! a cofactor expansion that works over any scalar ring.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::{Rational, RationalMatrix, Ring};

/// Determinant of a rational matrix via Bareiss elimination over integers.
///
/// Row denominators are cleared first, so every intermediate value is an
/// integer and the divisions in the elimination are exact. The 0x0
/// determinant is 1 (empty product).
pub fn det_exact(m: &RationalMatrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "determinant requires a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Rational::one());
    }

    // Scale row i by the lcm of its denominators; det picks up the product.
    let mut denom = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 1..=n {
        let mut row_lcm = BigInt::one();
        for j in 1..=n {
            row_lcm = row_lcm.lcm(m[(i, j)].denom());
        }
        let row: Vec<BigInt> = (1..=n)
            .map(|j| {
                let e = &m[(i, j)];
                e.numer() * (&row_lcm / e.denom())
            })
            .collect();
        denom *= row_lcm;
        a.push(row);
    }

    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(Rational::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                // Bareiss update: the division by the previous pivot is exact.
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }

    let mut det_int = a[n - 1][n - 1].clone();
    if negate {
        det_int = -det_int;
    }
    Ok(Rational::new(det_int, denom))
}

/// Determinant by Laplace expansion along the first row, over any ring.
/// Exponential; intended for the small symbolic matrices this crate handles.
pub fn det_cofactor<T: Ring>(m: &Matrix<T>) -> Result<T> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "determinant requires a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(det_cofactor_inner(m))
}

fn det_cofactor_inner<T: Ring>(m: &Matrix<T>) -> T {
    let n = m.rows();
    if n == 0 {
        return T::one();
    }
    if n == 1 {
        return m[(1, 1)].clone();
    }
    let mut acc = T::zero();
    for j in 1..=n {
        let entry = m[(1, j)].clone();
        if entry.is_zero() {
            continue;
        }
        let mut data = Vec::with_capacity((n - 1) * (n - 1));
        for r in 2..=n {
            for c in 1..=n {
                if c != j {
                    data.push(m[(r, c)].clone());
                }
            }
        }
        let sub = Matrix::new(n - 1, n - 1, data).expect("submatrix shape");
        let term = entry * det_cofactor_inner(&sub);
        acc = if j % 2 == 1 { acc + term } else { acc - term };
    }
    acc
}
