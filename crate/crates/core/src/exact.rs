//! Exact linear algebra over the integers: fraction-free (Bareiss) Gaussian
//! elimination, determinants, and rational solutions of square systems.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Upper-triangular form produced by Bareiss elimination on `[A | rhs]`.
struct Eliminated {
    rows: Vec<Vec<BigInt>>,
    negated: bool,
}

/// Runs fraction-free elimination on the square part of `rows` (the first
/// `n` columns), carrying any extra columns along. Every intermediate entry
/// is an exact integer minor of the input. Returns `None` when singular.
fn bareiss(mut rows: Vec<Vec<BigInt>>) -> Option<Eliminated> {
    let n = rows.len();
    let mut prev = BigInt::one();
    let mut negated = false;
    for k in 0..n {
        let pivot = (k..n).find(|&i| !rows[i][k].is_zero())?;
        if pivot != k {
            rows.swap(pivot, k);
            negated = !negated;
        }
        let (head, tail) = rows.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..row.len() {
                let value = &pivot_row[k] * &row[j] - &factor * &pivot_row[j];
                // Exact by Sylvester's identity.
                row[j] = value / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = rows[k][k].clone();
    }
    Some(Eliminated { rows, negated })
}

fn check_square(a: &[Vec<BigInt>]) -> Result<()> {
    let n = a.len();
    if let Some(i) = a.iter().position(|row| row.len() != n) {
        return Err(Error::Precondition(format!(
            "matrix is not square: row {i} has {} entries, expected {n}",
            a[i].len()
        )));
    }
    Ok(())
}

/// Exact determinant; the empty matrix has determinant 1.
pub fn determinant(a: &[Vec<BigInt>]) -> Result<BigInt> {
    check_square(a)?;
    let n = a.len();
    if n == 0 {
        return Ok(BigInt::one());
    }
    Ok(match bareiss(a.to_vec()) {
        None => BigInt::zero(),
        Some(Eliminated { rows, negated }) => {
            let d = rows[n - 1][n - 1].clone();
            if negated {
                -d
            } else {
                d
            }
        }
    })
}

/// Solves `A x = rhs` exactly over the rationals.
pub fn solve(a: &[Vec<BigInt>], rhs: &[BigInt]) -> Result<Vec<BigRational>> {
    check_square(a)?;
    let n = a.len();
    if rhs.len() != n {
        return Err(Error::Precondition(format!(
            "right-hand side has {} entries, expected {n}",
            rhs.len()
        )));
    }
    let augmented = a
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut row = row.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let Eliminated { rows, .. } = bareiss(augmented).ok_or(Error::Singular)?;

    let mut x = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = BigRational::from_integer(rows[i][n].clone());
        for j in i + 1..n {
            if !rows[i][j].is_zero() {
                acc -= BigRational::from_integer(rows[i][j].clone()) * &x[j];
            }
        }
        x[i] = acc / BigRational::from_integer(rows[i][i].clone());
    }
    Ok(x)
}
