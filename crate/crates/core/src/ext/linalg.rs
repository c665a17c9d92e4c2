//! Gaussian elimination over `Q_p` with valuation pivoting.

use crate::padic::PadicNumber;
use crate::{Error, Result};

/// Row of the entry with the smallest known valuation in column `col`,
/// searching rows `col..`. `Ok(None)` means the column is exactly zero.
fn pivot_row(m: &[Vec<PadicNumber>], col: usize) -> Result<Option<usize>> {
    let mut best: Option<(usize, i64)> = None;
    let mut underflow: Option<i64> = None;
    for (r, row) in m.iter().enumerate().skip(col) {
        let entry = &row[col];
        match entry.valuation() {
            Ok(Some(v)) => {
                if best.is_none_or(|(_, bv)| v < bv) {
                    best = Some((r, v));
                }
            }
            Ok(None) => {}
            Err(Error::PrecisionUnderflow { known }) => {
                underflow = Some(underflow.map_or(known, |u: i64| u.min(known)));
            }
            Err(e) => return Err(e),
        }
    }
    match (best, underflow) {
        (Some((r, _)), _) => Ok(Some(r)),
        (None, Some(known)) => Err(Error::PrecisionUnderflow { known }),
        (None, None) => Ok(None),
    }
}

fn eliminate_below(m: &mut [Vec<PadicNumber>], col: usize) -> Result<()> {
    let n = m[0].len();
    let pivot_inv = m[col][col].inv()?;
    for r in col + 1..m.len() {
        if m[r][col].is_exact_zero() {
            continue;
        }
        let factor = m[r][col].mul(&pivot_inv);
        for c in col..n {
            let delta = factor.mul(&m[col][c]);
            m[r][c] = m[r][c].sub(&delta);
        }
    }
    Ok(())
}

/// Determinant of a square matrix given as rows.
pub fn determinant(mut m: Vec<Vec<PadicNumber>>) -> Result<PadicNumber> {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square matrix expected");
    let ctx = m[0][0].ctx().clone();
    let mut det = PadicNumber::one(&ctx);
    for col in 0..n {
        let Some(r) = pivot_row(&m, col)? else {
            return Ok(PadicNumber::zero(&ctx));
        };
        if r != col {
            m.swap(r, col);
            det = det.neg();
        }
        det = det.mul(&m[col][col]);
        eliminate_below(&mut m, col)?;
    }
    Ok(det)
}

/// Solves `m * x = rhs`.
pub fn solve(m: Vec<Vec<PadicNumber>>, rhs: Vec<PadicNumber>) -> Result<Vec<PadicNumber>> {
    let n = m.len();
    assert_eq!(rhs.len(), n);
    let mut aug: Vec<Vec<PadicNumber>> = m
        .into_iter()
        .zip(rhs)
        .map(|(mut row, b)| {
            row.push(b);
            row
        })
        .collect();
    for col in 0..n {
        let Some(r) = pivot_row(&aug, col)? else {
            return Err(Error::DivisionByZero);
        };
        aug.swap(r, col);
        eliminate_below(&mut aug, col)?;
    }
    let ctx = aug[0][0].ctx().clone();
    let mut x = vec![PadicNumber::zero(&ctx); n];
    for i in (0..n).rev() {
        let mut acc = aug[i][n].clone();
        for j in i + 1..n {
            acc = acc.sub(&aug[i][j].mul(&x[j]));
        }
        x[i] = acc.try_div(&aug[i][i])?;
    }
    Ok(x)
}
