//! Dense real least squares by Householder QR.

use crate::error::{Error, Result};

/// Minimizes `‖A x − b‖₂` for a tall, full-column-rank `A` given as rows.
pub fn solve(rows: &[Vec<f64>], rhs: &[f64]) -> Result<Vec<f64>> {
    let m = rows.len();
    if m != rhs.len() {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: rhs.len(),
        });
    }
    let n = rows.first().map_or(0, Vec::len);
    if n == 0 || m < n {
        return Err(Error::InvalidDimension(n, "least squares needs rows >= columns > 0"));
    }
    // Column-major working copy.
    let mut a: Vec<Vec<f64>> = (0..n).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
    let mut b = rhs.to_vec();

    for k in 0..n {
        let norm = a[k][k..].iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidDimension(k, "rank-deficient least-squares system"));
        }
        let alpha = if a[k][k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = a[k][k..].to_vec();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        for col in a.iter_mut().skip(k) {
            let s = 2.0 * v.iter().zip(&col[k..]).map(|(p, q)| p * q).sum::<f64>() / vnorm2;
            for (x, vi) in col[k..].iter_mut().zip(&v) {
                *x -= s * vi;
            }
        }
        let s = 2.0 * v.iter().zip(&b[k..]).map(|(p, q)| p * q).sum::<f64>() / vnorm2;
        for (x, vi) in b[k..].iter_mut().zip(&v) {
            *x -= s * vi;
        }
    }

    // Back substitution on the upper triangle.
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut acc = b[i];
        for j in i + 1..n {
            acc -= a[j][i] * x[j];
        }
        let diag = a[i][i];
        if diag.abs() < 1e-14 {
            return Err(Error::InvalidDimension(i, "rank-deficient least-squares system"));
        }
        x[i] = acc / diag;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_system() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 3.0]];
        let x = solve(&a, &[3.0, 5.0]).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-14 && (x[1] - 1.4).abs() < 1e-14);
    }

    #[test]
    fn line_fit() {
        // y = 1 + 2t sampled exactly at four points.
        let ts = [0.0, 1.0, 2.0, 3.0];
        let rows: Vec<Vec<f64>> = ts.iter().map(|&t| vec![1.0, t]).collect();
        let ys: Vec<f64> = ts.iter().map(|&t| 1.0 + 2.0 * t).collect();
        let x = solve(&rows, &ys).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-13 && (x[1] - 2.0).abs() < 1e-13);
    }

    #[test]
    fn rank_deficient() {
        let a = vec![vec![1.0, 2.0], vec![2.0, 4.0], vec![3.0, 6.0]];
        assert!(solve(&a, &[1.0, 2.0, 3.0]).is_err());
        assert!(solve(&[vec![1.0, 2.0]], &[1.0]).is_err());
    }
}
