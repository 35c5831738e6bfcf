//! Numerical form of the forcing argument for N ≥ 3.
//!
//! Additivity of `P_f` over the N outcomes of a measurement reduces to
//!
//! ```text
//! Σ_i f((N r∥_i − 1) / (N − 1)) = 0
//! ```
//!
//! Restricting `r∥` to a two-dimensional face of the simplex, with weights
//! `(a, b, 1 − a − b, 0, …, 0)`, gives the face residual evaluated here. The
//! identity is the only odd `f` with `f(1) = 1` that zeroes it everywhere:
//! the corner `a = 1` pins `f(−1/(N−1)) = −1/(N−1)`, and the rest is the
//! Cauchy equation `f(x) + f(z) = f(x + z)`, whose discrete version is solved
//! by [`cauchy_grid_solve`].

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{BlochVector, Measurement};
use crate::lstsq;
use crate::rules::{eval_f, OutcomeFunction, DOMAIN_SLACK};

/// Slack on the face-simplex bounds `a, b ≥ 0`, `a + b ≤ 1`.
pub const FACE_TOL: f64 = 1e-12;
pub const DEFAULT_GRID: usize = 64;
/// Residual at or below which a rule survives the scan.
pub const SURVIVAL_TOL: f64 = 1e-10;
/// Residual at or above which a rule counts as detected nonlinear.
pub const NONLINEAR_THRESHOLD: f64 = 1e-2;

fn require_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidDimension(
            n,
            "dimension 2 not subject to the constraint; the face argument needs N >= 3",
        ));
    }
    Ok(())
}

/// `(N − 3) / (N − 1)`.
pub fn alpha(n: usize) -> Result<f64> {
    require_n(n)?;
    Ok((n as f64 - 3.0) / (n as f64 - 1.0))
}

/// Maps a barycentric weight to the scalar product `r · n_i`.
fn weight_to_overlap(n: f64, w: f64) -> f64 {
    (n * w - 1.0) / (n - 1.0)
}

fn check_face(a: f64, b: f64) -> Result<()> {
    let ok = a.is_finite() && b.is_finite() && a >= -FACE_TOL && b >= -FACE_TOL && a + b <= 1.0 + FACE_TOL;
    if !ok {
        return Err(Error::OutsideFace(a, b));
    }
    Ok(())
}

/// Left side of the face constraint at weights `(a, b, 1 − a − b)`.
pub fn face_residual(f: &OutcomeFunction, n: usize, a: f64, b: f64) -> Result<f64> {
    require_n(n)?;
    check_face(a, b)?;
    let nf = n as f64;
    let c = 1.0 - a - b;
    let tail = eval_f(f, -1.0 / (nf - 1.0))?;
    Ok(eval_f(f, weight_to_overlap(nf, a))?
        + eval_f(f, weight_to_overlap(nf, b))?
        + eval_f(f, weight_to_overlap(nf, c))?
        + (nf - 3.0) * tail)
}

/// Bloch vector `a n_1 + b n_2 + (1 − a − b) n_3` on the first face.
pub fn face_state(m: &Measurement<'_>, a: f64, b: f64) -> Result<BlochVector> {
    require_n(m.dim())?;
    check_face(a, b)?;
    let v = m.vertices();
    Ok(BlochVector::combination(
        m.dim(),
        [(a, v[0].clone()), (b, v[1].clone()), (1.0 - a - b, v[2].clone())],
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub n: usize,
    pub grid_resolution: usize,
    pub max_abs_residual: f64,
    /// `(a, b)` of the first grid point attaining the maximum.
    pub argmax: (f64, f64),
    /// Grid indices `(i, j)` of `argmax`.
    pub argmax_index: (usize, usize),
    /// `|f(0)|`
    pub f_zero_defect: f64,
    /// `|f(−1/(N−1)) + 1/(N−1)|`
    pub f_minus_defect: f64,
}

impl ScanReport {
    pub fn survives(&self, tol: f64) -> bool {
        self.max_abs_residual <= tol
    }
}

fn grid_row(f: &OutcomeFunction, n: usize, m: usize, i: usize) -> Result<Vec<f64>> {
    let mf = m as f64;
    (0..=m - i)
        .map(|j| face_residual(f, n, i as f64 / mf, j as f64 / mf))
        .collect()
}

fn reduce_rows(rows: &[Vec<f64>]) -> (f64, (usize, usize)) {
    let mut best = -1.0;
    let mut at = (0, 0);
    for (i, row) in rows.iter().enumerate() {
        for (j, r) in row.iter().enumerate() {
            // Strict comparison keeps the lexicographically first maximiser.
            if r.abs() > best {
                best = r.abs();
                at = (i, j);
            }
        }
    }
    (best, at)
}

fn finish_report(f: &OutcomeFunction, n: usize, m: usize, rows: &[Vec<f64>]) -> Result<ScanReport> {
    let (max_abs_residual, (i, j)) = reduce_rows(rows);
    let nf = n as f64;
    let inv = 1.0 / (nf - 1.0);
    Ok(ScanReport {
        n,
        grid_resolution: m,
        max_abs_residual,
        argmax: (i as f64 / m as f64, j as f64 / m as f64),
        argmax_index: (i, j),
        f_zero_defect: eval_f(f, 0.0)?.abs(),
        f_minus_defect: (eval_f(f, -inv)? + inv).abs(),
    })
}

fn check_grid(n: usize, m: usize) -> Result<()> {
    require_n(n)?;
    if m < 2 {
        return Err(Error::InvalidDimension(m, "grid resolution must be at least 2"));
    }
    Ok(())
}

/// Face residual over the grid `{(i/m, j/m) : i + j ≤ m}`.
///
/// Rows are evaluated in parallel; the reduction runs in row-major order so
/// the result matches [`scan_face_sequential`] exactly.
pub fn scan_face(f: &OutcomeFunction, n: usize, m: usize) -> Result<ScanReport> {
    check_grid(n, m)?;
    let rows = (0..=m)
        .into_par_iter()
        .map(|i| grid_row(f, n, m, i))
        .collect::<Result<Vec<_>>>()?;
    finish_report(f, n, m, &rows)
}

pub fn scan_face_sequential(f: &OutcomeFunction, n: usize, m: usize) -> Result<ScanReport> {
    check_grid(n, m)?;
    let rows = (0..=m).map(|i| grid_row(f, n, m, i)).collect::<Result<Vec<_>>>()?;
    finish_report(f, n, m, &rows)
}

/// `f(x) + f(z) − f(x + z)`.
pub fn cauchy_residual(f: &OutcomeFunction, x: f64, z: f64) -> Result<f64> {
    let s = x + z;
    for v in [x, z, s] {
        if !v.is_finite() || v.abs() > 1.0 + DOMAIN_SLACK {
            return Err(Error::OutOfDomain(v));
        }
    }
    Ok(eval_f(f, x)? + eval_f(f, z)? - eval_f(f, s)?)
}

/// Spread (max − min) of central-difference slopes of `f` over the face
/// domain `[−1/(N−1), 1]`. Zero up to rounding exactly when `f` is affine
/// there.
pub fn derivative_spread(f: &OutcomeFunction, n: usize, samples: usize, h: f64) -> Result<f64> {
    require_n(n)?;
    let lo = -1.0 / (n as f64 - 1.0) + h;
    let hi = 1.0 - h;
    let samples = samples.max(2);
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for k in 0..samples {
        let x = lo + (hi - lo) * k as f64 / (samples - 1) as f64;
        let slope = (eval_f(f, x + h)? - eval_f(f, x - h)?) / (2.0 * h);
        min = min.min(slope);
        max = max.max(slope);
    }
    Ok(max - min)
}

/// Values `g_k` at nodes `k/m`, `k = −m..=m`.
#[derive(Debug, Clone, PartialEq)]
pub struct CauchySolution {
    pub m: usize,
    values: Vec<f64>,
}

impl CauchySolution {
    /// `g_k` for `−m ≤ k ≤ m`.
    pub fn value(&self, k: i64) -> f64 {
        self.values[(k + self.m as i64) as usize]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let m = self.m as i64;
        (-m..=m).map(move |k| (k as f64 / m as f64, self.value(k)))
    }

    /// `max_k |g_k − k/m|`.
    pub fn max_deviation(&self) -> f64 {
        self.nodes().map(|(x, g)| (g - x).abs()).fold(0.0, f64::max)
    }
}

/// Least-squares solution of `g_i + g_j = g_{i+j}` over all node triples in
/// `[−m, m]`, with `g_0 = 0` and `g_m = 1` imposed exactly.
pub fn cauchy_grid_solve(m: usize) -> Result<CauchySolution> {
    if m < 2 {
        return Err(Error::InvalidDimension(m, "the Cauchy grid needs m >= 2"));
    }
    let mi = m as i64;
    // Unknown columns: every k except 0 and m.
    let column = |k: i64| -> Option<usize> {
        match k {
            0 => None,
            k if k == mi => None,
            k if k < 0 => Some((k + mi) as usize),
            k => Some((k + mi - 1) as usize),
        }
    };
    let known = |k: i64| -> f64 {
        if k == mi {
            1.0
        } else {
            0.0
        }
    };
    let unknowns = 2 * m - 1;

    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in -mi..=mi {
        for j in i..=mi {
            let s = i + j;
            if s.abs() > mi {
                continue;
            }
            let mut row = vec![0.0; unknowns];
            let mut b = 0.0;
            for (k, coeff) in [(i, 1.0), (j, 1.0), (s, -1.0)] {
                match column(k) {
                    Some(c) => row[c] += coeff,
                    None => b -= coeff * known(k),
                }
            }
            if row.iter().all(|&x| x == 0.0) {
                continue;
            }
            rows.push(row);
            rhs.push(b);
        }
    }

    let x = lstsq::solve(&rows, &rhs)?;
    let values = (-mi..=mi)
        .map(|k| match column(k) {
            Some(c) => x[c],
            None => known(k),
        })
        .collect();
    Ok(CauchySolution { m, values })
}
