//! Dense square complex matrices with just enough algebra for the Bloch
//! machinery: products, adjoints, traces, a cyclic Jacobi eigensolver for
//! Hermitian input and a Gram-Schmidt QR used to draw random unitaries.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Complex = Complex64;

/// Default absolute tolerance on `max |A - A†|`.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Jacobi stops once the off-diagonal Frobenius norm drops below this
/// (scaled by `max(1, ‖A‖_F)`).
pub const JACOBI_OFF_TOL: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Row-major N×N complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![Complex::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from rows; rejects ragged, empty or non-finite input.
    pub fn from_rows(rows: Vec<Vec<Complex>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidDimension(0, "matrix must have at least one row"));
        }
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { dim, data })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex::new(d, 0.0);
        }
        m
    }

    /// Rank-one projector `|v⟩⟨v|`.
    pub fn outer(v: &[Complex]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Complex> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// `Tr(AB)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Result<Complex> {
        self.check_dim(other)?;
        let n = self.dim;
        let mut acc = Complex::new(0.0, 0.0);
        for i in 0..n {
            for k in 0..n {
                acc += self.data[i * n + k] * other.data[k * n + i];
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, s: Complex) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(Complex::new(s, 0.0))
    }

    /// Largest entrywise modulus.
    pub fn max_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |a_ij - b_ij|`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_dim(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Max-norm of `A - A†`.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// Ascending eigenvalues of a Hermitian matrix by cyclic complex Jacobi
    /// rotations.
    pub fn hermitian_eigenvalues(&self, tol: f64) -> Result<Vec<f64>> {
        let defect = self.hermiticity_defect();
        if defect > tol {
            return Err(Error::NotHermitian(defect));
        }
        let n = self.dim;
        // Symmetrize so the rotations act on an exactly Hermitian matrix.
        let mut a = Self::from_fn(n, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5);
        let threshold = JACOBI_OFF_TOL * a.frobenius_norm().max(1.0);

        let mut converged = n == 1;
        for _ in 0..JACOBI_MAX_SWEEPS {
            if a.off_diagonal_norm() < threshold {
                converged = true;
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    a.jacobi_rotate(p, q);
                }
            }
        }
        if !converged && a.off_diagonal_norm() >= threshold {
            return Err(Error::NoConvergence(JACOBI_MAX_SWEEPS));
        }

        let mut eig: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
        eig.sort_by(f64::total_cmp);
        Ok(eig)
    }

    fn off_diagonal_norm(&self) -> f64 {
        let n = self.dim;
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += self[(i, j)].norm_sqr();
                }
            }
        }
        s.sqrt()
    }

    /// One two-sided rotation `A ← U† A U` annihilating `a_pq`.
    ///
    /// With `a_pq = g e^{iφ}` the unitary is a phase on column q followed by a
    /// real Givens rotation of the now-real 2×2 block.
    fn jacobi_rotate(&mut self, p: usize, q: usize) {
        let apq = self[(p, q)];
        let g = apq.norm();
        if g == 0.0 {
            return;
        }
        let phase = apq / g;
        let app = self[(p, p)].re;
        let aqq = self[(q, q)].re;
        let tau = (aqq - app) / (2.0 * g);
        let t = if tau >= 0.0 {
            1.0 / (tau + (1.0 + tau * tau).sqrt())
        } else {
            -1.0 / (-tau + (1.0 + tau * tau).sqrt())
        };
        let c = 1.0 / (1.0 + t * t).sqrt();
        let s = t * c;

        // U restricted to (p, q): [[c, s], [-s e^{-iφ}, c e^{-iφ}]].
        let u_pp = Complex::new(c, 0.0);
        let u_pq = Complex::new(s, 0.0);
        let u_qp = -phase.conj() * s;
        let u_qq = phase.conj() * c;

        let n = self.dim;
        for k in 0..n {
            let akp = self[(k, p)];
            let akq = self[(k, q)];
            self[(k, p)] = akp * u_pp + akq * u_qp;
            self[(k, q)] = akp * u_pq + akq * u_qq;
        }
        for k in 0..n {
            let apk = self[(p, k)];
            let aqk = self[(q, k)];
            self[(p, k)] = u_pp.conj() * apk + u_qp.conj() * aqk;
            self[(q, k)] = u_pq.conj() * apk + u_qq.conj() * aqk;
        }
        self[(p, q)] = Complex::new(0.0, 0.0);
        self[(q, p)] = Complex::new(0.0, 0.0);
        self[(p, p)].im = 0.0;
        self[(q, q)].im = 0.0;
    }

    /// Q factor of a QR decomposition by modified Gram-Schmidt. R's diagonal
    /// comes out real and positive, which fixes the column phases.
    pub fn qr_unitary(&self) -> Result<Self> {
        let n = self.dim;
        let mut cols: Vec<Vec<Complex>> = (0..n).map(|j| self.column(j)).collect();
        for j in 0..n {
            for k in 0..j {
                let (done, rest) = cols.split_at_mut(j);
                let qk = &done[k];
                let proj: Complex = qk.iter().zip(rest[0].iter()).map(|(a, b)| a.conj() * b).sum();
                for (x, qx) in rest[0].iter_mut().zip(qk) {
                    *x -= proj * qx;
                }
            }
            let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-300 {
                return Err(Error::InvalidDimension(n, "rank-deficient matrix in QR"));
            }
            for x in cols[j].iter_mut() {
                *x /= norm;
            }
        }
        Ok(Self::from_fn(n, |i, j| cols[j][i]))
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex;

    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in add");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sub");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.mat_mul(rhs).expect("dimension mismatch in mul")
    }
}

/// The three Pauli matrices, handy in tests and docs.
pub fn pauli() -> [ComplexMatrix; 3] {
    let z = Complex::new(0.0, 0.0);
    let one = Complex::new(1.0, 0.0);
    let i = Complex::new(0.0, 1.0);
    [
        ComplexMatrix::from_rows(vec![vec![z, one], vec![one, z]]).unwrap(),
        ComplexMatrix::from_rows(vec![vec![z, -i], vec![i, z]]).unwrap(),
        ComplexMatrix::from_rows(vec![vec![one, z], vec![z, -one]]).unwrap(),
    ]
}
