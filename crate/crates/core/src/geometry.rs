//! Density operators, Bloch vectors and the measurement simplex.
//!
//! A state of an N-level system is written
//!
//! ```text
//! D(r) = (1/N) [ I + c_N Σ r_i Λ_i ],      c_N = √(N(N−1)/2)
//! r_i  = √(N / (2(N−1))) Tr(D Λ_i)
//! ```
//!
//! Every Hermitian unit-trace matrix has such a vector, but only part of the
//! unit ball maps to positive matrices once N ≥ 3. A projective measurement
//! maps to N unit vertices `n_i` forming a regular simplex centred at the
//! origin with `n_i · n_j = −1/(N−1)` for `i ≠ j`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::basis::GeneralizedBasis;
use crate::error::{Error, Result};
use crate::matrix::{Complex, ComplexMatrix, HERMITIAN_TOL};

/// Absolute slack on the smallest eigenvalue of a state.
pub const POSITIVITY_TOL: f64 = 1e-10;
/// Slack on `Tr D = 1` when reading a matrix back into Bloch form.
pub const TRACE_TOL: f64 = 1e-10;
pub const ORTHONORMAL_TOL: f64 = 1e-10;

/// Real coordinates `r` of a Hermitian unit-trace operator, length N²−1.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochVector {
    dim: usize,
    components: Vec<f64>,
}

impl BlochVector {
    pub fn new(dim: usize, components: Vec<f64>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension(dim, "Bloch vectors need N >= 2"));
        }
        if components.len() != dim * dim - 1 {
            return Err(Error::DimensionMismatch {
                expected: dim * dim - 1,
                found: components.len(),
            });
        }
        if components.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { dim, components })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            components: vec![0.0; dim * dim - 1],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.components.iter().zip(&other.components).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            components: self.components.iter().map(|x| x * s).collect(),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self {
            dim: self.dim,
            components: self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(-1.0))
    }

    /// `Σ w_i v_i` over equally sized vectors.
    pub fn combination(dim: usize, terms: impl IntoIterator<Item = (f64, Self)>) -> Self {
        terms
            .into_iter()
            .fold(Self::zeros(dim), |acc, (w, v)| acc.plus(&v.scaled(w)))
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: self.dim,
            });
        }
        Ok(())
    }
}

/// A Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    min_eigenvalue: f64,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, positivity_tol: f64) -> Result<Self> {
        check_hermitian_unit_trace(&matrix, HERMITIAN_TOL, HERMITIAN_TOL)?;
        let min_eigenvalue = min_eigenvalue(&matrix)?;
        if min_eigenvalue < -positivity_tol {
            return Err(Error::NotPositive(min_eigenvalue));
        }
        Ok(Self { matrix, min_eigenvalue })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.min_eigenvalue
    }

    pub fn into_inner(self) -> ComplexMatrix {
        self.matrix
    }
}

fn check_hermitian_unit_trace(d: &ComplexMatrix, herm_tol: f64, trace_tol: f64) -> Result<()> {
    let defect = d.hermiticity_defect();
    if defect > herm_tol {
        return Err(Error::NotHermitian(defect));
    }
    let tr = d.trace();
    if (tr - Complex::new(1.0, 0.0)).norm() > trace_tol {
        return Err(Error::BadTrace(tr.re));
    }
    Ok(())
}

pub fn min_eigenvalue(d: &ComplexMatrix) -> Result<f64> {
    Ok(d.hermitian_eigenvalues(HERMITIAN_TOL)?[0])
}

pub fn bloch_to_density(r: &BlochVector, basis: &GeneralizedBasis) -> Result<ComplexMatrix> {
    let n = basis.dim();
    r.check_dim(n)?;
    let inv_n = 1.0 / n as f64;
    let coeff = basis.scale() * inv_n;
    let mut d = ComplexMatrix::identity(n).scale_real(inv_n);
    for (ri, lambda) in r.components().iter().zip(basis.elements()) {
        if *ri == 0.0 {
            continue;
        }
        d = &d + &lambda.scale_real(coeff * ri);
    }
    Ok(d)
}

pub fn density_to_bloch(d: &ComplexMatrix, basis: &GeneralizedBasis) -> Result<BlochVector> {
    let n = basis.dim();
    if d.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: d.dim(),
        });
    }
    check_hermitian_unit_trace(d, TRACE_TOL, TRACE_TOL)?;
    let nf = n as f64;
    let k = (nf / (2.0 * (nf - 1.0))).sqrt();
    let components = basis
        .elements()
        .iter()
        .map(|lambda| d.trace_product(lambda).map(|t| k * t.re))
        .collect::<Result<Vec<f64>>>()?;
    BlochVector::new(n, components)
}

pub fn is_valid_state(r: &BlochVector, basis: &GeneralizedBasis, tol: f64) -> Result<bool> {
    let d = bloch_to_density(r, basis)?;
    Ok(min_eigenvalue(&d)? >= -tol)
}

/// `Tr(D²)`, computed from the matrix; 1 exactly for pure states.
pub fn purity(r: &BlochVector, basis: &GeneralizedBasis) -> Result<f64> {
    let d = bloch_to_density(r, basis)?;
    let lo = min_eigenvalue(&d)?;
    if lo < -POSITIVITY_TOL {
        return Err(Error::NotPositive(lo));
    }
    Ok(d.trace_product(&d)?.re)
}

/// An ideal measurement: rank-one projectors and their Bloch vertices.
#[derive(Debug, Clone)]
pub struct Measurement<'a> {
    basis: &'a GeneralizedBasis,
    projectors: Vec<ComplexMatrix>,
    vertices: Vec<BlochVector>,
}

impl<'a> Measurement<'a> {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn basis(&self) -> &'a GeneralizedBasis {
        self.basis
    }

    pub fn projectors(&self) -> &[ComplexMatrix] {
        &self.projectors
    }

    pub fn vertices(&self) -> &[BlochVector] {
        &self.vertices
    }

    /// Measurement in the standard coordinate basis.
    pub fn computational(basis: &'a GeneralizedBasis) -> Self {
        measurement_from_unitary(&ComplexMatrix::identity(basis.dim()), basis)
            .expect("identity columns are orthonormal")
    }
}

/// Uses the columns of `u` as the measurement eigenbasis.
pub fn measurement_from_unitary<'a>(u: &ComplexMatrix, basis: &'a GeneralizedBasis) -> Result<Measurement<'a>> {
    let cols: Vec<Vec<Complex>> = (0..u.dim()).map(|j| u.column(j)).collect();
    measurement_from_vectors(&cols, basis)
}

pub fn measurement_from_vectors<'a>(columns: &[Vec<Complex>], basis: &'a GeneralizedBasis) -> Result<Measurement<'a>> {
    let n = basis.dim();
    if columns.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: columns.len(),
        });
    }
    if let Some(bad) = columns.iter().find(|c| c.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.len(),
        });
    }
    let mut worst: f64 = 0.0;
    for (i, a) in columns.iter().enumerate() {
        for (j, b) in columns.iter().enumerate().skip(i) {
            let ip: Complex = a.iter().zip(b).map(|(x, y)| x.conj() * y).sum();
            let expected = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((ip - Complex::new(expected, 0.0)).norm());
        }
    }
    if !worst.is_finite() || worst > ORTHONORMAL_TOL {
        return Err(Error::NotOrthonormal(worst));
    }

    let projectors: Vec<ComplexMatrix> = columns.iter().map(|v| ComplexMatrix::outer(v)).collect();
    let vertices = projectors
        .iter()
        .map(|p| density_to_bloch(p, basis))
        .collect::<Result<Vec<_>>>()?;
    Ok(Measurement {
        basis,
        projectors,
        vertices,
    })
}

/// `G_ij = n_i · n_j`.
pub fn gram_matrix(m: &Measurement<'_>) -> Vec<Vec<f64>> {
    let v = m.vertices();
    v.iter().map(|a| v.iter().map(|b| a.dot(b)).collect()).collect()
}

/// Orthogonal split of `r` against the simplex spanned by the vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexDecomposition {
    /// Weights `r∥_i` with `r∥ = Σ r∥_i n_i` and `Σ r∥_i = 1`.
    pub barycentric: Vec<f64>,
    pub r_parallel: BlochVector,
    pub r_perp: BlochVector,
}

/// Barycentric weights from the closed form `(1 + (N−1) r·n_i) / N`.
pub fn simplex_decompose(r: &BlochVector, m: &Measurement<'_>) -> Result<SimplexDecomposition> {
    let n = m.dim();
    r.check_dim(n)?;
    let nf = n as f64;
    let barycentric: Vec<f64> = m
        .vertices()
        .iter()
        .map(|v| (1.0 + (nf - 1.0) * r.dot(v)) / nf)
        .collect();
    let r_parallel = BlochVector::combination(n, barycentric.iter().copied().zip(m.vertices().iter().cloned()));
    let r_perp = r.minus(&r_parallel);
    Ok(SimplexDecomposition {
        barycentric,
        r_parallel,
        r_perp,
    })
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Matrix of independent standard complex Gaussians.
pub fn gaussian_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    })
}

/// `G G† / Tr(G G†)` with Gaussian `G` (Hilbert-Schmidt measure).
pub fn random_density_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<ComplexMatrix> {
    if n < 2 {
        return Err(Error::InvalidDimension(n, "random states need N >= 2"));
    }
    let g = gaussian_matrix(n, rng);
    let gg = g.mat_mul(&g.adjoint())?;
    let tr = gg.trace().re;
    let mut d = gg.scale_real(1.0 / tr);
    // Exact Hermitian symmetry so tolerances only see the trace rounding.
    for i in 0..n {
        d[(i, i)].im = 0.0;
        for j in i + 1..n {
            d[(j, i)] = d[(i, j)].conj();
        }
    }
    Ok(d)
}

pub fn random_density(n: usize, seed: u64) -> Result<ComplexMatrix> {
    random_density_with(n, &mut seeded_rng(seed))
}

/// Haar-random unitary: QR of a Gaussian matrix with R's diagonal made
/// positive.
pub fn random_unitary_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<ComplexMatrix> {
    gaussian_matrix(n, rng).qr_unitary()
}

pub fn random_unitary(n: usize, seed: u64) -> Result<ComplexMatrix> {
    random_unitary_with(n, &mut seeded_rng(seed))
}

/// Uniform point in the unit ball of R^(N²−1).
pub fn random_ball_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> BlochVector {
    let len = n * n - 1;
    let mut v: Vec<f64> = (0..len).map(|_| rng.sample(StandardNormal)).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let radius = rng.random::<f64>().powf(1.0 / len as f64);
    for x in v.iter_mut() {
        *x *= radius / norm;
    }
    BlochVector { dim: n, components: v }
}

/// Discrete Fourier basis `F_jk = ω^{jk} / √N`.
pub fn fourier_unitary(n: usize) -> ComplexMatrix {
    let nf = n as f64;
    ComplexMatrix::from_fn(n, |j, k| {
        let phase = 2.0 * std::f64::consts::PI * (j * k) as f64 / nf;
        Complex::from_polar(1.0 / nf.sqrt(), phase)
    })
}
