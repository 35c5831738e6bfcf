//! Generalized Pauli (Gell-Mann) matrices.
//!
//! For dimension N the basis holds N²−1 Hermitian, traceless matrices with
//! `Tr(Λ_i Λ_j) = 2δ_ij`, laid out as
//!
//! ```text
//! U_jk = |j⟩⟨k| + |k⟩⟨j|          1 ≤ j < k ≤ N   (lexicographic)
//! V_jk = −i(|j⟩⟨k| − |k⟩⟨j|)      1 ≤ j < k ≤ N   (lexicographic)
//! W_l  = −√(2/(l(l+1))) (l|l+1⟩⟨l+1| − Σ_{j≤l} |j⟩⟨j|)   1 ≤ l ≤ N−1
//! ```
//!
//! Indices above are one-based as in the usual physics notation; the stored
//! element order is U block, V block, W block. For N = 2 this is exactly
//! `[σ1, σ2, σ3]`.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::{Complex, ComplexMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisKind {
    U,
    V,
    W,
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BasisKind::U => "U",
            BasisKind::V => "V",
            BasisKind::W => "W",
        };
        f.write_str(s)
    }
}

/// Label of a basis element: its kind and one-based `(j, k)` or `(·, l)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisLabel {
    pub kind: BasisKind,
    /// `j` for U/V; zero for W.
    pub j: usize,
    /// `k` for U/V; `l` for W.
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedBasis {
    dim: usize,
    elements: Vec<ComplexMatrix>,
    labels: Vec<BasisLabel>,
    scale: f64,
}

impl GeneralizedBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `c_N = √(N(N−1)/2)`.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Builds a basis from arbitrary elements; used to probe `verify_basis`
    /// with deliberately broken sets.
    pub fn from_parts(dim: usize, elements: Vec<ComplexMatrix>, labels: Vec<BasisLabel>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension(dim, "basis dimension must be at least 2"));
        }
        if let Some(bad) = elements.iter().find(|m| m.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        if labels.len() != elements.len() {
            return Err(Error::DimensionMismatch {
                expected: elements.len(),
                found: labels.len(),
            });
        }
        Ok(Self {
            dim,
            elements,
            labels,
            scale: scale_constant(dim),
        })
    }
}

pub fn scale_constant(n: usize) -> f64 {
    ((n * (n - 1)) as f64 / 2.0).sqrt()
}

pub fn build_basis(n: usize) -> Result<GeneralizedBasis> {
    if n < 2 {
        return Err(Error::InvalidDimension(n, "basis dimension must be at least 2"));
    }
    let count = n * n - 1;
    let mut elements = Vec::with_capacity(count);
    let mut labels = Vec::with_capacity(count);

    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (j + 1..n).map(move |k| (j, k))).collect();

    for &(j, k) in &pairs {
        let mut m = ComplexMatrix::zeros(n);
        m[(j, k)] = Complex::new(1.0, 0.0);
        m[(k, j)] = Complex::new(1.0, 0.0);
        elements.push(m);
        labels.push(BasisLabel {
            kind: BasisKind::U,
            j: j + 1,
            k: k + 1,
        });
    }
    for &(j, k) in &pairs {
        let mut m = ComplexMatrix::zeros(n);
        // −i(|j⟩⟨k| − |k⟩⟨j|)
        m[(j, k)] = Complex::new(0.0, -1.0);
        m[(k, j)] = Complex::new(0.0, 1.0);
        elements.push(m);
        labels.push(BasisLabel {
            kind: BasisKind::V,
            j: j + 1,
            k: k + 1,
        });
    }
    for l in 1..n {
        let lf = l as f64;
        let norm = (2.0 / (lf * (lf + 1.0))).sqrt();
        let mut diag = vec![0.0; n];
        for d in diag.iter_mut().take(l) {
            *d = norm;
        }
        diag[l] = -norm * lf;
        elements.push(ComplexMatrix::from_real_diagonal(&diag));
        labels.push(BasisLabel {
            kind: BasisKind::W,
            j: 0,
            k: l,
        });
    }

    Ok(GeneralizedBasis {
        dim: n,
        elements,
        labels,
        scale: scale_constant(n),
    })
}

/// Zero-based position of an element in the `build_basis(n)` ordering.
///
/// `j` and `k_or_l` are one-based; `j` is ignored for `W`.
pub fn basis_index(kind: BasisKind, j: usize, k_or_l: usize, n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::InvalidDimension(n, "basis dimension must be at least 2"));
    }
    let pair_count = n * (n - 1) / 2;
    match kind {
        BasisKind::U | BasisKind::V => {
            let k = k_or_l;
            if !(1 <= j && j < k && k <= n) {
                return Err(Error::IndexOutOfRange(format!(
                    "{kind}({j},{k}) requires 1 <= j < k <= {n}"
                )));
            }
            // Pairs with first index < j, then offset within row j.
            let before: usize = (1..j).map(|r| n - r).sum();
            let pos = before + (k - j - 1);
            Ok(if kind == BasisKind::U { pos } else { pair_count + pos })
        }
        BasisKind::W => {
            let l = k_or_l;
            if !(1..n).contains(&l) {
                return Err(Error::IndexOutOfRange(format!(
                    "W({l}) requires 1 <= l <= {}",
                    n - 1
                )));
            }
            Ok(2 * pair_count + l - 1)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisReport {
    pub max_hermiticity_defect: f64,
    pub max_trace_defect: f64,
    pub max_orthogonality_defect: f64,
}

impl BasisReport {
    pub fn within(&self, tol: f64) -> bool {
        self.max_hermiticity_defect <= tol && self.max_trace_defect <= tol && self.max_orthogonality_defect <= tol
    }
}

/// Exact maxima of the Hermiticity, trace and `Tr(Λ_iΛ_j) − 2δ_ij` defects
/// over all elements and pairs. Compare against a tolerance with
/// [`BasisReport::within`].
pub fn verify_basis(b: &GeneralizedBasis) -> BasisReport {
    let mut report = BasisReport {
        max_hermiticity_defect: 0.0,
        max_trace_defect: 0.0,
        max_orthogonality_defect: 0.0,
    };
    let els = b.elements();
    for (i, a) in els.iter().enumerate() {
        report.max_hermiticity_defect = report.max_hermiticity_defect.max(a.hermiticity_defect());
        report.max_trace_defect = report.max_trace_defect.max(a.trace().norm());
        for (j, c) in els.iter().enumerate().skip(i) {
            let expected = if i == j { 2.0 } else { 0.0 };
            let t = a.trace_product(c).expect("basis elements share a dimension");
            let defect = (t - Complex::new(expected, 0.0)).norm();
            report.max_orthogonality_defect = report.max_orthogonality_defect.max(defect);
        }
    }
    report
}
