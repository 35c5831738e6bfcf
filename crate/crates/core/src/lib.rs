//! Generalized Bloch representation of N-level quantum states and a
//! numerical look at why the Born rule is forced for N ≥ 3.
//!
//! - [`matrix`]: dense complex matrices and a Hermitian Jacobi eigensolver.
//! - [`basis`]: the N²−1 generalized Pauli matrices.
//! - [`geometry`]: density matrix ↔ Bloch vector, state validity, the
//!   measurement simplex.
//! - [`rules`]: Born probabilities and candidate rules `P_f`.
//! - [`gleason`]: face-constraint scans and the discrete Cauchy solve.
//! - [`text`], [`report`], [`cli`]: file formats, output documents and the
//!   command implementations used by the binary.

pub mod basis;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod gleason;
mod lstsq;
pub mod matrix;
pub mod report;
pub mod rules;
pub mod text;

pub use basis::{basis_index, build_basis, verify_basis, BasisKind, BasisReport, GeneralizedBasis};
pub use error::{Error, Result};
pub use geometry::{
    bloch_to_density, density_to_bloch, gram_matrix, is_valid_state, measurement_from_vectors, purity,
    random_density, simplex_decompose, BlochVector, DensityMatrix, Measurement, SimplexDecomposition,
};
pub use gleason::{alpha, cauchy_grid_solve, cauchy_residual, face_residual, scan_face, CauchySolution, ScanReport};
pub use matrix::{Complex, ComplexMatrix};
pub use rules::{born_probability, eval_f, rule_probability, validate_qubit_rule, OutcomeFunction, RuleReport};
