//! Command implementations behind the `bloch-gleason` binary.
//!
//! Each command returns an [`OutputDocument`] and an exit status; argument
//! parsing lives in `main.rs`. Exit statuses: 0 pass, 1 rule falsified (or
//! failed validation), 2 usage or input error.

use std::path::Path;

use crate::basis::{build_basis, verify_basis};
use crate::error::{Error, Result};
use crate::geometry::{
    bloch_to_density, density_to_bloch, fourier_unitary, measurement_from_unitary, min_eigenvalue, random_unitary,
    BlochVector, Measurement,
};
use crate::gleason::{alpha, cauchy_grid_solve, scan_face};
use crate::matrix::ComplexMatrix;
use crate::report::{OutputDocument, Table};
use crate::rules::{born_probability, rule_probability, validate_qubit_rule, OutcomeFunction};
use crate::text::{parse_matrix, parse_state, Representation, StateInput};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FALSIFIED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub document: OutputDocument,
    pub status: u8,
}

impl CommandOutput {
    fn pass(document: OutputDocument) -> Self {
        Self {
            document,
            status: EXIT_PASS,
        }
    }
}

fn matrix_table(name: &str, m: &ComplexMatrix) -> Table {
    let mut t = Table::new(name, &["row", "col", "re", "im"]);
    let n = m.dim();
    for i in 0..n {
        for j in 0..n {
            let z = m[(i, j)];
            t.push(vec![i.into(), j.into(), z.re.into(), z.im.into()]);
        }
    }
    t
}

fn vector_table(name: &str, r: &BlochVector) -> Table {
    let mut t = Table::new(name, &["index", "value"]);
    for (i, &x) in r.components().iter().enumerate() {
        t.push(vec![i.into(), x.into()]);
    }
    t
}

pub fn cmd_basis(dim: usize) -> Result<CommandOutput> {
    let basis = build_basis(dim)?;
    let report = verify_basis(&basis);
    let mut doc = OutputDocument::new("basis");
    doc.set("dim", dim)
        .set("count", basis.len())
        .set("scale", basis.scale())
        .set("max_hermiticity_defect", report.max_hermiticity_defect)
        .set("max_trace_defect", report.max_trace_defect)
        .set("max_orthogonality_defect", report.max_orthogonality_defect);

    let mut t = Table::new("elements", &["index", "kind", "j", "k", "row", "col", "re", "im"]);
    for (idx, (el, label)) in basis.elements().iter().zip(basis.labels()).enumerate() {
        for row in 0..dim {
            for col in 0..dim {
                let z = el[(row, col)];
                t.push(vec![
                    idx.into(),
                    label.kind.to_string().into(),
                    label.j.into(),
                    label.k.into(),
                    row.into(),
                    col.into(),
                    z.re.into(),
                    z.im.into(),
                ]);
            }
        }
    }
    doc.tables.push(t);
    Ok(CommandOutput::pass(doc))
}

/// Where a state comes from on the command line.
#[derive(Debug, Clone)]
pub enum StateSource<'a> {
    File {
        path: &'a Path,
        repr: Option<Representation>,
    },
    Random {
        seed: u64,
    },
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_state(source: &StateSource<'_>, dim: Option<usize>) -> Result<StateInput> {
    match source {
        StateSource::File { path, repr } => parse_state(&read_file(path)?, *repr, dim),
        StateSource::Random { seed } => {
            let n = dim.ok_or(Error::InvalidDimension(0, "--dim is required for a random state"))?;
            Ok(StateInput::Matrix(crate::geometry::random_density(n, *seed)?))
        }
    }
}

/// Resolves a state to both representations, validating Hermiticity and
/// trace on the matrix side.
fn resolve_state(input: StateInput) -> Result<(ComplexMatrix, BlochVector)> {
    let basis = build_basis(input.dim())?;
    match input {
        StateInput::Matrix(m) => {
            let r = density_to_bloch(&m, &basis)?;
            Ok((m, r))
        }
        StateInput::Bloch(r) => {
            let m = bloch_to_density(&r, &basis)?;
            Ok((m, r))
        }
    }
}

pub fn cmd_convert(source: &StateSource<'_>, dim: Option<usize>, tol: f64) -> Result<CommandOutput> {
    let input = load_state(source, dim)?;
    let from_matrix = matches!(input, StateInput::Matrix(_));
    let (matrix, bloch) = resolve_state(input)?;
    let lo = min_eigenvalue(&matrix)?;
    let valid = lo >= -tol;
    let purity = valid.then(|| matrix.trace_product(&matrix).map(|t| t.re)).transpose()?;

    let mut doc = OutputDocument::new("convert");
    doc.set("dim", matrix.dim())
        .set("input", if from_matrix { "matrix" } else { "bloch" })
        .set("valid", valid)
        .set("min_eigenvalue", lo)
        .set("purity", purity)
        .set("bloch_norm", bloch.norm());
    if from_matrix {
        doc.tables.push(vector_table("bloch", &bloch));
    } else {
        doc.tables.push(matrix_table("matrix", &matrix));
    }
    Ok(CommandOutput::pass(doc))
}

/// Measurement basis choice for `probs`.
#[derive(Debug, Clone)]
pub enum BasisSource<'a> {
    Computational,
    Fourier,
    Random { seed: u64 },
    /// Matrix file whose columns are the basis vectors.
    File(&'a Path),
}

impl<'a> BasisSource<'a> {
    pub fn from_arg(arg: &'a str, seed: u64) -> Self {
        match arg {
            "computational" => Self::Computational,
            "fourier" => Self::Fourier,
            "random" => Self::Random { seed },
            path => Self::File(Path::new(path)),
        }
    }

    fn unitary(&self, n: usize) -> Result<ComplexMatrix> {
        let u = match self {
            Self::Computational => ComplexMatrix::identity(n),
            Self::Fourier => fourier_unitary(n),
            Self::Random { seed } => random_unitary(n, *seed)?,
            Self::File(path) => parse_matrix(&read_file(path)?)?,
        };
        if u.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: u.dim(),
            });
        }
        Ok(u)
    }

    fn label(&self) -> String {
        match self {
            Self::Computational => "computational".into(),
            Self::Fourier => "fourier".into(),
            Self::Random { seed } => format!("random:{seed}"),
            Self::File(p) => p.display().to_string(),
        }
    }
}

pub fn cmd_probs(
    source: &StateSource<'_>,
    dim: Option<usize>,
    measurement: &BasisSource<'_>,
    f: &OutcomeFunction,
) -> Result<CommandOutput> {
    let (_, r) = resolve_state(load_state(source, dim)?)?;
    let n = r.dim();
    let basis = build_basis(n)?;
    let m: Measurement<'_> = measurement_from_unitary(&measurement.unitary(n)?, &basis)?;

    let mut doc = OutputDocument::new("probs");
    doc.set("dim", n)
        .set("basis", measurement.label())
        .set("f", f.to_string());
    let mut t = Table::new("outcomes", &["outcome", "born", "rule", "difference"]);
    let mut born_total = 0.0;
    let mut rule_total = 0.0;
    for i in 0..n {
        let born = born_probability(&r, &m, i)?;
        let rule = rule_probability(f, &r, &m, i)?;
        born_total += born;
        rule_total += rule;
        t.push(vec![(i + 1).into(), born.into(), rule.into(), (rule - born).into()]);
    }
    doc.set("born_total", born_total).set("rule_total", rule_total);
    doc.tables.push(t);
    Ok(CommandOutput::pass(doc))
}

pub fn cmd_validate(f: &OutcomeFunction, trials: usize, seed: u64, tol: f64) -> Result<CommandOutput> {
    let rep = validate_qubit_rule(f, trials, seed, tol)?;
    let mut doc = OutputDocument::new("validate");
    doc.set("dim", 2usize)
        .set("f", f.to_string())
        .set("trials", trials)
        .set("seed", seed as i64)
        .set("tol", tol)
        .set("reflexivity_defect", rep.reflexivity_defect)
        .set("orthogonality_defect", rep.orthogonality_defect)
        .set("additivity_defect", rep.additivity_defect)
        .set("range_defect", rep.range_defect)
        .set("passed", rep.passed);
    Ok(CommandOutput {
        document: doc,
        status: if rep.passed { EXIT_PASS } else { EXIT_FALSIFIED },
    })
}

pub fn cmd_falsify(dim: usize, f: &OutcomeFunction, grid: usize, tol: f64) -> Result<CommandOutput> {
    let a = alpha(dim)?;
    let rep = scan_face(f, dim, grid)?;
    let survives = rep.survives(tol);
    let mut doc = OutputDocument::new("falsify");
    doc.set("n", rep.n)
        .set("f", f.to_string())
        .set("grid_resolution", rep.grid_resolution)
        .set("alpha", a)
        .set("max_abs_residual", rep.max_abs_residual)
        .set("argmax_a", rep.argmax.0)
        .set("argmax_b", rep.argmax.1)
        .set("f_zero_defect", rep.f_zero_defect)
        .set("f_minus_defect", rep.f_minus_defect)
        .set("tol", tol)
        .set("survives", survives);
    Ok(CommandOutput {
        document: doc,
        status: if survives { EXIT_PASS } else { EXIT_FALSIFIED },
    })
}

pub fn cmd_cauchy(m: usize) -> Result<CommandOutput> {
    let sol = cauchy_grid_solve(m)?;
    let mut doc = OutputDocument::new("cauchy");
    doc.set("m", m).set("max_deviation", sol.max_deviation());
    let mut t = Table::new("nodes", &["k", "x", "g", "deviation"]);
    let mi = m as i64;
    for (k, (x, g)) in (-mi..=mi).zip(sol.nodes()) {
        t.push(vec![k.into(), x.into(), g.into(), (g - x).into()]);
    }
    doc.tables.push(t);
    Ok(CommandOutput::pass(doc))
}
