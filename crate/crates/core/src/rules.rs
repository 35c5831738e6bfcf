//! Born probabilities and the family of candidate rules
//!
//! ```text
//! P_f(r → n_i) = (1/N) [1 + (N−1) f(r · n_i)]
//! ```
//!
//! with `f` odd and `f(1) = 1`. `f = identity` is the Born rule. For qubits
//! every such `f` yields a consistent probability assignment; for N ≥ 3 the
//! checks in [`crate::gleason`] rule out everything but the identity.

use crate::error::{Error, Result};
use crate::geometry::{
    bloch_to_density, is_valid_state, measurement_from_unitary, random_ball_vector, random_unitary_with,
    seeded_rng, BlochVector, Measurement, POSITIVITY_TOL,
};
use crate::basis::build_basis;

/// Inputs this far outside [−1, 1] are clamped instead of rejected.
pub const DOMAIN_SLACK: f64 = 1e-12;
/// Tolerance on `f(1) = 1` and on oddness at table nodes.
pub const FUNCTION_TOL: f64 = 1e-12;
/// Slack on `‖r‖ ≤ 1` for candidate rules.
pub const BALL_TOL: f64 = 1e-10;

/// A piecewise-linear odd function through `(x, f(x))` nodes spanning [−1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedFunction {
    nodes: Vec<(f64, f64)>,
}

impl TabulatedFunction {
    /// Nodes must be finite, strictly increasing in `x`, start at −1, end at
    /// 1, have `f(1) = 1` and be odd at every node.
    pub fn new(nodes: Vec<(f64, f64)>) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidFunction(msg));
        if nodes.len() < 2 {
            return invalid("a table needs at least two nodes".into());
        }
        if nodes.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(Error::NonFinite);
        }
        if nodes.windows(2).any(|w| w[1].0 <= w[0].0) {
            return invalid("table nodes must be strictly increasing in x".into());
        }
        let (first, last) = (nodes[0], nodes[nodes.len() - 1]);
        if first.0 != -1.0 || last.0 != 1.0 {
            return invalid(format!("table must span [-1, 1], got [{}, {}]", first.0, last.0));
        }
        if (last.1 - 1.0).abs() > FUNCTION_TOL {
            return invalid(format!("f(1) = {} but must equal 1", last.1));
        }
        let table = Self { nodes };
        for &(x, y) in &table.nodes {
            let mirrored = table.interpolate(-x);
            if (mirrored + y).abs() > FUNCTION_TOL {
                return invalid(format!("table is not odd at x = {x}: f(-x) = {mirrored}, f(x) = {y}"));
            }
        }
        Ok(table)
    }

    pub fn nodes(&self) -> &[(f64, f64)] {
        &self.nodes
    }

    fn interpolate(&self, x: f64) -> f64 {
        let nodes = &self.nodes;
        // First node with abscissa >= x.
        let hi = nodes.partition_point(|&(nx, _)| nx < x);
        if hi == 0 {
            return nodes[0].1;
        }
        if hi == nodes.len() {
            return nodes[nodes.len() - 1].1;
        }
        let (x0, y0) = nodes[hi - 1];
        let (x1, y1) = nodes[hi];
        if x == x1 {
            return y1;
        }
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }
}

/// The function `f` defining a candidate probability rule.
#[derive(Debug, Clone, PartialEq)]
pub enum OutcomeFunction {
    Identity,
    /// `x^k` for odd `k ≥ 1`.
    OddPower(u32),
    Sign,
    Tabulated(TabulatedFunction),
}

impl OutcomeFunction {
    pub fn odd_power(exponent: u32) -> Result<Self> {
        if exponent.is_multiple_of(2) {
            return Err(Error::InvalidFunction(format!(
                "exponent must be an odd positive integer, got {exponent}"
            )));
        }
        Ok(Self::OddPower(exponent))
    }

    /// The frozen built-in set: identity, x³, x⁵ and sign.
    pub fn builtins() -> Vec<Self> {
        vec![Self::Identity, Self::OddPower(3), Self::OddPower(5), Self::Sign]
    }

    /// Built-ins other than the identity.
    pub fn nonlinear_builtins() -> Vec<Self> {
        vec![Self::OddPower(3), Self::OddPower(5), Self::Sign]
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, Self::Identity | Self::OddPower(1))
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        eval_f(self, x)
    }
}

pub fn eval_f(f: &OutcomeFunction, x: f64) -> Result<f64> {
    if !x.is_finite() || x.abs() > 1.0 + DOMAIN_SLACK {
        return Err(Error::OutOfDomain(x));
    }
    let x = x.clamp(-1.0, 1.0);
    Ok(match f {
        OutcomeFunction::Identity => x,
        OutcomeFunction::OddPower(k) => x.powi(*k as i32),
        OutcomeFunction::Sign => {
            if x > 0.0 {
                1.0
            } else if x < 0.0 {
                -1.0
            } else {
                0.0
            }
        }
        OutcomeFunction::Tabulated(t) => t.interpolate(x),
    })
}

fn check_outcome(m: &Measurement<'_>, i: usize) -> Result<()> {
    if i >= m.dim() {
        return Err(Error::IndexOutOfRange(format!(
            "outcome {i} for a {}-outcome measurement",
            m.dim()
        )));
    }
    Ok(())
}

/// `(1/N) [1 + (N−1) r·n_i]` for a valid state; `i` is zero-based.
pub fn born_probability(r: &BlochVector, m: &Measurement<'_>, i: usize) -> Result<f64> {
    check_outcome(m, i)?;
    if !is_valid_state(r, m.basis(), POSITIVITY_TOL)? {
        let d = bloch_to_density(r, m.basis())?;
        return Err(Error::NotPositive(crate::geometry::min_eigenvalue(&d)?));
    }
    let nf = m.dim() as f64;
    Ok((1.0 + (nf - 1.0) * r.dot(&m.vertices()[i])) / nf)
}

/// `Tr(D(r) P_i)` evaluated on the matrices.
pub fn trace_probability(r: &BlochVector, m: &Measurement<'_>, i: usize) -> Result<f64> {
    check_outcome(m, i)?;
    let d = bloch_to_density(r, m.basis())?;
    Ok(d.trace_product(&m.projectors()[i])?.re)
}

/// `P_f(r → n_i)`; not clamped to [0, 1].
pub fn rule_probability(f: &OutcomeFunction, r: &BlochVector, m: &Measurement<'_>, i: usize) -> Result<f64> {
    check_outcome(m, i)?;
    if r.dim() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            found: r.dim(),
        });
    }
    let norm = r.norm();
    if norm > 1.0 + BALL_TOL {
        return Err(Error::OutsideBall(norm));
    }
    let nf = m.dim() as f64;
    let x = r.dot(&m.vertices()[i]).clamp(-1.0, 1.0);
    Ok((1.0 + (nf - 1.0) * eval_f(f, x)?) / nf)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RuleReport {
    /// `max |P_f(n_i → n_i) − 1|`
    pub reflexivity_defect: f64,
    /// `max |P_f(n_i → n_j)|`, `i ≠ j`
    pub orthogonality_defect: f64,
    /// `max |P_f(r → n_1) + P_f(r → n_2) − 1|`
    pub additivity_defect: f64,
    /// How far any probability leaves [0, 1].
    pub range_defect: f64,
    pub passed: bool,
}

/// Checks that `P_f` is a probability measure on random qubit states and
/// random measurement bases.
pub fn validate_qubit_rule(f: &OutcomeFunction, trials: usize, seed: u64, tol: f64) -> Result<RuleReport> {
    let basis = build_basis(2)?;
    let mut rng = seeded_rng(seed);
    let mut report = RuleReport {
        reflexivity_defect: 0.0,
        orthogonality_defect: 0.0,
        additivity_defect: 0.0,
        range_defect: 0.0,
        passed: false,
    };
    let range_excess = |p: f64| (-p).max(p - 1.0).max(0.0);

    for trial in 0..trials {
        let u = random_unitary_with(2, &mut rng)?;
        let m = measurement_from_unitary(&u, &basis)?;
        let mut r = random_ball_vector(2, &mut rng);
        // Every fourth trial probes the pure-state surface.
        if trial % 4 == 3 {
            r = r.scaled(1.0 / r.norm());
        }

        for i in 0..2 {
            let own = rule_probability(f, &m.vertices()[i], &m, i)?;
            let other = rule_probability(f, &m.vertices()[i], &m, 1 - i)?;
            report.reflexivity_defect = report.reflexivity_defect.max((own - 1.0).abs());
            report.orthogonality_defect = report.orthogonality_defect.max(other.abs());
            report.range_defect = report.range_defect.max(range_excess(own)).max(range_excess(other));
        }
        let p1 = rule_probability(f, &r, &m, 0)?;
        let p2 = rule_probability(f, &r, &m, 1)?;
        report.additivity_defect = report.additivity_defect.max((p1 + p2 - 1.0).abs());
        report.range_defect = report.range_defect.max(range_excess(p1)).max(range_excess(p2));
    }

    report.passed = report.reflexivity_defect <= tol
        && report.orthogonality_defect <= tol
        && report.additivity_defect <= tol
        && report.range_defect <= tol;
    Ok(report)
}
