//! Acceptance suite. Prints one line per criterion and exits non-zero if
//! any criterion fails.

use std::process::ExitCode;

use bloch_gleason::geometry::{
    measurement_from_unitary, min_eigenvalue, random_ball_vector, random_density_with, random_unitary_with,
    seeded_rng, POSITIVITY_TOL,
};
use bloch_gleason::matrix::pauli;
use bloch_gleason::rules::{trace_probability, TabulatedFunction};
use bloch_gleason::{
    bloch_to_density, born_probability, build_basis, cauchy_grid_solve, density_to_bloch, face_residual,
    gram_matrix, is_valid_state, rule_probability, scan_face, simplex_decompose, validate_qubit_rule, Measurement,
    OutcomeFunction,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(err: bloch_gleason::Error) -> String {
    err.to_string()
}

fn basis_correctness() -> Check {
    let mut worst = 0.0f64;
    for n in 2..=8 {
        let b = build_basis(n).map_err(e)?;
        let rep = bloch_gleason::verify_basis(&b);
        ensure(b.len() == n * n - 1, || format!("N={n}: {} elements", b.len()))?;
        ensure(rep.within(1e-12), || format!("N={n}: {rep:?}"))?;
        worst = worst
            .max(rep.max_hermiticity_defect)
            .max(rep.max_trace_defect)
            .max(rep.max_orthogonality_defect);
    }
    let b2 = build_basis(2).map_err(e)?;
    for (k, (got, want)) in b2.elements().iter().zip(pauli()).enumerate() {
        ensure(got == &want, || format!("element {k} differs from the Pauli matrix"))?;
    }
    Ok(format!("N=2..8, worst defect {worst:.1e}; N=2 equals Pauli exactly"))
}

fn bijection() -> Check {
    let mut worst = 0.0f64;
    for n in 2..=6 {
        let basis = build_basis(n).map_err(e)?;
        let mut rng = seeded_rng(1000 + n as u64);
        for _ in 0..100 {
            let d = random_density_with(n, &mut rng).map_err(e)?;
            let r = density_to_bloch(&d, &basis).map_err(e)?;
            let back = bloch_to_density(&r, &basis).map_err(e)?;
            worst = worst.max(back.max_abs_diff(&d).map_err(e)?);
        }
    }
    ensure(worst <= 1e-12, || format!("max deviation {worst:e}"))?;
    Ok(format!("500 states, max entry deviation {worst:.1e}"))
}

fn born_equivalence() -> Check {
    let (mut diff, mut sum_err) = (0.0f64, 0.0f64);
    for n in 2..=6 {
        let basis = build_basis(n).map_err(e)?;
        let mut rng = seeded_rng(2000 + n as u64);
        for _ in 0..50 {
            let r = density_to_bloch(&random_density_with(n, &mut rng).map_err(e)?, &basis).map_err(e)?;
            let m = measurement_from_unitary(&random_unitary_with(n, &mut rng).map_err(e)?, &basis).map_err(e)?;
            let mut total = 0.0;
            for i in 0..n {
                let p = born_probability(&r, &m, i).map_err(e)?;
                diff = diff.max((p - trace_probability(&r, &m, i).map_err(e)?).abs());
                total += p;
            }
            sum_err = sum_err.max((total - 1.0).abs());
        }
    }
    ensure(diff <= 1e-12, || format!("Bloch vs trace {diff:e}"))?;
    ensure(sum_err <= 1e-11, || format!("sum defect {sum_err:e}"))?;
    Ok(format!("250 pairs, max diff {diff:.1e}, sum defect {sum_err:.1e}"))
}

fn simplex_geometry() -> Check {
    let (mut gram_err, mut sum_err, mut bary_err) = (0.0f64, 0.0f64, 0.0f64);
    for n in 2..=6 {
        let basis = build_basis(n).map_err(e)?;
        let mut rng = seeded_rng(3000 + n as u64);
        for trial in 0..20 {
            let m = if trial == 0 {
                Measurement::computational(&basis)
            } else {
                measurement_from_unitary(&random_unitary_with(n, &mut rng).map_err(e)?, &basis).map_err(e)?
            };
            for (i, row) in gram_matrix(&m).iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    let want = if i == j { 1.0 } else { -1.0 / (n as f64 - 1.0) };
                    gram_err = gram_err.max((x - want).abs());
                }
            }
            for c in 0..n * n - 1 {
                let s: f64 = m.vertices().iter().map(|v| v.components()[c]).sum();
                sum_err = sum_err.max(s.abs());
            }
            let r = density_to_bloch(&random_density_with(n, &mut rng).map_err(e)?, &basis).map_err(e)?;
            let s = simplex_decompose(&r, &m).map_err(e)?;
            for i in 0..n {
                bary_err = bary_err.max((s.barycentric[i] - born_probability(&r, &m, i).map_err(e)?).abs());
            }
        }
    }
    ensure(gram_err <= 1e-10, || format!("Gram {gram_err:e}"))?;
    ensure(sum_err <= 1e-10, || format!("vertex sum {sum_err:e}"))?;
    ensure(bary_err <= 1e-12, || format!("barycentric {bary_err:e}"))?;
    Ok(format!("Gram {gram_err:.1e}, vertex sum {sum_err:.1e}, barycentric {bary_err:.1e}"))
}

fn qubit_exception() -> Check {
    let candidates = [
        OutcomeFunction::odd_power(3).map_err(e)?,
        OutcomeFunction::odd_power(5).map_err(e)?,
        OutcomeFunction::Sign,
    ];
    for f in &candidates {
        let rep = validate_qubit_rule(f, 200, 5000, 1e-10).map_err(e)?;
        ensure(rep.passed, || format!("{f}: {rep:?}"))?;
    }
    let basis = build_basis(2).map_err(e)?;
    let m = Measurement::computational(&basis);
    let r = bloch_gleason::BlochVector::new(2, vec![0.0, 0.0, 0.5]).map_err(e)?;
    let gap = (rule_probability(&candidates[0], &r, &m, 0).map_err(e)? - born_probability(&r, &m, 0).map_err(e)?).abs();
    ensure(gap >= 0.05, || format!("witness gap {gap}"))?;
    Ok(format!("x^3, x^5, sign valid over 200 trials; x^3 witness gap {gap}"))
}

fn gleason_forcing() -> Check {
    let mut worst_identity = 0.0f64;
    let mut weakest_nonlinear = f64::INFINITY;
    for n in 3..=6 {
        let rep = scan_face(&OutcomeFunction::Identity, n, 64).map_err(e)?;
        worst_identity = worst_identity.max(rep.max_abs_residual);
        for f in OutcomeFunction::nonlinear_builtins() {
            let rep = scan_face(&f, n, 64).map_err(e)?;
            ensure(rep.max_abs_residual >= 1e-2, || format!("N={n} {f}: {}", rep.max_abs_residual))?;
            weakest_nonlinear = weakest_nonlinear.min(rep.max_abs_residual);
        }
    }
    ensure(worst_identity <= 1e-12, || format!("identity residual {worst_identity:e}"))?;
    let corner = face_residual(&OutcomeFunction::odd_power(3).map_err(e)?, 3, 1.0, 0.0).map_err(e)?;
    ensure((corner - 0.75).abs() <= 1e-12, || format!("corner residual {corner}"))?;
    Ok(format!(
        "identity max {worst_identity:.1e}, nonlinear min {weakest_nonlinear:.3}, N=3 x^3 corner {corner}"
    ))
}

/// Built-ins plus odd piecewise-linear tables through (±0.5, ±s/2).
fn candidate_family() -> Result<Vec<OutcomeFunction>, String> {
    let mut out = OutcomeFunction::builtins();
    for k in 0..=20 {
        let mid = 0.05 * k as f64;
        let nodes = vec![(-1.0, -1.0), (-0.5, -mid), (0.0, 0.0), (0.5, mid), (1.0, 1.0)];
        out.push(OutcomeFunction::Tabulated(TabulatedFunction::new(nodes).map_err(e)?));
    }
    Ok(out)
}

fn derived_constraints() -> Check {
    let mut survivors = 0;
    for n in 3..=6 {
        for f in candidate_family()? {
            let rep = scan_face(&f, n, 64).map_err(e)?;
            if rep.max_abs_residual <= 1e-12 {
                survivors += 1;
                ensure(rep.f_zero_defect <= 1e-10, || format!("N={n} {f}: f(0) {}", rep.f_zero_defect))?;
                ensure(rep.f_minus_defect <= 1e-10, || format!("N={n} {f}: f(-1/(N-1)) {}", rep.f_minus_defect))?;
            }
        }
    }
    ensure(survivors > 0, || "no surviving candidates".into())?;
    Ok(format!("{survivors} survivors over N=3..6, all with f(0)=0 and f(-1/(N-1))=-1/(N-1)"))
}

fn cauchy_uniqueness() -> Check {
    let mut worst = 0.0f64;
    for m in [4, 8, 16, 32] {
        let dev = cauchy_grid_solve(m).map_err(e)?.max_deviation();
        ensure(dev <= 1e-8, || format!("m={m}: deviation {dev:e}"))?;
        worst = worst.max(dev);
    }
    Ok(format!("m=4,8,16,32, max |g_k - k/m| {worst:.1e}"))
}

fn state_body_asymmetry() -> Check {
    let qubit = build_basis(2).map_err(e)?;
    let mut rng = seeded_rng(9000);
    for _ in 0..100 {
        let r = random_ball_vector(2, &mut rng);
        ensure(is_valid_state(&r, &qubit, POSITIVITY_TOL).map_err(e)?, || format!("rejected {r:?}"))?;
    }
    let mut found = Vec::new();
    for n in 3..=6 {
        let basis = build_basis(n).map_err(e)?;
        let m = Measurement::computational(&basis);
        let witness = m.vertices()[0].scaled(-1.0);
        ensure(!is_valid_state(&witness, &basis, POSITIVITY_TOL).map_err(e)?, || format!("N={n}: accepted"))?;
        let lam = min_eigenvalue(&bloch_to_density(&witness, &basis).map_err(e)?).map_err(e)?;
        // D(−n_1) = (2I − N·P_1)/N has spectrum {−(N−2)/N, 2/N, …}.
        let want = -(n as f64 - 2.0) / n as f64;
        ensure((lam - want).abs() <= 1e-10, || format!("N={n}: min eigenvalue {lam}, expected {want}"))?;
        found.push(format!("{lam:.6}"));
    }
    Ok(format!("100 qubit ball vectors valid; -n_1 min eigenvalues N=3..6: {}", found.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("basis correctness", basis_correctness),
        ("density/Bloch bijection", bijection),
        ("Born equivalence", born_equivalence),
        ("simplex geometry", simplex_geometry),
        ("qubit exception", qubit_exception),
        ("Gleason forcing", gleason_forcing),
        ("derived constraints", derived_constraints),
        ("Cauchy uniqueness", cauchy_uniqueness),
        ("state-body asymmetry", state_body_asymmetry),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("[PASS] criterion {}: {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {}: {name}: {why}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
