use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bloch_gleason::cli::{
    cmd_basis, cmd_cauchy, cmd_convert, cmd_falsify, cmd_probs, cmd_validate, BasisSource, CommandOutput, StateSource,
    EXIT_USAGE,
};
use bloch_gleason::gleason::{DEFAULT_GRID, SURVIVAL_TOL};
use bloch_gleason::report::Format;
use bloch_gleason::text::{FunctionSpec, Representation};
use bloch_gleason::Result;

#[derive(Parser, Debug)]
#[command(name = "bloch-gleason", version, about = "Generalized Bloch vectors, Born and non-Born rules, Gleason forcing checks")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, default_value = "json")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct StateArgs {
    /// State file: a density matrix or a Bloch vector.
    #[arg(long = "in", value_name = "PATH", required_unless_present = "random")]
    input: Option<PathBuf>,

    /// Force the file representation instead of detecting it.
    #[arg(long)]
    repr: Option<Representation>,

    /// Use a seeded random density matrix instead of a file.
    #[arg(long, conflicts_with = "input")]
    random: bool,

    /// Hilbert-space dimension; inferred from the file when omitted.
    #[arg(long)]
    dim: Option<usize>,

    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl StateArgs {
    fn source(&self) -> StateSource<'_> {
        match &self.input {
            Some(path) if !self.random => StateSource::File {
                path,
                repr: self.repr,
            },
            _ => StateSource::Random { seed: self.seed },
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit the generalized Pauli matrices and their defect report.
    Basis {
        #[arg(long)]
        dim: usize,
    },
    /// Convert between density matrix and Bloch vector.
    Convert {
        #[command(flatten)]
        state: StateArgs,
        /// Positivity tolerance on the smallest eigenvalue.
        #[arg(long, default_value_t = SURVIVAL_TOL)]
        tol: f64,
    },
    /// Born and candidate-rule probabilities for every outcome.
    Probs {
        #[command(flatten)]
        state: StateArgs,
        /// `computational`, `fourier`, `random` (uses --seed) or a matrix file
        /// whose columns are the basis vectors.
        #[arg(long, default_value = "computational")]
        basis: String,
        #[arg(long = "f", default_value = "identity")]
        f: FunctionSpec,
    },
    /// Check that a rule is a probability measure for qubits.
    Validate {
        #[arg(long = "f")]
        f: FunctionSpec,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = SURVIVAL_TOL)]
        tol: f64,
    },
    /// Scan the face constraint; exit 0 if the rule survives, 1 if falsified.
    Falsify {
        #[arg(long)]
        dim: usize,
        #[arg(long = "f")]
        f: FunctionSpec,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[arg(long, default_value_t = SURVIVAL_TOL)]
        tol: f64,
    },
    /// Solve the discrete Cauchy equation on the grid k/m.
    Cauchy {
        #[arg(long = "grid", short = 'm')]
        m: usize,
    },
}

fn run(cli: &Cli) -> Result<CommandOutput> {
    match &cli.command {
        Command::Basis { dim } => cmd_basis(*dim),
        Command::Convert { state, tol } => cmd_convert(&state.source(), state.dim, *tol),
        Command::Probs { state, basis, f } => {
            let f = f.load()?;
            cmd_probs(&state.source(), state.dim, &BasisSource::from_arg(basis, state.seed), &f)
        }
        Command::Validate { f, trials, seed, tol } => cmd_validate(&f.load()?, *trials, *seed, *tol),
        Command::Falsify { dim, f, grid, tol } => cmd_falsify(*dim, &f.load()?, *grid, *tol),
        Command::Cauchy { m } => cmd_cauchy(*m),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.document.render(cli.format).as_bytes());
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
