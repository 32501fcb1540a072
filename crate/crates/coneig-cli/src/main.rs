//! Command-line front end for the `coneig` library: parse quaternion
//! matrices from JSON, dispatch spectral analyses and bound verifications,
//! and run seeded randomized campaigns.
//!
//! Output goes to stdout as JSON — pretty-printed by default, compact with
//! every float at 17 significant digits under `--json`.  Errors are JSON
//! objects on stderr.  Exit codes: 0 success, 1 a checked bound failed,
//! 2 input error, 3 numerical failure.

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use coneig::{
    basal_coneigenvalues, check_normal_counterexample, default_membership_tol, gersgorin_balls,
    random_structured, split_seed, standard_eigenvalues, verify_bauer_fike,
    verify_component_counts, verify_generalized_hw, verify_hw, verify_right_gersgorin,
    verify_variation_bounds, BallKind, Error, HwVariant, MatrixKind, QMatrix,
};

/// Quaternion matrix spectra, coneigenvalue localization, and perturbation
/// bounds from the command line.
#[derive(Parser)]
#[command(name = "coneig", version, about)]
struct Cli {
    /// Membership tolerance for ball-localization checks (defaults to a
    /// norm-scaled value per matrix).
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Compact machine-oriented output with floats at 17 significant digits.
    #[arg(long, global = true)]
    json: bool,

    /// Suppress stdout; the exit code carries the verdict.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArg {
    /// Matrix file ("-" or omitted reads stdin).
    #[arg(long, default_value = "-")]
    input: String,
}

#[derive(Subcommand)]
enum Command {
    /// Standard eigenvalues (canonical right-eigenvalue representatives).
    Eig(InputArg),
    /// Basal right coneigenvalues `a + b·j` with `a ≥ 0`.
    Coneig(InputArg),
    /// Geršgorin-type balls with localization and component counting.
    Gersgorin {
        #[command(flatten)]
        input: InputArg,
        /// Use deleted row or column sums as ball radii.
        #[arg(long, value_enum, default_value_t = BallKindArg::Row)]
        kind: BallKindArg,
    },
    /// Hoffman–Wielandt-type bound for a structured pair.
    Hw {
        /// Left matrix file ("-" reads stdin).
        #[arg(long)]
        a: String,
        /// Right matrix file ("-" reads stdin).
        #[arg(long)]
        b: String,
        /// Structural hypothesis to enforce; `normal` runs the plain
        /// normal-pair check, which the bound need not satisfy.
        #[arg(long, value_enum, default_value_t = VariantArg::ConjugateNormal)]
        variant: VariantArg,
    },
    /// Generalized Hoffman–Wielandt bound via condiagonalization.
    Ghw {
        /// Condiagonalizable matrix file ("-" reads stdin).
        #[arg(long)]
        a: String,
        /// Conjugate-normal matrix file ("-" reads stdin).
        #[arg(long)]
        b: String,
        /// Optional condiagonalizer of A; computed when omitted.
        #[arg(long)]
        p: Option<String>,
    },
    /// Bauer–Fike-type bound for a perturbed condiagonalizable matrix.
    #[command(name = "bauer-fike", visible_alias = "bf")]
    BauerFike {
        /// Condiagonalizable matrix file ("-" reads stdin).
        #[arg(long)]
        a: String,
        /// Perturbation matrix file ("-" reads stdin).
        #[arg(long)]
        e: String,
        /// Optional condiagonalizer of A; computed when omitted.
        #[arg(long)]
        p: Option<String>,
    },
    /// Spectral variation, Hausdorff distances, and the shared
    /// Elsner-type bound.
    Sv {
        /// Left matrix file ("-" reads stdin).
        #[arg(long)]
        a: String,
        /// Right matrix file ("-" reads stdin).
        #[arg(long)]
        b: String,
    },
    /// Frobenius and spectral norms.
    Norms(InputArg),
    /// Seeded randomized verification campaign.
    Verify {
        /// Which bound family to verify on random structured matrices.
        #[arg(long, value_enum)]
        kind: CampaignKind,
        /// Matrix dimension for every trial.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Number of independent trials.
        #[arg(long, default_value_t = 100)]
        trials: u64,
        /// Campaign seed; trial `t` uses the split stream `(seed, t)`.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Scale factor passed to the matrix generators.
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BallKindArg {
    Row,
    Column,
}

impl From<BallKindArg> for BallKind {
    fn from(kind: BallKindArg) -> BallKind {
        match kind {
            BallKindArg::Row => BallKind::Row,
            BallKindArg::Column => BallKind::Column,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    /// Both matrices conjugate normal (`(AA*)~ = A*A`).
    #[value(name = "conjugate_normal", alias = "conjugate-normal")]
    ConjugateNormal,
    /// Both matrices skew symmetric (`Aᵀ = −A`).
    #[value(name = "skew_symmetric", alias = "skew-symmetric")]
    SkewSymmetric,
    /// Both matrices normal; the bound is *not* a theorem here, so a
    /// failed check exits 1 rather than erroring.
    Normal,
}

#[derive(Clone, Copy, ValueEnum)]
enum CampaignKind {
    /// Hoffman–Wielandt on conjugate-normal pairs.
    Hw,
    /// Generalized Hoffman–Wielandt on planted condiagonalizable matrices.
    Ghw,
    /// Bauer–Fike on planted condiagonalizable matrices with a small
    /// relative perturbation.
    Bf,
    /// Row and column ball localization of basal coneigenvalues.
    Gersgorin,
    /// Elsner-type spectral variation and Hausdorff bounds on plain pairs.
    Elsner,
}

impl CampaignKind {
    fn name(self) -> &'static str {
        match self {
            CampaignKind::Hw => "hw",
            CampaignKind::Ghw => "ghw",
            CampaignKind::Bf => "bf",
            CampaignKind::Gersgorin => "gersgorin",
            CampaignKind::Elsner => "elsner",
        }
    }
}

// ---------------------------------------------------------------------------
// Errors and exit codes
// ---------------------------------------------------------------------------

/// Anything that aborts a command: a library error or an I/O failure.
enum CliError {
    Lib(Error),
    Io { path: String, message: String },
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io { path, message } => write!(f, "{path}: {message}"),
        }
    }
}

impl CliError {
    /// Short machine-readable label for the JSON error object.
    fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Lib(e) => match e {
                Error::ZeroDivision => "zero-division",
                Error::ZeroVector => "zero-vector",
                Error::ShapeMismatch { .. } => "shape-mismatch",
                Error::NotSquare { .. } => "not-square",
                Error::RaggedRows => "ragged-rows",
                Error::Singular => "singular",
                Error::NoConvergence => "no-convergence",
                Error::NotHermitian => "not-hermitian",
                Error::PairingFailure => "pairing-failure",
                Error::NotAConeigenvalue(_) => "not-a-coneigenvalue",
                Error::NotCondiagonalizable(_) => "not-condiagonalizable",
                Error::StructureViolation { .. } => "structure-violation",
                Error::LengthMismatch { .. } => "length-mismatch",
                Error::ResampleLimit { .. } => "resample-limit",
                Error::Parse(_) => "parse",
            },
        }
    }

    /// Exit code: 2 for input errors, 3 for numerical failures.
    fn code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 2,
            CliError::Lib(e) => match e {
                Error::ZeroDivision
                | Error::ZeroVector
                | Error::ShapeMismatch { .. }
                | Error::NotSquare { .. }
                | Error::RaggedRows
                | Error::NotAConeigenvalue(_)
                | Error::StructureViolation { .. }
                | Error::LengthMismatch { .. }
                | Error::Parse(_) => 2,
                Error::Singular
                | Error::NoConvergence
                | Error::NotHermitian
                | Error::PairingFailure
                | Error::NotCondiagonalizable(_)
                | Error::ResampleLimit { .. } => 3,
            },
        }
    }
}

// ---------------------------------------------------------------------------
// Input
// ---------------------------------------------------------------------------

/// Reads a matrix from a file path, or stdin for `"-"`.
fn read_matrix(label: &str, path: &str) -> Result<QMatrix, CliError> {
    let (text, shown) = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Io {
                path: "stdin".to_string(),
                message: e.to_string(),
            })?;
        (buf, "stdin".to_string())
    } else {
        let buf = fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.to_string(),
            message: e.to_string(),
        })?;
        (buf, path.to_string())
    };
    serde_json::from_str(&text)
        .map_err(|e| CliError::Lib(Error::Parse(format!("matrix {label} ({shown}): {e}"))))
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

/// Renders a JSON value with every finite float at 17 significant digits
/// (`d.dddddddddddddddde±x`); integers stay integers.
fn render_json17(value: &Value) -> String {
    let mut out = String::new();
    write_json17(value, &mut out);
    out
}

fn write_json17(value: &Value, out: &mut String) {
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                out.push_str(&i.to_string());
            } else if let Some(u) = n.as_u64() {
                out.push_str(&u.to_string());
            } else {
                // `{:.16e}` carries one leading plus sixteen trailing
                // significant digits; JSON accepts the `e` exponent form.
                out.push_str(&format!("{:.16e}", n.as_f64().unwrap_or(f64::NAN)));
            }
        }
        Value::String(_) => out.push_str(&value.to_string()),
        Value::Array(items) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_json17(item, out);
            }
            out.push(']');
        }
        Value::Object(fields) => {
            out.push('{');
            for (i, (key, item)) in fields.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&Value::String(key.clone()).to_string());
                out.push(':');
                write_json17(item, out);
            }
            out.push('}');
        }
    }
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

/// Runs the selected command, producing the output document and whether
/// every checked bound held (commands without bounds report `true`).
fn dispatch(cli: &Cli) -> Result<(Value, bool), CliError> {
    match &cli.command {
        Command::Eig(input) => {
            let m = read_matrix("A", &input.input)?;
            let spectrum = standard_eigenvalues(&m).map_err(CliError::Lib)?;
            let values: Vec<Value> = spectrum
                .values()
                .iter()
                .map(|v| json!({ "re": v.re, "im": v.im }))
                .collect();
            Ok((Value::Array(values), true))
        }
        Command::Coneig(input) => {
            let m = read_matrix("A", &input.input)?;
            let spectrum = basal_coneigenvalues(&m).map_err(CliError::Lib)?;
            Ok((to_value(spectrum.values()), true))
        }
        Command::Gersgorin { input, kind } => {
            let m = read_matrix("A", &input.input)?;
            let tol = cli.tol.unwrap_or_else(|| default_membership_tol(&m));
            let kind = BallKind::from(*kind);
            let balls = gersgorin_balls(&m, kind).map_err(CliError::Lib)?;
            let localization = verify_right_gersgorin(&m, kind, tol).map_err(CliError::Lib)?;
            // Component counting is a statement about row balls.
            let (components, components_ok) = if matches!(kind, BallKind::Row) {
                let report = verify_component_counts(&m, tol).map_err(CliError::Lib)?;
                let ok = report.overall;
                (to_value(&report), ok)
            } else {
                (Value::Null, true)
            };
            let ok = localization.overall && components_ok;
            let value = json!({
                "balls": to_value(&balls),
                "localization": to_value(&localization),
                "components": components,
            });
            Ok((value, ok))
        }
        Command::Hw { a, b, variant } => {
            let ma = read_matrix("A", a)?;
            let mb = read_matrix("B", b)?;
            let report = match variant {
                VariantArg::ConjugateNormal => verify_hw(&ma, &mb, HwVariant::ConjugateNormal),
                VariantArg::SkewSymmetric => verify_hw(&ma, &mb, HwVariant::SkewSymmetric),
                VariantArg::Normal => check_normal_counterexample(&ma, &mb),
            }
            .map_err(CliError::Lib)?;
            let ok = report.holds;
            Ok((to_value(&report), ok))
        }
        Command::Ghw { a, b, p } => {
            let ma = read_matrix("A", a)?;
            let mb = read_matrix("B", b)?;
            let mp = p.as_ref().map(|path| read_matrix("P", path)).transpose()?;
            let report = verify_generalized_hw(&ma, &mb, mp.as_ref()).map_err(CliError::Lib)?;
            let ok = report.holds;
            Ok((to_value(&report), ok))
        }
        Command::BauerFike { a, e, p } => {
            let ma = read_matrix("A", a)?;
            let me = read_matrix("E", e)?;
            let mp = p.as_ref().map(|path| read_matrix("P", path)).transpose()?;
            let report = verify_bauer_fike(&ma, &me, mp.as_ref()).map_err(CliError::Lib)?;
            let ok = report.holds;
            Ok((to_value(&report), ok))
        }
        Command::Sv { a, b } => {
            let ma = read_matrix("A", a)?;
            let mb = read_matrix("B", b)?;
            let report = verify_variation_bounds(&ma, &mb).map_err(CliError::Lib)?;
            let ok = report.overall;
            Ok((to_value(report), ok))
        }
        Command::Norms(input) => {
            let m = read_matrix("A", &input.input)?;
            let value = json!({ "fro": m.fro_norm(), "spec": m.spec_norm() });
            Ok((value, true))
        }
        Command::Verify {
            kind,
            n,
            trials,
            seed,
            scale,
        } => run_campaign(*kind, *n as usize, *trials, *seed, *scale, cli.tol),
    }
}

fn to_value<T: serde::Serialize>(value: T) -> Value {
    serde_json::to_value(value).unwrap_or(Value::Null)
}

// ---------------------------------------------------------------------------
// Randomized campaigns
// ---------------------------------------------------------------------------

/// Runs `trials` independent seeded trials of the selected bound family and
/// summarizes how many held.  Results are listed by trial index.
fn run_campaign(
    kind: CampaignKind,
    n: usize,
    trials: u64,
    seed: u64,
    scale: f64,
    tol: Option<f64>,
) -> Result<(Value, bool), CliError> {
    let mut results = Vec::with_capacity(trials as usize);
    let mut failures: Vec<u64> = Vec::new();
    for trial in 0..trials {
        let trial_seed = split_seed(seed, trial);
        let holds = campaign_trial(kind, n, trial_seed, scale, tol).map_err(CliError::Lib)?;
        if !holds {
            failures.push(trial);
        }
        results.push(json!({ "trial": trial, "holds": holds }));
    }
    let all_hold = failures.is_empty();
    let value = json!({
        "kind": kind.name(),
        "n": n,
        "trials": trials,
        "seed": seed,
        "scale": scale,
        "holds": trials - failures.len() as u64,
        "failures": failures,
        "results": results,
    });
    Ok((value, all_hold))
}

/// One campaign trial: generate the structured inputs for the bound family
/// from the trial seed's split streams and run the verifier.
fn campaign_trial(
    kind: CampaignKind,
    n: usize,
    trial_seed: u64,
    scale: f64,
    tol: Option<f64>,
) -> Result<bool, Error> {
    let make = |mk: MatrixKind, stream: u64| {
        random_structured(mk, n, split_seed(trial_seed, stream), scale)
    };
    match kind {
        CampaignKind::Hw => {
            let a = make(MatrixKind::ConjugateNormal, 0)?.a;
            let b = make(MatrixKind::ConjugateNormal, 1)?.a;
            Ok(verify_hw(&a, &b, HwVariant::ConjugateNormal)?.holds)
        }
        CampaignKind::Ghw => {
            let sample = make(MatrixKind::Condiagonalizable, 0)?;
            let b = make(MatrixKind::ConjugateNormal, 1)?.a;
            let p = &sample.planted.as_ref().expect("planted condiagonalizer").p;
            Ok(verify_generalized_hw(&sample.a, &b, Some(p))?.holds)
        }
        CampaignKind::Bf => {
            let sample = make(MatrixKind::Condiagonalizable, 0)?;
            let raw = make(MatrixKind::Plain, 1)?.a;
            let factor = 0.01 * sample.a.fro_norm() / raw.fro_norm().max(1e-300);
            let e = raw.map(|x| x * factor);
            let p = &sample.planted.as_ref().expect("planted condiagonalizer").p;
            Ok(verify_bauer_fike(&sample.a, &e, Some(p))?.holds)
        }
        CampaignKind::Gersgorin => {
            let a = make(MatrixKind::Plain, 0)?.a;
            let tol = tol.unwrap_or_else(|| default_membership_tol(&a));
            let rows = verify_right_gersgorin(&a, BallKind::Row, tol)?;
            let cols = verify_right_gersgorin(&a, BallKind::Column, tol)?;
            Ok(rows.overall && cols.overall)
        }
        CampaignKind::Elsner => {
            let a = make(MatrixKind::Plain, 0)?.a;
            let b = make(MatrixKind::Plain, 1)?.a;
            Ok(verify_variation_bounds(&a, &b)?.overall)
        }
    }
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

/// Writes a line to stdout, ignoring write failures such as a closed pipe
/// so `coneig ... | head` terminates cleanly.
fn print_out(line: &str) {
    use std::io::Write as _;
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok((value, ok)) => {
            if !cli.quiet {
                if cli.json {
                    print_out(&render_json17(&value));
                } else {
                    print_out(
                        &serde_json::to_string_pretty(&value).unwrap_or_else(|_| value.to_string()),
                    );
                }
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            let detail = json!({ "error": { "kind": err.kind(), "message": err.to_string() } });
            eprintln!("{detail}");
            ExitCode::from(err.code())
        }
    }
}
