//! `ybx`: verify, solve and transform Yang–Baxter systems from the shell.
//!
//! Exit codes: 0 success, 1 mathematical failure, 2 usage or specification
//! error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ybx_core::catalog::{self, CatalogError};
use ybx_core::expr;
use ybx_core::solver::{
    apply_transform, emit_x_system, filter_ybe, qbg_to_qdouble, solve_z_linear, Continuous, Pattern, SolverError,
    TransformSpec,
};
use ybx_core::systems::{render_text, roles, spectral, verify, SystemDef, VerificationDocument};
use ybx_core::tensor::format::write_matrix;
use ybx_core::{Scalar, SquareMatrix};

mod spec;
mod verify;

use spec::{load_constant, MatrixSpec};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::NotInvertible { .. } | SolverError::InputNotQbgSolution(_) | SolverError::BridgeFailed(_) => {
                CliError::Failure(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "ybx", version, about = "Exact checks for Yang-Baxter systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a system: `ybx verify qdouble --W SPEC --X SPEC --Z SPEC`.
    ///
    /// Options after the system name: `--ROLE SPEC` for each role,
    /// `--samples N` (default 10), `--seed K`, `--symbolic`, `--json`, and
    /// `--family-size N` for braided-family, where `--ROLEjk SPEC` sets a
    /// single member. SPEC is `catalog:NAME[p=expr,..]`, `file:PATH` or
    /// `random[dim=n,seed=k]`.
    Verify {
        system: String,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        args: Vec<String>,
    },
    /// All Z with [X,X,Z] = 0 for a numeric X.
    SolveZ {
        #[arg(long = "X")]
        x: MatrixSpec,
        /// Also print the polynomial conditions for [Z,Z,Z] = 0.
        #[arg(long)]
        emit_ybe: bool,
    },
    /// Polynomial conditions on X for [W,X,X] = 0.
    EmitX {
        #[arg(long = "W")]
        w: MatrixSpec,
        /// Shape of X; its parameters become the unknowns. Default: all
        /// entries unknown.
        #[arg(long)]
        pattern: Option<MatrixSpec>,
    },
    /// Apply symmetry transformations to a (W, X, Z) triple.
    Orbit {
        #[arg(long = "W")]
        w: MatrixSpec,
        #[arg(long = "X")]
        x: MatrixSpec,
        #[arg(long = "Z")]
        z: MatrixSpec,
        /// Discrete word such as `dsym3:++,dsym`.
        #[arg(long, default_value = "")]
        word: String,
        #[arg(long = "T")]
        t: Option<MatrixSpec>,
        #[arg(long = "S")]
        s: Option<MatrixSpec>,
        #[arg(long)]
        omega: Option<String>,
        #[arg(long)]
        xi: Option<String>,
        #[arg(long)]
        zeta: Option<String>,
        /// Re-verify the image against qdouble.
        #[arg(long)]
        check: bool,
    },
    /// Build a qdouble triple from a qbg pair.
    Bridge {
        #[arg(long = "Q")]
        q: MatrixSpec,
        #[arg(long = "R")]
        r: MatrixSpec,
    },
    /// Browse and export the catalog.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
    /// Work with saved JSON reports.
    Report {
        #[command(subcommand)]
        command: ReportCommand,
    },
    /// Residuals of the spectral reflection block under each reading of D.
    Spectral,
}

#[derive(Subcommand)]
enum CatalogCommand {
    List,
    Show { name: String },
    /// Write one matrix file per entry.
    Export {
        #[arg(long)]
        dir: PathBuf,
        names: Vec<String>,
    },
}

#[derive(Subcommand)]
enum ReportCommand {
    /// Render a JSON report as text.
    Render { file: PathBuf },
}

fn scalar_arg(name: &str, text: &Option<String>) -> Result<Scalar, CliError> {
    match text {
        None => Ok(Scalar::one()),
        Some(t) => expr::parse_scalar(t).map_err(|e| CliError::Usage(format!("--{name}: {e}"))),
    }
}

fn matrix_block(title: &str, m: &SquareMatrix) -> String {
    write_matrix(m, None, Some(title))
}

fn cmd_solve_z(x: &MatrixSpec, emit_ybe: bool) -> Result<String, CliError> {
    let xm = load_constant(x)?;
    let space = solve_z_linear(&xm)?;
    let mut out = format!("dimension {}\n", space.dim());
    for (k, b) in space.basis_scalar().iter().enumerate() {
        out.push('\n');
        out.push_str(&matrix_block(&format!("basis {}", k + 1), b));
    }
    if emit_ybe {
        out.push_str("\n# [Z,Z,Z] = 0 with Z = sum of c_k times basis k\n");
        out.push_str(&filter_ybe(&space).to_string());
    }
    Ok(out)
}

fn cmd_emit_x(w: &MatrixSpec, pattern: &Option<MatrixSpec>) -> Result<String, CliError> {
    let wm = load_constant(w)?;
    let pattern = match pattern {
        None => Pattern::full(wm.dim()),
        Some(spec) => {
            let m = load_constant(spec)?;
            let wv = wm.vars();
            let unknowns: Vec<_> = m.vars().into_iter().filter(|v| !wv.contains(v)).collect();
            Pattern::from_matrix(&m, &unknowns)
        }
    };
    Ok(emit_x_system(&wm, &pattern)?.to_string())
}

#[allow(clippy::too_many_arguments)]
fn cmd_orbit(
    specs: [&MatrixSpec; 3],
    word: &str,
    t: &Option<MatrixSpec>,
    s: &Option<MatrixSpec>,
    scales: [(&str, &Option<String>); 3],
    check: bool,
) -> Result<(String, bool), CliError> {
    let triple = [load_constant(specs[0])?, load_constant(specs[1])?, load_constant(specs[2])?];
    let mut spec = TransformSpec::parse_word(word)?;
    if t.is_some() || s.is_some() || scales.iter().any(|(_, v)| v.is_some()) {
        let local = triple[0].local_dim().ok_or(SolverError::NotASquare(triple[0].dim()))?;
        let side = |m: &Option<MatrixSpec>| m.as_ref().map_or(Ok(SquareMatrix::identity(local)), load_constant);
        spec.continuous = Some(Continuous {
            t: side(t)?,
            s: side(s)?,
            omega: scalar_arg(scales[0].0, scales[0].1)?,
            xi: scalar_arg(scales[1].0, scales[1].1)?,
            zeta: scalar_arg(scales[2].0, scales[2].1)?,
        });
    }
    let image = apply_transform(&triple, &spec)?;
    let mut out = String::new();
    for (name, m) in ["W", "X", "Z"].iter().zip(&image) {
        if !out.is_empty() {
            out.push('\n');
        }
        out.push_str(&matrix_block(name, m));
    }
    let mut ok = true;
    if check {
        let r = roles([("W", image[0].clone()), ("X", image[1].clone()), ("Z", image[2].clone())]);
        let (passed, report) = verify(&SystemDef::qdouble(), &r).map_err(verify::system_error)?;
        let doc = VerificationDocument {
            system: "qdouble".into(),
            roles: Vec::new(),
            mode: "exact".into(),
            reports: vec![report.with_assignment("as given")],
            passed,
        };
        out.push('\n');
        out.push_str(&render_text(&doc));
        ok = passed;
    }
    Ok((out, ok))
}

fn cmd_bridge(q: &MatrixSpec, r: &MatrixSpec) -> Result<String, CliError> {
    let image = qbg_to_qdouble(&load_constant(q)?, &load_constant(r)?)?;
    let blocks: Vec<String> = ["W", "X", "Z"].iter().zip(&image).map(|(n, m)| matrix_block(n, m)).collect();
    Ok(blocks.join("\n"))
}

fn cmd_catalog(command: &CatalogCommand) -> Result<String, CliError> {
    match command {
        CatalogCommand::List => {
            let listing = catalog::list_catalog();
            let width = listing.iter().map(|l| l.name.len()).max().unwrap_or(0);
            let mut out = String::new();
            for l in listing {
                let params = if l.params.is_empty() { "-".to_owned() } else { l.params.join(" ") };
                let _ = writeln!(out, "{:width$}  params: {params}  constraints: {}", l.name, l.constraints);
            }
            Ok(out)
        }
        CatalogCommand::Show { name } => Ok(catalog::show(catalog::get(name)?)),
        CatalogCommand::Export { dir, names } => {
            let entries = if names.is_empty() {
                catalog::catalog().iter().collect::<Vec<_>>()
            } else {
                names.iter().map(|n| catalog::get(n)).collect::<Result<_, _>>()?
            };
            std::fs::create_dir_all(dir).map_err(|e| CliError::Usage(format!("{}: {e}", dir.display())))?;
            for m in &entries {
                let path = dir.join(format!("{}.txt", m.name));
                std::fs::write(&path, write_matrix(m.symbolic(), m.colour, Some(&m.name)))
                    .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            }
            Ok(format!("wrote {} files to {}\n", entries.len(), dir.display()))
        }
    }
}

fn cmd_report(command: &ReportCommand) -> Result<String, CliError> {
    match command {
        ReportCommand::Render { file } => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", file.display())))?;
            let doc = VerificationDocument::from_json(&text).map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(render_text(&doc))
        }
    }
}

fn dispatch(command: Command) -> Result<(String, bool), CliError> {
    let done = |s: String| Ok((s, true));
    match command {
        Command::Verify { system, args } => {
            let a = verify::parse_args(system, &args)?;
            let doc = verify::run(&a)?;
            Ok((verify::output(&doc, a.json), doc.passed))
        }
        Command::SolveZ { x, emit_ybe } => done(cmd_solve_z(&x, emit_ybe)?),
        Command::EmitX { w, pattern } => done(cmd_emit_x(&w, &pattern)?),
        Command::Orbit { w, x, z, word, t, s, omega, xi, zeta, check } => {
            cmd_orbit([&w, &x, &z], &word, &t, &s, [("omega", &omega), ("xi", &xi), ("zeta", &zeta)], check)
        }
        Command::Bridge { q, r } => done(cmd_bridge(&q, &r)?),
        Command::Catalog { command } => done(cmd_catalog(&command)?),
        Command::Report { command } => done(cmd_report(&command)?),
        Command::Spectral => {
            let inv = spectral::investigate().map_err(verify::system_error)?;
            let found = inv.correction().is_some();
            Ok((inv.render(), found))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
