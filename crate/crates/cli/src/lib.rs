//! `rlfrac` command-line front end. [`run`] is the whole program minus
//! process plumbing, so it can be driven from tests.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rlfrac_core::io::{report_to_json, solution_rows, write_solution_csv};
use rlfrac_core::{
    analyze, build_problem, check_strong_membership, ic_to_source, parse_equation, residual,
    solve_volterra, source_to_ic, AnalysisReport, EquationSpec, Error, GridSolution, IcVector,
    Order, PowerSum, SourceCoefficients, Term,
};
use serde_json::json;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "rlfrac",
    version,
    about = "Initial-value analysis and solution of linear Riemann-Liouville fractional equations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report the admissible singular powers and the initial values that fix a solution.
    Analyze {
        equation: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Map initial values to source coefficients (--ic) or back (--source).
    ConvertIc {
        equation: String,
        #[command(flatten)]
        data: InitialData,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Solve on [0, b] and write `t,u,singular,regular` rows.
    Solve {
        equation: String,
        #[command(flatten)]
        data: InitialData,
        #[command(flatten)]
        grid: Grid,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Residual of the computed solution and self-convergence under refinement.
    Verify {
        equation: String,
        #[command(flatten)]
        data: InitialData,
        #[command(flatten)]
        grid: Grid,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args, Debug)]
#[group(multiple = false)]
struct InitialData {
    /// Initial values, lowest order first.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    ic: Option<Vec<f64>>,
    /// Source coefficients, lowest exponent first: one per initial value, or
    /// one per power of the full (weak) family.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    source: Option<Vec<f64>>,
}

#[derive(Args, Debug)]
struct Grid {
    /// Interval end.
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    /// Number of grid intervals.
    #[arg(long, default_value_t = 1024)]
    n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// Either a parse/usage problem or a library error.
enum Failure {
    Input(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Core(Error::Io(e))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Core(Error::Json(e))
    }
}

type Outcome<T = ()> = std::result::Result<T, Failure>;

/// Runs the program on `argv` (including the program name) and returns the
/// exit code: 0 on success, 1 on bad input, 2 on numerical failure.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(Failure::Input(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_INPUT
        }
        Err(Failure::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_numerical() {
                EXIT_NUMERICAL
            } else {
                EXIT_INPUT
            }
        }
    }
}

/// [`run`] on the process's standard streams.
pub fn run_cli<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run(
        argv,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Analyze { equation, format } => {
            let spec = parse_equation(&equation)?;
            let report = analyze(&spec);
            print_report(&report, format, out)
        }
        Command::ConvertIc {
            equation,
            data,
            format,
        } => {
            let spec = parse_equation(&equation)?;
            convert(&spec, &data, format, out)
        }
        Command::Solve {
            equation,
            data,
            grid,
            out: path,
            format,
        } => {
            let spec = parse_equation(&equation)?.load_rhs()?;
            let source = seed(&spec, &data, err)?;
            let solution = solve(&spec, &source, &grid, grid.n)?;
            match path {
                Some(path) => {
                    let file = BufWriter::new(File::create(&path)?);
                    write_solution(&solution, format, file)
                }
                None => write_solution(&solution, format, out),
            }
        }
        Command::Verify {
            equation,
            data,
            grid,
            format,
        } => {
            let spec = parse_equation(&equation)?.load_rhs()?;
            let source = seed(&spec, &data, err)?;
            verify(&spec, &source, &grid, format, out)
        }
    }
}

fn print_report(report: &AnalysisReport, format: Format, out: &mut dyn Write) -> Outcome {
    match format {
        Format::Json => {
            let mut value: serde_json::Value = serde_json::from_str(&report_to_json(report)?)?;
            value["weak_dimension"] = json!(report.weak_dimension());
            value["ic_labels"] = json!(report.ic_labels());
            writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
        }
        Format::Csv => {
            writeln!(out, "index,kind,order,label")?;
            let kinds = report.ic_kinds.iter();
            for (i, ((o, kind), label)) in report
                .ic_orders
                .iter()
                .zip(kinds)
                .zip(report.ic_labels())
                .enumerate()
            {
                let kind = serde_json::to_value(kind)?;
                writeln!(
                    out,
                    "{},{},{},{label}",
                    i + 1,
                    kind.as_str().unwrap_or_default(),
                    o.abs()
                )?;
            }
        }
    }
    Ok(())
}

fn convert(
    spec: &EquationSpec,
    data: &InitialData,
    format: Format,
    out: &mut dyn Write,
) -> Outcome {
    let report = analyze(spec);
    let (ic, source) = match (&data.ic, &data.source) {
        (Some(ic), None) => {
            let ic = IcVector(ic.clone());
            let source = ic_to_source(&ic, spec, &report)?;
            (ic, source)
        }
        (None, Some(b)) => {
            let source = SourceCoefficients(b.clone());
            let ic = source_to_ic(&source, spec, &report)?;
            (ic, source)
        }
        _ => return Err(Failure::Input("convert-ic needs --ic or --source".into())),
    };
    match format {
        Format::Json => {
            let exponents: Vec<String> = report.ic_orders.iter().map(Order::to_string).collect();
            let value = json!({
                "ic_labels": report.ic_labels(),
                "ic": ic,
                "source_exponents": exponents,
                "source": source,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
        }
        Format::Csv => {
            writeln!(out, "label,ic,exponent,source")?;
            let exponents = &report.ic_orders;
            for (i, label) in report.ic_labels().iter().enumerate() {
                writeln!(out, "{label},{},{},{}", ic.0[i], exponents[i], source.0[i])?;
            }
        }
    }
    Ok(())
}

/// Source term `f` from `--ic` or `--source`; zero when neither is given.
fn seed(spec: &EquationSpec, data: &InitialData, err: &mut dyn Write) -> Outcome<PowerSum> {
    let report = analyze(spec);
    let source = match (&data.ic, &data.source) {
        (Some(ic), _) => {
            ic_to_source(&IcVector(ic.clone()), spec, &report)?.to_power_sum(&report)?
        }
        (None, Some(b)) if b.len() == report.m => {
            SourceCoefficients(b.clone()).to_power_sum(&report)?
        }
        (None, Some(b)) if b.len() == report.weak_dimension() => {
            // kernel exponents are listed highest first
            let terms = b
                .iter()
                .zip(report.kernel_basis_exponents.iter().rev())
                .map(|(&c, &e)| Term::new(c, e));
            let source = PowerSum::from_terms(terms)?;
            if !check_strong_membership(&source, &report)? {
                writeln!(
                    err,
                    "note: source has components outside the strong family; the solution is weak"
                )?;
            }
            source
        }
        (None, Some(b)) => {
            return Err(Failure::Input(format!(
                "--source needs {} (strong) or {} (weak) values, got {}",
                report.m,
                report.weak_dimension(),
                b.len()
            )))
        }
        (None, None) => PowerSum::zero(),
    };
    Ok(source)
}

fn solve(
    spec: &EquationSpec,
    source: &PowerSum,
    grid: &Grid,
    n: usize,
) -> rlfrac_core::Result<GridSolution> {
    let problem = build_problem(spec, source, grid.b)?;
    solve_volterra(&problem, n)
}

fn write_solution<W: Write>(solution: &GridSolution, format: Format, mut out: W) -> Outcome {
    match format {
        Format::Csv => write_solution_csv(solution, &mut out)?,
        Format::Json => {
            writeln!(out, "{}", serde_json::to_string(&solution_rows(solution))?)?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Largest difference between two solutions at the coarse nodes in `[b/10, b]`.
fn max_difference(coarse: &GridSolution, fine: &GridSolution) -> f64 {
    let stride = fine.len() / coarse.len();
    let start = 0.1 * coarse.interval_end() * (1.0 - 1e-12);
    let fine_values = fine.values();
    coarse
        .nodes()
        .zip(coarse.values())
        .enumerate()
        .filter(|(_, (t, _))| *t >= start)
        .map(|(i, (_, u))| (u - fine_values[(i + 1) * stride - 1]).abs())
        .fold(0.0, f64::max)
}

fn verify(
    spec: &EquationSpec,
    source: &PowerSum,
    grid: &Grid,
    format: Format,
    out: &mut dyn Write,
) -> Outcome {
    let sizes = [grid.n, 2 * grid.n, 4 * grid.n];
    // the refinements are independent problems
    let solutions: Vec<rlfrac_core::Result<GridSolution>> = std::thread::scope(|scope| {
        let handles: Vec<_> = sizes
            .iter()
            .map(|&n| scope.spawn(move || solve(spec, source, grid, n)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("solver thread panicked"))
            .collect()
    });
    let solutions = solutions
        .into_iter()
        .collect::<rlfrac_core::Result<Vec<_>>>()?;
    let res = residual(&solutions[0], spec)?;
    let d1 = max_difference(&solutions[0], &solutions[1]);
    let d2 = max_difference(&solutions[1], &solutions[2]);
    let ratio = if d2 > 0.0 { d1 / d2 } else { f64::INFINITY };
    match format {
        Format::Json => {
            let value = json!({
                "n": grid.n,
                "b": grid.b,
                "residual": res,
                "refinements": sizes,
                "differences": [d1, d2],
                "ratio": if ratio.is_finite() { json!(ratio) } else { json!(null) },
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
        }
        Format::Csv => {
            writeln!(out, "n,residual,difference,ratio")?;
            writeln!(out, "{},{res},{d1},{ratio}", grid.n)?;
        }
    }
    Ok(())
}
