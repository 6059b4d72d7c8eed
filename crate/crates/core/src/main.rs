use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use qes::model::{Family, Geometry, ModelParams};
use qes::numeric::{GridConfig, GRID_POINTS_ENV};
use qes::report::{self, Method, SpectrumOutput, ValidationTolerances};

#[derive(Parser)]
#[command(name = "qes", version, about = "Quasi-exactly solvable spectra of the hyperbolic quartic potential and its trigonometric partner")]
struct Cli {
    /// Grid intervals for the numeric solver [default: 6000 hyperbolic, 12000 trigonometric]
    #[arg(long, global = true, env = GRID_POINTS_ENV)]
    grid_points: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// QES levels (and optionally the numeric spectrum) for one parameter set
    Spectrum {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Bethe)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Numeric levels to compute [default: 2N + 4]
        #[arg(long)]
        levels: Option<usize>,
    },
    /// Reproduce one of the reference eigenvalue tables
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        id: u8,
        #[arg(long, default_value_t = 2.0)]
        gamma: f64,
        #[arg(long, default_value_t = 2.0)]
        eta: f64,
        #[arg(long, default_value_t = 8)]
        levels: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Cross-validate all routes; exits with status 1 if any check fails
    Check {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 1e-9)]
        tol_method: f64,
        /// Numeric-embedding tolerance [default: 5e-3 hyperbolic, 1e-2 trigonometric]
        #[arg(long)]
        tol_numeric: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Write QES wavefunction samples as CSV (x, V, psi_k...)
    Wavefunction {
        #[command(flatten)]
        model: ModelArgs,
        /// Comma-separated QES level indices
        #[arg(long, value_delimiter = ',', default_value = "0")]
        indices: Vec<usize>,
        /// [default: -2.5 hyperbolic, -1.5 trigonometric]
        #[arg(long, allow_hyphen_values = true)]
        xmin: Option<f64>,
        /// [default: 2.5 hyperbolic, 1.5 trigonometric]
        #[arg(long, allow_hyphen_values = true)]
        xmax: Option<f64>,
        #[arg(long, default_value_t = 501)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct ModelArgs {
    /// hyp | trig
    #[arg(long, default_value = "hyp")]
    geometry: Geometry,
    /// tf1 | tf2 | tf3 | tf4
    #[arg(long)]
    family: Family,
    #[arg(long, allow_hyphen_values = true)]
    gamma: f64,
    #[arg(long, allow_hyphen_values = true)]
    eta: f64,
    /// Polynomial degree N
    #[arg(long)]
    order: usize,
}

impl ModelArgs {
    fn params(&self) -> Result<ModelParams> {
        Ok(ModelParams::new(self.geometry, self.family, self.gamma, self.eta, self.order)?)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Bethe,
    Heun,
    Lie,
    Numeric,
    All,
}

impl MethodArg {
    fn methods(self) -> Vec<Method> {
        match self {
            MethodArg::Bethe => vec![Method::Bethe],
            MethodArg::Heun => vec![Method::Heun],
            MethodArg::Lie => vec![Method::Lie],
            MethodArg::Numeric => vec![Method::Numeric],
            MethodArg::All => vec![Method::Bethe, Method::Heun, Method::Lie, Method::Numeric],
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

fn grid_for(geometry: Geometry, points: Option<usize>) -> GridConfig {
    let grid = GridConfig::for_geometry(geometry);
    match points {
        Some(n) => grid.with_points(n),
        None => grid,
    }
}

fn print_spectrum(out: &SpectrumOutput) {
    println!("{} [{}]", out.params, out.method);
    for (k, e) in out.energies.iter().enumerate() {
        let mut line = format!("  E{k:<3} {e:>14.6}");
        if let Some(p) = out.diagnostics.parities.get(k) {
            line.push_str(&format!("  {p}"));
        }
        if let Some(roots) = out.roots.get(k).filter(|r| !r.is_empty()) {
            let roots: Vec<String> = roots.iter().map(|r| format!("{r:.6}")).collect();
            line.push_str(&format!("  z = {}", roots.join(", ")));
        }
        println!("{line}");
    }
    for e in &out.diagnostics.complex_energies {
        println!("  complex E = {:.6} {:+.6}i", e.re, e.im);
    }
    for note in &out.diagnostics.notes {
        println!("  note: {note}");
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Spectrum { model, method, format, levels } => {
            let params = model.params()?;
            let grid = grid_for(params.geometry, cli.grid_points);
            let outputs = method
                .methods()
                .into_iter()
                .map(|m| report::spectrum_output(&params, m, &grid, levels).with_context(|| format!("{m} route")))
                .collect::<Result<Vec<_>>>()?;
            match format {
                Format::Table => outputs.iter().for_each(print_spectrum),
                Format::Json if outputs.len() == 1 => println!("{}", serde_json::to_string_pretty(&outputs[0])?),
                Format::Json => println!("{}", serde_json::to_string_pretty(&outputs)?),
                Format::Csv => print!("{}", report::spectrum_csv(&outputs)?),
            }
        }
        Command::Table { id, gamma, eta, levels, format } => {
            let geometry = if id == 3 { Geometry::Trigonometric } else { Geometry::Hyperbolic };
            let table = report::reproduce_table_with(id, gamma, eta, levels, &grid_for(geometry, cli.grid_points))?;
            match format {
                Format::Table => print!("{table}"),
                Format::Json => println!("{}", serde_json::to_string_pretty(&table)?),
                Format::Csv => bail!("tables are available as text or JSON"),
            }
        }
        Command::Check { model, tol_method, tol_numeric, format } => {
            let params = model.params()?;
            let mut tol = ValidationTolerances { method: tol_method, anti_isospectral: tol_method, ..Default::default() };
            if let Some(t) = tol_numeric {
                tol.numeric_hyperbolic = t;
                tol.numeric_trigonometric = t;
            }
            let report = report::cross_validate_with_grid(&params, &tol, &grid_for(params.geometry, cli.grid_points));
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                _ => {
                    println!("{params}");
                    for c in &report.checks {
                        let dev = c.deviation.map(|d| format!("{d:.3e}")).unwrap_or_else(|| "-".into());
                        let status = if c.passed { "PASS" } else { "FAIL" };
                        print!("  {status}  {:<28} deviation {dev:>10}  tolerance {:.1e}", c.name, c.tolerance);
                        match &c.detail {
                            Some(d) => println!("  ({d})"),
                            None => println!(),
                        }
                    }
                }
            }
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Wavefunction { model, indices, xmin, xmax, samples, out } => {
            let params = model.params()?;
            let (lo, hi) = match params.geometry {
                Geometry::Hyperbolic => (-2.5, 2.5),
                Geometry::Trigonometric => (-1.5, 1.5),
            };
            let (a, b) = (xmin.unwrap_or(lo), xmax.unwrap_or(hi));
            if samples < 2 || !(b > a) {
                bail!("need xmin < xmax and at least two samples");
            }
            let xs: Vec<f64> = (0..samples)
                .map(|i| a + (b - a) * i as f64 / (samples - 1) as f64)
                .collect();
            report::emit_wavefunctions(&params, &indices, &xs, &out)?;
            eprintln!("wrote {} samples for levels {:?} to {}", samples, indices, out.display());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
