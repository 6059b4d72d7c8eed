//! Cross-validation of the solution routes, table reproduction and file
//! output.

mod output;
mod tables;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use output::{emit_wavefunctions, spectrum_csv, spectrum_output, LevelRow, SpectrumOutput};
pub use tables::{reproduce_table, reproduce_table_with, ReproducedTable, TableColumn, TableEntry};

use crate::error::{QesError, Result};
use crate::model::{anti_isospectral_map, Geometry, ModelParams, Parity};
use crate::numeric::{self, GridConfig, NumericSpectrum};
use crate::poly::{self, RootSet};
use crate::{bethe, heun, liealg};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Bethe,
    Heun,
    Lie,
    Numeric,
}

impl Method {
    pub const ALGEBRAIC: [Method; 3] = [Method::Bethe, Method::Heun, Method::Lie];
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Bethe => "bethe",
            Method::Heun => "heun",
            Method::Lie => "lie",
            Method::Numeric => "numeric",
        })
    }
}

impl FromStr for Method {
    type Err = QesError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bethe" => Ok(Method::Bethe),
            "heun" => Ok(Method::Heun),
            "lie" => Ok(Method::Lie),
            "numeric" => Ok(Method::Numeric),
            other => Err(QesError::InvalidParams(format!("unknown method `{other}`"))),
        }
    }
}

/// QES energies from one algebraic route.
pub fn algebraic_energies(params: &ModelParams, method: Method) -> Result<RootSet> {
    match method {
        Method::Bethe => Ok(bethe::solve_polynomial_system(params)?.energy_set()),
        Method::Heun => heun::qes_energies_via_determinant(params),
        Method::Lie => liealg::qes_energies_via_recurrence(params),
        Method::Numeric => Err(QesError::InvalidParams("the numeric route has no algebraic energy set".into())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidationTolerances {
    pub method: f64,
    pub anti_isospectral: f64,
    pub numeric_hyperbolic: f64,
    pub numeric_trigonometric: f64,
}

impl Default for ValidationTolerances {
    fn default() -> Self {
        Self {
            method: 1e-9,
            anti_isospectral: 1e-9,
            numeric_hyperbolic: 5e-3,
            numeric_trigonometric: 1e-2,
        }
    }
}

impl ValidationTolerances {
    pub fn numeric(&self, geometry: Geometry) -> f64 {
        match geometry {
            Geometry::Hyperbolic => self.numeric_hyperbolic,
            Geometry::Trigonometric => self.numeric_trigonometric,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodEnergies {
    pub method: Method,
    pub energies: Option<RootSet>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub deviation: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: Option<String>,
}

impl Check {
    fn measured(name: impl Into<String>, deviation: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            deviation: Some(deviation),
            tolerance,
            passed: deviation <= tolerance,
            detail: None,
        }
    }

    fn failed(name: impl Into<String>, tolerance: f64, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            deviation: None,
            tolerance,
            passed: false,
            detail: Some(detail.into()),
        }
    }
}

/// A QES energy located in the numeric spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingMatch {
    pub energy: f64,
    pub index: usize,
    pub numeric: f64,
    pub deviation: f64,
    pub parity: Parity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub params: ModelParams,
    pub tolerances: ValidationTolerances,
    pub methods: Vec<MethodEnergies>,
    pub partner: Option<MethodEnergies>,
    pub numeric: Option<NumericSpectrum>,
    pub embedding: Vec<EmbeddingMatch>,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn energies(&self, method: Method) -> Option<&RootSet> {
        self.methods.iter().find(|m| m.method == method)?.energies.as_ref()
    }

    pub fn max_method_deviation(&self) -> Option<f64> {
        self.checks
            .iter()
            .filter(|c| c.name.starts_with("methods:"))
            .map(|c| c.deviation)
            .try_fold(0.0_f64, |acc, d| d.map(|d| acc.max(d)))
    }
}

fn run(params: &ModelParams, method: Method) -> MethodEnergies {
    match algebraic_energies(params, method) {
        Ok(energies) => MethodEnergies { method, energies: Some(energies), error: None },
        Err(e) => MethodEnergies { method, energies: None, error: Some(e.to_string()) },
    }
}

fn compare(name: String, a: &MethodEnergies, b: &RootSet, tol: f64) -> Check {
    match &a.energies {
        None => Check::failed(name, tol, a.error.clone().unwrap_or_default()),
        Some(ea) => match poly::max_relative_deviation(ea, b) {
            Some(d) => Check::measured(name, d, tol),
            None => Check::failed(name, tol, "energy sets differ in size or real/complex split"),
        },
    }
}

/// Runs every route on `params`, the numeric oracle with the default grid,
/// and the trigonometric partner where it exists.
pub fn cross_validate(params: &ModelParams, tolerances: &ValidationTolerances) -> ValidationReport {
    cross_validate_with_grid(params, tolerances, &GridConfig::for_geometry(params.geometry))
}

pub fn cross_validate_with_grid(
    params: &ModelParams,
    tolerances: &ValidationTolerances,
    grid: &GridConfig,
) -> ValidationReport {
    let mut checks = Vec::new();
    if let Err(e) = params.validate() {
        checks.push(Check::failed("params", 0.0, e.to_string()));
        return ValidationReport {
            params: *params,
            tolerances: *tolerances,
            methods: vec![],
            partner: None,
            numeric: None,
            embedding: vec![],
            checks,
        };
    }

    let methods: Vec<MethodEnergies> = Method::ALGEBRAIC.iter().map(|&m| run(params, m)).collect();
    for i in 0..methods.len() {
        for j in i + 1..methods.len() {
            let name = format!("methods:{}-vs-{}", methods[i].method, methods[j].method);
            let check = match &methods[j].energies {
                Some(b) => compare(name, &methods[i], b, tolerances.method),
                None => Check::failed(name, tolerances.method, methods[j].error.clone().unwrap_or_default()),
            };
            checks.push(check);
        }
    }

    match liealg::gauge_hamiltonian_eigenvalues(params) {
        Ok(gauge) => checks.push(compare("gauge-matrix-vs-lie".into(), &methods[2], &gauge, tolerances.method)),
        Err(e) => checks.push(Check::failed("gauge-matrix-vs-lie", tolerances.method, e.to_string())),
    }

    let partner = if params.family.has_trigonometric_form() && params.eta > 0.0 {
        let partner = anti_isospectral_map(params).map(|p| run(&p, Method::Bethe));
        let entry = match partner {
            Ok(entry) => entry,
            Err(e) => MethodEnergies { method: Method::Bethe, energies: None, error: Some(e.to_string()) },
        };
        if let Some(own) = &methods[0].energies {
            let flipped = own.map_affine(-1.0, 0.0);
            checks.push(compare("anti-isospectral".into(), &entry, &flipped, tolerances.anti_isospectral));
        }
        Some(entry)
    } else {
        None
    };

    let tol = tolerances.numeric(params.geometry);
    let levels = 2 * params.order + 4;
    let (numeric, embedding) = match numeric::numeric_spectrum(params, levels, grid) {
        Ok(spectrum) => {
            let (embedding, check) = embed(params, methods[0].energies.as_ref(), &spectrum, tol);
            checks.push(check);
            (Some(spectrum), embedding)
        }
        Err(e) => {
            checks.push(Check::failed("numeric-embedding", tol, e.to_string()));
            (None, vec![])
        }
    };

    ValidationReport {
        params: *params,
        tolerances: *tolerances,
        methods,
        partner,
        numeric,
        embedding,
        checks,
    }
}

fn embed(
    params: &ModelParams,
    qes: Option<&RootSet>,
    spectrum: &NumericSpectrum,
    tol: f64,
) -> (Vec<EmbeddingMatch>, Check) {
    let name = "numeric-embedding";
    let Some(qes) = qes else {
        return (vec![], Check::failed(name, tol, "no algebraic energies to embed"));
    };
    let expected = params.family.parity();
    let mut matches = Vec::new();
    let mut worst = 0.0_f64;
    for &energy in &qes.real {
        let (index, numeric) = spectrum
            .energies
            .iter()
            .copied()
            .enumerate()
            .min_by(|a, b| (a.1 - energy).abs().total_cmp(&(b.1 - energy).abs()))
            .expect("numeric spectrum is non-empty");
        let parity = spectrum.parities[index];
        let deviation = (numeric - energy).abs();
        if parity != expected {
            return (
                matches,
                Check::failed(name, tol, format!("E = {energy} matched level {index} of {parity} parity")),
            );
        }
        worst = worst.max(deviation);
        matches.push(EmbeddingMatch { energy, index, numeric, deviation, parity });
    }
    (matches, Check::measured(name, worst, tol))
}
