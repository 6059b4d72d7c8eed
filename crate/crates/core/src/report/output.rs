use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Method;
use crate::error::{QesError, Result};
use crate::model::{ModelParams, Normalization, Parity};
use crate::numeric::{self, GridConfig};
use crate::{bethe, heun, liealg, poly};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub complex_energies: Vec<Complex64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub complex_roots: Vec<Vec<Complex64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parities: Vec<Parity>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub residuals: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// One method's result in the frozen output schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumOutput {
    pub params: ModelParams,
    pub method: Method,
    pub energies: Vec<f64>,
    /// Real zeros of `f(z)`, one list per level.
    pub roots: Vec<Vec<f64>>,
    /// Ascending polynomial coefficients, one list per level.
    pub coefficients: Vec<Vec<f64>>,
    pub diagnostics: Diagnostics,
}

/// Runs `method`; `levels` is the numeric level count (default `2N + 4`).
pub fn spectrum_output(
    params: &ModelParams,
    method: Method,
    grid: &GridConfig,
    levels: Option<usize>,
) -> Result<SpectrumOutput> {
    let mut out = SpectrumOutput {
        params: *params,
        method,
        energies: vec![],
        roots: vec![],
        coefficients: vec![],
        diagnostics: Diagnostics::default(),
    };
    match method {
        Method::Bethe => {
            let s = bethe::solve_polynomial_system(params)?;
            for level in &s.levels {
                out.energies.push(level.energy);
                out.roots.push(level.bethe_roots.clone());
                out.coefficients.push(level.monic_coeffs.clone());
                out.diagnostics.complex_roots.push(level.complex_bethe_roots.clone());
            }
            if out.diagnostics.complex_roots.iter().all(Vec::is_empty) {
                out.diagnostics.complex_roots.clear();
            }
            out.diagnostics.complex_energies = s.complex_energies;
        }
        Method::Heun => {
            let che = heun::match_che(params)?;
            let energies = heun::qes_energies_via_determinant(params)?;
            for &energy in &energies.real {
                out.energies.push(energy);
                match heun::series_coefficients(&che, energy) {
                    Ok(series) => {
                        let monic = series.monic();
                        out.roots.push(poly::roots(&monic)?.real);
                        out.coefficients.push(monic);
                    }
                    Err(e) => {
                        out.roots.push(vec![]);
                        out.coefficients.push(vec![]);
                        out.diagnostics.notes.push(format!("E = {energy}: {e}"));
                    }
                }
            }
            out.diagnostics.complex_energies = energies.complex;
        }
        Method::Lie => {
            let energies = liealg::qes_energies_via_recurrence(params)?;
            for &energy in &energies.real {
                out.energies.push(energy);
                let mut values = liealg::critical_polynomials(params, energy)?.values;
                values.pop();
                out.coefficients.push(values);
            }
            out.diagnostics.notes.push("coefficients are the critical polynomials P_0..P_N at each energy".into());
            out.diagnostics.complex_energies = energies.complex;
        }
        Method::Numeric => {
            let m = levels.unwrap_or(2 * params.order + 4);
            let s = numeric::numeric_spectrum(params, m, grid)?;
            out.energies = s.energies;
            out.diagnostics.parities = s.parities;
            out.diagnostics.residuals = s.residuals;
        }
    }
    Ok(out)
}

/// Flat CSV row, one per level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelRow {
    pub method: Method,
    pub geometry: String,
    pub family: String,
    pub gamma: f64,
    pub eta: f64,
    pub order: usize,
    pub level: usize,
    pub energy: f64,
    /// `;`-separated.
    pub roots: String,
    /// `;`-separated.
    pub coefficients: String,
}

fn join(values: Option<&Vec<f64>>) -> String {
    values
        .map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";"))
        .unwrap_or_default()
}

pub fn spectrum_csv(outputs: &[SpectrumOutput]) -> Result<String> {
    let sink = PathBuf::from("<memory>");
    let mut w = csv::Writer::from_writer(Vec::new());
    for out in outputs {
        for (level, &energy) in out.energies.iter().enumerate() {
            let row = LevelRow {
                method: out.method,
                geometry: out.params.geometry.to_string(),
                family: out.params.family.to_string(),
                gamma: out.params.gamma,
                eta: out.params.eta,
                order: out.params.order,
                level,
                energy,
                roots: join(out.roots.get(level)),
                coefficients: join(out.coefficients.get(level)),
            };
            w.serialize(row).map_err(|source| QesError::Csv { path: sink.clone(), source })?;
        }
    }
    let bytes = w
        .into_inner()
        .map_err(|e| QesError::Numeric(format!("csv buffer: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Writes `x, V, psi_<k>…` for the requested QES levels, each normalised to
/// `max |ψ| = 1`.
pub fn emit_wavefunctions(params: &ModelParams, indices: &[usize], xs: &[f64], destination: &Path) -> Result<()> {
    let spectrum = bethe::solve_polynomial_system(params)?;
    let mut columns = Vec::with_capacity(indices.len());
    for &k in indices {
        let level = spectrum.levels.get(k).ok_or_else(|| {
            QesError::InvalidParams(format!(
                "level index {k} out of range: {} real QES levels",
                spectrum.levels.len()
            ))
        })?;
        columns.push(bethe::assemble_wavefunction(params, level, xs, Normalization::MaxAbsOne)?);
    }
    let potential = xs.iter().map(|&x| params.potential(x)).collect::<Result<Vec<_>>>()?;

    let csv_err = |source| QesError::Csv { path: destination.to_path_buf(), source };
    let mut w = csv::Writer::from_path(destination).map_err(csv_err)?;
    let mut header = vec!["x".to_string(), "V".to_string()];
    header.extend(indices.iter().map(|k| format!("psi_{k}")));
    w.write_record(&header).map_err(csv_err)?;
    for (i, (&x, v)) in xs.iter().zip(&potential).enumerate() {
        let mut record = vec![x.to_string(), v.to_string()];
        record.extend(columns.iter().map(|c| c.points[i].1.to_string()));
        w.write_record(&record).map_err(csv_err)?;
    }
    w.flush().map_err(|source| QesError::Io { path: destination.to_path_buf(), source })
}
