use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bethe;
use crate::error::{QesError, Result};
use crate::model::{Family, Geometry, ModelParams};
use crate::numeric::{self, GridConfig};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableEntry {
    /// The algebraic energy for QES entries, the numeric one otherwise.
    pub value: f64,
    pub numeric: f64,
    pub qes_exact: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableColumn {
    pub params: ModelParams,
    pub label: String,
    pub entries: Vec<TableEntry>,
    /// Largest `|E_QES − E_numeric|` in the column.
    pub max_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReproducedTable {
    pub id: u8,
    pub gamma: f64,
    pub eta: f64,
    pub columns: Vec<TableColumn>,
}

impl ReproducedTable {
    pub fn column(&self, family: Family, order: usize) -> Option<&TableColumn> {
        self.columns
            .iter()
            .find(|c| c.params.family == family && c.params.order == order)
    }
}

fn layout(id: u8) -> Result<(Geometry, [Family; 2])> {
    match id {
        1 => Ok((Geometry::Hyperbolic, [Family::Tf1, Family::Tf2])),
        2 => Ok((Geometry::Hyperbolic, [Family::Tf3, Family::Tf4])),
        3 => Ok((Geometry::Trigonometric, [Family::Tf1, Family::Tf2])),
        other => Err(QesError::InvalidParams(format!("table id must be 1, 2 or 3, got {other}"))),
    }
}

/// Table `id` at `γ = η = 2`, eight levels, `N ∈ {0, 1, 2}`.
pub fn reproduce_table(id: u8) -> Result<ReproducedTable> {
    let geometry = layout(id)?.0;
    reproduce_table_with(id, 2.0, 2.0, 8, &GridConfig::for_geometry(geometry))
}

pub fn reproduce_table_with(id: u8, gamma: f64, eta: f64, levels: usize, grid: &GridConfig) -> Result<ReproducedTable> {
    let (geometry, families) = layout(id)?;
    let mut columns = Vec::new();
    for family in families {
        for order in 0..=2 {
            let params = ModelParams::new(geometry, family, gamma, eta, order)?;
            columns.push(column(&params, levels, grid)?);
        }
    }
    Ok(ReproducedTable { id, gamma, eta, columns })
}

fn column(params: &ModelParams, levels: usize, grid: &GridConfig) -> Result<TableColumn> {
    let spectrum = numeric::numeric_spectrum(params, levels, grid)?;
    let mut entries: Vec<TableEntry> = spectrum
        .energies
        .iter()
        .map(|&e| TableEntry { value: e, numeric: e, qes_exact: false })
        .collect();
    let mut max_deviation = 0.0_f64;
    let top = spectrum.energies[spectrum.energies.len() - 1];
    for energy in bethe::solve_polynomial_system(params)?.energies() {
        // A QES level above the requested window is not shown.
        if energy > top + 1.0 {
            continue;
        }
        let nearest = entries
            .iter_mut()
            .min_by(|a, b| (a.numeric - energy).abs().total_cmp(&(b.numeric - energy).abs()))
            .expect("at least one level");
        let deviation = (nearest.numeric - energy).abs();
        nearest.value = energy;
        nearest.qes_exact = true;
        max_deviation = max_deviation.max(deviation);
    }
    Ok(TableColumn {
        params: *params,
        label: format!("{} N={}", params.family, params.order),
        entries,
        max_deviation,
    })
}

impl fmt::Display for ReproducedTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = 12;
        let geometry = self.columns.first().map(|c| c.params.geometry);
        writeln!(
            f,
            "Table {}: {} potential, gamma = {}, eta = {} (* = QES, algebraic value)",
            self.id,
            geometry.map(|g| g.to_string()).unwrap_or_default(),
            self.gamma,
            self.eta
        )?;
        write!(f, "{:<6}", "")?;
        for c in &self.columns {
            write!(f, "{:>width$}", c.label)?;
        }
        writeln!(f)?;
        let rows = self.columns.iter().map(|c| c.entries.len()).max().unwrap_or(0);
        for k in 0..rows {
            write!(f, "{:<6}", format!("E{k}"))?;
            for c in &self.columns {
                let cell = match c.entries.get(k) {
                    Some(e) if e.qes_exact => format!("{:.3}*", e.value),
                    Some(e) => format!("{:.3} ", e.value),
                    None => String::new(),
                };
                write!(f, "{cell:>width$}")?;
            }
            writeln!(f)?;
        }
        write!(f, "{:<6}", "dev")?;
        for c in &self.columns {
            write!(f, "{:>width$}", format!("{:.1e} ", c.max_deviation))?;
        }
        writeln!(f)
    }
}
