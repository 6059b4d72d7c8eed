use std::path::PathBuf;

use thiserror::Error;

use crate::model::Family;

pub type Result<T, E = QesError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum QesError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// TF3/TF4 carry a sec(x) factor that is not square integrable on the
    /// trigonometric cell.
    #[error("family {0} has no square-integrable trigonometric form")]
    UnsupportedFamily(Family),

    #[error("x = {x} lies outside the open cell (-pi/2, pi/2)")]
    Domain { x: f64 },

    #[error("gauge variable z = {z} outside its admissible range")]
    GaugeDomain { z: f64 },

    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    #[error("{what} did not converge after {iterations} iterations")]
    NoConvergence { what: &'static str, iterations: usize },

    #[error("numeric solver: {0}")]
    Numeric(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv output to {}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}
