//! Grid discretisation of `−ψ'' + V(x)ψ = Eψ` with Dirichlet walls.
//!
//! The hyperbolic problem is truncated to `[−L, L]`; the trigonometric one
//! lives on the open cell `(−π/2, π/2)` whose walls the centrifugal barrier
//! already enforces. Eigenvalues come from Sturm counts and bisection,
//! eigenvectors (for parity and residuals) from inverse iteration.

mod sturm;
pub(crate) use sturm::TridiagonalLu;

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

pub use sturm::{eigen_lowest, SymTridiagonal, BISECTION_MAX_ITER, BISECTION_REL_TOL};

use crate::error::{QesError, Result};
use crate::model::{Geometry, ModelParams, Parity};

pub const MIN_POINTS: usize = 100;
pub const DEFAULT_HYPERBOLIC_POINTS: usize = 6000;
pub const DEFAULT_TRIGONOMETRIC_POINTS: usize = 12000;
pub const DEFAULT_HALF_WIDTH: f64 = 3.0;
/// Environment override for the number of grid intervals.
pub const GRID_POINTS_ENV: &str = "QES_GRID_POINTS";
/// Minimum `|⟨ψ, ψ(−x)⟩| / ‖ψ‖²` for a parity assignment.
pub const PARITY_THRESHOLD: f64 = 0.9;

const MAX_WIDENINGS: usize = 12;
const WIDENING_STEP: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Central2,
    Numerov,
}

impl Scheme {
    pub fn order(self) -> i32 {
        match self {
            Scheme::Central2 => 2,
            Scheme::Numerov => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    /// `L` of `[−L, L]`; ignored (always π/2) on the trigonometric cell.
    pub half_width: f64,
    /// Number of intervals `n`; the operator acts on the `n − 1` interior
    /// nodes.
    pub points: usize,
    pub scheme: Scheme,
    pub richardson: bool,
}

impl GridConfig {
    /// Defaults per geometry, with `QES_GRID_POINTS` overriding `n`.
    pub fn for_geometry(geometry: Geometry) -> Self {
        let mut grid = match geometry {
            Geometry::Hyperbolic => GridConfig {
                half_width: DEFAULT_HALF_WIDTH,
                points: DEFAULT_HYPERBOLIC_POINTS,
                scheme: Scheme::Central2,
                richardson: false,
            },
            Geometry::Trigonometric => GridConfig {
                half_width: FRAC_PI_2,
                points: DEFAULT_TRIGONOMETRIC_POINTS,
                scheme: Scheme::Central2,
                richardson: true,
            },
        };
        if let Some(n) = std::env::var(GRID_POINTS_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            grid.points = n;
        }
        grid
    }

    pub fn with_points(self, points: usize) -> Self {
        Self { points, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if self.points < MIN_POINTS {
            return Err(QesError::InvalidParams(format!(
                "grid needs at least {MIN_POINTS} intervals, got {}",
                self.points
            )));
        }
        if !(self.half_width.is_finite() && self.half_width > 0.0) {
            return Err(QesError::InvalidParams(format!("grid half width {} must be positive", self.half_width)));
        }
        Ok(())
    }

    fn interval(&self, geometry: Geometry) -> (f64, f64) {
        let l = match geometry {
            Geometry::Hyperbolic => self.half_width,
            Geometry::Trigonometric => FRAC_PI_2,
        };
        (-l, l)
    }
}

/// A discretised Schrödinger operator on the interior nodes of `[a, b]`.
#[derive(Debug, Clone)]
pub struct Discretization {
    pub xs: Vec<f64>,
    pub potential: Vec<f64>,
    pub h: f64,
    pub scheme: Scheme,
    central: SymTridiagonal,
}

impl Discretization {
    pub fn new(a: f64, b: f64, points: usize, scheme: Scheme, v: impl Fn(f64) -> Result<f64>) -> Result<Self> {
        if points < 2 || !(b > a) {
            return Err(QesError::InvalidParams(format!("bad grid [{a}, {b}] with {points} intervals")));
        }
        let h = (b - a) / points as f64;
        let xs: Vec<f64> = (1..points).map(|i| a + i as f64 * h).collect();
        let potential = xs.iter().map(|&x| v(x)).collect::<Result<Vec<_>>>()?;
        if let Some(bad) = potential.iter().position(|v| !v.is_finite()) {
            return Err(QesError::Numeric(format!("potential is not finite at x = {}", xs[bad])));
        }
        let inv_h2 = 1.0 / (h * h);
        let central = SymTridiagonal::new(
            potential.iter().map(|v| 2.0 * inv_h2 + v).collect(),
            vec![-inv_h2; xs.len() - 1],
        )?;
        Ok(Self { xs, potential, h, scheme, central })
    }

    /// Central-difference operator `2/h² + V` on the diagonal, `−1/h²` off it.
    pub fn central(&self) -> &SymTridiagonal {
        &self.central
    }

    fn numerov_t(&self, lambda: f64) -> Vec<f64> {
        let c = self.h * self.h / 12.0;
        self.potential.iter().map(|v| c * (lambda - v)).collect()
    }

    /// Diagonal `2g_i` of the Numerov pencil `tridiag(−1, 2g_i(λ), −1)`,
    /// `g = (1 − 5t)/(1 + t)`, `t = h²(λ − V)/12`.
    fn numerov_diag(&self, lambda: f64) -> Result<Vec<f64>> {
        self.numerov_t(lambda)
            .into_iter()
            .map(|t| {
                if t <= -1.0 {
                    Err(QesError::Numeric(format!(
                        "Numerov step too coarse at λ = {lambda}: choose more grid points"
                    )))
                } else {
                    Ok(2.0 * (1.0 - 5.0 * t) / (1.0 + t))
                }
            })
            .collect()
    }

    fn numerov_count(&self, lambda: f64) -> usize {
        match self.numerov_diag(lambda) {
            Ok(diag) => SymTridiagonal {
                diag,
                off: vec![-1.0; self.xs.len() - 1],
            }
            .count_below(0.0),
            Err(_) => 0,
        }
    }

    pub fn count_below(&self, lambda: f64) -> usize {
        match self.scheme {
            Scheme::Central2 => self.central.count_below(lambda),
            Scheme::Numerov => self.numerov_count(lambda),
        }
    }

    /// The `m` lowest eigenvalues.
    pub fn lowest(&self, m: usize) -> Result<Vec<f64>> {
        match self.scheme {
            Scheme::Central2 => eigen_lowest(&self.central, m),
            Scheme::Numerov => {
                if m > self.xs.len() {
                    return Err(QesError::Numeric(format!("requested {m} levels from {} nodes", self.xs.len())));
                }
                let lo = self.potential.iter().copied().fold(f64::INFINITY, f64::min);
                let mut hi = lo + 1.0;
                while self.numerov_count(hi) < m {
                    hi = lo + 2.0 * (hi - lo);
                    if !hi.is_finite() || hi - lo > 1e3 / (self.h * self.h) {
                        return Err(QesError::Numeric("Numerov count saturated before m levels".into()));
                    }
                }
                (0..m)
                    .map(|k| sturm::bisect_kth(|x| self.numerov_count(x), k, lo, hi))
                    .collect()
            }
        }
    }

    /// Nodal values of the eigenfunction at `lambda`, unit 2-norm.
    pub fn eigenvector(&self, lambda: f64) -> Result<Vec<f64>> {
        match self.scheme {
            Scheme::Central2 => Ok(self.central.eigenvector(lambda)),
            Scheme::Numerov => {
                let diag = self.numerov_diag(lambda)?;
                let off = vec![-1.0; diag.len() - 1];
                let w = sturm::inverse_iteration(&off, &diag, &off, diag.len());
                let mut psi: Vec<f64> = w.iter().zip(self.numerov_t(lambda)).map(|(w, t)| w / (1.0 + t)).collect();
                let scale = sturm::norm(&psi);
                psi.iter_mut().for_each(|p| *p /= scale);
                Ok(psi)
            }
        }
    }

    /// Residual of the eigenpair in the central-difference operator's norm.
    pub fn residual(&self, lambda: f64, v: &[f64]) -> f64 {
        self.central.residual(lambda, v)
    }
}

pub fn fd_hamiltonian(params: &ModelParams, grid: &GridConfig) -> Result<Discretization> {
    params.validate()?;
    grid.validate()?;
    let (a, b) = grid.interval(params.geometry);
    Discretization::new(a, b, grid.points, grid.scheme, |x| params.potential(x))
}

/// Parity of a sampled function on a mirror-symmetric grid.
pub fn detect_parity(values: &[f64]) -> Result<Parity> {
    let norm2: f64 = values.iter().map(|v| v * v).sum();
    let overlap: f64 = values.iter().zip(values.iter().rev()).map(|(a, b)| a * b).sum::<f64>() / norm2;
    if overlap >= PARITY_THRESHOLD {
        Ok(Parity::Even)
    } else if overlap <= -PARITY_THRESHOLD {
        Ok(Parity::Odd)
    } else {
        Err(QesError::Numeric(format!(
            "eigenvector has no clear parity (mirror overlap {overlap:.3})"
        )))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericSpectrum {
    pub energies: Vec<f64>,
    pub parities: Vec<Parity>,
    /// `‖(H − E)ψ‖/‖ψ‖` on the finest grid.
    pub residuals: Vec<f64>,
    /// Grid actually used (after any widening).
    pub grid: GridConfig,
}

fn solve_on(params: &ModelParams, grid: &GridConfig, m: usize) -> Result<(Discretization, Vec<f64>)> {
    let op = fd_hamiltonian(params, grid)?;
    let energies = op.lowest(m)?;
    Ok((op, energies))
}

/// Lowest `m` levels with their parities.
pub fn numeric_spectrum(params: &ModelParams, m: usize, grid: &GridConfig) -> Result<NumericSpectrum> {
    if m == 0 {
        return Err(QesError::InvalidParams("at least one level must be requested".into()));
    }
    let mut grid = *grid;
    let (mut op, mut energies) = solve_on(params, &grid, m)?;
    if params.geometry == Geometry::Hyperbolic {
        let spacing = 2.0 * grid.half_width / grid.points as f64;
        for _ in 0..MAX_WIDENINGS {
            let top = energies.iter().fold(0.0_f64, |a, e| a.max(e.abs()));
            if params.potential(grid.half_width)? > 10.0 * top {
                break;
            }
            grid.half_width += WIDENING_STEP;
            grid.points = (2.0 * grid.half_width / spacing).round() as usize;
            (op, energies) = solve_on(params, &grid, m)?;
        }
    }
    if grid.richardson {
        let (fine, fine_energies) = solve_on(params, &grid.with_points(2 * grid.points), m)?;
        let w = 2f64.powi(grid.scheme.order());
        let extrapolated = fine_energies
            .iter()
            .zip(&energies)
            .map(|(f, c)| (w * f - c) / (w - 1.0))
            .collect();
        return finish(&fine, &fine_energies, extrapolated, grid);
    }
    finish(&op, &energies.clone(), energies, grid)
}

/// Parities and residuals from the eigenpairs of `op` at `at`.
fn finish(op: &Discretization, at: &[f64], energies: Vec<f64>, grid: GridConfig) -> Result<NumericSpectrum> {
    let mut parities = Vec::with_capacity(at.len());
    let mut residuals = Vec::with_capacity(at.len());
    for &lambda in at {
        let v = op.eigenvector(lambda)?;
        parities.push(detect_parity(&v)?);
        residuals.push(op.residual(lambda, &v));
    }
    Ok(NumericSpectrum {
        energies,
        parities,
        residuals,
        grid,
    })
}
