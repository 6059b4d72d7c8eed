//! Direct polynomial-expansion solver.
//!
//! Writing `ψ = prefactor(x)·f(z)` with `z = cosh²x` (or `cos²x`) turns the
//! Schrödinger equation into a confluent-Heun-type equation for `f`,
//!
//! ```text
//! f'' + [c + p₀/z + p₁/(z−1)] f' + [s₀(E)/z + s₁(E)/(z−1)] f = 0,
//! ```
//!
//! whose bracketed coefficients are collected in [`CheLocalForm`]. A
//! degree-`N` polynomial `f` exists exactly when the operator, restricted to
//! `span{1, z, …, z^N}`, is singular. The energy condition is assembled
//! directly on the monomial basis; the polynomial roots `z_{N,i}` follow from
//! the null vector.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QesError, Result};
use crate::model::{AffineMap, Family, Geometry, ModelParams, Normalization, WavefunctionSamples};
use crate::poly::{self, RootSet};
use crate::numeric::TridiagonalLu;

/// Bracketed coefficients of the equation for `f(z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheLocalForm {
    pub drift_constant: f64,
    pub pole0_drift: f64,
    pub pole1_drift: f64,
    pub pole0_source: AffineMap,
    pub pole1_source: AffineMap,
}

pub fn che_local_coeffs(params: &ModelParams) -> Result<CheLocalForm> {
    che_local_coeffs_with_coupling(params, params.coupling_v1())
}

/// As [`che_local_coeffs`] with an arbitrary quadratic coupling `V₁` in place
/// of the one that truncates the series at `N`.
pub fn che_local_coeffs_with_coupling(params: &ModelParams, v1: f64) -> Result<CheLocalForm> {
    params.validate()?;
    let g = params.gamma;
    let e = params.eta;
    let q = 0.25;
    let (pole0_drift, pole1_drift, s0, s1) = match (params.geometry, params.family) {
        (Geometry::Hyperbolic, Family::Tf1) => (
            e + 0.5,
            0.5,
            AffineMap::new(-q, -q * (e + 2.0 * g * (2.0 * e + 1.0))),
            AffineMap::new(q, q * (e - v1 - 2.0 * g * (2.0 * g + 1.0))),
        ),
        (Geometry::Hyperbolic, Family::Tf2) => (
            e + 0.5,
            1.5,
            AffineMap::new(-q, -q * (3.0 * e + 2.0 * g * (2.0 * e + 1.0) + 1.0)),
            AffineMap::new(q, q * (3.0 * e - v1 - 2.0 * g * (2.0 * g + 3.0) + 1.0)),
        ),
        (Geometry::Hyperbolic, Family::Tf3) => (
            -e + 1.5,
            0.5,
            AffineMap::new(-q, -q * (-e + 2.0 * g * (3.0 - 2.0 * e) + 1.0)),
            AffineMap::new(q, q * (-e - v1 - 2.0 * g * (2.0 * g + 1.0) + 1.0)),
        ),
        (Geometry::Hyperbolic, Family::Tf4) => (
            -e + 1.5,
            1.5,
            AffineMap::new(-q, -q * (-3.0 * e + 2.0 * g * (3.0 - 2.0 * e) + 4.0)),
            AffineMap::new(q, q * (-3.0 * e - v1 - 2.0 * g * (2.0 * g + 3.0) + 4.0)),
        ),
        (Geometry::Trigonometric, Family::Tf1) => (
            e + 0.5,
            0.5,
            AffineMap::new(q, q * (-e - 2.0 * g * (2.0 * e + 1.0))),
            AffineMap::new(-q, -q * (-e - v1 + 2.0 * g * (2.0 * g + 1.0))),
        ),
        (Geometry::Trigonometric, Family::Tf2) => (
            e + 0.5,
            1.5,
            AffineMap::new(q, q * (-3.0 * e - 2.0 * g * (2.0 * e + 1.0) - 1.0)),
            AffineMap::new(-q, -q * (-3.0 * e - v1 + 2.0 * g * (2.0 * g + 3.0) - 1.0)),
        ),
        (Geometry::Trigonometric, family) => return Err(QesError::UnsupportedFamily(family)),
    };
    Ok(CheLocalForm {
        drift_constant: -2.0 * g,
        pole0_drift,
        pole1_drift,
        pole0_source: s0,
        pole1_source: s1,
    })
}

impl CheLocalForm {
    /// Coefficient of `z^{k+1}` produced by `z(z−1)·L` acting on `z^k`; it is
    /// energy independent because the source slopes cancel.
    fn raise(&self, k: usize) -> f64 {
        let sources = self.pole0_source + self.pole1_source;
        self.drift_constant * k as f64 + sources.intercept
    }

    fn diagonal(&self, k: usize) -> AffineMap {
        let kf = k as f64;
        let base = kf * (kf - 1.0 - self.drift_constant + self.pole0_drift + self.pole1_drift);
        AffineMap::new(-self.pole0_source.slope, base - self.pole0_source.intercept)
    }

    fn lower(&self, k: usize) -> f64 {
        let kf = k as f64;
        -kf * (kf - 1.0 + self.pole0_drift)
    }

    /// Whether `z^N` is mapped back into the degree-`N` space.
    pub fn terminates_at(&self, order: usize) -> bool {
        let sources = self.pole0_source + self.pole1_source;
        let scale = self.drift_constant.abs() * order as f64 + sources.intercept.abs() + 1.0;
        sources.slope.abs() <= 1e-15 && self.raise(order).abs() <= 1e-12 * scale
    }

    /// Residual of the equation for `f` at `z`, with the sum of the magnitudes
    /// of its terms as a scale.
    pub fn residual(&self, energy: f64, coeffs: &[f64], z: f64) -> (f64, f64) {
        let (f, df, ddf) = poly::eval_with_derivatives(coeffs, z);
        let drift = self.drift_constant + self.pole0_drift / z + self.pole1_drift / (z - 1.0);
        let source = self.pole0_source.at(energy) / z + self.pole1_source.at(energy) / (z - 1.0);
        let terms = [ddf, drift * df, source * f];
        (terms.iter().sum(), terms.iter().map(|t| t.abs()).sum())
    }

    /// `det` of the restricted operator as a polynomial in `E` (ascending).
    fn energy_condition(&self, order: usize) -> Vec<f64> {
        let diag = |k: usize| {
            let d = self.diagonal(k);
            vec![d.intercept, d.slope]
        };
        let mut prev = vec![1.0];
        let mut cur = diag(0);
        for k in 1..=order {
            let coupling = self.lower(k) * self.raise(k - 1);
            let next = poly::axpy(&poly::mul(&diag(k), &cur), -coupling, &prev);
            prev = cur;
            cur = next;
        }
        cur
    }

    /// Monic null vector `c₀..c_N` at `energy`: back substitution from
    /// `c_N = 1`, refined by inverse iteration on the full operator.
    fn null_vector(&self, order: usize, energy: f64) -> Vec<f64> {
        let mut c = vec![0.0; order + 1];
        c[order] = 1.0;
        for j in (1..=order).rev() {
            let upper = if j < order { self.lower(j + 1) * c[j + 1] } else { 0.0 };
            c[j - 1] = -(self.diagonal(j).at(energy) * c[j] + upper) / self.raise(j - 1);
        }
        if order == 0 {
            return c;
        }
        let sub: Vec<f64> = (0..order).map(|k| self.raise(k)).collect();
        let diag: Vec<f64> = (0..=order).map(|k| self.diagonal(k).at(energy)).collect();
        let sup: Vec<f64> = (1..=order).map(|k| self.lower(k)).collect();
        let lu = TridiagonalLu::factor(&sub, &diag, &sup);
        for _ in 0..2 {
            let next = lu.solve(&c);
            let top = next[order];
            if top == 0.0 || !next.iter().all(|x| x.is_finite()) {
                break;
            }
            c = next.iter().map(|x| x / top).collect();
        }
        c
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QesLevel {
    pub energy: f64,
    /// Real zeros of `f`, ascending.
    pub bethe_roots: Vec<f64>,
    /// Zeros of `f` off the real axis, if any.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub complex_bethe_roots: Vec<Complex64>,
    /// `f(z) = Σ monic_coeffs[k] zᵏ`, with `monic_coeffs[N] = 1`.
    pub monic_coeffs: Vec<f64>,
}

impl QesLevel {
    pub fn polynomial(&self, z: f64) -> f64 {
        poly::eval(&self.monic_coeffs, z)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QesSpectrum {
    pub params: ModelParams,
    pub levels: Vec<QesLevel>,
    /// Roots of the energy condition off the real axis (not physical levels).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub complex_energies: Vec<Complex64>,
}

impl QesSpectrum {
    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }

    pub fn energy_set(&self) -> RootSet {
        RootSet {
            real: self.energies(),
            complex: self.complex_energies.clone(),
        }
    }
}

/// Printed closed forms, available for TF1/TF2 at `N ≤ 1`.
///
/// Returns `None` for other families or orders, or when the `N = 1`
/// discriminant is negative.
pub fn closed_form_levels(params: &ModelParams) -> Option<Vec<f64>> {
    params.validate().ok()?;
    let g = params.gamma;
    let e = params.eta;
    let hyperbolic = match (params.family, params.order) {
        (Family::Tf1, 0) => vec![-e - 2.0 * g * (2.0 * e + 1.0)],
        (Family::Tf2, 0) => vec![-e - (2.0 * g + 1.0) * (2.0 * e + 1.0)],
        (Family::Tf1, 1) => {
            let disc = (e + 1.0).powi(2) + 4.0 * g * (g - e);
            if disc < 0.0 {
                return None;
            }
            let centre = -(3.0 * e + 6.0 * g + 2.0 + 4.0 * g * e);
            vec![centre - 2.0 * disc.sqrt(), centre + 2.0 * disc.sqrt()]
        }
        (Family::Tf2, 1) => {
            let disc = (e + 2.0).powi(2) + 4.0 * g * (g - e + 1.0);
            if disc < 0.0 {
                return None;
            }
            let centre = -(6.0 * g + 5.0 * e + 4.0 * g * e + 5.0);
            vec![centre - 2.0 * disc.sqrt(), centre + 2.0 * disc.sqrt()]
        }
        _ => return None,
    };
    let mut levels: Vec<f64> = hyperbolic.into_iter().map(|x| params.geometry.sign() * x).collect();
    levels.sort_by(f64::total_cmp);
    Some(levels)
}

pub fn solve_polynomial_system(params: &ModelParams) -> Result<QesSpectrum> {
    let form = che_local_coeffs(params)?;
    let order = params.order;
    if !form.terminates_at(order) {
        return Err(QesError::Degenerate(format!(
            "coupling V1 = {} does not truncate the series at N = {order}",
            params.coupling_v1()
        )));
    }
    let energies = poly::roots(&form.energy_condition(order))?;
    let levels = energies
        .real
        .iter()
        .map(|&energy| level_at(&form, order, energy))
        .collect::<Result<Vec<_>>>()?;
    Ok(QesSpectrum {
        params: *params,
        levels,
        complex_energies: energies.complex,
    })
}

fn level_at(form: &CheLocalForm, order: usize, energy: f64) -> Result<QesLevel> {
    let monic_coeffs = form.null_vector(order, energy);
    let roots = poly::roots(&monic_coeffs)?;
    Ok(QesLevel {
        energy,
        bethe_roots: roots.real,
        complex_bethe_roots: roots.complex,
        monic_coeffs,
    })
}

/// `z = cosh²x` or `cos²x`.
pub fn bethe_variable(geometry: Geometry, x: f64) -> f64 {
    match geometry {
        Geometry::Hyperbolic => x.cosh().powi(2),
        Geometry::Trigonometric => x.cos().powi(2),
    }
}

/// Trial-function prefactor multiplying `f(z(x))`.
pub fn prefactor(params: &ModelParams, x: f64) -> Result<f64> {
    let g = params.gamma;
    let p = params.family.cosh_power(params.eta);
    let (c, s) = match params.geometry {
        Geometry::Hyperbolic => (x.cosh(), x.sinh()),
        Geometry::Trigonometric => {
            crate::model::check_cell(x)?;
            (x.cos(), x.sin())
        }
    };
    let odd = if params.family.parity() == crate::model::Parity::Odd { s } else { 1.0 };
    Ok((-g * c * c).exp() * c.powf(p) * odd)
}

pub fn assemble_wavefunction(
    params: &ModelParams,
    level: &QesLevel,
    xs: &[f64],
    normalization: Normalization,
) -> Result<WavefunctionSamples> {
    if level.monic_coeffs.len() != params.order + 1 {
        return Err(QesError::InvalidParams(format!(
            "level has a degree-{} polynomial, parameters have N = {}",
            level.monic_coeffs.len().saturating_sub(1),
            params.order
        )));
    }
    let psi = xs
        .iter()
        .map(|&x| Ok(prefactor(params, x)? * level.polynomial(bethe_variable(params.geometry, x))))
        .collect::<Result<Vec<_>>>()?;
    WavefunctionSamples::new(xs, psi, normalization)
}
