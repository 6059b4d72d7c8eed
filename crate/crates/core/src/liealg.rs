//! sl(2,ℝ) algebraization.
//!
//! After the gauge transformation `ψ = μ̂(z)·χ̂(z)` the Hamiltonian becomes a
//! quadratic combination of the generators
//!
//! ```text
//! J₋ = ∂_z,   J₀ = z∂_z − N/2,   J₊ = z²∂_z − Nz,
//! ```
//!
//! which preserves polynomials of degree `N`. Expanding `χ̂` in powers of
//! `z + 1` gives the three-term recurrence for the critical polynomials
//! `P̂_k(E)`; the QES energies are the zeros of `P̂_{N+1}`.
//!
//! The Lie variable is `z = cosh 2x` on the hyperbolic side and
//! `z = −cos 2x` on the trigonometric side.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QesError, Result};
use crate::model::{Family, Geometry, ModelParams, Normalization, Parity, WavefunctionSamples};
use crate::poly::{self, RootSet};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LieSector {
    pub sigma: f64,
    /// Closed form of `η(η−1)/(σ−η−1)`.
    pub kappa_const: f64,
    /// Additive constant of the gauge Hamiltonian, geometry-signed.
    pub cstar: f64,
    /// `σ/2 + η(2η−σ)/(2(σ−η−1))`, the argument of the factorial weights.
    pub weight_arg: f64,
}

impl LieSector {
    pub fn new(params: &ModelParams) -> Result<Self> {
        params.validate()?;
        let e = params.eta;
        let (sigma, kappa_const, weight_arg) = match params.family {
            Family::Tf1 => (2.0 * e, e, e),
            Family::Tf2 => (2.0 * e + 1.0, e - 1.0, e),
            Family::Tf3 => (1.0, 1.0 - e, 1.0 - e),
            Family::Tf4 => (2.0, -e, 1.0 - e),
        };
        let d = sigma - e;
        let n = params.order as f64;
        let g = params.gamma;
        let cstar_h = -(n + d).powi(2) - 2.0 * g * (2.0 * n + d + 1.0) + e * (e - 1.0) - 2.0 * g * kappa_const;
        Ok(Self {
            sigma,
            kappa_const,
            cstar: params.geometry.sign() * cstar_h,
            weight_arg,
        })
    }

    fn shift(&self, eta: f64) -> f64 {
        self.sigma - eta
    }
}

/// `(a_k, b_k)` of `P̂_{k+1} = (E − b_k)P̂_k − a_kP̂_{k−1}`.
pub fn recurrence_coeffs(params: &ModelParams, k: usize) -> Result<(f64, f64)> {
    let sector = LieSector::new(params)?;
    Ok(coeffs_for(params, &sector, k))
}

fn coeffs_for(params: &ModelParams, sector: &LieSector, k: usize) -> (f64, f64) {
    let g = params.gamma;
    let e = params.eta;
    let d = sector.shift(e);
    let kap = sector.kappa_const;
    let kf = k as f64;
    let a = 16.0 * g * kf * (kf - params.order as f64 - 1.0) * (2.0 * kf - 1.0 + d + kap);
    let b = -4.0 * kf * (d + kf + 2.0 * g) - 2.0 * g * (d + 1.0) + e * (e - 1.0) - 2.0 * g * kap - d * d;
    (a, params.geometry.sign() * b)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalPolynomialSequence {
    pub energy: f64,
    /// `P̂₀(E) = 1, …, P̂_{N+1}(E)`.
    pub values: Vec<f64>,
}

impl CriticalPolynomialSequence {
    pub fn terminal(&self) -> f64 {
        *self.values.last().expect("sequence holds at least P̂₀ and P̂₁")
    }
}

pub fn critical_polynomials(params: &ModelParams, energy: f64) -> Result<CriticalPolynomialSequence> {
    let sector = LieSector::new(params)?;
    let mut values = Vec::with_capacity(params.order + 2);
    let (mut prev, mut cur) = (0.0, 1.0);
    values.push(cur);
    for k in 0..=params.order {
        let (a, b) = coeffs_for(params, &sector, k);
        let next = (energy - b) * cur - a * prev;
        values.push(next);
        (prev, cur) = (cur, next);
    }
    Ok(CriticalPolynomialSequence { energy, values })
}

/// `P̂_{N+1}` as a polynomial in `E`, ascending.
pub fn critical_polynomial_coeffs(params: &ModelParams) -> Result<Vec<f64>> {
    let sector = LieSector::new(params)?;
    let (mut prev, mut cur) = (vec![0.0], vec![1.0]);
    for k in 0..=params.order {
        let (a, b) = coeffs_for(params, &sector, k);
        let next = poly::axpy(&poly::mul(&[-b, 1.0], &cur), -a, &prev);
        (prev, cur) = (cur, next);
    }
    Ok(cur)
}

/// Zeros of `P̂_{N+1}(E)`.
pub fn qes_energies_via_recurrence(params: &ModelParams) -> Result<RootSet> {
    let coeffs = critical_polynomial_coeffs(params)?;
    let found = poly::roots(&coeffs)?;
    let sector = LieSector::new(params)?;
    let polished = found.real.iter().map(|&root| newton_polish(params, &sector, root));
    Ok(RootSet::from_complex(
        polished.map(|r| Complex64::new(r, 0.0)).chain(found.complex),
    ))
}

fn terminal_with_derivative(params: &ModelParams, sector: &LieSector, energy: f64) -> (f64, f64) {
    let (mut p_prev, mut p) = (0.0, 1.0);
    let (mut d_prev, mut d) = (0.0, 0.0);
    for k in 0..=params.order {
        let (a, b) = coeffs_for(params, sector, k);
        let p_next = (energy - b) * p - a * p_prev;
        let d_next = p + (energy - b) * d - a * d_prev;
        (p_prev, p) = (p, p_next);
        (d_prev, d) = (d, d_next);
    }
    (p, d)
}

fn newton_polish(params: &ModelParams, sector: &LieSector, root: f64) -> f64 {
    let mut x = root;
    for _ in 0..3 {
        let (p, dp) = terminal_with_derivative(params, sector, x);
        if dp == 0.0 {
            break;
        }
        let next = x - p / dp;
        if (next - x).abs() > 1e-6 * (1.0 + x.abs())
            || terminal_with_derivative(params, sector, next).0.abs() >= p.abs()
        {
            break;
        }
        x = next;
    }
    x
}

/// `cosh 2x` or `−cos 2x`.
pub fn lie_variable(geometry: Geometry, x: f64) -> f64 {
    match geometry {
        Geometry::Hyperbolic => (2.0 * x).cosh(),
        Geometry::Trigonometric => -(2.0 * x).cos(),
    }
}

/// Lie variable from the polynomial-expansion variable `cosh²x` or `cos²x`.
pub fn lie_from_bethe(geometry: Geometry, z_bethe: f64) -> f64 {
    geometry.sign() * (2.0 * z_bethe - 1.0)
}

/// Gauge factor `μ̂(z)` in the Lie variable.
///
/// Hyperbolic: `(z+1)^{(d+κ)/4}(z−1)^{(d−κ)/4}e^{−γz/2}` for `z ≥ 1`;
/// trigonometric: `(1+z)^{(d−κ)/4}(1−z)^{(d+κ)/4}e^{γz/2}` for `|z| ≤ 1`,
/// with `d = σ − η`, `κ` the sector constant.
pub fn gauge_factor(params: &ModelParams, z: f64) -> Result<f64> {
    let sector = LieSector::new(params)?;
    let d = sector.shift(params.eta);
    let kap = sector.kappa_const;
    let g = params.gamma;
    match params.geometry {
        Geometry::Hyperbolic => {
            if !(z >= 1.0) {
                return Err(QesError::GaugeDomain { z });
            }
            Ok((z + 1.0).powf(0.25 * (d + kap)) * (z - 1.0).powf(0.25 * (d - kap)) * (-0.5 * g * z).exp())
        }
        Geometry::Trigonometric => {
            if !(-1.0..=1.0).contains(&z) {
                return Err(QesError::GaugeDomain { z });
            }
            Ok((1.0 + z).powf(0.25 * (d - kap)) * (1.0 - z).powf(0.25 * (d + kap)) * (0.5 * g * z).exp())
        }
    }
}

/// `w_k = (a+k)! / (2^k (2a+2k)!) / k!` normalised to `w₀ = 1`.
fn expansion_weights(sector: &LieSector, order: usize) -> Result<Vec<f64>> {
    let a = sector.weight_arg;
    let mut weights = Vec::with_capacity(order + 1);
    weights.push(1.0);
    for k in 1..=order {
        let denom = 4.0 * (2.0 * a + 2.0 * k as f64 - 1.0) * k as f64;
        if denom == 0.0 {
            return Err(QesError::Degenerate(format!(
                "factorial weight has a pole at k = {k} (weight argument {a})"
            )));
        }
        weights.push(weights[k - 1] / denom);
    }
    Ok(weights)
}

/// Samples `ψ = μ̂(z)·Σ_{k≤N} w_k (±(1∓z))^k P̂_k(E)` at `xs`.
pub fn lie_wavefunction(
    params: &ModelParams,
    energy: f64,
    xs: &[f64],
    normalization: Normalization,
) -> Result<WavefunctionSamples> {
    let sector = LieSector::new(params)?;
    let weights = expansion_weights(&sector, params.order)?;
    let critical = critical_polynomials(params, energy)?;
    let odd = params.family.parity() == Parity::Odd;
    let psi = xs
        .iter()
        .map(|&x| {
            if params.geometry == Geometry::Trigonometric {
                crate::model::check_cell(x)?;
            }
            let z = lie_variable(params.geometry, x);
            let u = match params.geometry {
                Geometry::Hyperbolic => z + 1.0,
                Geometry::Trigonometric => -(1.0 - z),
            };
            let mut sum = 0.0;
            let mut power = 1.0;
            for (w, p) in weights.iter().zip(&critical.values) {
                sum += w * power * p;
                power *= u;
            }
            let sign = if odd && x < 0.0 { -1.0 } else { 1.0 };
            Ok(sign * gauge_factor(params, z)? * sum)
        })
        .collect::<Result<Vec<_>>>()?;
    WavefunctionSamples::new(xs, psi, normalization)
}

/// Matrix of the gauge Hamiltonian on `{1, z, …, z^N}`; column `n` holds the
/// image of `zⁿ`.
pub fn gauge_hamiltonian_matrix(params: &ModelParams) -> Result<DMatrix<f64>> {
    let sector = LieSector::new(params)?;
    let order = params.order;
    let s = params.geometry.sign();
    let d = sector.shift(params.eta);
    let g = params.gamma;
    let mut h = DMatrix::zeros(order + 1, order + 1);
    for n in 0..=order {
        let nf = n as f64;
        let j0 = nf - 0.5 * order as f64;
        h[(n, n)] = s * (-4.0 * j0 * j0 - 4.0 * (d + order as f64) * j0) + sector.cstar;
        if n >= 2 {
            h[(n - 2, n)] = s * 4.0 * nf * (nf - 1.0);
        }
        if n >= 1 {
            h[(n - 1, n)] = 4.0 * (sector.kappa_const - g) * nf;
        }
        if n < order {
            h[(n + 1, n)] = 4.0 * g * (nf - order as f64);
        }
    }
    Ok(h)
}

pub fn gauge_hamiltonian_eigenvalues(params: &ModelParams) -> Result<RootSet> {
    let h = gauge_hamiltonian_matrix(params)?;
    Ok(RootSet::from_complex(h.complex_eigenvalues().iter().copied()))
}

/// Coefficients of the reference potentials
/// `A cosh²(2x) + B cosh 2x + C coth 2x csch 2x + D csch² 2x` and
/// `A sin²(2y) + B sin 2y + C tan 2y sec 2y + D sec² 2y`, `y = x − π/4`,
/// which reproduce the model potential up to an additive constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReferenceForm {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub kappa: f64,
}

impl ReferenceForm {
    /// The reference potential at the model coordinate `x`.
    pub fn eval(&self, geometry: Geometry, x: f64) -> f64 {
        let r = self.kappa.sqrt();
        match geometry {
            Geometry::Hyperbolic => {
                let (c, s) = ((r * x).cosh(), (r * x).sinh());
                self.a * c * c + self.b * c + self.c * c / (s * s) + self.d / (s * s)
            }
            Geometry::Trigonometric => {
                let y = x - std::f64::consts::FRAC_PI_4;
                let (s, c) = (r * y).sin_cos();
                self.a * s * s + self.b * s + self.c * s / (c * c) + self.d / (c * c)
            }
        }
    }
}

pub fn match_reference_form(params: &ModelParams) -> Result<ReferenceForm> {
    params.validate()?;
    let g = params.gamma;
    let e = params.eta;
    let centrifugal = 2.0 * e * (e - 1.0);
    let b = -2.0 * g * (e + params.coupling_m());
    Ok(match params.geometry {
        Geometry::Hyperbolic => ReferenceForm { a: g * g, b, c: -centrifugal, d: centrifugal, kappa: 4.0 },
        Geometry::Trigonometric => ReferenceForm { a: -g * g, b, c: centrifugal, d: centrifugal, kappa: 4.0 },
    })
}
