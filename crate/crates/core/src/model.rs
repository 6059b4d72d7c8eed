//! Parameter model, couplings and potential evaluation.
//!
//! The hyperbolic potential is
//!
//! ```text
//! V(x) = 4γ² cosh⁴x − 4γ(η + γ + M) cosh²x + η(η − 1) tanh²x
//! ```
//!
//! and its trigonometric partner is `U(x) = −V(ix)`:
//!
//! ```text
//! U(x) = −4γ² cos⁴x + 4γ(η + γ + M) cos²x + η(η − 1) tan²x,   |x| < π/2
//! ```
//!
//! The integer-like coupling `M` selects which trial-function family has an
//! `(N + 1)`-dimensional polynomial sector. Units are `ħ²/2m = 1`.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{QesError, Result};

/// Largest polynomial order accepted by [`ModelParams::new`].
///
/// The monomial-basis polynomials behind every algebraic route lose accuracy
/// in double precision well before this; use [`ModelParams::with_order_cap`]
/// to move it.
pub const DEFAULT_MAX_ORDER: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Hyperbolic,
    Trigonometric,
}

impl Geometry {
    pub fn flipped(self) -> Self {
        match self {
            Geometry::Hyperbolic => Geometry::Trigonometric,
            Geometry::Trigonometric => Geometry::Hyperbolic,
        }
    }

    /// `+1` for hyperbolic, `−1` for trigonometric.
    pub fn sign(self) -> f64 {
        match self {
            Geometry::Hyperbolic => 1.0,
            Geometry::Trigonometric => -1.0,
        }
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Geometry::Hyperbolic => "hyperbolic",
            Geometry::Trigonometric => "trigonometric",
        })
    }
}

impl FromStr for Geometry {
    type Err = QesError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hyp" | "hyperbolic" => Ok(Geometry::Hyperbolic),
            "trig" | "trigonometric" => Ok(Geometry::Trigonometric),
            other => Err(QesError::InvalidParams(format!("unknown geometry `{other}`"))),
        }
    }
}

/// Trial-function family.
///
/// | family | prefactor (hyperbolic)               | parity |
/// |--------|--------------------------------------|--------|
/// | TF1    | `e^{−γcosh²x} cosh^η x`              | even   |
/// | TF2    | `e^{−γcosh²x} cosh^η x sinh x`       | odd    |
/// | TF3    | `e^{−γcosh²x} sech^{η−1} x`          | even   |
/// | TF4    | `e^{−γcosh²x} sech^{η−1} x sinh x`   | odd    |
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Tf1,
    Tf2,
    Tf3,
    Tf4,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Tf1, Family::Tf2, Family::Tf3, Family::Tf4];

    pub fn parity(self) -> Parity {
        match self {
            Family::Tf1 | Family::Tf3 => Parity::Even,
            Family::Tf2 | Family::Tf4 => Parity::Odd,
        }
    }

    /// Whether the family survives the map to the trigonometric cell.
    pub fn has_trigonometric_form(self) -> bool {
        matches!(self, Family::Tf1 | Family::Tf2)
    }

    /// Exponent `p` of `cosh x` (or `cos x`) in the prefactor.
    pub(crate) fn cosh_power(self, eta: f64) -> f64 {
        match self {
            Family::Tf1 | Family::Tf2 => eta,
            Family::Tf3 | Family::Tf4 => 1.0 - eta,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Tf1 => "TF1",
            Family::Tf2 => "TF2",
            Family::Tf3 => "TF3",
            Family::Tf4 => "TF4",
        })
    }
}

impl FromStr for Family {
    type Err = QesError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tf1" | "1" => Ok(Family::Tf1),
            "tf2" | "2" => Ok(Family::Tf2),
            "tf3" | "3" => Ok(Family::Tf3),
            "tf4" | "4" => Ok(Family::Tf4),
            other => Err(QesError::InvalidParams(format!("unknown family `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// An affine function of the energy, `slope·E + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    pub slope: f64,
    pub intercept: f64,
}

impl AffineMap {
    pub const fn new(slope: f64, intercept: f64) -> Self {
        Self { slope, intercept }
    }

    pub fn at(&self, energy: f64) -> f64 {
        self.slope * energy + self.intercept
    }

    /// The energy at which the map takes `value`.
    pub fn solve(&self, value: f64) -> f64 {
        (value - self.intercept) / self.slope
    }
}

impl std::ops::Add for AffineMap {
    type Output = AffineMap;

    fn add(self, rhs: AffineMap) -> AffineMap {
        AffineMap::new(self.slope + rhs.slope, self.intercept + rhs.intercept)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub geometry: Geometry,
    pub family: Family,
    pub gamma: f64,
    pub eta: f64,
    pub order: usize,
}

impl ModelParams {
    pub fn new(geometry: Geometry, family: Family, gamma: f64, eta: f64, order: usize) -> Result<Self> {
        Self::with_order_cap(geometry, family, gamma, eta, order, DEFAULT_MAX_ORDER)
    }

    pub fn with_order_cap(
        geometry: Geometry,
        family: Family,
        gamma: f64,
        eta: f64,
        order: usize,
        max_order: usize,
    ) -> Result<Self> {
        let params = Self {
            geometry,
            family,
            gamma,
            eta,
            order,
        };
        params.validate_with_cap(max_order)?;
        Ok(params)
    }

    pub fn hyperbolic(family: Family, gamma: f64, eta: f64, order: usize) -> Result<Self> {
        Self::new(Geometry::Hyperbolic, family, gamma, eta, order)
    }

    pub fn trigonometric(family: Family, gamma: f64, eta: f64, order: usize) -> Result<Self> {
        Self::new(Geometry::Trigonometric, family, gamma, eta, order)
    }

    pub fn validate(&self) -> Result<()> {
        self.validate_with_cap(DEFAULT_MAX_ORDER)
    }

    pub fn validate_with_cap(&self, max_order: usize) -> Result<()> {
        if !(self.gamma.is_finite() && self.gamma > 0.0) {
            return Err(QesError::InvalidParams(format!(
                "gamma must be finite and positive, got {}",
                self.gamma
            )));
        }
        if !self.eta.is_finite() {
            return Err(QesError::InvalidParams(format!("eta must be finite, got {}", self.eta)));
        }
        if self.order > max_order {
            return Err(QesError::InvalidParams(format!(
                "order {} exceeds the cap of {max_order}",
                self.order
            )));
        }
        if self.geometry == Geometry::Trigonometric {
            if !self.family.has_trigonometric_form() {
                return Err(QesError::UnsupportedFamily(self.family));
            }
            if self.eta <= 0.0 {
                return Err(QesError::InvalidParams(format!(
                    "trigonometric geometry needs eta > 0, got {}",
                    self.eta
                )));
            }
        }
        Ok(())
    }

    pub fn coupling_m(&self) -> f64 {
        coupling_m(self.family, self.order, self.eta)
    }

    pub fn coupling_v1(&self) -> f64 {
        coupling_v1(self)
    }

    pub fn coefficients(&self) -> PotentialCoefficients {
        PotentialCoefficients::from_params(self)
    }

    pub fn potential(&self, x: f64) -> Result<f64> {
        eval_potential(self, x)
    }

    pub fn with_order(self, order: usize) -> Self {
        Self { order, ..self }
    }

    pub fn with_geometry(self, geometry: Geometry) -> Self {
        Self { geometry, ..self }
    }
}

impl fmt::Display for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} gamma={} eta={} N={}",
            self.geometry, self.family, self.gamma, self.eta, self.order
        )
    }
}

/// Coupling `M` for the family at polynomial order `order`.
pub fn coupling_m(family: Family, order: usize, eta: f64) -> f64 {
    let n = order as f64;
    match family {
        Family::Tf1 => 2.0 * n + 1.0,
        Family::Tf2 => 2.0 * n + 2.0,
        Family::Tf3 => 2.0 * n + 2.0 - 2.0 * eta,
        Family::Tf4 => 2.0 * n + 3.0 - 2.0 * eta,
    }
}

/// Geometry-signed coefficient of the `cosh²x` (`cos²x`) term:
/// `V₁ = ∓4γ(η + γ + M)`, negative for the hyperbolic well.
pub fn coupling_v1(params: &ModelParams) -> f64 {
    -params.geometry.sign() * 4.0 * params.gamma * (params.eta + params.gamma + params.coupling_m())
}

/// Coefficients of `c⁴`, `c²` and `t²` with `c = cosh x, t = tanh x`
/// (hyperbolic) or `c = cos x, t = tan x` (trigonometric).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialCoefficients {
    pub m: f64,
    pub v1: f64,
    pub quartic: f64,
    pub quadratic: f64,
    pub centrifugal: f64,
}

impl PotentialCoefficients {
    pub fn from_params(params: &ModelParams) -> Self {
        let sign = params.geometry.sign();
        let m = params.coupling_m();
        let v1 = coupling_v1(params);
        Self {
            m,
            v1,
            quartic: sign * 4.0 * params.gamma * params.gamma,
            quadratic: v1,
            centrifugal: params.eta * (params.eta - 1.0),
        }
    }

    /// `quartic·c⁴ + quadratic·c² + centrifugal·t²` for the given geometry.
    pub fn eval(&self, geometry: Geometry, x: f64) -> Result<f64> {
        let (c, t) = match geometry {
            Geometry::Hyperbolic => (x.cosh(), x.tanh()),
            Geometry::Trigonometric => {
                check_cell(x)?;
                (x.cos(), x.tan())
            }
        };
        let c2 = c * c;
        Ok(self.quartic * c2 * c2 + self.quadratic * c2 + self.centrifugal * t * t)
    }
}

pub fn eval_potential(params: &ModelParams, x: f64) -> Result<f64> {
    params.coefficients().eval(params.geometry, x)
}

/// `x ↦ ix`: swaps geometry, keeps `(family, γ, η, N)`.
pub fn anti_isospectral_map(params: &ModelParams) -> Result<ModelParams> {
    if !params.family.has_trigonometric_form() {
        return Err(QesError::UnsupportedFamily(params.family));
    }
    if params.eta <= 0.0 {
        return Err(QesError::InvalidParams(format!(
            "the trigonometric partner needs eta > 0, got {}",
            params.eta
        )));
    }
    let mapped = params.with_geometry(params.geometry.flipped());
    mapped.validate()?;
    Ok(mapped)
}

pub(crate) fn check_cell(x: f64) -> Result<()> {
    if x.is_finite() && x.abs() < FRAC_PI_2 {
        Ok(())
    } else {
        Err(QesError::Domain { x })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// `max |ψ| = 1`, with the largest-magnitude sample made positive.
    MaxAbsOne,
    /// Unit trapezoidal L² norm over the sampled points.
    L2One,
}

/// Sampled wavefunction on a strictly increasing grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionSamples {
    pub points: Vec<(f64, f64)>,
    pub normalization: Normalization,
}

impl WavefunctionSamples {
    pub fn new(xs: &[f64], psi: Vec<f64>, normalization: Normalization) -> Result<Self> {
        if xs.len() != psi.len() {
            return Err(QesError::InvalidParams(format!(
                "{} grid points but {} samples",
                xs.len(),
                psi.len()
            )));
        }
        if xs.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(QesError::InvalidParams("x grid must be strictly increasing".into()));
        }
        if let Some(bad) = psi.iter().position(|v| !v.is_finite()) {
            return Err(QesError::Numeric(format!("non-finite wavefunction sample at x = {}", xs[bad])));
        }
        let scale = match normalization {
            Normalization::MaxAbsOne => psi
                .iter()
                .copied()
                .fold(0.0_f64, |acc, v| if v.abs() > acc.abs() { v } else { acc }),
            Normalization::L2One => {
                let norm2: f64 = xs
                    .windows(2)
                    .zip(psi.windows(2))
                    .map(|(x, p)| 0.5 * (x[1] - x[0]) * (p[0] * p[0] + p[1] * p[1]))
                    .sum();
                norm2.sqrt()
            }
        };
        if scale == 0.0 {
            return Err(QesError::Numeric("wavefunction vanishes on the whole grid".into()));
        }
        let points = xs.iter().zip(psi).map(|(&x, p)| (x, p / scale)).collect();
        Ok(Self { points, normalization })
    }

    pub fn xs(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.0)
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.1)
    }

    /// Sign changes across the grid; an exact zero between opposite signs
    /// counts once.
    pub fn node_count(&self) -> usize {
        count_sign_changes(self.values())
    }
}

pub(crate) fn count_sign_changes(values: impl Iterator<Item = f64>) -> usize {
    let mut last = 0.0_f64;
    let mut count = 0;
    for v in values {
        if v == 0.0 {
            continue;
        }
        if last != 0.0 && (v > 0.0) != (last > 0.0) {
            count += 1;
        }
        last = v;
    }
    count
}
