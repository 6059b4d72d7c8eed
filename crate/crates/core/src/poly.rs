//! Dense real polynomials (ascending coefficients) and an Aberth–Ehrlich
//! simultaneous root finder.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{QesError, Result};

/// Stop when every correction satisfies `|Δz| ≤ ABERTH_TOL·(1 + |z|)`.
pub const ABERTH_TOL: f64 = 1e-13;
pub const ABERTH_MAX_ITER: usize = 200;
/// Roots with `|Im z| ≤ REAL_ROOT_TOL·(1 + |Re z|)` are reported as real.
pub const REAL_ROOT_TOL: f64 = 1e-8;

pub fn eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Value and first derivative.
pub fn eval_with_derivative(coeffs: &[f64], x: f64) -> (f64, f64) {
    let mut p = 0.0;
    let mut dp = 0.0;
    for &c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// Value, first and second derivative.
pub fn eval_with_derivatives(coeffs: &[f64], x: f64) -> (f64, f64, f64) {
    let mut p = 0.0;
    let mut dp = 0.0;
    let mut ddp = 0.0;
    for &c in coeffs.iter().rev() {
        ddp = ddp * x + 2.0 * dp;
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp, ddp)
}

fn eval_complex(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

pub fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `a + scale·b`, padded to the longer length.
pub fn axpy(a: &[f64], scale: f64, b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len().max(b.len())];
    for (o, &x) in out.iter_mut().zip(a) {
        *o += x;
    }
    for (o, &y) in out.iter_mut().zip(b) {
        *o += scale * y;
    }
    out
}

/// Monic polynomial `∏(z − rᵢ)`.
pub fn from_roots(roots: &[f64]) -> Vec<f64> {
    roots.iter().fold(vec![1.0], |acc, &r| mul(&acc, &[-r, 1.0]))
}

fn degree(coeffs: &[f64]) -> Option<usize> {
    coeffs.iter().rposition(|&c| c != 0.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AberthRoots {
    pub roots: Vec<Complex64>,
    pub iterations: usize,
    pub converged: bool,
}

/// All complex roots of `Σ coeffs[k] zᵏ`.
///
/// Trailing zero coefficients are dropped. A polynomial that is identically
/// zero has no well-defined root set and is rejected.
pub fn aberth(coeffs: &[f64]) -> Result<AberthRoots> {
    let Some(n) = degree(coeffs) else {
        return Err(QesError::Numeric("root finding on the zero polynomial".into()));
    };
    if coeffs[..=n].iter().any(|c| !c.is_finite()) {
        return Err(QesError::Numeric("non-finite polynomial coefficient".into()));
    }
    let coeffs = &coeffs[..=n];
    match n {
        0 => {
            return Ok(AberthRoots {
                roots: Vec::new(),
                iterations: 0,
                converged: true,
            })
        }
        1 => {
            return Ok(AberthRoots {
                roots: vec![Complex64::new(-coeffs[0] / coeffs[1], 0.0)],
                iterations: 0,
                converged: true,
            })
        }
        _ => {}
    }

    let lead = coeffs[n];
    let centroid = -coeffs[n - 1] / (n as f64 * lead);
    let (p_centroid, _) = eval_complex(coeffs, Complex64::new(centroid, 0.0));
    let mut radius = (p_centroid.norm() / lead.abs()).powf(1.0 / n as f64);
    if !(radius.is_finite() && radius > 0.0) {
        radius = 1.0;
    }
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = std::f64::consts::TAU * k as f64 / n as f64 + 0.4;
            Complex64::new(centroid, 0.0) + Complex64::from_polar(radius, theta)
        })
        .collect();

    for iteration in 1..=ABERTH_MAX_ITER {
        let mut max_step = 0.0_f64;
        for i in 0..n {
            let (p, dp) = eval_complex(coeffs, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let newton = p / dp;
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = newton / (Complex64::new(1.0, 0.0) - newton * repulsion);
            if !step.is_finite() {
                continue;
            }
            z[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
        }
        if max_step <= ABERTH_TOL {
            return Ok(AberthRoots {
                roots: z,
                iterations: iteration,
                converged: true,
            });
        }
    }
    Ok(AberthRoots {
        roots: z,
        iterations: ABERTH_MAX_ITER,
        converged: false,
    })
}

/// Roots split into the real subset and the remaining complex ones, both
/// sorted by real part.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    pub real: Vec<f64>,
    pub complex: Vec<Complex64>,
}

impl RootSet {
    pub fn from_complex(roots: impl IntoIterator<Item = Complex64>) -> Self {
        let mut set = RootSet::default();
        for r in roots {
            if r.im.abs() <= REAL_ROOT_TOL * (1.0 + r.re.abs()) {
                set.real.push(r.re);
            } else {
                set.complex.push(r);
            }
        }
        set.real.sort_by(f64::total_cmp);
        set.complex
            .sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        set
    }

    pub fn len(&self) -> usize {
        self.real.len() + self.complex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_all_real(&self) -> bool {
        self.complex.is_empty()
    }

    /// Applies an affine change of variable to every root.
    pub fn map_affine(&self, scale: f64, offset: f64) -> RootSet {
        RootSet::from_complex(
            self.real
                .iter()
                .map(|&r| Complex64::new(r, 0.0))
                .chain(self.complex.iter().copied())
                .map(|r| r * scale + offset),
        )
    }

    /// Every root as a complex number, sorted by `(re, im)`.
    pub fn all(&self) -> Vec<Complex64> {
        let mut v: Vec<Complex64> = self
            .real
            .iter()
            .map(|&r| Complex64::new(r, 0.0))
            .chain(self.complex.iter().copied())
            .collect();
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }
}

/// Real and complex roots of a real polynomial.
pub fn roots(coeffs: &[f64]) -> Result<RootSet> {
    let found = aberth(coeffs)?;
    if !found.converged {
        // Roundoff can keep the step above tolerance for clustered roots;
        // accept the iterate when it is a root in the backward sense.
        let scale: f64 = coeffs.iter().map(|c| c.abs()).sum();
        let worst = found
            .roots
            .iter()
            .map(|&z| {
                let (p, _) = eval_complex(coeffs, z);
                let zn = z.norm().max(1.0);
                p.norm() / (scale * zn.powi(coeffs.len() as i32 - 1))
            })
            .fold(0.0_f64, f64::max);
        if !(worst < 1e-10) {
            return Err(QesError::NoConvergence {
                what: "Aberth root iteration",
                iterations: found.iterations,
            });
        }
    }
    Ok(RootSet::from_complex(found.roots))
}

/// Maximum of `|a − b| / max(1, |a|)` over two equally sized root sets
/// compared in sorted order; `None` if the sets differ in size or in their
/// real/complex split.
pub fn max_relative_deviation(a: &RootSet, b: &RootSet) -> Option<f64> {
    if a.real.len() != b.real.len() || a.complex.len() != b.complex.len() {
        return None;
    }
    let real = a
        .real
        .iter()
        .zip(&b.real)
        .map(|(x, y)| (x - y).abs() / x.abs().max(1.0));
    let complex = a
        .complex
        .iter()
        .zip(&b.complex)
        .map(|(x, y)| (x - y).norm() / x.norm().max(1.0));
    Some(real.chain(complex).fold(0.0, f64::max))
}
