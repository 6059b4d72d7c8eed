//! Confluent Heun standard form
//!
//! ```text
//! H'' + (α + (1+β)/z + (1+γ*)/(z−1)) H' + (μ/z + ν/(z−1)) H = 0
//! ```
//!
//! and its polynomial (terminating) solutions. A degree-`N` polynomial needs
//! `μ + ν + Nα = 0` and the vanishing of the tridiagonal determinant
//! `Δ_{N+1}(μ)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bethe::{self, CheLocalForm};
use crate::error::{QesError, Result};
use crate::model::{AffineMap, ModelParams};
use crate::poly::{self, RootSet};

/// Interpolation conditioning above which the energies are taken from the
/// eigenvalues of the tridiagonal matrix instead.
pub const INTERPOLATION_CONDITION_LIMIT: f64 = 1e8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CheParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma_star: f64,
    pub delta: f64,
    pub eta_star: AffineMap,
    pub mu: AffineMap,
    pub nu: AffineMap,
    pub order: usize,
}

pub fn match_che(params: &ModelParams) -> Result<CheParams> {
    from_local_form(&bethe::che_local_coeffs(params)?, params.order)
}

/// Matching with the quadratic coupling replaced by `v1`.
pub fn match_che_with_coupling(params: &ModelParams, v1: f64) -> Result<CheParams> {
    from_local_form(&bethe::che_local_coeffs_with_coupling(params, v1)?, params.order)
}

fn from_local_form(form: &CheLocalForm, order: usize) -> Result<CheParams> {
    let alpha = form.drift_constant;
    let beta = form.pole0_drift - 1.0;
    let gamma_star = form.pole1_drift - 1.0;
    let mu = form.pole0_source;
    let nu = form.pole1_source;
    let sum = mu + nu;
    let delta = sum.intercept - 0.5 * alpha * (beta + gamma_star + 2.0);
    let eta_star = AffineMap::new(
        -mu.slope,
        -mu.intercept + 0.5 * alpha * (beta + 1.0) - 0.5 * (beta + gamma_star + beta * gamma_star),
    );
    Ok(CheParams {
        alpha,
        beta,
        gamma_star,
        delta,
        eta_star,
        mu,
        nu,
        order,
    })
}

/// Checks `μ(E) + ν(E) + Nα = 0` at ten pseudo-random energies.
pub fn termination_identity_check(che: &CheParams) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let n_alpha = che.order as f64 * che.alpha;
    (0..10).all(|_| {
        let e: f64 = rng.random_range(-100.0..100.0);
        let (mu, nu) = (che.mu.at(e), che.nu.at(e));
        let scale = mu.abs() + nu.abs() + n_alpha.abs() + 1.0;
        (mu + nu + n_alpha).abs() <= 1e-12 * scale
    })
}

impl CheParams {
    pub fn q(&self, n: usize) -> f64 {
        let n = n as f64;
        (n - 1.0) * (n + self.beta + self.gamma_star)
    }

    /// `Δ_{N+1}(μ) = det(μI − T)`: diagonal, super- and subdiagonal of `T`.
    fn termination_matrix(&self) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let size = self.order + 1;
        let diag = (1..=size)
            .map(|n| self.q(n) - (n - 1) as f64 * self.alpha)
            .collect();
        let upper = (1..size).map(|n| -(n as f64) * (n as f64 + self.beta)).collect();
        let lower = (1..size)
            .map(|n| -((self.order + 1 - n) as f64) * self.alpha)
            .collect();
        (diag, upper, lower)
    }

    /// Dense copy of the matrix whose determinant is `Δ_{N+1}(μ)`.
    pub fn termination_matrix_dense(&self, mu_value: f64) -> DMatrix<f64> {
        let (diag, upper, lower) = self.termination_matrix();
        let size = diag.len();
        DMatrix::from_fn(size, size, |i, j| {
            if i == j {
                mu_value - diag[i]
            } else if j == i + 1 {
                -upper[i]
            } else if i == j + 1 {
                -lower[j]
            } else {
                0.0
            }
        })
    }

    fn determinant_with_derivative(&self, mu_value: f64) -> (f64, f64) {
        let (diag, upper, lower) = self.termination_matrix();
        let (mut p_prev, mut p) = (1.0, mu_value - diag[0]);
        let (mut d_prev, mut d) = (0.0, 1.0);
        for n in 1..diag.len() {
            let a = mu_value - diag[n];
            let b = upper[n - 1] * lower[n - 1];
            let p_next = a * p - b * p_prev;
            let d_next = p + a * d - b * d_prev;
            (p_prev, p) = (p, p_next);
            (d_prev, d) = (d, d_next);
        }
        (p, d)
    }
}

pub fn delta_determinant(che: &CheParams, mu_value: f64) -> f64 {
    che.determinant_with_derivative(mu_value).0
}

/// Roots of `Δ_{N+1}(μ)` in the `μ` plane.
pub fn determinant_roots(che: &CheParams) -> Result<RootSet> {
    let (diag, upper, lower) = che.termination_matrix();
    let size = diag.len();
    if size == 1 {
        return Ok(RootSet { real: vec![diag[0]], complex: vec![] });
    }
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..size {
        let radius = if i > 0 { lower[i - 1].abs() } else { 0.0 }
            + if i + 1 < size { upper[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - radius);
        hi = hi.max(diag[i] + radius);
    }
    let centre = 0.5 * (lo + hi);
    let half = (0.5 * (hi - lo)).max(1.0);

    let interpolated = chebyshev_monomial(size + 1, |t| delta_determinant(che, centre + half * t));
    let found = match interpolated {
        Some(coeffs) => poly::roots(&coeffs).ok(),
        None => None,
    };
    let set = match found {
        Some(t_roots) if t_roots.len() == size => t_roots.map_affine(half, centre),
        _ => eigen_roots(che),
    };
    Ok(polish(che, set))
}

/// Monomial coefficients in `t ∈ [−1, 1]` of the degree-`(m−1)` interpolant of
/// `f` at `m` Chebyshev nodes, or `None` when the conversion is too
/// ill-conditioned.
fn chebyshev_monomial(m: usize, f: impl Fn(f64) -> f64) -> Option<Vec<f64>> {
    use std::f64::consts::PI;
    let mf = m as f64;
    let values: Vec<f64> = (0..m).map(|j| f((PI * (j as f64 + 0.5) / mf).cos())).collect();
    let cheb: Vec<f64> = (0..m)
        .map(|k| {
            let s: f64 = values
                .iter()
                .enumerate()
                .map(|(j, v)| v * (PI * k as f64 * (j as f64 + 0.5) / mf).cos())
                .sum();
            if k == 0 { s / mf } else { 2.0 * s / mf }
        })
        .collect();

    let mut monomial = vec![0.0; m];
    let mut weight = 0.0;
    let (mut t_prev, mut t_cur) = (vec![1.0], vec![0.0, 1.0]);
    for (k, &c) in cheb.iter().enumerate() {
        let basis = match k {
            0 => t_prev.clone(),
            1 => t_cur.clone(),
            _ => {
                let next = poly::axpy(&poly::mul(&[0.0, 2.0], &t_cur), -1.0, &t_prev);
                t_prev = std::mem::replace(&mut t_cur, next);
                t_cur.clone()
            }
        };
        weight += c.abs() * basis.iter().map(|b| b.abs()).sum::<f64>();
        for (slot, b) in monomial.iter_mut().zip(&basis) {
            *slot += c * b;
        }
    }
    let size: f64 = monomial.iter().map(|c| c.abs()).sum();
    (size > 0.0 && weight / size <= INTERPOLATION_CONDITION_LIMIT).then_some(monomial)
}

fn eigen_roots(che: &CheParams) -> RootSet {
    let t = -che.termination_matrix_dense(0.0);
    RootSet::from_complex(t.complex_eigenvalues().iter().copied())
}

fn polish(che: &CheParams, set: RootSet) -> RootSet {
    let real = set
        .real
        .iter()
        .map(|&root| {
            let mut x = root;
            for _ in 0..3 {
                let (p, dp) = che.determinant_with_derivative(x);
                if dp == 0.0 {
                    break;
                }
                let next = x - p / dp;
                if (next - x).abs() > 1e-6 * (1.0 + x.abs())
                    || delta_determinant(che, next).abs() >= p.abs()
                {
                    break;
                }
                x = next;
            }
            x
        })
        .collect::<Vec<_>>();
    RootSet::from_complex(
        real.into_iter()
            .map(|r| Complex64::new(r, 0.0))
            .chain(set.complex),
    )
}

/// QES energies from `Δ_{N+1}(μ(E)) = 0`; complex pairs land in
/// [`RootSet::complex`].
pub fn qes_energies_via_determinant(params: &ModelParams) -> Result<RootSet> {
    let che = match_che(params)?;
    if !termination_identity_check(&che) {
        return Err(QesError::Degenerate(format!("{params}: μ + ν + Nα does not vanish")));
    }
    let mu_roots = determinant_roots(&che)?;
    Ok(mu_roots.map_affine(1.0 / che.mu.slope, -che.mu.intercept / che.mu.slope))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesCoefficients {
    /// `v₀ = 1, v₁, …, v_N`.
    pub values: Vec<f64>,
    pub energy: f64,
    /// `A_{N+1}v_{N+1}`, which vanishes at a QES energy.
    pub termination_residual: f64,
}

impl SeriesCoefficients {
    /// `v_k / v_N`, comparable to a monic polynomial.
    pub fn monic(&self) -> Vec<f64> {
        let lead = *self.values.last().expect("v₀ is always present");
        self.values.iter().map(|v| v / lead).collect()
    }
}

impl CheParams {
    pub fn recurrence_a(&self, n: usize) -> f64 {
        1.0 + self.beta / n as f64
    }

    pub fn recurrence_b(&self, n: usize, energy: f64) -> f64 {
        let n = n as f64;
        let (b, g, a) = (self.beta, self.gamma_star, self.alpha);
        1.0 + (b + g - a - 1.0) / n
            - ((b + g - a) - 2.0 * self.eta_star.at(energy) - b * (g - a)) / (2.0 * n * n)
    }

    pub fn recurrence_c(&self, n: usize) -> f64 {
        let n = n as f64;
        let a = self.alpha;
        (a * 0.5 * (self.beta + self.gamma_star) + self.delta + a * (n - 1.0)) / (n * n)
    }
}

/// Power-series coefficients `v_k` of the Heun solution at `energy`.
pub fn series_coefficients(che: &CheParams, energy: f64) -> Result<SeriesCoefficients> {
    let mut values = vec![1.0];
    let mut termination_residual = 0.0;
    for n in 1..=che.order + 1 {
        let prev = values[n - 1];
        let prev2 = if n >= 2 { values[n - 2] } else { 0.0 };
        let rhs = che.recurrence_b(n, energy) * prev + che.recurrence_c(n) * prev2;
        if n == che.order + 1 {
            termination_residual = rhs;
            break;
        }
        let a = che.recurrence_a(n);
        if a.abs() < 1e-14 {
            return Err(QesError::Degenerate(format!(
                "series recurrence breaks down: A_{n} = 0 at β = {}",
                che.beta
            )));
        }
        values.push(rhs / a);
    }
    Ok(SeriesCoefficients {
        values,
        energy,
        termination_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{anti_isospectral_map, Family, Geometry};
    use approx::assert_relative_eq;

    fn hyp(family: Family, g: f64, e: f64, order: usize) -> ModelParams {
        ModelParams::hyperbolic(family, g, e, order).unwrap()
    }

    #[test]
    fn standard_form_constants() {
        let che = match_che(&hyp(Family::Tf1, 2.0, 2.0, 3)).unwrap();
        assert_eq!((che.alpha, che.beta, che.gamma_star), (-4.0, 1.5, -0.5));
        assert_relative_eq!(che.delta, 2.0 * (6.0 + 2.0 + 1.0), max_relative = 1e-14);
        assert_relative_eq!(che.eta_star.slope, 0.25);
        assert_relative_eq!(che.eta_star.intercept, 3.0 / 8.0, epsilon = 1e-14);

        let trig = ModelParams::trigonometric(Family::Tf1, 2.0, 2.0, 1).unwrap();
        let che = match_che(&trig).unwrap();
        assert_eq!(che.mu.slope, 0.25);
        assert_relative_eq!(che.eta_star.slope, -0.25);
        assert_relative_eq!(che.eta_star.intercept, 3.0 / 8.0, epsilon = 1e-14);
    }

    #[test]
    fn delta_closed_forms_across_sweep() {
        for &g in &[0.5, 1.0, 2.0, 4.0] {
            for &e in &[0.5, 1.0, 1.5, 2.0, 3.0] {
                for order in 0..5 {
                    let n = order as f64;
                    for (family, want) in [
                        (Family::Tf1, g * (2.0 * n + e + 1.0)),
                        (Family::Tf2, g * (2.0 * n + e + 2.0)),
                        (Family::Tf3, g * (2.0 * n + 2.0 - e)),
                        (Family::Tf4, g * (2.0 * n + 3.0 - e)),
                    ] {
                        let che = match_che(&hyp(family, g, e, order)).unwrap();
                        assert!((che.delta - want).abs() <= 1e-12 * want.abs().max(1.0));
                        let energy = 3.7;
                        let mu = che.mu.at(energy);
                        let split = che.delta - (mu + che.nu.at(energy)
                            - 0.5 * che.alpha * (che.beta + che.gamma_star + 2.0));
                        assert!(split.abs() < 1e-12 * (1.0 + mu.abs()));
                        assert!(termination_identity_check(&che));
                    }
                }
            }
        }
    }

    #[test]
    fn perturbed_coupling_breaks_termination() {
        let p = hyp(Family::Tf1, 2.0, 2.0, 2);
        assert!(termination_identity_check(&match_che(&p).unwrap()));
        let broken = match_che_with_coupling(&p, p.coupling_v1() + 1.0).unwrap();
        assert!(!termination_identity_check(&broken));
        let t = anti_isospectral_map(&hyp(Family::Tf2, 2.0, 2.0, 1)).unwrap();
        assert!(termination_identity_check(&match_che(&t).unwrap()));
    }

    #[test]
    fn low_order_determinants() {
        for &(g, e) in &[(2.0, 2.0), (0.5, 3.0), (4.0, 1.0)] {
            let che = match_che(&hyp(Family::Tf1, g, e, 0)).unwrap();
            assert_eq!(che.q(1), 0.0);
            assert_eq!(delta_determinant(&che, 1.75), 1.75);

            let che = match_che(&hyp(Family::Tf1, g, e, 1)).unwrap();
            for &mu in &[-3.0, 0.0, 0.5, 7.0] {
                let want = mu * mu - (e + 1.0 + 2.0 * g) * mu + 2.0 * g * (e + 0.5);
                assert_relative_eq!(delta_determinant(&che, mu), want, max_relative = 1e-13);
            }

            let che = match_che(&hyp(Family::Tf1, g, e, 2)).unwrap();
            let want = -4.0 * g * (2.0 * e + 1.0) * (2.0 * g + e + 2.0);
            assert_relative_eq!(delta_determinant(&che, 0.0), want, max_relative = 1e-13);
        }
    }

    #[test]
    fn recurrence_determinant_matches_dense() {
        for family in Family::ALL {
            for order in 0..=6 {
                let che = match_che(&hyp(family, 1.3, 0.7, order)).unwrap();
                for &mu in &[-5.0, -0.3, 2.2, 11.0] {
                    let dense = che.termination_matrix_dense(mu).determinant();
                    let fast = delta_determinant(&che, mu);
                    assert!((dense - fast).abs() <= 1e-10 * dense.abs().max(1.0), "{family} N={order}");
                }
            }
        }
    }

    #[test]
    fn energies_at_reference_point() {
        let e = qes_energies_via_determinant(&hyp(Family::Tf1, 2.0, 2.0, 0)).unwrap();
        assert_relative_eq!(e.real[0], -22.0, max_relative = 1e-14);

        let e = qes_energies_via_determinant(&hyp(Family::Tf2, 2.0, 2.0, 1)).unwrap();
        let root = 2.0 * 24.0_f64.sqrt();
        assert_relative_eq!(e.real[0], -43.0 - root, max_relative = 1e-12);
        assert_relative_eq!(e.real[1], -43.0 + root, max_relative = 1e-12);
        assert!((e.real[0] + 52.798).abs() < 1e-3 && (e.real[1] + 33.202).abs() < 1e-3);

        let t = ModelParams::trigonometric(Family::Tf1, 2.0, 2.0, 2).unwrap();
        let e = qes_energies_via_determinant(&t).unwrap();
        for (got, want) in e.real.iter().zip([35.875, 54.000, 68.124]) {
            assert!((got - want).abs() < 1e-3, "{got} vs {want}");
        }
    }

    #[test]
    fn eigen_fallback_agrees_with_interpolation() {
        for family in Family::ALL {
            let che = match_che(&hyp(family, 1.0, 2.5, 5)).unwrap();
            let a = determinant_roots(&che).unwrap();
            let b = polish(&che, eigen_roots(&che));
            assert!(poly::max_relative_deviation(&a, &b).unwrap() < 1e-10);
        }
    }

    #[test]
    fn series_recurrence_pinned_values() {
        // γ = η = 2, N = 2, at E = −54 where μ = 8.
        let che = match_che(&hyp(Family::Tf1, 2.0, 2.0, 2)).unwrap();
        let energy = -54.0;
        assert_relative_eq!(che.mu.at(energy), 8.0);
        assert_relative_eq!(che.recurrence_b(1, energy), -8.0, max_relative = 1e-14);
        assert_relative_eq!(che.recurrence_b(2, energy), -0.25, max_relative = 1e-13);
        let s = series_coefficients(&che, energy).unwrap();
        assert_relative_eq!(s.values[1], -3.2, max_relative = 1e-14);
        assert!(s.termination_residual.abs() < 1e-10);
    }

    #[test]
    fn recurrence_agrees_with_expanded_bracket() {
        // B_n = [(n−1)(n+β+γ*) − (n−1)α − μ]/n², C_n = (α(n−2) + μ + ν)/n².
        for family in Family::ALL {
            let che = match_che(&hyp(family, 1.7, 0.4, 3)).unwrap();
            for n in 1..6 {
                let nf = n as f64;
                for &energy in &[-20.0, 1.5, 9.0] {
                    let b = ((nf - 1.0) * (nf + che.beta + che.gamma_star)
                        - (nf - 1.0) * che.alpha
                        - che.mu.at(energy))
                        / (nf * nf);
                    let c = (che.alpha * (nf - 2.0) + che.mu.at(energy) + che.nu.at(energy)) / (nf * nf);
                    assert!((che.recurrence_b(n, energy) - b).abs() < 1e-12 * (1.0 + b.abs()));
                    assert!((che.recurrence_c(n) - c).abs() < 1e-12 * (1.0 + c.abs()));
                }
            }
        }
    }

    #[test]
    fn first_and_second_coefficients() {
        let (g, e) = (2.0, 2.0);
        let p = hyp(Family::Tf1, g, e, 1);
        let che = match_che(&p).unwrap();
        let s = series_coefficients(&che, -42.0).unwrap();
        assert_relative_eq!(s.values[1], -2.0, max_relative = 1e-14);
        assert_relative_eq!(-1.0 / s.values[1], 0.5);

        let p = hyp(Family::Tf1, g, e, 2);
        let che = match_che(&p).unwrap();
        for energy in qes_energies_via_determinant(&p).unwrap().real {
            let s = series_coefficients(&che, energy).unwrap();
            let v1 = s.values[1];
            let v2 = 4.0 * g / (2.0 * e + 3.0)
                + (energy + 4.0 * g * e + 10.0 * g + 5.0 * e + 4.0) / (4.0 * (2.0 * e + 3.0)) * v1;
            assert_relative_eq!(s.values[2], v2, max_relative = 1e-12);
            assert!(s.termination_residual.abs() < 1e-8 * s.values.iter().fold(0.0_f64, |m, v| m.max(v.abs())));
        }

        let t = ModelParams::trigonometric(Family::Tf2, g, e, 1).unwrap();
        let che = match_che(&t).unwrap();
        for energy in qes_energies_via_determinant(&t).unwrap().real {
            let s = series_coefficients(&che, energy).unwrap();
            let want = (-energy + 2.0 * g + 3.0 * e + 4.0 * g * e + 1.0) / (2.0 * (2.0 * e + 1.0));
            assert_relative_eq!(s.values[1], want, max_relative = 1e-12);
        }
    }

    #[test]
    fn series_matches_direct_polynomial() {
        for geometry in [Geometry::Hyperbolic, Geometry::Trigonometric] {
            for family in Family::ALL {
                if geometry == Geometry::Trigonometric && !family.has_trigonometric_form() {
                    continue;
                }
                for order in 0..5 {
                    let p = ModelParams::new(geometry, family, 1.0, 2.3, order).unwrap();
                    let che = match_che(&p).unwrap();
                    for level in bethe::solve_polynomial_system(&p).unwrap().levels {
                        let monic = series_coefficients(&che, level.energy).unwrap().monic();
                        for (a, b) in monic.iter().zip(&level.monic_coeffs) {
                            assert!((a - b).abs() < 1e-8 * b.abs().max(1.0), "{p}: {a} vs {b}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn vanishing_leading_factor_is_degenerate() {
        // β = ½ − η = −1 makes A₁ = 0.
        let che = match_che(&hyp(Family::Tf3, 2.0, 1.5, 2)).unwrap();
        assert!(matches!(series_coefficients(&che, 0.0), Err(QesError::Degenerate(_))));
        assert_eq!(qes_energies_via_determinant(&hyp(Family::Tf3, 2.0, 1.5, 2)).unwrap().len(), 3);
    }
}
