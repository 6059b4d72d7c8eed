//! Symmetric tridiagonal eigenvalues by Sturm counting and bisection.

use crate::error::{QesError, Result};

pub const BISECTION_MAX_ITER: usize = 200;
pub const BISECTION_REL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    /// `off[i]` couples rows `i` and `i + 1`.
    pub off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(QesError::Numeric(format!(
                "tridiagonal shape mismatch: {} diagonal, {} off-diagonal entries",
                diag.len(),
                off.len()
            )));
        }
        Ok(Self { diag, off })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Interval containing every eigenvalue.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `lambda` (negative pivots of
    /// `T − λI = LDLᵀ`).
    pub fn count_below(&self, lambda: f64) -> usize {
        let mut count = 0;
        let mut d = 1.0;
        for i in 0..self.len() {
            let coupling = if i > 0 { self.off[i - 1] * self.off[i - 1] / d } else { 0.0 };
            d = self.diag[i] - lambda - coupling;
            if d == 0.0 {
                d = -f64::EPSILON * (self.diag[i].abs() + lambda.abs() + 1.0);
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// `(T − λI)v` component-wise.
    pub fn apply_shifted(&self, lambda: f64, v: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut y = (self.diag[i] - lambda) * v[i];
                if i > 0 {
                    y += self.off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    y += self.off[i] * v[i + 1];
                }
                y
            })
            .collect()
    }

    /// Eigenvector for an (accurately known) eigenvalue by inverse iteration.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.len();
        let sub = self.off.clone();
        let sup = self.off.clone();
        let diag: Vec<f64> = self.diag.iter().map(|d| d - lambda).collect();
        inverse_iteration(&sub, &diag, &sup, n)
    }

    /// `‖(T − λI)v‖ / ‖v‖`.
    pub fn residual(&self, lambda: f64, v: &[f64]) -> f64 {
        let r = self.apply_shifted(lambda, v);
        norm(&r) / norm(v)
    }
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Two sweeps of inverse iteration on a general tridiagonal matrix
/// (`sub[i]` at `(i+1, i)`, `sup[i]` at `(i, i+1)`), assumed nearly singular.
pub(crate) fn inverse_iteration(sub: &[f64], diag: &[f64], sup: &[f64], n: usize) -> Vec<f64> {
    let lu = TridiagonalLu::factor(sub, diag, sup);
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i * 7919) % 13) as f64 / 13.0).collect();
    for _ in 0..3 {
        v = lu.solve(&v);
        let scale = norm(&v);
        if scale == 0.0 || !scale.is_finite() {
            break;
        }
        v.iter_mut().for_each(|x| *x /= scale);
    }
    v
}

/// Gaussian elimination with partial pivoting for tridiagonal systems.
pub(crate) struct TridiagonalLu {
    /// Upper factor with up to two superdiagonals.
    u0: Vec<f64>,
    u1: Vec<f64>,
    u2: Vec<f64>,
    multipliers: Vec<f64>,
    swapped: Vec<bool>,
}

impl TridiagonalLu {
    pub(crate) fn factor(sub: &[f64], diag: &[f64], sup: &[f64]) -> Self {
        let n = diag.len();
        let tiny = f64::EPSILON * diag.iter().fold(1.0_f64, |m, d| m.max(d.abs()));
        let mut u0 = diag.to_vec();
        let mut u1: Vec<f64> = (0..n).map(|i| if i + 1 < n { sup[i] } else { 0.0 }).collect();
        let mut u2 = vec![0.0; n];
        let mut multipliers = vec![0.0; n.saturating_sub(1)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            let below = sub[i];
            let mut next_diag = u0[i + 1];
            let mut next_sup = if i + 2 < n { u1[i + 1] } else { 0.0 };
            if below.abs() > u0[i].abs() {
                // Swap rows i and i + 1.
                swapped[i] = true;
                let (r0, r1, r2) = (u0[i], u1[i], u2[i]);
                u0[i] = below;
                u1[i] = next_diag;
                u2[i] = next_sup;
                next_diag = r1;
                next_sup = r2;
                let m = r0 / below;
                multipliers[i] = m;
                u0[i + 1] = next_diag - m * u1[i];
                if i + 2 < n {
                    u1[i + 1] = next_sup - m * u2[i];
                }
            } else {
                if u0[i] == 0.0 {
                    u0[i] = tiny;
                }
                let m = below / u0[i];
                multipliers[i] = m;
                u0[i + 1] = next_diag - m * u1[i];
                if i + 2 < n {
                    u1[i + 1] = next_sup - m * u2[i];
                }
            }
        }
        for d in u0.iter_mut() {
            if *d == 0.0 {
                *d = tiny;
            }
        }
        Self { u0, u1, u2, multipliers, swapped }
    }

    pub(crate) fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.u0.len();
        let mut y = rhs.to_vec();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                y.swap(i, i + 1);
            }
            y[i + 1] -= self.multipliers[i] * y[i];
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut s = y[i];
            if i + 1 < n {
                s -= self.u1[i] * x[i + 1];
            }
            if i + 2 < n {
                s -= self.u2[i] * x[i + 2];
            }
            x[i] = s / self.u0[i];
        }
        x
    }
}

/// The `k`-th (0-based) eigenvalue of a monotone counting function, bracketed
/// by `count(lo) ≤ k < count(hi)`.
pub(crate) fn bisect_kth(count: impl Fn(f64) -> usize, k: usize, mut lo: f64, mut hi: f64) -> Result<f64> {
    for _ in 0..BISECTION_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= BISECTION_REL_TOL * mid.abs().max(1.0) || mid == lo || mid == hi {
            return Ok(mid);
        }
        if count(mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(QesError::NoConvergence {
        what: "Sturm bisection",
        iterations: BISECTION_MAX_ITER,
    })
}

/// The `m` smallest eigenvalues, ascending.
pub fn eigen_lowest(t: &SymTridiagonal, m: usize) -> Result<Vec<f64>> {
    if m > t.len() {
        return Err(QesError::Numeric(format!(
            "requested {m} eigenvalues of a {}-dimensional operator",
            t.len()
        )));
    }
    let (lo, hi) = t.gershgorin();
    let pad = 1e-12 * (lo.abs() + hi.abs() + 1.0);
    (0..m)
        .map(|k| bisect_kth(|x| t.count_below(x), k, lo - pad, hi + pad))
        .collect()
}
