//! Weighted least-squares fits of `Σ_{j=k..m} c_j p^j`.
//!
//! Weights are `1/σ²`. Columns are rescaled to unit norm before the SVD
//! solve, since `p^j` spans many decades; standard errors come from the
//! unscaled covariance `(AᵀWA)⁻¹`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::output::CsvRow;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitPoint {
    pub p: f64,
    pub value: f64,
    pub sigma: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FitTarget {
    Infidelity,
    Rejection,
}

impl FitTarget {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "infidelity" | "p_fail" => Some(FitTarget::Infidelity),
            "rejection" | "reject" => Some(FitTarget::Rejection),
            _ => None,
        }
    }

    pub fn default_degree(&self) -> usize {
        match self {
            FitTarget::Infidelity => 4,
            FitTarget::Rejection => 3,
        }
    }

    /// Lowest nonvanishing order: faults below it are detected or corrected.
    pub fn default_leading_degree(&self, mode: &str) -> usize {
        match (self, mode) {
            (FitTarget::Rejection, _) => 1,
            (FitTarget::Infidelity, "ps") => 3,
            (FitTarget::Infidelity, _) => 2,
        }
    }
}

/// Fit points from sweep rows with uniform noise.
///
/// Rejection errors are binomial over shots, `n_tot / 8` of them per row.
pub fn points_from_rows(rows: &[CsvRow], target: FitTarget) -> Result<Vec<FitPoint>, CliError> {
    rows.iter()
        .map(|r| {
            let p: f64 = r
                .p
                .parse()
                .map_err(|_| CliError::Fit(format!("row p = `{}` is not uniform noise", r.p)))?;
            Ok(match target {
                FitTarget::Infidelity => FitPoint {
                    p,
                    value: r.p_fail,
                    sigma: r.sigma_fail,
                },
                FitTarget::Rejection => {
                    let shots = (r.n_tot / 8).max(1) as f64;
                    let a = r.accept_rate;
                    FitPoint {
                        p,
                        value: 1.0 - a,
                        sigma: (a * (1.0 - a) / shots).sqrt(),
                    }
                }
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub leading_degree: usize,
    pub degree: usize,
    /// `c_k, ..., c_m`.
    pub coefficients: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub covariance: Vec<Vec<f64>>,
    /// `value − fit` per input point.
    pub residuals: Vec<f64>,
    pub chi2: f64,
    pub dof: usize,
    pub p_min: f64,
    pub p_max: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Prediction {
    pub value: f64,
    pub sigma: f64,
    /// True outside the fitted `p` range.
    pub extrapolated: bool,
}

impl FitResult {
    /// `c_j`, zero below the leading degree and above the degree.
    pub fn coefficient(&self, j: usize) -> f64 {
        if j < self.leading_degree || j > self.degree {
            0.0
        } else {
            self.coefficients[j - self.leading_degree]
        }
    }

    fn basis(&self, p: f64) -> Vec<f64> {
        (self.leading_degree..=self.degree).map(|j| p.powi(j as i32)).collect()
    }

    pub fn evaluate(&self, p: f64) -> Prediction {
        let b = self.basis(p);
        let value = b.iter().zip(&self.coefficients).map(|(x, c)| x * c).sum();
        let mut var = 0.0;
        for (i, bi) in b.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                var += bi * self.covariance[i][j] * bj;
            }
        }
        Prediction {
            value,
            sigma: var.max(0.0).sqrt(),
            extrapolated: p < self.p_min || p > self.p_max,
        }
    }
}

pub fn fit(points: &[FitPoint], leading_degree: usize, degree: usize) -> Result<FitResult, CliError> {
    if degree < leading_degree {
        return Err(CliError::Fit(format!(
            "degree {degree} is below the leading degree {leading_degree}"
        )));
    }
    let k = degree - leading_degree + 1;
    if points.len() < k {
        return Err(CliError::Fit(format!("{k} coefficients need at least {k} points, got {}", points.len())));
    }
    if let Some(pt) = points.iter().find(|pt| !(pt.sigma > 0.0) || !pt.sigma.is_finite()) {
        return Err(CliError::Fit(format!("nonpositive sigma at p = {}", pt.p)));
    }
    let n = points.len();
    let mut a = DMatrix::<f64>::zeros(n, k);
    let mut b = DVector::<f64>::zeros(n);
    for (i, pt) in points.iter().enumerate() {
        for j in 0..k {
            a[(i, j)] = pt.p.powi((leading_degree + j) as i32) / pt.sigma;
        }
        b[i] = pt.value / pt.sigma;
    }
    let scale: Vec<f64> = (0..k).map(|j| a.column(j).norm()).collect();
    if scale.contains(&0.0) {
        return Err(CliError::Fit("degenerate design: all p are zero".into()));
    }
    for (j, s) in scale.iter().enumerate() {
        a.column_mut(j).unscale_mut(*s);
    }
    let svd = a.svd(true, true);
    let tol = 1e-12 * svd.singular_values.max();
    if svd.singular_values.min() <= tol {
        return Err(CliError::Fit("design matrix is rank deficient".into()));
    }
    let x = svd.solve(&b, tol).map_err(|e| CliError::Fit(e.into()))?;
    let v = svd.v_t.as_ref().expect("computed").transpose();
    let mut covariance = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in 0..k {
            let c: f64 = (0..k)
                .map(|l| v[(i, l)] * v[(j, l)] / svd.singular_values[l].powi(2))
                .sum();
            covariance[i][j] = c / (scale[i] * scale[j]);
        }
    }
    let coefficients: Vec<f64> = (0..k).map(|j| x[j] / scale[j]).collect();
    let std_errors = (0..k).map(|j| covariance[j][j].sqrt()).collect();
    let mut result = FitResult {
        leading_degree,
        degree,
        coefficients,
        std_errors,
        covariance,
        residuals: Vec::new(),
        chi2: 0.0,
        dof: n - k,
        p_min: points.iter().map(|p| p.p).fold(f64::INFINITY, f64::min),
        p_max: points.iter().map(|p| p.p).fold(f64::NEG_INFINITY, f64::max),
    };
    for pt in points {
        let r = pt.value - result.evaluate(pt.p).value;
        result.residuals.push(r);
        result.chi2 += (r / pt.sigma).powi(2);
    }
    Ok(result)
}

/// Log-spaced `(p, value, σ, extrapolated)` samples of the fitted curve.
pub fn curve(fit: &FitResult, from: f64, to: f64, points: usize) -> Vec<(f64, Prediction)> {
    let (lo, hi) = (from.ln(), to.ln());
    (0..points)
        .map(|i| {
            let t = if points > 1 { i as f64 / (points - 1) as f64 } else { 0.0 };
            let p = (lo + t * (hi - lo)).exp();
            (p, fit.evaluate(p))
        })
        .collect()
}
