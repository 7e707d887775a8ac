//! Closed-form candidate expressions for the EGCS normalization, mean photon
//! number, and generator variance, evaluated exactly as quoted.
//!
//! These expressions are **not** used by any simulation path: the quoted
//! normalization disagrees with the standard displaced-state overlap
//! `<0|D(a)|n> = e^{-|a|^2/2} (-a*)^n / sqrt(n!)` (sign, factorial power,
//! and exponent), so the simulator always normalizes numerically. The
//! `verify-formulas` command tabulates both sides and their deviation;
//! agreement is reported, never assumed.

use num_complex::Complex64;

use crate::error::Result;
use crate::fock::{number_operator_two_mode, TruncationDim};
use crate::metrology::{phase_generator, DimPolicy};
use crate::states::egcs_with_norm;

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// The quoted overlap-like term `alpha^n e^{-alpha^2/2} / n!`.
fn quoted_overlap(n: u32, alpha: f64) -> f64 {
    alpha.powi(n as i32) * (-alpha * alpha / 2.0).exp() / factorial(n)
}

/// Quoted normalization factor `1 / sqrt(2 (1 + alpha^n e^{-alpha^2/2}/n!))`.
pub fn egcs_normalization(n: u32, alpha: f64) -> f64 {
    1.0 / (2.0 * (1.0 + quoted_overlap(n, alpha))).sqrt()
}

/// Quoted mean photon number `(n + alpha^2) / sqrt(2 (1 + alpha^n e^{-alpha^2/2}/n!))`.
pub fn egcs_mean_photon(n: u32, alpha: f64) -> f64 {
    (n as f64 + alpha * alpha) * egcs_normalization(n, alpha)
}

/// Quoted generator variance
/// `(n^2 + alpha^4 + (4n + 1) alpha^2) / (4 (1 + alpha^n e^{-alpha^2/2}/n!))`.
pub fn egcs_variance(n: u32, alpha: f64) -> f64 {
    let a2 = alpha * alpha;
    let numerator = (n * n) as f64 + a2 * a2 + (4.0 * n as f64 + 1.0) * a2;
    numerator / (4.0 * (1.0 + quoted_overlap(n, alpha)))
}

/// One audited quantity: the closed form, the numerical truth, and their
/// deviation.
#[derive(Clone, Debug, PartialEq)]
pub struct AuditRow {
    pub n: u32,
    pub alpha: f64,
    pub quantity: &'static str,
    pub closed_form: f64,
    pub numerical: f64,
    pub abs_dev: f64,
    pub rel_dev: f64,
}

fn row(n: u32, alpha: f64, quantity: &'static str, closed_form: f64, numerical: f64) -> AuditRow {
    let abs_dev = (closed_form - numerical).abs();
    let rel_dev = if abs_dev == 0.0 {
        0.0
    } else {
        abs_dev / numerical.abs()
    };
    AuditRow {
        n,
        alpha,
        quantity,
        closed_form,
        numerical,
        abs_dev,
        rel_dev,
    }
}

/// Audit one `(n, alpha)` point: three rows comparing normalization factor,
/// mean photon number, and generator variance against brute numerics.
pub fn audit_point(n: u32, alpha: f64, policy: DimPolicy) -> Result<Vec<AuditRow>> {
    let dim: TruncationDim = policy.dim_for(n, alpha)?;
    let (state, raw_norm) = egcs_with_norm(n, Complex64::new(alpha, 0.0), dim)?;
    let num_norm = 1.0 / raw_norm;
    let num_n_bar = number_operator_two_mode(dim).expectation(&state)?.re;
    let num_var = phase_generator(dim).variance(&state)?;
    Ok(vec![
        row(n, alpha, "norm_factor", egcs_normalization(n, alpha), num_norm),
        row(n, alpha, "mean_photon", egcs_mean_photon(n, alpha), num_n_bar),
        row(n, alpha, "var_h", egcs_variance(n, alpha), num_var),
    ])
}

/// Audit a whole `(n, alpha)` grid, three rows per point.
pub fn audit_grid(ns: &[u32], alphas: &[f64], policy: DimPolicy) -> Result<Vec<AuditRow>> {
    let mut rows = Vec::with_capacity(ns.len() * alphas.len() * 3);
    for &n in ns {
        for &alpha in alphas {
            rows.extend(audit_point(n, alpha, policy)?);
        }
    }
    Ok(rows)
}
