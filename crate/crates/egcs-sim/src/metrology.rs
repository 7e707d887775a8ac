//! Phase-sensitivity bounds, parameter sweeps, and power-law exponent fits.

use std::fmt;
use std::str::FromStr;

use ndarray::Array1;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fock::{
    number_operator_two_mode, ModeFactor, MultiModeState, TensorOperator, TensorTerm,
    TruncationDim,
};
use crate::states::egcs;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Generator of the phase evolution, `H = (a†a ⊗ I - I ⊗ b†b) / 2`.
pub fn phase_generator(dim: TruncationDim) -> TensorOperator {
    let diag = Array1::from_iter((0..dim.get()).map(|m| c(m as f64)));
    TensorOperator::new(vec![
        TensorTerm {
            coeff: c(0.5),
            factors: vec![(0, ModeFactor::Diagonal(diag.clone()))],
        },
        TensorTerm {
            coeff: c(-0.5),
            factors: vec![(1, ModeFactor::Diagonal(diag))],
        },
    ])
}

/// Quantum Fisher information of a pure two-mode probe evolved for time `t`:
/// `4 t^2 <Δ^2 H>`.
pub fn qfi(psi: &MultiModeState, t: f64) -> Result<f64> {
    let norm = psi.norm();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::NotNormalized { norm });
    }
    let dim = TruncationDim::new(psi.dims()[0])?;
    let var = phase_generator(dim).variance(psi)?;
    Ok(4.0 * t * t * var)
}

/// Cramer-Rao limit on the phase uncertainty for `mu` independent shots at
/// unit evolution time: `1 / sqrt(mu * QFI)`.
pub fn min_phase_uncertainty(psi: &MultiModeState, mu: u32) -> Result<f64> {
    let f = qfi(psi, 1.0)?;
    if f <= 0.0 {
        return Err(Error::ZeroInformation);
    }
    Ok(1.0 / (mu as f64 * f).sqrt())
}

/// Probe family tag carried by sweep records and data files.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FamilyTag {
    Noon,
    Ecs,
    Egcs,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyTag::Noon => "noon",
            FamilyTag::Ecs => "ecs",
            FamilyTag::Egcs => "egcs",
        })
    }
}

impl FromStr for FamilyTag {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "noon" => Ok(FamilyTag::Noon),
            "ecs" => Ok(FamilyTag::Ecs),
            "egcs" => Ok(FamilyTag::Egcs),
            other => Err(format!("unknown family {other:?}")),
        }
    }
}

/// One numerically evaluated sweep point.
///
/// `delta_phi` is `1 / (2 sqrt(var_h))` by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRecord {
    pub family: FamilyTag,
    pub n: u32,
    pub alpha: f64,
    pub n_bar: f64,
    pub var_h: f64,
    pub delta_phi: f64,
    pub dim: usize,
}

/// How sweep points choose their truncation dimension.
#[derive(Copy, Clone, Debug)]
pub enum DimPolicy {
    /// Per-point minimum from the adequacy rule.
    Adequate,
    /// Fixed dimension; rejected if inadequate for a requested point.
    Fixed(usize),
}

impl DimPolicy {
    pub fn dim_for(self, n: u32, alpha_mag: f64) -> Result<TruncationDim> {
        match self {
            DimPolicy::Adequate => Ok(TruncationDim::adequate_for(n, alpha_mag)),
            DimPolicy::Fixed(d) => {
                let dim = TruncationDim::new(d)?;
                dim.check_adequate(n, alpha_mag)?;
                Ok(dim)
            }
        }
    }
}

/// The sweep grid over `|alpha|`: `points` values uniform in
/// `(0.05, alpha_max]`. The lower edge stays clear of the NOON-point
/// discontinuity of the `n >= 1` families at `alpha = 0`.
pub fn alpha_grid(alpha_max: f64, points: usize) -> Vec<f64> {
    const LO: f64 = 0.05;
    let step = (alpha_max - LO) / points as f64;
    (1..=points).map(|k| LO + k as f64 * step).collect()
}

fn evaluate_point(family: FamilyTag, n: u32, alpha: f64, dim: TruncationDim) -> Result<SweepRecord> {
    let state = egcs(n, c(alpha), dim)?;
    let n_bar = number_operator_two_mode(dim).expectation(&state)?;
    assert!(n_bar.im.abs() <= 1e-10, "mean photon number residue");
    let var_h = phase_generator(dim).variance(&state)?;
    let delta_phi = min_phase_uncertainty(&state, 1)?;
    Ok(SweepRecord {
        family,
        n,
        alpha,
        n_bar: n_bar.re,
        var_h,
        delta_phi,
        dim: dim.get(),
    })
}

/// Sweep a displaced family (ECS for `n = 0`, EGCS otherwise) over an
/// `|alpha|` grid. Points are independent and evaluated in parallel; the
/// output order follows the grid.
pub fn sweep_alpha(n: u32, alphas: &[f64], policy: DimPolicy) -> Result<Vec<SweepRecord>> {
    let family = if n == 0 { FamilyTag::Ecs } else { FamilyTag::Egcs };
    alphas
        .par_iter()
        .map(|&alpha| evaluate_point(family, n, alpha, policy.dim_for(n, alpha)?))
        .collect()
}

/// Sweep NOON states over a grid of photon numbers.
pub fn sweep_noon(ns: &[u32], policy: DimPolicy) -> Result<Vec<SweepRecord>> {
    ns.par_iter()
        .map(|&n| {
            if n == 0 {
                return Err(Error::ZeroInformation);
            }
            evaluate_point(FamilyTag::Noon, n, 0.0, policy.dim_for(n, 0.0)?)
        })
        .collect()
}

/// Result of fitting `delta_phi = c / n_bar^x` in log-log space.
#[derive(Clone, Debug, PartialEq)]
pub struct FitResult {
    pub exponent: f64,
    pub prefactor: f64,
    /// Residual sum of squares in log space.
    pub rss: f64,
    pub n: u32,
    pub alpha_max: f64,
}

/// Ordinary least squares of `ln(delta_phi)` against `ln(n_bar)` over the
/// given records. Slope `-x`, intercept `ln c`.
pub fn fit_exponent(records: &[SweepRecord]) -> Result<FitResult> {
    let pts: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| r.n_bar > 0.0 && r.delta_phi > 0.0)
        .map(|r| (r.n_bar.ln(), r.delta_phi.ln()))
        .collect();
    if pts.len() < 3 {
        return Err(Error::DegenerateFit("need at least 3 records with n_bar > 0"));
    }
    let mut distinct: Vec<f64> = pts.iter().map(|p| p.0).collect();
    distinct.sort_by(f64::total_cmp);
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(Error::DegenerateFit("need at least 3 distinct n_bar values"));
    }

    let m = pts.len() as f64;
    let x_mean = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let y_mean = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - x_mean).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - x_mean) * (p.1 - y_mean)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit("all n_bar equal"));
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let rss: f64 = pts
        .iter()
        .map(|p| (p.1 - (intercept + slope * p.0)).powi(2))
        .sum();

    let n = records.first().map(|r| r.n).unwrap_or(0);
    let alpha_max = records.iter().map(|r| r.alpha).fold(0.0, f64::max);
    Ok(FitResult {
        exponent: -slope,
        prefactor: intercept.exp(),
        rss,
        n,
        alpha_max,
    })
}

/// Records with `n_bar` below the family onset plus this margin are left out
/// of scaling fits: the power-law ansatz describes the scaling regime, not
/// the onset shoulder where `n_bar` pinches at its minimum.
pub const ONSET_EXCLUSION: f64 = 0.3;

/// Fig.-3-style scaling fit for one family: sweep `points` grid values of
/// `|alpha|` up to `alpha_max`, drop the onset shoulder
/// (`n_bar < n + ONSET_EXCLUSION`), fit the exponent.
pub fn scaling_fit(n: u32, alpha_max: f64, points: usize, policy: DimPolicy) -> Result<FitResult> {
    let records = sweep_alpha(n, &alpha_grid(alpha_max, points), policy)?;
    let kept: Vec<SweepRecord> = records
        .into_iter()
        .filter(|r| r.n_bar >= n as f64 + ONSET_EXCLUSION)
        .collect();
    let mut fit = fit_exponent(&kept)?;
    fit.alpha_max = alpha_max;
    Ok(fit)
}

/// Piecewise-linear interpolation of `delta_phi` at a common `n_bar`.
/// Returns `None` outside the swept range. Both quantities are smooth
/// monotone functions of `|alpha|` on the sweep ranges used here.
pub fn interp_delta_phi(records: &[SweepRecord], n_bar: f64) -> Option<f64> {
    let mut pts: Vec<(f64, f64)> = records.iter().map(|r| (r.n_bar, r.delta_phi)).collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    if pts.is_empty() || n_bar < pts[0].0 || n_bar > pts[pts.len() - 1].0 {
        return None;
    }
    for w in pts.windows(2) {
        let (x0, y0) = w[0];
        let (x1, y1) = w[1];
        if n_bar <= x1 {
            if x1 == x0 {
                return Some(y0);
            }
            let t = (n_bar - x0) / (x1 - x0);
            return Some(y0 + t * (y1 - y0));
        }
    }
    Some(pts[pts.len() - 1].1)
}

/// Shot-noise reference `1 / sqrt(n_bar)`.
pub fn shot_noise(n_bar: f64) -> f64 {
    1.0 / n_bar.sqrt()
}
