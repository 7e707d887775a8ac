//! Single-mode state vectors over the truncated Fock basis.

use ndarray::Array1;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::dim::TruncationDim;

pub(crate) const NORMALIZED_TOL: f64 = 1e-12;

/// Complex amplitude vector over `{|0>, ..., |dim-1>}`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amps: Array1<Complex64>,
}

impl StateVector {
    pub fn from_amplitudes(amps: Array1<Complex64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::DimensionMismatch { left: 0, right: 1 });
        }
        Ok(StateVector { amps })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &Array1<Complex64> {
        &self.amps
    }

    pub fn amp(&self, i: usize) -> Complex64 {
        self.amps[i]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Unit-norm copy together with the norm of the original.
    pub fn normalize(&self) -> (Self, f64) {
        let norm = self.norm();
        let amps = self.amps.mapv(|z| z / norm);
        (StateVector { amps }, norm)
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() <= NORMALIZED_TOL
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|<self|other>|^2` for normalized inputs.
    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        let (a, _) = self.normalize();
        let (b, _) = other.normalize();
        Ok(a.inner(&b)?.norm_sqr())
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        StateVector {
            amps: self.amps.mapv(|z| z * factor),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(StateVector {
            amps: &self.amps + &other.amps,
        })
    }
}

/// Number eigenstate `|n>`. Exact at any dim with `n < dim`.
pub fn fock_state(n: u32, dim: TruncationDim) -> Result<StateVector> {
    let d = dim.get();
    if (n as usize) >= d {
        return Err(Error::Adequacy {
            dim: d,
            n,
            alpha_mag: 0.0,
            required: n as usize + 1,
        });
    }
    let mut amps = Array1::zeros(d);
    amps[n as usize] = Complex64::new(1.0, 0.0);
    Ok(StateVector { amps })
}
