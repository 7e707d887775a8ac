//! Multi-mode states: complex amplitude tensors over labeled modes.

use ndarray::{ArrayD, IxDyn};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::state::StateVector;

/// Complex amplitude tensor over an ordered list of labeled modes.
///
/// Mode `k` has its own truncation dimension `dims()[k]`; the amplitude of
/// the basis ket `|i_0, i_1, ...>` sits at tensor index `[i_0, i_1, ...]`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiModeState {
    labels: Vec<String>,
    amps: ArrayD<Complex64>,
}

impl MultiModeState {
    pub fn from_amplitudes(labels: Vec<String>, amps: ArrayD<Complex64>) -> Result<Self> {
        if labels.len() != amps.ndim() {
            return Err(Error::ModeMismatch(format!(
                "{} labels for a rank-{} amplitude tensor",
                labels.len(),
                amps.ndim()
            )));
        }
        if amps.shape().iter().any(|&d| d == 0) {
            return Err(Error::DimensionMismatch { left: 0, right: 1 });
        }
        Ok(MultiModeState { labels, amps })
    }

    /// Tensor product of single-mode factors, in the given order.
    pub fn tensor(factors: &[(&str, &StateVector)]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::ModeMismatch("tensor of zero modes".into()));
        }
        let labels: Vec<String> = factors.iter().map(|(l, _)| l.to_string()).collect();
        let dims: Vec<usize> = factors.iter().map(|(_, s)| s.dim()).collect();
        let mut amps = ArrayD::zeros(IxDyn(&dims));
        for (idx, slot) in amps.indexed_iter_mut() {
            let mut v = Complex64::new(1.0, 0.0);
            for (k, (_, s)) in factors.iter().enumerate() {
                v *= s.amp(idx[k]);
            }
            *slot = v;
        }
        Ok(MultiModeState { labels, amps })
    }

    pub fn mode_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dims(&self) -> &[usize] {
        self.amps.shape()
    }

    pub fn amplitudes(&self) -> &ArrayD<Complex64> {
        &self.amps
    }

    pub fn amp(&self, idx: &[usize]) -> Complex64 {
        self.amps[IxDyn(idx)]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Unit-norm copy together with the norm of the original.
    pub fn normalize(&self) -> (Self, f64) {
        let norm = self.norm();
        MultiModeState {
            labels: self.labels.clone(),
            amps: self.amps.mapv(|z| z / norm),
        }
        .pipe_with(norm)
    }

    fn pipe_with(self, norm: f64) -> (Self, f64) {
        (self, norm)
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() <= super::state::NORMALIZED_TOL
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch {
                left: self.amps.len(),
                right: other.amps.len(),
            });
        }
        if self.labels != other.labels {
            return Err(Error::ModeMismatch(format!(
                "labels {:?} vs {:?}",
                self.labels, other.labels
            )));
        }
        Ok(())
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check_compatible(other)?;
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
        MultiModeState {
            labels: self.labels.clone(),
            amps: self.amps.mapv(|z| z * factor),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(MultiModeState {
            labels: self.labels.clone(),
            amps: &self.amps + &other.amps,
        })
    }

    /// Exchange the physical content (and truncation dims) of two mode
    /// slots; labels stay put.
    pub fn swap_modes(&self, a: usize, b: usize) -> Result<Self> {
        let k = self.mode_count();
        if a >= k || b >= k {
            return Err(Error::ModeMismatch(format!(
                "swap ({a}, {b}) on a {k}-mode state"
            )));
        }
        let mut perm: Vec<usize> = (0..k).collect();
        perm.swap(a, b);
        let amps = self
            .amps
            .view()
            .permuted_axes(IxDyn(&perm))
            .as_standard_layout()
            .to_owned();
        Ok(MultiModeState {
            labels: self.labels.clone(),
            amps,
        })
    }

    /// Rename modes without touching amplitudes.
    pub fn relabel(&self, labels: &[&str]) -> Result<Self> {
        if labels.len() != self.mode_count() {
            return Err(Error::ModeMismatch(format!(
                "{} labels for a {}-mode state",
                labels.len(),
                self.mode_count()
            )));
        }
        Ok(MultiModeState {
            labels: labels.iter().map(|l| l.to_string()).collect(),
            amps: self.amps.clone(),
        })
    }
}

/// Two-mode product state with the conventional labels "1", "2".
pub fn two_mode(a: &StateVector, b: &StateVector) -> Result<MultiModeState> {
    MultiModeState::tensor(&[("1", a), ("2", b)])
}
