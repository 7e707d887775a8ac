//! Probe-state families (NOON, ECS, EGCS) and phase evolution through the
//! unbalanced interferometer.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{
    displaced_number_state, fock_state, two_mode, MultiModeState, TruncationDim,
};

/// Which two-mode probe family a state belongs to.
///
/// EGCS with `n = 0` is the entangled coherent state; EGCS with `alpha = 0`
/// is the NOON state. Both identities are exercised in the tests.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum ProbeFamily {
    Noon { n: u32 },
    Ecs { alpha: Complex64 },
    Egcs { n: u32, alpha: Complex64 },
}

impl ProbeFamily {
    pub fn noon(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::ModeMismatch("NOON state needs n >= 1".into()));
        }
        Ok(ProbeFamily::Noon { n })
    }

    pub fn ecs(alpha: Complex64) -> Self {
        ProbeFamily::Ecs { alpha }
    }

    pub fn egcs(n: u32, alpha: Complex64) -> Self {
        ProbeFamily::Egcs { n, alpha }
    }

    pub fn n(&self) -> u32 {
        match *self {
            ProbeFamily::Noon { n } => n,
            ProbeFamily::Ecs { .. } => 0,
            ProbeFamily::Egcs { n, .. } => n,
        }
    }

    pub fn alpha(&self) -> Complex64 {
        match *self {
            ProbeFamily::Noon { .. } => Complex64::ZERO,
            ProbeFamily::Ecs { alpha } => alpha,
            ProbeFamily::Egcs { alpha, .. } => alpha,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ProbeFamily::Noon { .. } => "noon",
            ProbeFamily::Ecs { .. } => "ecs",
            ProbeFamily::Egcs { .. } => "egcs",
        }
    }

    /// Construct the normalized probe state at the given truncation.
    pub fn state(&self, dim: TruncationDim) -> Result<MultiModeState> {
        egcs(self.n(), self.alpha(), dim)
    }
}

/// Normalized `|0>|n,alpha> + |n,alpha>|0>` together with the norm of the
/// raw (unnormalized) sum. The normalization is always taken from the
/// constructed amplitudes, never from a closed-form expression.
pub fn egcs_with_norm(
    n: u32,
    alpha: Complex64,
    dim: TruncationDim,
) -> Result<(MultiModeState, f64)> {
    let vac = fock_state(0, dim)?;
    let disp = displaced_number_state(n, alpha, dim)?;
    let raw = two_mode(&vac, &disp)?.try_add(&two_mode(&disp, &vac)?)?;
    let (state, norm) = raw.normalize();
    Ok((state, norm))
}

/// Normalized entangled generalized coherent state.
pub fn egcs(n: u32, alpha: Complex64, dim: TruncationDim) -> Result<MultiModeState> {
    egcs_with_norm(n, alpha, dim).map(|(s, _)| s)
}

/// Entangled coherent state: `egcs(0, alpha)`.
pub fn ecs(alpha: Complex64, dim: TruncationDim) -> Result<MultiModeState> {
    egcs(0, alpha, dim)
}

/// NOON state: `egcs(n, 0)`.
pub fn noon(n: u32, dim: TruncationDim) -> Result<MultiModeState> {
    if n == 0 {
        return Err(Error::ModeMismatch("NOON state needs n >= 1".into()));
    }
    egcs(n, Complex64::ZERO, dim)
}

/// Phase encoding `exp(-i phi (a†a - b†b)/2)`: the amplitude of
/// `|n1, n2>` picks up `e^{-i phi (n1 - n2)/2}`. Mode 1 rotates by
/// `e^{-i phi/2}` per photon, mode 2 by `e^{+i phi/2}`.
pub fn apply_phase(psi: &MultiModeState, phi: f64) -> Result<MultiModeState> {
    if psi.mode_count() != 2 {
        return Err(Error::ModeMismatch(format!(
            "phase encoding acts on two-mode states, got {} modes",
            psi.mode_count()
        )));
    }
    let mut amps = psi.amplitudes().clone();
    let half = phi / 2.0;
    for (idx, slot) in amps.indexed_iter_mut() {
        let weight = idx[0] as f64 - idx[1] as f64;
        *slot *= Complex64::from_polar(1.0, -half * weight);
    }
    MultiModeState::from_amplitudes(psi.labels().to_vec(), amps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn adim(n: u32, a: f64) -> TruncationDim {
        TruncationDim::adequate_for(n, a)
    }

    #[test]
    fn degenerate_egcs_is_vacuum_with_norm_two() {
        // raw sum 2|0>|0>, numerical normalization factor 1/2
        let (state, norm) = egcs_with_norm(0, Complex64::ZERO, adim(0, 0.0)).unwrap();
        assert_abs_diff_eq!(norm, 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(state.amp(&[0, 0]).re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(state.norm(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn egcs_n1_alpha0_is_noon1() {
        let d = adim(1, 0.0);
        let s = egcs(1, Complex64::ZERO, d).unwrap();
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(s.amp(&[0, 1]).re, inv_sqrt2, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amp(&[1, 0]).re, inv_sqrt2, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amp(&[0, 0]).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn noon2_amplitudes() {
        let d = adim(2, 0.0);
        let s = noon(2, d).unwrap();
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(s.amp(&[2, 0]).re, inv_sqrt2, epsilon = 1e-15);
        assert_abs_diff_eq!(s.amp(&[0, 2]).re, inv_sqrt2, epsilon = 1e-15);
        assert!(noon(0, d).is_err());
    }

    #[test]
    fn ecs_zero_is_vacuum() {
        let d = adim(0, 0.0);
        let s = ecs(Complex64::ZERO, d).unwrap();
        assert_abs_diff_eq!(s.amp(&[0, 0]).re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn raw_norm_squared_of_egcs_1_1() {
        // |raw|^2 = 2 (1 + e^{-1}), frozen from direct amplitude summation
        let (_, norm) = egcs_with_norm(1, Complex64::new(1.0, 0.0), adim(1, 1.0)).unwrap();
        assert_abs_diff_eq!(norm * norm, 2.7357588823428847, epsilon = 1e-12);
    }

    #[test]
    fn family_identities() {
        let d = adim(0, 1.3);
        let a = ecs(Complex64::new(1.3, 0.0), d).unwrap();
        let b = egcs(0, Complex64::new(1.3, 0.0), d).unwrap();
        assert_abs_diff_eq!(a.fidelity(&b).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn phase_at_zero_is_identity() {
        let d = adim(1, 1.0);
        let s = egcs(1, Complex64::new(1.0, 0.0), d).unwrap();
        let t = apply_phase(&s, 0.0).unwrap();
        assert_abs_diff_eq!(s.fidelity(&t).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn phase_on_noon2_branches() {
        // amplitudes of |2,0> and |0,2> acquire e^{-i phi} and e^{+i phi}
        let d = adim(2, 0.0);
        let s = noon(2, d).unwrap();
        let phi = 0.37;
        let t = apply_phase(&s, phi).unwrap();
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        let want_20 = Complex64::from_polar(inv_sqrt2, -phi);
        let want_02 = Complex64::from_polar(inv_sqrt2, phi);
        assert!((t.amp(&[2, 0]) - want_20).norm() <= 1e-15);
        assert!((t.amp(&[0, 2]) - want_02).norm() <= 1e-15);
    }

    #[test]
    fn phase_is_additive() {
        let d = adim(1, 0.8);
        let s = egcs(1, Complex64::new(0.8, 0.0), d).unwrap();
        let a = apply_phase(&apply_phase(&s, 0.4).unwrap(), 0.9).unwrap();
        let b = apply_phase(&s, 1.3).unwrap();
        assert_abs_diff_eq!(a.fidelity(&b).unwrap(), 1.0, epsilon = 1e-12);
    }
}
