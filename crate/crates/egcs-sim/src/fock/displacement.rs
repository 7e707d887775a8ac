//! Displacement operators and displaced number states.
//!
//! The production route evaluates the closed-form matrix elements
//!
//! ```text
//! <m| D(alpha) |n> = e^{-|a|^2/2} sqrt(p!/q!) base^{q-p} L_p^{(q-p)}(|a|^2),
//! p = min(m,n), q = max(m,n), base = alpha (m >= n) or -conj(alpha) (m < n)
//! ```
//!
//! with the prefactor carried in log space so that large displacements never
//! underflow, and the associated Laguerre value grown by the three-term
//! degree recurrence with overflow rescaling. An independent construction by
//! matrix exponential of the truncated generator is kept as a cross-check.

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::error::Result;
use crate::fock::dim::TruncationDim;
use crate::fock::operator::OperatorMatrix;
use crate::fock::state::{fock_state, StateVector};
use crate::linalg::expm;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Associated Laguerre `L_p^{(k)}(x)` as `(mantissa, ln_scale)` with the true
/// value `mantissa * exp(ln_scale)`. The degree recurrence rescales whenever
/// the running values leave `[1e-240, 1e240]`.
fn laguerre_scaled(p: usize, k: usize, x: f64) -> (f64, f64) {
    let kf = k as f64;
    if p == 0 {
        return (1.0, 0.0);
    }
    let mut prev = 1.0f64;
    let mut cur = 1.0 + kf - x;
    let mut ln_scale = 0.0f64;
    for j in 1..p {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + kf - x) * cur - (jf + kf) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
        let mag = cur.abs().max(prev.abs());
        if mag > 1e240 || (mag > 0.0 && mag < 1e-240) {
            let shift = mag.ln();
            let factor = (-shift).exp();
            prev *= factor;
            cur *= factor;
            ln_scale += shift;
        }
    }
    (cur, ln_scale)
}

/// `<m| D(alpha) |n>` for a single pair of indices.
pub fn displacement_element(m: usize, n: usize, alpha: Complex64) -> Complex64 {
    let x = alpha.norm_sqr();
    if x == 0.0 {
        return if m == n { c(1.0) } else { Complex64::ZERO };
    }
    let (p, q, base) = if m >= n {
        (n, m, alpha)
    } else {
        (m, n, -alpha.conj())
    };
    let k = q - p;
    let mut ln_pref = -0.5 * x + (k as f64) * alpha.norm().ln();
    for j in (p + 1)..=q {
        ln_pref -= 0.5 * (j as f64).ln();
    }
    let phase = if k == 0 {
        c(1.0)
    } else {
        (base / base.norm()).powi(k as i32)
    };
    let (mant, ln_scale) = laguerre_scaled(p, k, x);
    phase * c(mant * (ln_pref + ln_scale).exp())
}

/// Displacement operator `D(alpha) = exp(alpha a† - alpha* a)` from the
/// closed-form matrix elements. Production path.
pub fn displacement(alpha: Complex64, dim: TruncationDim) -> Result<OperatorMatrix> {
    dim.check_adequate(0, alpha.norm())?;
    let d = dim.get();
    let mut mat = Array2::zeros((d, d));
    for n in 0..d {
        let col = displaced_column(n, alpha, d);
        for m in 0..d {
            mat[[m, n]] = col[m];
        }
    }
    OperatorMatrix::from_matrix(mat)
}

/// Displacement operator by scaling-and-squaring exponential of the
/// truncated generator. Cross-check route; production uses the closed form.
pub fn displacement_expm(alpha: Complex64, dim: TruncationDim) -> Result<OperatorMatrix> {
    dim.check_adequate(0, alpha.norm())?;
    let a = OperatorMatrix::annihilation(dim);
    let adag = OperatorMatrix::creation(dim);
    let gen = adag.matrix().mapv(|z| z * alpha) - a.matrix().mapv(|z| z * alpha.conj());
    OperatorMatrix::from_matrix(expm(&gen))
}

/// Column `n` of `D(alpha)`, i.e. the amplitudes of `D(alpha) |n>`.
///
/// The `m >= n` prefactors are accumulated incrementally so a full column
/// costs `O(dim * n)` even at large truncation.
fn displaced_column(n: usize, alpha: Complex64, d: usize) -> Array1<Complex64> {
    let mut amps = Array1::zeros(d);
    let x = alpha.norm_sqr();
    if x == 0.0 {
        amps[n] = c(1.0);
        return amps;
    }
    let ln_mag = alpha.norm().ln();
    let unit = alpha / alpha.norm();

    // m < n: per-element evaluation, at most n entries
    for m in 0..n.min(d) {
        amps[m] = displacement_element(m, n, alpha);
    }
    // m >= n: running log-prefactor ln_pref(m) = ln_pref(m-1) + ln|a| - ln(m)/2
    let mut ln_pref = -0.5 * x;
    let mut phase = c(1.0);
    for m in n..d {
        if m > n {
            ln_pref += ln_mag - 0.5 * (m as f64).ln();
            phase *= unit;
        }
        let (mant, ln_scale) = laguerre_scaled(n, m - n, x);
        amps[m] = phase * c(mant * (ln_pref + ln_scale).exp());
    }
    amps
}

/// Largest leading block of indices certified truncation-safe for
/// displacement checks at amplitude `|alpha|`.
///
/// Row `i` of a truncated `D(alpha)` is corrupted by the amount of
/// `D(alpha)|i>` that leaks past the cutoff; that state is centered at
/// `i + |alpha|^2` with photon-number spread `|alpha| sqrt(2i + 1)`, so the
/// certified block ends where `i + |alpha|^2 + 7 |alpha| sqrt(2i+1) + 10`
/// reaches `dim` (a >1e-17 leakage margin), and never exceeds 90% of `dim`.
pub fn displacement_safe_len(dim: TruncationDim, alpha_mag: f64) -> usize {
    let d = dim.get();
    let cap = dim.safe_len();
    let mut s = 0usize;
    while s < cap {
        let contained = s as f64
            + alpha_mag * alpha_mag
            + 7.0 * alpha_mag * (2.0 * s as f64 + 1.0).sqrt()
            + 10.0;
        if contained > d as f64 {
            break;
        }
        s += 1;
    }
    s
}

/// Coherent state `|alpha> = D(alpha)|0>`.
pub fn coherent_state(alpha: Complex64, dim: TruncationDim) -> Result<StateVector> {
    displaced_number_state(0, alpha, dim)
}

/// Displaced number state `|n, alpha> = D(alpha)|n>`, built directly from
/// the closed-form column.
pub fn displaced_number_state(n: u32, alpha: Complex64, dim: TruncationDim) -> Result<StateVector> {
    dim.check_adequate(n, alpha.norm())?;
    if alpha == Complex64::ZERO {
        return fock_state(n, dim);
    }
    StateVector::from_amplitudes(displaced_column(n as usize, alpha, dim.get()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn adim(n: u32, a: f64) -> TruncationDim {
        TruncationDim::adequate_for(n, a)
    }

    #[test]
    fn zero_displacement_is_exact_identity() {
        let d = adim(0, 0.0);
        let id = displacement(Complex64::ZERO, d).unwrap();
        for i in 0..d.get() {
            for j in 0..d.get() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert_eq!(id.matrix()[[i, j]], Complex64::new(want, 0.0));
            }
        }
    }

    #[test]
    fn vacuum_to_vacuum_amplitude() {
        // <0|D(1)|0> = e^{-1/2}
        let d = adim(0, 1.0);
        let dm = displacement(Complex64::new(1.0, 0.0), d).unwrap();
        assert_abs_diff_eq!(dm.matrix()[[0, 0]].re, 0.6065306597126334, epsilon = 1e-13);
        assert_abs_diff_eq!(dm.matrix()[[0, 0]].im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn vacuum_to_one_photon_amplitude() {
        // <0|D(alpha)|1> = -conj(alpha) e^{-|alpha|^2/2}; magnitude 0.6065307 at alpha = 1
        let d = adim(1, 1.0);
        let dm = displacement(Complex64::new(1.0, 0.0), d).unwrap();
        assert_abs_diff_eq!(dm.matrix()[[0, 1]].re, -0.6065306597126334, epsilon = 1e-13);
        assert_abs_diff_eq!(dm.matrix()[[0, 1]].norm(), 0.6065306597126334, epsilon = 1e-13);
    }

    #[test]
    fn closed_form_matches_expm_oracle() {
        let alpha = Complex64::new(0.8, -1.3);
        let d = TruncationDim::new(150).unwrap();
        let lag = displacement(alpha, d).unwrap();
        let exp = displacement_expm(alpha, d).unwrap();
        let safe = displacement_safe_len(d, alpha.norm());
        assert!(safe >= 30, "safe block unexpectedly small: {safe}");
        let mut worst = 0.0f64;
        for i in 0..safe {
            for j in 0..safe {
                worst = worst.max((lag.matrix()[[i, j]] - exp.matrix()[[i, j]]).norm());
            }
        }
        assert!(worst <= 1e-8, "worst entry deviation {worst:.3e}");
    }

    #[test]
    fn displacement_inverse_on_safe_block() {
        let alpha = Complex64::new(2.0, 0.0);
        let d = TruncationDim::new(200).unwrap();
        let fwd = displacement(alpha, d).unwrap();
        let bwd = displacement(-alpha, d).unwrap();
        let prod = fwd.dot(&bwd);
        let safe = displacement_safe_len(d, 2.0);
        assert!(safe >= 40, "safe block unexpectedly small: {safe}");
        assert!(prod.max_abs_diff_identity(safe) <= 1e-8);
    }

    #[test]
    fn displacement_unitary_on_safe_block() {
        for alpha in [
            Complex64::new(0.5, 0.0),
            Complex64::new(1.0, 0.5),
            Complex64::new(0.0, 3.0),
        ] {
            let d = TruncationDim::new(150.max(TruncationDim::required(0, alpha.norm())))
                .unwrap();
            let dm = displacement(alpha, d).unwrap();
            let prod = dm.dagger().dot(&dm);
            let safe = displacement_safe_len(d, alpha.norm());
            assert!(safe > 0);
            assert!(
                prod.max_abs_diff_identity(safe) <= 1e-8,
                "unitarity defect for alpha = {alpha}"
            );
        }
    }

    #[test]
    fn displaced_vacuum_is_coherent_state() {
        let alpha = Complex64::new(0.7, 0.4);
        let d = adim(0, alpha.norm());
        let a = displaced_number_state(0, alpha, d).unwrap();
        let b = coherent_state(alpha, d).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn displaced_fock_at_zero_alpha_is_fock() {
        let d = adim(3, 0.0);
        let a = displaced_number_state(3, Complex64::ZERO, d).unwrap();
        let b = fock_state(3, d).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn displaced_single_photon_mean_occupation() {
        // <n,alpha| n |n,alpha> = n + |alpha|^2, checked by direct summation
        let alpha = Complex64::new(1.0, 0.0);
        let d = adim(1, 1.0);
        let psi = displaced_number_state(1, alpha, d).unwrap();
        let direct: f64 = psi
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(m, z)| m as f64 * z.norm_sqr())
            .sum();
        assert_abs_diff_eq!(direct, 2.0, epsilon = 1e-9);
        let nop = OperatorMatrix::number(d);
        assert_abs_diff_eq!(nop.expectation(&psi).unwrap().re, 2.0, epsilon = 1e-9);
    }

    #[test]
    fn coherent_overlap() {
        // <alpha|beta> magnitude: e^{-|alpha - beta|^2/2}; at (1, -1): e^{-2}
        let d = adim(0, 1.0);
        let a = coherent_state(Complex64::new(1.0, 0.0), d).unwrap();
        let b = coherent_state(Complex64::new(-1.0, 0.0), d).unwrap();
        let ovl = a.inner(&b).unwrap();
        assert_abs_diff_eq!(ovl.re, 0.1353352832366127, epsilon = 1e-12);
        assert_abs_diff_eq!(ovl.im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn large_displacement_column_stays_normalized() {
        // the log-scaled prefactor must survive |alpha|^2/2 >> 708; at this
        // extreme the adequacy buffer is ~1.75 number-spreads wide, so a few
        // 1e-5 of mass sit past the cutoff (harmless downstream, where only
        // smooth sweep quantities use this regime)
        let d = adim(10, 80.0);
        let psi = displaced_number_state(10, Complex64::new(80.0, 0.0), d).unwrap();
        let norm = psi.norm();
        assert!(norm <= 1.0 + 1e-12 && norm >= 1.0 - 1e-4, "norm = {norm}");
        // well inside the envelope the tail is at machine scale
        let d5 = adim(10, 5.0);
        let psi5 = displaced_number_state(10, Complex64::new(5.0, 0.0), d5).unwrap();
        assert_abs_diff_eq!(psi5.norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn inadequate_dim_is_rejected() {
        let d = TruncationDim::new(10).unwrap();
        assert!(displaced_number_state(1, Complex64::new(3.0, 0.0), d).is_err());
        assert!(displacement(Complex64::new(3.0, 0.0), d).is_err());
    }
}
