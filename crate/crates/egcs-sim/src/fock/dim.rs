//! Truncation dimension of the Fock basis and the adequacy rule that sizes it.

use crate::error::{Error, Result};

/// Size of the truncated Fock basis `{|0>, ..., |dim-1>}`.
///
/// A displaced number state `D(alpha)|n>` has Poisson-like support centered
/// near `n + |alpha|^2`; the adequacy rule below keeps the probability weight
/// beyond the cutoff under ~1e-12 so that truncation never contaminates the
/// stated tolerances.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TruncationDim(usize);

impl TruncationDim {
    /// A basis with `dim` levels. `dim` must be at least 1.
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::DimensionMismatch { left: 0, right: 1 });
        }
        Ok(TruncationDim(dim))
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// Minimum dimension adequate for `D(alpha)|n>`:
    /// `ceil(n + |alpha|^2 + 8*sqrt(n + |alpha|^2 + 1) + 20)`.
    pub fn required(n: u32, alpha_mag: f64) -> usize {
        let mean = n as f64 + alpha_mag * alpha_mag;
        (mean + 8.0 * (mean + 1.0).sqrt() + 20.0).ceil() as usize
    }

    /// Smallest adequate dimension for the pair `(n, |alpha|)`.
    pub fn adequate_for(n: u32, alpha_mag: f64) -> Self {
        TruncationDim(Self::required(n, alpha_mag))
    }

    /// Check that this dimension is adequate for `(n, |alpha|)`.
    pub fn check_adequate(self, n: u32, alpha_mag: f64) -> Result<()> {
        let required = Self::required(n, alpha_mag);
        if self.0 < required {
            return Err(Error::Adequacy {
                dim: self.0,
                n,
                alpha_mag,
                required,
            });
        }
        Ok(())
    }

    /// Number of leading indices considered truncation-safe.
    ///
    /// The top 10% of rows are corrupted by the cutoff by construction and
    /// are excluded from unitarity checks.
    pub fn safe_len(self) -> usize {
        self.0 - self.0.div_ceil(10)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero() {
        assert!(TruncationDim::new(0).is_err());
        assert_eq!(TruncationDim::new(1).unwrap().get(), 1);
    }

    #[test]
    fn adequacy_rule_values() {
        // n = 0, alpha = 0: 0 + 8*1 + 20 = 28
        assert_eq!(TruncationDim::required(0, 0.0), 28);
        // n = 10, alpha = 5: 35 + 8*6 + 20 = 103
        assert_eq!(TruncationDim::required(10, 5.0), 103);
        assert!(TruncationDim::new(103)
            .unwrap()
            .check_adequate(10, 5.0)
            .is_ok());
        assert!(matches!(
            TruncationDim::new(102).unwrap().check_adequate(10, 5.0),
            Err(Error::Adequacy { required: 103, .. })
        ));
    }

    #[test]
    fn safe_len_drops_top_tenth() {
        assert_eq!(TruncationDim::new(100).unwrap().safe_len(), 90);
        assert_eq!(TruncationDim::new(103).unwrap().safe_len(), 92);
        assert_eq!(TruncationDim::new(2).unwrap().safe_len(), 1);
    }
}
