//! Operators on the truncated Fock space: dense single-mode matrices and
//! structured sums of single-mode factors acting on multi-mode states.

use ndarray::{Array1, Array2, ArrayD, Axis, Ix2, IxDyn};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::dim::TruncationDim;
use crate::fock::multimode::MultiModeState;
use crate::fock::state::StateVector;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Dense complex matrix acting on a single mode.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    mat: Array2<Complex64>,
}

impl OperatorMatrix {
    pub fn from_matrix(mat: Array2<Complex64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::DimensionMismatch {
                left: mat.nrows(),
                right: mat.ncols(),
            });
        }
        Ok(OperatorMatrix { mat })
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.mat
    }

    pub fn into_matrix(self) -> Array2<Complex64> {
        self.mat
    }

    /// Photon annihilation operator: `<m-1| a |m> = sqrt(m)`.
    pub fn annihilation(dim: TruncationDim) -> Self {
        let d = dim.get();
        let mut mat = Array2::zeros((d, d));
        for m in 1..d {
            mat[[m - 1, m]] = c((m as f64).sqrt());
        }
        OperatorMatrix { mat }
    }

    /// Photon creation operator, the adjoint of [`annihilation`](Self::annihilation).
    pub fn creation(dim: TruncationDim) -> Self {
        Self::annihilation(dim).dagger()
    }

    /// Number operator built as the ladder product `a† a`.
    pub fn number(dim: TruncationDim) -> Self {
        let a = Self::annihilation(dim);
        Self::creation(dim).dot(&a)
    }

    pub fn identity(dim: TruncationDim) -> Self {
        OperatorMatrix {
            mat: Array2::from_diag_elem(dim.get(), c(1.0)),
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        OperatorMatrix {
            mat: self.mat.t().mapv(|z| z.conj()),
        }
    }

    pub fn dot(&self, other: &Self) -> Self {
        OperatorMatrix {
            mat: self.mat.dot(&other.mat),
        }
    }

    /// `Op |psi>`.
    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        if self.dim() != psi.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: psi.dim(),
            });
        }
        StateVector::from_amplitudes(self.mat.dot(psi.amplitudes()))
    }

    /// `<psi| Op |psi>`.
    pub fn expectation(&self, psi: &StateVector) -> Result<Complex64> {
        psi.inner(&self.apply(psi)?)
    }

    /// `<Op^2> - <Op>^2`, with the imaginary residue checked and discarded.
    pub fn variance(&self, psi: &StateVector) -> Result<f64> {
        let once = self.apply(psi)?;
        let mean = psi.inner(&once)?;
        let square = psi.inner(&self.apply(&once)?)?;
        real_variance(square - mean * mean)
    }

    /// Largest entry magnitude of `self - I` over the leading
    /// `safe x safe` block.
    pub fn max_abs_diff_identity(&self, safe: usize) -> f64 {
        let mut max = 0.0f64;
        for i in 0..safe.min(self.dim()) {
            for j in 0..safe.min(self.dim()) {
                let want = if i == j { c(1.0) } else { Complex64::ZERO };
                max = max.max((self.mat[[i, j]] - want).norm());
            }
        }
        max
    }
}

pub(crate) fn real_variance(v: Complex64) -> Result<f64> {
    assert!(
        v.im.abs() <= 1e-10,
        "variance has imaginary residue {:.3e}",
        v.im
    );
    Ok(v.re)
}

/// A single-mode factor inside a [`TensorOperator`] term.
#[derive(Clone, Debug)]
pub enum ModeFactor {
    Dense(OperatorMatrix),
    /// Diagonal in the Fock basis; stores the diagonal entries.
    Diagonal(Array1<Complex64>),
}

impl ModeFactor {
    fn dim(&self) -> usize {
        match self {
            ModeFactor::Dense(m) => m.dim(),
            ModeFactor::Diagonal(d) => d.len(),
        }
    }
}

/// One term `coeff * (factor_0 on mode m_0) * (factor_1 on mode m_1) * ...`,
/// identity on every unlisted mode.
#[derive(Clone, Debug)]
pub struct TensorTerm {
    pub coeff: Complex64,
    pub factors: Vec<(usize, ModeFactor)>,
}

/// Sum of [`TensorTerm`]s acting on a [`MultiModeState`].
#[derive(Clone, Debug)]
pub struct TensorOperator {
    terms: Vec<TensorTerm>,
}

impl TensorOperator {
    pub fn new(terms: Vec<TensorTerm>) -> Self {
        TensorOperator { terms }
    }

    pub fn terms(&self) -> &[TensorTerm] {
        &self.terms
    }

    fn check(&self, psi: &MultiModeState) -> Result<()> {
        for term in &self.terms {
            for (mode, factor) in &term.factors {
                if *mode >= psi.mode_count() {
                    return Err(Error::ModeMismatch(format!(
                        "factor on mode {mode} of a {}-mode state",
                        psi.mode_count()
                    )));
                }
                if factor.dim() != psi.dims()[*mode] {
                    return Err(Error::DimensionMismatch {
                        left: factor.dim(),
                        right: psi.dims()[*mode],
                    });
                }
            }
        }
        Ok(())
    }

    /// `Op |psi>`.
    pub fn apply(&self, psi: &MultiModeState) -> Result<MultiModeState> {
        self.check(psi)?;
        if let Some(out) = self.apply_two_mode_diagonal(psi) {
            return Ok(out);
        }
        let mut out = ArrayD::<Complex64>::zeros(psi.amplitudes().raw_dim());
        for term in &self.terms {
            let mut acc = psi.amplitudes().clone();
            for (mode, factor) in &term.factors {
                apply_factor_along(&mut acc, *mode, factor);
            }
            out.zip_mut_with(&acc, |o, a| *o += term.coeff * a);
        }
        MultiModeState::from_amplitudes(psi.labels().to_vec(), out)
    }

    /// Fused single pass for the common case: a two-mode state and terms
    /// that each carry one diagonal factor. The per-element weight is
    /// `w(i, j) = sum_t coeff_t * diag_t[i or j]`.
    fn apply_two_mode_diagonal(&self, psi: &MultiModeState) -> Option<MultiModeState> {
        if psi.mode_count() != 2 {
            return None;
        }
        let (d0, d1) = (psi.dims()[0], psi.dims()[1]);
        let mut row = Array1::<Complex64>::zeros(d0);
        let mut col = Array1::<Complex64>::zeros(d1);
        for term in &self.terms {
            if term.factors.len() != 1 {
                return None;
            }
            let (mode, factor) = &term.factors[0];
            let diag = match factor {
                ModeFactor::Diagonal(d) => d,
                ModeFactor::Dense(_) => return None,
            };
            match mode {
                0 => row.zip_mut_with(diag, |r, d| *r += term.coeff * d),
                _ => col.zip_mut_with(diag, |c, d| *c += term.coeff * d),
            }
        }
        let amps2 = psi
            .amplitudes()
            .view()
            .into_dimensionality::<Ix2>()
            .expect("two-mode state");
        let mut out = Array2::<Complex64>::zeros((d0, d1));
        for i in 0..d0 {
            let r = row[i];
            let src = amps2.row(i);
            let mut dst = out.row_mut(i);
            for j in 0..d1 {
                dst[j] = (r + col[j]) * src[j];
            }
        }
        Some(
            MultiModeState::from_amplitudes(psi.labels().to_vec(), out.into_dyn())
                .expect("shape preserved"),
        )
    }

    /// `<psi| Op |psi>`.
    pub fn expectation(&self, psi: &MultiModeState) -> Result<Complex64> {
        psi.inner(&self.apply(psi)?)
    }

    /// `<Op^2> - <Op>^2`, with the imaginary residue checked and discarded.
    pub fn variance(&self, psi: &MultiModeState) -> Result<f64> {
        let once = self.apply(psi)?;
        let mean = psi.inner(&once)?;
        let square = psi.inner(&self.apply(&once)?)?;
        real_variance(square - mean * mean)
    }
}

fn apply_factor_along(amps: &mut ArrayD<Complex64>, mode: usize, factor: &ModeFactor) {
    match factor {
        ModeFactor::Diagonal(d) => {
            for (i, mut lane) in amps.axis_iter_mut(Axis(mode)).enumerate() {
                let scale = d[i];
                lane.map_inplace(|z| *z *= scale);
            }
        }
        ModeFactor::Dense(m) => {
            let ndim = amps.ndim();
            let mut perm: Vec<usize> = (0..ndim).collect();
            perm.remove(mode);
            perm.insert(0, mode);
            let moved = amps.view().permuted_axes(IxDyn(&perm));
            let d = moved.shape()[0];
            let rest: usize = moved.shape()[1..].iter().product();
            let flat = moved
                .as_standard_layout()
                .into_owned()
                .into_shape_with_order((d, rest))
                .expect("contiguous reshape");
            let mixed = m.matrix().dot(&flat);
            let mut new_shape = vec![d];
            new_shape.extend_from_slice(&moved.shape()[1..]);
            let remixed = mixed
                .into_shape_with_order(IxDyn(&new_shape))
                .expect("reshape back");
            let mut inv: Vec<usize> = vec![0; ndim];
            for (pos, &ax) in perm.iter().enumerate() {
                inv[ax] = pos;
            }
            *amps = remixed
                .view()
                .permuted_axes(IxDyn(&inv))
                .as_standard_layout()
                .to_owned();
        }
    }
}

/// Two-mode photon number operator `N = a†a ⊗ I + I ⊗ b†b`.
///
/// Both terms are diagonal in the Fock basis; the diagonal entries are the
/// occupation numbers, which equals the ladder product `a†a` row by row
/// (see the unit tests for the explicit cross-check).
pub fn number_operator_two_mode(dim: TruncationDim) -> TensorOperator {
    let diag = Array1::from_iter((0..dim.get()).map(|m| c(m as f64)));
    TensorOperator::new(vec![
        TensorTerm {
            coeff: c(1.0),
            factors: vec![(0, ModeFactor::Diagonal(diag.clone()))],
        },
        TensorTerm {
            coeff: c(1.0),
            factors: vec![(1, ModeFactor::Diagonal(diag))],
        },
    ])
}
