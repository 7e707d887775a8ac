//! Truncated Fock-space linear algebra: states, operators, tensor products,
//! expectation values.

mod dim;
mod displacement;
mod multimode;
mod operator;
mod state;

pub use dim::TruncationDim;
pub use displacement::{
    coherent_state, displaced_number_state, displacement, displacement_element,
    displacement_expm, displacement_safe_len,
};
pub use multimode::{two_mode, MultiModeState};
pub use operator::{
    number_operator_two_mode, ModeFactor, OperatorMatrix, TensorOperator, TensorTerm,
};
pub use state::{fock_state, StateVector};
