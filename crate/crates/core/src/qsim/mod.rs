//! Dense state-vector simulation of named qubit registers.
//!
//! Gates are limited to what the oracle algorithms need: Hadamard on a whole
//! register, XOR function oracles, and inversion about the mean. All three
//! are involutions, so a [`Circuit`] can be run backward with
//! [`backdate`] to recover the state at any earlier time.

mod circuit;
mod layout;
mod state;
mod trajectory;

pub use circuit::{Circuit, FunctionTable, Gate};
pub use layout::{Register, RegisterLayout, MAX_QUBITS};
pub use state::{DensityMatrix, Distribution, MeasurementOutcome, StateVector, NORM_TOLERANCE};
pub use trajectory::{backdate, Checkpoint, Direction, TrajectoryRecord};

use num_complex::Complex64;

/// `(|0⟩ − |1⟩)/√2`, the phase-kickback target state.
pub fn minus_state() -> Vec<Complex64> {
    let a = std::f64::consts::FRAC_1_SQRT_2;
    vec![Complex64::new(a, 0.0), Complex64::new(-a, 0.0)]
}
