//! Simulation laboratory for oracle algorithms whose hidden choice is held
//! in an ancilla register, the classical reference algorithms that know
//! half of the answer in advance, and a mass-weighted nondeterministic
//! machine for networks of partial-OR constraints.
//!
//! - [`qsim`]: dense state vectors over named registers, oracles, partial
//!   measurement, and backward propagation through circuits.
//! - [`algorithms`]: Deutsch, Grover and Simon in standard and extended form,
//!   plus GF(2) elimination.
//! - [`machine`]: POR networks, wire equations, solution enumeration and sampling.
//! - [`harness`]: advance-knowledge classical baselines, exact success laws,
//!   and the experiment reports.
//! - [`trials`]: seeded trial runner (rayon behind the `parallel` feature).

pub mod algorithms;
pub mod bits;
pub mod error;
pub mod harness;
pub mod machine;
pub mod qsim;
pub mod trials;

pub use bits::BitString;
pub use error::{Error, Result};
