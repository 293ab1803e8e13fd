//! Deutsch, Grover and Simon, each in its conventional form (oracle choice
//! `k` hardwired) and extended form (`k` held in an ancilla register `K`
//! prepared in superposition and fed to a joint oracle).

mod deutsch;
mod gf2;
mod grover;
mod simon;

pub use deutsch::{
    deutsch_extended_run, deutsch_extended_setup, deutsch_run, deutsch_setup,
    DeutschExtendedOutcome, DeutschFunction, Verdict,
};
pub use gf2::{gf2_rank, gf2_solve, Gf2Solution, Gf2System};
pub use grover::{
    grover_extended_run, grover_extended_setup, grover_iterations, grover_row_game,
    grover_row_game_for, grover_run, grover_setup, grover_success_probability,
    GroverExtendedOutcome, GroverInstance, RowGameOutcome, MAX_GROVER_EXTENDED_N, MAX_GROVER_N,
};
pub use simon::{
    simon_extended_run, simon_extended_setup, simon_family_table, simon_run, simon_sample_h,
    simon_setup, SimonExtendedOutcome, SimonInstance, SimonSampler, MAX_SIMON_CLASSICAL_N,
    MAX_SIMON_EXTENDED_N, MAX_SIMON_N,
};

use std::fmt;

use serde::{Serialize, Serializer};

use crate::bits::BitString;
use crate::error::Result;
use crate::qsim::{Circuit, StateVector};

/// What a run reports as its answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Answer {
    Bits(BitString),
    Verdict(Verdict),
    /// Post-processing did not have enough information.
    Insufficient,
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Answer::Bits(b) => write!(f, "{b}"),
            Answer::Verdict(v) => write!(f, "{v}"),
            Answer::Insufficient => f.write_str("insufficient"),
        }
    }
}

impl Serialize for Answer {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunResult {
    pub answer: Answer,
    /// Oracle applications in the executed circuits (quantum) or function
    /// evaluations (classical).
    pub oracle_queries: u64,
    pub iterations: u64,
    pub success: bool,
}

/// A prepared input state and the unitary algorithm applied to it.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub preparation: StateVector,
    pub circuit: Circuit,
}

impl Experiment {
    pub fn final_state(&self) -> Result<StateVector> {
        self.circuit.apply(&self.preparation)
    }

    pub fn oracle_queries(&self) -> u64 {
        self.circuit.oracle_count() as u64
    }
}
