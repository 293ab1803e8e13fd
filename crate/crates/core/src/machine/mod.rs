//! A nondeterministic machine for networks of partial-OR gates.
//!
//! Each POR gate owns three parts, one per truth-table row; exactly one part
//! per gate moves with the input part `Q`. Shared variables are wires,
//! enforced by linear equations on part coordinates. A motion is a
//! satisfying assignment, drawn with probability proportional to the mass
//! that moves; with no satisfying assignment the machine is jammed.

mod equations;
mod network;
mod not_machine;
mod sampling;
mod solve;
mod x3sat;

pub use equations::{network_equations, wire_equations, LinearEquation, PartRef};
pub use network::{
    por, Assignment, PartSelection, PorNetwork, Slot, SlotRef, Wire, MAX_GATES, MAX_VARS, POR_ROWS,
};
pub use not_machine::{not_machine, not_machine_probability, NotMachineOutcome};
pub use sampling::{
    exact_distribution, sample_solution, MachineSampler, MachineSpec, SolutionDistribution,
};
pub use solve::{
    all_selections, enumerate_solutions, merge_labels, selection_consistent, selection_of,
    wire_equations_hold,
};
pub use x3sat::{clause_satisfied, compile_x3sat, Clause, Literal};
