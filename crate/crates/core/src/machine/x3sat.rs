use serde::{Deserialize, Serialize};

use super::network::{Assignment, PorNetwork, Slot};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Literal {
    pub var: usize,
    #[serde(default)]
    pub neg: bool,
}

impl Literal {
    pub fn value(&self, assignment: &Assignment) -> bool {
        assignment.get(self.var) ^ self.neg
    }
}

/// "Exactly one of the three literals is true."
pub type Clause = [Literal; 3];

pub fn clause_satisfied(clause: &Clause, assignment: &Assignment) -> bool {
    clause.iter().filter(|l| l.value(assignment)).count() == 1
}

/// One POR gate per clause, slots holding the complemented literals: POR
/// wants exactly one slot false, i.e. exactly one literal true.
pub fn compile_x3sat(clauses: &[Clause], num_vars: usize) -> Result<PorNetwork> {
    let gates = clauses
        .iter()
        .map(|c| {
            c.map(|l| Slot {
                var: l.var,
                neg: !l.neg,
            })
        })
        .collect();
    PorNetwork::anonymous("x3sat", num_vars, gates)
}
