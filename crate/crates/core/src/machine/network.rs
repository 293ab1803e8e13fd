use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_VARS: usize = 24;
pub const MAX_GATES: usize = 32;

/// POR truth table. Row `j` labels part `X_{i,j}`: the slot values when
/// that part moves. Exactly one slot is 0 in every row, in column `j`.
pub const POR_ROWS: [[bool; 3]; 3] = [
    [false, true, true],
    [true, false, true],
    [true, true, false],
];

/// Partial OR: true iff exactly one argument is false.
pub fn por(a: bool, b: bool, c: bool) -> bool {
    POR_ROWS.contains(&[a, b, c])
}

/// Variable reference in a gate slot; `neg` reads the variable complemented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Slot {
    pub var: usize,
    #[serde(default)]
    pub neg: bool,
}

impl Slot {
    pub fn plain(var: usize) -> Self {
        Self { var, neg: false }
    }

    pub fn negated(var: usize) -> Self {
        Self { var, neg: true }
    }
}

/// Network of POR gates over shared Boolean variables. A variable used in
/// several slots is a wire between those slots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PorNetwork {
    name: String,
    variables: Vec<String>,
    gates: Vec<[Slot; 3]>,
}

/// A Boolean value per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    pub(crate) fn from_mask(mask: u32, num_vars: usize) -> Self {
        Self((0..num_vars).map(|v| mask >> v & 1 == 1).collect())
    }

    pub fn get(&self, var: usize) -> bool {
        self.0[var]
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0
            .iter()
            .try_for_each(|b| f.write_str(if *b { "1" } else { "0" }))
    }
}

impl Serialize for Assignment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// One moving part per gate, as a 0-based row index of [`POR_ROWS`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartSelection {
    pub chosen: Vec<usize>,
}

/// Gate slot position, both 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SlotRef {
    pub gate: usize,
    pub slot: usize,
}

/// `x_a = x_b`, or `x_a = ¬x_b` when `negated`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Wire {
    pub a: SlotRef,
    pub b: SlotRef,
    pub negated: bool,
}

impl PorNetwork {
    pub fn new(
        name: impl Into<String>,
        variables: Vec<String>,
        gates: Vec<[Slot; 3]>,
    ) -> Result<Self> {
        let name = name.into();
        if variables.len() > MAX_VARS {
            return Err(Error::InvalidNetwork(format!(
                "{} variables exceeds the cap of {MAX_VARS}",
                variables.len()
            )));
        }
        if gates.len() > MAX_GATES {
            return Err(Error::InvalidNetwork(format!(
                "{} gates exceeds the cap of {MAX_GATES}",
                gates.len()
            )));
        }
        for (i, v) in variables.iter().enumerate() {
            if variables[..i].contains(v) {
                return Err(Error::InvalidNetwork(format!("duplicate variable `{v}`")));
            }
        }
        for (i, gate) in gates.iter().enumerate() {
            if let Some(s) = gate.iter().find(|s| s.var >= variables.len()) {
                return Err(Error::InvalidNetwork(format!(
                    "gate {i} references unknown variable {}",
                    s.var
                )));
            }
        }
        Ok(Self {
            name,
            variables,
            gates,
        })
    }

    /// Variables named `x0, x1, …`.
    pub fn anonymous(
        name: impl Into<String>,
        num_vars: usize,
        gates: Vec<[Slot; 3]>,
    ) -> Result<Self> {
        Self::new(
            name,
            (0..num_vars).map(|i| format!("x{i}")).collect(),
            gates,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn gates(&self) -> &[[Slot; 3]] {
        &self.gates
    }

    pub fn num_gates(&self) -> usize {
        self.gates.len()
    }

    pub fn slot_value(&self, at: SlotRef, assignment: &Assignment) -> bool {
        let s = self.gates[at.gate][at.slot];
        assignment.get(s.var) ^ s.neg
    }

    pub fn satisfies(&self, assignment: &Assignment) -> bool {
        assignment.0.len() == self.num_vars()
            && self.gates.iter().all(|g| {
                let [a, b, c] = g.map(|s| assignment.get(s.var) ^ s.neg);
                por(a, b, c)
            })
    }

    pub(crate) fn satisfies_mask(&self, mask: u32) -> bool {
        self.gates.iter().all(|g| {
            let zeros = g
                .iter()
                .filter(|s| (mask >> s.var & 1 == 1) == s.neg)
                .count();
            zeros == 1
        })
    }

    /// Wires implied by shared variables: each later occurrence of a
    /// variable is wired to its first occurrence.
    pub fn wires(&self) -> Vec<Wire> {
        let mut first: Vec<Option<(SlotRef, bool)>> = vec![None; self.num_vars()];
        let mut wires = Vec::new();
        for (gate, slots) in self.gates.iter().enumerate() {
            for (slot, s) in slots.iter().enumerate() {
                let here = SlotRef { gate, slot };
                match first[s.var] {
                    None => first[s.var] = Some((here, s.neg)),
                    Some((origin, neg)) => wires.push(Wire {
                        a: origin,
                        b: here,
                        negated: neg != s.neg,
                    }),
                }
            }
        }
        wires
    }

    pub fn is_referenced(&self, var: usize) -> bool {
        self.gates.iter().flatten().any(|s| s.var == var)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn por_truth_table() {
        let mut rows = Vec::new();
        for m in 0..8u8 {
            let (a, b, c) = (m & 4 != 0, m & 2 != 0, m & 1 != 0);
            if por(a, b, c) {
                rows.push([a, b, c]);
            }
        }
        assert_eq!(
            rows,
            vec![
                [false, true, true],
                [true, false, true],
                [true, true, false]
            ]
        );
    }

    #[test]
    fn validation() {
        assert!(PorNetwork::anonymous(
            "n",
            2,
            vec![[Slot::plain(0), Slot::plain(1), Slot::plain(2)]]
        )
        .is_err());
        assert!(PorNetwork::new("n", vec!["a".into(), "a".into()], vec![]).is_err());
        assert!(PorNetwork::anonymous("n", 25, vec![]).is_err());
    }

    #[test]
    fn wires_from_shared_variables() {
        let net = PorNetwork::anonymous(
            "n",
            5,
            vec![
                [Slot::plain(0), Slot::plain(1), Slot::plain(2)],
                [Slot::plain(3), Slot::negated(0), Slot::plain(4)],
            ],
        )
        .unwrap();
        assert_eq!(
            net.wires(),
            vec![Wire {
                a: SlotRef { gate: 0, slot: 0 },
                b: SlotRef { gate: 1, slot: 1 },
                negated: true
            }]
        );
    }
}
