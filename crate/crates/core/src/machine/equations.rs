use std::fmt;

use serde::Serialize;

use super::network::{PorNetwork, Wire, POR_ROWS};
use crate::error::{Error, Result};

/// Part coordinate `X_{gate,part}` (0-based; displayed 1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PartRef {
    pub gate: usize,
    pub part: usize,
}

impl fmt::Display for PartRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X_{{{},{}}}", self.gate + 1, self.part + 1)
    }
}

/// `Σ lhs = Σ rhs` over part coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearEquation {
    pub lhs: Vec<PartRef>,
    pub rhs: Vec<PartRef>,
}

impl LinearEquation {
    pub fn new(mut lhs: Vec<PartRef>, mut rhs: Vec<PartRef>) -> Self {
        lhs.sort();
        rhs.sort();
        Self { lhs, rhs }
    }

    /// Same multiset of parts on both sides.
    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn holds(&self, coord: impl Fn(PartRef) -> f64) -> bool {
        let l: f64 = self.lhs.iter().map(|p| coord(*p)).sum();
        let r: f64 = self.rhs.iter().map(|p| coord(*p)).sum();
        l == r
    }
}

impl fmt::Display for LinearEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |v: &[PartRef]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("+")
        };
        write!(f, "{}={}", side(&self.lhs), side(&self.rhs))
    }
}

/// Linear equations on part coordinates that enforce a wire.
///
/// For each slot value `v`, the parts of gate `a` whose row gives slot
/// `a.slot` the value `v` must sum to the parts of gate `b` whose row gives
/// slot `b.slot` the value `v` (or `¬v` for a negated wire). The value-0
/// equation comes first: it equates single parts for a plain wire. The
/// value-1 equation equates the complementary sums.
pub fn wire_equations(network: &PorNetwork, wire: &Wire) -> Result<Vec<LinearEquation>> {
    for end in [wire.a, wire.b] {
        if end.gate >= network.num_gates() || end.slot >= 3 {
            return Err(Error::InvalidNetwork(format!(
                "wire endpoint (gate {}, slot {}) does not exist",
                end.gate, end.slot
            )));
        }
    }
    let parts_with = |gate: usize, slot: usize, value: bool| -> Vec<PartRef> {
        (0..3)
            .filter(|&p| POR_ROWS[p][slot] == value)
            .map(|part| PartRef { gate, part })
            .collect()
    };
    Ok([false, true]
        .into_iter()
        .map(|v| {
            LinearEquation::new(
                parts_with(wire.a.gate, wire.a.slot, v),
                parts_with(wire.b.gate, wire.b.slot, v ^ wire.negated),
            )
        })
        .collect())
}

/// Equations for every wire of the network, in [`PorNetwork::wires`] order.
pub fn network_equations(network: &PorNetwork) -> Vec<(Wire, Vec<LinearEquation>)> {
    network
        .wires()
        .into_iter()
        .map(|w| {
            let eqs = wire_equations(network, &w).expect("wires() yields valid endpoints");
            (w, eqs)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::network::{Slot, SlotRef};

    fn two_gates() -> PorNetwork {
        PorNetwork::anonymous(
            "pair",
            6,
            vec![
                [Slot::plain(0), Slot::plain(1), Slot::plain(2)],
                [Slot::plain(3), Slot::plain(4), Slot::plain(5)],
            ],
        )
        .unwrap()
    }

    fn wire(i: usize, j: usize, h: usize, l: usize) -> Wire {
        Wire {
            a: SlotRef { gate: i, slot: j },
            b: SlotRef { gate: h, slot: l },
            negated: false,
        }
    }

    #[test]
    fn first_slot_to_second_slot() {
        let eqs = wire_equations(&two_gates(), &wire(0, 0, 1, 1)).unwrap();
        let text: Vec<String> = eqs.iter().map(ToString::to_string).collect();
        assert_eq!(
            text,
            vec!["X_{1,1}=X_{2,2}", "X_{1,2}+X_{1,3}=X_{2,1}+X_{2,3}"]
        );
    }

    #[test]
    fn second_slot_to_third_slot() {
        let eqs = wire_equations(&two_gates(), &wire(0, 1, 1, 2)).unwrap();
        let text: Vec<String> = eqs.iter().map(ToString::to_string).collect();
        assert_eq!(
            text,
            vec!["X_{1,2}=X_{2,3}", "X_{1,1}+X_{1,3}=X_{2,1}+X_{2,2}"]
        );
    }

    #[test]
    fn reflexive_wire_is_trivial() {
        let eqs = wire_equations(&two_gates(), &wire(0, 0, 0, 0)).unwrap();
        assert!(eqs.iter().all(LinearEquation::is_trivial));
    }

    #[test]
    fn negated_wire_crosses_values() {
        let mut w = wire(0, 0, 1, 1);
        w.negated = true;
        let text: Vec<String> = wire_equations(&two_gates(), &w)
            .unwrap()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(
            text,
            vec!["X_{1,1}=X_{2,1}+X_{2,3}", "X_{1,2}+X_{1,3}=X_{2,2}"]
        );
    }

    #[test]
    fn bad_endpoint() {
        assert!(wire_equations(&two_gates(), &wire(0, 0, 2, 0)).is_err());
        assert!(wire_equations(&two_gates(), &wire(0, 3, 1, 0)).is_err());
    }
}
