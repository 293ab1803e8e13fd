use super::equations::{network_equations, PartRef};
use super::network::{Assignment, PartSelection, PorNetwork, SlotRef, POR_ROWS};
use crate::error::{Error, Result};

const CHUNK: u64 = 1 << 16;

fn scan(network: &PorNetwork, start: u64, end: u64) -> Vec<Assignment> {
    (start..end)
        .map(|m| m as u32)
        .filter(|&m| network.satisfies_mask(m))
        .map(|m| Assignment::from_mask(m, network.num_vars()))
        .collect()
}

/// Every satisfying assignment, by exhaustive scan in increasing order of
/// the assignment read as a binary number with variable 0 as the low bit.
pub fn enumerate_solutions(network: &PorNetwork) -> Vec<Assignment> {
    let total = 1u64 << network.num_vars();
    let chunks = total.div_ceil(CHUNK);
    let run = |c: u64| scan(network, c * CHUNK, ((c + 1) * CHUNK).min(total));

    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..chunks)
            .into_par_iter()
            .map(run)
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..chunks).flat_map(run).collect()
    }
}

/// The part that moves in each gate under a satisfying assignment.
pub fn selection_of(network: &PorNetwork, assignment: &Assignment) -> Option<PartSelection> {
    if !network.satisfies(assignment) {
        return None;
    }
    let chosen = (0..network.num_gates())
        .map(|gate| {
            (0..3)
                .find(|&slot| !network.slot_value(SlotRef { gate, slot }, assignment))
                .expect("satisfied POR gate has a zero slot")
        })
        .collect();
    Some(PartSelection { chosen })
}

/// Merges the truth-table labels of the chosen parts. `None` on a conflict.
/// Variables no gate references are set to 0.
pub fn merge_labels(network: &PorNetwork, selection: &PartSelection) -> Option<Assignment> {
    let mut values: Vec<Option<bool>> = vec![None; network.num_vars()];
    for (gate, &part) in network.gates().iter().zip(&selection.chosen) {
        for (slot, s) in gate.iter().enumerate() {
            let v = POR_ROWS[part][slot] ^ s.neg;
            match values[s.var] {
                Some(prev) if prev != v => return None,
                _ => values[s.var] = Some(v),
            }
        }
    }
    Some(Assignment(
        values.into_iter().map(|v| v.unwrap_or(false)).collect(),
    ))
}

/// Checks every wire equation with the chosen part of each gate at
/// coordinate `Q = 1` and the other two at 0.
pub fn wire_equations_hold(network: &PorNetwork, selection: &PartSelection) -> bool {
    let coord = |p: PartRef| {
        if selection.chosen[p.gate] == p.part {
            1.0
        } else {
            0.0
        }
    };
    network_equations(network)
        .iter()
        .all(|(_, eqs)| eqs.iter().all(|e| e.holds(coord)))
}

/// The assignment induced by a part selection, if the labels agree on every
/// shared variable and every wire equation holds.
pub fn selection_consistent(
    network: &PorNetwork,
    selection: &PartSelection,
) -> Result<Option<Assignment>> {
    if selection.chosen.len() != network.num_gates() || selection.chosen.iter().any(|&p| p > 2) {
        return Err(Error::InvalidNetwork(format!(
            "selection {:?} does not pick one of three parts for each of {} gates",
            selection.chosen,
            network.num_gates()
        )));
    }
    let merged = merge_labels(network, selection);
    if merged.is_some() && wire_equations_hold(network, selection) {
        Ok(merged)
    } else {
        Ok(None)
    }
}

/// All `3^gates` selections, for exhaustive checks on small networks.
pub fn all_selections(num_gates: usize) -> impl Iterator<Item = PartSelection> {
    let total = 3usize.pow(num_gates as u32);
    (0..total).map(move |mut code| {
        let chosen = (0..num_gates)
            .map(|_| {
                let p = code % 3;
                code /= 3;
                p
            })
            .collect();
        PartSelection { chosen }
    })
}
