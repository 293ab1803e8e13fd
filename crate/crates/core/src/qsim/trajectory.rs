use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::qsim::circuit::Circuit;
use crate::qsim::state::StateVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    /// Number of gates of the circuit applied so far in the forward sense.
    pub time: usize,
    pub state: StateVector,
}

/// Snapshots of a state along a circuit, forward or backward in time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRecord {
    pub direction: Direction,
    pub checkpoints: Vec<Checkpoint>,
}

impl TrajectoryRecord {
    pub fn at(&self, time: usize) -> Option<&StateVector> {
        self.checkpoints
            .iter()
            .find(|c| c.time == time)
            .map(|c| &c.state)
    }

    /// The state at time 0.
    pub fn initial(&self) -> &StateVector {
        self.at(0).expect("trajectory always contains time 0")
    }

    /// The state after the last gate.
    pub fn last(&self) -> &StateVector {
        let t = self
            .checkpoints
            .iter()
            .map(|c| c.time)
            .max()
            .expect("nonempty trajectory");
        self.at(t).expect("max time is present")
    }
}

/// Propagates `final_state` backward through `circuit`, undoing the gates in
/// reverse order. The returned record starts at `time = circuit.len()` and
/// ends at `time = 0`, the backdated initial state.
pub fn backdate(final_state: &StateVector, circuit: &Circuit) -> Result<TrajectoryRecord> {
    let mut state = final_state.clone();
    let n = circuit.len();
    let mut checkpoints = vec![Checkpoint {
        time: n,
        state: state.clone(),
    }];
    for (t, gate) in circuit.gates.iter().enumerate().rev() {
        circuit.apply_gate(&mut state, &gate.inverse())?;
        checkpoints.push(Checkpoint {
            time: t,
            state: state.clone(),
        });
    }
    Ok(TrajectoryRecord {
        direction: Direction::Backward,
        checkpoints,
    })
}
