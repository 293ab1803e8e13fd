use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qsim::state::StateVector;
use crate::qsim::trajectory::{Checkpoint, Direction, TrajectoryRecord};

/// Complete classical function table `{0,1}^input_width → {0,1}^output_width`,
/// indexed by the input value. Serialized with values as hex strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTable", into = "RawTable")]
pub struct FunctionTable {
    input_width: usize,
    output_width: usize,
    values: Vec<u64>,
}

impl FunctionTable {
    pub fn new(input_width: usize, output_width: usize, values: Vec<u64>) -> Result<Self> {
        if input_width == 0 || input_width > 24 || output_width == 0 || output_width > 24 {
            return Err(Error::IncompleteOracle(format!(
                "unsupported widths {input_width} → {output_width}"
            )));
        }
        if values.len() != 1 << input_width {
            return Err(Error::IncompleteOracle(format!(
                "{} entries for {} inputs",
                values.len(),
                1u64 << input_width
            )));
        }
        if let Some((x, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| **v >> output_width != 0)
        {
            return Err(Error::IncompleteOracle(format!(
                "entry {x} = {v:#x} does not fit in {output_width} output bits"
            )));
        }
        Ok(Self {
            input_width,
            output_width,
            values,
        })
    }

    pub fn from_fn(
        input_width: usize,
        output_width: usize,
        f: impl Fn(u64) -> u64,
    ) -> Result<Self> {
        Self::new(
            input_width,
            output_width,
            (0..1u64 << input_width).map(f).collect(),
        )
    }

    pub fn input_width(&self) -> usize {
        self.input_width
    }

    pub fn output_width(&self) -> usize {
        self.output_width
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn eval(&self, input: u64) -> u64 {
        self.values[input as usize]
    }

    pub(crate) fn check_shape(&self, input_width: usize, output_width: usize) -> Result<()> {
        if self.input_width != input_width || self.output_width != output_width {
            return Err(Error::IncompleteOracle(format!(
                "table maps {} → {} bits but the registers need {input_width} → {output_width}",
                self.input_width, self.output_width
            )));
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct RawTable {
    input_width: usize,
    output_width: usize,
    values: Vec<String>,
}

impl TryFrom<RawTable> for FunctionTable {
    type Error = Error;

    fn try_from(raw: RawTable) -> Result<Self> {
        let values = raw
            .values
            .iter()
            .map(|s| {
                let digits = s.strip_prefix("0x").unwrap_or(s);
                u64::from_str_radix(digits, 16)
                    .map_err(|_| Error::IncompleteOracle(format!("`{s}` is not a hex value")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(raw.input_width, raw.output_width, values)
    }
}

impl From<FunctionTable> for RawTable {
    fn from(t: FunctionTable) -> Self {
        RawTable {
            input_width: t.input_width,
            output_width: t.output_width,
            values: t.values.iter().map(|v| format!("{v:#x}")).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "gate", rename_all = "snake_case")]
pub enum Gate {
    HadamardAll {
        register: String,
    },
    FunctionOracle {
        inputs: Vec<String>,
        output: String,
        table: String,
    },
    Diffusion {
        register: String,
    },
}

impl Gate {
    /// Every gate here is an involution.
    pub fn inverse(&self) -> Gate {
        self.clone()
    }

    pub fn is_oracle(&self) -> bool {
        matches!(self, Gate::FunctionOracle { .. })
    }
}

/// Ordered gate list plus the function tables its oracles reference.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circuit {
    pub gates: Vec<Gate>,
    #[serde(default)]
    pub tables: BTreeMap<String, FunctionTable>,
}

impl Circuit {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_table(mut self, id: &str, table: FunctionTable) -> Self {
        self.tables.insert(id.to_string(), table);
        self
    }

    pub fn hadamard_all(mut self, register: &str) -> Self {
        self.gates.push(Gate::HadamardAll {
            register: register.to_string(),
        });
        self
    }

    pub fn oracle(mut self, inputs: &[&str], output: &str, table: &str) -> Self {
        self.gates.push(Gate::FunctionOracle {
            inputs: inputs.iter().map(|s| s.to_string()).collect(),
            output: output.to_string(),
            table: table.to_string(),
        });
        self
    }

    pub fn diffusion(mut self, register: &str) -> Self {
        self.gates.push(Gate::Diffusion {
            register: register.to_string(),
        });
        self
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Number of function-oracle applications.
    pub fn oracle_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_oracle()).count()
    }

    pub fn apply_gate(&self, state: &mut StateVector, gate: &Gate) -> Result<()> {
        match gate {
            Gate::HadamardAll { register } => state.apply_hadamard_all(register),
            Gate::Diffusion { register } => state.apply_diffusion(register),
            Gate::FunctionOracle {
                inputs,
                output,
                table,
            } => {
                let t = self
                    .tables
                    .get(table)
                    .ok_or_else(|| Error::UnknownTable(table.clone()))?;
                let inputs: Vec<&str> = inputs.iter().map(String::as_str).collect();
                state.apply_function_oracle(&inputs, output, t)
            }
        }
    }

    pub fn apply(&self, initial: &StateVector) -> Result<StateVector> {
        let mut state = initial.clone();
        for gate in &self.gates {
            self.apply_gate(&mut state, gate)?;
        }
        Ok(state)
    }

    /// Forward evolution with a checkpoint before the first gate and after each one.
    pub fn run(&self, initial: &StateVector) -> Result<TrajectoryRecord> {
        let mut state = initial.clone();
        let mut checkpoints = vec![Checkpoint {
            time: 0,
            state: state.clone(),
        }];
        for (t, gate) in self.gates.iter().enumerate() {
            self.apply_gate(&mut state, gate)?;
            checkpoints.push(Checkpoint {
                time: t + 1,
                state: state.clone(),
            });
        }
        Ok(TrajectoryRecord {
            direction: Direction::Forward,
            checkpoints,
        })
    }

    /// The inverse circuit: inverted gates in reverse order.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            tables: self.tables.clone(),
        }
    }
}
