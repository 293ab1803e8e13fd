//! Machine network files.
//!
//! ```json
//! {
//!   "name": "not",
//!   "variables": ["x", "y", "w", "u"],
//!   "gates": [[{"var": "x"}, {"var": "y"}, {"var": "w"}],
//!             [{"var": "w"}, {"var": "w"}, {"var": "u"}]],
//!   "masses": {"0": [1, 1, 0], "1": [1, 1, 0]},
//!   "q_mass": 0
//! }
//! ```
//!
//! Gates without an entry in `masses` get unit masses; `q_mass` defaults to 0.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use relq_core::machine::{MachineSpec, PorNetwork, Slot};
use serde::{Deserialize, Serialize};

#[derive(Debug)]
pub struct NetworkFileError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for NetworkFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for NetworkFileError {}

fn err(path: impl Into<String>, message: impl Into<String>) -> NetworkFileError {
    NetworkFileError {
        path: path.into(),
        message: message.into(),
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SlotFile {
    var: String,
    #[serde(default)]
    neg: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    variables: Vec<String>,
    gates: Vec<Vec<SlotFile>>,
    #[serde(default)]
    masses: BTreeMap<String, Vec<f64>>,
    #[serde(default)]
    q_mass: f64,
}

/// Parses and validates a network document. `default_name` is used when the
/// document has no `name`.
pub fn parse_network(text: &str, default_name: &str) -> Result<MachineSpec, NetworkFileError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: NetworkFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." { String::new() } else { path };
        err(path, e.into_inner().to_string())
    })?;

    let mut gates = Vec::with_capacity(file.gates.len());
    for (i, gate) in file.gates.iter().enumerate() {
        if gate.len() != 3 {
            return Err(err(
                format!("gates[{i}]"),
                format!("a POR gate has 3 slots, found {}", gate.len()),
            ));
        }
        let mut slots = [Slot::plain(0); 3];
        for (j, s) in gate.iter().enumerate() {
            let var = file
                .variables
                .iter()
                .position(|v| *v == s.var)
                .ok_or_else(|| {
                    err(
                        format!("gates[{i}][{j}].var"),
                        format!("unknown variable `{}`", s.var),
                    )
                })?;
            slots[j] = Slot { var, neg: s.neg };
        }
        gates.push(slots);
    }

    let mut masses = vec![[1.0; 3]; gates.len()];
    for (key, m) in &file.masses {
        let gate: usize = key
            .parse()
            .ok()
            .filter(|g| *g < gates.len())
            .ok_or_else(|| {
                err(
                    format!("masses[{key}]"),
                    format!("no gate with index `{key}`"),
                )
            })?;
        if m.len() != 3 {
            return Err(err(
                format!("masses[{key}]"),
                format!("expected 3 part masses, found {}", m.len()),
            ));
        }
        masses[gate] = [m[0], m[1], m[2]];
    }

    let name = file
        .name
        .clone()
        .unwrap_or_else(|| default_name.to_string());
    let network =
        PorNetwork::new(name, file.variables, gates).map_err(|e| err("gates", e.to_string()))?;
    MachineSpec::new(network, masses, file.q_mass).map_err(|e| err("masses", e.to_string()))
}

pub fn load_network(path: &Path) -> Result<MachineSpec, NetworkFileError> {
    let text = fs::read_to_string(path)
        .map_err(|e| err("", format!("cannot read {}: {e}", path.display())))?;
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("network");
    parse_network(&text, stem)
        .map_err(|e| err(e.path, format!("{} ({})", e.message, path.display())))
}

pub fn network_to_json(spec: &MachineSpec) -> String {
    let net = spec.network();
    let file = NetworkFile {
        name: Some(net.name().to_string()),
        variables: net.variables().to_vec(),
        gates: net
            .gates()
            .iter()
            .map(|g| {
                g.iter()
                    .map(|s| SlotFile {
                        var: net.variables()[s.var].clone(),
                        neg: s.neg,
                    })
                    .collect()
            })
            .collect(),
        masses: spec
            .part_masses()
            .iter()
            .enumerate()
            .map(|(i, m)| (i.to_string(), m.to_vec()))
            .collect(),
        q_mass: spec.q_mass(),
    };
    serde_json::to_string_pretty(&file).expect("network serializes") + "\n"
}

pub fn save_network(path: &Path, spec: &MachineSpec) -> std::io::Result<()> {
    fs::write(path, network_to_json(spec))
}

#[cfg(test)]
mod tests {
    use super::*;

    const NOT: &str = r#"{
        "variables": ["x", "y", "w", "u"],
        "gates": [[{"var": "x"}, {"var": "y"}, {"var": "w"}],
                  [{"var": "w"}, {"var": "w"}, {"var": "u"}]],
        "masses": {"0": [1, 1, 0], "1": [1, 1, 0]}
    }"#;

    #[test]
    fn parses_with_defaults() {
        let spec = parse_network(NOT, "not").unwrap();
        assert_eq!(spec.network().name(), "not");
        assert_eq!(spec.network().num_gates(), 2);
        assert_eq!(spec.q_mass(), 0.0);
    }

    #[test]
    fn short_mass_triple_names_its_path() {
        let bad = NOT.replace("\"0\": [1, 1, 0]", "\"0\": [1, 1]");
        let e = parse_network(&bad, "not").unwrap_err();
        assert_eq!(e.path, "masses[0]");
    }

    #[test]
    fn unknown_variable_names_its_path() {
        let bad = NOT.replace("{\"var\": \"u\"}", "{\"var\": \"z\"}");
        let e = parse_network(&bad, "not").unwrap_err();
        assert_eq!(e.path, "gates[1][2].var");
    }

    #[test]
    fn two_slot_gate_rejected() {
        let bad = r#"{"variables": ["x", "y"], "gates": [[{"var": "x"}, {"var": "y"}]]}"#;
        assert_eq!(parse_network(bad, "n").unwrap_err().path, "gates[0]");
    }

    #[test]
    fn type_errors_carry_the_serde_path() {
        let bad = NOT.replace("\"masses\"", "\"q_mass\": \"heavy\", \"masses\"");
        let e = parse_network(&bad, "not").unwrap_err();
        assert_eq!(e.path, "q_mass");
    }

    #[test]
    fn round_trip() {
        let spec = parse_network(NOT, "not").unwrap();
        let again = parse_network(&network_to_json(&spec), "other").unwrap();
        assert_eq!(spec, again);
    }
}
