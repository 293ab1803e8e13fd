use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use serde::Serialize;

use super::network::{Assignment, PorNetwork};
use super::solve::{enumerate_solutions, selection_of};
use crate::error::{Error, Result};

/// A POR network with a mass for every part `X_{i,j}` and for the input part `Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct MachineSpec {
    network: PorNetwork,
    part_masses: Vec<[f64; 3]>,
    q_mass: f64,
}

impl MachineSpec {
    pub fn new(network: PorNetwork, part_masses: Vec<[f64; 3]>, q_mass: f64) -> Result<Self> {
        if part_masses.len() != network.num_gates() {
            return Err(Error::InvalidMasses(format!(
                "{} mass triples for {} gates",
                part_masses.len(),
                network.num_gates()
            )));
        }
        if !q_mass.is_finite() || q_mass < 0.0 {
            return Err(Error::InvalidMasses(format!("q_mass = {q_mass}")));
        }
        for (i, m) in part_masses.iter().enumerate() {
            if m.iter().any(|x| !x.is_finite() || *x < 0.0) {
                return Err(Error::InvalidMasses(format!(
                    "gate {i}: masses {m:?} must be finite and >= 0"
                )));
            }
            if m.iter().all(|x| *x == 0.0) {
                return Err(Error::InvalidMasses(format!(
                    "gate {i}: all three part masses are 0"
                )));
            }
        }
        Ok(Self {
            network,
            part_masses,
            q_mass,
        })
    }

    /// Unit masses everywhere, `q_mass = 0`.
    pub fn unit(network: PorNetwork) -> Self {
        let n = network.num_gates();
        Self {
            network,
            part_masses: vec![[1.0; 3]; n],
            q_mass: 0.0,
        }
    }

    pub fn network(&self) -> &PorNetwork {
        &self.network
    }

    pub fn part_masses(&self) -> &[[f64; 3]] {
        &self.part_masses
    }

    pub fn q_mass(&self) -> f64 {
        self.q_mass
    }

    /// `q_mass + Σᵢ mass of the part that moves in gate i`.
    pub fn motion_mass(&self, assignment: &Assignment) -> Option<f64> {
        let sel = selection_of(&self.network, assignment)?;
        Some(
            self.q_mass
                + sel
                    .chosen
                    .iter()
                    .zip(&self.part_masses)
                    .map(|(&p, m)| m[p])
                    .sum::<f64>(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolutionDistribution {
    pub entries: Vec<(Assignment, f64)>,
}

impl SolutionDistribution {
    pub fn probability(&self, assignment: &Assignment) -> f64 {
        self.entries
            .iter()
            .find(|(a, _)| a == assignment)
            .map(|(_, p)| *p)
            .unwrap_or(0.0)
    }
}

/// Probability of each solution proportional to the mass that moves with it.
pub fn exact_distribution(spec: &MachineSpec) -> Result<SolutionDistribution> {
    let solutions = enumerate_solutions(&spec.network);
    if solutions.is_empty() {
        return Err(Error::Jammed(spec.network.name().to_string()));
    }
    let weights: Vec<f64> = solutions
        .iter()
        .map(|a| {
            spec.motion_mass(a)
                .expect("enumerated solutions satisfy the network")
        })
        .collect();
    let z: f64 = weights.iter().sum();
    if z <= 0.0 {
        return Err(Error::InvalidMasses(
            "every solution has zero moving mass".into(),
        ));
    }
    Ok(SolutionDistribution {
        entries: solutions
            .into_iter()
            .zip(weights)
            .map(|(a, w)| (a, w / z))
            .collect(),
    })
}

/// Precomputed sampler over the solutions of one machine.
#[derive(Debug, Clone)]
pub struct MachineSampler {
    distribution: SolutionDistribution,
    index: WeightedIndex<f64>,
}

impl MachineSampler {
    pub fn new(spec: &MachineSpec) -> Result<Self> {
        let distribution = exact_distribution(spec)?;
        let index = WeightedIndex::new(distribution.entries.iter().map(|(_, p)| *p))
            .map_err(|e| Error::InvalidMasses(e.to_string()))?;
        Ok(Self {
            distribution,
            index,
        })
    }

    pub fn distribution(&self) -> &SolutionDistribution {
        &self.distribution
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> &Assignment {
        &self.distribution.entries[self.index.sample(rng)].0
    }
}

/// One nondeterministic motion of the machine.
pub fn sample_solution<R: Rng + ?Sized>(spec: &MachineSpec, rng: &mut R) -> Result<Assignment> {
    Ok(MachineSampler::new(spec)?.sample(rng).clone())
}
