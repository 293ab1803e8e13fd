use std::f64::consts::PI;

use rand::Rng;

use super::{Answer, Experiment, RunResult};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::qsim::{minus_state, Circuit, FunctionTable, RegisterLayout, StateVector};

pub const MAX_GROVER_N: usize = 12;
pub const MAX_GROVER_EXTENDED_N: usize = 8;

/// Database search over `N = 2ⁿ` drawers with the ball in drawer `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroverInstance {
    pub n: usize,
    pub k: BitString,
}

impl GroverInstance {
    pub fn new(n: usize, k: BitString) -> Result<Self> {
        if n == 0 || n > MAX_GROVER_N {
            return Err(Error::InvalidSize(format!(
                "Grover n = {n} outside 1..={MAX_GROVER_N}"
            )));
        }
        if k.width() != n {
            return Err(Error::InvalidBitString(format!(
                "k = `{k}` is not {n} bits wide"
            )));
        }
        Ok(Self { n, k })
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        if n == 0 || n > MAX_GROVER_N {
            return Err(Error::InvalidSize(format!(
                "Grover n = {n} outside 1..={MAX_GROVER_N}"
            )));
        }
        Self::new(n, BitString::new(rng.gen_range(0..1u64 << n), n)?)
    }
}

/// Oracle-plus-diffusion rounds for an `n`-qubit search:
/// `⌊π / (4·arcsin 2^{−n/2})⌋`, the count maximizing the exact success
/// probability (1 for n = 2, 3 for n = 4, 12 for n = 8).
pub fn grover_iterations(n: usize) -> usize {
    assert!(n >= 1, "grover_iterations needs n >= 1");
    let theta = (0.5f64).powf(n as f64 / 2.0).asin();
    ((PI / (4.0 * theta)).floor() as usize).max(1)
}

fn delta_table(k: BitString) -> FunctionTable {
    FunctionTable::from_fn(k.width(), 1, |x| (x == k.value()) as u64).unwrap()
}

/// `δ(k, x)` over the joint input `k‖x`.
fn joint_delta_table(n: usize) -> FunctionTable {
    let mask = (1u64 << n) - 1;
    FunctionTable::from_fn(2 * n, 1, |kx| ((kx >> n) == (kx & mask)) as u64).unwrap()
}

fn uniform(width: usize) -> Result<Vec<num_complex::Complex64>> {
    StateVector::uniform_over(&(0..1u64 << width).collect::<Vec<_>>(), width)
}

fn rounds(mut circuit: Circuit, inputs: &[&str], iterations: usize) -> Circuit {
    for _ in 0..iterations {
        circuit = circuit.oracle(inputs, "V", "delta").diffusion("X");
    }
    circuit
}

/// Uniform X with V in `(|0⟩−|1⟩)/√2`, then `grover_iterations(n)` rounds.
pub fn grover_setup(inst: &GroverInstance) -> Result<Experiment> {
    let layout = RegisterLayout::new(&[("X", inst.n), ("V", 1)])?;
    let preparation =
        StateVector::product(&layout, &[("X", uniform(inst.n)?), ("V", minus_state())])?;
    let circuit = rounds(
        Circuit::new().with_table("delta", delta_table(inst.k)),
        &["X"],
        grover_iterations(inst.n),
    );
    Ok(Experiment {
        preparation,
        circuit,
    })
}

/// Exact probability that measuring X yields `k`.
pub fn grover_success_probability(inst: &GroverInstance) -> Result<f64> {
    let out = grover_setup(inst)?.final_state()?;
    Ok(out.distribution(&["X"])?.get(&[inst.k]))
}

pub fn grover_run<R: Rng + ?Sized>(inst: &GroverInstance, rng: &mut R) -> Result<RunResult> {
    let exp = grover_setup(inst)?;
    let out = exp.final_state()?;
    let x = out.measure_register("X", rng)?.value;
    Ok(RunResult {
        answer: Answer::Bits(x),
        oracle_queries: exp.oracle_queries(),
        iterations: grover_iterations(inst.n) as u64,
        success: x == inst.k,
    })
}

/// Registers `K:n, X:n, V:1`, K and X uniform, joint oracle `δ(k, x)`.
pub fn grover_extended_setup(n: usize) -> Result<Experiment> {
    if n == 0 || n > MAX_GROVER_EXTENDED_N {
        return Err(Error::InvalidSize(format!(
            "extended Grover n = {n} outside 1..={MAX_GROVER_EXTENDED_N}"
        )));
    }
    let layout = RegisterLayout::new(&[("K", n), ("X", n), ("V", 1)])?;
    let preparation = StateVector::product(
        &layout,
        &[("K", uniform(n)?), ("X", uniform(n)?), ("V", minus_state())],
    )?;
    let circuit = rounds(
        Circuit::new().with_table("delta", joint_delta_table(n)),
        &["K", "X"],
        grover_iterations(n),
    );
    Ok(Experiment {
        preparation,
        circuit,
    })
}

#[derive(Debug, Clone)]
pub struct GroverExtendedOutcome {
    pub k: BitString,
    pub x: BitString,
    pub result: RunResult,
    /// Final state collapsed on the observed `(k, x)`.
    pub collapsed: StateVector,
}

/// Runs the extended algorithm and reads K and X.
pub fn grover_extended_run<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
) -> Result<GroverExtendedOutcome> {
    let exp = grover_extended_setup(n)?;
    let out = exp.final_state()?;
    let k = out.measure_register("K", rng)?;
    let x = k.collapsed.measure_register("X", rng)?;
    Ok(GroverExtendedOutcome {
        k: k.value,
        x: x.value,
        result: RunResult {
            answer: Answer::Bits(x.value),
            oracle_queries: exp.oracle_queries(),
            iterations: grover_iterations(n) as u64,
            success: x.value == k.value,
        },
        collapsed: x.collapsed,
    })
}

#[derive(Debug, Clone)]
pub struct RowGameOutcome {
    pub instance: GroverInstance,
    /// The low `n/2` bits of `k`, given in advance.
    pub known_column: BitString,
    pub result: RunResult,
}

/// Arranges the `2ⁿ` drawers as a `2^{n/2} × 2^{n/2}` matrix, `k = row‖column`.
/// With the column known, Grover searches the `2^{n/2}` rows only, querying
/// the full `δ(k, ·)` oracle restricted to that column.
pub fn grover_row_game_for<R: Rng + ?Sized>(
    inst: &GroverInstance,
    rng: &mut R,
) -> Result<RowGameOutcome> {
    let n = inst.n;
    if !n.is_multiple_of(2) {
        return Err(Error::InvalidSize(format!(
            "row game needs even n, got {n}"
        )));
    }
    let half = n / 2;
    let column = BitString::new(inst.k.value() & ((1 << half) - 1), half)?;
    let full = delta_table(inst.k);
    let rows = FunctionTable::from_fn(half, 1, |row| full.eval((row << half) | column.value()))?;

    let layout = RegisterLayout::new(&[("X", half), ("V", 1)])?;
    let preparation =
        StateVector::product(&layout, &[("X", uniform(half)?), ("V", minus_state())])?;
    let exp = Experiment {
        preparation,
        circuit: rounds(
            Circuit::new().with_table("delta", rows),
            &["X"],
            grover_iterations(half),
        ),
    };
    let row = exp.final_state()?.measure_register("X", rng)?.value;
    let answer = row.concat(&column)?;
    Ok(RowGameOutcome {
        instance: *inst,
        known_column: column,
        result: RunResult {
            answer: Answer::Bits(answer),
            oracle_queries: exp.oracle_queries(),
            iterations: grover_iterations(half) as u64,
            success: answer == inst.k,
        },
    })
}

/// Row game on a uniformly random drawer.
pub fn grover_row_game<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<RowGameOutcome> {
    let inst = GroverInstance::random(n, rng)?;
    grover_row_game_for(&inst, rng)
}
