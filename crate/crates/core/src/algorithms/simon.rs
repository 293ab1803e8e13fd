use rand::seq::SliceRandom;
use rand::Rng;

use super::gf2::{gf2_solve, Gf2Solution};
use super::{Answer, Experiment, RunResult};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::qsim::{Circuit, Distribution, FunctionTable, RegisterLayout, StateVector};

/// Largest n for the simulated algorithm (X:n plus F:n−1 qubits).
pub const MAX_SIMON_N: usize = 10;
/// Largest n for the extended algorithm (K, X and F registers).
pub const MAX_SIMON_EXTENDED_N: usize = 6;
/// Largest n for instances used only by classical searches.
pub const MAX_SIMON_CLASSICAL_N: usize = 16;

/// A periodic function `f_k : {0,1}ⁿ → {0,1}^{n−1}` with
/// `f_k(x) = f_k(y)` iff `x = y` or `x = y ⊕ k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimonInstance {
    n: usize,
    k: BitString,
    table: FunctionTable,
}

fn check_size(n: usize, max: usize) -> Result<()> {
    if !(2..=max).contains(&n) {
        return Err(Error::InvalidSize(format!(
            "Simon n = {n} outside 2..={max}"
        )));
    }
    Ok(())
}

impl SimonInstance {
    /// Assigns `order[c]` to the c-th coset `{x, x⊕k}` met scanning x upward.
    fn with_value_order(n: usize, k: BitString, order: &[u64]) -> Result<Self> {
        check_size(n, MAX_SIMON_CLASSICAL_N)?;
        if k.width() != n {
            return Err(Error::InvalidBitString(format!(
                "k = `{k}` is not {n} bits wide"
            )));
        }
        if k.is_zero() {
            return Err(Error::InvalidHiddenString);
        }
        let mut values = vec![u64::MAX; 1 << n];
        let mut next = 0;
        for x in 0..1u64 << n {
            if values[x as usize] == u64::MAX {
                values[x as usize] = order[next];
                values[(x ^ k.value()) as usize] = order[next];
                next += 1;
            }
        }
        let table = FunctionTable::new(n, n - 1, values)?;
        Ok(Self { n, k, table })
    }

    /// Values `0, 1, 2, …` in order of first appearance; for n = 2 this is
    /// the textbook table (`f_10 = 0, 1, 0, 1`).
    pub fn canonical(n: usize, k: BitString) -> Result<Self> {
        let order: Vec<u64> = (0..1u64 << (n.max(1) - 1)).collect();
        Self::with_value_order(n, k, &order)
    }

    /// Uniformly random permutation of the function values.
    pub fn random<R: Rng + ?Sized>(n: usize, k: BitString, rng: &mut R) -> Result<Self> {
        let mut order: Vec<u64> = (0..1u64 << (n.max(1) - 1)).collect();
        order.shuffle(rng);
        Self::with_value_order(n, k, &order)
    }

    /// Random nonzero `k` and random values.
    pub fn random_instance<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        check_size(n, MAX_SIMON_CLASSICAL_N)?;
        let k = BitString::new(rng.gen_range(1..1u64 << n), n)?;
        Self::random(n, k, rng)
    }

    /// Validates a caller-supplied table by full scan.
    pub fn from_table(n: usize, k: BitString, table: FunctionTable) -> Result<Self> {
        check_size(n, MAX_SIMON_CLASSICAL_N)?;
        if k.is_zero() {
            return Err(Error::InvalidHiddenString);
        }
        if table.input_width() != n || k.width() != n {
            return Err(Error::InvalidBitString(format!(
                "table or k is not {n} bits wide"
            )));
        }
        let inst = Self { n, k, table };
        if !inst.is_periodic() {
            return Err(Error::IncompleteOracle(format!(
                "table is not periodic with hidden string {k}"
            )));
        }
        Ok(inst)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> BitString {
        self.k
    }

    pub fn table(&self) -> &FunctionTable {
        &self.table
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.table.eval(x)
    }

    /// Full-scan check of `f(x) = f(y) ⇔ x = y ∨ x = y ⊕ k`.
    pub fn is_periodic(&self) -> bool {
        let k = self.k.value();
        let size = 1u64 << self.n;
        if (0..size).any(|x| self.eval(x) != self.eval(x ^ k)) {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        (0..size)
            .filter(|&x| x < (x ^ k))
            .all(|x| seen.insert(self.eval(x)))
    }
}

/// Registers `X:n, F:n−1`; uniform X, blank F, oracle, then H on X.
pub fn simon_setup(inst: &SimonInstance) -> Result<Experiment> {
    check_size(inst.n, MAX_SIMON_N)?;
    let n = inst.n;
    let layout = RegisterLayout::new(&[("X", n), ("F", n - 1)])?;
    let all: Vec<u64> = (0..1u64 << n).collect();
    let preparation = StateVector::product(&layout, &[("X", StateVector::uniform_over(&all, n)?)])?;
    let circuit = Circuit::new()
        .with_table("f", inst.table.clone())
        .oracle(&["X"], "F", "f")
        .hadamard_all("X");
    Ok(Experiment {
        preparation,
        circuit,
    })
}

/// Repeated runs of one instance. The unitary part is deterministic, so the
/// pre-measurement state is simulated once and each sample is a fresh
/// Born-rule reading of X from it; every sample counts as one oracle query.
#[derive(Debug, Clone)]
pub struct SimonSampler {
    k: BitString,
    n: usize,
    x_distribution: Distribution,
}

impl SimonSampler {
    pub fn new(inst: &SimonInstance) -> Result<Self> {
        let out = simon_setup(inst)?.final_state()?;
        Ok(Self {
            k: inst.k,
            n: inst.n,
            x_distribution: out.distribution(&["X"])?,
        })
    }

    pub fn x_distribution(&self) -> &Distribution {
        &self.x_distribution
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BitString {
        self.x_distribution.sample(rng)[0]
    }

    pub fn run<R: Rng + ?Sized>(
        &self,
        iterations: usize,
        rng: &mut R,
    ) -> Result<(Vec<BitString>, RunResult)> {
        let samples: Vec<BitString> = (0..iterations).map(|_| self.sample(rng)).collect();
        let result = score(self.k, self.n, &samples)?;
        Ok((samples, result))
    }
}

fn score(k: BitString, n: usize, samples: &[BitString]) -> Result<RunResult> {
    let answer = match gf2_solve(samples, n)? {
        Gf2Solution::Unique(found) => Answer::Bits(found),
        Gf2Solution::Insufficient { .. } => Answer::Insufficient,
    };
    Ok(RunResult {
        answer,
        oracle_queries: samples.len() as u64,
        iterations: samples.len() as u64,
        success: answer == Answer::Bits(k),
    })
}

/// One full quantum iteration: prepare, query, transform, read X.
pub fn simon_sample_h<R: Rng + ?Sized>(inst: &SimonInstance, rng: &mut R) -> Result<BitString> {
    let out = simon_setup(inst)?.final_state()?;
    Ok(out.measure_register("X", rng)?.value)
}

/// Collects `iterations` samples and solves for `k` over GF(2).
pub fn simon_run<R: Rng + ?Sized>(
    inst: &SimonInstance,
    iterations: usize,
    rng: &mut R,
) -> Result<RunResult> {
    if iterations == 0 {
        return Err(Error::InvalidSize(
            "Simon needs at least one iteration".into(),
        ));
    }
    Ok(SimonSampler::new(inst)?.run(iterations, rng)?.1)
}

/// Joint table `f(k, x) = f_k(x)` over `k‖x` using canonical per-`k`
/// tables; the excluded `k = 0` row maps to 0.
pub fn simon_family_table(n: usize) -> Result<FunctionTable> {
    check_size(n, MAX_SIMON_EXTENDED_N)?;
    let mut values = vec![0u64; 1 << (2 * n)];
    for k in 1..1u64 << n {
        let inst = SimonInstance::canonical(n, BitString::new(k, n)?)?;
        for x in 0..1u64 << n {
            values[((k << n) | x) as usize] = inst.eval(x);
        }
    }
    FunctionTable::new(2 * n, n - 1, values)
}

/// Registers `K:n, X:n, F:n−1`; K uniform over the `2ⁿ − 1` nonzero
/// strings, X uniform, joint oracle then H on X.
pub fn simon_extended_setup(n: usize) -> Result<Experiment> {
    check_size(n, MAX_SIMON_EXTENDED_N)?;
    let layout = RegisterLayout::new(&[("K", n), ("X", n), ("F", n - 1)])?;
    let nonzero: Vec<u64> = (1..1u64 << n).collect();
    let all: Vec<u64> = (0..1u64 << n).collect();
    let preparation = StateVector::product(
        &layout,
        &[
            ("K", StateVector::uniform_over(&nonzero, n)?),
            ("X", StateVector::uniform_over(&all, n)?),
        ],
    )?;
    let circuit = Circuit::new()
        .with_table("f", simon_family_table(n)?)
        .oracle(&["K", "X"], "F", "f")
        .hadamard_all("X");
    Ok(Experiment {
        preparation,
        circuit,
    })
}

#[derive(Debug, Clone)]
pub struct SimonExtendedOutcome {
    pub k: BitString,
    /// Every X reading, the first from the joint pass.
    pub samples: Vec<BitString>,
    pub result: RunResult,
    /// The (K, X, F) state right after K was read, before X was read.
    pub after_k: StateVector,
}

/// Joint pass, read K, read the first h, then `iterations − 1` runs of the
/// conventional algorithm for the observed k.
pub fn simon_extended_run<R: Rng + ?Sized>(
    n: usize,
    iterations: usize,
    rng: &mut R,
) -> Result<SimonExtendedOutcome> {
    if iterations == 0 {
        return Err(Error::InvalidSize(
            "Simon needs at least one iteration".into(),
        ));
    }
    let exp = simon_extended_setup(n)?;
    let out = exp.final_state()?;
    let k = out.measure_register("K", rng)?;
    let first = k.collapsed.measure_register("X", rng)?.value;
    let sampler = SimonSampler::new(&SimonInstance::canonical(n, k.value)?)?;
    let mut samples = vec![first];
    samples.extend((1..iterations).map(|_| sampler.sample(rng)));
    let result = score(k.value, n, &samples)?;
    Ok(SimonExtendedOutcome {
        k: k.value,
        samples,
        result,
        after_k: k.collapsed,
    })
}
