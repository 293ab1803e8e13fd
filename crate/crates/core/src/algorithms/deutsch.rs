use std::fmt;

use rand::Rng;
use serde::Serialize;

use super::{Answer, Experiment, RunResult};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::qsim::{minus_state, Circuit, FunctionTable, RegisterLayout, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Constant,
    Balanced,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Constant => "constant",
            Verdict::Balanced => "balanced",
        })
    }
}

/// One of the four functions `f_k : {0,1} → {0,1}` with `k = k₁k₂`,
/// `k₁ = f_k(0)` and `k₂ = f_k(1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeutschFunction {
    k: BitString,
}

impl DeutschFunction {
    pub fn new(k: BitString) -> Result<Self> {
        if k.width() != 2 {
            return Err(Error::InvalidBitString(format!(
                "Deutsch index `{k}` must have 2 bits"
            )));
        }
        Ok(Self { k })
    }

    /// `f_00, f_01, f_10, f_11`.
    pub fn all() -> [DeutschFunction; 4] {
        [0, 1, 2, 3].map(|v| DeutschFunction {
            k: BitString::new(v, 2).unwrap(),
        })
    }

    pub fn k(&self) -> BitString {
        self.k
    }

    pub fn eval(&self, x: bool) -> bool {
        self.k.bit(if x { 2 } else { 1 })
    }

    pub fn verdict(&self) -> Verdict {
        if self.eval(false) == self.eval(true) {
            Verdict::Constant
        } else {
            Verdict::Balanced
        }
    }

    pub fn table(&self) -> FunctionTable {
        FunctionTable::from_fn(1, 1, |x| self.eval(x == 1) as u64).unwrap()
    }
}

/// Joint table `f(k, x) = f_k(x)` over the input `k₁k₂x`.
fn joint_table() -> FunctionTable {
    FunctionTable::from_fn(3, 1, |kx| {
        let k = kx >> 1;
        let x = kx & 1;
        (k >> (1 - x)) & 1
    })
    .unwrap()
}

/// X in `(|0⟩+|1⟩)/√2`, V in `(|0⟩−|1⟩)/√2`; one oracle call then H on X.
pub fn deutsch_setup(f: &DeutschFunction) -> Result<Experiment> {
    let layout = RegisterLayout::new(&[("X", 1), ("V", 1)])?;
    let preparation = StateVector::product(
        &layout,
        &[
            ("X", StateVector::uniform_over(&[0, 1], 1)?),
            ("V", minus_state()),
        ],
    )?;
    let circuit = Circuit::new()
        .with_table("f", f.table())
        .oracle(&["X"], "V", "f")
        .hadamard_all("X");
    Ok(Experiment {
        preparation,
        circuit,
    })
}

/// Conventional Deutsch–Jozsa on one bit: one query, X reads 0 iff constant.
pub fn deutsch_run(f: &DeutschFunction) -> Result<RunResult> {
    let exp = deutsch_setup(f)?;
    let out = exp.final_state()?;
    let dist = out.distribution(&["X"])?;
    let x = dist
        .iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(k, _)| k[0])
        .expect("nonempty distribution");
    let verdict = if x.value() == 0 {
        Verdict::Constant
    } else {
        Verdict::Balanced
    };
    Ok(RunResult {
        answer: Answer::Verdict(verdict),
        oracle_queries: exp.oracle_queries(),
        iterations: 1,
        success: verdict == f.verdict(),
    })
}

/// Registers `K:2, X:1, V:1`; K uniform over all four functions.
pub fn deutsch_extended_setup() -> Result<Experiment> {
    let layout = RegisterLayout::new(&[("K", 2), ("X", 1), ("V", 1)])?;
    let preparation = StateVector::product(
        &layout,
        &[
            ("K", StateVector::uniform_over(&[0, 1, 2, 3], 2)?),
            ("X", StateVector::uniform_over(&[0, 1], 1)?),
            ("V", minus_state()),
        ],
    )?;
    let circuit = Circuit::new()
        .with_table("f", joint_table())
        .oracle(&["K", "X"], "V", "f")
        .hadamard_all("X");
    Ok(Experiment {
        preparation,
        circuit,
    })
}

#[derive(Debug, Clone)]
pub struct DeutschExtendedOutcome {
    pub k: BitString,
    pub verdict: Verdict,
    /// Whether the verdict read from X agrees with the function drawn in K.
    pub consistent: bool,
    pub result: RunResult,
}

/// Runs the extended algorithm, then measures K followed by X.
pub fn deutsch_extended_run<R: Rng + ?Sized>(rng: &mut R) -> Result<DeutschExtendedOutcome> {
    let exp = deutsch_extended_setup()?;
    let out = exp.final_state()?;
    let k = out.measure_register("K", rng)?;
    let x = k.collapsed.measure_register("X", rng)?;
    let verdict = if x.value.value() == 0 {
        Verdict::Constant
    } else {
        Verdict::Balanced
    };
    let consistent = verdict == DeutschFunction::new(k.value)?.verdict();
    Ok(DeutschExtendedOutcome {
        k: k.value,
        verdict,
        consistent,
        result: RunResult {
            answer: Answer::Verdict(verdict),
            oracle_queries: exp.oracle_queries(),
            iterations: 1,
            success: consistent,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn function_table_columns() {
        let rows: Vec<(bool, bool)> = DeutschFunction::all()
            .iter()
            .map(|f| (f.eval(false), f.eval(true)))
            .collect();
        assert_eq!(
            rows,
            vec![(false, false), (false, true), (true, false), (true, true)]
        );
    }

    #[test]
    fn classifies_all_four_with_one_query() {
        for f in DeutschFunction::all() {
            let r = deutsch_run(&f).unwrap();
            assert_eq!(r.oracle_queries, 1);
            assert!(r.success, "f_{}", f.k());
        }
        let f01 = DeutschFunction::new("01".parse().unwrap()).unwrap();
        assert_eq!(
            deutsch_run(&f01).unwrap().answer,
            Answer::Verdict(Verdict::Balanced)
        );
        let f11 = DeutschFunction::new("11".parse().unwrap()).unwrap();
        assert_eq!(
            deutsch_run(&f11).unwrap().answer,
            Answer::Verdict(Verdict::Constant)
        );
    }

    #[test]
    fn rejects_wrong_width() {
        assert!(DeutschFunction::new("1".parse().unwrap()).is_err());
    }
}
