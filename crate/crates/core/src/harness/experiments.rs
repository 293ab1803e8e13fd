//! The experiment battery behind the 50% rule and the backdating claim.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::classical::{
    classical_search, deutsch_reference, simon_reference, AdvanceKnowledge, KnownBit,
};
use super::exact::simon_success_prob_exact;
use super::report::{mean_and_se, ExperimentReport};
use crate::algorithms::{
    deutsch_run, grover_extended_setup, grover_setup, grover_success_probability, Answer,
    DeutschFunction, Gf2Solution, GroverInstance, SimonInstance, SimonSampler,
    MAX_GROVER_EXTENDED_N, MAX_GROVER_N, MAX_SIMON_N,
};
use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::qsim::{backdate, StateVector};
use crate::trials::{derive_seed, run_trials, trial_rng};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HarnessConfig {
    pub seed: u64,
    pub trials: u64,
    /// Accepted range of quantum/classical cost ratios.
    pub ratio_band: (f64, f64),
}

impl Default for HarnessConfig {
    fn default() -> Self {
        Self {
            seed: crate::trials::DEFAULT_SEED,
            trials: 10_000,
            ratio_band: (0.5, 4.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Problem {
    Grover,
    Deutsch,
    Simon,
}

impl Problem {
    pub fn default_sizes(self) -> Vec<usize> {
        match self {
            Problem::Grover => vec![4, 6, 8, 10],
            Problem::Deutsch => vec![1],
            Problem::Simon => vec![2, 3, 4, 5, 6, 7, 8],
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Problem::Grover => "grover",
            Problem::Deutsch => "deutsch",
            Problem::Simon => "simon",
        })
    }
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "grover" => Ok(Problem::Grover),
            "deutsch" => Ok(Problem::Deutsch),
            "simon" => Ok(Problem::Simon),
            other => Err(Error::InvalidSize(format!("unknown problem `{other}`"))),
        }
    }
}

/// Pairs each quantum cost with the cost of a classical algorithm that knows
/// half of the answer in advance.
pub fn rule50_report(
    problem: Problem,
    sizes: &[usize],
    config: &HarnessConfig,
) -> Result<Vec<ExperimentReport>> {
    if config.trials == 0 {
        return Err(Error::InvalidSize("trials must be positive".into()));
    }
    match problem {
        Problem::Grover => sizes.iter().try_fold(Vec::new(), |mut acc, &n| {
            acc.extend(grover_rule50(n, config)?);
            Ok(acc)
        }),
        Problem::Deutsch => deutsch_rule50(config),
        Problem::Simon => sizes.iter().try_fold(Vec::new(), |mut acc, &n| {
            acc.extend(simon_rule50(n, config)?);
            Ok(acc)
        }),
    }
}

fn grover_rule50(n: usize, config: &HarnessConfig) -> Result<Vec<ExperimentReport>> {
    if n < 2 || !n.is_multiple_of(2) || n > MAX_GROVER_N {
        return Err(Error::InvalidSize(format!(
            "Grover 50% rule needs even n in 2..={MAX_GROVER_N}, got {n}"
        )));
    }
    let quantum =
        grover_setup(&GroverInstance::new(n, BitString::zeros(n)?)?)?.oracle_queries() as f64;
    let seed = derive_seed(config.seed, n as u64);
    let counts = run_trials(seed, config.trials, |_, rng| {
        let inst = GroverInstance::random(n, rng).expect("n validated");
        let adv = AdvanceKnowledge::random(inst.k, n / 2, rng);
        classical_search(n, inst.k, &adv, rng).expect("knowledge is consistent") as f64
    });
    let (mean, se) = mean_and_se(&counts);
    let expected = ((1u64 << (n / 2)) as f64 + 1.0) / 2.0;
    let (lo, hi) = config.ratio_band;
    Ok(vec![
        ExperimentReport::band(
            format!("grover n={n}: quantum/classical-50% query ratio"),
            1.0,
            quantum / mean,
            lo,
            hi,
        )
        .with_run(seed, config.trials)
        .with_note(format!(
            "quantum {quantum} queries, classical mean {mean:.6}"
        )),
        ExperimentReport::abs(
            format!("grover n={n}: classical mean with n/2 bits known"),
            expected,
            mean,
            3.0 * se,
        )
        .with_run(seed, config.trials)
        .with_note("tolerance is 3 standard errors"),
    ])
}

fn deutsch_rule50(config: &HarnessConfig) -> Result<Vec<ExperimentReport>> {
    let mut quantum = 0u64;
    let mut reference = 0u64;
    let mut agree = true;
    let mut cases = 0u64;
    for f in DeutschFunction::all() {
        let q = deutsch_run(&f)?;
        for known in [KnownBit::First, KnownBit::Second] {
            let (verdict, r) = deutsch_reference(&f, known);
            quantum += q.oracle_queries;
            reference += r;
            agree &= q.answer == Answer::Verdict(verdict);
            cases += 1;
        }
    }
    Ok(vec![
        ExperimentReport::abs(
            "deutsch: quantum/reference query ratio",
            1.0,
            quantum as f64 / reference as f64,
            0.0,
        )
        .with_run(config.seed, cases),
        ExperimentReport::abs(
            "deutsch: reference verdict agrees with quantum",
            1.0,
            agree as u8 as f64,
            0.0,
        )
        .with_run(config.seed, cases),
    ])
}

fn simon_rule50(n: usize, config: &HarnessConfig) -> Result<Vec<ExperimentReport>> {
    if !(2..=MAX_SIMON_N.min(8)).contains(&n) {
        return Err(Error::InvalidSize(format!(
            "Simon 50% rule needs n in 2..=8, got {n}"
        )));
    }
    let samplers = (1..1u64 << n)
        .map(|k| SimonSampler::new(&SimonInstance::canonical(n, BitString::new(k, n)?)?))
        .collect::<Result<Vec<_>>>()?;
    let (m_quantum, m_reference) = (6 * n, 3 * n);
    let seed = derive_seed(config.seed, 0x5100 + n as u64);
    let runs = run_trials(seed, config.trials, |_, rng| {
        let k = rand::Rng::gen_range(rng, 1..1u64 << n);
        let (samples, result) = samplers[k as usize - 1]
            .run(m_quantum, rng)
            .expect("valid sampler");
        let reference = simon_reference(&samples[..m_reference], n).expect("samples are n bits");
        let reference_ok = reference == Gf2Solution::Unique(BitString::new(k, n).expect("fits"));
        (result.success, reference_ok)
    });
    let t = config.trials as f64;
    let q_rate = runs.iter().filter(|r| r.0).count() as f64 / t;
    let r_rate = runs.iter().filter(|r| r.1).count() as f64 / t;
    let q_exact = simon_success_prob_exact(n, m_quantum);
    let r_exact = simon_success_prob_exact(n, m_reference);
    let binomial_se = |p: f64| (p * (1.0 - p) / t).sqrt();
    let (lo, hi) = config.ratio_band;
    Ok(vec![
        ExperimentReport::lower_bound(
            format!("simon n={n}: quantum success with 6n samples"),
            8.0 / 9.0,
            q_rate,
            3.0 * binomial_se(8.0 / 9.0),
        )
        .with_run(seed, config.trials)
        .with_note(format!("exact law {q_exact:.12}")),
        ExperimentReport::lower_bound(
            format!("simon n={n}: reference success with the first 3n samples"),
            2.0 / 3.0,
            r_rate,
            3.0 * binomial_se(2.0 / 3.0),
        )
        .with_run(seed, config.trials)
        .with_note(format!("exact law {r_exact:.12}")),
        ExperimentReport::abs(
            format!("simon n={n}: quantum success vs exact law"),
            q_exact,
            q_rate,
            3.0 * binomial_se(q_exact).max(1.0 / t),
        )
        .with_run(seed, config.trials),
        ExperimentReport::abs(
            format!("simon n={n}: reference success vs exact law"),
            r_exact,
            r_rate,
            3.0 * binomial_se(r_exact).max(1.0 / t),
        )
        .with_run(seed, config.trials),
        ExperimentReport::band(
            format!("simon n={n}: reference/quantum success ratio"),
            1.0,
            r_rate / q_rate,
            lo,
            hi,
        )
        .with_run(seed, config.trials),
    ])
}

/// Fidelity of the t = 0 reduced K state with `target`, after backdating
/// `final_state` through the extended Grover circuit.
fn backdated_k_fidelity(final_state: &StateVector, n: usize, target: &[u64]) -> Result<f64> {
    let exp = grover_extended_setup(n)?;
    let traj = backdate(final_state, &exp.circuit)?;
    let psi = StateVector::uniform_over(target, n)?;
    Ok(traj
        .initial()
        .reduced_density("K")?
        .fidelity_with_pure(&psi))
}

/// Tolerance for backdated fidelities: exact searches reach 1 to rounding,
/// otherwise the residual failure amplitude bounds the deficit.
fn backdate_tolerance(n: usize) -> Result<f64> {
    let p = grover_success_probability(&GroverInstance::new(n, BitString::zeros(n)?)?)?;
    Ok((1.0 - p).max(0.0) + 1e-9)
}

/// Three views of backdating in the extended Grover algorithm: conditioning
/// on the last X bit, reading K and X fully, and no reading at all.
pub fn backdate_report(n: usize, config: &HarnessConfig) -> Result<Vec<ExperimentReport>> {
    if !(2..=MAX_GROVER_EXTENDED_N).contains(&n) {
        return Err(Error::InvalidSize(format!(
            "backdating needs n in 2..={MAX_GROVER_EXTENDED_N}, got {n}"
        )));
    }
    let exp = grover_extended_setup(n)?;
    let out = exp.final_state()?;
    let tol = backdate_tolerance(n)?;

    // Player two reads the last bit of X and finds 1.
    let (_, conditioned) = out
        .project_bit("X", n, true)?
        .expect("bit value 1 has support");
    let column: Vec<u64> = (0..1u64 << n).filter(|k| k & 1 == 1).collect();
    let f_bit = backdated_k_fidelity(&conditioned, n, &column)?;

    let mut rng = trial_rng(config.seed, 0);
    let k = out.measure_register("K", &mut rng)?;
    let x = k.collapsed.measure_register("X", &mut rng)?;
    let f_full = backdated_k_fidelity(&x.collapsed, n, &[k.value.value()])?;

    let traj = backdate(&out, &exp.circuit)?;
    let f_none = traj.initial().fidelity(&exp.preparation);

    Ok(vec![
        ExperimentReport::abs(
            format!("backdate n={n}: K after X bit {n} = 1"),
            1.0,
            f_bit,
            tol,
        )
        .with_run(config.seed, 1)
        .with_note("target: uniform superposition of k with last bit 1"),
        ExperimentReport::abs(
            format!("backdate n={n}: K after full reading"),
            1.0,
            f_full,
            1e-9,
        )
        .with_run(config.seed, 1)
        .with_note(format!("read k = {}, x = {}", k.value, x.value)),
        ExperimentReport::abs(
            format!("backdate n={n}: preparation recovered"),
            1.0,
            f_none,
            1e-9,
        )
        .with_run(config.seed, 1),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::grover_iterations;

    fn quick() -> HarnessConfig {
        HarnessConfig {
            trials: 400,
            ..HarnessConfig::default()
        }
    }

    #[test]
    fn deutsch_ratio_is_one() {
        let reports = rule50_report(Problem::Deutsch, &[], &quick()).unwrap();
        assert_eq!(reports[0].measured, 1.0);
        assert!(reports.iter().all(|r| r.passed()));
    }

    #[test]
    fn backdate_n2_is_exact() {
        let reports = backdate_report(2, &quick()).unwrap();
        for r in &reports {
            assert!((r.measured - 1.0).abs() < 1e-9, "{r:?}");
            assert!(r.passed());
        }
    }

    #[test]
    fn grover_quantum_costs() {
        assert_eq!(grover_iterations(4), 3);
        let reports = rule50_report(Problem::Grover, &[4], &quick()).unwrap();
        assert_eq!(reports.len(), 2);
        assert!(reports[0].passed(), "{:?}", reports[0]);
    }

    #[test]
    fn bad_sizes_rejected() {
        assert!(rule50_report(Problem::Grover, &[5], &quick()).is_err());
        assert!(rule50_report(Problem::Simon, &[1], &quick()).is_err());
        assert!(backdate_report(1, &quick()).is_err());
    }

    #[test]
    fn problem_parses() {
        assert_eq!("Simon".parse::<Problem>().unwrap(), Problem::Simon);
        assert!("shor".parse::<Problem>().is_err());
    }
}
