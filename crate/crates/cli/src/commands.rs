use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use rand::Rng;
use relq_core::algorithms::{
    deutsch_extended_run, deutsch_run, grover_extended_setup, grover_iterations,
    grover_row_game_for, grover_setup, simon_extended_run, DeutschFunction, GroverInstance,
    SimonInstance, SimonSampler,
};
use relq_core::harness::{
    backdate_report, rule50_report, simon_success_prob_exact, ExperimentReport, HarnessConfig,
    Problem,
};
use relq_core::machine::{not_machine, not_machine_probability, MachineSampler};
use relq_core::qsim::Distribution;
use relq_core::trials::{derive_seed, run_trials};
use relq_core::BitString;
use serde::Serialize;
use serde_json::Value;

use crate::network_io::load_network;
use crate::output::{rows_of, Output};
use crate::{CliError, Command};

pub struct Context {
    pub seed: u64,
    pub timings: bool,
    pub started: Instant,
}

impl Context {
    fn runtime_ms(&self) -> Option<u64> {
        self.timings
            .then(|| self.started.elapsed().as_millis() as u64)
    }
}

pub fn dispatch(cmd: &Command, ctx: &Context) -> Result<Output, CliError> {
    match cmd {
        Command::Deutsch(a) => deutsch(a, ctx),
        Command::Grover(a) => grover(a, ctx),
        Command::Simon(a) => simon(a, ctx),
        Command::Machine(a) => machine(a, ctx),
        Command::NotMachine(a) => not_machine_cmd(a, ctx),
        Command::Rule50(a) => rule50(a, ctx),
        Command::Backdate(a) => backdate(a, ctx),
    }
}

fn parse_k(s: &str, n: usize) -> Result<BitString, CliError> {
    BitString::parse_with_width(s, n).map_err(|e| CliError::Usage(format!("--k: {e}")))
}

fn positive(trials: u64) -> Result<u64, CliError> {
    if trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    Ok(trials)
}

fn rate(hits: usize, trials: u64) -> f64 {
    hits as f64 / trials as f64
}

/// `4·√(ln T / T)`, the per-outcome band for empirical frequencies.
fn sampling_tolerance(trials: u64) -> f64 {
    let t = trials as f64;
    4.0 * (t.ln() / t).sqrt()
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    command: &'a str,
    mode: &'a str,
    seed: u64,
    #[serde(flatten)]
    body: T,
    runtime_ms: Option<u64>,
}

fn document<T: Serialize>(command: &str, mode: &str, ctx: &Context, body: T) -> Value {
    serde_json::to_value(Document {
        command,
        mode,
        seed: ctx.seed,
        body,
        runtime_ms: ctx.runtime_ms(),
    })
    .expect("document serializes")
}

// ---------------------------------------------------------------- deutsch

#[derive(Debug, Args)]
pub struct DeutschArgs {
    /// Function index k = f(0)f(1); all four when omitted.
    #[arg(long, conflicts_with = "extended")]
    pub k: Option<String>,
    /// Hold the function choice in a two-qubit register K.
    #[arg(long)]
    pub extended: bool,
    #[arg(long, default_value_t = 1)]
    pub trials: u64,
}

#[derive(Serialize)]
struct DeutschRow {
    k: BitString,
    expected: String,
    verdict: String,
    queries: u64,
    success: bool,
}

#[derive(Serialize)]
struct DeutschExtendedRow {
    trial: u64,
    k: BitString,
    verdict: String,
    consistent: bool,
    queries: u64,
}

fn deutsch(a: &DeutschArgs, ctx: &Context) -> Result<Output, CliError> {
    if a.extended {
        let trials = positive(a.trials)?;
        let runs = run_trials(ctx.seed, trials, |t, rng| {
            deutsch_extended_run(rng).map(|o| DeutschExtendedRow {
                trial: t,
                k: o.k,
                verdict: o.verdict.to_string(),
                consistent: o.consistent,
                queries: o.result.oracle_queries,
            })
        });
        let rows = runs.into_iter().collect::<Result<Vec<_>, _>>()?;
        let consistent = rate(rows.iter().filter(|r| r.consistent).count(), trials);
        let body = serde_json::json!({ "trials": trials, "consistent_rate": consistent, "results": &rows });
        return Ok(Output::new(
            document("deutsch", "extended", ctx, body),
            rows_of(&rows),
        ));
    }
    let functions = match &a.k {
        Some(k) => vec![DeutschFunction::new(parse_k(k, 2)?)?],
        None => DeutschFunction::all().to_vec(),
    };
    let mut rows = Vec::new();
    for f in &functions {
        let r = deutsch_run(f)?;
        rows.push(DeutschRow {
            k: f.k(),
            expected: f.verdict().to_string(),
            verdict: r.answer.to_string(),
            queries: r.oracle_queries,
            success: r.success,
        });
    }
    let body = serde_json::json!({ "results": &rows });
    Ok(Output::new(
        document("deutsch", "conventional", ctx, body),
        rows_of(&rows),
    ))
}

// ---------------------------------------------------------------- grover

#[derive(Debug, Args)]
pub struct GroverArgs {
    #[arg(long)]
    pub n: usize,
    /// Marked drawer; a uniformly random one per trial when omitted.
    #[arg(long, conflicts_with = "extended")]
    pub k: Option<String>,
    /// Hold the marked drawer in a register K and read K and X jointly.
    #[arg(long)]
    pub extended: bool,
    /// Know the column in advance and search the rows only.
    #[arg(long, conflicts_with = "extended")]
    pub row_game: bool,
    #[arg(long, default_value_t = 1)]
    pub trials: u64,
}

#[derive(Serialize)]
struct GroverRow {
    trial: u64,
    k: BitString,
    answer: BitString,
    queries: u64,
    success: bool,
}

#[derive(Serialize)]
struct GroverExtendedRow {
    trial: u64,
    k: BitString,
    x: BitString,
    queries: u64,
    success: bool,
}

#[derive(Serialize)]
struct RowGameRow {
    trial: u64,
    k: BitString,
    known_column: BitString,
    answer: String,
    queries: u64,
    success: bool,
}

fn modal_answer<T: Ord>(answers: impl Iterator<Item = T>) -> Option<T> {
    let mut counts: BTreeMap<T, u64> = BTreeMap::new();
    for a in answers {
        *counts.entry(a).or_default() += 1;
    }
    counts
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .map(|(a, _)| a)
}

fn grover(a: &GroverArgs, ctx: &Context) -> Result<Output, CliError> {
    let trials = positive(a.trials)?;
    let n = a.n;
    let fixed = a.k.as_deref().map(|k| parse_k(k, n)).transpose()?;

    if a.extended {
        let exp = grover_extended_setup(n)?;
        let queries = exp.oracle_queries();
        let joint = exp.final_state()?.distribution(&["K", "X"])?;
        let rows = run_trials(ctx.seed, trials, |t, rng| {
            let kx = joint.sample(rng);
            GroverExtendedRow {
                trial: t,
                k: kx[0],
                x: kx[1],
                queries,
                success: kx[0] == kx[1],
            }
        });
        let body = serde_json::json!({
            "n": n,
            "iterations": grover_iterations(n),
            "queries": queries,
            "trials": trials,
            "success_rate": rate(rows.iter().filter(|r| r.success).count(), trials),
            "results": &rows,
        });
        return Ok(Output::new(
            document("grover", "extended", ctx, body),
            rows_of(&rows),
        ));
    }

    let pick = |rng: &mut relq_core::trials::TrialRng| -> GroverInstance {
        let k =
            fixed.unwrap_or_else(|| BitString::new(rng.gen_range(0..1u64 << n), n).expect("fits"));
        GroverInstance { n, k }
    };
    let simulated = GroverInstance::new(n, fixed.map_or_else(|| BitString::zeros(n), Ok)?)?;

    if a.row_game {
        let runs = run_trials(ctx.seed, trials, |t, rng| {
            let inst = pick(rng);
            grover_row_game_for(&inst, rng).map(|o| RowGameRow {
                trial: t,
                k: inst.k,
                known_column: o.known_column,
                answer: o.result.answer.to_string(),
                queries: o.result.oracle_queries,
                success: o.result.success,
            })
        });
        let rows = runs.into_iter().collect::<Result<Vec<_>, _>>()?;
        let body = serde_json::json!({
            "n": n,
            "iterations": grover_iterations(n / 2),
            "queries": rows[0].queries,
            "trials": trials,
            "success_rate": rate(rows.iter().filter(|r| r.success).count(), trials),
            "answer": fixed.and_then(|_| modal_answer(rows.iter().map(|r| r.answer.clone()))),
            "results": &rows,
        });
        return Ok(Output::new(
            document("grover", "row_game", ctx, body),
            rows_of(&rows),
        ));
    }

    // Simulated once; for random drawers the outcome distribution of
    // drawer 0 is shifted by k, since X gates conjugate one oracle into the other.
    let exp = grover_setup(&simulated)?;
    let queries = exp.oracle_queries();
    let dist: Distribution = exp.final_state()?.distribution(&["X"])?;
    let p_success = dist.get(&[simulated.k]);
    let rows = run_trials(ctx.seed, trials, |t, rng| {
        let inst = pick(rng);
        let answer = dist.sample(rng)[0].xor(&simulated.k).xor(&inst.k);
        GroverRow {
            trial: t,
            k: inst.k,
            answer,
            queries,
            success: answer == inst.k,
        }
    });
    let body = serde_json::json!({
        "n": n,
        "k": fixed,
        "iterations": grover_iterations(n),
        "queries": queries,
        "success_probability": p_success,
        "trials": trials,
        "success_rate": rate(rows.iter().filter(|r| r.success).count(), trials),
        "answer": fixed.and_then(|_| modal_answer(rows.iter().map(|r| r.answer))),
        "results": &rows,
    });
    Ok(Output::new(
        document("grover", "conventional", ctx, body),
        rows_of(&rows),
    ))
}

// ---------------------------------------------------------------- simon

#[derive(Debug, Args)]
pub struct SimonArgs {
    #[arg(long)]
    pub n: usize,
    /// Hidden string; a uniformly random nonzero one per trial when omitted.
    #[arg(long, conflicts_with = "extended")]
    pub k: Option<String>,
    /// Quantum samples per run [default: 3n].
    #[arg(long)]
    pub iterations: Option<usize>,
    /// Hold the hidden string in a register K.
    #[arg(long)]
    pub extended: bool,
    #[arg(long, default_value_t = 1)]
    pub trials: u64,
}

#[derive(Serialize)]
struct SimonRow {
    trial: u64,
    k: BitString,
    answer: String,
    samples: String,
    queries: u64,
    success: bool,
}

fn join(samples: &[BitString]) -> String {
    samples
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn simon(a: &SimonArgs, ctx: &Context) -> Result<Output, CliError> {
    let trials = positive(a.trials)?;
    let n = a.n;
    let m = a.iterations.unwrap_or(3 * n);
    if m == 0 {
        return Err(CliError::Usage("--iterations must be at least 1".into()));
    }
    if n < 2 {
        return Err(CliError::Usage(format!("Simon needs n >= 2, got {n}")));
    }

    let rows: Vec<SimonRow> = if a.extended {
        run_trials(ctx.seed, trials, |t, rng| {
            simon_extended_run(n, m, rng).map(|o| SimonRow {
                trial: t,
                k: o.k,
                answer: o.result.answer.to_string(),
                samples: join(&o.samples),
                queries: o.result.oracle_queries,
                success: o.result.success,
            })
        })
        .into_iter()
        .collect::<Result<_, _>>()?
    } else {
        let fixed = a.k.as_deref().map(|k| parse_k(k, n)).transpose()?;
        // hidden strings are drawn from their own stream so samplers can be
        // built once per distinct string
        let ks: Vec<BitString> = match fixed {
            Some(k) => vec![k; trials as usize],
            None => run_trials(derive_seed(ctx.seed, 1), trials, |_, rng| {
                BitString::new(rng.gen_range(1..1u64 << n), n).expect("fits")
            }),
        };
        let mut samplers: HashMap<BitString, SimonSampler> = HashMap::new();
        for k in &ks {
            if !samplers.contains_key(k) {
                samplers.insert(*k, SimonSampler::new(&SimonInstance::canonical(n, *k)?)?);
            }
        }
        run_trials(ctx.seed, trials, |t, rng| {
            let k = ks[t as usize];
            samplers[&k].run(m, rng).map(|(samples, r)| SimonRow {
                trial: t,
                k,
                answer: r.answer.to_string(),
                samples: join(&samples),
                queries: r.oracle_queries,
                success: r.success,
            })
        })
        .into_iter()
        .collect::<Result<_, _>>()?
    };
    let body = serde_json::json!({
        "n": n,
        "iterations": m,
        "trials": trials,
        "success_rate": rate(rows.iter().filter(|r| r.success).count(), trials),
        "exact_success_probability": simon_success_prob_exact(n, m),
        "results": &rows,
    });
    let mode = if a.extended {
        "extended"
    } else {
        "conventional"
    };
    Ok(Output::new(
        document("simon", mode, ctx, body),
        rows_of(&rows),
    ))
}

// ---------------------------------------------------------------- machines

#[derive(Debug, Args)]
pub struct MachineArgs {
    /// Network JSON file.
    #[arg(long)]
    pub network: PathBuf,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
}

#[derive(Serialize)]
struct OutcomeRow {
    outcome: String,
    exact: f64,
    empirical: f64,
    count: u64,
}

fn frequency_report(
    claim: String,
    rows: &[OutcomeRow],
    seed: u64,
    trials: u64,
    ctx: &Context,
) -> ExperimentReport {
    let worst = rows
        .iter()
        .map(|r| (r.empirical - r.exact).abs())
        .fold(0.0, f64::max);
    let mut r = ExperimentReport::abs(claim, 0.0, worst, sampling_tolerance(trials))
        .with_run(seed, trials)
        .with_note("largest |empirical - exact| over outcomes");
    r.runtime_ms = ctx.runtime_ms();
    r
}

fn machine(a: &MachineArgs, ctx: &Context) -> Result<Output, CliError> {
    let trials = positive(a.trials)?;
    let spec = load_network(&a.network).map_err(|e| CliError::Usage(e.to_string()))?;
    let sampler = MachineSampler::new(&spec)?;
    let draws = run_trials(ctx.seed, trials, |_, rng| sampler.sample(rng).clone());
    let mut counts: HashMap<String, u64> = HashMap::new();
    for d in &draws {
        *counts.entry(d.to_string()).or_default() += 1;
    }
    let rows: Vec<OutcomeRow> = sampler
        .distribution()
        .entries
        .iter()
        .map(|(assignment, p)| {
            let key = assignment.to_string();
            let count = counts.get(&key).copied().unwrap_or(0);
            OutcomeRow {
                outcome: key,
                exact: *p,
                empirical: rate(count as usize, trials),
                count,
            }
        })
        .collect();
    let name = spec.network().name().to_string();
    let report = frequency_report(
        format!("machine `{name}`: sampled frequencies"),
        &rows,
        ctx.seed,
        trials,
        ctx,
    );
    let failed = !report.passed();
    let body = serde_json::json!({
        "network": name,
        "variables": spec.network().variables(),
        "q_mass": spec.q_mass(),
        "solutions": rows.len(),
        "trials": trials,
        "results": &rows,
        "report": report,
    });
    Ok(Output::new(document("machine", "network", ctx, body), rows_of(&rows)).failed(failed))
}

#[derive(Debug, Args)]
pub struct NotMachineArgs {
    /// Mass of part X (moves when x = 1).
    #[arg(long, default_value_t = 1.0)]
    pub mx: f64,
    /// Mass of part Y (moves when y = 1).
    #[arg(long, default_value_t = 1.0)]
    pub my: f64,
    /// Mass of the input part Q.
    #[arg(long, default_value_t = 0.0)]
    pub q_mass: f64,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
}

fn not_machine_cmd(a: &NotMachineArgs, ctx: &Context) -> Result<Output, CliError> {
    let trials = positive(a.trials)?;
    let p_x = not_machine_probability(a.mx, a.my, a.q_mass)?;
    let runs = run_trials(ctx.seed, trials, |_, rng| {
        not_machine(a.mx, a.my, a.q_mass, rng)
    })
    .into_iter()
    .collect::<Result<Vec<_>, _>>()?;
    let x_count = runs.iter().filter(|o| o.x).count() as u64;
    let rows = vec![
        OutcomeRow {
            outcome: "x=1,y=0".into(),
            exact: p_x,
            empirical: rate(x_count as usize, trials),
            count: x_count,
        },
        OutcomeRow {
            outcome: "x=0,y=1".into(),
            exact: 1.0 - p_x,
            empirical: rate((trials - x_count) as usize, trials),
            count: trials - x_count,
        },
    ];
    let report = frequency_report(
        "not machine: sampled frequencies".into(),
        &rows,
        ctx.seed,
        trials,
        ctx,
    );
    let failed = !report.passed() || !runs.iter().all(|o| o.equations_hold);
    let body = serde_json::json!({
        "mx": a.mx,
        "my": a.my,
        "q_mass": a.q_mass,
        "trials": trials,
        "before": runs[0].before,
        "equations_hold": runs.iter().all(|o| o.equations_hold),
        "results": &rows,
        "report": report,
    });
    Ok(Output::new(document("not-machine", "toy", ctx, body), rows_of(&rows)).failed(failed))
}

// ---------------------------------------------------------------- reports

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ProblemArg {
    Grover,
    Deutsch,
    Simon,
}

impl From<ProblemArg> for Problem {
    fn from(p: ProblemArg) -> Self {
        match p {
            ProblemArg::Grover => Problem::Grover,
            ProblemArg::Deutsch => Problem::Deutsch,
            ProblemArg::Simon => Problem::Simon,
        }
    }
}

#[derive(Debug, Args)]
pub struct Rule50Args {
    #[arg(long, value_enum)]
    pub problem: ProblemArg,
    /// Comma-separated problem sizes [default: grover 4,6,8,10; simon 2..8].
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<usize>>,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    /// Lower end of the accepted cost-ratio band.
    #[arg(long, default_value_t = 0.5)]
    pub ratio_lo: f64,
    /// Upper end of the accepted cost-ratio band.
    #[arg(long, default_value_t = 4.0)]
    pub ratio_hi: f64,
}

fn report_output(
    command: &str,
    mode: &str,
    ctx: &Context,
    reports: Vec<ExperimentReport>,
) -> Output {
    let failed = reports.iter().any(|r| !r.passed());
    let body = serde_json::json!({ "reports": &reports });
    Output::new(document(command, mode, ctx, body), rows_of(&reports)).failed(failed)
}

fn rule50(a: &Rule50Args, ctx: &Context) -> Result<Output, CliError> {
    let problem = Problem::from(a.problem);
    let config = HarnessConfig {
        seed: ctx.seed,
        trials: positive(a.trials)?,
        ratio_band: (a.ratio_lo, a.ratio_hi),
    };
    let sizes = a.sizes.clone().unwrap_or_else(|| problem.default_sizes());
    let mut reports = Vec::new();
    let groups: Vec<Vec<usize>> = match problem {
        Problem::Deutsch => vec![vec![]],
        _ => sizes.iter().map(|&n| vec![n]).collect(),
    };
    for group in groups {
        let start = Instant::now();
        let mut batch = rule50_report(problem, &group, &config)?;
        if ctx.timings {
            let ms = start.elapsed().as_millis() as u64;
            batch.iter_mut().for_each(|r| r.runtime_ms = Some(ms));
        }
        reports.extend(batch);
    }
    Ok(report_output("rule50", &problem.to_string(), ctx, reports))
}

#[derive(Debug, Args)]
pub struct BackdateArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
}

fn backdate(a: &BackdateArgs, ctx: &Context) -> Result<Output, CliError> {
    let config = HarnessConfig {
        seed: ctx.seed,
        ..HarnessConfig::default()
    };
    let start = Instant::now();
    let mut reports = backdate_report(a.n, &config)?;
    if ctx.timings {
        let ms = start.elapsed().as_millis() as u64;
        reports.iter_mut().for_each(|r| r.runtime_ms = Some(ms));
    }
    Ok(report_output("backdate", "grover", ctx, reports))
}
