//! Classical references with advance knowledge, exact laws, and the
//! experiment reports comparing them against the quantum runs.

mod classical;
mod exact;
mod experiments;
mod report;

pub use classical::{
    classical_search, classical_simon_collision, classical_simon_queries, deutsch_reference,
    simon_reference, AdvanceKnowledge, ClassicalSimonStats, CountingOracle, KnownBit,
};
pub use exact::{info_gain, simon_success_prob_exact};
pub use experiments::{backdate_report, rule50_report, HarnessConfig, Problem};
pub use report::{mean_and_se, Comparison, ExperimentReport, ReportVerdict};
