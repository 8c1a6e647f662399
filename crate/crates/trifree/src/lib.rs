//! File formats, the exhaustive census, parallel verification and the
//! `trifree` command line on top of `trifree-core`.

pub mod census;
pub mod cli;
pub mod format;
pub mod graph6;
pub mod report;

use rayon::prelude::*;
use trifree_core::bounds::{Plan, VerifyReport};

pub use census::{census, CensusRow};
pub use format::{read_graph, GraphFormat, GraphJson};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{0}: {1}")]
    Io(String, #[source] std::io::Error),
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Core(#[from] trifree_core::Error),
    #[error("{0}")]
    TooLarge(String),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

/// A dedicated pool, so callers can pin the thread count.
pub fn pool(threads: Option<usize>) -> Result<rayon::ThreadPool, IoError> {
    Ok(rayon::ThreadPoolBuilder::new().num_threads(threads.unwrap_or(0)).build()?)
}

/// Run a verification plan with its tasks spread over `threads` workers.
/// Tallies are merged in task order, so the report matches [`Plan::run`].
pub fn run_plan(plan: &Plan, threads: Option<usize>) -> Result<VerifyReport, IoError> {
    let tallies = pool(threads)?.install(|| plan.tasks.par_iter().map(|t| plan.run_task(t)).collect());
    Ok(plan.finish(tallies))
}
