//! Scenario runner and checks behind the `ernstlab` binary.

mod reduce_check;
mod scenario;

pub use reduce_check::{
    reduce_check, CheckResult, ReduceCheckReport, ALGEBRAIC_TOLERANCE, DETERMINING_TOLERANCE,
    LINE_INTEGRAL_OFFSET_TOLERANCE, OFF_SHELL_TOLERANCE,
};
pub use scenario::{
    evaluate_scenario, run_scenario, FieldRecord, Grid, InvariantCheck, OutputFiles, OutputKind,
    Scenario, ScenarioRun, ScenarioSummary, Source, CSV_HEADER, DEFAULT_TOLERANCE, SCHEMA_VERSION,
};

use crate::error::{Error, Result};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "ERNSTLAB_THREADS";

/// Thread cap from `ERNSTLAB_THREADS`; `None` when unset or empty.
pub fn configured_threads() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Ok(v) if v.trim().is_empty() => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::Config(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
        Err(_) => Ok(None),
    }
}

pub(crate) fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = configured_threads()? {
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| Error::Config(format!("cannot start thread pool: {e}")))
}
