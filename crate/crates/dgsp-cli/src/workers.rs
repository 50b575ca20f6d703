// Copyright 2026 DGSP Contributors
// SPDX-License-Identifier: Apache-2.0

//! Worker pool for scans. Results are merged by scan index, so the output does
//! not depend on the number of workers or on scheduling.

use rayon::prelude::*;

use crate::error::{CliError, CliResult};

/// Environment variable holding the worker count.
pub const WORKERS_ENV: &str = "DGSP_WORKERS";

/// Worker count from `DGSP_WORKERS`, defaulting to the available parallelism.
pub fn worker_count() -> CliResult<usize> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::Config(format!("{WORKERS_ENV}: expected a positive integer, got `{v}`"))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

/// Maps `f` over `items` on `workers` threads, keeping input order.
///
/// The first error in scan order is returned.
pub fn scan<T, R, F>(items: &[T], workers: usize, f: F) -> CliResult<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> CliResult<R> + Sync + Send,
{
    if workers <= 1 {
        return items.iter().map(&f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Config(format!("{WORKERS_ENV}: {e}")))?;
    let results: Vec<CliResult<R>> = pool.install(|| items.par_iter().map(&f).collect());
    results.into_iter().collect()
}
