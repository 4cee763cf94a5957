//! Replicates spread over the rayon pool. Each replicate draws from its own
//! keyed stream and outcomes are aggregated in replicate order, so the
//! estimate is bit-identical to the sequential one for any thread count.

use netprop_core::graph::NodeId;
use netprop_core::simulate::{McEstimate, RunOutcome, Simulator};
use netprop_core::Error as CoreError;
use rayon::prelude::*;

pub fn monte_carlo(sim: &Simulator<'_>, src: NodeId, replicate_count: u64) -> Result<McEstimate, CoreError> {
    if replicate_count < 2 {
        return Err(CoreError::Parameter(format!("need at least 2 replicates, got {replicate_count}")));
    }
    let outcomes = (0..replicate_count)
        .into_par_iter()
        .map(|r| sim.run_once(src, r))
        .collect::<Result<Vec<RunOutcome>, _>>()?;
    McEstimate::from_outcomes(&outcomes)
}

/// Run `f` inside a dedicated pool of `threads` workers.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
        .install(f)
}
