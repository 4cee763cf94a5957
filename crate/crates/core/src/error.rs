use alloc::string::String;

/// Errors reported by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A parameter is outside its domain.
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// The operation needs a connected graph.
    #[error("graph is not connected")]
    Disconnected,
    /// The input is larger than the operation supports.
    #[error("capacity exceeded: {what} is {actual}, limit is {limit}")]
    Capacity {
        /// What overflowed.
        what: &'static str,
        /// Requested size.
        actual: usize,
        /// Supported maximum.
        limit: usize,
    },
    /// The operation is undefined for a trivial input (e.g. a single node).
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
    /// Every Monte Carlo replicate hit the step cutoff.
    #[error("all {timeouts} replicates timed out")]
    AllTimedOut {
        /// Number of replicates that hit the cutoff.
        timeouts: usize,
    },
    /// An adjacency structure violates the graph invariants.
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
}

/// Crate-wide result alias.
pub type Result<T, E = Error> = core::result::Result<T, E>;

macro_rules! param_err {
    ($($arg:tt)*) => {
        $crate::Error::Parameter(alloc::format!($($arg)*))
    };
}
pub(crate) use param_err;

pub(crate) fn check_probability(p: f64) -> Result<()> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(param_err!("transmission probability must lie in (0, 1], got {p}"))
    }
}
