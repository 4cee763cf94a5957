//! File formats, parallel Monte Carlo and the `netprop` command-line tool,
//! built on [`netprop_core`].

pub mod cli;
mod error;
pub mod io;
pub mod parallel;
pub mod record;

pub use error::{Error, Result};
