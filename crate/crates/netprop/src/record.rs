//! One-row summaries combining the exact value, a Monte Carlo estimate and
//! the analytic bounds for a graph.

use std::io::Write;
use std::time::Instant;

use netprop_core::bounds::network_upper_bound;
use netprop_core::exact::{self, MAX_EXACT_NODES, MAX_HUB_CLIENTS};
use netprop_core::graph::{FamilySpec, Graph, NodeId};
use netprop_core::simulate::{SimParams, Simulator};
use serde::Serialize;

use crate::error::Result;
use crate::parallel;

/// Column order of the CSV output; JSON objects use the same names.
pub const COLUMNS: [&str; 15] = [
    "family",
    "n",
    "p",
    "seed",
    "exact",
    "mc_mean",
    "mc_stderr",
    "lower",
    "d",
    "b",
    "tau",
    "upper",
    "diameter",
    "eccentricity",
    "runtime_ms",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisRecord {
    pub family: String,
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    /// Absent when no exact method applies.
    pub exact: Option<f64>,
    pub mc_mean: f64,
    pub mc_stderr: f64,
    pub lower: f64,
    pub d: usize,
    pub b: usize,
    pub tau: f64,
    pub upper: f64,
    pub diameter: usize,
    pub eccentricity: usize,
    pub runtime_ms: f64,
}

impl AnalysisRecord {
    fn fields(&self) -> [String; 15] {
        [
            self.family.clone(),
            self.n.to_string(),
            format!("{:?}", self.p),
            self.seed.to_string(),
            self.exact.map(|e| format!("{e:?}")).unwrap_or_default(),
            format!("{:?}", self.mc_mean),
            format!("{:?}", self.mc_stderr),
            format!("{:?}", self.lower),
            self.d.to_string(),
            self.b.to_string(),
            format!("{:?}", self.tau),
            format!("{:?}", self.upper),
            self.diameter.to_string(),
            self.eccentricity.to_string(),
            format!("{:?}", self.runtime_ms),
        ]
    }
}

/// Exact expected time when some exact method covers the graph: the subset
/// chain up to 20 nodes, otherwise the chain and hub closed forms from their
/// canonical source.
pub fn exact_value(family: &FamilySpec, g: &Graph, src: NodeId, p: f64) -> Result<Option<f64>> {
    if g.node_count() <= MAX_EXACT_NODES {
        return Ok(Some(exact::subset_hitting_time(g, src, p)?.expected()));
    }
    let last = g.node_count() - 1;
    Ok(match *family {
        FamilySpec::Chain { n } if src == 0 || src == last => Some(exact::chain_time(n, p)?),
        FamilySpec::Hub { n_clients } if src == 0 && n_clients <= MAX_HUB_CLIENTS => {
            Some(exact::hub_time(n_clients, p)?)
        }
        _ => None,
    })
}

/// Analyze `g` from `src`: exact value, Monte Carlo estimate with the default
/// cutoff, bounds, diameter and source eccentricity.
pub fn analyze(family: &FamilySpec, g: &Graph, src: NodeId, p: f64, replicates: u64, seed: u64) -> Result<AnalysisRecord> {
    let started = Instant::now();
    let params = SimParams::with_default_cutoff(g, src, p, seed)?;
    let sim = Simulator::new(g, params)?;
    let exact = exact_value(family, g, src, p)?;
    let estimate = parallel::monte_carlo(&sim, src, replicates)?;
    let bounds = network_upper_bound(g, src, p)?;
    Ok(AnalysisRecord {
        family: family.name().to_string(),
        n: g.node_count(),
        p,
        seed,
        exact,
        mc_mean: estimate.mean,
        mc_stderr: estimate.std_error,
        lower: bounds.lower,
        d: bounds.reduction.d,
        b: bounds.reduction.b,
        tau: bounds.tau,
        upper: bounds.upper,
        diameter: g.diameter()?,
        eccentricity: g.eccentricity(src)?,
        runtime_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Write records as CSV (header plus one row each) or JSON (an object for a
/// single record, an array otherwise).
pub fn write_records(records: &[AnalysisRecord], format: Format, single: bool, mut out: impl Write) -> Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "{}", COLUMNS.join(","))?;
            for r in records {
                writeln!(out, "{}", r.fields().join(","))?;
            }
        }
        Format::Json if single && records.len() == 1 => {
            serde_json::to_writer_pretty(&mut out, &records[0])?;
            writeln!(out)?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, records)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use netprop_core::graph::generate;

    #[test]
    fn json_keys_equal_csv_columns() {
        let spec = FamilySpec::Chain { n: 5 };
        let g = generate(&spec, 0).unwrap().graph;
        let record = analyze(&spec, &g, 0, 0.5, 200, 1).unwrap();
        let value = serde_json::to_value(&record).unwrap();
        let keys: Vec<&str> = value.as_object().unwrap().keys().map(String::as_str).collect();
        let mut sorted_columns = COLUMNS.to_vec();
        sorted_columns.sort_unstable();
        let mut sorted_keys = keys.clone();
        sorted_keys.sort_unstable();
        assert_eq!(sorted_keys, sorted_columns);
        assert_eq!(record.exact, Some(8.0));
        assert_eq!(record.lower, 8.0);
    }

    #[test]
    fn missing_exact_is_empty_field() {
        let spec = FamilySpec::Ring { n: 30 };
        let g = generate(&spec, 0).unwrap().graph;
        let record = analyze(&spec, &g, 0, 0.5, 50, 1).unwrap();
        assert_eq!(record.exact, None);
        let mut buf = Vec::new();
        write_records(std::slice::from_ref(&record), Format::Csv, true, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
        assert_eq!(row.len(), COLUMNS.len());
        assert_eq!(row[4], "");
        let json = serde_json::to_value(&record).unwrap();
        assert!(json["exact"].is_null());
    }

    #[test]
    fn hub_exact_uses_closed_form_past_subset_limit() {
        let spec = FamilySpec::Hub { n_clients: 40 };
        let g = generate(&spec, 0).unwrap().graph;
        assert_eq!(exact_value(&spec, &g, 0, 0.5).unwrap(), Some(exact::hub_time(40, 0.5).unwrap()));
        assert_eq!(exact_value(&spec, &g, 3, 0.5).unwrap(), None);
    }
}
