//! Synchronous stochastic spreading and its Monte Carlo estimator.
//!
//! At each step every susceptible node `v` with `k` infected neighbours
//! becomes infected with probability `1 - (1-p)^k`, independently of the
//! others. Nodes infected during a step only start transmitting on the next
//! one. All randomness comes from [`KeyedStream`], keyed by
//! `(seed, replicate, step, node)`, so a run is a pure function of its inputs.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{check_probability, param_err, Error, Result};
use crate::graph::{Graph, NodeId};
use crate::rng::KeyedStream;
use crate::stats;

/// How the random draws of one step are organised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum TransmissionMode {
    /// One draw per susceptible node against `1 - (1-p)^k`.
    #[default]
    PerNode,
    /// One draw per (infected, susceptible) edge attempt against `p`. Same
    /// distribution, but draws are shared across different `p` values, which
    /// couples runs monotonically in `p`.
    PerEdge,
}

/// Simulation parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SimParams {
    /// Per-edge, per-step transmission probability, in `(0, 1]`.
    pub p: f64,
    /// Runs still incomplete after this many steps are reported as timeouts.
    pub max_steps: u64,
    /// Seed for every replicate stream.
    pub master_seed: u64,
    /// Draw organisation.
    pub mode: TransmissionMode,
}

impl SimParams {
    /// Validated parameters in per-node mode.
    pub fn new(p: f64, max_steps: u64, master_seed: u64) -> Result<Self> {
        check_probability(p)?;
        if max_steps == 0 {
            return Err(param_err!("max_steps must be at least 1"));
        }
        Ok(Self { p, max_steps, master_seed, mode: TransmissionMode::PerNode })
    }

    /// Parameters with the default cutoff for spreading on `g` from `src`.
    pub fn with_default_cutoff(g: &Graph, src: NodeId, p: f64, master_seed: u64) -> Result<Self> {
        Self::new(p, default_max_steps(g, src, p)?, master_seed)
    }

    /// Switch the draw organisation.
    pub fn with_mode(mut self, mode: TransmissionMode) -> Self {
        self.mode = mode;
        self
    }
}

/// Default step cutoff: `100 * ceil((2*ecc(src) + ln n) / p)`.
///
/// `2*ecc(src)` bounds the diameter from above and costs one BFS.
pub fn default_max_steps(g: &Graph, src: NodeId, p: f64) -> Result<u64> {
    check_probability(p)?;
    let ecc = g.eccentricity(src)? as f64;
    let ln_n = libm::log(g.node_count().max(1) as f64);
    Ok((100.0 * libm::ceil((2.0 * ecc + ln_n) / p)).max(1.0) as u64)
}

/// Infected set of one run, plus the bookkeeping needed to step it quickly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfectionState {
    infected: Vec<bool>,
    infected_count: usize,
    step_count: u64,
    /// Infected neighbours of every node.
    pressure: Vec<u32>,
    /// Susceptible nodes with at least one infected neighbour.
    frontier: Vec<NodeId>,
}

impl InfectionState {
    /// State at `t = 0` with only `src` infected.
    pub fn new(g: &Graph, src: NodeId) -> Result<Self> {
        Self::from_nodes(g, &[src])
    }

    /// State at `t = 0` with the given nodes infected.
    pub fn from_nodes(g: &Graph, nodes: &[NodeId]) -> Result<Self> {
        if nodes.is_empty() {
            return Err(param_err!("initial infected set must be nonempty"));
        }
        let n = g.node_count();
        let mut state = Self {
            infected: vec![false; n],
            infected_count: 0,
            step_count: 0,
            pressure: vec![0; n],
            frontier: Vec::new(),
        };
        for &v in nodes {
            g.check_node(v)?;
            state.infect(g, v);
        }
        state.frontier = (0..n).filter(|&v| !state.infected[v] && state.pressure[v] > 0).collect();
        Ok(state)
    }

    fn infect(&mut self, g: &Graph, v: NodeId) {
        if self.infected[v] {
            return;
        }
        self.infected[v] = true;
        self.infected_count += 1;
        for &u in g.neighbors(v) {
            self.pressure[u] += 1;
        }
    }

    /// Whether `v` holds the information.
    pub fn is_infected(&self, v: NodeId) -> bool {
        self.infected[v]
    }

    /// Number of infected nodes.
    pub fn infected_count(&self) -> usize {
        self.infected_count
    }

    /// Steps taken so far.
    pub fn step_count(&self) -> u64 {
        self.step_count
    }

    /// Whether every node is infected.
    pub fn is_complete(&self) -> bool {
        self.infected_count == self.infected.len()
    }

    /// Infected nodes in increasing order.
    pub fn infected_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.infected.iter().enumerate().filter(|(_, &i)| i).map(|(v, _)| v)
    }

    /// Infected neighbours of `v`.
    pub fn infected_neighbors(&self, v: NodeId) -> usize {
        self.pressure[v] as usize
    }
}

const EDGE_SLOT_TAG: u64 = 1 << 63;

/// Runs the spreading process on one connected graph.
#[derive(Debug, Clone)]
pub struct Simulator<'g> {
    graph: &'g Graph,
    params: SimParams,
    /// `join[k] = 1 - (1-p)^k`
    join: Vec<f64>,
}

impl<'g> Simulator<'g> {
    /// Fails when `graph` is disconnected.
    pub fn new(graph: &'g Graph, params: SimParams) -> Result<Self> {
        check_probability(params.p)?;
        graph.require_connected()?;
        if graph.node_count() >= 1 << 31 {
            return Err(Error::Capacity { what: "node count", actual: graph.node_count(), limit: 1 << 31 });
        }
        let log_q = libm::log1p(-params.p);
        let join = (0..=graph.max_degree())
            .map(|k| if k == 0 { 0.0 } else { -libm::expm1(k as f64 * log_q) })
            .collect();
        Ok(Self { graph, params, join })
    }

    /// The parameters in use.
    pub fn params(&self) -> &SimParams {
        &self.params
    }

    /// The graph in use.
    pub fn graph(&self) -> &Graph {
        self.graph
    }

    /// Advance `state` by one step using `stream`. Returns how many nodes
    /// were newly infected.
    pub fn step(&self, state: &mut InfectionState, stream: &KeyedStream) -> usize {
        let t = state.step_count;
        let mut newly = Vec::new();
        for &v in &state.frontier {
            let hit = match self.params.mode {
                TransmissionMode::PerNode => {
                    stream.uniform(t, v as u64) < self.join[state.pressure[v] as usize]
                }
                TransmissionMode::PerEdge => self.graph.neighbors(v).iter().any(|&u| {
                    state.infected[u] && stream.uniform(t, edge_slot(u, v)) < self.params.p
                }),
            };
            if hit {
                newly.push(v);
            }
        }
        for &v in &newly {
            state.infect(self.graph, v);
        }
        if !newly.is_empty() {
            let InfectionState { frontier, infected, .. } = state;
            frontier.retain(|&v| !infected[v]);
            for &v in &newly {
                frontier.extend(self.graph.neighbors(v).iter().filter(|&&u| !infected[u]));
            }
            frontier.sort_unstable();
            frontier.dedup();
        }
        state.step_count += 1;
        newly.len()
    }

    /// One sample of the completion time from `src`.
    pub fn run_once(&self, src: NodeId, replicate: u64) -> Result<RunOutcome> {
        self.run(src, replicate, |_| {})
    }

    /// Like [`Self::run_once`], also returning `(t, infected count)` for every
    /// `t` from 0 to the end of the run.
    pub fn run_traced(&self, src: NodeId, replicate: u64) -> Result<(RunOutcome, Vec<(u64, usize)>)> {
        let mut trace = Vec::new();
        let outcome = self.run(src, replicate, |s| trace.push((s.step_count, s.infected_count)))?;
        Ok((outcome, trace))
    }

    fn run(&self, src: NodeId, replicate: u64, mut observe: impl FnMut(&InfectionState)) -> Result<RunOutcome> {
        let stream = KeyedStream::new(self.params.master_seed, replicate);
        let mut state = InfectionState::new(self.graph, src)?;
        observe(&state);
        while !state.is_complete() {
            if state.step_count >= self.params.max_steps {
                return Ok(RunOutcome::TimedOut);
            }
            self.step(&mut state, &stream);
            observe(&state);
        }
        Ok(RunOutcome::Completed(state.step_count))
    }

    /// Sequential Monte Carlo estimate over replicates `0..replicate_count`.
    pub fn monte_carlo(&self, src: NodeId, replicate_count: u64) -> Result<McEstimate> {
        if replicate_count < 2 {
            return Err(param_err!("need at least 2 replicates, got {replicate_count}"));
        }
        self.graph.check_node(src)?;
        let outcomes = (0..replicate_count)
            .map(|r| self.run_once(src, r))
            .collect::<Result<Vec<_>>>()?;
        McEstimate::from_outcomes(&outcomes)
    }
}

/// Stream slot of the attempt `from -> to` in per-edge mode. Per-node mode
/// uses the node index itself as the slot.
pub fn edge_slot(from: NodeId, to: NodeId) -> u64 {
    EDGE_SLOT_TAG | ((from as u64) << 31) | to as u64
}

/// Result of one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunOutcome {
    /// Every node infected after this many steps.
    Completed(u64),
    /// Still incomplete at the cutoff.
    TimedOut,
}

impl RunOutcome {
    /// Steps taken, if the run completed.
    pub fn steps(self) -> Option<u64> {
        match self {
            RunOutcome::Completed(t) => Some(t),
            RunOutcome::TimedOut => None,
        }
    }
}

/// Monte Carlo summary of completion times, in steps.
///
/// Timed-out replicates are counted in `replicates` and `timeouts` but
/// excluded from every other field. Field names double as the JSON keys.
#[allow(missing_docs)]
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct McEstimate {
    pub replicates: u64,
    pub mean: f64,
    pub std_error: f64,
    pub ci95_low: f64,
    pub ci95_high: f64,
    pub min: f64,
    pub median: f64,
    pub p95: f64,
    pub max: f64,
    pub timeouts: u64,
}

impl McEstimate {
    /// Aggregate replicate outcomes. The order of `outcomes` does not affect
    /// the result.
    pub fn from_outcomes(outcomes: &[RunOutcome]) -> Result<Self> {
        let steps: Vec<u64> = outcomes.iter().filter_map(|o| o.steps()).collect();
        let timeouts = (outcomes.len() - steps.len()) as u64;
        if steps.is_empty() {
            return Err(Error::AllTimedOut { timeouts: timeouts as usize });
        }
        let (mean, std_error) = stats::mean_and_std_error(&steps);
        let sorted = stats::sorted_copy(&steps);
        let half_width = 1.96 * std_error;
        Ok(Self {
            replicates: outcomes.len() as u64,
            mean,
            std_error,
            ci95_low: mean - half_width,
            ci95_high: mean + half_width,
            min: sorted[0] as f64,
            median: stats::quantile_sorted(&sorted, 0.5),
            p95: stats::quantile_sorted(&sorted, 0.95),
            max: sorted[sorted.len() - 1] as f64,
            timeouts,
        })
    }

    /// `(low, high)` of the normal-approximation 95% interval.
    pub fn ci95(&self) -> (f64, f64) {
        (self.ci95_low, self.ci95_high)
    }
}

/// Expected number of new infections in one step of a complete graph with `infected`
/// infected and `susceptible` susceptible nodes: `S * (1 - (1-p)^I)`.
pub fn expected_new_infections(infected: usize, susceptible: usize, p: f64) -> f64 {
    if infected == 0 || susceptible == 0 || p <= 0.0 {
        return 0.0;
    }
    let p = p.min(1.0);
    -(susceptible as f64) * libm::expm1(infected as f64 * libm::log1p(-p))
}

/// One step from `state` (convenience wrapper around [`Simulator::step`]).
pub fn step(g: &Graph, state: &mut InfectionState, params: &SimParams, replicate: u64) -> Result<usize> {
    let sim = Simulator::new(g, *params)?;
    Ok(sim.step(state, &KeyedStream::new(params.master_seed, replicate)))
}

/// One sample of the completion time (convenience wrapper).
pub fn run_once(g: &Graph, src: NodeId, params: &SimParams, replicate: u64) -> Result<RunOutcome> {
    Simulator::new(g, *params)?.run_once(src, replicate)
}

/// Sequential Monte Carlo estimate (convenience wrapper).
pub fn monte_carlo(g: &Graph, src: NodeId, params: &SimParams, replicate_count: u64) -> Result<McEstimate> {
    Simulator::new(g, *params)?.monte_carlo(src, replicate_count)
}
