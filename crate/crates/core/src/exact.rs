//! Exact expected propagation times.
//!
//! Closed forms for the chain and the hub, and an absorbing Markov chain over
//! infected subsets that solves any connected graph with at most
//! [`MAX_EXACT_NODES`] nodes. Because the infected set only grows, the chain
//! is triangular: a state only moves to its supersets, so values can be
//! filled in from the full set downwards without a linear solve.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{check_probability, param_err, Error, Result};
use crate::graph::{Graph, NodeId};

/// Largest graph accepted by the subset solvers.
pub const MAX_EXACT_NODES: usize = 20;

/// Largest client count accepted by [`hub_time`].
pub const MAX_HUB_CLIENTS: usize = 2000;

/// Chain of `n` nodes, information starting at one end: `(n-1)/p`.
pub fn chain_time(n: usize, p: f64) -> Result<f64> {
    check_probability(p)?;
    if n == 0 {
        return Err(param_err!("chain needs at least one node"));
    }
    Ok((n - 1) as f64 / p)
}

/// Approximate propagation time around a ring of `n` nodes, `(n-1)/(2p)`.
/// Not exact; use [`subset_hitting_time`] for the true value.
pub fn ring_approx(n: usize, p: f64) -> Result<f64> {
    check_probability(p)?;
    if n < 3 {
        return Err(param_err!("ring needs at least 3 nodes, got {n}"));
    }
    Ok((n - 1) as f64 / (2.0 * p))
}

/// Hub with `n` clients: centre transmits to every client independently.
pub fn hub_time(n: usize, p: f64) -> Result<f64> {
    Ok(hub_times(n, p)?[n])
}

/// `E[0..=n]` for the hub, solving
/// `(1 - q^m) E[m] = 1 + sum_{k<m} C(m,k) p^(m-k) q^k E[k]` with `E[0] = 0`,
/// where `k` counts clients still uninformed after one step.
pub fn hub_times(n: usize, p: f64) -> Result<Vec<f64>> {
    check_probability(p)?;
    if n > MAX_HUB_CLIENTS {
        return Err(Error::Capacity { what: "hub clients", actual: n, limit: MAX_HUB_CLIENTS });
    }
    let mut e = vec![0.0; n + 1];
    if p == 1.0 {
        e.iter_mut().skip(1).for_each(|x| *x = 1.0);
        return Ok(e);
    }
    let ln_p = libm::log(p);
    let ln_q = libm::log1p(-p);
    for m in 1..=n {
        // log of the Binomial(m, q) pmf at k, by the ratio recurrence
        let mut log_w = m as f64 * ln_p;
        let mut acc = 1.0;
        for (k, &e_k) in e.iter().enumerate().take(m) {
            acc += libm::exp(log_w) * e_k;
            log_w += libm::log((m - k) as f64) - libm::log((k + 1) as f64) + ln_q - ln_p;
        }
        e[m] = acc / -libm::expm1(m as f64 * ln_q);
    }
    Ok(e)
}

/// Expected remaining steps for every reachable infected set.
#[derive(Debug, Clone, PartialEq)]
pub struct HittingTimeTable {
    node_count: usize,
    source: NodeId,
    /// Indexed by bitmask; NaN for sets the process cannot visit.
    values: Vec<f64>,
}

impl HittingTimeTable {
    /// Expected completion time from the source alone.
    pub fn expected(&self) -> f64 {
        self.values[1 << self.source]
    }

    /// Expected remaining steps from the infected set `mask`, if the process
    /// can reach it.
    pub fn get(&self, mask: u32) -> Option<f64> {
        self.values.get(mask as usize).copied().filter(|v| !v.is_nan())
    }

    /// Node count of the solved graph.
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Source node.
    pub fn source(&self) -> NodeId {
        self.source
    }

    /// `(mask, expected remaining steps)` for every reachable set, by mask.
    pub fn iter(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_nan())
            .map(|(m, &v)| (m as u32, v))
    }
}

/// `Pr[T > t]` for `t = 0..=t_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct SurvivalCurve {
    /// `tail[t] = Pr[T > t]`.
    pub tail: Vec<f64>,
}

impl SurvivalCurve {
    /// `sum_t tail[t]`: a lower bound on `E[T]` that converges as `t_max`
    /// grows.
    pub fn truncated_mean(&self) -> f64 {
        self.tail.iter().sum()
    }

    /// First `t` with `Pr[T > t] <= epsilon`, if any within the curve.
    pub fn first_time_below(&self, epsilon: f64) -> Option<usize> {
        self.tail.iter().position(|&x| x <= epsilon)
    }

    /// Largest index.
    pub fn t_max(&self) -> usize {
        self.tail.len() - 1
    }
}

/// Precomputed structure shared by both subset solvers.
struct SubsetChain {
    n: usize,
    source_bit: u32,
    neighbor_masks: Vec<u32>,
    log_q: f64,
    // scratch for superset enumeration
    probs: Vec<f64>,
    targets: Vec<u32>,
}

impl SubsetChain {
    fn new(g: &Graph, src: NodeId, p: f64) -> Result<Self> {
        check_probability(p)?;
        let n = g.node_count();
        if n > MAX_EXACT_NODES {
            return Err(Error::Capacity { what: "node count", actual: n, limit: MAX_EXACT_NODES });
        }
        g.check_node(src)?;
        g.require_connected()?;
        let neighbor_masks = (0..n)
            .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
            .collect();
        Ok(Self {
            n,
            source_bit: 1 << src,
            neighbor_masks,
            log_q: libm::log1p(-p),
            probs: Vec::new(),
            targets: Vec::new(),
        })
    }

    fn full(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    /// Whether `mask` is a set the process can occupy: it holds the source
    /// and induces a connected subgraph.
    fn is_reachable_state(&self, mask: u32) -> bool {
        if mask & self.source_bit == 0 {
            return false;
        }
        let mut reach = self.source_bit;
        let mut fresh = reach;
        while fresh != 0 {
            let mut grown = 0;
            let mut bits = fresh;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                grown |= self.neighbor_masks[v];
            }
            fresh = grown & mask & !reach;
            reach |= fresh;
        }
        reach == mask
    }

    /// Fill `probs`/`targets` with every one-step successor of `mask`.
    /// Index 0 is the self-loop. Returns the probability of leaving `mask`.
    fn expand(&mut self, mask: u32) -> f64 {
        self.probs.clear();
        self.targets.clear();
        self.probs.push(1.0);
        self.targets.push(mask);
        let mut pressure_total = 0u32;
        let mut outside = self.full() & !mask;
        while outside != 0 {
            let v = outside.trailing_zeros() as usize;
            outside &= outside - 1;
            let k = (self.neighbor_masks[v] & mask).count_ones();
            if k == 0 {
                continue;
            }
            pressure_total += k;
            let stay = libm::exp(k as f64 * self.log_q);
            let join = -libm::expm1(k as f64 * self.log_q);
            let len = self.probs.len();
            for i in 0..len {
                let base = self.probs[i];
                self.probs.push(base * join);
                self.targets.push(self.targets[i] | 1 << v);
                self.probs[i] = base * stay;
            }
        }
        -libm::expm1(pressure_total as f64 * self.log_q)
    }
}

/// Exact expected completion time from `src`, with the full table of
/// expected remaining times. Needs a connected graph of at most
/// [`MAX_EXACT_NODES`] nodes.
pub fn subset_hitting_time(g: &Graph, src: NodeId, p: f64) -> Result<HittingTimeTable> {
    let mut chain = SubsetChain::new(g, src, p)?;
    let full = chain.full();
    let mut values = vec![f64::NAN; 1usize << chain.n];
    values[full as usize] = 0.0;
    // Supersets have larger masks, so a descending sweep sees them first.
    for mask in (0..full).rev() {
        if !chain.is_reachable_state(mask) {
            continue;
        }
        let leave = chain.expand(mask);
        assert!(leave > 1e-300, "state {mask:#b} is numerically absorbing");
        let acc: f64 = chain.probs[1..]
            .iter()
            .zip(&chain.targets[1..])
            .map(|(&pr, &t)| pr * values[t as usize])
            .sum();
        values[mask as usize] = (1.0 + acc) / leave;
    }
    Ok(HittingTimeTable { node_count: chain.n, source: src, values })
}

/// Exact `Pr[T > t]` for `t = 0..=t_max`, by pushing the distribution over
/// infected sets forward one step at a time.
pub fn subset_time_distribution(g: &Graph, src: NodeId, p: f64, t_max: usize) -> Result<SurvivalCurve> {
    if t_max == 0 {
        return Err(param_err!("t_max must be at least 1"));
    }
    let mut chain = SubsetChain::new(g, src, p)?;
    let full = chain.full();
    let size = 1usize << chain.n;
    let mut dist = vec![0.0; size];
    let mut next = vec![0.0; size];
    let mut active: Vec<u32> = Vec::new();
    let mut tail = Vec::with_capacity(t_max + 1);
    if chain.source_bit == full {
        tail.resize(t_max + 1, 0.0);
        return Ok(SurvivalCurve { tail });
    }
    dist[chain.source_bit as usize] = 1.0;
    active.push(chain.source_bit);
    tail.push(1.0);
    let mut next_active = Vec::new();
    for _ in 1..=t_max {
        for &mask in &active {
            let mass = dist[mask as usize];
            dist[mask as usize] = 0.0;
            chain.expand(mask);
            for (&pr, &target) in chain.probs.iter().zip(&chain.targets) {
                if target == full || pr == 0.0 {
                    continue;
                }
                let slot = &mut next[target as usize];
                if *slot == 0.0 {
                    next_active.push(target);
                }
                *slot += mass * pr;
            }
        }
        core::mem::swap(&mut dist, &mut next);
        core::mem::swap(&mut active, &mut next_active);
        next_active.clear();
        active.retain(|&m| dist[m as usize] != 0.0);
        // Sorting fixes the summation order, so the curve does not depend on
        // discovery order.
        active.sort_unstable();
        let survive: f64 = active.iter().map(|&m| dist[m as usize]).sum();
        let prev = *tail.last().unwrap_or(&1.0);
        tail.push(survive.clamp(0.0, prev));
    }
    Ok(SurvivalCurve { tail })
}
