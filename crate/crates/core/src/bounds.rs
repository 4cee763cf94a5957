//! Analytic bounds on the expected propagation time.
//!
//! The lower bound is the source's eccentricity divided by `p`: that many
//! successful transmissions must happen in sequence. The upper bound replaces
//! the graph by its BFS tree from the source, then by a star with one branch
//! per tree leaf, every branch as long as the source's eccentricity. Spreading
//! on that star is `b` parallel Bernoulli counters; a Chernoff bound on the
//! slowest one, with `delta = 1/2` and `tau = (8/p)(d + ln b)`, gives
//! `Pr[not done by tau] <= e^-1`, and the tail-to-expectation lemma turns that
//! into `E[T] <= tau / (1 - e^-1)`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::SQRT_2;

use crate::error::{check_probability, param_err, Error, Result};
use crate::graph::{Graph, GeometricLayout, NodeId};

/// `Pr[not finished by tau]` used by the star bound.
pub const STAR_EPSILON: f64 = 0.367_879_441_171_442_33; // e^-1

/// Eccentricity of the source over `p`.
pub fn lower_bound(g: &Graph, src: NodeId, p: f64) -> Result<f64> {
    check_probability(p)?;
    Ok(g.eccentricity(src)? as f64 / p)
}

/// Star that dominates the graph: `b` branches of depth `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StarReduction {
    /// Branch depth: eccentricity of the source.
    pub d: usize,
    /// Branch count: leaves of the BFS tree rooted at the source.
    pub b: usize,
}

/// Reduce `g` seen from `src` to a star. Needs at least two nodes.
pub fn star_reduction(g: &Graph, src: NodeId) -> Result<StarReduction> {
    if g.node_count() < 2 {
        return Err(Error::Degenerate("star reduction needs at least two nodes"));
    }
    let tree = g.bfs_tree(src)?;
    Ok(StarReduction { d: tree.height(), b: tree.leaf_count() })
}

/// Star bound quantities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarBound {
    /// `(8/p)(d + ln b)`.
    pub tau: f64,
    /// Bound on `Pr[not finished by tau]`.
    pub epsilon: f64,
    /// `tau / (1 - epsilon)`.
    pub upper: f64,
    /// Set for the single-node case `d = 0`, where every field is 0.
    pub degenerate: bool,
}

/// Upper bound on the propagation time of a star with `b` branches of depth
/// `d`.
pub fn star_upper_bound(red: StarReduction, p: f64) -> Result<StarBound> {
    check_probability(p)?;
    if red.d == 0 {
        return Ok(StarBound { tau: 0.0, epsilon: 0.0, upper: 0.0, degenerate: true });
    }
    if red.b == 0 {
        return Err(param_err!("a star of depth {} needs at least one branch", red.d));
    }
    let tau = 8.0 / p * (red.d as f64 + libm::log(red.b as f64));
    Ok(StarBound { tau, epsilon: STAR_EPSILON, upper: hitting_time_from_tail(tau, STAR_EPSILON)?, degenerate: false })
}

/// Lower and upper bound for spreading on a graph from one source.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundReport {
    /// Eccentricity over `p`.
    pub lower: f64,
    /// Star the upper bound is computed on.
    pub reduction: StarReduction,
    /// Time by which the star finishes with probability at least `1 - epsilon`.
    pub tau: f64,
    /// See `tau`.
    pub epsilon: f64,
    /// `tau / (1 - epsilon)`.
    pub upper: f64,
    /// Transmission probability.
    pub p: f64,
}

/// Both bounds for `g` from `src`. A single node yields an all-zero report.
pub fn network_upper_bound(g: &Graph, src: NodeId, p: f64) -> Result<BoundReport> {
    let lower = lower_bound(g, src, p)?;
    let reduction = match star_reduction(g, src) {
        Ok(r) => r,
        Err(Error::Degenerate(_)) => StarReduction { d: 0, b: 0 },
        Err(e) => return Err(e),
    };
    let star = star_upper_bound(reduction, p)?;
    Ok(BoundReport { lower, reduction, tau: star.tau, epsilon: star.epsilon, upper: star.upper, p })
}

/// `min(1, b * exp(-t p delta^2 / 2))`: bound on the probability that the
/// slowest of `b` independent Binomial(t, p) counters is below `(1-delta) t p`.
pub fn chernoff_tail(t: f64, p: f64, delta: f64, b: usize) -> f64 {
    debug_assert!(t >= 0.0 && (0.0..=1.0).contains(&p) && delta > 0.0 && delta <= 1.0 && b >= 1);
    (b as f64 * libm::exp(-t * p * delta * delta / 2.0)).min(1.0)
}

/// If a monotone process is done by `tau` with probability at least
/// `1 - epsilon`, its expected hitting time is at most `tau / (1 - epsilon)`.
pub fn hitting_time_from_tail(tau: f64, epsilon: f64) -> Result<f64> {
    if tau.is_nan() || tau < 0.0 {
        return Err(param_err!("tau must be non-negative, got {tau}"));
    }
    if !(0.0..1.0).contains(&epsilon) {
        return Err(param_err!("epsilon must lie in [0, 1), got {epsilon}"));
    }
    Ok(tau / (1.0 - epsilon))
}

/// `(q ln(n+1), ln(n+1) / ln(2/(1+q)))`, bracketing the hub time with `n`
/// clients.
pub fn hub_bounds(n: usize, p: f64) -> Result<(f64, f64)> {
    check_probability(p)?;
    let q = 1.0 - p;
    let ln_n1 = libm::log1p(n as f64);
    Ok((q * ln_n1, ln_n1 / libm::log(2.0 / (1.0 + q))))
}

/// `E[ln(k+1)]` for `k ~ Binomial(n, q)`.
pub fn binomial_log_moment(n: usize, q: f64) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(param_err!("q must lie in (0, 1), got {q}"));
    }
    let ln_q = libm::log(q);
    let ln_p = libm::log1p(-q);
    let mut log_pmf = n as f64 * ln_p;
    let mut total = 0.0;
    for k in 0..=n {
        total += libm::exp(log_pmf) * libm::log1p(k as f64);
        log_pmf += libm::log((n - k) as f64) - libm::log((k + 1) as f64) + ln_q - ln_p;
    }
    Ok(total)
}

/// Bracket `[ln(n+1) - 1/q, ln(n+1) - ln(2/(1+q))]` on [`binomial_log_moment`].
pub fn binomial_log_moment_bracket(n: usize, q: f64) -> (f64, f64) {
    let ln_n1 = libm::log1p(n as f64);
    (ln_n1 - 1.0 / q, ln_n1 - libm::log(2.0 / (1.0 + q)))
}

/// Occupancy of the `r/sqrt(2)` tiling of the unit square.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TilingReport {
    /// Tiles per side, `ceil(sqrt(2)/r)`; the last row and column may be partial.
    pub tiles_per_side: usize,
    /// `r / sqrt(2)`; points sharing a tile are within distance `r`.
    pub tile_side: f64,
    /// Whether every tile holds at least one point.
    pub all_tiles_occupied: bool,
    /// Occupied tiles over all tiles.
    pub occupied_fraction: f64,
    /// Tile moves between opposite corner tiles, counting a diagonal move as
    /// two edge moves: `2(m-1)`.
    pub corner_tile_path_length: usize,
}

/// Tile the unit square with squares of side `r/sqrt(2)` and report how the
/// layout's points fall into them. For `r >= sqrt(2)` there is one tile.
pub fn geometric_tiling(layout: &GeometricLayout) -> TilingReport {
    let r = layout.radius;
    // a ratio within rounding of an integer counts as integral
    let m = if r >= SQRT_2 { 1 } else { libm::ceil(SQRT_2 / r - 1e-9) as usize };
    let tile_side = r / SQRT_2;
    let tile_of = |x: f64| ((x / tile_side) as usize).min(m - 1);
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); m * m];
    for (i, &(x, y)) in layout.points.iter().enumerate() {
        members[tile_of(y) * m + tile_of(x)].push(i);
    }
    #[cfg(debug_assertions)]
    if r < SQRT_2 {
        for tile in &members {
            for (a, &i) in tile.iter().enumerate() {
                for &j in &tile[a + 1..] {
                    let (p, q) = (layout.points[i], layout.points[j]);
                    let d2 = (p.0 - q.0) * (p.0 - q.0) + (p.1 - q.1) * (p.1 - q.1);
                    debug_assert!(d2 <= r * r, "points {i} and {j} share a tile but are {d2} apart");
                }
            }
        }
    }
    let occupied = members.iter().filter(|t| !t.is_empty()).count();
    TilingReport {
        tiles_per_side: m,
        tile_side,
        all_tiles_occupied: occupied == m * m,
        occupied_fraction: occupied as f64 / (m * m) as f64,
        corner_tile_path_length: 2 * (m - 1),
    }
}
