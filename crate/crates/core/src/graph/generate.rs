use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, NodeId};
use crate::error::{param_err, Error, Result};

/// Largest binary tree depth accepted (2^25 - 1 nodes).
const MAX_TREE_DEPTH: usize = 24;

/// Graph families the generator can realize.
///
/// Deterministic families ignore the seed passed to [`generate`]; random ones
/// are a pure function of `(spec, seed)`.
#[allow(missing_docs)]
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "family", rename_all = "snake_case"))]
pub enum FamilySpec {
    /// Path on `n` nodes, `0 - 1 - ... - (n-1)`.
    Chain { n: usize },
    /// Cycle on `n >= 3` nodes.
    Ring { n: usize },
    /// Centre node 0 joined to `n_clients` leaves; identical to `Star { b: n_clients, d: 1 }`.
    Hub { n_clients: usize },
    /// Hub node 0 joined to `b` disjoint paths of `d` nodes. Branch `j`
    /// occupies indices `1 + j*d ..= (j+1)*d`, nearest-to-hub first.
    Star { b: usize, d: usize },
    /// Complete graph on `n` nodes.
    Complete { n: usize },
    /// Complete multipartite graph; parts occupy consecutive index blocks.
    CompleteMultipartite { part_sizes: Vec<usize> },
    /// Complete binary tree with root 0 and children `2i+1`, `2i+2`.
    BinaryTree { depth: usize },
    /// `side x side` grid with 4-neighbourhoods; node `row*side + col`.
    Lattice2d { side: usize },
    /// Grid plus `num_shortcuts` uniformly random extra edges.
    Lattice2dShortcuts { side: usize, num_shortcuts: usize },
    /// G(n, p).
    ErdosRenyi { n: usize, edge_prob: f64 },
    /// Configuration model with degrees drawn from `P(k) ~ k^-lambda`,
    /// `k_min <= k <= n-1`, loops and multi-edges removed, reduced to its
    /// giant component.
    PowerLaw { n: usize, lambda: f64, k_min: usize },
    /// `n` uniform points in the unit square joined when closer than `r`.
    Geometric { n: usize, r: f64 },
}


impl FamilySpec {
    /// Short snake_case family name.
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Chain { .. } => "chain",
            FamilySpec::Ring { .. } => "ring",
            FamilySpec::Hub { .. } => "hub",
            FamilySpec::Star { .. } => "star",
            FamilySpec::Complete { .. } => "complete",
            FamilySpec::CompleteMultipartite { .. } => "complete_multipartite",
            FamilySpec::BinaryTree { .. } => "binary_tree",
            FamilySpec::Lattice2d { .. } => "lattice2d",
            FamilySpec::Lattice2dShortcuts { .. } => "lattice2d_shortcuts",
            FamilySpec::ErdosRenyi { .. } => "erdos_renyi",
            FamilySpec::PowerLaw { .. } => "power_law",
            FamilySpec::Geometric { .. } => "geometric",
        }
    }

    /// Whether the generated graph depends on the seed.
    pub fn is_random(&self) -> bool {
        matches!(
            self,
            FamilySpec::Lattice2dShortcuts { .. }
                | FamilySpec::ErdosRenyi { .. }
                | FamilySpec::PowerLaw { .. }
                | FamilySpec::Geometric { .. }
        )
    }

    /// Check parameter domains.
    pub fn validate(&self) -> Result<()> {
        match *self {
            FamilySpec::Ring { n } if n < 3 => Err(param_err!("ring needs at least 3 nodes, got {n}")),
            FamilySpec::BinaryTree { depth } if depth > MAX_TREE_DEPTH => Err(Error::Capacity {
                what: "binary tree depth",
                actual: depth,
                limit: MAX_TREE_DEPTH,
            }),
            FamilySpec::ErdosRenyi { edge_prob, .. } if !(0.0..=1.0).contains(&edge_prob) => {
                Err(param_err!("edge probability must lie in [0, 1], got {edge_prob}"))
            }
            FamilySpec::PowerLaw { lambda, .. } if !(lambda > 2.0 && lambda.is_finite()) => {
                Err(param_err!("power-law exponent must exceed 2, got {lambda}"))
            }
            FamilySpec::PowerLaw { k_min, .. } if k_min < 1 => Err(param_err!("k_min must be at least 1")),
            FamilySpec::PowerLaw { n, k_min, .. } if n <= k_min => {
                Err(param_err!("power-law graph needs n > k_min, got n={n}, k_min={k_min}"))
            }
            FamilySpec::Geometric { r, .. } if !(r > 0.0 && r.is_finite()) => {
                Err(param_err!("geometric radius must be positive, got {r}"))
            }
            FamilySpec::Lattice2dShortcuts { side, num_shortcuts } => {
                let n = side * side;
                let lattice_edges = 2 * side * side.saturating_sub(1);
                let free = (n * n.saturating_sub(1) / 2).saturating_sub(lattice_edges);
                if num_shortcuts > free {
                    Err(param_err!("{num_shortcuts} shortcuts do not fit in a {side}x{side} lattice"))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }
}

impl core::fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            FamilySpec::Chain { n } | FamilySpec::Ring { n } | FamilySpec::Complete { n } => {
                write!(f, "{}{{{n}}}", self.name())
            }
            FamilySpec::Hub { n_clients } => write!(f, "hub{{{n_clients}}}"),
            FamilySpec::Star { b, d } => write!(f, "star{{b={b},d={d}}}"),
            FamilySpec::CompleteMultipartite { part_sizes } => {
                let parts: Vec<String> = part_sizes.iter().map(|p| alloc::format!("{p}")).collect();
                write!(f, "complete_multipartite{{{}}}", parts.join(","))
            }
            FamilySpec::BinaryTree { depth } => write!(f, "binary_tree{{depth={depth}}}"),
            FamilySpec::Lattice2d { side } => write!(f, "lattice2d{{side={side}}}"),
            FamilySpec::Lattice2dShortcuts { side, num_shortcuts } => {
                write!(f, "lattice2d_shortcuts{{side={side},shortcuts={num_shortcuts}}}")
            }
            FamilySpec::ErdosRenyi { n, edge_prob } => write!(f, "erdos_renyi{{n={n},p={edge_prob}}}"),
            FamilySpec::PowerLaw { n, lambda, k_min } => {
                write!(f, "power_law{{n={n},lambda={lambda},k_min={k_min}}}")
            }
            FamilySpec::Geometric { n, r } => write!(f, "geometric{{n={n},r={r}}}"),
        }
    }
}

/// Node positions of a random geometric graph.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GeometricLayout {
    /// Coordinates in `[0, 1]^2`, indexed by node.
    pub points: Vec<(f64, f64)>,
    /// Connection radius.
    pub radius: f64,
}

impl GeometricLayout {
    /// Checks coordinates and radius.
    pub fn new(points: Vec<(f64, f64)>, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(param_err!("radius must be positive, got {radius}"));
        }
        if let Some(i) = points
            .iter()
            .position(|&(x, y)| !((0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y)))
        {
            return Err(param_err!("point {i} lies outside the unit square"));
        }
        Ok(Self { points, radius })
    }

    /// Graph joining every pair of points strictly closer than the radius.
    pub fn to_graph(&self) -> Graph {
        let r2 = self.radius * self.radius;
        let pts = &self.points;
        let mut edges = Vec::new();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let dx = pts[i].0 - pts[j].0;
                let dy = pts[i].1 - pts[j].1;
                if dx * dx + dy * dy < r2 {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges_simplified(pts.len(), edges)
    }
}

/// Output of [`generate`].
#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    /// The graph.
    pub graph: Graph,
    /// Point positions, for the geometric family only.
    pub layout: Option<GeometricLayout>,
    /// Node count before giant-component extraction (power-law family only).
    pub nodes_before_extraction: Option<usize>,
}

impl From<Graph> for Generated {
    fn from(graph: Graph) -> Self {
        Self { graph, layout: None, nodes_before_extraction: None }
    }
}

/// Realize a family. Random families draw from ChaCha8 seeded with `seed`.
pub fn generate(spec: &FamilySpec, seed: u64) -> Result<Generated> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let out = match *spec {
        FamilySpec::Chain { n } => chain(n).into(),
        FamilySpec::Ring { n } => {
            Graph::from_edges_simplified(n, (0..n).map(|i| (i, (i + 1) % n))).into()
        }
        FamilySpec::Hub { n_clients } => star(n_clients, 1).into(),
        FamilySpec::Star { b, d } => star(b, d).into(),
        FamilySpec::Complete { n } => multipartite(&vec![1; n]).into(),
        FamilySpec::CompleteMultipartite { ref part_sizes } => multipartite(part_sizes).into(),
        FamilySpec::BinaryTree { depth } => {
            let n = (1usize << (depth + 1)) - 1;
            Graph::from_edges_simplified(n, (1..n).map(|v| ((v - 1) / 2, v))).into()
        }
        FamilySpec::Lattice2d { side } => Graph::from_edges_simplified(side * side, lattice_edges(side)).into(),
        FamilySpec::Lattice2dShortcuts { side, num_shortcuts } => {
            lattice_with_shortcuts(side, num_shortcuts, &mut rng).into()
        }
        FamilySpec::ErdosRenyi { n, edge_prob } => erdos_renyi(n, edge_prob, &mut rng).into(),
        FamilySpec::PowerLaw { n, lambda, k_min } => {
            let full = configuration_model(n, lambda, k_min, &mut rng)?;
            Generated {
                graph: full.giant_component().graph,
                layout: None,
                nodes_before_extraction: Some(n),
            }
        }
        FamilySpec::Geometric { n, r } => {
            let points = (0..n).map(|_| (rng.random::<f64>(), rng.random::<f64>())).collect();
            let layout = GeometricLayout { points, radius: r };
            Generated { graph: layout.to_graph(), layout: Some(layout), nodes_before_extraction: None }
        }
    };
    Ok(out)
}

fn chain(n: usize) -> Graph {
    Graph::from_edges_simplified(n, (1..n).map(|v| (v - 1, v)))
}

fn star(b: usize, d: usize) -> Graph {
    let n = 1 + b * d;
    let edges = (0..b).flat_map(|j| {
        let first = 1 + j * d;
        (0..d).map(move |i| if i == 0 { (0, first) } else { (first + i - 1, first + i) })
    });
    Graph::from_edges_simplified(n, edges)
}

fn multipartite(part_sizes: &[usize]) -> Graph {
    let n: usize = part_sizes.iter().sum();
    let mut part_of = Vec::with_capacity(n);
    for (i, &s) in part_sizes.iter().enumerate() {
        part_of.extend(core::iter::repeat_n(i, s));
    }
    let edges = (0..n).flat_map(|u| {
        let part_of = &part_of;
        (u + 1..n).filter(move |&v| part_of[u] != part_of[v]).map(move |v| (u, v))
    });
    Graph::from_edges_simplified(n, edges.collect::<Vec<_>>())
}

fn lattice_edges(side: usize) -> impl Iterator<Item = (NodeId, NodeId)> {
    (0..side).flat_map(move |row| {
        (0..side).flat_map(move |col| {
            let v = row * side + col;
            let right = (col + 1 < side).then_some((v, v + 1));
            let down = (row + 1 < side).then_some((v, v + side));
            right.into_iter().chain(down)
        })
    })
}

fn lattice_with_shortcuts(side: usize, num_shortcuts: usize, rng: &mut ChaCha8Rng) -> Graph {
    let n = side * side;
    let base = Graph::from_edges_simplified(n, lattice_edges(side));
    let mut extra: Vec<(NodeId, NodeId)> = Vec::with_capacity(num_shortcuts);
    while extra.len() < num_shortcuts {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        let e = (u.min(v), u.max(v));
        if u != v && !base.has_edge(u, v) && !extra.contains(&e) {
            extra.push(e);
        }
    }
    Graph::from_edges_simplified(n, base.edges().chain(extra))
}

/// G(n, p) by geometric skipping over the lower triangle.
fn erdos_renyi(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    if p <= 0.0 || n < 2 {
        return Graph::empty(n);
    }
    if p >= 1.0 {
        return multipartite(&vec![1; n]);
    }
    let log_q = libm::log1p(-p);
    let mut edges = Vec::new();
    let (mut v, mut w) = (1usize, -1i64);
    while v < n {
        let r: f64 = rng.random();
        w += 1 + (libm::log1p(-r) / log_q) as i64;
        while v < n && w >= v as i64 {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((w as usize, v));
        }
    }
    Graph::from_edges_simplified(n, edges)
}

/// Degrees from the truncated discrete power law, stubs paired uniformly,
/// loops and parallel edges dropped.
fn configuration_model(n: usize, lambda: f64, k_min: usize, rng: &mut ChaCha8Rng) -> Result<Graph> {
    let k_max = n - 1;
    let mut cumulative = Vec::with_capacity(k_max - k_min + 1);
    let mut total = 0.0;
    for k in k_min..=k_max {
        total += libm::pow(k as f64, -lambda);
        cumulative.push(total);
    }
    let draw = |rng: &mut ChaCha8Rng| {
        let u = rng.random::<f64>() * total;
        k_min + cumulative.partition_point(|&c| c <= u).min(cumulative.len() - 1)
    };
    let mut degrees: Vec<usize> = (0..n).map(|_| draw(rng)).collect();
    if degrees.iter().sum::<usize>() % 2 == 1 {
        // Redraw the last degree until the stub count is even.
        if k_min == k_max {
            return Err(param_err!("every degree equals {k_min} and n={n}: stub count is odd"));
        }
        loop {
            degrees[n - 1] = draw(rng);
            if degrees.iter().sum::<usize>() % 2 == 0 {
                break;
            }
        }
    }
    let mut stubs: Vec<NodeId> =
        degrees.iter().enumerate().flat_map(|(v, &k)| core::iter::repeat_n(v, k)).collect();
    stubs.shuffle(rng);
    Ok(Graph::from_edges_simplified(n, stubs.chunks_exact(2).map(|c| (c[0], c[1]))))
}
