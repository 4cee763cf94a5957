//! Undirected simple graphs and the distance metrics the bounds are built on.

use alloc::collections::VecDeque;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

mod generate;

pub use generate::{generate, FamilySpec, GeometricLayout, Generated};

/// Node index, 0-based.
pub type NodeId = usize;

/// Immutable undirected simple graph.
///
/// Adjacency lists are sorted, free of self-loops and duplicates, and
/// symmetric. Every constructor checks or establishes these invariants.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    edge_count: usize,
}

impl Graph {
    /// Graph with `n` nodes and no edges.
    pub fn empty(n: usize) -> Self {
        Self { adjacency: vec![Vec::new(); n], edge_count: 0 }
    }

    /// Build from an edge list. Rejects self-loops, duplicate edges (in either
    /// orientation) and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(alloc::format!(
                    "edge ({u}, {v}) out of range for {n} nodes"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(alloc::format!("self-loop at node {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(alloc::format!("duplicate edge at node {u}")));
            }
        }
        Ok(Self { adjacency, edge_count: edges.len() })
    }

    /// Build from an edge list, silently dropping self-loops and parallel
    /// edges. Endpoints must be in range.
    pub(crate) fn from_edges_simplified(n: usize, edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            debug_assert!(u < n && v < n);
            if u != v {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
        let mut twice = 0;
        for list in adjacency.iter_mut() {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        Self { adjacency, edge_count: twice / 2 }
    }

    /// Build from adjacency lists, validating every invariant.
    pub fn from_adjacency(mut adjacency: Vec<Vec<NodeId>>) -> Result<Self> {
        let n = adjacency.len();
        let mut twice = 0;
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(alloc::format!("duplicate neighbour at node {u}")));
            }
            if list.iter().any(|&v| v >= n) {
                return Err(Error::InvalidGraph(alloc::format!("neighbour out of range at node {u}")));
            }
            if list.binary_search(&u).is_ok() {
                return Err(Error::InvalidGraph(alloc::format!("self-loop at node {u}")));
            }
            twice += list.len();
        }
        for (u, list) in adjacency.iter().enumerate() {
            for &v in list {
                if adjacency[v].binary_search(&u).is_err() {
                    return Err(Error::InvalidGraph(alloc::format!("edge ({u}, {v}) is not symmetric")));
                }
            }
        }
        Ok(Self { adjacency, edge_count: twice / 2 })
    }

    /// Number of nodes.
    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[v]
    }

    /// Degree of `v`.
    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v].len()
    }

    /// Largest degree, 0 for an empty graph.
    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Whether `u` and `v` are adjacent.
    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub(crate) fn check_node(&self, v: NodeId) -> Result<()> {
        if v < self.node_count() {
            Ok(())
        } else {
            Err(crate::error::param_err!("node {v} out of range for {} nodes", self.node_count()))
        }
    }

    /// Hop distance from `src` to every node; `None` marks unreachable nodes.
    pub fn bfs_distances(&self, src: NodeId) -> Result<Vec<Option<usize>>> {
        self.check_node(src)?;
        let mut dist = vec![None; self.node_count()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let next = dist[u].map(|d| d + 1);
            for &v in &self.adjacency[u] {
                if dist[v].is_none() {
                    dist[v] = next;
                    queue.push_back(v);
                }
            }
        }
        Ok(dist)
    }

    /// Maximum hop distance from `v` to any node.
    pub fn eccentricity(&self, v: NodeId) -> Result<usize> {
        let dist = self.bfs_distances(v)?;
        dist.iter()
            .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
            .ok_or(Error::Disconnected)
    }

    /// Largest eccentricity over all nodes. 0 for graphs with at most one node.
    pub fn diameter(&self) -> Result<usize> {
        let n = self.node_count();
        if n <= 1 {
            return Ok(0);
        }
        self.require_connected()?;
        if self.edge_count == n * (n - 1) / 2 {
            return Ok(1);
        }
        // ecc(v) <= 2 * ecc(u) for all u, v: once the largest eccentricity
        // seen reaches twice the smallest, it is the diameter. A double sweep
        // supplies a large first value and a central node for the small one.
        let far = |dist: &[Option<usize>]| {
            let (v, d) = dist.iter().enumerate().max_by_key(|(_, d)| d.unwrap_or(0)).unwrap();
            (v, d.unwrap_or(0))
        };
        let (a, _) = far(&self.bfs_distances(0)?);
        let tree = self.bfs_tree(a)?;
        let (b, sweep) = far(&tree.depth.iter().map(|&d| Some(d)).collect::<Vec<_>>());
        let mut mid = b;
        for _ in 0..sweep / 2 {
            mid = tree.parent[mid].unwrap_or(mid);
        }
        let mut best = sweep;
        let mut smallest = self.eccentricity(mid)?;
        for v in 0..n {
            if best >= 2 * smallest {
                break;
            }
            let e = self.eccentricity(v)?;
            best = best.max(e);
            smallest = smallest.min(e);
        }
        Ok(best)
    }

    /// Whether every node is reachable from node 0. The empty graph counts as
    /// connected.
    pub fn is_connected(&self) -> bool {
        match self.node_count() {
            0 => true,
            _ => self.bfs_distances(0).map(|d| d.iter().all(Option::is_some)).unwrap_or(false),
        }
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Shortest-path spanning tree rooted at `src`.
    pub fn bfs_tree(&self, src: NodeId) -> Result<BfsTree> {
        self.check_node(src)?;
        let n = self.node_count();
        let mut parent = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        depth[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if depth[v] == usize::MAX {
                    depth[v] = depth[u] + 1;
                    parent[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        if depth.contains(&usize::MAX) {
            return Err(Error::Disconnected);
        }
        Ok(BfsTree { root: src, parent, depth })
    }

    /// Connected components as node lists, each sorted, ordered by smallest
    /// member.
    pub fn components(&self) -> Vec<Vec<NodeId>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut members = vec![start];
            let mut head = 0;
            while head < members.len() {
                let u = members[head];
                head += 1;
                for &v in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        members.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Subgraph induced by `nodes` (must be distinct and in range); new index
    /// `i` corresponds to `nodes[i]`.
    pub fn induced_subgraph(&self, nodes: &[NodeId]) -> Subgraph {
        let mut old_to_new = vec![None; self.node_count()];
        for (i, &v) in nodes.iter().enumerate() {
            old_to_new[v] = Some(i);
        }
        let adjacency = nodes
            .iter()
            .map(|&v| {
                let mut list: Vec<NodeId> =
                    self.adjacency[v].iter().filter_map(|&u| old_to_new[u]).collect();
                list.sort_unstable();
                list
            })
            .collect::<Vec<_>>();
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Subgraph {
            graph: Graph { adjacency, edge_count },
            old_to_new,
            new_to_old: nodes.to_vec(),
        }
    }

    /// Largest connected component. Ties go to the component holding the
    /// smallest original index.
    pub fn giant_component(&self) -> Subgraph {
        let mut best: Vec<NodeId> = Vec::new();
        for c in self.components() {
            if c.len() > best.len() {
                best = c;
            }
        }
        self.induced_subgraph(&best)
    }
}

impl core::fmt::Display for Graph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Graph(n={}, m={})", self.node_count(), self.edge_count)
    }
}

/// An induced subgraph together with its index maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    /// The subgraph, reindexed from 0.
    pub graph: Graph,
    /// For each original node, its new index if it was kept.
    pub old_to_new: Vec<Option<NodeId>>,
    /// For each new node, its original index.
    pub new_to_old: Vec<NodeId>,
}

/// Shortest-path spanning tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsTree {
    /// Root node.
    pub root: NodeId,
    /// Parent of each node; `None` for the root.
    pub parent: Vec<Option<NodeId>>,
    /// Hop distance of each node from the root.
    pub depth: Vec<usize>,
}

impl BfsTree {
    /// Number of non-root nodes without children.
    pub fn leaf_count(&self) -> usize {
        let n = self.parent.len();
        let mut has_child = vec![false; n];
        for p in self.parent.iter().flatten() {
            has_child[*p] = true;
        }
        (0..n).filter(|&v| v != self.root && !has_child[v]).count()
    }

    /// Largest depth.
    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    /// Tree edges as `(parent, child)`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.parent.iter().enumerate().filter_map(|(v, p)| p.map(|p| (p, v)))
    }

    /// The tree as a standalone graph on the same node set.
    pub fn to_graph(&self) -> Graph {
        Graph::from_edges_simplified(self.parent.len(), self.edges())
    }
}

impl Graph {
    /// Human-readable check of every invariant; used by tests and readers.
    pub fn validate(&self) -> Result<()> {
        Graph::from_adjacency(self.adjacency.clone()).and_then(|g| {
            if g.edge_count == self.edge_count {
                Ok(())
            } else {
                Err(Error::InvalidGraph("edge count mismatch".to_string()))
            }
        })
    }
}
