//! Subcubic simple graphs with stable node ids.
//!
//! A [`Graph`] keeps one adjacency slot per id ever allocated. Deleting a node
//! marks its slot dead; ids are never compacted or reused, so edges recorded
//! in a partial solution keep referring to the original endpoints.

use std::collections::BTreeSet;
use std::fmt;

use arrayvec::ArrayVec;
use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Largest degree a node may have.
pub const MAX_DEGREE: usize = 3;

/// Stable node identifier (0-based internally, printed 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn from_index(i: usize) -> Self {
        NodeId(i as u32)
    }

    /// The id as it appears in graph files.
    pub fn one_based(self) -> usize {
        self.index() + 1
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.one_based())
    }
}

/// Undirected edge stored with the smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    u: NodeId,
    v: NodeId,
}

impl Edge {
    /// Canonical edge between two distinct nodes.
    pub fn new(a: NodeId, b: NodeId) -> Self {
        debug_assert_ne!(a, b, "edge endpoints must differ");
        if a <= b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn u(self) -> NodeId {
        self.u
    }

    pub fn v(self) -> NodeId {
        self.v
    }

    pub fn endpoints(self) -> [NodeId; 2] {
        [self.u, self.v]
    }

    pub fn contains(self, x: NodeId) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint that is not `x`. `x` must be an endpoint.
    pub fn other(self, x: NodeId) -> NodeId {
        if self.u == x {
            self.v
        } else {
            debug_assert_eq!(self.v, x);
            self.u
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

/// Edge collection with deterministic (canonical) iteration order.
pub type EdgeSet = BTreeSet<Edge>;

type Adjacency = ArrayVec<NodeId, MAX_DEGREE>;

#[derive(Clone, Debug)]
pub struct Graph {
    adj: Vec<Adjacency>,
    live: Vec<bool>,
    n: usize,
    m: usize,
}

impl Graph {
    /// `n` live, isolated nodes with ids `0..n`.
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Adjacency::new(); n], live: vec![true; n], n, m: 0 }
    }

    /// Builds a graph from 0-based index pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(a, b) in edges {
            g.add_edge(NodeId::from_index(a), NodeId::from_index(b))?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, a: NodeId, b: NodeId) -> Result<(), GraphError> {
        self.check_live(a)?;
        self.check_live(b)?;
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        if self.adj[a.index()].contains(&b) {
            return Err(GraphError::DuplicateEdge(a, b));
        }
        for x in [a, b] {
            if self.adj[x.index()].len() == MAX_DEGREE {
                return Err(GraphError::DegreeOverflow(x));
            }
        }
        self.adj[a.index()].push(b);
        self.adj[b.index()].push(a);
        self.m += 1;
        Ok(())
    }

    /// Number of id slots (live or dead).
    pub fn capacity(&self) -> usize {
        self.live.len()
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn contains(&self, v: NodeId) -> bool {
        self.live.get(v.index()).copied().unwrap_or(false)
    }

    fn check_live(&self, v: NodeId) -> Result<(), GraphError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownNode(v))
        }
    }

    /// Live nodes in increasing id order.
    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.live.iter().enumerate().filter(|(_, &l)| l).map(|(i, _)| NodeId::from_index(i))
    }

    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adj[v.index()]
    }

    /// Degree of a live node.
    pub fn degree(&self, v: NodeId) -> Result<usize, GraphError> {
        self.check_live(v)?;
        Ok(self.adj[v.index()].len())
    }

    /// Unchecked degree; dead ids report 0.
    #[inline]
    pub fn deg(&self, v: NodeId) -> usize {
        self.adj[v.index()].len()
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.contains(a) && self.adj[a.index()].contains(&b)
    }

    /// All edges in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.nodes().flat_map(move |u| {
            let mut higher: ArrayVec<NodeId, MAX_DEGREE> =
                self.neighbors(u).iter().copied().filter(|&w| w > u).collect();
            higher.sort_unstable();
            higher.into_iter().map(move |w| Edge::new(u, w))
        })
    }

    pub fn edge_set(&self) -> EdgeSet {
        self.edges().collect()
    }

    pub fn degree_count(&self, d: usize) -> usize {
        self.nodes().filter(|&v| self.deg(v) == d).count()
    }

    pub fn max_degree(&self) -> usize {
        self.nodes().map(|v| self.deg(v)).max().unwrap_or(0)
    }

    /// Copy of the graph without `dead`. Every id in `dead` must be live.
    pub fn remove_nodes<I>(&self, dead: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = NodeId>,
    {
        let dead: BTreeSet<NodeId> = dead.into_iter().collect();
        for &v in &dead {
            self.check_live(v)?;
        }
        let mut g = self.clone();
        g.delete_all(dead);
        Ok(g)
    }

    /// In-place deletion; ids that are already dead are skipped.
    pub fn delete_all<I>(&mut self, dead: I)
    where
        I: IntoIterator<Item = NodeId>,
    {
        for v in dead {
            self.delete(v);
        }
    }

    pub fn delete(&mut self, v: NodeId) {
        if !self.contains(v) {
            return;
        }
        let nbrs = std::mem::take(&mut self.adj[v.index()]);
        for w in &nbrs {
            let list = &mut self.adj[w.index()];
            if let Some(pos) = list.iter().position(|&x| x == v) {
                list.remove(pos);
            }
        }
        self.m -= nbrs.len();
        self.live[v.index()] = false;
        self.n -= 1;
    }

    /// Subgraph induced by `keep` (ids not live in `self` are ignored).
    pub fn induced(&self, keep: &[NodeId]) -> Graph {
        let mut mask = vec![false; self.capacity()];
        for &v in keep {
            if self.contains(v) {
                mask[v.index()] = true;
            }
        }
        let mut g = self.clone();
        for v in self.nodes() {
            if !mask[v.index()] {
                g.delete(v);
            }
        }
        g
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<NodeId>> {
        let mut seen = vec![false; self.capacity()];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for start in self.nodes() {
            if seen[start.index()] {
                continue;
            }
            seen[start.index()] = true;
            stack.push(start);
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in self.neighbors(v) {
                    if !seen[w.index()] {
                        seen[w.index()] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Checks symmetry, simplicity and the degree cap.
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut degree_sum = 0;
        for v in self.nodes() {
            let nb = self.neighbors(v);
            degree_sum += nb.len();
            for (i, &w) in nb.iter().enumerate() {
                if w == v {
                    return Err(format!("self-loop at {v}"));
                }
                if !self.contains(w) {
                    return Err(format!("{v} adjacent to dead node {w}"));
                }
                if !self.neighbors(w).contains(&v) {
                    return Err(format!("asymmetric adjacency {v}->{w}"));
                }
                if nb[..i].contains(&w) {
                    return Err(format!("parallel edge {v}-{w}"));
                }
            }
        }
        for (i, &l) in self.live.iter().enumerate() {
            if !l && !self.adj[i].is_empty() {
                return Err(format!("dead node {} keeps neighbours", i + 1));
            }
        }
        if degree_sum != 2 * self.m {
            return Err(format!("degree sum {degree_sum} != 2m = {}", 2 * self.m));
        }
        if 2 * self.m > 3 * self.n {
            return Err("m exceeds 3n/2".into());
        }
        if self.live.iter().filter(|&&l| l).count() != self.n {
            return Err("live count mismatch".into());
        }
        Ok(())
    }
}

/// Labeled equality: same live ids and same edge set.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.live == other.live && self.m == other.m && self.edges().eq(other.edges())
    }
}

impl Eq for Graph {}

/// True iff every vertex of the subgraph induced by the endpoints of `s` has
/// degree exactly one, i.e. the edges of `s` form an induced matching of `g`.
pub fn is_induced_matching(g: &Graph, s: &EdgeSet) -> bool {
    let mut owner: Vec<Option<Edge>> = vec![None; g.capacity()];
    for &e in s {
        if !g.has_edge(e.u(), e.v()) {
            return false;
        }
        for x in e.endpoints() {
            if owner[x.index()].is_some() {
                return false;
            }
            owner[x.index()] = Some(e);
        }
    }
    for &e in s {
        for x in e.endpoints() {
            for &w in g.neighbors(x) {
                if let Some(f) = owner[w.index()] {
                    if f != e {
                        return false;
                    }
                }
            }
        }
    }
    true
}
