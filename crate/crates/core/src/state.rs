use crate::bisection::{Cut, Side};
use crate::graph::{is_induced_matching, Edge, EdgeSet, Graph, NodeId};

/// One recursion frame of the solver: the remaining graph, the edges chosen
/// so far, the bisection edges still to be branched on and the side of
/// every node that has one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverState {
    pub graph: Graph,
    pub s: EdgeSet,
    pub b: EdgeSet,
    pub side: Vec<Option<Side>>,
}

/// Outcome of one branch: nodes to delete and edges to select. Selected
/// edges must have both endpoints and all their neighbours in `delete`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alternative {
    pub delete: Vec<NodeId>,
    pub add_to_s: Vec<Edge>,
}

impl Alternative {
    /// Delete the given nodes without selecting anything.
    pub fn remove<I: IntoIterator<Item = NodeId>>(nodes: I) -> Self {
        let mut delete: Vec<NodeId> = nodes.into_iter().collect();
        delete.sort_unstable();
        delete.dedup();
        Alternative { delete, add_to_s: Vec::new() }
    }

    /// Select `e` and delete both closed neighbourhoods of its endpoints.
    pub fn select(g: &Graph, e: Edge) -> Self {
        Self::select_all(g, &[e], [])
    }

    /// Select several edges and delete their closed neighbourhoods plus `extra`.
    pub fn select_all<I: IntoIterator<Item = NodeId>>(g: &Graph, edges: &[Edge], extra: I) -> Self {
        let mut delete: Vec<NodeId> = extra.into_iter().collect();
        for e in edges {
            for x in e.endpoints() {
                delete.push(x);
                delete.extend_from_slice(g.neighbors(x));
            }
        }
        let mut alt = Self::remove(delete);
        alt.add_to_s = edges.to_vec();
        alt
    }

    /// Checks that every selected edge exists and its closed neighbourhood is deleted.
    pub fn is_well_formed(&self, g: &Graph) -> bool {
        self.add_to_s.iter().all(|e| {
            g.has_edge(e.u(), e.v())
                && e.endpoints().iter().all(|&x| {
                    self.delete.binary_search(&x).is_ok()
                        && g.neighbors(x).iter().all(|w| self.delete.binary_search(w).is_ok())
                })
        })
    }
}

impl SolverState {
    pub fn new(graph: Graph) -> Self {
        let cap = graph.capacity();
        SolverState { graph, s: EdgeSet::new(), b: EdgeSet::new(), side: vec![None; cap] }
    }

    pub fn with_cut(graph: Graph, cut: Cut) -> Self {
        SolverState { graph, s: EdgeSet::new(), b: cut.b, side: cut.side }
    }

    pub fn side_of(&self, v: NodeId) -> Option<Side> {
        self.side.get(v.index()).copied().flatten()
    }

    /// Deletes nodes, extends `S`, and intersects `B` with the surviving edges.
    pub fn apply(&self, alt: &Alternative) -> SolverState {
        let mut next = self.clone();
        next.apply_in_place(alt);
        next
    }

    pub fn apply_in_place(&mut self, alt: &Alternative) {
        for &v in &alt.delete {
            self.graph.delete(v);
            self.side[v.index()] = None;
        }
        self.s.extend(alt.add_to_s.iter().copied());
        let graph = &self.graph;
        self.b.retain(|e| graph.has_edge(e.u(), e.v()));
    }

    /// Number of `B` edges incident to `v`.
    pub fn cut_degree(&self, v: NodeId) -> usize {
        self.graph.neighbors(v).iter().filter(|&&w| self.b.contains(&Edge::new(v, w))).count()
    }

    /// Structural invariants relative to the original input graph.
    pub fn check(&self, original: &Graph) -> Result<(), String> {
        self.graph.check_invariants()?;
        if !is_induced_matching(original, &self.s) {
            return Err("S is not an induced matching of the input".into());
        }
        for e in &self.s {
            for x in e.endpoints() {
                if self.graph.contains(x) {
                    return Err(format!("S endpoint {x} still live"));
                }
                for &w in original.neighbors(x) {
                    if self.graph.contains(w) {
                        return Err(format!("neighbour {w} of S endpoint {x} still live"));
                    }
                }
            }
        }
        for e in &self.b {
            if !self.graph.has_edge(e.u(), e.v()) {
                return Err(format!("B edge {e} not in E"));
            }
            match (self.side_of(e.u()), self.side_of(e.v())) {
                (Some(a), Some(b)) if a != b => {}
                _ => return Err(format!("B edge {e} does not cross the cut")),
            }
        }
        Ok(())
    }
}
