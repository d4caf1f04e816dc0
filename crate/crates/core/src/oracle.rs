//! Exhaustive maximum induced matching, used as ground truth in tests.

use crate::error::OracleError;
use crate::graph::{Edge, EdgeSet, Graph};

pub const DEFAULT_EDGE_LIMIT: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub size: usize,
    pub witness: EdgeSet,
    /// Search nodes visited.
    pub explored: u64,
}

pub fn brute_force_mim(g: &Graph) -> Result<OracleResult, OracleError> {
    brute_force_mim_with_limit(g, DEFAULT_EDGE_LIMIT)
}

pub fn brute_force_mim_with_limit(g: &Graph, limit: usize) -> Result<OracleResult, OracleError> {
    let m = g.edge_count();
    if m > limit {
        return Err(OracleError::TooLarge { m, limit });
    }
    let mut search = Search {
        g,
        edges: g.edges().collect(),
        used: vec![false; g.capacity()],
        current: Vec::new(),
        best: Vec::new(),
        explored: 0,
    };
    search.run(0);
    Ok(OracleResult {
        size: search.best.len(),
        witness: search.best.into_iter().collect(),
        explored: search.explored,
    })
}

struct Search<'a> {
    g: &'a Graph,
    edges: Vec<Edge>,
    used: Vec<bool>,
    current: Vec<Edge>,
    best: Vec<Edge>,
    explored: u64,
}

impl Search<'_> {
    /// An edge may join iff neither endpoint nor any neighbour of an endpoint
    /// is already an endpoint of a chosen edge.
    fn addable(&self, e: Edge) -> bool {
        e.endpoints()
            .iter()
            .all(|&x| !self.used[x.index()] && self.g.neighbors(x).iter().all(|w| !self.used[w.index()]))
    }

    fn run(&mut self, i: usize) {
        self.explored += 1;
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        if i == self.edges.len() || self.current.len() + (self.edges.len() - i) <= self.best.len() {
            return;
        }
        let e = self.edges[i];
        if self.addable(e) {
            self.used[e.u().index()] = true;
            self.used[e.v().index()] = true;
            self.current.push(e);
            self.run(i + 1);
            self.current.pop();
            self.used[e.u().index()] = false;
            self.used[e.v().index()] = false;
        }
        self.run(i + 1);
    }
}
