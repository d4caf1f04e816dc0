//! Bisection cuts balanced on degree-3 nodes.
//!
//! The graph is contracted to its degree-3 nodes (each maximal chain of
//! degree-2 nodes becomes one contracted edge, two parallel chains a double
//! edge), bisected by a multi-start swap local search, repaired so that no
//! double edge crosses, and finally expanded back by picking one original
//! edge per crossing chain.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::BisectionError;
use crate::graph::{Edge, EdgeSet, Graph, NodeId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Side {
    One,
    Two,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::One => Side::Two,
            Side::Two => Side::One,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Side::One => 1,
            Side::Two => 2,
        }
    }
}

/// Contracted edge between two degree-3 nodes `a < b`. Every strand is the
/// original path from `a` to `b`, endpoints included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractedEdge {
    pub a: NodeId,
    pub b: NodeId,
    pub strands: Vec<Vec<NodeId>>,
}

impl ContractedEdge {
    pub fn multiplicity(&self) -> usize {
        self.strands.len()
    }
}

/// Degree-2 chain attached to a single degree-3 node: either dangling (ends
/// in a degree-1 node) or a loop back to the anchor. `nodes` excludes the
/// anchor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pendant {
    pub anchor: NodeId,
    pub nodes: Vec<NodeId>,
}

#[derive(Clone, Debug)]
pub struct ContractedGraph {
    pub nodes: Vec<NodeId>,
    pub edges: Vec<ContractedEdge>,
    pub pendants: Vec<Pendant>,
    position: BTreeMap<NodeId, usize>,
}

impl ContractedGraph {
    pub fn k(&self) -> usize {
        self.nodes.len()
    }

    pub fn position(&self, v: NodeId) -> Option<usize> {
        self.position.get(&v).copied()
    }

    /// True if some degree-3 node touches two double edges.
    pub fn has_neighbouring_doubles(&self) -> bool {
        let mut doubles = vec![0usize; self.k()];
        for e in self.edges.iter().filter(|e| e.multiplicity() == 2) {
            doubles[self.position[&e.a]] += 1;
            doubles[self.position[&e.b]] += 1;
        }
        doubles.iter().any(|&d| d > 1)
    }

    /// Total multiplicity of contracted edges whose ends lie on different sides.
    pub fn cut_size(&self, sides: &[Side]) -> usize {
        self.edges
            .iter()
            .filter(|e| self.side_of(sides, e.a) != self.side_of(sides, e.b))
            .map(ContractedEdge::multiplicity)
            .sum()
    }

    fn side_of(&self, sides: &[Side], v: NodeId) -> Side {
        sides[self.position[&v]]
    }

    /// `(k_1, k_2)`: nodes per side.
    pub fn side_counts(sides: &[Side]) -> (usize, usize) {
        let one = sides.iter().filter(|&&s| s == Side::One).count();
        (one, sides.len() - one)
    }

    /// Neighbour positions with multiplicities.
    fn weighted_adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.k()];
        for e in &self.edges {
            let (i, j) = (self.position[&e.a], self.position[&e.b]);
            adj[i].push((j, e.multiplicity()));
            adj[j].push((i, e.multiplicity()));
        }
        adj
    }
}

pub fn contract_degree2(g: &Graph) -> Result<ContractedGraph, BisectionError> {
    let nodes: Vec<NodeId> = g.nodes().filter(|&v| g.deg(v) == 3).collect();
    if nodes.len() < 2 {
        return Err(BisectionError::TooFewBranchNodes(nodes.len()));
    }
    if !g.is_connected() {
        return Err(BisectionError::Disconnected);
    }
    let position: BTreeMap<NodeId, usize> = nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();

    let mut used: HashSet<Edge> = HashSet::new();
    let mut strands: BTreeMap<(NodeId, NodeId), Vec<Vec<NodeId>>> = BTreeMap::new();
    let mut pendants = Vec::new();

    for &a in &nodes {
        let mut first_steps = g.neighbors(a).to_vec();
        first_steps.sort_unstable();
        for w in first_steps {
            if used.contains(&Edge::new(a, w)) {
                continue;
            }
            let mut path = vec![a];
            let (mut prev, mut cur) = (a, w);
            while g.deg(cur) == 2 && cur != a {
                path.push(cur);
                let next = g.neighbors(cur).iter().copied().find(|&x| x != prev).expect("degree 2");
                prev = cur;
                cur = next;
            }
            path.push(cur);
            for pair in path.windows(2) {
                used.insert(Edge::new(pair[0], pair[1]));
            }
            let end = *path.last().expect("non-empty");
            if end == a {
                path.pop();
                pendants.push(Pendant { anchor: a, nodes: path[1..].to_vec() });
            } else if g.deg(end) == 3 {
                let key = (a.min(end), a.max(end));
                if a > end {
                    path.reverse();
                }
                strands.entry(key).or_default().push(path);
            } else {
                pendants.push(Pendant { anchor: a, nodes: path[1..].to_vec() });
            }
        }
    }

    let mut edges = Vec::with_capacity(strands.len());
    for ((a, b), list) in strands {
        if list.len() > 2 {
            return Err(BisectionError::TripleStrand(a, b));
        }
        edges.push(ContractedEdge { a, b, strands: list });
    }
    Ok(ContractedGraph { nodes, edges, pendants, position })
}

pub const DEFAULT_STARTS: usize = 8;

/// Balanced split of the contracted nodes (side sizes differ by at most one).
///
/// Each start shuffles the nodes, puts the first half on side one and runs
/// best-improvement pair swaps until no swap lowers the crossing
/// multiplicity. Starts are ranked by the crossing count after double-edge
/// repair, then by multiplicity, then by start index.
pub fn balanced_bisect(cg: &ContractedGraph, seed: u64, starts: usize) -> Vec<Side> {
    let k = cg.k();
    let adj = cg.weighted_adjacency();
    let mut best: Option<((usize, usize), Vec<Side>)> = None;
    for start in 0..starts.max(1) {
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(start as u64));
        let mut order: Vec<usize> = (0..k).collect();
        order.shuffle(&mut rng);
        let mut sides = vec![Side::Two; k];
        for &i in &order[..k / 2] {
            sides[i] = Side::One;
        }
        swap_descent(&adj, &mut sides);
        let mult = cg.cut_size(&sides);
        let repaired = repair_double_edges(cg, &sides).map(|s| cg.cut_size(&s)).unwrap_or(usize::MAX);
        let score = (repaired, mult);
        if best.as_ref().is_none_or(|(b, _)| score < *b) {
            best = Some((score, sides));
        }
    }
    best.expect("at least one start").1
}

fn swap_descent(adj: &[Vec<(usize, usize)>], sides: &mut [Side]) {
    let k = sides.len();
    loop {
        // gain of moving i alone: external minus internal multiplicity
        let d: Vec<i64> =
            (0..k)
                .map(|i| {
                    adj[i].iter().fold(0i64, |acc, &(j, w)| {
                        if sides[j] != sides[i] {
                            acc + w as i64
                        } else {
                            acc - w as i64
                        }
                    })
                })
                .collect();
        let mut best = (0i64, usize::MAX, usize::MAX);
        for u in 0..k {
            if sides[u] != Side::One {
                continue;
            }
            for v in 0..k {
                if sides[v] != Side::Two {
                    continue;
                }
                let w_uv: usize = adj[u].iter().filter(|&&(j, _)| j == v).map(|&(_, w)| w).sum();
                let gain = d[u] + d[v] - 2 * w_uv as i64;
                if gain > best.0 {
                    best = (gain, u, v);
                }
            }
        }
        if best.0 <= 0 {
            return;
        }
        sides[best.1] = Side::Two;
        sides[best.2] = Side::One;
    }
}

/// Moves one endpoint of every crossing double edge to the other side, from
/// the larger side to the smaller (side one on ties).
pub fn repair_double_edges(cg: &ContractedGraph, sides: &[Side]) -> Result<Vec<Side>, BisectionError> {
    let k = cg.k();
    let mut sides = sides.to_vec();
    let mut moves = 0;
    loop {
        let crossing = cg
            .edges
            .iter()
            .find(|e| e.multiplicity() == 2 && cg.side_of(&sides, e.a) != cg.side_of(&sides, e.b));
        let Some(e) = crossing else { return Ok(sides) };
        if moves >= k {
            return Err(BisectionError::RepairDiverged(k));
        }
        let (one, two) = ContractedGraph::side_counts(&sides);
        let from = if two > one { Side::Two } else { Side::One };
        let mover = if cg.side_of(&sides, e.a) == from { e.a } else { e.b };
        let p = cg.position[&mover];
        sides[p] = sides[p].flip();
        moves += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    /// Side of every live node, indexed by node id.
    pub side: Vec<Option<Side>>,
    pub b: EdgeSet,
}

impl Cut {
    pub fn side_of(&self, v: NodeId) -> Option<Side> {
        self.side.get(v.index()).copied().flatten()
    }

    /// Degree-3 nodes per side.
    pub fn degree3_counts(&self, g: &Graph) -> (usize, usize) {
        let mut counts = (0, 0);
        for v in g.nodes().filter(|&v| g.deg(v) == 3) {
            match self.side_of(v) {
                Some(Side::One) => counts.0 += 1,
                Some(Side::Two) => counts.1 += 1,
                None => {}
            }
        }
        counts
    }

    pub fn side_sizes(&self) -> (usize, usize) {
        let one = self.side.iter().filter(|s| **s == Some(Side::One)).count();
        let two = self.side.iter().filter(|s| **s == Some(Side::Two)).count();
        (one, two)
    }

    /// Edge-cut property and degree-3 balance.
    pub fn validate(&self, g: &Graph) -> Result<(), String> {
        for v in g.nodes() {
            if self.side_of(v).is_none() {
                return Err(format!("node {v} has no side"));
            }
        }
        for e in g.edges() {
            let crossing = self.side_of(e.u()) != self.side_of(e.v());
            if crossing != self.b.contains(&e) {
                return Err(format!("edge {e} crossing={crossing} but membership in B differs"));
            }
        }
        for e in &self.b {
            if !g.has_edge(e.u(), e.v()) {
                return Err(format!("B edge {e} not in graph"));
            }
        }
        let (k1, k2) = self.degree3_counts(g);
        let k = k1 + k2;
        for count in [k1, k2] {
            if 2 * count + 2 < k || 2 * count > k + 2 {
                return Err(format!("degree-3 split {k1}/{k2} not within 1 of k/2"));
            }
        }
        Ok(())
    }
}

/// Expands a side assignment of the contracted nodes to the whole graph.
///
/// Chains whose ends share a side stay on it. A crossing chain, oriented from
/// its side-one end, contributes its middle edge (the earlier one when the
/// edge count is even) to `B`. Pendant chains follow their anchor.
pub fn expand_cut(g: &Graph, cg: &ContractedGraph, sides: &[Side]) -> Cut {
    let mut side = vec![None; g.capacity()];
    for (i, &v) in cg.nodes.iter().enumerate() {
        side[v.index()] = Some(sides[i]);
    }
    let mut b = EdgeSet::new();
    let mut crossing_strands = 0;
    for e in &cg.edges {
        let (sa, sb) = (cg.side_of(sides, e.a), cg.side_of(sides, e.b));
        for strand in &e.strands {
            if sa == sb {
                for &x in &strand[1..strand.len() - 1] {
                    side[x.index()] = Some(sa);
                }
                continue;
            }
            crossing_strands += 1;
            let oriented: Vec<NodeId> =
                if sa == Side::One { strand.clone() } else { strand.iter().rev().copied().collect() };
            let edge_count = oriented.len() - 1;
            let rep = (edge_count - 1) / 2;
            for (idx, &x) in oriented.iter().enumerate() {
                side[x.index()] = Some(if idx <= rep { Side::One } else { Side::Two });
            }
            b.insert(Edge::new(oriented[rep], oriented[rep + 1]));
        }
    }
    for p in &cg.pendants {
        let s = cg.side_of(sides, p.anchor);
        for &x in &p.nodes {
            side[x.index()] = Some(s);
        }
    }
    debug_assert_eq!(b.len(), crossing_strands);
    Cut { side, b }
}

/// Contract, bisect, repair and expand.
pub fn bisection_cut(g: &Graph, seed: u64, starts: usize) -> Result<Cut, BisectionError> {
    let cg = contract_degree2(g)?;
    let sides = balanced_bisect(&cg, seed, starts);
    let sides = repair_double_edges(&cg, &sides)?;
    Ok(expand_cut(g, &cg, &sides))
}

/// Nodes of degree 2 grouped by the contracted edge or pendant holding them;
/// used to check that contraction loses nothing.
pub fn covered_nodes(cg: &ContractedGraph) -> BTreeSet<NodeId> {
    let mut out: BTreeSet<NodeId> = cg.nodes.iter().copied().collect();
    for e in &cg.edges {
        for s in &e.strands {
            out.extend(s.iter().copied());
        }
    }
    for p in &cg.pendants {
        out.extend(p.nodes.iter().copied());
    }
    out
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::generate::random_subcubic;
    use crate::graph::fixtures::*;

    /// Three rings linked a1-a2, a2=a3 (two 2-chains), a3-a4; the outer rings
    /// are 6-cycles through a1 and a4. Ids: a1..a4 = 0..3.
    pub fn remark_graph() -> Graph {
        let mut edges = vec![(0, 1), (2, 3)];
        // ring through a1: 0-4-5-6-7-8-0
        edges.extend([(0, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 0)]);
        // double strand a2=a3: 1-9-10-2 and 1-11-12-2
        edges.extend([(1, 9), (9, 10), (10, 2), (1, 11), (11, 12), (12, 2)]);
        // ring through a4: 3-13-14-15-16-17-3
        edges.extend([(3, 13), (13, 14), (14, 15), (15, 16), (16, 17), (17, 3)]);
        Graph::from_edges(18, &edges).unwrap()
    }

    fn sides_for(cg: &ContractedGraph, one: &[usize]) -> Vec<Side> {
        cg.nodes.iter().map(|v| if one.contains(&v.index()) { Side::One } else { Side::Two }).collect()
    }

    #[test]
    fn remark_contraction() {
        let g = remark_graph();
        let cg = contract_degree2(&g).unwrap();
        assert_eq!(cg.nodes, ids(&[0, 1, 2, 3]));
        let summary: Vec<_> = cg.edges.iter().map(|e| (e.a.index(), e.b.index(), e.multiplicity())).collect();
        assert_eq!(summary, vec![(0, 1, 1), (1, 2, 2), (2, 3, 1)]);
        assert_eq!(cg.pendants.len(), 2);
        assert!(!cg.has_neighbouring_doubles());
        assert_eq!(covered_nodes(&cg).len(), g.node_count());
    }

    #[test]
    fn remark_bisect_repair_expand() {
        let g = remark_graph();
        let cg = contract_degree2(&g).unwrap();
        let sides = balanced_bisect(&cg, 1, DEFAULT_STARTS);
        assert_eq!(ContractedGraph::side_counts(&sides), (2, 2));
        assert_eq!(cg.cut_size(&sides), 2);
        // the double edge a2=a3 is the crossing edge
        assert_ne!(sides[1], sides[2]);
        assert_eq!(sides[0], sides[1]);

        let given = sides_for(&cg, &[0, 1]);
        let repaired = repair_double_edges(&cg, &given).unwrap();
        assert_eq!(repaired, sides_for(&cg, &[0]));
        assert_eq!(ContractedGraph::side_counts(&repaired), (1, 3));

        let cut = expand_cut(&g, &cg, &repaired);
        assert_eq!(cut.b, [e(0, 1)].into_iter().collect());
        cut.validate(&g).unwrap();
        assert_eq!(cut.degree3_counts(&g), (1, 3));
    }

    #[test]
    fn repair_fixpoint() {
        let g = remark_graph();
        let cg = contract_degree2(&g).unwrap();
        let s = sides_for(&cg, &[0, 3]);
        assert_eq!(repair_double_edges(&cg, &s).unwrap(), s);
        let k4 = k4();
        let cg = contract_degree2(&k4).unwrap();
        let s = sides_for(&cg, &[0, 1]);
        assert_eq!(repair_double_edges(&cg, &s).unwrap(), s);
    }

    #[test]
    fn k4_contraction_and_bisection() {
        let cg = contract_degree2(&k4()).unwrap();
        assert_eq!(cg.k(), 4);
        assert_eq!(cg.edges.len(), 6);
        assert!(cg.edges.iter().all(|e| e.multiplicity() == 1));
        let sides = balanced_bisect(&cg, 0, DEFAULT_STARTS);
        assert_eq!(ContractedGraph::side_counts(&sides), (2, 2));
        assert_eq!(cg.cut_size(&sides), 4);
    }

    #[test]
    fn two_node_bisection() {
        // a - b with pendant paths so both have degree 3
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        let cg = contract_degree2(&g).unwrap();
        let sides = balanced_bisect(&cg, 0, 1);
        assert_eq!(ContractedGraph::side_counts(&sides), (1, 1));
        assert_eq!(cg.cut_size(&sides), 1);
        let cut = expand_cut(&g, &cg, &sides);
        assert_eq!(cut.b, [e(0, 1)].into_iter().collect());
        cut.validate(&g).unwrap();
    }

    #[test]
    fn crossing_chain_representative() {
        // a(0) - b(1) - b'(2) - a'(3), both ends degree 3 via leaves
        let g = Graph::from_edges(8, &[(0, 1), (1, 2), (2, 3), (0, 4), (0, 5), (3, 6), (3, 7)]).unwrap();
        let cg = contract_degree2(&g).unwrap();
        let cut = expand_cut(&g, &cg, &[Side::One, Side::Two]);
        assert_eq!(cut.b, [e(1, 2)].into_iter().collect());
        assert_eq!(cut.side_of(NodeId(1)), Some(Side::One));
        assert_eq!(cut.side_of(NodeId(2)), Some(Side::Two));
        // even edge count, reversed orientation: earlier edge from the side-one end
        let cut = expand_cut(&g, &cg, &[Side::Two, Side::One]);
        assert_eq!(cut.b, [e(1, 2)].into_iter().collect());
        assert_eq!(cut.side_of(NodeId(2)), Some(Side::One));
    }

    #[test]
    fn errors() {
        assert_eq!(contract_degree2(&cycle(5)).unwrap_err(), BisectionError::TooFewBranchNodes(0));
        let two_k4 = Graph::from_edges(
            8,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (4, 7), (5, 6), (5, 7), (6, 7)],
        )
        .unwrap();
        assert_eq!(contract_degree2(&two_k4).unwrap_err(), BisectionError::Disconnected);
        // theta graph: two degree-3 nodes joined by three 2-chains
        let theta = Graph::from_edges(5, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]).unwrap();
        assert!(matches!(contract_degree2(&theta), Err(BisectionError::TripleStrand(..))));
    }

    #[test]
    fn random_cuts_are_valid() {
        for seed in 0..60 {
            let g = random_subcubic(40, 0.5 + (seed % 5) as f64 * 0.1, seed);
            if g.degree_count(3) < 2 {
                continue;
            }
            let cg = contract_degree2(&g).unwrap();
            assert_eq!(covered_nodes(&cg).len(), g.node_count());
            let cut = bisection_cut(&g, seed, DEFAULT_STARTS).unwrap();
            cut.validate(&g).unwrap();
            let sides = repair_double_edges(&cg, &balanced_bisect(&cg, seed, DEFAULT_STARTS)).unwrap();
            assert_eq!(cut.b.len(), cg.cut_size(&sides));
        }
    }

    #[test]
    fn deterministic() {
        let g = random_subcubic(50, 1.0, 3);
        assert_eq!(bisection_cut(&g, 9, 8).unwrap(), bisection_cut(&g, 9, 8).unwrap());
    }
}
