use crate::error::RuleError;
use crate::graph::{Edge, EdgeSet, Graph, NodeId};
use crate::state::{Alternative, SolverState};

/// Optimal induced matching of a graph without degree-3 nodes.
///
/// Paths take every third edge starting at one end, so a path with `e` edges
/// yields `ceil(e/3)`; cycles take every third edge while leaving a gap of
/// at least two edges before the start, yielding `floor(e/3)`.
pub fn apply_s1(component: &Graph) -> Result<EdgeSet, RuleError> {
    if component.nodes().any(|v| component.deg(v) == 3) {
        return Err(RuleError::HasBranchNode);
    }
    let mut out = EdgeSet::new();
    for comp in component.components() {
        let start = comp.iter().copied().find(|&v| component.deg(v) == 1);
        match start {
            Some(end) => {
                let seq = walk(component, end);
                out.extend((0..seq.len() - 1).step_by(3).map(|i| Edge::new(seq[i], seq[i + 1])));
            }
            None if comp.len() >= 3 => {
                let seq = walk(component, comp[0]);
                let len = seq.len();
                let picks = len / 3;
                out.extend((0..picks).map(|j| Edge::new(seq[3 * j], seq[(3 * j + 1) % len])));
            }
            None => {}
        }
    }
    Ok(out)
}

/// Nodes of a path (from an end) or cycle, in walking order.
fn walk(g: &Graph, start: NodeId) -> Vec<NodeId> {
    let mut seq = vec![start];
    let Some(&first) = g.neighbors(start).iter().min() else { return seq };
    let (mut prev, mut cur) = (start, first);
    while cur != start {
        seq.push(cur);
        match g.neighbors(cur).iter().copied().find(|&x| x != prev) {
            Some(next) => {
                prev = cur;
                cur = next;
            }
            None => break,
        }
    }
    seq
}

/// Exact solution of a component with at most `kappa` degree-3 nodes by
/// three-way branching on a degree-3 node `a` and a neighbour `e`: select
/// `a-e`, delete only `a`, or delete only `e`. Degree-3-free leaves go to S1.
pub fn solve_small_s2(component: &Graph, kappa: usize) -> Result<EdgeSet, RuleError> {
    let found = component.degree_count(3);
    if found > kappa {
        return Err(RuleError::TooManyBranchNodes { found, kappa });
    }
    Ok(small_exact(component.clone()))
}

fn small_exact(g: Graph) -> EdgeSet {
    let comps = g.components();
    if comps.len() > 1 {
        let mut out = EdgeSet::new();
        for c in &comps {
            out.extend(small_exact(g.induced(c)));
        }
        return out;
    }
    let Some(a) = g.nodes().find(|&v| g.deg(v) == 3) else {
        return apply_s1(&g).expect("no degree-3 node left");
    };
    // the neighbour of largest degree removes the most weight in every branch
    let e = *g.neighbors(a).iter().max_by_key(|&&x| (g.deg(x), std::cmp::Reverse(x))).expect("degree 3");

    let mut best = {
        let alt = Alternative::select(&g, Edge::new(a, e));
        let mut h = g.clone();
        h.delete_all(alt.delete.iter().copied());
        let mut s = small_exact(h);
        s.extend(alt.add_to_s);
        s
    };
    for x in [a, e] {
        let mut h = g.clone();
        h.delete(x);
        let s = small_exact(h);
        if s.len() > best.len() {
            best = s;
        }
    }
    best
}

/// A neighbourhood-elimination match: `D` is a proper nonempty subset of
/// `N(d)`, `C` the outside neighbours of `D`; `C ∪ D` touches the rest of the
/// graph only through `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S3Match {
    pub d: NodeId,
    pub d_set: Vec<NodeId>,
    pub c_set: Vec<NodeId>,
    pub chosen: Vec<Edge>,
}

impl S3Match {
    /// Select `chosen`, delete `{d} ∪ C ∪ D`.
    pub fn alternative(&self) -> Alternative {
        let mut alt = Alternative::remove(
            std::iter::once(self.d).chain(self.d_set.iter().copied()).chain(self.c_set.iter().copied()),
        );
        alt.add_to_s = self.chosen.clone();
        alt
    }
}

/// First S3 match in node-id order; subsets `D` are tried in increasing
/// bitmask order over the sorted neighbour list.
pub fn find_s3(g: &Graph) -> Option<S3Match> {
    g.nodes().find_map(|d| s3_at(g, d))
}

fn s3_at(g: &Graph, d: NodeId) -> Option<S3Match> {
    let mut nbrs = g.neighbors(d).to_vec();
    nbrs.sort_unstable();
    let full = (1u32 << nbrs.len()) - 1;
    for mask in 1..full {
        let d_set: Vec<NodeId> =
            nbrs.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &v)| v).collect();
        let mut c_set: Vec<NodeId> = d_set
            .iter()
            .flat_map(|&x| g.neighbors(x).iter().copied())
            .filter(|&y| y != d && !d_set.contains(&y))
            .collect();
        c_set.sort_unstable();
        c_set.dedup();

        let in_d = |v: NodeId| d_set.contains(&v);
        let in_cd = |v: NodeId| in_d(v) || c_set.binary_search(&v).is_ok();

        // every edge touching C ∪ D has one end in D, the other in C ∪ D ∪ {d}
        let closed = d_set.iter().all(|&x| g.neighbors(x).iter().all(|&y| y == d || in_cd(y)))
            && c_set.iter().all(|&x| g.neighbors(x).iter().all(|&y| in_d(y)));
        if !closed {
            continue;
        }
        let inner: Vec<Edge> = d_set
            .iter()
            .flat_map(|&x| g.neighbors(x).iter().filter(|&&y| in_cd(y)).map(move |&y| Edge::new(x, y)))
            .collect::<EdgeSet>()
            .into_iter()
            .collect();
        if inner.is_empty() {
            continue;
        }
        let chosen = best_fragment(g, &inner);
        return Some(S3Match { d, d_set, c_set, chosen });
    }
    None
}

/// Largest induced matching among `edges` (lexicographically smallest on ties).
fn best_fragment(g: &Graph, edges: &[Edge]) -> Vec<Edge> {
    let mut best: Vec<Edge> = Vec::new();
    for mask in 1u32..(1 << edges.len()) {
        let pick: Vec<Edge> =
            edges.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &e)| e).collect();
        if pick.len() < best.len() || !is_fragment(g, &pick) {
            continue;
        }
        if pick.len() > best.len() || pick < best {
            best = pick;
        }
    }
    best
}

fn is_fragment(g: &Graph, pick: &[Edge]) -> bool {
    for (i, e) in pick.iter().enumerate() {
        for f in &pick[i + 1..] {
            for x in e.endpoints() {
                for y in f.endpoints() {
                    if x == y || g.has_edge(x, y) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// First cut edge (canonical order) with a degree-1 endpoint `c`, together
/// with `c`.
pub fn find_s4(state: &SolverState) -> Option<(Edge, NodeId)> {
    state.b.iter().find_map(|&e| e.endpoints().into_iter().find(|&x| state.graph.deg(x) == 1).map(|c| (e, c)))
}

/// Moves the degree-1 endpoint of a cut edge to the other side and drops
/// the edge from `B`.
pub fn apply_s4(state: &SolverState) -> Result<SolverState, RuleError> {
    let (e, c) = find_s4(state).ok_or(RuleError::NotApplicable)?;
    let mut next = state.clone();
    next.side[c.index()] = state.side_of(e.other(c));
    next.b.remove(&e);
    Ok(next)
}
