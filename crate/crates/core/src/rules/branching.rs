use super::{RuleLabel, RuleMatch};
use crate::error::RuleError;
use crate::graph::{Edge, Graph, NodeId};
use crate::state::{Alternative, SolverState};

/// First applicable branching rule, rules tried in order and each rule
/// scanning `B` in canonical order.
pub fn match_branching(state: &SolverState) -> Result<RuleMatch, RuleError> {
    RuleLabel::BRANCHING.iter().find_map(|&r| match_rule(state, r)).ok_or(RuleError::Stuck(state.b.len()))
}

/// First match of one specific branching rule; `None` for simplification
/// labels or when the rule does not apply anywhere.
pub fn match_rule(state: &SolverState, rule: RuleLabel) -> Option<RuleMatch> {
    let g = &state.graph;
    let found = state.b.iter().find_map(|&e| match rule {
        RuleLabel::B21 => oriented(e).find_map(|(d, a)| b21(state, d, a)),
        RuleLabel::B22 => oriented(e).find_map(|(d, a)| b22(state, d, a)),
        RuleLabel::B31 => b31(g, e),
        RuleLabel::B32 => oriented(e).find_map(|(b, a)| b32(g, b, a)),
        RuleLabel::B33 => b33(g, e),
        RuleLabel::B41 => b41(state, e),
        _ => None,
    })?;
    let (anchor, alternatives) = found;
    Some(RuleMatch { rule, anchor, alternatives })
}

type Found = (Vec<NodeId>, Vec<Alternative>);

fn oriented(e: Edge) -> impl Iterator<Item = (NodeId, NodeId)> {
    [(e.u(), e.v()), (e.v(), e.u())].into_iter()
}

fn others(g: &Graph, x: NodeId, not: NodeId) -> Vec<NodeId> {
    let mut v: Vec<NodeId> = g.neighbors(x).iter().copied().filter(|&y| y != not).collect();
    v.sort_unstable();
    v
}

fn all_nbrs_deg2(g: &Graph, x: NodeId) -> bool {
    g.neighbors(x).iter().all(|&y| g.deg(y) >= 2)
}

/// `d -|- a`, `a` of degree 3 with a leaf `c` not across the cut.
fn b21(state: &SolverState, d: NodeId, a: NodeId) -> Option<Found> {
    let g = &state.graph;
    if g.deg(a) != 3 {
        return None;
    }
    let c = others(g, a, d).into_iter().find(|&c| g.deg(c) == 1 && !state.b.contains(&Edge::new(a, c)))?;
    Some((vec![d, a, c], vec![Alternative::remove([a, c]), Alternative::select(g, Edge::new(a, c))]))
}

/// `d -|- a`, `a` of degree 3 with neighbours `d′` and `b`, where `b` has
/// degree 2 and is adjacent to `d′`.
fn b22(state: &SolverState, d: NodeId, a: NodeId) -> Option<Found> {
    let g = &state.graph;
    if g.deg(a) != 3 {
        return None;
    }
    let rest = others(g, a, d);
    rest.iter().copied().find_map(|b| {
        let d2 = rest.iter().copied().find(|&x| x != b)?;
        let ok = g.deg(b) == 2 && g.has_edge(b, d2) && !state.b.contains(&Edge::new(a, b));
        ok.then(|| {
            (vec![d, a, b, d2], vec![Alternative::remove([a]), Alternative::select(g, Edge::new(a, b))])
        })
    })
}

/// `d - b -|- b′ - d′` with `b`, `b′` of degree 2.
fn b31(g: &Graph, e: Edge) -> Option<Found> {
    let (b, b2) = (e.u(), e.v());
    if g.deg(b) != 2 || g.deg(b2) != 2 {
        return None;
    }
    let d = others(g, b, b2)[0];
    let d2 = others(g, b2, b)[0];
    if g.deg(d) < 2 || g.deg(d2) < 2 {
        return None;
    }
    let alts = [Edge::new(d, b), e, Edge::new(b2, d2)].map(|x| Alternative::select(g, x)).to_vec();
    Some((vec![d, b, b2, d2], alts))
}

/// `d - b -|- a`, `b` of degree 2, `a` of degree 3 without leaf neighbours.
fn b32(g: &Graph, b: NodeId, a: NodeId) -> Option<Found> {
    if g.deg(b) != 2 || g.deg(a) != 3 || !all_nbrs_deg2(g, a) {
        return None;
    }
    let d = others(g, b, a)[0];
    let alts = vec![
        Alternative::select(g, Edge::new(d, b)),
        Alternative::select(g, Edge::new(b, a)),
        Alternative::remove([b]),
    ];
    Some((vec![d, b, a], alts))
}

/// `a′ -|- a`, both of degree 3 without leaf neighbours.
fn b33(g: &Graph, e: Edge) -> Option<Found> {
    let (a2, a) = (e.u(), e.v());
    if g.deg(a2) != 3 || g.deg(a) != 3 || !all_nbrs_deg2(g, a2) || !all_nbrs_deg2(g, a) {
        return None;
    }
    let alts = vec![Alternative::select(g, e), Alternative::remove([a2]), Alternative::remove([a])];
    Some((vec![a2, a], alts))
}

/// An endpoint `d′` carrying at least two cut edges: delete it, or match it
/// with each of its neighbours in turn.
fn b41(state: &SolverState, e: Edge) -> Option<Found> {
    let g = &state.graph;
    let d2 = e.endpoints().into_iter().find(|&x| state.cut_degree(x) >= 2)?;
    let nbrs = others(g, d2, d2);
    let mut alts = vec![Alternative::remove([d2])];
    alts.extend(nbrs.iter().map(|&x| Alternative::select(g, Edge::new(d2, x))));
    let mut anchor = vec![d2];
    anchor.extend(nbrs);
    Some((anchor, alts))
}
