//! The exact search: component splitting, bisection, simplification and
//! branching on cut edges.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bisection::{bisection_cut, DEFAULT_STARTS};
use crate::error::SolveError;
use crate::graph::{is_induced_matching, Edge, EdgeSet, Graph, NodeId};
use crate::measure::Weighting;
use crate::rules::{apply_s1, find_s3, find_s4, match_branching, solve_small_s2, RuleLabel, RuleMatch};
use crate::state::{Alternative, SolverState};

pub const DEFAULT_KAPPA: usize = 12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum AssertLevel {
    Off,
    /// Every simplification or branch must shrink `V`, or keep `V` and shrink `B`.
    #[default]
    Basic,
    /// Basic, plus the full state invariants at every node.
    Full,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    /// Only used when reporting measures.
    pub s: Weighting,
    /// Components with at most this many degree-3 nodes are solved directly.
    pub kappa: usize,
    pub seed: u64,
    pub bisection_starts: usize,
    pub asserts: AssertLevel,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            s: Weighting::default(),
            kappa: DEFAULT_KAPPA,
            seed: 1,
            bisection_starts: DEFAULT_STARTS,
            asserts: AssertLevel::default(),
        }
    }
}

impl Config {
    pub fn with_kappa(kappa: usize) -> Self {
        Config { kappa, ..Config::default() }
    }

    pub fn validate(&self) -> Result<(), SolveError> {
        if self.kappa < 3 {
            return Err(SolveError::Config(format!("kappa must be at least 3, got {}", self.kappa)));
        }
        if self.bisection_starts == 0 {
            return Err(SolveError::Config("bisection needs at least one start".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    /// Dispatch steps, including leaves.
    pub nodes_expanded: u64,
    /// Steps that found the graph empty.
    pub leaves: u64,
    pub rule_counts: BTreeMap<RuleLabel, u64>,
    pub max_depth: usize,
    pub bisections: u64,
    pub component_splits: u64,
}

/// Maximum induced matching of `g`.
pub fn algo_mim(g: &Graph, cfg: &Config) -> Result<(EdgeSet, SolveStats), SolveError> {
    cfg.validate()?;
    let mut solver = Solver { original: g, cfg, stats: SolveStats::default() };
    let s = solver.solve(SolverState::new(g.clone()), 0)?;
    Ok((s, solver.stats))
}

pub fn verify_solution(original: &Graph, s: &EdgeSet) -> bool {
    is_induced_matching(original, s)
}

struct Solver<'a> {
    original: &'a Graph,
    cfg: &'a Config,
    stats: SolveStats,
}

enum Step {
    Done,
    Split(Vec<Vec<NodeId>>),
    Continue { progress: bool },
    Branch(Vec<Alternative>),
}

impl Solver<'_> {
    fn solve(&mut self, mut state: SolverState, mut depth: usize) -> Result<EdgeSet, SolveError> {
        loop {
            self.stats.nodes_expanded += 1;
            self.stats.max_depth = self.stats.max_depth.max(depth);
            if self.cfg.asserts == AssertLevel::Full {
                state.check(self.original).map_err(SolveError::Invariant)?;
            }
            let before = (state.graph.node_count(), state.b.len());
            match self.step(&mut state)? {
                Step::Done => {
                    self.stats.leaves += 1;
                    return Ok(state.s);
                }
                Step::Split(comps) => {
                    self.stats.component_splits += 1;
                    let mut s = state.s.clone();
                    for comp in comps {
                        let child = SolverState::new(state.graph.induced(&comp));
                        s.extend(self.solve(child, depth + 1)?);
                    }
                    return Ok(s);
                }
                Step::Branch(alternatives) => {
                    let mut best: Option<EdgeSet> = None;
                    for alt in &alternatives {
                        let child = state.apply(alt);
                        self.check_progress(before, &child)?;
                        let s = self.solve(child, depth + 1)?;
                        if best.as_ref().is_none_or(|b| s.len() > b.len()) {
                            best = Some(s);
                        }
                    }
                    return Ok(best.expect("branching rules have alternatives"));
                }
                Step::Continue { progress } => {
                    if progress {
                        self.check_progress(before, &state)?;
                    }
                    depth += 1;
                }
            }
        }
    }

    fn check_progress(&self, (n, b): (usize, usize), next: &SolverState) -> Result<(), SolveError> {
        if self.cfg.asserts == AssertLevel::Off {
            return Ok(());
        }
        let (n2, b2) = (next.graph.node_count(), next.b.len());
        if n2 < n || (n2 == n && b2 < b) {
            Ok(())
        } else {
            Err(SolveError::Invariant(format!("no progress: |V| {n} -> {n2}, |B| {b} -> {b2}")))
        }
    }

    fn count(&mut self, rule: RuleLabel) {
        *self.stats.rule_counts.entry(rule).or_default() += 1;
    }

    /// One dispatch decision; simplifications and bisections are applied in place.
    fn step(&mut self, state: &mut SolverState) -> Result<Step, SolveError> {
        let step = match next_action(state, self.cfg.kappa)? {
            Action::Done => Step::Done,
            Action::Split(comps) => Step::Split(comps),
            Action::Bisect => {
                let seed = self.cfg.seed.wrapping_add(self.stats.bisections);
                let cut = bisection_cut(&state.graph, seed, self.cfg.bisection_starts)?;
                self.stats.bisections += 1;
                state.b = cut.b;
                state.side = cut.side;
                Step::Continue { progress: false }
            }
            Action::Simplify(rule, alt) => {
                self.count(rule);
                state.apply_in_place(&alt);
                Step::Continue { progress: true }
            }
            Action::MoveLeaf { edge, leaf } => {
                self.count(RuleLabel::S4);
                state.side[leaf.index()] = state.side_of(edge.other(leaf));
                state.b.remove(&edge);
                Step::Continue { progress: true }
            }
            Action::Branch(m) => {
                self.count(m.rule);
                Step::Branch(m.alternatives)
            }
        };
        Ok(step)
    }
}

/// What the dispatcher does with a state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action {
    /// The graph is empty.
    Done,
    /// No cut edges and several components: solve each on its own.
    Split(Vec<Vec<NodeId>>),
    /// No cut edges, connected, too many degree-3 nodes.
    Bisect,
    /// S1, S2 (whole cut-free component) or S3, as a deletion with selected edges.
    Simplify(RuleLabel, Alternative),
    /// S4: the leaf end of a cut edge changes side.
    MoveLeaf {
        edge: Edge,
        leaf: NodeId,
    },
    Branch(RuleMatch),
}

/// The first applicable case for `state`, without applying it.
pub fn next_action(state: &SolverState, kappa: usize) -> Result<Action, SolveError> {
    let g = &state.graph;
    if g.is_empty() {
        return Ok(Action::Done);
    }
    let comps = g.components();
    if state.b.is_empty() {
        if comps.len() > 1 {
            return Ok(Action::Split(comps));
        }
        if g.degree_count(3) > kappa {
            return Ok(Action::Bisect);
        }
    }

    let touches_b = |comp: &[NodeId]| state.b.iter().any(|e| comp.binary_search(&e.u()).is_ok());
    let deg3 = |comp: &[NodeId]| comp.iter().filter(|&&v| g.deg(v) == 3).count();
    let whole = |comp: &[NodeId], s: EdgeSet| Alternative {
        delete: comp.to_vec(),
        add_to_s: s.into_iter().collect(),
    };

    if let Some(comp) = comps.iter().find(|c| deg3(c) == 0 && !touches_b(c)) {
        let s = apply_s1(&g.induced(comp))?;
        return Ok(Action::Simplify(RuleLabel::S1, whole(comp, s)));
    }
    if let Some(comp) = comps.iter().find(|c| deg3(c) <= kappa && !touches_b(c)) {
        let s = solve_small_s2(&g.induced(comp), kappa)?;
        return Ok(Action::Simplify(RuleLabel::S2, whole(comp, s)));
    }
    if let Some(m) = find_s3(g) {
        return Ok(Action::Simplify(RuleLabel::S3, m.alternative()));
    }
    if let Some((edge, leaf)) = find_s4(state) {
        return Ok(Action::MoveLeaf { edge, leaf });
    }
    Ok(Action::Branch(match_branching(state)?))
}
