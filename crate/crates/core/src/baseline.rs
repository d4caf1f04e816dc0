//! Induced matching via maximum independent set on the square of the line
//! graph.

use crate::graph::{Edge, EdgeSet, Graph};

/// `L(G²)`: one node per edge of the input, two nodes adjacent when the edges
/// share an endpoint or some edge joins their endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedGraph {
    pub adj: Vec<Vec<usize>>,
    pub back_map: Vec<Edge>,
}

impl ReducedGraph {
    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter().all(|&x| set.iter().all(|y| !self.adj[x].contains(y)))
    }
}

pub fn build_l_g2(g: &Graph) -> ReducedGraph {
    let back_map: Vec<Edge> = g.edges().collect();
    let index = |e: Edge| back_map.binary_search(&e).expect("edge of g");
    let mut adj = vec![Vec::new(); back_map.len()];
    for (i, &e) in back_map.iter().enumerate() {
        // every edge with an endpoint within distance one of e
        let mut near = Vec::new();
        for x in e.endpoints() {
            for &y in g.neighbors(x) {
                for &z in g.neighbors(y) {
                    near.push(index(Edge::new(y, z)));
                }
            }
        }
        near.retain(|&j| j != i);
        near.sort_unstable();
        near.dedup();
        adj[i] = near;
    }
    ReducedGraph { adj, back_map }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MisResult {
    pub set: Vec<usize>,
    /// Search nodes visited.
    pub explored: u64,
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Self {
        let mut b = Self::empty(n);
        for i in 0..n {
            b.insert(i);
        }
        b
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn and_count(&self, other: &Bits) -> usize {
        self.0.iter().zip(&other.0).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    fn remove_all(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= !b;
        }
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                (w != 0).then(|| {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    k * 64 + t
                })
            })
        })
    }
}

/// Exact maximum independent set by branch and bound: nodes of degree at
/// most one are taken greedily, otherwise branch on a node of maximum degree.
pub fn mis_solve(rg: &ReducedGraph) -> MisResult {
    let n = rg.node_count();
    let closed: Vec<Bits> = (0..n)
        .map(|i| {
            let mut b = Bits::empty(n);
            b.insert(i);
            rg.adj[i].iter().for_each(|&j| b.insert(j));
            b
        })
        .collect();
    let mut search = Mis { closed, current: Vec::new(), best: Vec::new(), explored: 0 };
    search.run(Bits::full(n));
    let mut set = search.best;
    set.sort_unstable();
    MisResult { set, explored: search.explored }
}

struct Mis {
    closed: Vec<Bits>,
    current: Vec<usize>,
    best: Vec<usize>,
    explored: u64,
}

impl Mis {
    fn run(&mut self, mut cand: Bits) {
        self.explored += 1;
        let mark = self.current.len();
        let branch = loop {
            let mut pick = None;
            let mut low = None;
            for v in cand.iter() {
                let d = self.closed[v].and_count(&cand) - 1;
                if d <= 1 {
                    low = Some(v);
                    break;
                }
                if pick.is_none_or(|(_, best)| d > best) {
                    pick = Some((v, d));
                }
            }
            match low {
                Some(v) => {
                    self.current.push(v);
                    cand.remove_all(&self.closed[v]);
                }
                None => break pick,
            }
        };
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        if let Some((v, _)) = branch {
            if self.current.len() + cand.len() > self.best.len() {
                let mut with = cand.clone();
                with.remove_all(&self.closed[v]);
                self.current.push(v);
                self.run(with);
                self.current.pop();

                let mut without = cand;
                let mut single = Bits::empty(self.closed.len());
                single.insert(v);
                without.remove_all(&single);
                if self.current.len() + without.len() > self.best.len() {
                    self.run(without);
                }
            }
        }
        self.current.truncate(mark);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaselineResult {
    pub matching: EdgeSet,
    pub reduced_nodes: usize,
    pub reduced_edges: usize,
    pub reduced_max_degree: usize,
    pub explored: u64,
}

pub fn cameron_mim(g: &Graph) -> EdgeSet {
    cameron_mim_with_stats(g).matching
}

pub fn cameron_mim_with_stats(g: &Graph) -> BaselineResult {
    let rg = build_l_g2(g);
    let mis = mis_solve(&rg);
    debug_assert!(rg.is_independent(&mis.set));
    BaselineResult {
        matching: mis.set.iter().map(|&i| rg.back_map[i]).collect(),
        reduced_nodes: rg.node_count(),
        reduced_edges: rg.edge_count(),
        reduced_max_degree: rg.max_degree(),
        explored: mis.explored,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::random_subcubic;
    use crate::graph::fixtures::*;
    use crate::graph::is_induced_matching;
    use crate::oracle::brute_force_mim;

    #[test]
    fn reduction_examples() {
        let p3 = build_l_g2(&path(3));
        assert_eq!((p3.node_count(), p3.edge_count()), (2, 1));

        let p5 = build_l_g2(&path(5));
        assert_eq!(p5.node_count(), 4);
        assert_eq!(p5.adj[0], vec![1, 2]);

        let k = build_l_g2(&k4());
        assert_eq!(k.node_count(), 6);
        assert!(k.adj.iter().all(|a| a.len() == 5));
    }

    #[test]
    fn mis_examples() {
        let k = build_l_g2(&k4());
        assert_eq!(mis_solve(&k).set.len(), 1);
        let edgeless = ReducedGraph { adj: vec![Vec::new(); 7], back_map: Vec::new() };
        assert_eq!(mis_solve(&edgeless).set.len(), 7);
        assert_eq!(mis_solve(&build_l_g2(&path(5))).set, vec![0, 3]);
    }

    #[test]
    fn cameron_examples() {
        assert_eq!(cameron_mim(&path(5)), [e(0, 1), e(3, 4)].into_iter().collect());
        let p = cameron_mim(&petersen());
        assert_eq!(p.len(), 3);
        assert!(is_induced_matching(&petersen(), &p));
        assert_eq!(cameron_mim(&path(2)), [e(0, 1)].into_iter().collect());
        assert!(cameron_mim(&Graph::new(3)).is_empty());
    }

    #[test]
    fn degree_bound_on_cubic() {
        for seed in 0..20 {
            let g = random_subcubic(40, 1.0, seed);
            assert!(build_l_g2(&g).max_degree() <= 12);
        }
    }

    /// Independent sets of the reduction are exactly the induced matchings.
    #[test]
    fn independent_sets_biject_with_matchings() {
        for seed in 0..30 {
            let g = random_subcubic(7, 0.5, seed);
            let rg = build_l_g2(&g);
            let m = rg.node_count();
            assert!(m <= 10);
            for mask in 0u32..1 << m {
                let set: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
                let edges: EdgeSet = set.iter().map(|&i| rg.back_map[i]).collect();
                assert_eq!(rg.is_independent(&set), is_induced_matching(&g, &edges));
            }
        }
    }

    #[test]
    fn agrees_with_oracle() {
        for seed in 0..100 {
            let g = random_subcubic(6 + seed as usize % 12, 0.7, seed);
            let s = cameron_mim(&g);
            assert!(is_induced_matching(&g, &s));
            if let Ok(r) = brute_force_mim(&g) {
                assert_eq!(s.len(), r.size, "seed {seed}");
            }
        }
    }
}
