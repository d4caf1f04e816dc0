//! Seeded random connected subcubic graphs.
//!
//! A degree sequence with the requested share of degree-3 nodes is realised
//! by a random stub pairing; loops and parallel pairs are repaired by random
//! pair switches. Disconnected results are retried, and after a fixed number
//! of attempts merged with degree-preserving edge swaps.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, NodeId};

const PAIRING_ATTEMPTS: usize = 64;

pub fn random_subcubic(n: usize, p3: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match n {
        0 => return Graph::new(0),
        1 => return Graph::new(1),
        2 => return Graph::from_edges(2, &[(0, 1)]).expect("valid"),
        3 => return Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).expect("valid"),
        _ => {}
    }
    let degrees = degree_sequence(n, p3, &mut rng);

    let mut last = None;
    for _ in 0..PAIRING_ATTEMPTS {
        if let Some(edges) = pair_stubs(&degrees, &mut rng) {
            let g = build(n, &edges);
            if g.is_connected() {
                return g;
            }
            last = Some(edges);
        }
    }
    let edges = match last {
        Some(e) => e,
        None => loop {
            if let Some(e) = pair_stubs(&degrees, &mut rng) {
                break e;
            }
        },
    };
    build(n, &merge_components(n, edges))
}

fn degree_sequence(n: usize, p3: f64, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut n3 = ((p3.clamp(0.0, 1.0) * n as f64).round() as usize).min(n);
    loop {
        let n1 = usize::from(n3 % 2 == 1 && n3 < n);
        if n3 % 2 == 1 && n1 == 0 {
            n3 -= 1;
            continue;
        }
        let mut degrees: Vec<usize> = (0..n)
            .map(|i| match i {
                i if i < n3 => 3,
                i if i < n3 + n1 => 1,
                _ => 2,
            })
            .collect();
        if is_graphical(&degrees) {
            degrees.shuffle(rng);
            return degrees;
        }
        n3 -= 1;
    }
}

/// Erdos-Gallai test.
fn is_graphical(degrees: &[usize]) -> bool {
    let mut d = degrees.to_vec();
    d.sort_unstable_by(|a, b| b.cmp(a));
    if d.iter().sum::<usize>() % 2 == 1 {
        return false;
    }
    let n = d.len();
    let mut prefix = 0;
    for k in 1..=n {
        prefix += d[k - 1];
        let tail: usize = d[k..].iter().map(|&x| x.min(k)).sum();
        if prefix > k * (k - 1) + tail {
            return false;
        }
    }
    true
}

fn is_bad(pair: (usize, usize), seen: &HashSet<(usize, usize)>) -> bool {
    pair.0 == pair.1 || seen.contains(&key(pair))
}

fn key((a, b): (usize, usize)) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn pair_stubs(degrees: &[usize], rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let mut stubs: Vec<usize> =
        degrees.iter().enumerate().flat_map(|(v, &d)| std::iter::repeat_n(v, d)).collect();
    stubs.shuffle(rng);
    let mut pairs: Vec<(usize, usize)> = stubs.chunks(2).map(|c| (c[0], c[1])).collect();
    if pairs.len() < 2 {
        return (pairs.iter().all(|p| p.0 != p.1)).then_some(pairs);
    }

    let budget = 100 * pairs.len();
    for _ in 0..budget {
        let mut seen = HashSet::new();
        let mut bad = None;
        for (i, &p) in pairs.iter().enumerate() {
            if is_bad(p, &seen) {
                bad = Some(i);
                break;
            }
            seen.insert(key(p));
        }
        let Some(i) = bad else { return Some(pairs) };
        let mut j = rng.gen_range(0..pairs.len() - 1);
        if j >= i {
            j += 1;
        }
        let (a, b) = pairs[i];
        let (c, d) = pairs[j];
        if rng.gen_bool(0.5) {
            pairs[i] = (a, c);
            pairs[j] = (b, d);
        } else {
            pairs[i] = (a, d);
            pairs[j] = (b, c);
        }
    }
    None
}

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).expect("pairing yields a simple subcubic graph")
}

/// Joins components with swaps (a1,a2),(b1,b2) -> (a1,b1),(a2,b2).
fn merge_components(n: usize, mut edges: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    loop {
        let g = build(n, &edges);
        let comps = g.components();
        if comps.len() <= 1 {
            return edges;
        }
        let mut comp_of = vec![0usize; n];
        for (ci, c) in comps.iter().enumerate() {
            for v in c {
                comp_of[v.index()] = ci;
            }
        }
        let in_first: Vec<usize> = (0..edges.len()).filter(|&i| comp_of[edges[i].0] == 0).collect();
        let in_second: Vec<usize> = (0..edges.len()).filter(|&i| comp_of[edges[i].0] == 1).collect();
        let before = comps.len();
        let mut merged = false;
        'search: for &i in &in_first {
            for &j in &in_second {
                let (a1, a2) = edges[i];
                let (b1, b2) = edges[j];
                let mut trial = edges.clone();
                trial[i] = (a1, b1);
                trial[j] = (a2, b2);
                if build(n, &trial).components().len() < before {
                    edges = trial;
                    merged = true;
                    break 'search;
                }
            }
        }
        assert!(merged, "components of a simple graph with edges can always be joined");
    }
}

/// Relabels `g` by `perm` (node `v` becomes `perm[v]`).
pub fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<(usize, usize)> = g.edges().map(|e| (perm[e.u().index()], perm[e.v().index()])).collect();
    let mut h = Graph::from_edges(g.capacity(), &edges).expect("relabelling preserves validity");
    let dead: Vec<NodeId> = (0..g.capacity())
        .filter(|&i| !g.contains(NodeId::from_index(i)))
        .map(|i| NodeId::from_index(perm[i]))
        .collect();
    h.delete_all(dead);
    h
}
