//! Deterministic generators for the named graph families.
//!
//! Every generator that has named vertices returns a [`LabeledGraph`] whose
//! label table is a bijection onto the vertex set, so tests can address
//! `"x3"` or `"r1"` instead of raw indices.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: BTreeMap<String, usize>,
}

impl LabeledGraph {
    fn build(n: usize, edges: Vec<(usize, usize)>, names: Vec<String>) -> LabeledGraph {
        debug_assert_eq!(names.len(), n);
        let graph = Graph::from_edges(n, edges).expect("generator edges are in range");
        let labels = names.into_iter().enumerate().map(|(i, s)| (s, i)).collect();
        LabeledGraph { graph, labels }
    }

    /// Index of a labeled vertex.
    ///
    /// Panics on an unknown label; use [`LabeledGraph::try_vertex`] for input
    /// that did not come from the generator.
    pub fn vertex(&self, label: &str) -> usize {
        self.try_vertex(label)
            .unwrap_or_else(|| panic!("no vertex labeled {label:?}"))
    }

    pub fn try_vertex(&self, label: &str) -> Option<usize> {
        self.labels.get(label).copied()
    }

    pub fn set(&self, labels: &[&str]) -> VertexSet {
        labels.iter().map(|l| self.vertex(l)).collect()
    }

    /// The vertices `{prefix}1 .. {prefix}k` in order.
    pub fn indexed(&self, prefix: &str, k: usize) -> Vec<usize> {
        (1..=k).map(|i| self.vertex(&format!("{prefix}{i}"))).collect()
    }

    pub fn label_of(&self, v: usize) -> Option<&str> {
        self.labels.iter().find(|(_, &i)| i == v).map(|(s, _)| s.as_str())
    }
}

fn names(prefix: &str, k: usize) -> impl Iterator<Item = String> + '_ {
    (1..=k).map(move |i| format!("{prefix}{i}"))
}

/// The `(k,1)`-prism: cliques `X`, `Y` of size `k` joined by the matching `x_i y_i`.
pub fn prism(k: usize) -> Result<LabeledGraph> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("prism needs k >= 3, got {k}")));
    }
    let mut edges = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            edges.push((i, j));
            edges.push((k + i, k + j));
        }
        edges.push((i, k + i));
    }
    let labels = names("x", k).chain(names("y", k)).collect();
    Ok(LabeledGraph::build(2 * k, edges, labels))
}

/// `k` internally disjoint induced paths of `path_len` edges between the
/// poles `x` and `y`.
///
/// With `path_len == 3` the internal vertices are labeled `x_i` (next to `x`)
/// and `y_i` (next to `y`); otherwise path `i` has internal vertices
/// `p{i}_1 .. p{i}_{path_len-1}` counted from `x`.
pub fn theta(k: usize, path_len: usize) -> Result<LabeledGraph> {
    if k < 1 {
        return Err(Error::InvalidParameter("theta needs k >= 1".into()));
    }
    if path_len < 2 {
        return Err(Error::InvalidParameter(format!(
            "theta needs path_len >= 2 (non-adjacent poles), got {path_len}"
        )));
    }
    let inner = path_len - 1;
    let n = 2 + k * inner;
    let at = |i: usize, j: usize| 2 + i * inner + j;
    let mut edges = Vec::new();
    let mut labels = vec![String::new(); n];
    labels[0] = "x".into();
    labels[1] = "y".into();
    for i in 0..k {
        edges.push((0, at(i, 0)));
        edges.push((at(i, inner - 1), 1));
        for j in 1..inner {
            edges.push((at(i, j - 1), at(i, j)));
        }
        for j in 0..inner {
            labels[at(i, j)] = if path_len == 3 {
                format!("{}{}", if j == 0 { "x" } else { "y" }, i + 1)
            } else {
                format!("p{}_{}", i + 1, j + 1)
            };
        }
    }
    Ok(LabeledGraph::build(n, edges, labels))
}

/// `H_k`: the theta graph with `k` paths of length `2^k + 1`.
pub fn h_graph(k: usize) -> Result<LabeledGraph> {
    if k >= usize::BITS as usize - 1 {
        return Err(Error::InvalidParameter(format!("h_graph: k = {k} is too large")));
    }
    theta(k, (1 << k) + 1)
}

/// The `k`-skinny ladder: induced paths `p_1..p_k` and `q_1..q_k`, rungs
/// `r_i` adjacent to exactly `p_i` and `q_i`.
pub fn skinny_ladder(k: usize) -> Result<LabeledGraph> {
    if k < 1 {
        return Err(Error::InvalidParameter("skinny ladder needs k >= 1".into()));
    }
    let (p, q, r) = (0, k, 2 * k);
    let mut edges = Vec::new();
    for i in 0..k {
        if i + 1 < k {
            edges.push((p + i, p + i + 1));
            edges.push((q + i, q + i + 1));
        }
        edges.push((p + i, r + i));
        edges.push((q + i, r + i));
    }
    let labels = names("p", k).chain(names("q", k)).chain(names("r", k)).collect();
    Ok(LabeledGraph::build(3 * k, edges, labels))
}

/// A canonical `k`-creature. `A` is the path `a_1 .. a_{a_size}`, `B` the path
/// `b_1 .. b_{b_size}`; every `x_i` is adjacent to `a_1`, every `y_i` to `b_1`,
/// and `x_i y_i` is the only edge between `X` and `Y`.
pub fn creature_graph(k: usize, a_size: usize, b_size: usize) -> Result<LabeledGraph> {
    if k < 1 || a_size < 1 || b_size < 1 {
        return Err(Error::InvalidParameter(format!(
            "creature_graph needs k, a_size, b_size >= 1, got ({k}, {a_size}, {b_size})"
        )));
    }
    let (a, b) = (0, a_size);
    let x = b + b_size;
    let y = x + k;
    let n = y + k;
    let mut edges = Vec::new();
    edges.extend((1..a_size).map(|i| (a + i - 1, a + i)));
    edges.extend((1..b_size).map(|i| (b + i - 1, b + i)));
    for i in 0..k {
        edges.push((a, x + i));
        edges.push((b, y + i));
        edges.push((x + i, y + i));
    }
    let labels = names("a", a_size)
        .chain(names("b", b_size))
        .chain(names("x", k))
        .chain(names("y", k))
        .collect();
    Ok(LabeledGraph::build(n, edges, labels))
}

/// Intersection graph of `n` closed integer intervals drawn from `seed`.
pub fn random_interval_graph(n: usize, seed: u64) -> Result<Graph> {
    if n < 1 {
        return Err(Error::InvalidParameter("interval graph needs n >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = 2 * n as u64;
    let intervals: Vec<(u64, u64)> = (0..n)
        .map(|_| {
            let lo = rng.gen_range(0..span);
            let len = rng.gen_range(0..=n as u64);
            (lo, lo + len)
        })
        .collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (intervals[i], intervals[j]);
            if a.0 <= b.1 && b.0 <= a.1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges)
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("in range")
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::from_edges(n, edges).expect("in range")
}

/// Erdős–Rényi `G(n, p)` from `seed`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("in range")
}

/// A connected random graph: a random spanning tree plus `G(n, p)` edges.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let tree = (1..n).map(|v| (rng.gen_range(0..v), v));
    gnp(n, p, seed).with_edges(tree).expect("in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force: is there an induced cycle of length >= 4?
    fn has_long_induced_cycle(g: &Graph) -> bool {
        let n = g.n();
        (0u32..1 << n).any(|mask| {
            let s: VertexSet = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            s.len() >= 4
                && g.connected(&s)
                && s.iter().all(|v| g.neighbors(v).intersection_len(&s) == 2)
        })
    }

    #[test]
    fn prism_shape() {
        assert_eq!(prism(3).unwrap().graph.edge_count(), 9);
        assert_eq!(prism(4).unwrap().graph.edge_count(), 16);
        assert!(prism(2).is_err());
        for k in 3..=6 {
            let p = prism(k).unwrap();
            let (xs, ys) = (p.indexed("x", k), p.indexed("y", k));
            for v in 0..2 * k {
                assert_eq!(p.graph.degree(v), k);
            }
            for i in 0..k {
                for j in 0..k {
                    assert_eq!(p.graph.has_edge(xs[i], ys[j]), i == j);
                    assert_eq!(p.graph.has_edge(xs[i], xs[j]), i != j);
                    assert_eq!(p.graph.has_edge(ys[i], ys[j]), i != j);
                }
            }
        }
    }

    #[test]
    fn theta_shape() {
        let t = theta(3, 3).unwrap();
        assert_eq!((t.graph.n(), t.graph.edge_count()), (8, 9));
        assert_eq!(t.labels.len(), 8);
        assert!(t.graph.has_edge(t.vertex("x"), t.vertex("x2")));
        assert!(t.graph.has_edge(t.vertex("x2"), t.vertex("y2")));
        assert!(t.graph.has_edge(t.vertex("y2"), t.vertex("y")));
        assert!(!t.graph.has_edge(t.vertex("x2"), t.vertex("y3")));

        let h2 = h_graph(2).unwrap();
        assert_eq!(h2.graph.n(), 10);
        assert_eq!(h2.graph.edge_count(), 10);
        assert!(theta(2, 1).is_err());
        assert_eq!(theta(4, 2).unwrap().graph.n(), 6);
    }

    #[test]
    fn skinny_ladder_shape() {
        let l1 = skinny_ladder(1).unwrap();
        assert_eq!(l1.graph.edge_count(), 2);
        assert_eq!(l1.graph.degree(l1.vertex("r1")), 2);

        let l3 = skinny_ladder(3).unwrap();
        assert_eq!((l3.graph.n(), l3.graph.edge_count()), (9, 10));
        for k in 1..=5 {
            let l = skinny_ladder(k).unwrap();
            let (p, q, r) = (l.indexed("p", k), l.indexed("q", k), l.indexed("r", k));
            let (ps, qs, rs): (VertexSet, VertexSet, VertexSet) =
                (p.iter().collect(), q.iter().collect(), r.iter().collect());
            assert!(l.graph.anti_adjacent(&ps, &qs));
            assert!(l.graph.is_independent(&rs));
            assert_eq!(l.graph.components(&rs).unwrap(), vec![ps, qs]);
        }
    }

    #[test]
    fn creature_graph_matches_theta() {
        for k in 1..=5 {
            let c = creature_graph(k, 1, 1).unwrap();
            let t = theta(k, 3).unwrap();
            let rename = |l: &str| match l {
                "a1" => "x".to_string(),
                "b1" => "y".to_string(),
                other => other.to_string(),
            };
            let mut ce: Vec<(String, String)> = c
                .graph
                .edges()
                .into_iter()
                .map(|(u, v)| {
                    let (a, b) = (rename(c.label_of(u).unwrap()), rename(c.label_of(v).unwrap()));
                    if a < b { (a, b) } else { (b, a) }
                })
                .collect();
            let mut te: Vec<(String, String)> = t
                .graph
                .edges()
                .into_iter()
                .map(|(u, v)| {
                    let (a, b) = (t.label_of(u).unwrap().to_string(), t.label_of(v).unwrap().to_string());
                    if a < b { (a, b) } else { (b, a) }
                })
                .collect();
            ce.sort();
            te.sort();
            assert_eq!(ce, te);
        }
    }

    #[test]
    fn interval_graphs_are_deterministic_and_chordal() {
        assert_eq!(random_interval_graph(1, 7).unwrap().n(), 1);
        assert_eq!(random_interval_graph(9, 3).unwrap(), random_interval_graph(9, 3).unwrap());
        for seed in 0..40 {
            for n in [4, 6, 9] {
                let g = random_interval_graph(n, seed).unwrap();
                assert!(!has_long_induced_cycle(&g), "seed {seed} n {n}");
            }
        }
        assert!(has_long_induced_cycle(&cycle(5).unwrap()));
    }

    #[test]
    fn random_connected_is_connected() {
        for seed in 0..30 {
            let g = random_connected(9, 0.15, seed);
            assert!(g.connected(&g.vertices()));
        }
    }
}
