//! Immutable simple undirected graphs on dense vertex indices `0..n`.
//!
//! Vertex deletion is never done in place: callers pass an excluded set
//! (or an allowed set) to the component routines, or take an induced
//! subgraph when a fresh index space is actually needed.

use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
}

/// An induced subgraph together with the index maps in both directions.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `to_new[old]` is the new index of `old`, if it was kept.
    pub to_new: Vec<Option<usize>>,
    /// `to_old[new]` is the original index.
    pub to_old: Vec<usize>,
}

impl InducedSubgraph {
    /// Maps a set of original vertices into the subgraph, dropping those not kept.
    pub fn map_in(&self, s: &VertexSet) -> VertexSet {
        s.iter()
            .filter_map(|v| self.to_new.get(v).copied().flatten())
            .collect()
    }

    pub fn map_out(&self, s: &VertexSet) -> VertexSet {
        s.iter().map(|v| self.to_old[v]).collect()
    }
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![VertexSet::new(); n] }
    }

    /// Builds a graph from an edge list. Duplicate edges collapse; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![VertexSet::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph { adj })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub fn check_set(&self, s: &VertexSet) -> Result<()> {
        match s.last() {
            Some(m) if m >= self.n() => Err(Error::VertexOutOfRange { vertex: m, n: self.n() }),
            _ => Ok(()),
        }
    }

    /// `N(S)`: vertices outside `S` adjacent to some member of `S`.
    pub fn neighborhood(&self, s: &VertexSet) -> Result<VertexSet> {
        self.check_set(s)?;
        Ok(self.nbr(s))
    }

    pub(crate) fn nbr(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new();
        for v in s {
            out.union_with(&self.adj[v]);
        }
        out.difference_with(s);
        out
    }

    /// Closed neighborhood of a single vertex.
    pub(crate) fn closed_nbr(&self, v: usize) -> VertexSet {
        self.adj[v].with(v)
    }

    /// `G[S]` with its index maps; new indices follow the order of `S`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<InducedSubgraph> {
        self.check_set(s)?;
        let to_old = s.to_vec();
        let mut to_new = vec![None; self.n()];
        for (i, &v) in to_old.iter().enumerate() {
            to_new[v] = Some(i);
        }
        let adj = to_old
            .iter()
            .map(|&v| self.adj[v].iter().filter_map(|w| to_new[w]).collect())
            .collect();
        Ok(InducedSubgraph { graph: Graph { adj }, to_new, to_old })
    }

    /// Connected components of `G - excluded`, ordered by minimum vertex.
    pub fn components(&self, excluded: &VertexSet) -> Result<Vec<VertexSet>> {
        self.check_set(excluded)?;
        Ok(self.components_within(&self.vertices().difference(excluded)))
    }

    /// Connected components of `G[allowed]`, ordered by minimum vertex.
    pub(crate) fn components_within(&self, allowed: &VertexSet) -> Vec<VertexSet> {
        let mut rest = allowed.clone();
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let c = self.component_of(v, &rest);
            rest.difference_with(&c);
            out.push(c);
        }
        out
    }

    /// The component of `v` in `G[allowed]`; `v` itself is always included.
    pub(crate) fn component_of(&self, v: usize, allowed: &VertexSet) -> VertexSet {
        let mut comp = VertexSet::singleton(v);
        let mut frontier = comp.clone();
        while !frontier.is_empty() {
            let mut next = VertexSet::new();
            for x in &frontier {
                next.union_with(&self.adj[x]);
            }
            next.intersect_with(allowed);
            next.difference_with(&comp);
            comp.union_with(&next);
            frontier = next;
        }
        comp
    }

    /// Whether `G[S]` is connected. The empty set is rejected.
    pub fn is_connected(&self, s: &VertexSet) -> Result<bool> {
        self.check_set(s)?;
        match s.first() {
            None => Err(Error::EmptySet),
            Some(v) => Ok(self.component_of(v, s).len() == s.len()),
        }
    }

    pub(crate) fn connected(&self, s: &VertexSet) -> bool {
        s.first().is_some_and(|v| self.component_of(v, s).len() == s.len())
    }

    /// No edge joins `S` and `T`. The two sets must be disjoint.
    pub fn is_anti_adjacent(&self, s: &VertexSet, t: &VertexSet) -> Result<bool> {
        self.check_set(s)?;
        self.check_set(t)?;
        if let Some(v) = s.intersection(t).first() {
            return Err(Error::Overlapping(v));
        }
        Ok(self.anti_adjacent(s, t))
    }

    pub(crate) fn anti_adjacent(&self, s: &VertexSet, t: &VertexSet) -> bool {
        s.iter().all(|v| self.adj[v].is_disjoint(t))
    }

    /// Every member of `target` has a neighbor in `by`.
    pub(crate) fn dominates(&self, by: &VertexSet, target: &VertexSet) -> bool {
        target.iter().all(|t| self.adj[t].intersects(by))
    }

    pub fn is_independent(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| self.adj[v].is_disjoint(s))
    }

    /// The disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|a| a.iter().map(|v| v + off).collect()));
        Graph { adj }
    }

    /// A copy with additional edges.
    pub fn with_edges<I>(&self, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Graph::from_edges(self.n(), self.edges().into_iter().chain(edges))
    }

    /// A copy with the edges of `remove` deleted.
    pub fn without_edges(&self, remove: &[(usize, usize)]) -> Graph {
        let mut adj = self.adj.clone();
        for &(u, v) in remove {
            adj[u].remove(v);
            adj[v].remove(u);
        }
        Graph { adj }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use proptest::prelude::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().collect()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(3, [(0, 3)]), Err(Error::VertexOutOfRange { vertex: 3, n: 3 }));
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(Error::SelfLoop(1)));
        let g = Graph::from_edges(3, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn neighborhood_examples() {
        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(tri.neighborhood(&set(&[0])).unwrap(), set(&[1, 2]));
        assert_eq!(tri.neighborhood(&VertexSet::new()).unwrap(), VertexSet::new());
        assert!(tri.neighborhood(&set(&[5])).is_err());

        let p = families::prism(3).unwrap();
        let got = p.graph.neighborhood(&p.set(&["x1", "y1"])).unwrap();
        assert_eq!(got, p.set(&["x2", "x3", "y2", "y3"]));
    }

    #[test]
    fn induced_subgraph_examples() {
        let p4 = path(4);
        let sub = p4.induced_subgraph(&p4.vertices()).unwrap();
        assert_eq!(sub.graph, p4);
        assert_eq!(sub.to_old, vec![0, 1, 2, 3]);

        let ends = p4.induced_subgraph(&set(&[0, 3])).unwrap();
        assert_eq!(ends.graph.n(), 2);
        assert_eq!(ends.graph.edge_count(), 0);

        let th = families::theta(3, 3).unwrap();
        let star = th.graph.induced_subgraph(&th.set(&["x", "x1", "x2", "x3"])).unwrap();
        assert_eq!(star.graph.edge_count(), 3);
        let centre = star.to_new[th.vertex("x")].unwrap();
        assert_eq!(star.graph.degree(centre), 3);
    }

    #[test]
    fn components_examples() {
        let p3 = path(3);
        assert_eq!(p3.components(&set(&[1])).unwrap(), vec![set(&[0]), set(&[2])]);
        assert_eq!(p3.components(&VertexSet::new()).unwrap(), vec![p3.vertices()]);

        let p = families::prism(3).unwrap();
        let comps = p.graph.components(&p.set(&["x1", "x2", "y3"])).unwrap();
        let mut expected = vec![p.set(&["x3"]), p.set(&["y1", "y2"])];
        expected.sort_by_key(|c| c.first());
        assert_eq!(comps, expected);
    }

    #[test]
    fn connectivity_examples() {
        let p3 = path(3);
        assert!(!p3.is_connected(&set(&[0, 2])).unwrap());
        assert!(p3.is_connected(&set(&[0, 1])).unwrap());
        assert_eq!(p3.is_connected(&VertexSet::new()), Err(Error::EmptySet));

        let th = families::theta(3, 3).unwrap();
        assert!(th.graph.is_connected(&th.set(&["y", "y1", "y2", "y3"])).unwrap());
    }

    #[test]
    fn anti_adjacency_examples() {
        let th = families::theta(3, 3).unwrap();
        let x = th.set(&["x"]);
        assert!(th.graph.is_anti_adjacent(&x, &th.set(&["y1", "y2", "y3"])).unwrap());
        assert!(!th.graph.is_anti_adjacent(&x, &th.set(&["x1"])).unwrap());
        assert_eq!(th.graph.is_anti_adjacent(&x, &x), Err(Error::Overlapping(th.vertex("x"))));
        let p3 = path(3);
        assert!(p3.is_anti_adjacent(&set(&[0]), &set(&[2])).unwrap());
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                Graph::from_edges(n, edges).unwrap()
            })
        })
    }

    fn arb_graph_and_sets() -> impl Strategy<Value = (Graph, VertexSet, VertexSet)> {
        arb_graph(10).prop_flat_map(|g| {
            let n = g.n();
            let mask = proptest::collection::vec(0u8..3, n);
            (Just(g), mask).prop_map(|(g, m)| {
                let s = (0..m.len()).filter(|&i| m[i] == 1).collect();
                let t = (0..m.len()).filter(|&i| m[i] == 2).collect();
                (g, s, t)
            })
        })
    }

    proptest! {
        #[test]
        fn neighborhood_excludes_set((g, s, _t) in arb_graph_and_sets()) {
            prop_assert!(g.neighborhood(&s).unwrap().is_disjoint(&s));
        }

        #[test]
        fn components_partition((g, x, _t) in arb_graph_and_sets()) {
            let comps = g.components(&x).unwrap();
            let mut union = VertexSet::new();
            for (i, c) in comps.iter().enumerate() {
                prop_assert!(g.is_connected(c).unwrap());
                prop_assert!(union.is_disjoint(c));
                union.union_with(c);
                for d in &comps[i + 1..] {
                    prop_assert!(g.anti_adjacent(c, d));
                }
            }
            prop_assert_eq!(union, g.vertices().difference(&x));
            prop_assert!(comps.windows(2).all(|w| w[0].first() < w[1].first()));
        }

        #[test]
        fn induced_components_agree((g, s, _t) in arb_graph_and_sets()) {
            let sub = g.induced_subgraph(&s).unwrap();
            let mut via_sub: Vec<VertexSet> = sub
                .graph
                .components(&VertexSet::new())
                .unwrap()
                .iter()
                .map(|c| sub.map_out(c))
                .collect();
            via_sub.sort_by_key(|c| c.first());
            let direct = g.components(&g.vertices().difference(&s)).unwrap();
            prop_assert_eq!(via_sub, direct);
        }

        #[test]
        fn anti_adjacency_is_empty_neighborhood_meet((g, s, t) in arb_graph_and_sets()) {
            let lhs = g.is_anti_adjacent(&s, &t).unwrap();
            prop_assert_eq!(lhs, g.neighborhood(&s).unwrap().is_disjoint(&t));
        }
    }
}
