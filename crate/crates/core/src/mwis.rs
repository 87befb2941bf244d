//! Exact maximum weight independent set by dynamic programming over
//! potential maximal cliques.
//!
//! Blocks are pairs `(S, C)` of a minimal separator and one of its full
//! components. A block is solved by choosing a potential maximal clique
//! `Ω` with `S ⊊ Ω ⊆ S ∪ C`, at most one solution vertex in `Ω`, and
//! recursing into the components of `C - Ω`.

use std::collections::{BTreeSet, HashMap};

use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::separators::{minimal_separators, MinimalSeparator};
use crate::vertex_set::VertexSet;

pub type Weight = Ratio<i128>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    pub graph: Graph,
    weights: Vec<Weight>,
}

impl WeightedGraph {
    pub fn new(graph: Graph, weights: Vec<Weight>) -> Result<Self> {
        if weights.len() != graph.n() {
            return Err(Error::InvalidParameter(format!(
                "expected {} weights, got {}",
                graph.n(),
                weights.len()
            )));
        }
        if let Some(v) = weights.iter().position(|w| *w < Weight::zero()) {
            return Err(Error::InvalidParameter(format!("weight of vertex {v} is negative")));
        }
        Ok(WeightedGraph { graph, weights })
    }

    pub fn unit(graph: Graph) -> Self {
        let weights = vec![Weight::from_integer(1); graph.n()];
        WeightedGraph { graph, weights }
    }

    pub fn weight(&self, v: usize) -> Weight {
        self.weights[v]
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight_of(&self, s: &VertexSet) -> Weight {
        s.iter().map(|v| self.weights[v]).sum()
    }
}

/// The local characterization: no component of `G - Ω` is full to `Ω`, and
/// every non-adjacent pair of `Ω` lies in the neighborhood of some component.
pub fn is_pmc(g: &Graph, omega: &VertexSet) -> bool {
    if omega.is_empty() || g.check_set(omega).is_err() {
        return false;
    }
    let nbhds: Vec<VertexSet> = g
        .components_within(&g.vertices().difference(omega))
        .iter()
        .map(|c| g.nbr(c))
        .collect();
    if nbhds.iter().any(|n| n == omega) {
        return false;
    }
    let members = omega.to_vec();
    for (i, &x) in members.iter().enumerate() {
        for &y in &members[i + 1..] {
            if !g.has_edge(x, y) && !nbhds.iter().any(|n| n.contains(x) && n.contains(y)) {
                return false;
            }
        }
    }
    true
}

/// Potential maximal cliques by incremental construction, one vertex at a
/// time, over each connected component in BFS order (so every prefix is
/// connected). `seps` must be the complete minimal-separator list of `g`.
pub fn enumerate_pmcs(g: &Graph, seps: &[MinimalSeparator]) -> Vec<VertexSet> {
    let mut out = BTreeSet::new();
    for comp in g.components(&VertexSet::new()).expect("empty set is in range") {
        let order = bfs_order(g, &comp);
        let m = order.len();
        // Local graph: vertex i is order[i], so prefixes are 0..i.
        let relabel = |s: &VertexSet| -> VertexSet { s.iter().map(|v| order[v]).collect() };
        let mut inv = vec![0; g.n()];
        for (i, &v) in order.iter().enumerate() {
            inv[v] = i;
        }
        let edges = g
            .edges()
            .into_iter()
            .filter(|&(a, b)| comp.contains(a) && comp.contains(b))
            .map(|(a, b)| (inv[a], inv[b]));
        let h = Graph::from_edges(m, edges).expect("valid relabeling");

        let prefix = |i: usize| -> Graph { h.induced_subgraph(&(0..i).collect()).expect("in range").graph };
        let final_seps: BTreeSet<VertexSet> = seps
            .iter()
            .filter(|ms| ms.separator.is_subset(&comp))
            .map(|ms| ms.separator.iter().map(|v| inv[v]).collect())
            .collect();
        let seps_of = |i: usize, gi: &Graph| -> BTreeSet<VertexSet> {
            if i == m {
                final_seps.clone()
            } else {
                minimal_separators(gi).into_iter().map(|ms| ms.separator).collect()
            }
        };

        let mut pi: BTreeSet<VertexSet> = BTreeSet::from([VertexSet::singleton(0)]);
        let mut delta: BTreeSet<VertexSet> = BTreeSet::new();
        for i in 1..m {
            let gi = prefix(i + 1);
            let a = i;
            let delta_next = seps_of(i + 1, &gi);
            let mut next = BTreeSet::new();
            for p in &pi {
                let grown = p.with(a);
                if is_pmc(&gi, &grown) {
                    next.insert(grown);
                } else if is_pmc(&gi, p) {
                    next.insert(p.clone());
                }
            }
            for s in &delta_next {
                let grown = s.with(a);
                if is_pmc(&gi, &grown) {
                    next.insert(grown);
                }
                if !s.contains(a) && !delta.contains(s) {
                    let comps = gi.components_within(&gi.vertices().difference(s));
                    for t in &delta {
                        for c in &comps {
                            let cand = s.union(&t.intersection(c));
                            if is_pmc(&gi, &cand) {
                                next.insert(cand);
                            }
                        }
                    }
                }
            }
            pi = next;
            delta = delta_next;
        }
        out.extend(pi.iter().map(relabel));
    }
    out.into_iter().collect()
}

fn bfs_order(g: &Graph, comp: &VertexSet) -> Vec<usize> {
    let start = comp.first().expect("components are nonempty");
    let mut order = vec![start];
    let mut seen = VertexSet::singleton(start);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for w in g.neighbors(v) {
            if comp.contains(w) && !seen.contains(w) {
                seen.insert(w);
                order.push(w);
            }
        }
    }
    order
}

pub const PMC_BRUTE_LIMIT: usize = 16;

/// Every vertex subset passing [`is_pmc`].
pub fn brute_force_pmcs(g: &Graph) -> Result<Vec<VertexSet>> {
    if g.n() > PMC_BRUTE_LIMIT {
        return Err(Error::TooLarge { what: "graph", size: g.n(), limit: PMC_BRUTE_LIMIT });
    }
    Ok((1u32..1 << g.n())
        .map(|mask| (0..g.n()).filter(|v| mask >> v & 1 == 1).collect::<VertexSet>())
        .filter(|s| is_pmc(g, s))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect())
}

struct Solver<'a> {
    wg: &'a WeightedGraph,
    pmcs: Vec<VertexSet>,
    memo: HashMap<(VertexSet, Option<usize>), (Weight, VertexSet)>,
}

impl Solver<'_> {
    fn g(&self) -> &Graph {
        &self.wg.graph
    }

    /// Best solution over `Ω`'s choice set plus the blocks hanging below `Ω`
    /// inside `within`.
    fn through(&mut self, omega: &VertexSet, within: &VertexSet, fixed: Option<usize>) -> (Weight, VertexSet) {
        let choices: Vec<Option<usize>> = match fixed {
            Some(x) => vec![Some(x)],
            None => std::iter::once(None).chain(omega.intersection(within).iter().map(Some)).collect(),
        };
        let below = self.g().components_within(&within.difference(omega));
        let mut best: Option<(Weight, VertexSet)> = None;
        for pick in choices {
            let mut total = Weight::zero();
            let mut set = VertexSet::new();
            if let (Some(x), None) = (pick, fixed) {
                total += self.wg.weight(x);
                set.insert(x);
            }
            for c in &below {
                let s = self.g().nbr(c);
                let w = pick.filter(|x| s.contains(*x));
                let (wt, part) = self.block(c, w);
                total += wt;
                set.union_with(&part);
            }
            if best.as_ref().is_none_or(|(b, _)| total > *b) {
                best = Some((total, set));
            }
        }
        best.expect("at least one choice")
    }

    /// Best weight inside `C` given the solution meets `N(C)` in `w`.
    fn block(&mut self, c: &VertexSet, w: Option<usize>) -> (Weight, VertexSet) {
        let key = (c.clone(), w);
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let s = self.g().nbr(c);
        let region = s.union(c);
        let mut best: Option<(Weight, VertexSet)> = None;
        for i in 0..self.pmcs.len() {
            let omega = self.pmcs[i].clone();
            if !(s.is_subset(&omega) && omega.is_subset(&region) && omega != s) {
                continue;
            }
            let got = self.through(&omega, c, w);
            if best.as_ref().is_none_or(|(b, _)| got.0 > *b) {
                best = Some(got);
            }
        }
        let best = best.expect("every block has a potential maximal clique");
        self.memo.insert(key, best.clone());
        best
    }
}

/// Exact optimum and an optimal independent set.
pub fn solve_mwis(wg: &WeightedGraph) -> (Weight, VertexSet) {
    let g = &wg.graph;
    let seps = minimal_separators(g);
    let pmcs = enumerate_pmcs(g, &seps);
    let mut solver = Solver { wg, pmcs, memo: HashMap::new() };
    let mut total = Weight::zero();
    let mut set = VertexSet::new();
    for comp in g.components(&VertexSet::new()).expect("in range") {
        let mut best: Option<(Weight, VertexSet)> = None;
        for i in 0..solver.pmcs.len() {
            let omega = solver.pmcs[i].clone();
            if !omega.is_subset(&comp) {
                continue;
            }
            let got = solver.through(&omega, &comp, None);
            if best.as_ref().is_none_or(|(b, _)| got.0 > *b) {
                best = Some(got);
            }
        }
        let (w, s) = best.expect("every component has a potential maximal clique");
        total += w;
        set.union_with(&s);
    }
    (total, set)
}

pub const MWIS_BRUTE_LIMIT: usize = 20;

/// Reference optimum by exhaustive branching over independent sets.
pub fn brute_mwis(wg: &WeightedGraph) -> Result<Weight> {
    let g = &wg.graph;
    if g.n() > MWIS_BRUTE_LIMIT {
        return Err(Error::TooLarge { what: "graph", size: g.n(), limit: MWIS_BRUTE_LIMIT });
    }
    fn go(wg: &WeightedGraph, cand: VertexSet, acc: Weight, best: &mut Weight) {
        let Some(v) = cand.first() else {
            if acc > *best {
                *best = acc;
            }
            return;
        };
        go(wg, cand.without(v).difference(wg.graph.neighbors(v)), acc + wg.weight(v), best);
        go(wg, cand.without(v), acc, best);
    }
    let mut best = Weight::zero();
    go(wg, g.vertices(), Weight::zero(), &mut best);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{self, complete, cycle, gnp, path};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(n: i128) -> Weight {
        Weight::from_integer(n)
    }

    fn pmcs(g: &Graph) -> Vec<VertexSet> {
        enumerate_pmcs(g, &minimal_separators(g))
    }

    fn sets(v: &[&[usize]]) -> Vec<VertexSet> {
        let mut out: Vec<VertexSet> = v.iter().map(|s| s.iter().collect()).collect();
        out.sort();
        out
    }

    #[test]
    fn small_pmc_examples() {
        assert_eq!(pmcs(&complete(3)), sets(&[&[0, 1, 2]]));
        assert_eq!(pmcs(&cycle(4).unwrap()), sets(&[&[0, 1, 2], &[1, 2, 3], &[0, 2, 3], &[0, 1, 3]]));
        assert_eq!(pmcs(&path(4)), sets(&[&[0, 1], &[1, 2], &[2, 3]]));
        assert_eq!(brute_force_pmcs(&cycle(4).unwrap()).unwrap(), pmcs(&cycle(4).unwrap()));
        assert_eq!(brute_force_pmcs(&path(4)).unwrap(), pmcs(&path(4)));
        assert_eq!(pmcs(&Graph::empty(2)), sets(&[&[0], &[1]]));
    }

    #[test]
    fn pmcs_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for seed in 0..300u64 {
            let n = rng.gen_range(1..=10);
            let g = gnp(n, rng.gen_range(0.15..0.7), seed);
            let got = pmcs(&g);
            assert!(got.iter().all(|o| is_pmc(&g, o)));
            assert_eq!(got, brute_force_pmcs(&g).unwrap(), "seed {seed}");
        }
        for g in [families::prism(4).unwrap().graph, families::skinny_ladder(4).unwrap().graph] {
            assert_eq!(pmcs(&g), brute_force_pmcs(&g).unwrap());
        }
    }

    #[test]
    fn unit_weight_examples() {
        assert_eq!(solve_mwis(&WeightedGraph::unit(cycle(5).unwrap())).0, w(2));
        assert_eq!(solve_mwis(&WeightedGraph::unit(families::prism(3).unwrap().graph)).0, w(2));
        let l = families::skinny_ladder(3).unwrap();
        let (value, set) = solve_mwis(&WeightedGraph::unit(l.graph.clone()));
        assert_eq!(value, w(5));
        assert!(l.graph.is_independent(&set));
        assert!(l.graph.is_independent(&l.set(&["p1", "p3", "q1", "q3", "r2"])));
    }

    #[test]
    fn trivial_graphs() {
        let weights: Vec<Weight> = [3, 1, 4, 1, 5].into_iter().map(w).collect();
        let empty = WeightedGraph::new(Graph::empty(5), weights.clone()).unwrap();
        assert_eq!(brute_mwis(&empty).unwrap(), w(14));
        assert_eq!(solve_mwis(&empty), (w(14), Graph::empty(5).vertices()));
        let k = WeightedGraph::new(complete(5), weights).unwrap();
        assert_eq!(brute_mwis(&k).unwrap(), w(5));
        assert_eq!(solve_mwis(&k), (w(5), VertexSet::singleton(4)));
        assert_eq!(solve_mwis(&WeightedGraph::unit(Graph::empty(0))).0, w(0));
    }

    #[test]
    fn weight_validation() {
        assert!(WeightedGraph::new(path(2), vec![w(1)]).is_err());
        assert!(WeightedGraph::new(path(2), vec![w(1), w(-1)]).is_err());
        assert!(matches!(brute_mwis(&WeightedGraph::unit(Graph::empty(21))), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn matches_brute_force_on_random_weighted_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for seed in 0..200u64 {
            let n = rng.gen_range(1..=12);
            let g = gnp(n, rng.gen_range(0.1..0.6), seed);
            let weights = (0..n).map(|_| Weight::new(rng.gen_range(0..20), rng.gen_range(1..5))).collect();
            let wg = WeightedGraph::new(g, weights).unwrap();
            let (value, set) = solve_mwis(&wg);
            assert!(wg.graph.is_independent(&set));
            assert_eq!(wg.weight_of(&set), value);
            assert_eq!(value, brute_mwis(&wg).unwrap(), "seed {seed}");
        }
    }
}
