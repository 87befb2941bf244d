//! The two obstructions: k-creatures (induced subgraphs) and k-skinny-ladders
//! (induced minors), plus semi-induced matchings.
//!
//! Verification is always done from scratch against the definitions and is
//! independent of the search routines that produce witnesses.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::LabeledGraph;
use crate::graph::Graph;
use crate::separators::{is_minimal_separator, minimal_uv_separator_within, MinimalSeparator};
use crate::vertex_set::VertexSet;
use crate::Search;

/// A tuple `(A, B, X, Y)` claimed to be a `k`-creature with `k = |X| = |Y|`;
/// `x[i] y[i]` are the matching edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CreatureWitness {
    pub a: VertexSet,
    pub b: VertexSet,
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

impl CreatureWitness {
    pub fn k(&self) -> usize {
        self.x.len()
    }

    pub fn vertices(&self) -> VertexSet {
        let mut all = self.a.union(&self.b);
        all.extend(self.x.iter().copied());
        all.extend(self.y.iter().copied());
        all
    }

    /// Builds a witness from vertex labels of a generated graph.
    pub fn from_labels(lg: &LabeledGraph, a: &[&str], b: &[&str], x: &[&str], y: &[&str]) -> Self {
        CreatureWitness {
            a: lg.set(a),
            b: lg.set(b),
            x: x.iter().map(|l| lg.vertex(l)).collect(),
            y: y.iter().map(|l| lg.vertex(l)).collect(),
        }
    }

    /// The witness carried by [`crate::families::creature_graph`] output.
    pub fn canonical(lg: &LabeledGraph) -> Self {
        let count = |p: &str| lg.labels.keys().filter(|l| l.starts_with(p)).count();
        let (k, a, b) = (count("x"), count("a"), count("b"));
        CreatureWitness {
            a: lg.indexed("a", a).into_iter().collect(),
            b: lg.indexed("b", b).into_iter().collect(),
            x: lg.indexed("x", k),
            y: lg.indexed("y", k),
        }
    }
}

/// The first creature condition a tuple fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CreatureViolation {
    OutOfRange(usize),
    LengthMismatch { x: usize, y: usize },
    EmptyPart(&'static str),
    NotDisjoint(usize),
    /// (i)
    Disconnected(&'static str),
    /// (ii)
    Adjacent { from: &'static str, to: &'static str },
    /// (iii)
    Undominated(usize),
    /// (iv)
    Matching { x: usize, y: usize, edge: bool },
}

impl CreatureViolation {
    pub fn condition(&self) -> &'static str {
        match self {
            CreatureViolation::OutOfRange(_)
            | CreatureViolation::LengthMismatch { .. }
            | CreatureViolation::EmptyPart(_)
            | CreatureViolation::NotDisjoint(_) => "shape",
            CreatureViolation::Disconnected(_) => "(i)",
            CreatureViolation::Adjacent { .. } => "(ii)",
            CreatureViolation::Undominated(_) => "(iii)",
            CreatureViolation::Matching { .. } => "(iv)",
        }
    }
}

impl fmt::Display for CreatureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CreatureViolation::OutOfRange(v) => write!(f, "vertex {v} out of range"),
            CreatureViolation::LengthMismatch { x, y } => write!(f, "|X| = {x} but |Y| = {y}"),
            CreatureViolation::EmptyPart(p) => write!(f, "{p} is empty"),
            CreatureViolation::NotDisjoint(v) => write!(f, "vertex {v} occurs twice"),
            CreatureViolation::Disconnected(p) => write!(f, "condition (i): {p} is not connected"),
            CreatureViolation::Adjacent { from, to } => {
                write!(f, "condition (ii): {from} is adjacent to {to}")
            }
            CreatureViolation::Undominated(v) => {
                write!(f, "condition (iii): {v} has no neighbor on its side")
            }
            CreatureViolation::Matching { x, y, edge } => write!(
                f,
                "condition (iv): {x}{y} is {}an edge",
                if *edge { "" } else { "not " }
            ),
        }
    }
}

pub fn verify_creature(g: &Graph, w: &CreatureWitness) -> Result<(), CreatureViolation> {
    let all = w.a.iter().chain(w.b.iter()).chain(w.x.iter().copied()).chain(w.y.iter().copied());
    let mut seen = VertexSet::new();
    for v in all {
        if v >= g.n() {
            return Err(CreatureViolation::OutOfRange(v));
        }
        if !seen.insert(v) {
            return Err(CreatureViolation::NotDisjoint(v));
        }
    }
    if w.x.len() != w.y.len() {
        return Err(CreatureViolation::LengthMismatch { x: w.x.len(), y: w.y.len() });
    }
    let xs: VertexSet = w.x.iter().collect();
    let ys: VertexSet = w.y.iter().collect();
    for (name, part) in [("A", &w.a), ("B", &w.b), ("X", &xs), ("Y", &ys)] {
        if part.is_empty() {
            return Err(CreatureViolation::EmptyPart(name));
        }
    }
    for (name, part) in [("A", &w.a), ("B", &w.b)] {
        if !g.connected(part) {
            return Err(CreatureViolation::Disconnected(name));
        }
    }
    for (from, fs, to, ts) in [("A", &w.a, "Y", &ys), ("A", &w.a, "B", &w.b), ("B", &w.b, "X", &xs)] {
        if !g.anti_adjacent(fs, ts) {
            return Err(CreatureViolation::Adjacent { from, to });
        }
    }
    for (side, members) in [(&w.a, &w.x), (&w.b, &w.y)] {
        if let Some(&v) = members.iter().find(|&&v| !g.neighbors(v).intersects(side)) {
            return Err(CreatureViolation::Undominated(v));
        }
    }
    let m = SemiInducedMatching { pairs: w.x.iter().copied().zip(w.y.iter().copied()).collect() };
    m.first_violation(g).map_or(Ok(()), Err)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiInducedMatching {
    pub pairs: Vec<(usize, usize)>,
}

impl SemiInducedMatching {
    fn first_violation(&self, g: &Graph) -> Option<CreatureViolation> {
        for (i, &(x, _)) in self.pairs.iter().enumerate() {
            for (j, &(_, y)) in self.pairs.iter().enumerate() {
                let edge = x < g.n() && y < g.n() && g.has_edge(x, y);
                if edge != (i == j) {
                    return Some(CreatureViolation::Matching { x, y, edge });
                }
            }
        }
        None
    }
}

/// `x_i y_j` is an edge exactly when `i = j`.
pub fn verify_semi_induced_matching(g: &Graph, m: &SemiInducedMatching) -> bool {
    m.first_violation(g).is_none()
}

/// Visits connected subsets of `region` (each exactly once, ESU order).
/// The visitor returns whether to extend the current set further;
/// `Err` aborts the whole walk.
fn for_each_connected_subset<E>(
    g: &Graph,
    region: &VertexSet,
    max_size: usize,
    visit: &mut dyn FnMut(&VertexSet) -> std::result::Result<bool, E>,
) -> std::result::Result<(), E> {
    #[allow(clippy::too_many_arguments)]
    fn extend<E>(
        g: &Graph,
        region: &VertexSet,
        root: usize,
        sub: &VertexSet,
        closed: &VertexSet,
        mut ext: VertexSet,
        max_size: usize,
        visit: &mut dyn FnMut(&VertexSet) -> std::result::Result<bool, E>,
    ) -> std::result::Result<(), E> {
        if !visit(sub)? || sub.len() >= max_size {
            return Ok(());
        }
        while let Some(w) = ext.last() {
            ext.remove(w);
            let mut fresh = g.neighbors(w).intersection(region);
            fresh.difference_with(closed);
            let mut next_ext = ext.clone();
            next_ext.extend(fresh.iter().filter(|&u| u > root));
            let next_sub = sub.with(w);
            let next_closed = closed.union(&g.closed_nbr(w));
            extend(g, region, root, &next_sub, &next_closed, next_ext, max_size, visit)?;
        }
        Ok(())
    }

    if max_size == 0 {
        return Ok(());
    }
    for root in region {
        let sub = VertexSet::singleton(root);
        let closed = g.closed_nbr(root);
        let ext: VertexSet = g.neighbors(root).intersection(region).iter().filter(|&u| u > root).collect();
        extend(g, region, root, &sub, &closed, ext, max_size, visit)?;
    }
    Ok(())
}

struct OutOfBudget;

/// Exhaustive creature search, pivoting on the semi-induced matching.
///
/// Matchings are enumerated as increasing edge sequences with the first edge
/// oriented low-to-high (the `(A, B, X, Y) ↔ (B, A, Y, X)` symmetry). For each
/// matching, connected sets `A` avoiding `N(Y)` are grown until they dominate
/// `X`, and `B` is taken as a whole component of what remains for it. The
/// budget counts matchings plus candidate sets `A`.
pub fn find_creature(g: &Graph, k: usize, budget: u64) -> Search<CreatureWitness> {
    if k == 0 {
        return Search::None;
    }
    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        edges.push((u, v));
    }
    let mut st = CreatureSearch { g, k, edges, budget, spent: 0 };
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    match st.matchings(0, &mut xs, &mut ys, &mut VertexSet::new()) {
        Ok(Some(w)) => {
            debug_assert_eq!(verify_creature(g, &w), Ok(()));
            Search::Found(w)
        }
        Ok(None) => Search::None,
        Err(OutOfBudget) => Search::Unknown,
    }
}

struct CreatureSearch<'g> {
    g: &'g Graph,
    k: usize,
    edges: Vec<(usize, usize)>,
    budget: u64,
    spent: u64,
}

impl CreatureSearch<'_> {
    fn charge(&mut self) -> std::result::Result<(), OutOfBudget> {
        self.spent += 1;
        if self.spent > self.budget {
            Err(OutOfBudget)
        } else {
            Ok(())
        }
    }

    fn matchings(
        &mut self,
        start: usize,
        xs: &mut Vec<usize>,
        ys: &mut Vec<usize>,
        used: &mut VertexSet,
    ) -> std::result::Result<Option<CreatureWitness>, OutOfBudget> {
        if xs.len() == self.k {
            self.charge()?;
            return self.complete(xs, ys);
        }
        let need = self.k - xs.len();
        for e in start..self.edges.len() {
            if self.edges.len() - e < need {
                break;
            }
            let (u, v) = self.edges[e];
            if used.contains(u) || used.contains(v) {
                continue;
            }
            let orientations: &[(usize, usize)] = if xs.is_empty() { &[(u, v)] } else { &[(u, v), (v, u)] };
            for &(x, y) in orientations {
                let ok = xs.iter().zip(ys.iter()).all(|(&xi, &yi)| !self.g.has_edge(x, yi) && !self.g.has_edge(xi, y));
                if !ok {
                    continue;
                }
                xs.push(x);
                ys.push(y);
                used.insert(x);
                used.insert(y);
                let found = self.matchings(e + 1, xs, ys, used)?;
                used.remove(x);
                used.remove(y);
                xs.pop();
                ys.pop();
                if found.is_some() {
                    return Ok(found);
                }
            }
        }
        Ok(None)
    }

    fn complete(&mut self, xs: &[usize], ys: &[usize]) -> std::result::Result<Option<CreatureWitness>, OutOfBudget> {
        let g = self.g;
        let xset: VertexSet = xs.iter().collect();
        let yset: VertexSet = ys.iter().collect();
        let core = xset.union(&yset);
        let region_a = g.vertices().difference(&core).difference(&g.nbr(&yset));
        let region_b = g.vertices().difference(&core).difference(&g.nbr(&xset));
        let dominating = |region: &VertexSet, target: &VertexSet| {
            g.components_within(region)
                .into_iter()
                .filter(|c| target.iter().all(|t| g.neighbors(t).intersects(c)))
                .collect::<Vec<_>>()
        };
        let a_hosts = dominating(&region_a, &xset);
        if a_hosts.is_empty() || dominating(&region_b, &yset).is_empty() {
            return Ok(None);
        }
        let mut found = None;
        for host in a_hosts {
            let mut visit = |a: &VertexSet| -> std::result::Result<bool, OutOfBudget> {
                self.charge()?;
                if !xset.iter().all(|x| g.neighbors(x).intersects(a)) {
                    return Ok(true);
                }
                let mut closed_a = a.clone();
                closed_a.union_with(&g.nbr(a));
                let b_region = region_b.difference(&closed_a);
                if let Some(b) = dominating(&b_region, &yset).into_iter().next() {
                    found = Some(CreatureWitness { a: a.clone(), b, x: xs.to_vec(), y: ys.to_vec() });
                    return Err(OutOfBudget);
                }
                Ok(false)
            };
            let res = for_each_connected_subset(g, &host, usize::MAX, &mut visit);
            if found.is_some() {
                return Ok(found);
            }
            res?;
        }
        Ok(None)
    }
}

/// The `2^k` separators forced by a creature, inside `G[A ∪ B ∪ X ∪ Y]`.
///
/// For every choice of one endpoint per matching edge the choice set is
/// minimalized as an `A`-`B` separator of the induced subgraph. Results are
/// reported in the indices of `g`; the full components listed are those of
/// the induced subgraph.
pub fn creature_separators(g: &Graph, w: &CreatureWitness) -> Result<Vec<MinimalSeparator>> {
    verify_creature(g, w).map_err(Error::InvalidWitness)?;
    let k = w.k();
    if k >= 31 {
        return Err(Error::InvalidParameter(format!("2^{k} separators requested")));
    }
    let sub = g.induced_subgraph(&w.vertices())?;
    let h = &sub.graph;
    let local = |v: usize| sub.to_new[v].expect("witness vertex kept");
    let (u, v) = (local(w.a.first().unwrap()), local(w.b.first().unwrap()));
    let mut out = Vec::with_capacity(1 << k);
    for mask in 0u32..1 << k {
        let choice: VertexSet = (0..k)
            .map(|i| local(if mask >> i & 1 == 1 { w.x[i] } else { w.y[i] }))
            .collect();
        let s = minimal_uv_separator_within(h, u, v, &choice)?;
        let ms = is_minimal_separator(h, &s).expect("two-sided trim yields a minimal separator");
        out.push(MinimalSeparator {
            separator: sub.map_out(&ms.separator),
            full_components: ms.full_components.iter().map(|c| sub.map_out(c)).collect(),
        });
    }
    Ok(out)
}

/// A vertex of the `k`-skinny ladder.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LadderRole {
    P(usize),
    Q(usize),
    R(usize),
}

impl LadderRole {
    /// All roles in search order `r1, p1, q1, r2, p2, q2, ...`.
    pub fn all(k: usize) -> Vec<LadderRole> {
        (1..=k).flat_map(|i| [LadderRole::R(i), LadderRole::P(i), LadderRole::Q(i)]).collect()
    }

    pub fn adjacent(self, other: LadderRole) -> bool {
        use LadderRole::*;
        match (self, other) {
            (P(i), P(j)) | (Q(i), Q(j)) => i.abs_diff(j) == 1,
            (P(i), R(j)) | (R(j), P(i)) | (Q(i), R(j)) | (R(j), Q(i)) => i == j,
            _ => false,
        }
    }
}

impl fmt::Display for LadderRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LadderRole::P(i) => write!(f, "p{i}"),
            LadderRole::Q(i) => write!(f, "q{i}"),
            LadderRole::R(i) => write!(f, "r{i}"),
        }
    }
}

/// Branch sets of an induced-minor model of the `k`-skinny ladder,
/// indexed like [`LadderRole::all`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderModel {
    pub k: usize,
    pub branches: Vec<VertexSet>,
}

impl LadderModel {
    pub fn from_map(k: usize, map: &BTreeMap<LadderRole, VertexSet>) -> Option<LadderModel> {
        let branches = LadderRole::all(k).iter().map(|r| map.get(r).cloned()).collect::<Option<Vec<_>>>()?;
        Some(LadderModel { k, branches })
    }

    pub fn branch(&self, role: LadderRole) -> &VertexSet {
        let idx = LadderRole::all(self.k).iter().position(|&r| r == role).expect("role within k");
        &self.branches[idx]
    }

    /// Role label to branch set, e.g. `"p1" -> {0, 3}`.
    pub fn to_map(&self) -> BTreeMap<String, VertexSet> {
        LadderRole::all(self.k)
            .into_iter()
            .zip(self.branches.iter().cloned())
            .map(|(r, b)| (r.to_string(), b))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LadderViolation {
    WrongArity { expected: usize, got: usize },
    Empty(LadderRole),
    OutOfRange(usize),
    Overlap(LadderRole, LadderRole),
    Disconnected(LadderRole),
    Adjacency { a: LadderRole, b: LadderRole, expected: bool },
}

impl fmt::Display for LadderViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LadderViolation::WrongArity { expected, got } => write!(f, "expected {expected} branch sets, got {got}"),
            LadderViolation::Empty(r) => write!(f, "branch set {r} is empty"),
            LadderViolation::OutOfRange(v) => write!(f, "vertex {v} out of range"),
            LadderViolation::Overlap(a, b) => write!(f, "branch sets {a} and {b} overlap"),
            LadderViolation::Disconnected(r) => write!(f, "branch set {r} is not connected"),
            LadderViolation::Adjacency { a, b, expected } => write!(
                f,
                "branch sets {a} and {b} should {}be adjacent",
                if *expected { "" } else { "not " }
            ),
        }
    }
}

/// Checks every pair of branch sets against the ladder's adjacency.
pub fn verify_ladder_model(g: &Graph, m: &LadderModel) -> Result<(), LadderViolation> {
    let roles = LadderRole::all(m.k);
    if roles.len() != m.branches.len() {
        return Err(LadderViolation::WrongArity { expected: roles.len(), got: m.branches.len() });
    }
    for (i, b) in m.branches.iter().enumerate() {
        if b.is_empty() {
            return Err(LadderViolation::Empty(roles[i]));
        }
        if let Some(v) = b.last().filter(|&v| v >= g.n()) {
            return Err(LadderViolation::OutOfRange(v));
        }
        if !g.connected(b) {
            return Err(LadderViolation::Disconnected(roles[i]));
        }
    }
    for i in 0..roles.len() {
        for j in i + 1..roles.len() {
            let (bi, bj) = (&m.branches[i], &m.branches[j]);
            if bi.intersects(bj) {
                return Err(LadderViolation::Overlap(roles[i], roles[j]));
            }
            let touching = !g.anti_adjacent(bi, bj);
            let expected = roles[i].adjacent(roles[j]);
            if touching != expected {
                return Err(LadderViolation::Adjacency { a: roles[i], b: roles[j], expected });
            }
        }
    }
    Ok(())
}

/// Exhaustive branch-and-bound search for a `k`-skinny-ladder induced minor.
///
/// Branch sets are assigned in the order `r1, p1, q1, r2, ...`; each is a
/// connected set of unused vertices that avoids the neighborhoods of every
/// already-placed non-adjacent role and touches every already-placed
/// adjacent role. Candidates are tried smallest first. The budget counts
/// candidate branch sets.
pub fn find_skinny_ladder_minor(g: &Graph, k: usize, budget: u64) -> Search<LadderModel> {
    if k == 0 {
        return Search::None;
    }
    if 3 * k > g.n() {
        return Search::None;
    }
    let roles = LadderRole::all(k);
    let mut st = LadderSearch { g, roles: &roles, budget, spent: 0 };
    let mut branches = Vec::with_capacity(roles.len());
    match st.assign(&mut branches, &VertexSet::new()) {
        Ok(true) => {
            let m = LadderModel { k, branches };
            debug_assert_eq!(verify_ladder_model(g, &m), Ok(()));
            Search::Found(m)
        }
        Ok(false) => Search::None,
        Err(OutOfBudget) => Search::Unknown,
    }
}

struct LadderSearch<'a> {
    g: &'a Graph,
    roles: &'a [LadderRole],
    budget: u64,
    spent: u64,
}

impl LadderSearch<'_> {
    fn assign(&mut self, branches: &mut Vec<VertexSet>, used: &VertexSet) -> std::result::Result<bool, OutOfBudget> {
        let idx = branches.len();
        if idx == self.roles.len() {
            return Ok(true);
        }
        let g = self.g;
        let role = self.roles[idx];
        let mut region = g.vertices().difference(used);
        let mut required = Vec::new();
        for (j, b) in branches.iter().enumerate() {
            if role.adjacent(self.roles[j]) {
                required.push(b.clone());
            } else {
                region.difference_with(&g.nbr(b));
            }
        }
        let remaining_roles = self.roles.len() - idx - 1;
        let free_after = g.n() - used.len();
        if free_after < remaining_roles + 1 {
            return Ok(false);
        }
        let max_size = free_after - remaining_roles;

        let mut candidates = Vec::new();
        let mut out_of_budget = false;
        let _ = for_each_connected_subset(g, &region, max_size, &mut |c: &VertexSet| -> std::result::Result<bool, OutOfBudget> {
            self.spent += 1;
            if self.spent > self.budget {
                out_of_budget = true;
                return Err(OutOfBudget);
            }
            if required.iter().all(|r| g.nbr(r).intersects(c)) {
                candidates.push(c.clone());
            }
            Ok(true)
        });
        if out_of_budget {
            return Err(OutOfBudget);
        }
        candidates.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        for c in candidates {
            let next_used = used.union(&c);
            branches.push(c);
            if self.assign(branches, &next_used)? {
                return Ok(true);
            }
            branches.pop();
        }
        Ok(false)
    }
}
