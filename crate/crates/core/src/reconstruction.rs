//! Separator certificates.
//!
//! Given a minimal separator `S` with full components `A` and `B`, either
//! some vertex outside `S` sees all of `S` (the dominated case), or `S` is
//! rebuilt from a small key: a vertex `u` of a minimal connected dominator
//! `tB ⊆ B`, a private neighbor `v ∈ S` of `u`, two sets `Q` and `R` drawn
//! from neighborhood traces, and a minimal separator `S₀` of the smaller
//! graph `G₀ = G - (Q ∪ R)` whose ζ is strictly smaller than ζ of `S`.
//!
//! Every free choice is made by a fixed vertex-order rule, and every step's
//! invariant is checked before a certificate is returned.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::separators::{
    minimal_separators, minimal_uv_separator_within, separates, separator_traces, MinimalSeparator,
};
use crate::structures::{verify_creature, CreatureViolation, CreatureWitness};
use crate::vertex_set::VertexSet;
use crate::zeta::zeta;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructionError {
    #[error("precondition: {0}")]
    Precondition(&'static str),
    /// A proof step failed; this indicates a bug in the construction.
    #[error("invariant violated: {0}")]
    Invariant(&'static str),
}

type Result<T> = std::result::Result<T, ReconstructionError>;

fn ensure(cond: bool, what: &'static str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(ReconstructionError::Invariant(what))
    }
}

/// One component of the dominating family `𝒟` inside `A - N(v)`, with the
/// data of its matching edge and its own dominator into `N(v) ∩ B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DComponent {
    pub vertices: VertexSet,
    /// Dominated (within `𝒟`) only by this component.
    pub private: usize,
    /// Neighbor of `private` in the component closest to `N(v) ∩ A`.
    pub anchor: usize,
    /// Interior of a shortest `anchor`-to-`N(v) ∩ A` path in `G[A]`.
    pub path_interior: VertexSet,
    /// Minimal subset of `N(v) ∩ B` dominating `N(D) ∩ S_B`.
    pub z: Vec<usize>,
    pub z_private: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReconstructionCertificate {
    pub separator: VertexSet,
    pub a: VertexSet,
    pub b: VertexSet,
    pub t_b: VertexSet,
    pub u: usize,
    pub v: usize,
    pub s_u: VertexSet,
    pub s_v: VertexSet,
    pub s_a: VertexSet,
    pub s_b: VertexSet,
    pub z_a: Vec<usize>,
    pub z_a_private: Vec<usize>,
    pub d_family: Vec<DComponent>,
    pub z: VertexSet,
    pub q: VertexSet,
    pub s_prime: VertexSet,
    pub s_double_prime: VertexSet,
    pub r: VertexSet,
    pub s0: VertexSet,
    pub b0: VertexSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Reconstruction {
    /// `N(witness) ⊇ S` for some `witness ∉ S`.
    Dominated { witness: usize },
    Certified(Box<ReconstructionCertificate>),
}

/// The data from which `S` is recovered: `S = N(C)` where `C` is component
/// number `a_index` of `G - Q - R - S₀`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CertificateKey {
    pub u: usize,
    pub v: usize,
    pub q: VertexSet,
    pub r: VertexSet,
    pub s0: VertexSet,
    pub a_index: usize,
}

impl ReconstructionCertificate {
    /// `V(G₀) = V(G) - (Q ∪ R)`.
    pub fn reduced_vertices(&self, g: &Graph) -> VertexSet {
        g.vertices().difference(&self.q).difference(&self.r)
    }

    pub fn key(&self, g: &Graph) -> CertificateKey {
        let removed = self.q.union(&self.r).union(&self.s0);
        let comps = g.components_within(&g.vertices().difference(&removed));
        let a_index = comps.iter().position(|c| c == &self.a).expect("A is a component of G - Q - R - S0");
        CertificateKey { u: self.u, v: self.v, q: self.q.clone(), r: self.r.clone(), s0: self.s0.clone(), a_index }
    }

    /// `(ζ_G(S), ζ_{G₀}(S₀))`.
    pub fn zeta_pair(&self, g: &Graph) -> (usize, usize) {
        let before = zeta(g, &self.separator).expect("in range").value;
        let sub = g.induced_subgraph(&self.reduced_vertices(g)).expect("in range");
        let after = zeta(&sub.graph, &sub.map_in(&self.s0)).expect("in range").value;
        (before, after)
    }
}

/// Recovers `S` from a key as the neighborhood of the indexed component.
pub fn separator_from_key(g: &Graph, key: &CertificateKey) -> Option<VertexSet> {
    let removed = key.q.union(&key.r).union(&key.s0);
    let comps = g.components_within(&g.vertices().difference(&removed));
    comps.get(key.a_index).map(|c| g.nbr(c))
}

/// Deletes members in descending order while `feasible` still holds, until
/// no single deletion is possible. For monotone `feasible` the result is
/// inclusion-minimal.
fn greedy_minimal<T: Clone>(mut items: Vec<T>, feasible: impl Fn(&[T]) -> bool) -> Vec<T> {
    loop {
        let mut changed = false;
        for i in (0..items.len()).rev() {
            let mut trial = items.clone();
            trial.remove(i);
            if feasible(&trial) {
                items = trial;
                changed = true;
            }
        }
        if !changed {
            return items;
        }
    }
}

/// Inclusion-minimal connected `T ⊆ B` with `N(T) ⊇ S`.
pub fn minimal_connected_dominator(g: &Graph, b: &VertexSet, s: &VertexSet) -> Result<VertexSet> {
    if b.is_empty() || !g.connected(b) {
        return Err(ReconstructionError::Precondition("B must be nonempty and connected"));
    }
    if !g.dominates(b, s) || b.intersects(s) {
        return Err(ReconstructionError::Precondition("N(B) must contain S"));
    }
    let mut t = b.clone();
    loop {
        let mut changed = false;
        for x in t.to_vec().into_iter().rev() {
            let trial = t.without(x);
            if !trial.is_empty() && g.connected(&trial) && g.dominates(&trial, s) {
                t = trial;
                changed = true;
            }
        }
        if !changed {
            return Ok(t);
        }
    }
}

/// For each `z` (in order), the lowest target vertex whose only neighbor
/// among `zs` is `z`.
fn private_neighbors(g: &Graph, zs: &[usize], target: &VertexSet) -> Option<Vec<usize>> {
    let zset: VertexSet = zs.iter().collect();
    zs.iter()
        .map(|&z| {
            target
                .iter()
                .find(|&t| g.neighbors(t).intersection(&zset) == VertexSet::singleton(z))
        })
        .collect()
}

/// The first vertex outside `S` adjacent to all of `S`, if any.
pub fn dominating_vertex(g: &Graph, s: &VertexSet) -> Option<usize> {
    (0..g.n()).find(|&w| !s.contains(w) && s.is_subset(g.neighbors(w)))
}

pub fn build_certificate(g: &Graph, ms: &MinimalSeparator, a: &VertexSet, b: &VertexSet) -> Result<Reconstruction> {
    let s = &ms.separator;
    if s.is_empty() || a == b {
        return Err(ReconstructionError::Precondition("A and B must be distinct and S nonempty"));
    }
    let comps = g.components_within(&g.vertices().difference(s));
    for side in [a, b] {
        if !comps.contains(side) || &g.nbr(side) != s {
            return Err(ReconstructionError::Precondition("A and B must be full components of G - S"));
        }
    }
    if let Some(witness) = dominating_vertex(g, s) {
        return Ok(Reconstruction::Dominated { witness });
    }

    let t_b = minimal_connected_dominator(g, b, s)?;
    let u = t_b
        .to_vec()
        .into_iter().rev()
        .find(|&w| {
            let rest = t_b.without(w);
            !rest.is_empty() && g.connected(&rest)
        })
        .ok_or(ReconstructionError::Invariant("tB has at least two vertices and a removable one"))?;
    let t_rest = t_b.without(u);
    let v = s
        .intersection(g.neighbors(u))
        .difference(&g.nbr(&t_rest))
        .first()
        .ok_or(ReconstructionError::Invariant("u has a private neighbor in S"))?;

    let nv = g.neighbors(v);
    let s_u = g.neighbors(u).intersection(s);
    let s_v = nv.intersection(s).difference(&s_u);
    let w_a = nv.difference(s).difference(b);
    let w_b = nv.intersection(b);
    let rest_uv = s.difference(&s_u).difference(&s_v);
    let s_a: VertexSet = rest_uv.iter().filter(|&x| g.neighbors(x).intersects(&w_a)).collect();
    let rest_uva = rest_uv.difference(&s_a);
    let s_b: VertexSet = rest_uva.iter().filter(|&x| g.neighbors(x).intersects(&w_b)).collect();
    let s_rest = rest_uva.difference(&s_b);

    // Z_A
    let z_a = greedy_minimal(w_a.to_vec(), |zs| g.dominates(&zs.iter().collect(), &s_a));
    let z_a_private = private_neighbors(g, &z_a, &s_a)
        .ok_or(ReconstructionError::Invariant("every vertex of Z_A has a private neighbor in S_A"))?;

    // 𝒟
    let nv_a = nv.intersection(a);
    let target_d = rest_uv.difference(&s_a);
    let a_comps = g.components_within(&a.difference(nv));
    let chosen = greedy_minimal((0..a_comps.len()).collect(), |idx| {
        let union: VertexSet = idx.iter().flat_map(|&i| a_comps[i].iter()).collect();
        g.dominates(&union, &target_d)
    });
    ensure(
        g.dominates(&chosen.iter().flat_map(|&i| a_comps[i].iter()).collect(), &target_d),
        "the components of A - N(v) dominate S - S_u - S_v - S_A",
    )?;
    let d_union: VertexSet = chosen.iter().flat_map(|&i| a_comps[i].iter()).collect();

    let dist = bfs_distances(g, a, &nv_a);
    let mut d_family = Vec::with_capacity(chosen.len());
    for &i in &chosen {
        let d = &a_comps[i];
        let private = target_d
            .iter()
            .find(|&t| {
                let seen = g.neighbors(t).intersection(&d_union);
                !seen.is_empty() && seen.is_subset(d)
            })
            .ok_or(ReconstructionError::Invariant("every D in 𝒟 privately dominates a vertex"))?;
        let anchor = g
            .neighbors(private)
            .intersection(d)
            .iter()
            .min_by_key(|&x| (dist[x], x))
            .expect("private vertex has a neighbor in D");
        let path_interior = shortest_path_interior(g, a, &dist, anchor);
        let target_z = g.nbr(d).intersection(&s_b);
        let z = greedy_minimal(w_b.to_vec(), |zs| g.dominates(&zs.iter().collect(), &target_z));
        let z_private = private_neighbors(g, &z, &target_z)
            .ok_or(ReconstructionError::Invariant("every vertex of Z_D has a private neighbor"))?;
        d_family.push(DComponent { vertices: d.clone(), private, anchor, path_interior, z, z_private });
    }

    let mut z: VertexSet = z_a.iter().collect();
    z.insert(u);
    for dc in &d_family {
        z.extend(dc.z.iter().copied());
    }
    let q: VertexSet = z.iter().flat_map(|x| g.neighbors(x).intersection(s).to_vec()).collect();

    let s_prime = s.without(v).union(&w_b);
    let a0 = a.first().expect("A nonempty");
    let b0_seed = t_rest.first().expect("tB - u nonempty");
    let s_double_prime = minimal_uv_separator_within(g, a0, b0_seed, &s_prime)
        .map_err(|_| ReconstructionError::Invariant("S' separates A ∪ {v} from tB - u"))?;
    let r = nv.intersection(&s_double_prime);
    let s0 = s.difference(&q).difference(&r);

    let g0 = g.vertices().difference(&q).difference(&r);
    let rest0 = g0.difference(&s0);
    let b0 = g.component_of(b0_seed, &rest0);

    let cert = ReconstructionCertificate {
        separator: s.clone(),
        a: a.clone(),
        b: b.clone(),
        t_b,
        u,
        v,
        s_u,
        s_v,
        s_a,
        s_b,
        z_a,
        z_a_private,
        d_family,
        z,
        q,
        s_prime,
        s_double_prime,
        r,
        s0,
        b0,
    };
    check_invariants(g, &cert, &s_rest)?;
    Ok(Reconstruction::Certified(Box::new(cert)))
}

/// BFS distances inside `G[within]` from `sources`; unreachable is `usize::MAX`.
fn bfs_distances(g: &Graph, within: &VertexSet, sources: &VertexSet) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    let mut frontier = sources.intersection(within);
    let mut seen = frontier.clone();
    let mut d = 0;
    while !frontier.is_empty() {
        for x in &frontier {
            dist[x] = d;
        }
        let mut next = VertexSet::new();
        for x in &frontier {
            next.union_with(g.neighbors(x));
        }
        next.intersect_with(within);
        next.difference_with(&seen);
        seen.union_with(&next);
        frontier = next;
        d += 1;
    }
    dist
}

/// Walks from `from` down the distance layers (lowest index first) and
/// returns the vertices strictly between `from` and the source layer.
fn shortest_path_interior(g: &Graph, within: &VertexSet, dist: &[usize], from: usize) -> VertexSet {
    let mut interior = VertexSet::new();
    let mut cur = from;
    while dist[cur] > 0 {
        let next = g
            .neighbors(cur)
            .iter()
            .find(|&w| within.contains(w) && dist[w] + 1 == dist[cur])
            .expect("BFS layers are consecutive");
        if dist[next] > 0 {
            interior.insert(next);
        }
        cur = next;
    }
    interior
}

fn check_invariants(g: &Graph, c: &ReconstructionCertificate, s_rest: &VertexSet) -> Result<()> {
    let s = &c.separator;
    let t_rest = c.t_b.without(c.u);
    ensure(c.t_b.is_subset(&c.b) && g.connected(&c.t_b), "tB is a connected subset of B")?;
    ensure(g.dominates(&c.t_b, s), "N(tB) contains S")?;
    ensure(g.connected(&t_rest), "tB - u is connected")?;
    ensure(
        s.contains(c.v) && g.has_edge(c.u, c.v) && !g.neighbors(c.v).intersects(&t_rest),
        "v is a private neighbor of u in S",
    )?;
    let parts = [&c.s_u, &c.s_v, &c.s_a, &c.s_b];
    for (i, p) in parts.iter().enumerate() {
        ensure(p.is_subset(s), "S_u, S_v, S_A, S_B are subsets of S")?;
        for o in &parts[i + 1..] {
            ensure(p.is_disjoint(o), "S_u, S_v, S_A, S_B are pairwise disjoint")?;
        }
    }
    ensure(c.z_a.iter().all(|&z| !s.contains(z) && !c.b.contains(z)), "Z_A lies in N(v) - S - B")?;
    ensure(
        s_rest.is_subset(s) && s_rest.is_disjoint(&c.s_u.union(&c.s_v).union(&c.s_a).union(&c.s_b)),
        "the remainder of S is disjoint from S_u ∪ S_v ∪ S_A ∪ S_B",
    )?;
    let y_all: VertexSet = c.d_family.iter().map(|d| d.private).collect();
    for d in &c.d_family {
        ensure(d.path_interior.is_subset(&d.vertices), "P_D lies inside D")?;
        ensure(g.anti_adjacent(&d.path_interior, &y_all), "P_D is anti-adjacent to every y_D")?;
    }
    ensure(
        c.s_u.union(&c.s_a).union(&c.s_b).is_subset(&c.q),
        "Q contains S_u ∪ S_A ∪ S_B",
    )?;
    let a0 = c.a.first().unwrap();
    let b0 = t_rest.first().unwrap();
    ensure(separates(g, a0, b0, &c.s_prime), "S' separates A ∪ {v} from tB - u")?;
    ensure(c.s_double_prime.is_subset(&c.s_prime), "S'' ⊆ S'")?;
    let sep_side = g.component_of(a0, &g.vertices().difference(&c.s_double_prime));
    ensure(
        c.a.with(c.v).is_subset(&sep_side) && sep_side.is_disjoint(&t_rest),
        "S'' separates A ∪ {v} from tB - u",
    )?;
    for x in &c.s_double_prime {
        ensure(!separates(g, a0, b0, &c.s_double_prime.without(x)), "S'' is inclusion-minimal")?;
    }
    ensure(c.s_v.is_subset(&c.r), "R contains S_v")?;
    ensure(
        c.s0.is_subset(s) && c.s0.is_disjoint(&c.s_u.union(&c.s_v).union(&c.s_a).union(&c.s_b)),
        "S0 ⊆ S - S_u - S_v - S_A - S_B",
    )?;
    let g0 = c.reduced_vertices(g);
    let rest0 = g0.difference(&c.s0);
    let comps0 = g.components_within(&rest0);
    ensure(comps0.contains(&c.a), "A is a component of G0 - S0")?;
    ensure(g.nbr(&c.a).intersection(&g0) == c.s0, "A is full to S0 in G0")?;
    ensure(t_rest.is_subset(&c.b0) && comps0.contains(&c.b0), "B0 is the component containing tB - u")?;
    ensure(g.nbr(&c.b0).intersection(&g0) == c.s0, "B0 is full to S0 in G0")?;
    Ok(())
}

fn checked(g: &Graph, w: CreatureWitness) -> std::result::Result<Option<CreatureWitness>, CreatureViolation> {
    verify_creature(g, &w).map(|_| Some(w))
}

/// The `|Z_A|`-creature `({v}, tB - u, Z_A, S_{A,Z})`, verified.
pub fn z_a_creature(g: &Graph, c: &ReconstructionCertificate) -> std::result::Result<Option<CreatureWitness>, CreatureViolation> {
    if c.z_a.is_empty() {
        return Ok(None);
    }
    checked(
        g,
        CreatureWitness {
            a: VertexSet::singleton(c.v),
            b: c.t_b.without(c.u),
            x: c.z_a.clone(),
            y: c.z_a_private.clone(),
        },
    )
}

/// The `|𝒟|`-creature built from the anchors and private vertices of `𝒟`, verified.
pub fn family_creature(g: &Graph, c: &ReconstructionCertificate) -> std::result::Result<Option<CreatureWitness>, CreatureViolation> {
    if c.d_family.is_empty() {
        return Ok(None);
    }
    let mut a_part = g.neighbors(c.v).intersection(&c.a).with(c.v);
    for d in &c.d_family {
        a_part.union_with(&d.path_interior);
    }
    checked(
        g,
        CreatureWitness {
            a: a_part,
            b: c.t_b.without(c.u),
            x: c.d_family.iter().map(|d| d.anchor).collect(),
            y: c.d_family.iter().map(|d| d.private).collect(),
        },
    )
}

/// The `|Z_D|`-creature `({v}, D, Z_D, S_{B,Z})` for member `index` of `𝒟`, verified.
pub fn z_d_creature(
    g: &Graph,
    c: &ReconstructionCertificate,
    index: usize,
) -> std::result::Result<Option<CreatureWitness>, CreatureViolation> {
    let Some(d) = c.d_family.get(index) else {
        return Ok(None);
    };
    if d.z.is_empty() {
        return Ok(None);
    }
    checked(
        g,
        CreatureWitness {
            a: VertexSet::singleton(c.v),
            b: d.vertices.clone(),
            x: d.z.clone(),
            y: d.z_private.clone(),
        },
    )
}

/// Follows the induction: certifies `S₀` in `G₀` with the sides `A` and `B₀`,
/// and so on until the separator is empty or dominated. Returns the number
/// of certified levels, or the first failure.
pub fn certificate_chain_depth(g: &Graph, c: &ReconstructionCertificate) -> Result<usize> {
    let mut depth = 1;
    let sub = g.induced_subgraph(&c.reduced_vertices(g)).expect("in range");
    let (mut graph, mut s, mut a, mut b) = (sub.graph.clone(), sub.map_in(&c.s0), sub.map_in(&c.a), sub.map_in(&c.b0));
    loop {
        if s.is_empty() {
            return Ok(depth);
        }
        let full = crate::separators::full_components(&graph, &s);
        ensure(full.contains(&a) && full.contains(&b), "A and B0 are full to S0")?;
        let ms = MinimalSeparator { separator: s.clone(), full_components: full };
        match build_certificate(&graph, &ms, &a, &b)? {
            Reconstruction::Dominated { .. } => return Ok(depth),
            Reconstruction::Certified(next) => {
                let (before, after) = next.zeta_pair(&graph);
                ensure(after < before, "ζ strictly decreases along the chain")?;
                depth += 1;
                let sub = graph.induced_subgraph(&next.reduced_vertices(&graph)).expect("in range");
                s = sub.map_in(&next.s0);
                a = sub.map_in(&next.a);
                b = sub.map_in(&next.b0);
                graph = sub.graph;
            }
        }
    }
}

/// Exponent `L (4 + (k² + 2)(k + 2))` of the separator-count bound for
/// `k`-creature-free graphs with ζ at most `L`.
pub fn bound_exponent(k: usize, zeta_max: usize) -> usize {
    zeta_max * (4 + (k * k + 2) * (k + 2))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ReconstructionReport {
    pub n: usize,
    pub separators: usize,
    pub dominated: usize,
    /// Dominated separators missing from the trace family of their witness.
    pub dominated_trace_failures: usize,
    /// Separators with at least one certificate.
    pub certified: usize,
    /// One certificate per ordered pair of full components.
    pub certificates: usize,
    pub zeta_histogram: BTreeMap<usize, usize>,
    pub max_z: usize,
    pub max_z_a: usize,
    pub max_d: usize,
    pub max_z_d: usize,
    pub min_zeta_drop: Option<usize>,
    pub max_zeta_drop: usize,
    pub zeta_violations: usize,
    pub key_collisions: usize,
    pub key_roundtrip_failures: usize,
    pub creatures_built: usize,
    pub creature_failures: usize,
    pub max_chain_depth: usize,
    pub chain_failures: usize,
    pub invariant_failures: Vec<String>,
    /// `|Z| < k²` on every certificate, when `k` was given.
    pub z_below_k_squared: Option<bool>,
    /// Separators with `ζ ≤ L`, when `L` was given.
    pub within_zeta_max: Option<usize>,
    /// Whether that count is at most `n^{L(4 + (k²+2)(k+2))}`, when both were given.
    pub within_bound: Option<bool>,
}

impl ReconstructionReport {
    /// No check failed.
    pub fn is_clean(&self) -> bool {
        self.zeta_violations == 0
            && self.key_collisions == 0
            && self.key_roundtrip_failures == 0
            && self.creature_failures == 0
            && self.chain_failures == 0
            && self.dominated_trace_failures == 0
            && self.invariant_failures.is_empty()
    }
}

/// Enumerates every minimal separator, splits off the dominated ones, and
/// certifies the rest for every ordered pair of full components, checking
/// the ζ decrease, the creature constructions, and key injectivity.
pub fn count_by_reconstruction(g: &Graph, k: Option<usize>, zeta_max: Option<usize>) -> ReconstructionReport {
    let seps = minimal_separators(g);
    let mut rep = ReconstructionReport { n: g.n(), separators: seps.len(), ..Default::default() };
    let mut keys: HashMap<CertificateKey, VertexSet> = HashMap::new();
    let mut traces_cache = HashMap::new();
    let mut within = 0;

    for ms in &seps {
        let zs = zeta(g, &ms.separator).expect("in range").value;
        *rep.zeta_histogram.entry(zs).or_default() += 1;
        if zeta_max.is_some_and(|l| zs <= l) {
            within += 1;
        }

        if let Some(w) = dominating_vertex(g, &ms.separator) {
            rep.dominated += 1;
            let traces = traces_cache.entry(w).or_insert_with(|| separator_traces(g, w, &seps));
            if !traces.contains(&ms.separator) {
                rep.dominated_trace_failures += 1;
            }
            continue;
        }

        let mut any = false;
        for a in &ms.full_components {
            for b in &ms.full_components {
                if a == b {
                    continue;
                }
                let cert = match build_certificate(g, ms, a, b) {
                    Ok(Reconstruction::Certified(c)) => c,
                    Ok(Reconstruction::Dominated { .. }) => {
                        rep.invariant_failures.push(format!("{}: dominated after filtering", ms.separator));
                        continue;
                    }
                    Err(e) => {
                        rep.invariant_failures.push(format!("{}: {e}", ms.separator));
                        continue;
                    }
                };
                any = true;
                rep.certificates += 1;
                record_certificate(g, &cert, zs, &mut rep, &mut keys);
            }
        }
        if any {
            rep.certified += 1;
        }
    }

    if let Some(k) = k {
        rep.z_below_k_squared = Some(rep.certificates == 0 || rep.max_z < k * k);
    }
    if let Some(l) = zeta_max {
        rep.within_zeta_max = Some(within);
        if let Some(k) = k {
            let exp = bound_exponent(k, l) as f64;
            let n = g.n().max(1) as f64;
            rep.within_bound = Some((within as f64).ln() <= exp * n.ln() + 1e-9 || within <= 1);
        }
    }
    rep
}

fn record_certificate(
    g: &Graph,
    cert: &ReconstructionCertificate,
    zeta_s: usize,
    rep: &mut ReconstructionReport,
    keys: &mut HashMap<CertificateKey, VertexSet>,
) {
    let (_, after) = cert.zeta_pair(g);
    if after < zeta_s {
        let drop = zeta_s - after;
        rep.max_zeta_drop = rep.max_zeta_drop.max(drop);
        rep.min_zeta_drop = Some(rep.min_zeta_drop.map_or(drop, |m| m.min(drop)));
    } else {
        rep.zeta_violations += 1;
    }

    let key = cert.key(g);
    if separator_from_key(g, &key).as_ref() != Some(&cert.separator) {
        rep.key_roundtrip_failures += 1;
    }
    match keys.get(&key) {
        Some(prev) if prev != &cert.separator => rep.key_collisions += 1,
        Some(_) => {}
        None => {
            keys.insert(key, cert.separator.clone());
        }
    }

    rep.max_z = rep.max_z.max(cert.z.len());
    rep.max_z_a = rep.max_z_a.max(cert.z_a.len());
    rep.max_d = rep.max_d.max(cert.d_family.len());
    for d in &cert.d_family {
        rep.max_z_d = rep.max_z_d.max(d.z.len());
    }

    let mut outcomes = vec![z_a_creature(g, cert), family_creature(g, cert)];
    outcomes.extend((0..cert.d_family.len()).map(|i| z_d_creature(g, cert, i)));
    for o in outcomes {
        match o {
            Ok(Some(_)) => rep.creatures_built += 1,
            Ok(None) => {}
            Err(_) => rep.creature_failures += 1,
        }
    }

    match certificate_chain_depth(g, cert) {
        Ok(d) if d <= zeta_s => rep.max_chain_depth = rep.max_chain_depth.max(d),
        _ => rep.chain_failures += 1,
    }
}
