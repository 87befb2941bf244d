//! Minimal separators: predicates, minimalization, enumeration, and traces.
//!
//! The empty set is never reported as a minimal separator, even for
//! disconnected graphs where it would formally qualify.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// A minimal separator together with every component of `G - S` that is
/// full to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalSeparator {
    pub separator: VertexSet,
    pub full_components: Vec<VertexSet>,
}

impl MinimalSeparator {
    /// Re-derives the certificate from scratch: every listed component is a
    /// component of `G - S` with neighborhood exactly `S`, and there are at
    /// least two of them.
    pub fn verify(&self, g: &Graph) -> bool {
        if self.separator.is_empty() || self.full_components.len() < 2 {
            return false;
        }
        let comps = match g.components(&self.separator) {
            Ok(c) => c,
            Err(_) => return false,
        };
        self.full_components
            .iter()
            .all(|c| comps.contains(c) && g.nbr(c) == self.separator)
    }
}

/// Components of `G - S` whose neighborhood is exactly `S`.
pub fn full_components(g: &Graph, s: &VertexSet) -> Vec<VertexSet> {
    g.components_within(&g.vertices().difference(s))
        .into_iter()
        .filter(|c| &g.nbr(c) == s)
        .collect()
}

/// Returns the certificate if `S` is a (nonempty) minimal separator.
pub fn is_minimal_separator(g: &Graph, s: &VertexSet) -> Option<MinimalSeparator> {
    if s.is_empty() || g.check_set(s).is_err() {
        return None;
    }
    let full = full_components(g, s);
    (full.len() >= 2).then(|| MinimalSeparator { separator: s.clone(), full_components: full })
}

/// An inclusion-minimal `u`-`v` separator contained in `S`.
///
/// Trims `S` to the neighborhood of `u`'s side, then trims the result to the
/// neighborhood of `v`'s side. Both sides end up full, which makes the
/// result minimal.
pub fn minimal_uv_separator_within(g: &Graph, u: usize, v: usize, s: &VertexSet) -> Result<VertexSet> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    g.check_set(s)?;
    if s.contains(u) || s.contains(v) {
        return Err(Error::InvalidParameter(format!("{u} and {v} must lie outside the separator")));
    }
    let rest = g.vertices().difference(s);
    let side_u = g.component_of(u, &rest);
    if side_u.contains(v) {
        return Err(Error::NotSeparating(u, v));
    }
    let trimmed = g.nbr(&side_u);
    let side_v = g.component_of(v, &g.vertices().difference(&trimmed));
    Ok(g.nbr(&side_v))
}

/// Whether `S` separates `u` from `v`.
pub fn separates(g: &Graph, u: usize, v: usize, s: &VertexSet) -> bool {
    !s.contains(u) && !s.contains(v) && !g.component_of(u, &g.vertices().difference(s)).contains(v)
}

/// Streams every minimal separator exactly once, in a deterministic order.
///
/// Seeds come from the components of `G - N[x]` for each vertex `x`, taken
/// lazily in vertex order; each emitted separator `S` is expanded through the
/// components of `G - (S ∪ N(x))` for `x ∈ S`.
pub struct SeparatorEnumerator<'g> {
    g: &'g Graph,
    seen: HashSet<VertexSet>,
    queue: VecDeque<VertexSet>,
    next_seed: usize,
}

impl<'g> SeparatorEnumerator<'g> {
    pub fn new(g: &'g Graph) -> Self {
        SeparatorEnumerator { g, seen: HashSet::new(), queue: VecDeque::new(), next_seed: 0 }
    }

    fn offer_components_of(&mut self, removed: &VertexSet) {
        let rest = self.g.vertices().difference(removed);
        for c in self.g.components_within(&rest) {
            let s = self.g.nbr(&c);
            if !s.is_empty() && self.seen.insert(s.clone()) {
                self.queue.push_back(s);
            }
        }
    }
}

impl Iterator for SeparatorEnumerator<'_> {
    type Item = MinimalSeparator;

    fn next(&mut self) -> Option<MinimalSeparator> {
        loop {
            if let Some(s) = self.queue.pop_front() {
                for x in &s {
                    let removed = s.union(self.g.neighbors(x));
                    self.offer_components_of(&removed);
                }
                let full = full_components(self.g, &s);
                debug_assert!(full.len() >= 2, "{s} is not a minimal separator");
                return Some(MinimalSeparator { separator: s, full_components: full });
            }
            if self.next_seed >= self.g.n() {
                return None;
            }
            let x = self.next_seed;
            self.next_seed += 1;
            let closed = self.g.closed_nbr(x);
            self.offer_components_of(&closed);
        }
    }
}

pub fn enumerate_minimal_separators(g: &Graph) -> SeparatorEnumerator<'_> {
    SeparatorEnumerator::new(g)
}

/// All minimal separators, sorted lexicographically by vertex list.
pub fn minimal_separators(g: &Graph) -> Vec<MinimalSeparator> {
    let mut all: Vec<_> = enumerate_minimal_separators(g).collect();
    all.sort_by(|a, b| a.separator.cmp(&b.separator));
    all
}

pub const BRUTE_FORCE_LIMIT: usize = 20;

/// Exhaustive scan over every nonempty vertex subset. Sorted lexicographically.
pub fn brute_force_separators(g: &Graph) -> Result<Vec<MinimalSeparator>> {
    let n = g.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge { what: "graph", size: n, limit: BRUTE_FORCE_LIMIT });
    }
    let mut out: Vec<_> = (1u64..1 << n)
        .filter_map(|mask| is_minimal_separator(g, &VertexSet::from_low_word(mask)))
        .collect();
    out.sort_by(|a, b| a.separator.cmp(&b.separator));
    Ok(out)
}

/// The trace family `{ N(v) ∩ S : v ∉ S }` over the given separators.
pub fn separator_traces<'a, I>(g: &Graph, v: usize, seps: I) -> BTreeSet<VertexSet>
where
    I: IntoIterator<Item = &'a MinimalSeparator>,
{
    seps.into_iter()
        .filter(|ms| !ms.separator.contains(v))
        .map(|ms| g.neighbors(v).intersection(&ms.separator))
        .collect()
}

/// `n^(k+1)`, saturating.
pub fn trace_bound(n: usize, k: u32) -> u128 {
    (n as u128).checked_pow(k + 1).unwrap_or(u128::MAX)
}
