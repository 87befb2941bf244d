//! The ζ invariant: the largest independent `I ⊆ S` such that no vertex
//! outside `S` has two neighbors in `I`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaCertificate {
    pub set: VertexSet,
    pub witness: VertexSet,
    pub value: usize,
}

impl ZetaCertificate {
    /// Checks the two defining conditions of the witness against `g`.
    /// Says nothing about maximality.
    pub fn is_feasible(&self, g: &Graph) -> bool {
        self.witness.len() == self.value && is_zeta_feasible(g, &self.set, &self.witness)
    }
}

/// `I ⊆ S`, `I` independent, and every vertex outside `S` sees at most one member of `I`.
pub fn is_zeta_feasible(g: &Graph, s: &VertexSet, i: &VertexSet) -> bool {
    if !i.is_subset(s) || !g.is_independent(i) {
        return false;
    }
    (0..g.n())
        .filter(|v| !s.contains(*v))
        .all(|v| g.neighbors(v).intersection_len(i) <= 1)
}

/// Exact ζ with a witness.
///
/// Two members of `S` conflict when they are adjacent or share a neighbor
/// outside `S`; ζ is then a maximum independent set of the conflict graph,
/// found by include-first branch and bound in ascending vertex order. The
/// first maximum found is the lexicographically smallest one.
pub fn zeta(g: &Graph, s: &VertexSet) -> Result<ZetaCertificate> {
    g.check_set(s)?;
    let members = s.to_vec();
    let m = members.len();
    let mut conflicts = vec![VertexSet::new(); m];
    for i in 0..m {
        for j in i + 1..m {
            let (a, b) = (members[i], members[j]);
            let shared_outside = g
                .neighbors(a)
                .intersection(g.neighbors(b))
                .difference(s);
            if g.has_edge(a, b) || !shared_outside.is_empty() {
                conflicts[i].insert(j);
                conflicts[j].insert(i);
            }
        }
    }

    struct Search<'a> {
        conflicts: &'a [VertexSet],
        best: Vec<usize>,
    }

    impl Search<'_> {
        fn go(&mut self, chosen: &mut Vec<usize>, cand: VertexSet) {
            if chosen.len() + cand.len() <= self.best.len() {
                return;
            }
            let Some(pick) = cand.first() else {
                self.best = chosen.clone();
                return;
            };
            chosen.push(pick);
            self.go(chosen, cand.without(pick).difference(&self.conflicts[pick]));
            chosen.pop();
            self.go(chosen, cand.without(pick));
        }
    }

    let mut search = Search { conflicts: &conflicts, best: Vec::new() };
    search.go(&mut Vec::new(), VertexSet::full(m));
    let witness: VertexSet = search.best.iter().map(|&i| members[i]).collect();
    Ok(ZetaCertificate { set: s.clone(), value: witness.len(), witness })
}

pub const ZETA_BRUTE_LIMIT: usize = 20;

/// Reference value by scanning every subset of `S` against the definition.
pub fn zeta_brute(g: &Graph, s: &VertexSet) -> Result<usize> {
    g.check_set(s)?;
    let members = s.to_vec();
    if members.len() > ZETA_BRUTE_LIMIT {
        return Err(Error::TooLarge { what: "set", size: members.len(), limit: ZETA_BRUTE_LIMIT });
    }
    let outside: Vec<usize> = (0..g.n()).filter(|v| !s.contains(*v)).collect();
    let mut best = 0;
    for mask in 0u32..1 << members.len() {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let i: Vec<usize> = (0..members.len()).filter(|b| mask >> b & 1 == 1).map(|b| members[b]).collect();
        let independent = i.iter().all(|&a| i.iter().all(|&b| !g.has_edge(a, b)));
        let private = outside
            .iter()
            .all(|&v| i.iter().filter(|&&x| g.has_edge(v, x)).count() <= 1);
        if independent && private {
            best = size;
        }
    }
    Ok(best)
}
