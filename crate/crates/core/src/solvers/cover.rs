use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::budget::{Budget, Outcome};
use crate::map::{check_plane_map, trace_faces, MapViolation, RotationMap};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoverError {
    #[error("map is not a plane triangulation without crossings or blue segments")]
    NotTriangulation,
    #[error("map is not a plane map: {0}")]
    Map(MapViolation),
    #[error("cover search supports at most 64 vertices, map has {0}")]
    TooLarge(usize),
}

/// Necessary condition for a t-curve embedding of a plane triangulation:
/// the vertices split into at most `t` parts, each a single vertex, two
/// adjacent vertices, or the vertex set of a cycle. In a triangulation two
/// vertices share a face exactly when they are adjacent, so these are the
/// parts a curve can visit.
///
/// `false` proves that no t-curve embedding exists; `true` proves nothing.
pub fn curve_cover_filter(
    map: &RotationMap,
    t: usize,
    budget: &dyn Budget,
) -> Result<Outcome<bool>, CoverError> {
    let adj = triangulation_adjacency(map)?;
    let n = adj.len();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut s = CoverSearch::new(adj, budget);
    Ok(s.feasible(full, t))
}

/// Neighbor masks of a crossing-free triangulation.
pub(crate) fn triangulation_adjacency(map: &RotationMap) -> Result<Vec<u64>, CoverError> {
    check_plane_map(map).map_err(CoverError::Map)?;
    if map.crossing_count() > 0 || map.segments().iter().any(|s| s.label.is_blue()) {
        return Err(CoverError::NotTriangulation);
    }
    let faces = trace_faces(map).map_err(CoverError::Map)?;
    if faces.iter().any(|f| f.len() != 3) {
        return Err(CoverError::NotTriangulation);
    }
    let n = map.node_count();
    if n > 64 {
        return Err(CoverError::TooLarge(n));
    }
    let mut adj = vec![0u64; n];
    for s in map.segments() {
        adj[s.a] |= 1 << s.b;
        adj[s.b] |= 1 << s.a;
    }
    Ok(adj)
}

/// Set-level cover search over a graph given by neighbor masks: parts are
/// single vertices, adjacent pairs, or vertex sets of cycles.
pub(crate) struct CoverSearch<'a> {
    adj: Vec<u64>,
    budget: &'a dyn Budget,
    cyclable: BTreeMap<u64, bool>,
    feasible: BTreeMap<(u64, usize), bool>,
}

impl<'a> CoverSearch<'a> {
    pub(crate) fn new(adj: Vec<u64>, budget: &'a dyn Budget) -> Self {
        Self {
            adj,
            budget,
            cyclable: BTreeMap::new(),
            feasible: BTreeMap::new(),
        }
    }

    /// Whether `rem` splits into at most `left` parts.
    pub(crate) fn feasible(&mut self, rem: u64, left: usize) -> Outcome<bool> {
        if rem == 0 {
            return Outcome::Done(true);
        }
        if left == 0 {
            return Outcome::Done(false);
        }
        if left == 1 {
            return self.is_cyclable(rem);
        }
        if let Some(&r) = self.feasible.get(&(rem, left)) {
            return Outcome::Done(r);
        }
        if !self.budget.tick() {
            return Outcome::Timeout;
        }
        let v = rem.trailing_zeros() as usize;
        let candidates = match self.candidates(v, rem) {
            Outcome::Done(c) => c,
            Outcome::Timeout => return Outcome::Timeout,
        };
        let mut r = false;
        for part in candidates {
            match self.feasible(rem & !part, left - 1) {
                Outcome::Done(true) => {
                    r = true;
                    break;
                }
                Outcome::Done(false) => {}
                Outcome::Timeout => return Outcome::Timeout,
            }
        }
        self.feasible.insert((rem, left), r);
        Outcome::Done(r)
    }

    /// Parts containing `v` inside `rem`: cycle sets by decreasing size,
    /// then adjacent pairs, then `{v}`.
    pub(crate) fn candidates(&self, v: usize, rem: u64) -> Outcome<Vec<u64>> {
        let mut out: Vec<u64> = match self.cycle_sets(v, rem) {
            Outcome::Done(c) => c.into_iter().collect(),
            Outcome::Timeout => return Outcome::Timeout,
        };
        out.sort_by_key(|&m| (core::cmp::Reverse(m.count_ones()), m));
        let mut w = self.adj[v] & rem;
        while w != 0 {
            let x = w.trailing_zeros();
            out.push((1u64 << v) | (1u64 << x));
            w &= w - 1;
        }
        out.push(1u64 << v);
        Outcome::Done(out)
    }

    /// Vertex sets (of size at least 3) of cycles through `v` inside `within`.
    fn cycle_sets(&self, v: usize, within: u64) -> Outcome<BTreeSet<u64>> {
        let mut seen = BTreeSet::new();
        let mut out = BTreeSet::new();
        let mut stack = vec![(1u64 << v, v)];
        while let Some((mask, end)) = stack.pop() {
            if !self.budget.tick() {
                return Outcome::Timeout;
            }
            if mask.count_ones() >= 3 && self.adj[end] >> v & 1 == 1 {
                out.insert(mask);
            }
            let mut next = self.adj[end] & within & !mask;
            while next != 0 {
                let x = next.trailing_zeros() as usize;
                next &= next - 1;
                let state = (mask | 1 << x, x);
                if seen.insert(state) {
                    stack.push(state);
                }
            }
        }
        Outcome::Done(out)
    }

    /// Whether `set` is one vertex, two adjacent vertices, or spans a cycle.
    pub(crate) fn is_cyclable(&mut self, set: u64) -> Outcome<bool> {
        match set.count_ones() {
            0 => return Outcome::Done(false),
            1 => return Outcome::Done(true),
            2 => {
                let v = set.trailing_zeros() as usize;
                return Outcome::Done(self.adj[v] & set != 0);
            }
            _ => {}
        }
        if let Some(&r) = self.cyclable.get(&set) {
            return Outcome::Done(r);
        }
        let mut bits = set;
        while bits != 0 {
            let x = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if (self.adj[x] & set).count_ones() < 2 {
                self.cyclable.insert(set, false);
                return Outcome::Done(false);
            }
        }
        let v = set.trailing_zeros() as usize;
        let r = match self.cycle_sets(v, set) {
            Outcome::Done(sets) => sets.contains(&set),
            Outcome::Timeout => return Outcome::Timeout,
        };
        self.cyclable.insert(set, r);
        Outcome::Done(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Unlimited;
    use crate::graph::build_named_graph;

    fn k4() -> RotationMap {
        let g = build_named_graph("complete", &[4]).unwrap();
        RotationMap::from_rotation_lists(
            &g,
            &[vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]],
        )
        .unwrap()
    }

    #[test]
    fn k4_has_a_single_cycle_cover() {
        assert_eq!(
            curve_cover_filter(&k4(), 1, &Unlimited),
            Ok(Outcome::Done(true))
        );
        assert_eq!(
            curve_cover_filter(&k4(), 0, &Unlimited),
            Ok(Outcome::Done(false))
        );
    }

    #[test]
    fn rejects_non_triangulations() {
        let g = build_named_graph("cycle", &[4]).unwrap();
        let m =
            RotationMap::from_rotation_lists(&g, &[vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]])
                .unwrap();
        assert_eq!(
            curve_cover_filter(&m, 1, &Unlimited),
            Err(CoverError::NotTriangulation)
        );
    }
}
