use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use super::{SolveResult, SolveStatus};
use crate::budget::{Budget, Outcome};
use crate::drawing::strip::{strip_pair_crossings, strip_self_crossings, StripLift, StripPoint};
use crate::drawing::{chords_interleave, CylindricalDrawing, Route};
use crate::graph::{Graph, Vertex};

/// Result of one root branch: the best drawing of that branch with value at
/// most the shared bound, if any.
pub type BranchOutcome = Outcome<Option<(usize, CylindricalDrawing)>>;

/// Strategy for running independent root branches. [`Sequential`] runs
/// them in order; a threaded runner must return results in branch order.
pub trait BranchRunner {
    fn map(
        &self,
        count: usize,
        work: &(dyn Fn(usize) -> BranchOutcome + Sync),
    ) -> Vec<BranchOutcome>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl BranchRunner for Sequential {
    fn map(
        &self,
        count: usize,
        work: &(dyn Fn(usize) -> BranchOutcome + Sync),
    ) -> Vec<BranchOutcome> {
        (0..count).map(work).collect()
    }
}

const INVALID: u32 = 1 << 16;

/// Exhaustive search over cylindrical drawings of one graph for a fixed
/// winding cap. Each root branch is one pair of circular vertex orders.
pub struct CylindricalSearch<'a> {
    g: &'a Graph,
    cap: i64,
    layouts: Vec<(Vec<Vertex>, Vec<Vertex>)>,
    explored: AtomicU64,
}

impl<'a> CylindricalSearch<'a> {
    pub fn new(g: &'a Graph, cap: i64) -> Self {
        Self {
            g,
            cap,
            layouts: layouts(g.n()),
            explored: AtomicU64::new(0),
        }
    }

    pub fn branch_count(&self) -> usize {
        self.layouts.len()
    }

    pub fn explored(&self) -> u64 {
        self.explored.load(Ordering::Relaxed)
    }

    /// Best drawing of branch `i` whose value does not exceed `shared`.
    /// Improvements are published to `shared`.
    pub fn solve_branch(
        &self,
        i: usize,
        shared: &AtomicUsize,
        budget: &dyn Budget,
    ) -> BranchOutcome {
        let (inner, outer) = &self.layouts[i];
        let table = OptionTable::new(self.g, inner, outer, self.cap);
        let mut bb = RouteSearch {
            t: &table,
            choice: vec![0; table.edges],
            acc: vec![0; table.total()],
            best: usize::MAX,
            found: None,
            shared,
            budget,
            explored: 0,
        };
        let r = bb.go(0, 0);
        self.explored.fetch_add(bb.explored, Ordering::Relaxed);
        if r.is_timeout() {
            return Outcome::Timeout;
        }
        Outcome::Done(bb.found.map(|choice| {
            let routes = choice
                .iter()
                .enumerate()
                .map(|(e, &o)| table.routes[table.start[e] + o])
                .collect();
            let d = CylindricalDrawing::new(self.g.clone(), inner.clone(), outer.clone(), routes)
                .expect("layouts partition the vertices");
            (bb.best, d)
        }))
    }

    /// Run every branch with pruning against `bound` (inclusive) and keep
    /// the best result, ties going to the lowest branch. The flag reports a
    /// timeout in some branch.
    fn run(
        &self,
        bound: usize,
        runner: &dyn BranchRunner,
        budget: &dyn Budget,
    ) -> (Option<(usize, CylindricalDrawing)>, bool) {
        let shared = AtomicUsize::new(bound);
        let results = runner.map(self.branch_count(), &|i| {
            self.solve_branch(i, &shared, budget)
        });
        let mut best: Option<(usize, CylindricalDrawing)> = None;
        let mut timed_out = false;
        for r in results {
            match r {
                Outcome::Timeout => timed_out = true,
                Outcome::Done(Some((v, d))) => {
                    if best.as_ref().map_or(true, |b| v < b.0) {
                        best = Some((v, d));
                    }
                }
                Outcome::Done(None) => {}
            }
        }
        (best, timed_out)
    }
}

/// Minimum cylindrical crossing number with annulus windings in
/// `[-cap, cap]`, confirmed at `cap + 1`.
pub fn cylindrical_crossing_number(
    g: &Graph,
    cap: i64,
    budget: &dyn Budget,
    runner: &dyn BranchRunner,
) -> SolveResult<CylindricalDrawing> {
    let greedy = greedy_drawing(g);
    let greedy_value = greedy.crossings().expect("disk-only drawings are valid");
    let first = CylindricalSearch::new(g, cap);
    let (found, timed_out) = first.run(greedy_value, runner, budget);
    let (value, witness) = found.unwrap_or((greedy_value, greedy));
    let mut explored = first.explored();
    if timed_out {
        return SolveResult {
            status: SolveStatus::Timeout,
            value: Some(value),
            witness: Some(witness),
            explored,
            winding_cap_used: Some(cap),
        };
    }
    if value == 0 {
        return SolveResult {
            status: SolveStatus::Optimal,
            value: Some(0),
            witness: Some(witness),
            explored,
            winding_cap_used: Some(cap),
        };
    }
    let second = CylindricalSearch::new(g, cap + 1);
    let (better, timed_out) = second.run(value - 1, runner, budget);
    explored += second.explored();
    let (status, value, witness) = match (better, timed_out) {
        (Some((v, d)), _) => (SolveStatus::Unstable, v, d),
        (None, true) => (SolveStatus::Timeout, value, witness),
        (None, false) => (SolveStatus::Optimal, value, witness),
    };
    SolveResult {
        status,
        value: Some(value),
        witness: Some(witness),
        explored,
        winding_cap_used: Some(cap + 1),
    }
}

/// All vertices on the inner circle in id order, every edge a chord.
fn greedy_drawing(g: &Graph) -> CylindricalDrawing {
    CylindricalDrawing::new(
        g.clone(),
        (0..g.n()).collect(),
        Vec::new(),
        vec![Route::InnerDisk; g.m()],
    )
    .expect("identity order")
}

/// Canonical pairs of circular orders: `|inner| ≥ |outer|`, most balanced
/// first, each circle starting at its least vertex, reflections skipped.
fn layouts(n: usize) -> Vec<(Vec<Vertex>, Vec<Vertex>)> {
    let mut out = Vec::new();
    let mut sizes: Vec<usize> = (n.div_ceil(2)..=n).collect();
    sizes.sort_by_key(|&s| 2 * s - n);
    for size in sizes {
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != size {
                continue;
            }
            if 2 * size == n && mask & 1 == 0 {
                continue;
            }
            let inner: Vec<Vertex> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let outer: Vec<Vertex> = (0..n).filter(|&v| mask >> v & 1 == 0).collect();
            for io in circular_orders(&inner) {
                for oo in circular_orders(&outer) {
                    let canonical = if io.len() >= 3 {
                        io[1] < io[io.len() - 1]
                    } else if oo.len() >= 3 {
                        oo[1] < oo[oo.len() - 1]
                    } else {
                        true
                    };
                    if canonical {
                        out.push((io.clone(), oo.clone()));
                    }
                }
            }
        }
    }
    out
}

/// Orders of `set` starting with its first element, in lexicographic order.
fn circular_orders(set: &[Vertex]) -> Vec<Vec<Vertex>> {
    if set.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut cur = vec![set[0]];
    let mut used = vec![false; set.len()];
    used[0] = true;
    fn rec(set: &[Vertex], cur: &mut Vec<Vertex>, used: &mut [bool], out: &mut Vec<Vec<Vertex>>) {
        if cur.len() == set.len() {
            out.push(cur.clone());
            return;
        }
        for i in 1..set.len() {
            if !used[i] {
                used[i] = true;
                cur.push(set[i]);
                rec(set, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(set, &mut cur, &mut used, &mut out);
    out
}

/// Route options per edge and the pairwise crossing table for one layout.
struct OptionTable {
    edges: usize,
    /// Options of edge `e` are `start[e]..start[e + 1]`.
    start: Vec<usize>,
    routes: Vec<Route>,
    /// `cost[a * total + b]` for global option ids; `INVALID` marks adjacent
    /// annulus edges forced to cross.
    cost: Vec<u32>,
    order: Vec<usize>,
}

impl OptionTable {
    fn new(g: &Graph, inner: &[Vertex], outer: &[Vertex], cap: i64) -> Self {
        let n = g.n();
        let mut place = vec![(0u8, 0usize); n];
        for (r, &v) in inner.iter().enumerate() {
            place[v] = (0, r);
        }
        for (r, &v) in outer.iter().enumerate() {
            place[v] = (1, r);
        }
        let point = |v: Vertex| {
            let (level, r) = place[v];
            let len = if level == 0 { inner.len() } else { outer.len() };
            StripPoint::new(r as i64, len as i64, level)
        };
        let edges = g.edges();
        let mut start = vec![0];
        let mut routes = Vec::new();
        let mut lifts: Vec<Option<StripLift>> = Vec::new();
        for &(u, v) in edges {
            let (s, t) = if place[u].0 == 1 && place[v].0 == 0 {
                (v, u)
            } else {
                (u, v)
            };
            let mut opts: Vec<(i64, Route, Option<StripLift>)> = Vec::new();
            if place[u].0 == place[v].0 {
                let disk = if place[u].0 == 0 {
                    Route::InnerDisk
                } else {
                    Route::OuterDisk
                };
                opts.push((-1, disk, None));
            }
            for w in -cap..=cap {
                let lift = StripLift::new(point(s), point(t), w);
                if place[u].0 == place[v].0 && strip_self_crossings(&lift) != 0 {
                    continue;
                }
                let (a, b) = lift.endpoints(0);
                // |span| scaled by the common denominator, for ordering only
                let span = (b.num * a.den - a.num * b.den).abs() * 1000 / (a.den * b.den).max(1);
                opts.push((span, Route::Annulus(w), Some(lift)));
            }
            opts.sort_by_key(|o| o.0);
            for (_, r, l) in opts {
                routes.push(r);
                lifts.push(l);
            }
            start.push(routes.len());
        }
        let total = routes.len();
        let mut owner = vec![0; total];
        for e in 0..edges.len() {
            for o in start[e]..start[e + 1] {
                owner[o] = e;
            }
        }
        let mut cost = vec![0u32; total * total];
        for a in 0..total {
            for b in a + 1..total {
                let (e, f) = (owner[a], owner[b]);
                if e == f {
                    continue;
                }
                let (x, y) = (edges[e], edges[f]);
                let adjacent = x.0 == y.0 || x.0 == y.1 || x.1 == y.0 || x.1 == y.1;
                let c = match (routes[a], routes[b], lifts[a], lifts[b]) {
                    (_, _, Some(la), Some(lb)) => {
                        let k = strip_pair_crossings(&la, &lb) as u32;
                        if adjacent && k > 0 {
                            INVALID
                        } else if adjacent {
                            0
                        } else {
                            k
                        }
                    }
                    (ra, rb, None, None) if ra == rb && !adjacent => {
                        let r = |v: Vertex| place[v].1;
                        chords_interleave(r(x.0), r(x.1), r(y.0), r(y.1)) as u32
                    }
                    _ => 0,
                };
                cost[a * total + b] = c;
                cost[b * total + a] = c;
            }
        }
        // branch on edges with more options late; ties by id
        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.sort_by_key(|&e| (start[e + 1] - start[e], e));
        Self {
            edges: edges.len(),
            start,
            routes,
            cost,
            order,
        }
    }

    fn total(&self) -> usize {
        self.routes.len()
    }
}

struct RouteSearch<'a> {
    t: &'a OptionTable,
    /// Chosen option per edge, relative to its first option.
    choice: Vec<usize>,
    /// Cost of each option against all assigned edges.
    acc: Vec<u32>,
    best: usize,
    found: Option<Vec<usize>>,
    shared: &'a AtomicUsize,
    budget: &'a dyn Budget,
    explored: u64,
}

impl RouteSearch<'_> {
    fn bound(&self) -> usize {
        // prune at or above the local best, strictly above the shared one
        self.best.min(self.shared.load(Ordering::Relaxed) + 1)
    }

    fn go(&mut self, k: usize, cur: usize) -> Outcome<()> {
        self.explored += 1;
        if !self.budget.tick() {
            return Outcome::Timeout;
        }
        let t = self.t;
        if k == t.edges {
            self.best = cur;
            self.found = Some(self.choice.clone());
            self.shared.fetch_min(cur, Ordering::Relaxed);
            return Outcome::Done(());
        }
        let mut lb = cur as u64;
        for &f in &t.order[k..] {
            let m = (t.start[f]..t.start[f + 1])
                .map(|o| self.acc[o])
                .min()
                .unwrap_or(0);
            lb += m as u64;
        }
        if lb >= self.bound() as u64 {
            return Outcome::Done(());
        }
        let e = t.order[k];
        let total = t.total();
        for o in t.start[e]..t.start[e + 1] {
            let add = self.acc[o];
            if add >= INVALID || (cur + add as usize) >= self.bound() {
                continue;
            }
            self.choice[e] = o - t.start[e];
            let row = &t.cost[o * total..(o + 1) * total];
            for &f in &t.order[k + 1..] {
                for p in t.start[f]..t.start[f + 1] {
                    self.acc[p] += row[p];
                }
            }
            let r = self.go(k + 1, cur + add as usize);
            for &f in &t.order[k + 1..] {
                for p in t.start[f]..t.start[f + 1] {
                    self.acc[p] -= row[p];
                }
            }
            if r.is_timeout() {
                return Outcome::Timeout;
            }
            if self.best == 0 {
                break;
            }
        }
        Outcome::Done(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Unlimited;
    use crate::graph::build_named_graph;

    fn cyl(n: usize) -> SolveResult<CylindricalDrawing> {
        let g = build_named_graph("complete", &[n]).unwrap();
        cylindrical_crossing_number(&g, 2, &Unlimited, &Sequential)
    }

    #[test]
    fn small_complete_graphs() {
        for (n, z) in [(3, 0), (4, 0), (5, 1)] {
            let r = cyl(n);
            assert_eq!(r.status, SolveStatus::Optimal, "n={n}");
            assert_eq!(r.value, Some(z), "n={n}");
            assert_eq!(r.witness.unwrap().crossings(), Ok(z));
        }
    }

    #[test]
    fn layouts_are_canonical() {
        // K4: sizes 2+2 first; (4,0) gives 3 circular orders up to reflection
        let l = layouts(4);
        assert!(l.iter().all(|(i, o)| i.len() >= o.len()));
        assert_eq!(l.iter().filter(|(_, o)| o.is_empty()).count(), 3);
        assert_eq!(l[0].0.len(), 2);
    }
}
