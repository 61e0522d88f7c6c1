use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::{SolveResult, SolveStatus};
use crate::budget::{Budget, Outcome};
use crate::drawing::{chords_interleave, BookDrawing};
use crate::graph::{Graph, Vertex};

/// Minimum p-page crossing number by exhaustive search over spine orders
/// (first vertex fixed, reflections skipped) and branch-and-bound page
/// assignment.
pub fn book_crossing_number(g: &Graph, p: usize, budget: &dyn Budget) -> SolveResult<BookDrawing> {
    if p == 0 {
        return SolveResult {
            status: SolveStatus::Infeasible,
            value: None,
            witness: None,
            explored: 0,
            winding_cap_used: None,
        };
    }
    let mut search = BookSearch::new(g, p, budget);
    let timed_out = search.run().is_timeout();
    let (value, spine, pages) = search.best;
    SolveResult {
        status: if timed_out {
            SolveStatus::Timeout
        } else {
            SolveStatus::Optimal
        },
        value: Some(value),
        witness: Some(
            BookDrawing::new(g.clone(), spine, pages, p).expect("search builds valid drawings"),
        ),
        explored: search.explored,
        winding_cap_used: None,
    }
}

/// Whether `g` has a 2-page drawing without crossings.
pub fn is_two_page_embeddable(g: &Graph, budget: &dyn Budget) -> Outcome<bool> {
    two_page_embedding(g, budget).map(|d| d.is_some())
}

/// A crossing-free 2-page drawing of `g`, if one exists.
///
/// Spine orders are grown from vertex 0 (the spine is cyclic for two
/// pages). On each page the edges whose right end is still unplaced must
/// close in stack order, so a prefix is summarised by the placed set and
/// two stacks of target sets, one entry per left endpoint. Each new
/// vertex pops its edges from the tops of both stacks and pushes its
/// remaining edges split between the pages. Dead summaries are remembered.
pub fn two_page_embedding(g: &Graph, budget: &dyn Budget) -> Outcome<Option<BookDrawing>> {
    let n = g.n();
    if n == 0 {
        let d = BookDrawing::new(g.clone(), Vec::new(), Vec::new(), 2).expect("empty drawing");
        return Outcome::Done(Some(d));
    }
    let mut s = TwoPage {
        g,
        adj: g.adjacency(),
        budget,
        placed: vec![false; n],
        order: Vec::new(),
        pages: vec![1; g.m()],
        dead: BTreeSet::new(),
    };
    s.place(0, [Vec::new(), Vec::new()]).map(|found| {
        found.then(|| BookDrawing::new(g.clone(), s.order.clone(), s.pages.clone(), 2).expect("complete spine"))
    })
}

type Stack = Vec<Vec<Vertex>>;

struct TwoPage<'a> {
    g: &'a Graph,
    adj: Vec<Vec<Vertex>>,
    budget: &'a dyn Budget,
    placed: Vec<bool>,
    order: Vec<Vertex>,
    pages: Vec<usize>,
    dead: BTreeSet<Vec<usize>>,
}

impl TwoPage<'_> {
    /// Place `v` next on the spine; true when the spine can be completed.
    fn place(&mut self, v: Vertex, stacks: [Stack; 2]) -> Outcome<bool> {
        let [s0, s1] = stacks;
        let (Some(p0), Some(p1)) = (pop(s0, v), pop(s1, v)) else {
            return Outcome::Done(false);
        };
        let popped = [p0, p1];
        self.placed[v] = true;
        self.order.push(v);
        let out: Vec<Vertex> = self.adj[v].iter().copied().filter(|&w| !self.placed[w]).collect();
        // a page is closed to w when some target already on it must come first
        let before = precedence(&popped, self.g.n());
        let blocked: Vec<[bool; 2]> = out
            .iter()
            .map(|&w| [0, 1].map(|p| popped[p].iter().flatten().any(|&y| y != w && before[y][w])))
            .collect();
        for mask in 0..1usize << out.len() {
            if (0..out.len()).any(|i| blocked[i][mask >> i & 1]) {
                continue;
            }
            // the pages are interchangeable while both stacks agree
            if popped[0] == popped[1] && mask & 1 == 1 {
                continue;
            }
            if !self.budget.tick() {
                return Outcome::Timeout;
            }
            let mut next = popped.clone();
            for (page, stack) in next.iter_mut().enumerate() {
                let group: Vec<Vertex> = (0..out.len()).filter(|&i| (mask >> i & 1) == page).map(|i| out[i]).collect();
                if !group.is_empty() {
                    stack.push(group);
                }
            }
            if !orderable(&next, self.g.n()) {
                continue;
            }
            match self.extend(next) {
                Outcome::Done(false) => {}
                done => {
                    if done == Outcome::Done(true) {
                        for (i, &w) in out.iter().enumerate() {
                            self.pages[self.g.edge_id(v, w).expect("edge")] = 1 + (mask >> i & 1);
                        }
                    }
                    return done;
                }
            }
        }
        self.order.pop();
        self.placed[v] = false;
        Outcome::Done(false)
    }

    fn extend(&mut self, stacks: [Stack; 2]) -> Outcome<bool> {
        let n = self.g.n();
        if self.order.len() == n {
            return Outcome::Done(true);
        }
        let key = self.summary(&stacks);
        if self.dead.contains(&key) {
            return Outcome::Done(false);
        }
        for v in 0..n {
            if self.placed[v] {
                continue;
            }
            match self.place(v, stacks.clone()) {
                Outcome::Done(false) => {}
                done => return done,
            }
        }
        self.dead.insert(key);
        Outcome::Done(false)
    }

    /// The placed set and both stacks, with the pages in a fixed order.
    fn summary(&self, stacks: &[Stack; 2]) -> Vec<usize> {
        let flat = |s: &Stack| -> Vec<usize> {
            s.iter().flat_map(|grp| grp.iter().copied().chain([usize::MAX])).collect()
        };
        let (a, b) = (flat(&stacks[0]), flat(&stacks[1]));
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let mut key: Vec<usize> = (0..self.g.n()).filter(|&v| self.placed[v]).collect();
        key.push(usize::MAX - 1);
        key.extend(a);
        key.push(usize::MAX - 1);
        key.extend(b);
        key
    }
}

/// A target above a different one on the same stack must be placed first;
/// false when these requirements form a cycle.
fn orderable(stacks: &[Stack; 2], n: usize) -> bool {
    let mut after: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    let mut indegree = vec![0usize; n];
    for stack in stacks {
        for (i, low) in stack.iter().enumerate() {
            for high in &stack[i + 1..] {
                for &y in low {
                    for &z in high.iter().filter(|&&z| z != y) {
                        after[z].push(y);
                        indegree[y] += 1;
                    }
                }
            }
        }
    }
    let mut ready: Vec<Vertex> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut seen = 0;
    while let Some(z) = ready.pop() {
        seen += 1;
        for &y in &after[z] {
            indegree[y] -= 1;
            if indegree[y] == 0 {
                ready.push(y);
            }
        }
    }
    seen == n
}

/// Transitive closure of the placement requirements: `before[z][y]` when
/// `z` has to be placed before `y`.
fn precedence(stacks: &[Stack; 2], n: usize) -> Vec<Vec<bool>> {
    let mut before = vec![vec![false; n]; n];
    for stack in stacks {
        for (i, low) in stack.iter().enumerate() {
            for high in &stack[i + 1..] {
                for &y in low {
                    for &z in high.iter().filter(|&&z| z != y) {
                        before[z][y] = true;
                    }
                }
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if before[i][k] {
                for j in 0..n {
                    if before[k][j] {
                        before[i][j] = true;
                    }
                }
            }
        }
    }
    before
}

/// Close the edges to `v` on one page: every entry above the deepest one
/// holding `v` must hold nothing else.
fn pop(mut stack: Stack, v: Vertex) -> Option<Stack> {
    let Some(k) = stack.iter().position(|grp| grp.contains(&v)) else {
        return Some(stack);
    };
    if stack[k + 1..].iter().any(|grp| grp.iter().any(|&w| w != v)) {
        return None;
    }
    stack.truncate(k + 1);
    stack[k].retain(|&w| w != v);
    if stack[k].is_empty() {
        stack.pop();
    }
    Some(stack)
}

struct BookSearch<'a> {
    g: &'a Graph,
    p: usize,
    budget: &'a dyn Budget,
    adj: Vec<Vec<Vertex>>,
    best: (usize, Vec<Vertex>, Vec<usize>),
    explored: u64,
}

impl<'a> BookSearch<'a> {
    fn new(g: &'a Graph, p: usize, budget: &'a dyn Budget) -> Self {
        let spine: Vec<Vertex> = (0..g.n()).collect();
        let conflicts = conflict_lists(g, &spine);
        let pages = greedy_pages(&conflicts, p);
        let value = cost(&conflicts, &pages);
        Self {
            g,
            p,
            budget,
            adj: g.adjacency(),
            best: (value, spine, pages),
            explored: 0,
        }
    }

    fn run(&mut self) -> Outcome<()> {
        let n = self.g.n();
        if n < 4 || self.best.0 == 0 {
            return Outcome::Done(());
        }
        let mut order = vec![0];
        let mut used = vec![false; n];
        used[0] = true;
        self.extend(&mut order, &mut used, 0)
    }

    /// `partial` counts interleaving pairs among completed edges; it is a
    /// valid lower bound only for one page.
    fn extend(
        &mut self,
        order: &mut Vec<Vertex>,
        used: &mut [bool],
        partial: usize,
    ) -> Outcome<()> {
        self.explored += 1;
        if !self.budget.tick() {
            return Outcome::Timeout;
        }
        let n = self.g.n();
        if order.len() == n {
            return self.leaf(order);
        }
        for v in 1..n {
            if used[v] {
                continue;
            }
            if order.len() == n - 1 && n >= 3 && order[1] > v {
                continue;
            }
            order.push(v);
            used[v] = true;
            let extra = if self.p == 1 {
                self.new_interleavings(order, used)
            } else {
                0
            };
            if partial + extra < self.best.0 {
                if let Outcome::Timeout = self.extend(order, used, partial + extra) {
                    return Outcome::Timeout;
                }
            }
            used[v] = false;
            order.pop();
            if self.best.0 == 0 {
                break;
            }
        }
        Outcome::Done(())
    }

    /// Interleavings between edges completed by the last placed vertex and
    /// all earlier completed edges.
    fn new_interleavings(&self, order: &[Vertex], used: &[bool]) -> usize {
        let v = *order.last().unwrap();
        let mut pos = vec![usize::MAX; self.g.n()];
        for (i, &x) in order.iter().enumerate() {
            pos[x] = i;
        }
        let done: Vec<(usize, usize)> = self
            .g
            .edges()
            .iter()
            .filter(|&&(a, b)| used[a] && used[b] && a != v && b != v)
            .map(|&(a, b)| (pos[a], pos[b]))
            .collect();
        let mut fresh = Vec::new();
        for &w in &self.adj[v] {
            if used[w] {
                fresh.push((pos[v], pos[w]));
            }
        }
        let mut total = 0;
        for (i, &(a, b)) in fresh.iter().enumerate() {
            for &(c, d) in done.iter().chain(&fresh[..i]) {
                total += chords_interleave(a, b, c, d) as usize;
            }
        }
        total
    }

    fn leaf(&mut self, order: &[Vertex]) -> Outcome<()> {
        let conflicts = conflict_lists(self.g, order);
        let found = match assign_pages(
            &conflicts,
            self.p,
            self.best.0,
            self.budget,
            &mut self.explored,
        ) {
            Outcome::Done(r) => r,
            Outcome::Timeout => return Outcome::Timeout,
        };
        if let Some((value, pages)) = found {
            self.best = (value, order.to_vec(), pages);
        }
        Outcome::Done(())
    }
}

fn conflict_lists(g: &Graph, spine: &[Vertex]) -> Vec<Vec<usize>> {
    let mut pos = vec![0; g.n()];
    for (i, &v) in spine.iter().enumerate() {
        pos[v] = i;
    }
    let edges = g.edges();
    let mut out = vec![Vec::new(); edges.len()];
    for i in 0..edges.len() {
        let (a, b) = edges[i];
        for j in i + 1..edges.len() {
            let (c, d) = edges[j];
            if chords_interleave(pos[a], pos[b], pos[c], pos[d]) {
                out[i].push(j);
                out[j].push(i);
            }
        }
    }
    out
}

fn greedy_pages(conflicts: &[Vec<usize>], p: usize) -> Vec<usize> {
    let mut pages = vec![0usize; conflicts.len()];
    for e in 0..conflicts.len() {
        pages[e] = (1..=p)
            .min_by_key(|&q| conflicts[e].iter().filter(|&&f| pages[f] == q).count())
            .unwrap();
    }
    pages
}

fn cost(conflicts: &[Vec<usize>], pages: &[usize]) -> usize {
    conflicts
        .iter()
        .enumerate()
        .map(|(e, list)| {
            list.iter()
                .filter(|&&f| f > e && pages[f] == pages[e])
                .count()
        })
        .sum()
}

/// Page assignment with fewer than `bound` same-page conflicts, if any.
/// Pages are used in order of first appearance, so page permutations are
/// explored once.
fn assign_pages(
    conflicts: &[Vec<usize>],
    p: usize,
    bound: usize,
    budget: &dyn Budget,
    explored: &mut u64,
) -> Outcome<Option<(usize, Vec<usize>)>> {
    let m = conflicts.len();
    let mut order: Vec<usize> = (0..m).filter(|&e| !conflicts[e].is_empty()).collect();
    order.sort_by_key(|&e| (core::cmp::Reverse(conflicts[e].len()), e));
    if p == 1 {
        let pages = vec![1; m];
        let c = cost(conflicts, &pages);
        return Outcome::Done((c < bound).then_some((c, pages)));
    }
    let mut st = PageState {
        conflicts,
        p,
        order,
        page: vec![0; m],
        acc: vec![vec![0; p + 1]; m],
        best: bound,
        found: None,
        budget,
        explored,
    };
    if st.go(0, 0, 0).is_timeout() {
        return Outcome::Timeout;
    }
    Outcome::Done(st.found.map(|mut pages| {
        for q in pages.iter_mut() {
            if *q == 0 {
                *q = 1;
            }
        }
        (st.best, pages)
    }))
}

struct PageState<'a> {
    conflicts: &'a [Vec<usize>],
    p: usize,
    order: Vec<usize>,
    page: Vec<usize>,
    /// `acc[e][q]`: assigned conflicting edges of `e` on page `q`.
    acc: Vec<Vec<usize>>,
    best: usize,
    found: Option<Vec<usize>>,
    budget: &'a dyn Budget,
    explored: &'a mut u64,
}

impl PageState<'_> {
    fn go(&mut self, k: usize, cur: usize, used: usize) -> Outcome<()> {
        *self.explored += 1;
        if !self.budget.tick() {
            return Outcome::Timeout;
        }
        if k == self.order.len() {
            self.best = cur;
            self.found = Some(self.page.clone());
            return Outcome::Done(());
        }
        let lb: usize = cur
            + self.order[k..]
                .iter()
                .map(|&f| (1..=self.p).map(|q| self.acc[f][q]).min().unwrap())
                .sum::<usize>();
        if lb >= self.best {
            return Outcome::Done(());
        }
        let e = self.order[k];
        for q in 1..=self.p.min(used + 1) {
            let add = self.acc[e][q];
            if cur + add >= self.best {
                continue;
            }
            self.page[e] = q;
            for &f in &self.conflicts[e] {
                self.acc[f][q] += 1;
            }
            let r = self.go(k + 1, cur + add, used.max(q));
            for &f in &self.conflicts[e] {
                self.acc[f][q] -= 1;
            }
            self.page[e] = 0;
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
    use crate::budget::{NodeLimit, Unlimited};
    use crate::graph::build_named_graph;

    fn nu(kind: &str, params: &[usize], p: usize) -> usize {
        let g = build_named_graph(kind, params).unwrap();
        let r = book_crossing_number(&g, p, &Unlimited);
        assert_eq!(r.status, SolveStatus::Optimal);
        let w = r.witness.unwrap();
        assert_eq!(w.crossings(), r.value.unwrap());
        r.value.unwrap()
    }

    #[test]
    fn small_values() {
        assert_eq!(nu("complete_bipartite", &[3, 3], 2), 1);
        assert_eq!(nu("complete", &[5], 2), 1);
        assert_eq!(nu("complete", &[4], 1), 1);
        assert_eq!(nu("cycle", &[7], 1), 0);
        assert_eq!(nu("complete", &[5], 3), 0);
    }

    #[test]
    fn two_page_embeddability() {
        let k4 = build_named_graph("complete", &[4]).unwrap();
        assert_eq!(is_two_page_embeddable(&k4, &Unlimited), Outcome::Done(true));
        let k33 = build_named_graph("complete_bipartite", &[3, 3]).unwrap();
        assert_eq!(
            is_two_page_embeddable(&k33, &Unlimited),
            Outcome::Done(false)
        );
    }

    #[test]
    fn timeout_keeps_incumbent() {
        let g = build_named_graph("complete", &[7]).unwrap();
        let r = book_crossing_number(&g, 2, &NodeLimit::new(10));
        assert_eq!(r.status, SolveStatus::Timeout);
        assert_eq!(r.witness.unwrap().crossings(), r.value.unwrap());
    }
}
