//! Simple undirected graphs, named families, and small exact structural
//! queries (longest cycle, Hamiltonicity, 3-connectivity).

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::budget::{Budget, Outcome};

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameters for `{kind}`: {reason}")]
    Params { kind: String, reason: String },
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("parallel edge {0}-{1}")]
    Parallel(Vertex, Vertex),
    #[error("vertex {0} out of range for a graph on {1} vertices")]
    OutOfRange(Vertex, usize),
    #[error("operation needs at least {need} vertices, graph has {have}")]
    TooSmall { need: usize, have: usize },
}

/// Simple undirected graph on the vertex ids `0..n`.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted and deduplicated, so the
/// position of an edge in [`Graph::edges`] is a stable edge id. Equality
/// looks at `(n, edges)` only; component tags are bookkeeping.
#[derive(Debug, Clone, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    components: Option<Vec<usize>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Graph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n {
                return Err(GraphError::OutOfRange(u, n));
            }
            if v >= n {
                return Err(GraphError::OutOfRange(v, n));
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            list.push(if u < v { (u, v) } else { (v, u) });
        }
        list.sort_unstable();
        for w in list.windows(2) {
            if w[0] == w[1] {
                return Err(GraphError::Parallel(w[0].0, w[0].1));
            }
        }
        Ok(Self {
            n,
            edges: list,
            components: None,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            components: None,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Id of the edge `{u, v}`, if present.
    pub fn edge_id(&self, u: Vertex, v: Vertex) -> Option<usize> {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&key).ok()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_id(u, v).is_some()
    }

    /// Component tag of every vertex after [`disjoint_union`].
    pub fn component_tags(&self) -> Option<&[usize]> {
        self.components.as_deref()
    }

    pub fn with_component_tags(mut self, tags: Vec<usize>) -> Self {
        assert_eq!(tags.len(), self.n);
        self.components = Some(tags);
        self
    }

    /// Sorted neighbor lists.
    pub fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    /// Apply the vertex permutation `perm` (old id `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n);
        Graph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
            .expect("a permutation keeps the graph simple")
    }

    /// Connected components as a label per vertex, labels in order of first
    /// appearance.
    pub fn connected_components(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Induced subgraph on `keep` (in the given order), relabelled `0..`.
    pub fn induced(&self, keep: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        Graph::new(keep.len(), edges).expect("induced subgraph of a simple graph")
    }
}

fn params_err(kind: &str, reason: &str) -> GraphError {
    GraphError::Params {
        kind: kind.to_string(),
        reason: reason.to_string(),
    }
}

fn arity(kind: &str, params: &[usize], want: usize) -> Result<(), GraphError> {
    if params.len() != want {
        return Err(params_err(
            kind,
            &alloc::format!("expected {want} parameter(s), got {}", params.len()),
        ));
    }
    Ok(())
}

/// Build one of the named test families.
///
/// | kind | params | graph |
/// |---|---|---|
/// | `complete` | `n` | K_n |
/// | `complete_bipartite` | `a b` | K_{a,b}, parts `0..a` and `a..a+b` |
/// | `cycle` | `n ≥ 3` | C_n |
/// | `path` | `n` | P_n on `n` vertices |
/// | `wheel` | `n ≥ 3` | hub `0` joined to the cycle `1..=n` |
/// | `grid` | `r c` | r×c grid, vertex `i*c + j` |
/// | `empty` | `n` | edgeless |
pub fn build_named_graph(kind: &str, params: &[usize]) -> Result<Graph, GraphError> {
    match kind {
        "complete" | "K" => {
            arity(kind, params, 1)?;
            let n = params[0];
            if n == 0 {
                return Err(params_err(kind, "needs n >= 1"));
            }
            let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::new(n, edges)
        }
        "complete_bipartite" | "bipartite" => {
            arity(kind, params, 2)?;
            let (a, b) = (params[0], params[1]);
            if a == 0 || b == 0 {
                return Err(params_err(kind, "both parts must be nonempty"));
            }
            let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
            Graph::new(a + b, edges)
        }
        "cycle" | "C" => {
            arity(kind, params, 1)?;
            let n = params[0];
            if n < 3 {
                return Err(params_err(kind, "needs n >= 3"));
            }
            Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        "path" | "P" => {
            arity(kind, params, 1)?;
            let n = params[0];
            if n == 0 {
                return Err(params_err(kind, "needs n >= 1"));
            }
            Graph::new(n, (1..n).map(|i| (i - 1, i)))
        }
        "wheel" | "W" => {
            arity(kind, params, 1)?;
            let n = params[0];
            if n < 3 {
                return Err(params_err(kind, "needs n >= 3 rim vertices"));
            }
            let rim = (0..n).map(|i| (1 + i, 1 + (i + 1) % n));
            let spokes = (1..=n).map(|i| (0, i));
            Graph::new(n + 1, rim.chain(spokes))
        }
        "grid" => {
            arity(kind, params, 2)?;
            let (r, c) = (params[0], params[1]);
            if r == 0 || c == 0 {
                return Err(params_err(kind, "needs r, c >= 1"));
            }
            let mut edges = Vec::new();
            for i in 0..r {
                for j in 0..c {
                    let v = i * c + j;
                    if j + 1 < c {
                        edges.push((v, v + 1));
                    }
                    if i + 1 < r {
                        edges.push((v, v + c));
                    }
                }
            }
            Graph::new(r * c, edges)
        }
        "empty" => {
            arity(kind, params, 1)?;
            Ok(Graph::empty(params[0]))
        }
        other => Err(GraphError::UnknownFamily(other.to_string())),
    }
}

/// Disjoint union with running offsets; component tag = index of the part.
pub fn disjoint_union(parts: &[Graph]) -> Graph {
    let mut n = 0;
    let mut edges = Vec::new();
    let mut tags = Vec::new();
    for (i, g) in parts.iter().enumerate() {
        edges.extend(g.edges().iter().map(|&(u, v)| (u + n, v + n)));
        tags.extend(core::iter::repeat(i).take(g.n()));
        n += g.n();
    }
    Graph {
        n,
        edges,
        components: Some(tags),
    }
}

/// Exact length of a longest cycle (0 for forests), by backtracking from
/// each possible minimum vertex with a reachability bound.
pub fn longest_cycle_length(g: &Graph, budget: &dyn Budget) -> Outcome<usize> {
    let adj = g.adjacency();
    let n = g.n();
    let mut best = 0usize;
    let mut on_path = vec![false; n];
    let mut path = Vec::with_capacity(n);
    let mut scratch = vec![false; n];
    for s in 0..n {
        // cycles whose least vertex is s use only vertices >= s
        if n - s <= best {
            break;
        }
        on_path[s] = true;
        path.push(s);
        let r = extend_cycle(
            &adj,
            s,
            &mut on_path,
            &mut path,
            &mut best,
            &mut scratch,
            budget,
        );
        path.pop();
        on_path[s] = false;
        if !r {
            return Outcome::Timeout;
        }
    }
    Outcome::Done(best)
}

fn extend_cycle(
    adj: &[Vec<Vertex>],
    s: Vertex,
    on_path: &mut [bool],
    path: &mut Vec<Vertex>,
    best: &mut usize,
    scratch: &mut [bool],
    budget: &dyn Budget,
) -> bool {
    if !budget.tick() {
        return false;
    }
    let end = *path.last().unwrap();
    if path.len() >= 3 && adj[end].binary_search(&s).is_ok() && path.len() > *best {
        *best = path.len();
    }
    // bound: path plus everything still reachable from the end through free
    // vertices > s
    let reach = reachable_free(adj, s, end, on_path, scratch);
    if path.len() + reach <= *best {
        return true;
    }
    for &w in &adj[end] {
        if w <= s || on_path[w] {
            continue;
        }
        on_path[w] = true;
        path.push(w);
        let ok = extend_cycle(adj, s, on_path, path, best, scratch, budget);
        path.pop();
        on_path[w] = false;
        if !ok {
            return false;
        }
        if *best == adj.len() - s {
            break;
        }
    }
    true
}

fn reachable_free(
    adj: &[Vec<Vertex>],
    s: Vertex,
    from: Vertex,
    on_path: &[bool],
    seen: &mut [bool],
) -> usize {
    let mut stack = vec![from];
    let mut count = 0;
    let mut touched = Vec::new();
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if w > s && !on_path[w] && !seen[w] {
                seen[w] = true;
                touched.push(w);
                count += 1;
                stack.push(w);
            }
        }
    }
    for w in touched {
        seen[w] = false;
    }
    count
}

pub fn is_hamiltonian(g: &Graph, budget: &dyn Budget) -> Outcome<bool> {
    if g.n() < 3 {
        return Outcome::Done(false);
    }
    longest_cycle_length(g, budget).map(|l| l == g.n())
}

/// True iff removing any set of at most two vertices leaves the graph
/// connected. Exhaustive over all vertex pairs.
pub fn is_three_connected(g: &Graph) -> Result<bool, GraphError> {
    let n = g.n();
    if n < 4 {
        return Err(GraphError::TooSmall { need: 4, have: n });
    }
    let adj = g.adjacency();
    let mut removed = vec![false; n];
    if !connected_without(&adj, &removed) {
        return Ok(false);
    }
    for a in 0..n {
        removed[a] = true;
        for b in a + 1..n {
            removed[b] = true;
            let ok = connected_without(&adj, &removed);
            removed[b] = false;
            if !ok {
                return Ok(false);
            }
        }
        removed[a] = false;
    }
    Ok(true)
}

fn connected_without(adj: &[Vec<Vertex>], removed: &[bool]) -> bool {
    let Some(start) = (0..adj.len()).find(|&v| !removed[v]) else {
        return true;
    };
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !removed[w] && !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == removed.iter().filter(|r| !**r).count()
}

/// `3.5 · n^(log₃ 2)`: the Chen–Yu upper bound on the longest cycle of the
/// stacked triangulations.
pub fn chen_yu_bound(n: usize) -> f64 {
    let exponent = libm::log(2.0) / libm::log(3.0);
    3.5 * libm::pow(n as f64, exponent)
}

/// Lexicographic comparison helper for canonical forms.
pub fn cmp_graphs(a: &Graph, b: &Graph) -> Ordering {
    (a.n, &a.edges).cmp(&(b.n, &b.edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::{NodeLimit, Unlimited};

    fn named(kind: &str, p: &[usize]) -> Graph {
        build_named_graph(kind, p).unwrap()
    }

    #[test]
    fn family_sizes() {
        assert_eq!(named("complete", &[5]).m(), 10);
        let k33 = named("complete_bipartite", &[3, 3]);
        assert_eq!(k33.m(), 9);
        assert!(k33.edges().iter().all(|&(u, v)| u < 3 && v >= 3));
        assert_eq!(
            named("cycle", &[4]).edges(),
            &[(0, 1), (0, 3), (1, 2), (2, 3)]
        );
        assert_eq!(named("wheel", &[5]).m(), 10);
        assert_eq!(named("grid", &[2, 3]).m(), 7);
    }

    #[test]
    fn family_errors() {
        assert!(matches!(
            build_named_graph("petersen", &[]),
            Err(GraphError::UnknownFamily(_))
        ));
        assert!(matches!(
            build_named_graph("complete", &[3, 4]),
            Err(GraphError::Params { .. })
        ));
        assert!(build_named_graph("complete", &[0]).is_err());
        assert!(build_named_graph("cycle", &[2]).is_err());
    }

    #[test]
    fn new_rejects_bad_edges() {
        assert_eq!(Graph::new(3, [(1, 1)]), Err(GraphError::Loop(1)));
        assert_eq!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(GraphError::Parallel(0, 1))
        );
        assert_eq!(Graph::new(3, [(0, 3)]), Err(GraphError::OutOfRange(3, 3)));
    }

    #[test]
    fn union_offsets() {
        let k4 = named("complete", &[4]);
        let u = disjoint_union(&[k4.clone(), k4.clone()]);
        assert_eq!((u.n(), u.m()), (8, 12));
        assert_eq!(u.component_tags().unwrap(), &[0, 0, 0, 0, 1, 1, 1, 1]);
        let c3 = named("cycle", &[3]);
        assert_eq!(disjoint_union(&[c3.clone()]), c3);
        let k33 = named("complete_bipartite", &[3, 3]);
        let u = disjoint_union(&[k4, k33.clone(), k33]);
        assert_eq!((u.n(), u.m()), (16, 24));
    }

    #[test]
    fn longest_cycles_small() {
        let b = Unlimited;
        assert_eq!(
            longest_cycle_length(&named("complete", &[4]), &b),
            Outcome::Done(4)
        );
        assert_eq!(
            longest_cycle_length(&named("cycle", &[6]), &b),
            Outcome::Done(6)
        );
        assert_eq!(
            longest_cycle_length(&named("path", &[6]), &b),
            Outcome::Done(0)
        );
        assert_eq!(
            longest_cycle_length(&named("complete_bipartite", &[2, 4]), &b),
            Outcome::Done(4)
        );
    }

    #[test]
    fn longest_cycle_times_out() {
        let g = named("complete", &[12]);
        assert_eq!(
            longest_cycle_length(&g, &NodeLimit::new(5)),
            Outcome::Timeout
        );
    }

    #[test]
    fn three_connectivity() {
        assert_eq!(is_three_connected(&named("complete", &[4])), Ok(true));
        assert_eq!(is_three_connected(&named("cycle", &[5])), Ok(false));
        assert_eq!(is_three_connected(&named("wheel", &[5])), Ok(true));
        assert!(is_three_connected(&named("complete", &[3])).is_err());
    }

    #[test]
    fn chen_yu_values() {
        assert!((chen_yu_bound(1) - 3.5).abs() < 1e-12);
        assert!((chen_yu_bound(16) - 20.13).abs() < 0.01);
        assert!((chen_yu_bound(43) - 37.6).abs() < 0.05);
        assert!(chen_yu_bound(43) < 43.0);
        // t = 2 threshold sits near 29.9
        assert!(chen_yu_bound(29) >= 29.0);
        assert!(chen_yu_bound(30) < 30.0);
        assert!(chen_yu_bound(31) < 31.0);
    }
}
