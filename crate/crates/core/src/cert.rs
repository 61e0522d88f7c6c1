//! t-curve certificates: a planarized drawing plus blue cycles standing for
//! the clean curves, with the verifier, curve-cover extraction and the
//! co-facial curve merge.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, Vertex};
use crate::map::{
    check_plane_map, seg_of, trace_faces, twin, MapViolation, NodeId, NodeKind, RotationMap, SegId,
    SegLabel,
};

/// Planarized drawing with blue cycles. Vertex nodes are `0..n` and are the
/// graph's vertices; segment labels `Edge(e)` refer to `g.edges()[e]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TCurveCertificate {
    map: RotationMap,
    blue_cycles: Vec<Vec<SegId>>,
    claimed_k: usize,
    t: usize,
}

impl TCurveCertificate {
    pub fn new(map: RotationMap, blue_cycles: Vec<Vec<SegId>>, claimed_k: usize, t: usize) -> Self {
        Self {
            map,
            blue_cycles,
            claimed_k,
            t,
        }
    }

    pub fn map(&self) -> &RotationMap {
        &self.map
    }

    pub fn blue_cycles(&self) -> &[Vec<SegId>] {
        &self.blue_cycles
    }

    pub fn claimed_k(&self) -> usize {
        self.claimed_k
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn crossing_count(&self) -> usize {
        self.map.crossing_count()
    }

    pub fn into_parts(self) -> (RotationMap, Vec<Vec<SegId>>, usize, usize) {
        (self.map, self.blue_cycles, self.claimed_k, self.t)
    }
}

/// Why a certificate was rejected. Every clause of the verifier has its own
/// variant.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Reject {
    #[error("map has {found} vertex nodes (ids must be 0..{expected} and come first)")]
    VertexNodes { expected: usize, found: usize },
    #[error("segment {seg} is labelled with edge {edge}, which the graph does not have")]
    UnknownEdge { seg: SegId, edge: usize },
    #[error("edge {edge} is missing from the map")]
    MissingEdge { edge: usize },
    #[error("edge {edge} does not run between its endpoints")]
    WrongEndpoints { edge: usize },
    #[error("map is not a plane map: {0}")]
    NotPlane(MapViolation),
    #[error("{found} crossings exceed the budget {k}")]
    CrossingBudget { found: usize, k: usize },
    #[error("{found} blue cycles, at most {t} allowed")]
    CurveCount { found: usize, t: usize },
    #[error("blue cycle {cycle} lists segment {seg}, which is not a blue segment")]
    NotBlue { cycle: usize, seg: SegId },
    #[error("blue segment {seg} belongs to no cycle or to several")]
    StrayBlue { seg: SegId },
    #[error("blue cycle {cycle} is not a simple closed walk")]
    NotSimple { cycle: usize },
    #[error("blue cycles {first} and {second} meet at node {node}")]
    CurvesIntersect {
        node: NodeId,
        first: usize,
        second: usize,
    },
    #[error("vertex {vertex} lies on no blue cycle")]
    Uncovered { vertex: Vertex },
    #[error("blue segment {seg} runs through crossing node {node}")]
    BlueCrossing { seg: SegId, node: NodeId },
}

/// Node sequence of a blue cycle, or `None` if the segments do not form a
/// simple closed walk in the listed order.
fn cycle_nodes(map: &RotationMap, segs: &[SegId]) -> Option<Vec<NodeId>> {
    let all = map.segments();
    let first = all[*segs.first()?];
    'orient: for (start, mut at) in [(first.a, first.b), (first.b, first.a)] {
        let mut nodes = vec![start];
        for &s in &segs[1..] {
            let seg = all[s];
            nodes.push(at);
            at = if seg.a == at {
                seg.b
            } else if seg.b == at {
                seg.a
            } else {
                continue 'orient;
            };
        }
        if at != start {
            continue;
        }
        let mut sorted = nodes.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() == nodes.len() {
            return Some(nodes);
        }
    }
    None
}

fn check_projection(g: &Graph, map: &RotationMap) -> Result<(), Reject> {
    let vertices = map
        .nodes()
        .iter()
        .take_while(|k| **k == NodeKind::Vertex)
        .count();
    let total = map
        .nodes()
        .iter()
        .filter(|k| **k == NodeKind::Vertex)
        .count();
    if vertices != g.n() || total != g.n() {
        return Err(Reject::VertexNodes {
            expected: g.n(),
            found: total,
        });
    }
    for (s, seg) in map.segments().iter().enumerate() {
        if let SegLabel::Edge(e) = seg.label {
            if e >= g.m() {
                return Err(Reject::UnknownEdge { seg: s, edge: e });
            }
        }
    }
    let chains = map.edge_chains();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        match chains.get(&e) {
            None => return Err(Reject::MissingEdge { edge: e }),
            Some(None) => return Err(Reject::NotPlane(MapViolation::BrokenChain { edge: e })),
            Some(Some(chain)) => {
                let segs = map.segments();
                let first = segs[chain[0]];
                let last = segs[chain[chain.len() - 1]];
                let starts_at_u = first.a == u || first.b == u;
                let ends_at_v = last.a == v || last.b == v;
                if !starts_at_u || !ends_at_v {
                    return Err(Reject::WrongEndpoints { edge: e });
                }
            }
        }
    }
    Ok(())
}

/// Blue cycle index per node (`usize::MAX` if none), after checking every
/// blue clause.
fn check_blue(g: &Graph, cert: &TCurveCertificate, t: usize) -> Result<Vec<usize>, Reject> {
    let map = &cert.map;
    if cert.blue_cycles.len() > t {
        return Err(Reject::CurveCount {
            found: cert.blue_cycles.len(),
            t,
        });
    }
    let mut seg_use = vec![0usize; map.segments().len()];
    for (c, cycle) in cert.blue_cycles.iter().enumerate() {
        for &s in cycle {
            if s >= seg_use.len() || !map.segments()[s].label.is_blue() {
                return Err(Reject::NotBlue { cycle: c, seg: s });
            }
            seg_use[s] += 1;
        }
    }
    for (s, seg) in map.segments().iter().enumerate() {
        if seg.label.is_blue() && seg_use[s] != 1 {
            return Err(Reject::StrayBlue { seg: s });
        }
    }
    let mut on = vec![usize::MAX; map.node_count()];
    for (c, cycle) in cert.blue_cycles.iter().enumerate() {
        let nodes = cycle_nodes(map, cycle).ok_or(Reject::NotSimple { cycle: c })?;
        for node in nodes {
            if on[node] != usize::MAX {
                return Err(Reject::CurvesIntersect {
                    node,
                    first: on[node],
                    second: c,
                });
            }
            on[node] = c;
        }
    }
    if let Some(vertex) = (0..g.n()).find(|&v| on[v] == usize::MAX) {
        return Err(Reject::Uncovered { vertex });
    }
    Ok(on)
}

/// Check a certificate against `g`, a curve count `t` and a crossing budget
/// `k`. The crossing count is recomputed; `claimed_k` is not trusted.
///
/// At most `t` blue cycles are required; fewer is fine, since an unused
/// curve can always be drawn as a tiny circle in any face.
pub fn verify_certificate(
    g: &Graph,
    cert: &TCurveCertificate,
    t: usize,
    k: usize,
) -> Result<(), Reject> {
    let map = &cert.map;
    check_projection(g, map)?;
    for (s, seg) in map.segments().iter().enumerate() {
        if !seg.label.is_blue() {
            continue;
        }
        for node in [seg.a, seg.b] {
            if map.nodes()[node] == NodeKind::Crossing {
                return Err(Reject::BlueCrossing { seg: s, node });
            }
        }
    }
    check_blue(g, cert, t)?;
    check_plane_map(map).map_err(Reject::NotPlane)?;
    let found = map.crossing_count();
    if found > k {
        return Err(Reject::CrossingBudget { found, k });
    }
    Ok(())
}

/// Graph read off the graph-colored part of a map: vertex nodes become the
/// vertices and each edge label becomes the edge between its chain's ends.
pub fn project_graph(map: &RotationMap) -> Result<Graph, Reject> {
    let n = map
        .nodes()
        .iter()
        .take_while(|k| **k == NodeKind::Vertex)
        .count();
    let mut edges = Vec::new();
    for (e, chain) in map.edge_chains() {
        let chain = chain.ok_or(Reject::NotPlane(MapViolation::BrokenChain { edge: e }))?;
        let segs = map.segments();
        let first = segs[chain[0]];
        let last = segs[chain[chain.len() - 1]];
        let u = if map.nodes()[first.a] == NodeKind::Vertex {
            first.a
        } else {
            first.b
        };
        let v = if map.nodes()[last.b] == NodeKind::Vertex && last.b != u {
            last.b
        } else {
            last.a
        };
        edges.push((e, (u.min(v), u.max(v))));
    }
    let g = Graph::new(n, edges.iter().map(|x| x.1)).map_err(|_| Reject::VertexNodes {
        expected: n,
        found: n,
    })?;
    for (e, uv) in edges {
        if g.edges().get(e) != Some(&uv) {
            return Err(Reject::UnknownEdge { seg: 0, edge: e });
        }
    }
    Ok(g)
}

/// One curve's share of the vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Part {
    Singleton(Vertex),
    Edge(Vertex, Vertex),
    /// Vertices in the curve's cyclic order.
    Cycle(Vec<Vertex>),
}

impl Part {
    pub fn vertices(&self) -> Vec<Vertex> {
        match self {
            Part::Singleton(v) => vec![*v],
            Part::Edge(u, v) => vec![*u, *v],
            Part::Cycle(c) => c.clone(),
        }
    }
}

/// Vertex-disjoint parts covering all vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveCover {
    pub parts: Vec<Part>,
}

impl CurveCover {
    /// Whether the parts are disjoint, well-formed and cover `0..n`.
    pub fn is_valid_for(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        for part in &self.parts {
            let ok = match part {
                Part::Singleton(_) => true,
                Part::Edge(u, v) => u != v,
                Part::Cycle(c) => c.len() >= 3,
            };
            if !ok {
                return false;
            }
            for v in part.vertices() {
                if v >= n || seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// The curve cover of a certificate: one part per blue cycle, in cycle
/// order. The certificate is verified first (against its own projected
/// graph, with no crossing budget).
pub fn extract_curve_cover(cert: &TCurveCertificate) -> Result<CurveCover, Reject> {
    let g = project_graph(&cert.map)?;
    verify_certificate(&g, cert, cert.blue_cycles.len(), usize::MAX)?;
    let parts = cert
        .blue_cycles
        .iter()
        .map(|cycle| {
            let nodes = cycle_nodes(&cert.map, cycle).expect("verified");
            match nodes.len() {
                1 => Part::Singleton(nodes[0]),
                2 => Part::Edge(nodes[0].min(nodes[1]), nodes[0].max(nodes[1])),
                _ => Part::Cycle(nodes),
            }
        })
        .collect();
    Ok(CurveCover { parts })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MergeError {
    #[error("face {0} does not exist")]
    UnknownFace(usize),
    #[error("face {face} is touched by {curves} blue cycle(s); at least 2 are needed")]
    NotApplicable { face: usize, curves: usize },
    #[error("map is not structurally valid: {0}")]
    Map(MapViolation),
}

/// Replace all blue cycles entering face `face` (numbered as by
/// [`trace_faces`] on the certificate's map) by a single cycle routed
/// through that face.
///
/// Along the face walk, let `x_i → y_i` be the first blue dart of the i-th
/// distinct cycle met. Each such segment is removed from its cycle and a new
/// blue chord `y_i → x_{i+1}` is drawn inside the face, reusing the segment
/// id. The graph part and the crossings are untouched.
pub fn merge_coface_curves(
    cert: &TCurveCertificate,
    face: usize,
) -> Result<TCurveCertificate, MergeError> {
    let faces = trace_faces(&cert.map).map_err(MergeError::Map)?;
    let walk = faces.get(face).ok_or(MergeError::UnknownFace(face))?;
    let mut cycle_of = BTreeMap::new();
    for (c, cycle) in cert.blue_cycles.iter().enumerate() {
        for &s in cycle {
            cycle_of.insert(s, c);
        }
    }
    let mut picked: Vec<(usize, usize)> = Vec::new();
    for &d in walk {
        if let Some(&c) = cycle_of.get(&seg_of(d)) {
            if picked.iter().all(|p| p.0 != c) {
                picked.push((c, d));
            }
        }
    }
    if picked.len() < 2 {
        return Err(MergeError::NotApplicable {
            face,
            curves: picked.len(),
        });
    }

    let (nodes, mut segments, mut rotation) = cert.map.clone().into_parts();
    let r = picked.len();
    let owners: Vec<NodeId> = picked.iter().map(|&(_, d)| cert.map.owner(d)).collect();
    let slots: Vec<(NodeId, usize)> = picked
        .iter()
        .map(|&(_, d)| {
            let x = cert.map.owner(d);
            (
                x,
                cert.map
                    .rotation(x)
                    .iter()
                    .position(|&e| e == d)
                    .expect("dart in rotation"),
            )
        })
        .collect();
    for i in 0..r {
        let d = picked[i].1;
        let next = (i + 1) % r;
        let (x_next, slot) = slots[next];
        rotation[x_next][slot] = d;
        let seg = &mut segments[seg_of(d)];
        if d & 1 == 0 {
            seg.a = owners[next];
        } else {
            seg.b = owners[next];
        }
        debug_assert_eq!(
            cert.map.owner(twin(d)),
            if d & 1 == 0 { seg.b } else { seg.a }
        );
    }
    let map = RotationMap::from_parts(nodes, segments, rotation);

    let affected: Vec<usize> = {
        let mut a: Vec<usize> = picked.iter().map(|p| p.0).collect();
        a.sort_unstable();
        a
    };
    let pool: Vec<SegId> = affected
        .iter()
        .flat_map(|&c| cert.blue_cycles[c].iter().copied())
        .collect();
    let merged = walk_cycle(&map, &pool);
    let mut cycles = Vec::with_capacity(cert.blue_cycles.len() - r + 1);
    for (c, cycle) in cert.blue_cycles.iter().enumerate() {
        if c == affected[0] {
            cycles.push(merged.clone());
        } else if !affected.contains(&c) {
            cycles.push(cycle.clone());
        }
    }
    Ok(TCurveCertificate::new(map, cycles, cert.claimed_k, cert.t))
}

/// Order a set of segments forming one closed walk, starting from the
/// smallest segment id.
fn walk_cycle(map: &RotationMap, pool: &[SegId]) -> Vec<SegId> {
    let segs = map.segments();
    let mut at_node: BTreeMap<NodeId, Vec<SegId>> = BTreeMap::new();
    for &s in pool {
        at_node.entry(segs[s].a).or_default().push(s);
        at_node.entry(segs[s].b).or_default().push(s);
    }
    let mut used = vec![false; segs.len()];
    let first = *pool.iter().min().expect("nonempty pool");
    let mut out = vec![first];
    used[first] = true;
    let mut at = segs[first].b;
    while out.len() < pool.len() {
        let Some(&s) = at_node[&at].iter().find(|&&s| !used[s]) else {
            break;
        };
        used[s] = true;
        out.push(s);
        at = if segs[s].a == at {
            segs[s].b
        } else {
            segs[s].a
        };
    }
    out
}
