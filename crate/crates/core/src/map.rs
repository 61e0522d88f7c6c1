//! Combinatorial maps (rotation systems) with crossing nodes and blue
//! segments, face tracing, and plane-map validation.
//!
//! Every segment `s` owns two darts: `2s` sits at `segment.a`, `2s + 1` at
//! `segment.b`. The twin of a dart is `d ^ 1`. Rotations list the darts
//! around a node in clockwise order, and faces are traced with
//! `next(d) = successor of twin(d)` in the rotation at the twin's node.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{Graph, Vertex};

pub type NodeId = usize;
pub type SegId = usize;
pub type Dart = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeKind {
    Vertex,
    Crossing,
}

/// What a segment belongs to: a piece of an original graph edge, or a piece
/// of a blue curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SegLabel {
    Edge(usize),
    Blue,
}

impl SegLabel {
    pub fn is_blue(self) -> bool {
        matches!(self, SegLabel::Blue)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: NodeId,
    pub b: NodeId,
    pub label: SegLabel,
}

#[inline]
pub fn twin(d: Dart) -> Dart {
    d ^ 1
}

#[inline]
pub fn seg_of(d: Dart) -> SegId {
    d >> 1
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapViolation {
    #[error("segment {seg} has endpoint {node} outside the node list")]
    BadEndpoint { seg: SegId, node: NodeId },
    #[error("rotation list of node {node} names unknown dart {dart}")]
    UnknownDart { node: NodeId, dart: Dart },
    #[error("dart {dart} listed at node {node} but belongs to node {owner}")]
    WrongOwner {
        dart: Dart,
        node: NodeId,
        owner: NodeId,
    },
    #[error("dart {dart} appears more than once in the rotations")]
    RepeatedDart { dart: Dart },
    #[error("dart {dart} is missing from the rotation of node {node}")]
    MissingDart { dart: Dart, node: NodeId },
    #[error("crossing node {node} has degree {degree}, expected 4")]
    CrossingDegree { node: NodeId, degree: usize },
    #[error("crossing node {node} touches a blue segment")]
    BlueAtCrossing { node: NodeId },
    #[error("crossing node {node} does not alternate between two distinct edges")]
    CrossingNotAlternating { node: NodeId },
    #[error("edge {edge} does not form a simple vertex-to-vertex chain")]
    BrokenChain { edge: usize },
    #[error("component containing node {node} fails Euler: V={v} E={e} F={f}")]
    Euler {
        node: NodeId,
        v: usize,
        e: usize,
        f: usize,
    },
}

/// A rotation system over vertex and crossing nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationMap {
    nodes: Vec<NodeKind>,
    segments: Vec<Segment>,
    rotation: Vec<Vec<Dart>>,
}

impl RotationMap {
    /// Raw constructor; nothing is validated here, see [`check_plane_map`].
    pub fn from_parts(
        nodes: Vec<NodeKind>,
        segments: Vec<Segment>,
        rotation: Vec<Vec<Dart>>,
    ) -> Self {
        Self {
            nodes,
            segments,
            rotation,
        }
    }

    /// Crossing-free map of `g` from clockwise neighbor lists, one segment per
    /// edge with `a < b`.
    pub fn from_rotation_lists(
        g: &Graph,
        lists: &[Vec<Vertex>],
    ) -> Result<Self, RotationListError> {
        if lists.len() != g.n() {
            return Err(RotationListError::VertexCount {
                expected: g.n(),
                found: lists.len(),
            });
        }
        let segments: Vec<Segment> = g
            .edges()
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| Segment {
                a: u,
                b: v,
                label: SegLabel::Edge(i),
            })
            .collect();
        let mut rotation = Vec::with_capacity(g.n());
        let mut seen = vec![0u8; 2 * g.m()];
        for (v, list) in lists.iter().enumerate() {
            let mut rot = Vec::with_capacity(list.len());
            for &w in list {
                let e = g.edge_id(v, w).ok_or(RotationListError::NotAnEdge {
                    vertex: v,
                    neighbor: w,
                })?;
                let d = if v < w { 2 * e } else { 2 * e + 1 };
                seen[d] += 1;
                rot.push(d);
            }
            rotation.push(rot);
        }
        if let Some(d) = seen.iter().position(|&c| c != 1) {
            let (u, v) = g.edges()[d / 2];
            let (at, other) = if d % 2 == 0 { (u, v) } else { (v, u) };
            return Err(RotationListError::Incomplete {
                vertex: at,
                neighbor: other,
            });
        }
        Ok(Self {
            nodes: vec![NodeKind::Vertex; g.n()],
            segments,
            rotation,
        })
    }

    pub fn into_parts(self) -> (Vec<NodeKind>, Vec<Segment>, Vec<Vec<Dart>>) {
        (self.nodes, self.segments, self.rotation)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[NodeKind] {
        &self.nodes
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn dart_count(&self) -> usize {
        2 * self.segments.len()
    }

    pub fn rotation(&self, node: NodeId) -> &[Dart] {
        &self.rotation[node]
    }

    pub fn rotations(&self) -> &[Vec<Dart>] {
        &self.rotation
    }

    pub fn crossing_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|k| **k == NodeKind::Crossing)
            .count()
    }

    /// Node a dart sits at.
    #[inline]
    pub fn owner(&self, d: Dart) -> NodeId {
        let s = &self.segments[seg_of(d)];
        if d & 1 == 0 {
            s.a
        } else {
            s.b
        }
    }

    /// Node at the far end of a dart.
    #[inline]
    pub fn head(&self, d: Dart) -> NodeId {
        self.owner(twin(d))
    }

    pub fn label(&self, d: Dart) -> SegLabel {
        self.segments[seg_of(d)].label
    }

    /// Clockwise neighbor lists of the graph-colored part when the map has no
    /// crossing nodes. Useful for writing rotation files.
    pub fn vertex_rotation_lists(&self) -> Vec<Vec<NodeId>> {
        self.rotation
            .iter()
            .map(|rot| {
                rot.iter()
                    .filter(|&&d| !self.label(d).is_blue())
                    .map(|&d| self.head(d))
                    .collect()
            })
            .collect()
    }

    /// Position of every dart inside its node's rotation. Fails on the first
    /// structural problem.
    fn dart_positions(&self) -> Result<Vec<(NodeId, usize)>, MapViolation> {
        let n = self.nodes.len();
        for (s, seg) in self.segments.iter().enumerate() {
            for node in [seg.a, seg.b] {
                if node >= n {
                    return Err(MapViolation::BadEndpoint { seg: s, node });
                }
            }
        }
        let mut pos = vec![(usize::MAX, 0); self.dart_count()];
        for (node, rot) in self.rotation.iter().enumerate() {
            for (i, &d) in rot.iter().enumerate() {
                if d >= pos.len() {
                    return Err(MapViolation::UnknownDart { node, dart: d });
                }
                let owner = self.owner(d);
                if owner != node {
                    return Err(MapViolation::WrongOwner {
                        dart: d,
                        node,
                        owner,
                    });
                }
                if pos[d].0 != usize::MAX {
                    return Err(MapViolation::RepeatedDart { dart: d });
                }
                pos[d] = (node, i);
            }
        }
        if self.rotation.len() < n {
            // nodes without a rotation entry must be isolated
            for d in 0..pos.len() {
                if self.owner(d) >= self.rotation.len() {
                    return Err(MapViolation::MissingDart {
                        dart: d,
                        node: self.owner(d),
                    });
                }
            }
        }
        if let Some(d) = pos.iter().position(|p| p.0 == usize::MAX) {
            return Err(MapViolation::MissingDart {
                dart: d,
                node: self.owner(d),
            });
        }
        Ok(pos)
    }

    /// Next dart along the face boundary.
    #[inline]
    fn face_next(&self, pos: &[(NodeId, usize)], d: Dart) -> Dart {
        let t = twin(d);
        let (node, i) = pos[t];
        let rot = &self.rotation[node];
        rot[(i + 1) % rot.len()]
    }

    /// Connected components of the node set, as a label per node.
    pub fn components(&self) -> Vec<usize> {
        let n = self.nodes.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for s in &self.segments {
            let (ra, rb) = (find(&mut parent, s.a), find(&mut parent, s.b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut out = vec![0; n];
        for v in 0..n {
            let r = find(&mut parent, v);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            out[v] = label[r];
        }
        out
    }

    /// Segments of every graph edge, ordered from its lower-id end vertex to
    /// the other end. `None` for an edge whose pieces do not form a simple
    /// vertex-to-vertex chain through crossing nodes.
    pub fn edge_chains(&self) -> BTreeMap<usize, Option<Vec<SegId>>> {
        let mut by_edge: BTreeMap<usize, Vec<SegId>> = BTreeMap::new();
        for (s, seg) in self.segments.iter().enumerate() {
            if let SegLabel::Edge(e) = seg.label {
                by_edge.entry(e).or_default().push(s);
            }
        }
        by_edge
            .into_iter()
            .map(|(e, segs)| (e, self.order_chain(&segs)))
            .collect()
    }

    fn order_chain(&self, segs: &[SegId]) -> Option<Vec<SegId>> {
        let mut ends: Vec<NodeId> = Vec::new();
        let mut incidence: BTreeMap<NodeId, Vec<SegId>> = BTreeMap::new();
        for &s in segs {
            let seg = self.segments[s];
            if seg.a == seg.b {
                return None;
            }
            incidence.entry(seg.a).or_default().push(s);
            incidence.entry(seg.b).or_default().push(s);
        }
        for (&node, list) in &incidence {
            match (self.nodes[node], list.len()) {
                (NodeKind::Vertex, 1) => ends.push(node),
                (NodeKind::Crossing, 2) => {}
                _ => return None,
            }
        }
        if ends.len() != 2 {
            return None;
        }
        let mut out = Vec::with_capacity(segs.len());
        let mut at = ends[0];
        let mut prev = usize::MAX;
        loop {
            let next = incidence[&at].iter().copied().find(|&s| s != prev);
            let Some(s) = next else { break };
            out.push(s);
            let seg = self.segments[s];
            at = if seg.a == at { seg.b } else { seg.a };
            prev = s;
            if at == ends[1] {
                break;
            }
        }
        (out.len() == segs.len() && at == ends[1]).then_some(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RotationListError {
    #[error("expected rotation lists for {expected} vertices, got {found}")]
    VertexCount { expected: usize, found: usize },
    #[error("vertex {vertex} lists {neighbor}, which is not a neighbor")]
    NotAnEdge { vertex: Vertex, neighbor: Vertex },
    #[error("edge {vertex}-{neighbor} is missing or repeated in the rotation of {vertex}")]
    Incomplete { vertex: Vertex, neighbor: Vertex },
}

/// Face boundary walks as dart sequences. Faces are discovered in order of
/// their least unvisited dart, so the numbering is deterministic.
pub fn trace_faces(map: &RotationMap) -> Result<Vec<Vec<Dart>>, MapViolation> {
    let pos = map.dart_positions()?;
    let mut visited = vec![false; map.dart_count()];
    let mut faces = Vec::new();
    for start in 0..map.dart_count() {
        if visited[start] {
            continue;
        }
        let mut face = Vec::new();
        let mut d = start;
        while !visited[d] {
            visited[d] = true;
            face.push(d);
            d = map.face_next(&pos, d);
        }
        faces.push(face);
    }
    Ok(faces)
}

/// Validate the structural invariants and the Euler characteristic of every
/// connected component.
pub fn check_plane_map(map: &RotationMap) -> Result<(), MapViolation> {
    let pos = map.dart_positions()?;

    for (node, kind) in map.nodes.iter().enumerate() {
        if *kind != NodeKind::Crossing {
            continue;
        }
        let rot = map.rotation.get(node).map(Vec::as_slice).unwrap_or(&[]);
        if rot.len() != 4 {
            return Err(MapViolation::CrossingDegree {
                node,
                degree: rot.len(),
            });
        }
        let labels: Vec<SegLabel> = rot.iter().map(|&d| map.label(d)).collect();
        if labels.iter().any(|l| l.is_blue()) {
            return Err(MapViolation::BlueAtCrossing { node });
        }
        if labels[0] != labels[2] || labels[1] != labels[3] || labels[0] == labels[1] {
            return Err(MapViolation::CrossingNotAlternating { node });
        }
    }

    for (edge, chain) in map.edge_chains() {
        if chain.is_none() {
            return Err(MapViolation::BrokenChain { edge });
        }
    }

    let comp = map.components();
    let ncomp = comp.iter().copied().max().map_or(0, |c| c + 1);
    let mut v = vec![0usize; ncomp];
    let mut e = vec![0usize; ncomp];
    let mut f = vec![0usize; ncomp];
    let mut witness = vec![usize::MAX; ncomp];
    for (node, &c) in comp.iter().enumerate() {
        v[c] += 1;
        witness[c] = witness[c].min(node);
    }
    for s in &map.segments {
        e[comp[s.a]] += 1;
    }
    let mut visited = vec![false; map.dart_count()];
    for start in 0..map.dart_count() {
        if visited[start] {
            continue;
        }
        f[comp[map.owner(start)]] += 1;
        let mut d = start;
        while !visited[d] {
            visited[d] = true;
            d = map.face_next(&pos, d);
        }
    }
    for c in 0..ncomp {
        let faces = if e[c] == 0 { 1 } else { f[c] };
        if v[c] as isize - e[c] as isize + faces as isize != 2 {
            return Err(MapViolation::Euler {
                node: witness[c],
                v: v[c],
                e: e[c],
                f: faces,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_named_graph;

    pub(crate) fn k4_map() -> RotationMap {
        // outer triangle 0,1,2 with 3 in the middle
        let g = build_named_graph("complete", &[4]).unwrap();
        RotationMap::from_rotation_lists(
            &g,
            &[vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]],
        )
        .unwrap()
    }

    #[test]
    fn triangle_has_two_faces() {
        let g = build_named_graph("cycle", &[3]).unwrap();
        let m =
            RotationMap::from_rotation_lists(&g, &[vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap();
        let faces = trace_faces(&m).unwrap();
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().all(|f| f.len() == 3));
        check_plane_map(&m).unwrap();
    }

    #[test]
    fn k4_has_four_triangles() {
        let m = k4_map();
        let faces = trace_faces(&m).unwrap();
        assert_eq!(faces.len(), 4);
        assert!(faces.iter().all(|f| f.len() == 3));
        assert_eq!(faces.iter().map(Vec::len).sum::<usize>(), m.dart_count());
        check_plane_map(&m).unwrap();
    }

    #[test]
    fn blue_loop_splits_the_sphere() {
        let m = RotationMap::from_parts(
            vec![NodeKind::Vertex],
            vec![Segment {
                a: 0,
                b: 0,
                label: SegLabel::Blue,
            }],
            vec![vec![0, 1]],
        );
        let faces = trace_faces(&m).unwrap();
        assert_eq!(faces, vec![vec![0], vec![1]]);
        check_plane_map(&m).unwrap();
    }

    #[test]
    fn nonplanar_rotation_fails_euler() {
        // K4 with one vertex's rotation reversed is a torus map
        let g = build_named_graph("complete", &[4]).unwrap();
        let m = RotationMap::from_rotation_lists(
            &g,
            &[vec![1, 2, 3], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]],
        )
        .unwrap();
        assert!(matches!(
            check_plane_map(&m),
            Err(MapViolation::Euler { .. })
        ));
    }

    #[test]
    fn structural_errors_are_named() {
        let mut m = k4_map();
        m.rotation[0].push(0);
        assert!(matches!(
            trace_faces(&m),
            Err(MapViolation::RepeatedDart { dart: 0 })
        ));
        let mut m = k4_map();
        m.rotation[0].pop();
        assert!(matches!(
            trace_faces(&m),
            Err(MapViolation::MissingDart { .. })
        ));
        let mut m = k4_map();
        let d = m.rotation[0][0];
        m.rotation[0][0] = m.rotation[1][0];
        m.rotation[1][0] = d;
        assert!(matches!(
            trace_faces(&m),
            Err(MapViolation::WrongOwner { .. })
        ));
    }

    #[test]
    fn rotation_lists_must_cover_every_edge() {
        let g = build_named_graph("complete", &[4]).unwrap();
        let err = RotationMap::from_rotation_lists(
            &g,
            &[vec![1, 3], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]],
        )
        .unwrap_err();
        assert!(matches!(err, RotationListError::Incomplete { .. }));
    }
}
