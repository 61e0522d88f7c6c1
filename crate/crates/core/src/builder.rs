//! Incremental construction of rotation maps.

use alloc::vec;
use alloc::vec::Vec;

use crate::map::{Dart, NodeId, NodeKind, RotationMap, SegId, SegLabel, Segment};

/// Collects nodes, segments and rotations; vertex nodes come first so that
/// node `v` is graph vertex `v`.
#[derive(Debug, Clone, Default)]
pub struct MapBuilder {
    nodes: Vec<NodeKind>,
    segments: Vec<Segment>,
    rotation: Vec<Vec<Dart>>,
}

impl MapBuilder {
    pub fn with_vertices(n: usize) -> Self {
        Self {
            nodes: vec![NodeKind::Vertex; n],
            segments: Vec::new(),
            rotation: vec![Vec::new(); n],
        }
    }

    /// Copy every node and segment of `map`, shifting node ids by
    /// `node_offset` for vertices and appending crossings. Edge labels are
    /// shifted by `edge_offset`. Returns the crossing-node translation and the
    /// segment offset.
    pub fn absorb(
        &mut self,
        map: &RotationMap,
        vertex_offset: usize,
        edge_offset: usize,
    ) -> (Vec<NodeId>, usize) {
        let mut translate = vec![0; map.node_count()];
        for (i, kind) in map.nodes().iter().enumerate() {
            translate[i] = match kind {
                NodeKind::Vertex => vertex_offset + i,
                NodeKind::Crossing => self.add_crossing(),
            };
        }
        let seg_offset = self.segments.len();
        for s in map.segments() {
            let label = match s.label {
                SegLabel::Edge(e) => SegLabel::Edge(e + edge_offset),
                SegLabel::Blue => SegLabel::Blue,
            };
            self.add_segment(translate[s.a], translate[s.b], label);
        }
        for (i, rot) in map.rotations().iter().enumerate() {
            self.rotation[translate[i]] = rot.iter().map(|&d| d + 2 * seg_offset).collect();
        }
        (translate, seg_offset)
    }

    pub fn add_crossing(&mut self) -> NodeId {
        self.nodes.push(NodeKind::Crossing);
        self.rotation.push(Vec::new());
        self.nodes.len() - 1
    }

    pub fn add_segment(&mut self, a: NodeId, b: NodeId, label: SegLabel) -> SegId {
        self.segments.push(Segment { a, b, label });
        self.segments.len() - 1
    }

    /// Move the second endpoint of `seg`; the caller fixes the rotations.
    pub fn set_segment_end(&mut self, seg: SegId, b: NodeId) {
        self.segments[seg].b = b;
    }

    pub fn set_rotation(&mut self, node: NodeId, darts: Vec<Dart>) {
        self.rotation[node] = darts;
    }

    pub fn rotation_mut(&mut self, node: NodeId) -> &mut Vec<Dart> {
        &mut self.rotation[node]
    }

    pub fn build(self) -> RotationMap {
        RotationMap::from_parts(self.nodes, self.segments, self.rotation)
    }
}
