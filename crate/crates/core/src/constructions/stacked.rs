use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::ConstructionError;
use crate::graph::{Graph, Vertex};
use crate::map::RotationMap;

/// Largest supported number of stacking rounds (T_5 has 124 vertices).
pub const MAX_STACKING_ROUNDS: usize = 5;

/// A plane triangulation grown by stacking, with its history.
///
/// A face `[a, b, c]` is the boundary walk a→b→c; `c` follows `a` in the
/// rotation at `b`. Face 0 is the outer face, which is never stacked into.
/// The inner faces are listed in genealogy order: stacking into a face
/// replaces it by its three children in place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedTriangulation {
    rotation: Vec<Vec<Vertex>>,
    faces: Vec<[Vertex; 3]>,
    generation: Vec<usize>,
    parent: Vec<Option<[Vertex; 3]>>,
}

impl EmbeddedTriangulation {
    /// Plane K4: the triangle 0, 1, 2 with vertex 3 stacked inside.
    pub fn k4() -> Self {
        let triangle = Self {
            rotation: vec![vec![1, 2], vec![2, 0], vec![0, 1]],
            faces: vec![[0, 1, 2], [0, 2, 1]],
            generation: vec![1; 3],
            parent: vec![None; 3],
        };
        triangle.grow(1, 1)
    }

    /// Rebuild from rotation lists (one clockwise neighbor list per vertex)
    /// and generation tags. The outer face is the one walking 0→1 and face
    /// genealogy restarts from the traced faces.
    pub fn from_rotation_lists(
        rotation: Vec<Vec<Vertex>>,
        generation: Vec<usize>,
    ) -> Result<Self, ConstructionError> {
        let n = rotation.len();
        if generation.len() != n {
            return Err(ConstructionError::Parameter(format!(
                "{} generation tags for {n} vertices",
                generation.len()
            )));
        }
        let bad =
            |why: &str| ConstructionError::Property(format!("not a stacked triangulation: {why}"));
        let edges = rotation
            .iter()
            .enumerate()
            .flat_map(|(v, list)| list.iter().map(move |&w| (v, w)));
        let g = Graph::new(n, edges.filter(|&(v, w)| v < w)).map_err(|_| bad("invalid edges"))?;
        RotationMap::from_rotation_lists(&g, &rotation)
            .map_err(|_| bad("rotation lists do not match the edges"))?;
        let mut t = Self {
            rotation,
            faces: Vec::new(),
            generation,
            parent: vec![None; n],
        };
        let mut faces = Vec::new();
        for a in 0..n {
            for &b in &t.rotation[a] {
                let c = t.next_after(b, a);
                if a < b && a < c {
                    faces.push([a, b, c]);
                }
            }
        }
        if faces
            .iter()
            .any(|&[a, b, c]| t.next_after(c, b) != a || t.next_after(a, c) != b)
        {
            return Err(bad("a face is not a triangle"));
        }
        let outer = faces
            .iter()
            .position(|f| f[0] == 0 && f[1] == 1)
            .ok_or_else(|| bad("no edge 0-1"))?;
        let o = faces.remove(outer);
        faces.insert(0, o);
        t.faces = faces;
        if t.faces.len() + n != t.edge_count() + 2 {
            return Err(bad("Euler's formula fails"));
        }
        Ok(t)
    }

    fn next_after(&self, at: Vertex, from: Vertex) -> Vertex {
        let r = &self.rotation[at];
        let i = r
            .iter()
            .position(|&x| x == from)
            .expect("neighbor in rotation");
        r[(i + 1) % r.len()]
    }

    fn edge_count(&self) -> usize {
        self.rotation.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn n(&self) -> usize {
        self.rotation.len()
    }

    /// Clockwise neighbor lists.
    pub fn rotation_lists(&self) -> &[Vec<Vertex>] {
        &self.rotation
    }

    /// Outer face first, then inner faces in genealogy order.
    pub fn faces(&self) -> &[[Vertex; 3]] {
        &self.faces
    }

    pub fn inner_face_count(&self) -> usize {
        self.faces.len() - 1
    }

    /// Stacking round that added each vertex (1 for the vertices of K4).
    pub fn generation(&self) -> &[usize] {
        &self.generation
    }

    /// The face each vertex was stacked into, if any.
    pub fn parent_face(&self, v: Vertex) -> Option<[Vertex; 3]> {
        self.parent[v]
    }

    pub fn graph(&self) -> Graph {
        let edges = self
            .rotation
            .iter()
            .enumerate()
            .flat_map(|(v, list)| list.iter().map(move |&w| (v, w)))
            .filter(|&(v, w)| v < w);
        Graph::new(self.n(), edges).expect("stacking keeps the graph simple")
    }

    pub fn map(&self) -> RotationMap {
        RotationMap::from_rotation_lists(&self.graph(), &self.rotation)
            .expect("rotation lists match the graph")
    }

    /// Stack a new vertex into each of the first `count` inner faces, tagging
    /// the new vertices with `generation`.
    pub fn grow(&self, count: usize, generation: usize) -> Self {
        let mut out = self.clone();
        out.faces = vec![self.faces[0]];
        for (i, &face) in self.faces[1..].iter().enumerate() {
            if i < count {
                let x = out.stack(face, generation);
                let [a, b, c] = face;
                out.faces.extend([[a, b, x], [b, c, x], [c, a, x]]);
            } else {
                out.faces.push(face);
            }
        }
        out
    }

    fn stack(&mut self, [a, b, c]: [Vertex; 3], generation: usize) -> Vertex {
        let x = self.rotation.len();
        // the walk a→b→c puts b after c at a, c after a at b, a after b at c
        for (at, before) in [(a, c), (b, a), (c, b)] {
            let r = &mut self.rotation[at];
            let i = r
                .iter()
                .position(|&v| v == before)
                .expect("face vertex adjacent");
            r.insert(i + 1, x);
        }
        self.rotation.push(vec![a, c, b]);
        self.generation.push(generation);
        self.parent.push(Some([a, b, c]));
        x
    }
}

/// T_i: plane K4 followed by `i − 1` rounds of stacking into every inner
/// face.
pub fn stacked_triangulation(i: usize) -> Result<EmbeddedTriangulation, ConstructionError> {
    if i == 0 || i > MAX_STACKING_ROUNDS {
        return Err(ConstructionError::Parameter(format!(
            "stacking rounds must be in 1..={MAX_STACKING_ROUNDS}, got {i}"
        )));
    }
    let mut t = EmbeddedTriangulation::k4();
    for round in 2..=i {
        t = t.grow(t.inner_face_count(), round);
    }
    Ok(t)
}
