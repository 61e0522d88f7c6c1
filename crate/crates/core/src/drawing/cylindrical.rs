use alloc::vec::Vec;
use core::fmt;

use super::strip::{strip_pair_crossings, strip_self_crossings, StripLift, StripPoint};
use super::{chords_interleave, DrawingError};
use crate::graph::{Graph, Vertex};

/// Region an edge of a cylindrical drawing runs through.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Route {
    InnerDisk,
    OuterDisk,
    /// Through the annulus; the winding is the number of whole turns added
    /// to the lifted end point.
    Annulus(i64),
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Route::InnerDisk => f.write_str("in"),
            Route::OuterDisk => f.write_str("out"),
            Route::Annulus(w) => write!(f, "ann:{w}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Inner,
    Outer,
}

/// Two circular vertex sequences and a route per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CylindricalDrawing {
    graph: Graph,
    inner: Vec<Vertex>,
    outer: Vec<Vertex>,
    routes: Vec<Route>,
    place: Vec<(Side, usize)>,
}

impl CylindricalDrawing {
    /// Checks that the circles partition the vertex set and that there is
    /// one route per edge. Route legality is checked by [`Self::validate`].
    pub fn new(
        graph: Graph,
        inner: Vec<Vertex>,
        outer: Vec<Vertex>,
        routes: Vec<Route>,
    ) -> Result<Self, DrawingError> {
        let n = graph.n();
        let mut place = alloc::vec![(Side::Inner, usize::MAX); n];
        for (side, list) in [(Side::Inner, &inner), (Side::Outer, &outer)] {
            for (rank, &v) in list.iter().enumerate() {
                if v >= n || place[v].1 != usize::MAX {
                    return Err(DrawingError::NotPermutation(v));
                }
                place[v] = (side, rank);
            }
        }
        if let Some(v) = place.iter().position(|p| p.1 == usize::MAX) {
            return Err(DrawingError::NotPermutation(v));
        }
        if routes.len() != graph.m() {
            return Err(DrawingError::EdgeCount {
                expected: graph.m(),
                found: routes.len(),
            });
        }
        Ok(Self {
            graph,
            inner,
            outer,
            routes,
            place,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn inner(&self) -> &[Vertex] {
        &self.inner
    }

    pub fn outer(&self) -> &[Vertex] {
        &self.outer
    }

    pub fn routes(&self) -> &[Route] {
        &self.routes
    }

    /// Circle and rank of a vertex.
    pub fn place(&self, v: Vertex) -> (Side, usize) {
        self.place[v]
    }

    pub(crate) fn point(&self, v: Vertex) -> StripPoint {
        match self.place[v] {
            (Side::Inner, r) => StripPoint::new(r as i64, self.inner.len() as i64, 0),
            (Side::Outer, r) => StripPoint::new(r as i64, self.outer.len() as i64, 1),
        }
    }

    /// Strip lift of an annulus edge. The start is the inner endpoint of an
    /// inner–outer edge and the lower-id endpoint otherwise.
    pub fn lift(&self, edge: usize) -> Option<StripLift> {
        let Route::Annulus(w) = self.routes[edge] else {
            return None;
        };
        let (u, v) = self.graph.edges()[edge];
        let (s, t) = match (self.place[u].0, self.place[v].0) {
            (Side::Outer, Side::Inner) => (v, u),
            _ => (u, v),
        };
        Some(StripLift::new(self.point(s), self.point(t), w))
    }

    /// The endpoint the lift of `edge` starts at.
    pub fn lift_start(&self, edge: usize) -> Vertex {
        let (u, v) = self.graph.edges()[edge];
        match (self.place[u].0, self.place[v].0) {
            (Side::Outer, Side::Inner) => v,
            _ => u,
        }
    }

    pub fn validate(&self) -> Result<(), DrawingError> {
        let edges = self.graph.edges();
        for (i, (&(u, v), &route)) in edges.iter().zip(&self.routes).enumerate() {
            let (su, sv) = (self.place[u].0, self.place[v].0);
            let legal = match route {
                Route::InnerDisk => su == Side::Inner && sv == Side::Inner,
                Route::OuterDisk => su == Side::Outer && sv == Side::Outer,
                Route::Annulus(_) => true,
            };
            if !legal {
                return Err(DrawingError::IllegalRoute { u, v, route });
            }
            if let Some(lift) = self.lift(i) {
                if strip_self_crossings(&lift) != 0 {
                    return Err(DrawingError::SelfCrossing { u, v });
                }
            }
        }
        for i in 0..edges.len() {
            let Some(e) = self.lift(i) else { continue };
            for j in i + 1..edges.len() {
                if !adjacent(edges[i], edges[j]) {
                    continue;
                }
                let Some(f) = self.lift(j) else { continue };
                if strip_pair_crossings(&e, &f) != 0 {
                    return Err(DrawingError::AdjacentCrossing {
                        e: edges[i],
                        f: edges[j],
                    });
                }
            }
        }
        Ok(())
    }

    /// Crossings between two edges under the drawing's routes.
    pub(crate) fn pair_crossings(&self, i: usize, j: usize) -> usize {
        let edges = self.graph.edges();
        if adjacent(edges[i], edges[j]) {
            return 0;
        }
        let (a, b) = edges[i];
        let (c, d) = edges[j];
        let rank = |v: Vertex| self.place[v].1;
        match (self.routes[i], self.routes[j]) {
            (Route::InnerDisk, Route::InnerDisk) | (Route::OuterDisk, Route::OuterDisk) => {
                chords_interleave(rank(a), rank(b), rank(c), rank(d)) as usize
            }
            (Route::Annulus(_), Route::Annulus(_)) => {
                strip_pair_crossings(&self.lift(i).unwrap(), &self.lift(j).unwrap())
            }
            _ => 0,
        }
    }

    /// Total crossings; fails if the drawing is not valid.
    pub fn crossings(&self) -> Result<usize, DrawingError> {
        self.validate()?;
        let m = self.graph.m();
        Ok((0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .map(|(i, j)| self.pair_crossings(i, j))
            .sum())
    }

    /// Move the first vertex of the inner circle to the end, adjusting
    /// windings so every edge keeps its homotopy class.
    pub fn rotate_inner(&self) -> Self {
        self.rotate(Side::Inner)
    }

    pub fn rotate_outer(&self) -> Self {
        self.rotate(Side::Outer)
    }

    fn rotate(&self, side: Side) -> Self {
        let list = match side {
            Side::Inner => &self.inner,
            Side::Outer => &self.outer,
        };
        if list.is_empty() {
            return self.clone();
        }
        let moved = list[0];
        let mut rotated: Vec<Vertex> = list[1..].to_vec();
        rotated.push(moved);
        // the moved vertex's coordinate grows by (len-1)/len = 1 - 1/len,
        // every other vertex on that circle loses 1/len: a uniform shift by
        // -1/len plus one extra turn for `moved`
        let routes = self
            .graph
            .edges()
            .iter()
            .enumerate()
            .map(|(i, _)| match self.routes[i] {
                Route::Annulus(w) => {
                    let start = self.lift_start(i);
                    let (u, v) = self.graph.edges()[i];
                    let end = if start == u { v } else { u };
                    let mut w = w;
                    if end == moved {
                        w -= 1;
                    }
                    if start == moved {
                        w += 1;
                    }
                    Route::Annulus(w)
                }
                r => r,
            })
            .collect();
        let (inner, outer) = match side {
            Side::Inner => (rotated, self.outer.clone()),
            Side::Outer => (self.inner.clone(), rotated),
        };
        Self::new(self.graph.clone(), inner, outer, routes).expect("rotation keeps the partition")
    }

    /// Reverse both circles and negate every winding.
    pub fn reflect(&self) -> Self {
        let inner = self.inner.iter().rev().copied().collect();
        let outer = self.outer.iter().rev().copied().collect();
        let routes = self
            .routes
            .iter()
            .map(|r| match r {
                Route::Annulus(w) => Route::Annulus(-w),
                r => *r,
            })
            .collect();
        Self::new(self.graph.clone(), inner, outer, routes).expect("reflection keeps the partition")
    }
}

#[inline]
pub(crate) fn adjacent(e: (Vertex, Vertex), f: (Vertex, Vertex)) -> bool {
    e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1
}

/// Crossings of a valid cylindrical drawing.
pub fn cyl_crossings(d: &CylindricalDrawing) -> Result<usize, DrawingError> {
    d.crossings()
}

pub fn validate_cylindrical(d: &CylindricalDrawing) -> Result<(), DrawingError> {
    d.validate()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_named_graph;
    use alloc::vec;

    fn k4_split() -> CylindricalDrawing {
        // inner 0,1 ; outer 2,3
        let g = build_named_graph("complete", &[4]).unwrap();
        let routes = g
            .edges()
            .iter()
            .map(|&e| match e {
                (0, 1) => Route::InnerDisk,
                (2, 3) => Route::OuterDisk,
                (1, 2) => Route::Annulus(1),
                _ => Route::Annulus(0),
            })
            .collect();
        CylindricalDrawing::new(g, vec![0, 1], vec![2, 3], routes).unwrap()
    }

    #[test]
    fn k4_without_crossings() {
        assert_eq!(cyl_crossings(&k4_split()), Ok(0));
    }

    #[test]
    fn illegal_route() {
        let g = build_named_graph("complete", &[4]).unwrap();
        let mut routes = vec![Route::Annulus(0); 6];
        routes[g.edge_id(0, 2).unwrap()] = Route::InnerDisk;
        let d = CylindricalDrawing::new(g, vec![0, 1], vec![2, 3], routes).unwrap();
        assert!(matches!(
            d.validate(),
            Err(DrawingError::IllegalRoute { u: 0, v: 2, .. })
        ));
    }

    #[test]
    fn same_side_annulus_edge_spanning_two_turns() {
        let g = build_named_graph("path", &[2]).unwrap();
        let d = CylindricalDrawing::new(g, vec![0, 1], vec![], vec![Route::Annulus(2)]).unwrap();
        assert_eq!(d.validate(), Err(DrawingError::SelfCrossing { u: 0, v: 1 }));
        let g = build_named_graph("path", &[2]).unwrap();
        for w in [-1, 0] {
            let d = CylindricalDrawing::new(g.clone(), vec![0, 1], vec![], vec![Route::Annulus(w)])
                .unwrap();
            assert_eq!(d.validate(), Ok(()));
        }
    }

    #[test]
    fn partition_is_checked() {
        let g = build_named_graph("complete", &[3]).unwrap();
        assert_eq!(
            CylindricalDrawing::new(g.clone(), vec![0], vec![1], vec![Route::InnerDisk; 3]),
            Err(DrawingError::NotPermutation(2))
        );
        assert_eq!(
            CylindricalDrawing::new(g, vec![0, 1], vec![1, 2], vec![Route::InnerDisk; 3]),
            Err(DrawingError::NotPermutation(1))
        );
    }

    #[test]
    fn rotation_and_reflection_keep_counts() {
        let d = k4_split();
        assert_eq!(d.rotate_inner().crossings(), Ok(0));
        assert_eq!(d.rotate_outer().crossings(), Ok(0));
        assert_eq!(d.reflect().crossings(), Ok(0));
    }
}
