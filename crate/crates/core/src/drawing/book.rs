use alloc::vec::Vec;

use super::{chords_interleave, positions, DrawingError};
use crate::graph::{Graph, Vertex};

/// A p-page drawing: a spine order of all vertices and a page in `1..=p`
/// for every edge (indexed like [`Graph::edges`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BookDrawing {
    graph: Graph,
    spine: Vec<Vertex>,
    pages: Vec<usize>,
    p: usize,
}

impl BookDrawing {
    pub fn new(
        graph: Graph,
        spine: Vec<Vertex>,
        pages: Vec<usize>,
        p: usize,
    ) -> Result<Self, DrawingError> {
        if p == 0 {
            return Err(DrawingError::NoPages);
        }
        positions(&spine, graph.n())?;
        if pages.len() != graph.m() {
            return Err(DrawingError::EdgeCount {
                expected: graph.m(),
                found: pages.len(),
            });
        }
        for (&(u, v), &page) in graph.edges().iter().zip(&pages) {
            if page == 0 || page > p {
                return Err(DrawingError::PageOutOfRange { u, v, page, p });
            }
        }
        Ok(Self {
            graph,
            spine,
            pages,
            p,
        })
    }

    /// Every edge on page 1.
    pub fn single_page(graph: Graph, spine: Vec<Vertex>, p: usize) -> Result<Self, DrawingError> {
        let pages = alloc::vec![1; graph.m()];
        Self::new(graph, spine, pages, p)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn spine(&self) -> &[Vertex] {
        &self.spine
    }

    pub fn pages(&self) -> &[usize] {
        &self.pages
    }

    pub fn page_count(&self) -> usize {
        self.p
    }

    pub fn spine_positions(&self) -> Vec<usize> {
        positions(&self.spine, self.graph.n()).expect("validated on construction")
    }

    /// Pairs of same-page edges with four distinct endpoints that interleave
    /// along the spine.
    pub fn crossings(&self) -> usize {
        let pos = self.spine_positions();
        let edges = self.graph.edges();
        let mut total = 0;
        for i in 0..edges.len() {
            let (a, b) = edges[i];
            for j in i + 1..edges.len() {
                if self.pages[i] != self.pages[j] {
                    continue;
                }
                let (c, d) = edges[j];
                if chords_interleave(pos[a], pos[b], pos[c], pos[d]) {
                    total += 1;
                }
            }
        }
        total
    }
}

/// Crossings of a book drawing.
pub fn book_crossings(d: &BookDrawing) -> usize {
    d.crossings()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_named_graph;

    #[test]
    fn outerplanar_cycle() {
        let g = build_named_graph("cycle", &[4]).unwrap();
        let d = BookDrawing::single_page(g, alloc::vec![0, 1, 2, 3], 1).unwrap();
        assert_eq!(book_crossings(&d), 0);
    }

    #[test]
    fn k4_one_page() {
        let g = build_named_graph("complete", &[4]).unwrap();
        let d = BookDrawing::single_page(g, alloc::vec![0, 1, 2, 3], 1).unwrap();
        assert_eq!(d.crossings(), 1);
    }

    #[test]
    fn k33_hexagon_layout() {
        let g = build_named_graph("complete_bipartite", &[3, 3]).unwrap();
        // hexagon 0 3 1 4 2 5; diagonals 0-4, 1-5 on page 1, 2-3 on page 2
        let pages = g
            .edges()
            .iter()
            .map(|&e| if e == (2, 3) { 2 } else { 1 })
            .collect();
        let d = BookDrawing::new(g, alloc::vec![0, 3, 1, 4, 2, 5], pages, 2).unwrap();
        assert_eq!(d.crossings(), 1);
    }

    #[test]
    fn rejects_bad_input() {
        let g = build_named_graph("cycle", &[4]).unwrap();
        assert_eq!(
            BookDrawing::single_page(g.clone(), alloc::vec![0, 1, 1, 3], 1),
            Err(DrawingError::NotPermutation(1))
        );
        assert!(matches!(
            BookDrawing::new(
                g.clone(),
                alloc::vec![0, 1, 2, 3],
                alloc::vec![1, 2, 3, 1],
                2
            ),
            Err(DrawingError::PageOutOfRange { page: 3, .. })
        ));
        assert_eq!(
            BookDrawing::single_page(g, alloc::vec![0, 1, 2, 3], 0),
            Err(DrawingError::NoPages)
        );
    }
}
