//! Seeded vertex relabelling. Solving a relabelled copy changes only the
//! order the search explores; the witness is mapped back afterwards.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tcc_core::drawing::{BookDrawing, CylindricalDrawing, Route};
use tcc_core::graph::Vertex;
use tcc_core::Graph;

/// Identity for seed 0, a ChaCha-shuffled permutation otherwise.
pub fn permutation(n: usize, seed: u64) -> Vec<Vertex> {
    let mut perm: Vec<Vertex> = (0..n).collect();
    if seed != 0 {
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    perm
}

pub fn inverse(perm: &[Vertex]) -> Vec<Vertex> {
    let mut inv = vec![0; perm.len()];
    for (v, &p) in perm.iter().enumerate() {
        inv[p] = v;
    }
    inv
}

/// Per-edge values of `h` listed in the edge order of `g = h.relabel(map)`.
fn edge_values<T: Copy>(h: &Graph, map: &[Vertex], g: &Graph, values: &[T]) -> Vec<T> {
    let mut out: Vec<Option<T>> = vec![None; g.m()];
    for (&(u, v), &x) in h.edges().iter().zip(values) {
        out[g.edge_id(map[u], map[v]).expect("relabelled edge")] = Some(x);
    }
    out.into_iter().map(|x| x.expect("bijection on edges")).collect()
}

/// Rename the vertices of a book drawing through `map` (old `v` becomes
/// `map[v]`).
pub fn book(d: &BookDrawing, map: &[Vertex]) -> BookDrawing {
    let g = d.graph().relabel(map);
    let pages = edge_values(d.graph(), map, &g, d.pages());
    let spine = d.spine().iter().map(|&v| map[v]).collect();
    BookDrawing::new(g, spine, pages, d.page_count()).expect("relabelling keeps a drawing valid")
}

/// Same for a cylindrical drawing. An annulus edge between two vertices of
/// one circle is lifted from its smaller end, so its winding changes sign
/// when the relabelling swaps which end is smaller.
pub fn cylindrical(d: &CylindricalDrawing, map: &[Vertex]) -> CylindricalDrawing {
    let h = d.graph();
    let g = h.relabel(map);
    let routes: Vec<Route> = h
        .edges()
        .iter()
        .zip(d.routes())
        .map(|(&(u, v), &r)| match r {
            Route::Annulus(w) if d.place(u).0 == d.place(v).0 && map[u] > map[v] => Route::Annulus(-w),
            _ => r,
        })
        .collect();
    let routes = edge_values(h, map, &g, &routes);
    let rename = |vs: &[Vertex]| vs.iter().map(|&v| map[v]).collect();
    CylindricalDrawing::new(g, rename(d.inner()), rename(d.outer()), routes)
        .expect("relabelling keeps a drawing valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use tcc_core::constructions::{hill_drawing, k33_book_drawing};

    #[test]
    fn relabelled_drawings_keep_their_counts() {
        for seed in 1..20 {
            let d = hill_drawing(7).unwrap();
            let p = permutation(7, seed);
            let e = cylindrical(&d, &p);
            assert_eq!(e.crossings().unwrap(), 9);
            assert_eq!(cylindrical(&e, &inverse(&p)), d);
            let b = k33_book_drawing();
            let p = permutation(6, seed);
            assert_eq!(book(&b, &p).crossings(), 1);
            assert_eq!(book(&book(&b, &p), &inverse(&p)), b);
        }
        assert_eq!(permutation(5, 0), vec![0, 1, 2, 3, 4]);
    }
}
