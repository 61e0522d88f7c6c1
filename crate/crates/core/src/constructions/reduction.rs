use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use super::{ConstructionError, MinimalTriangulation};
use crate::builder::MapBuilder;
use crate::cert::{verify_certificate, TCurveCertificate};
use crate::drawing::{BookDrawing, BookPiece};
use crate::graph::{build_named_graph, disjoint_union, Graph};
use crate::map::{Dart, SegLabel};

/// What a block of vertices of a reduction instance stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Input,
    GadgetGt,
    /// The i-th copy of K_{3,3}, counted from 0.
    GadgetK33(usize),
}

/// G′ = g ⊔ G_t ⊔ k·K_{3,3}, vertices numbered in that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionInstance {
    pub graph: Graph,
    pub roles: Vec<(Role, Range<usize>)>,
}

impl ReductionInstance {
    pub fn role_of(&self, v: usize) -> Option<Role> {
        self.roles
            .iter()
            .find(|(_, r)| r.contains(&v))
            .map(|(role, _)| *role)
    }
}

pub fn reduction_instance(g: &Graph, gadget: &MinimalTriangulation, k: usize) -> ReductionInstance {
    let gt = gadget.triangulation.graph();
    let k33 = build_named_graph("complete_bipartite", &[3, 3]).expect("valid family");
    let mut parts = vec![g.clone(), gt];
    parts.extend(core::iter::repeat_n(k33, k));
    let mut roles = Vec::with_capacity(parts.len());
    let mut start = 0;
    for (i, part) in parts.iter().enumerate() {
        let role = match i {
            0 => Role::Input,
            1 => Role::GadgetGt,
            _ => Role::GadgetK33(i - 2),
        };
        roles.push((role, start..start + part.n()));
        start += part.n();
    }
    ReductionInstance {
        graph: disjoint_union(&parts),
        roles,
    }
}

/// K_{3,3} on the spine 0, 3, 1, 4, 2, 5 with edge 2–3 alone on page 2; it
/// has exactly one crossing.
pub fn k33_book_drawing() -> BookDrawing {
    let g = build_named_graph("complete_bipartite", &[3, 3]).expect("valid family");
    let pages = g
        .edges()
        .iter()
        .map(|&e| if e == (2, 3) { 2 } else { 1 })
        .collect();
    BookDrawing::new(g, vec![0, 3, 1, 4, 2, 5], pages, 2).expect("valid layout")
}

/// Certificate for the reduction instance of `bd`'s graph: the gadget's
/// t-curve embedding with the crossing-free drawing of g and k one-crossing
/// copies of K_{3,3} threaded, spine after spine, onto one of its blue
/// segments. The result is checked by the verifier at exactly k crossings.
pub fn compose_reduction_drawing(
    bd: &BookDrawing,
    gadget: &MinimalTriangulation,
    k: usize,
) -> Result<(ReductionInstance, TCurveCertificate), ConstructionError> {
    if bd.page_count() > 2 {
        return Err(ConstructionError::PageCount(bd.page_count()));
    }
    if bd.crossings() > 0 {
        return Err(ConstructionError::HasCrossings(bd.crossings()));
    }
    let inst = reduction_instance(bd.graph(), gadget, k);
    let k33 = BookPiece::new(&k33_book_drawing())?;
    let mut pieces = vec![BookPiece::new(bd)?];
    pieces.extend(core::iter::repeat_n(k33, k));

    let ng = bd.graph().n();
    let mg = bd.graph().m();
    let gt_map = gadget.certificate.map();
    let mut b = MapBuilder::with_vertices(inst.graph.n());
    let (_, seg_offset) = b.absorb(gt_map, ng, mg);

    let mut cycles: Vec<Vec<usize>> = gadget
        .certificate
        .blue_cycles()
        .iter()
        .map(|c| c.iter().map(|s| s + seg_offset).collect())
        .collect();
    let host = cycles[0][0];
    let host_seg = gt_map.segments()[host - seg_offset];
    let y = host_seg.b + ng;

    // vertex and edge offsets of every piece
    let mut offsets = vec![(0, 0)];
    let gt_size = (gadget.triangulation.n(), gadget.triangulation.graph().m());
    let (mut v_off, mut e_off) = (ng + gt_size.0, mg + gt_size.1);
    for _ in 0..k {
        offsets.push((v_off, e_off));
        v_off += 6;
        e_off += 9;
    }
    let path: Vec<usize> = pieces
        .iter()
        .zip(&offsets)
        .flat_map(|(p, &(vo, _))| p.spine().iter().map(move |&v| v + vo))
        .collect();

    if !path.is_empty() {
        // the host segment now ends at the first spine vertex; fresh segments
        // continue along the spine and back to y
        let mut hops = vec![host];
        b.set_segment_end(host, path[0]);
        for i in 0..path.len() {
            let to = path.get(i + 1).copied().unwrap_or(y);
            hops.push(b.add_segment(path[i], to, SegLabel::Blue));
        }
        let last = *hops.last().unwrap();
        for d in b.rotation_mut(y).iter_mut() {
            if *d == 2 * host + 1 {
                *d = 2 * last + 1;
            }
        }
        let mut darts = vec![(0, 0); inst.graph.n()];
        for (i, &v) in path.iter().enumerate() {
            darts[v] = (2 * hops[i + 1], 2 * hops[i] + 1);
        }
        for (piece, &(vo, eo)) in pieces.iter().zip(&offsets) {
            let local = |v: usize| -> (Dart, Dart) { darts[v + vo] };
            piece.emit(&mut b, vo, eo, &local);
        }
        cycles[0].splice(0..1, hops);
    }

    let cert = TCurveCertificate::new(b.build(), cycles, k, gadget.t);
    verify_certificate(&inst.graph, &cert, gadget.t, k)?;
    Ok((inst, cert))
}
