//! Handcrafted certificates and tampering edits.

use std::collections::BTreeSet;

use tcc_core::builder::MapBuilder;
use tcc_core::graph::build_named_graph;
use tcc_core::map::{seg_of, trace_faces, Dart, NodeId, NodeKind, SegId, SegLabel, Segment};
use tcc_core::{Graph, RotationMap, TCurveCertificate};

fn triangle_base() -> (Graph, MapBuilder) {
    let g = build_named_graph("cycle", &[3]).unwrap();
    let base = RotationMap::from_rotation_lists(&g, &[vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap();
    let mut b = MapBuilder::with_vertices(3);
    b.absorb(&base, 0, 0);
    (g, b)
}

/// A triangle with a blue loop at each vertex, all inside one face.
pub fn three_loops() -> (Graph, TCurveCertificate) {
    let (g, mut b) = triangle_base();
    let loops: Vec<SegId> = (0..3).map(|v| b.add_segment(v, v, SegLabel::Blue)).collect();
    for v in 0..3 {
        b.rotation_mut(v).extend([2 * loops[v], 2 * loops[v] + 1]);
    }
    (g, TCurveCertificate::new(b.build(), loops.iter().map(|&s| vec![s]).collect(), 0, 3))
}

/// A triangle with a two-segment blue lens along edge 0-1 and a blue loop
/// at vertex 2, both inside the same face.
pub fn loop_and_curve() -> (Graph, TCurveCertificate) {
    let (g, mut b) = triangle_base();
    // appended darts sit in the corner of the face walked 0 → 1 → 2
    let inner = b.add_segment(0, 1, SegLabel::Blue);
    let outer = b.add_segment(0, 1, SegLabel::Blue);
    let lp = b.add_segment(2, 2, SegLabel::Blue);
    b.rotation_mut(0).extend([2 * outer, 2 * inner]);
    b.rotation_mut(1).extend([2 * inner + 1, 2 * outer + 1]);
    b.rotation_mut(2).extend([2 * lp, 2 * lp + 1]);
    (g, TCurveCertificate::new(b.build(), vec![vec![inner, outer], vec![lp]], 0, 2))
}

/// Index of a face whose boundary meets every blue cycle of `cert`.
pub fn face_touching_all(cert: &TCurveCertificate) -> Option<usize> {
    let faces = trace_faces(cert.map()).ok()?;
    let cycle_of = |s: SegId| cert.blue_cycles().iter().position(|c| c.contains(&s));
    faces.iter().position(|f| {
        let touched: BTreeSet<usize> = f
            .iter()
            .filter(|&&d| cert.map().label(d).is_blue())
            .filter_map(|&d| cycle_of(seg_of(d)))
            .collect();
        touched.len() == cert.blue_cycles().len()
    })
}

/// Rebuild a map without the given nodes and segments; ids are compacted
/// and darts of removed segments leave the rotations.
fn compact(
    map: &RotationMap,
    cycles: &[Vec<SegId>],
    drop_nodes: &BTreeSet<NodeId>,
    drop_segs: &BTreeSet<SegId>,
) -> (RotationMap, Vec<Vec<SegId>>) {
    let (nodes, segments, rotation) = map.clone().into_parts();
    let node_id: Vec<Option<NodeId>> = renumber(nodes.len(), drop_nodes);
    let seg_id: Vec<Option<SegId>> = renumber(segments.len(), drop_segs);
    let dart = |d: Dart| seg_id[d / 2].map(|s| 2 * s + d % 2);
    let new_nodes: Vec<NodeKind> = nodes.iter().enumerate().filter(|(i, _)| node_id[*i].is_some()).map(|(_, k)| *k).collect();
    let new_segments: Vec<Segment> = segments
        .iter()
        .enumerate()
        .filter(|(i, _)| seg_id[*i].is_some())
        .map(|(_, s)| Segment {
            a: node_id[s.a].expect("endpoint kept"),
            b: node_id[s.b].expect("endpoint kept"),
            label: s.label,
        })
        .collect();
    let new_rotation: Vec<Vec<Dart>> = rotation
        .iter()
        .enumerate()
        .filter(|(i, _)| node_id[*i].is_some())
        .map(|(_, r)| r.iter().filter_map(|&d| dart(d)).collect())
        .collect();
    let new_cycles = cycles
        .iter()
        .map(|c| c.iter().filter_map(|&s| seg_id[s]).collect::<Vec<_>>())
        .filter(|c| !c.is_empty())
        .collect();
    (RotationMap::from_parts(new_nodes, new_segments, new_rotation), new_cycles)
}

fn renumber(len: usize, dropped: &BTreeSet<usize>) -> Vec<Option<usize>> {
    let mut next = 0;
    (0..len)
        .map(|i| {
            (!dropped.contains(&i)).then(|| {
                next += 1;
                next - 1
            })
        })
        .collect()
}

/// Delete blue cycle `c` with all its segments.
pub fn uncover(cert: &TCurveCertificate, c: usize) -> TCurveCertificate {
    let drop: BTreeSet<SegId> = cert.blue_cycles()[c].iter().copied().collect();
    let mut cycles = cert.blue_cycles().to_vec();
    cycles.remove(c);
    let (map, cycles) = compact(cert.map(), &cycles, &BTreeSet::new(), &drop);
    TCurveCertificate::new(map, cycles, cert.claimed_k(), cert.t())
}

/// Reroute a blue cycle of at least two segments through a node of another
/// blue cycle: both its segments at one of its nodes are moved to that node.
pub fn intersect(cert: &TCurveCertificate) -> TCurveCertificate {
    let (nodes, mut segments, mut rotation) = cert.map().clone().into_parts();
    let cycles = cert.blue_cycles();
    let mover = cycles.iter().position(|c| c.len() >= 2).expect("a cycle with two segments");
    let target = segments[cycles[(mover + 1) % cycles.len()][0]].a;
    let (s, t) = (cycles[mover][0], cycles[mover][1]);
    let shared = [segments[s].a, segments[s].b].into_iter().find(|&x| x == segments[t].a || x == segments[t].b).unwrap();
    for seg in [s, t] {
        for (side, end) in [(0, segments[seg].a), (1, segments[seg].b)] {
            if end == shared {
                let d = 2 * seg + side;
                rotation[shared].retain(|&x| x != d);
                rotation[target].push(d);
                if side == 0 {
                    segments[seg].a = target;
                } else {
                    segments[seg].b = target;
                }
            }
        }
    }
    let map = RotationMap::from_parts(nodes, segments, rotation);
    TCurveCertificate::new(map, cert.blue_cycles().to_vec(), cert.claimed_k(), cert.t())
}

/// Remove crossing node `x` and join each of its two edges straight
/// through, leaving the two edges to cross without a node.
pub fn drop_crossing(cert: &TCurveCertificate, x: NodeId) -> TCurveCertificate {
    let (nodes, mut segments, mut rotation) = cert.map().clone().into_parts();
    assert_eq!(nodes[x], NodeKind::Crossing);
    let around = rotation[x].clone();
    let mut drop = BTreeSet::new();
    for (keep_d, gone_d) in [(around[0], around[2]), (around[1], around[3])] {
        let (keep, gone) = (keep_d / 2, gone_d / 2);
        // the far end of `gone` and the dart it owns there
        let (far, far_dart) = if gone_d % 2 == 0 { (segments[gone].b, 2 * gone + 1) } else { (segments[gone].a, 2 * gone) };
        let moved = 2 * keep + keep_d % 2;
        for d in rotation[far].iter_mut() {
            if *d == far_dart {
                *d = moved;
            }
        }
        if keep_d % 2 == 0 {
            segments[keep].a = far;
        } else {
            segments[keep].b = far;
        }
        drop.insert(gone);
    }
    rotation[x].clear();
    let map = RotationMap::from_parts(nodes, segments, rotation);
    let (map, cycles) = compact(&map, cert.blue_cycles(), &BTreeSet::from([x]), &drop);
    TCurveCertificate::new(map, cycles, cert.claimed_k(), cert.t())
}
