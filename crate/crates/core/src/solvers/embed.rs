//! Exact t-curve embeddability of a fixed plane map.
//!
//! A curve is a cyclic vertex sequence; consecutive vertices must share a
//! face, and the arc between them is a chord of that face between two of
//! its vertex corners. Curves are vertex-disjoint, and chords inside one
//! face must not interleave along the face's boundary walk. Curves through
//! one vertex are loops; curves through two vertices use two chords.
//!
//! The search interleaves an exact set-level cover check (which refutes
//! most infeasible instances at once) with the enumeration of cyclic orders
//! and chord placements.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use super::cover::CoverSearch;
use crate::budget::{Budget, Outcome};
use crate::builder::MapBuilder;
use crate::cert::{project_graph, verify_certificate, Reject, TCurveCertificate};
use crate::graph::Vertex;
use crate::map::{
    check_plane_map, seg_of, trace_faces, Dart, MapViolation, NodeKind, RotationMap, SegLabel,
    Segment,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EmbedError {
    #[error("map is not a plane map: {0}")]
    Map(MapViolation),
    #[error("map already carries blue segments")]
    HasBlue,
    #[error("vertex nodes must come before crossing nodes")]
    NodeOrder,
    #[error("embeddability search supports at most 64 vertices, map has {0}")]
    TooLarge(usize),
    #[error("constructed certificate failed verification: {0}")]
    Internal(Reject),
}

/// Search for at most `t` pairwise disjoint clean curves through all
/// vertices of `map`. `Done(None)` means none exist.
///
/// Disconnected maps are handled by first checking every component on its
/// own (a necessary condition) and then trying the placements of each
/// component into a face of the ones before it, joined by a temporary
/// bridge edge that no curve may cross.
pub fn t_curve_embeddable(
    map: &RotationMap,
    t: usize,
    budget: &dyn Budget,
) -> Result<Outcome<Option<TCurveCertificate>>, EmbedError> {
    check_plane_map(map).map_err(EmbedError::Map)?;
    if map.segments().iter().any(|s| s.label.is_blue()) {
        return Err(EmbedError::HasBlue);
    }
    let n = map
        .nodes()
        .iter()
        .take_while(|k| **k == NodeKind::Vertex)
        .count();
    if map.nodes()[n..].iter().any(|k| *k == NodeKind::Vertex) {
        return Err(EmbedError::NodeOrder);
    }
    if n > 64 {
        return Err(EmbedError::TooLarge(n));
    }
    let comp = map.components();
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (node, &c) in comp.iter().enumerate() {
        groups.entry(c).or_default().push(node);
    }
    let groups: Vec<Vec<usize>> = groups.into_values().collect();
    let cert = if groups.len() <= 1 {
        match Embedder::new(map, t, budget).run() {
            Outcome::Done(c) => c,
            Outcome::Timeout => return Ok(Outcome::Timeout),
        }
    } else {
        match multi_component(map, &groups, t, budget) {
            Outcome::Done(r) => r?,
            Outcome::Timeout => return Ok(Outcome::Timeout),
        }
    };
    if let Some(cert) = &cert {
        let g = project_graph(cert.map()).map_err(EmbedError::Internal)?;
        verify_certificate(&g, cert, t, cert.crossing_count()).map_err(EmbedError::Internal)?;
    }
    Ok(Outcome::Done(cert))
}

#[derive(Debug, Clone, Copy)]
struct ArcOption {
    face: usize,
    pu: usize,
    pw: usize,
    du: Dart,
    dw: Dart,
}

#[derive(Debug, Clone)]
enum Curve {
    Loop(Vertex),
    Arcs(Vec<ArcOption>, Vec<Vertex>),
}

const NO_CORNER: Dart = usize::MAX;

struct Embedder<'a> {
    map: &'a RotationMap,
    n: usize,
    t: usize,
    face_len: Vec<usize>,
    options: BTreeMap<(Vertex, Vertex), Vec<ArcOption>>,
    loop_corner: Vec<Dart>,
    cover: CoverSearch<'a>,
    placed: Vec<Vec<(usize, usize)>>,
    curves: Vec<Curve>,
    budget: &'a dyn Budget,
}

impl<'a> Embedder<'a> {
    fn new(map: &'a RotationMap, t: usize, budget: &'a dyn Budget) -> Self {
        let n = map
            .nodes()
            .iter()
            .take_while(|k| **k == NodeKind::Vertex)
            .count();
        let faces = trace_faces(map).expect("checked plane map");
        let mut options: BTreeMap<(Vertex, Vertex), Vec<ArcOption>> = BTreeMap::new();
        let mut cof = vec![0u64; n];
        for (f, walk) in faces.iter().enumerate() {
            let corners: Vec<(usize, Vertex, Dart)> = walk
                .iter()
                .enumerate()
                .map(|(p, &d)| (p, map.owner(d), d))
                .filter(|&(_, v, _)| v < n)
                .collect();
            for &(pu, u, du) in &corners {
                for &(pw, w, dw) in &corners {
                    if u == w {
                        continue;
                    }
                    options.entry((u, w)).or_default().push(ArcOption {
                        face: f,
                        pu,
                        pw,
                        du,
                        dw,
                    });
                    cof[u] |= 1 << w;
                }
            }
        }
        let loop_corner = (0..n)
            .map(|v| {
                map.rotations()
                    .get(v)
                    .and_then(|r| r.first().copied())
                    .unwrap_or(NO_CORNER)
            })
            .collect();
        Self {
            map,
            n,
            t,
            face_len: faces.iter().map(Vec::len).collect(),
            options,
            loop_corner,
            cover: CoverSearch::new(cof, budget),
            placed: vec![Vec::new(); faces.len()],
            curves: Vec::new(),
            budget,
        }
    }

    fn run(mut self) -> Outcome<Option<TCurveCertificate>> {
        let full = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        match self.search(full, self.t) {
            Outcome::Done(true) => Outcome::Done(Some(self.emit())),
            Outcome::Done(false) => Outcome::Done(None),
            Outcome::Timeout => Outcome::Timeout,
        }
    }

    fn search(&mut self, rem: u64, left: usize) -> Outcome<bool> {
        if rem == 0 {
            return Outcome::Done(true);
        }
        if left == 0 {
            return Outcome::Done(false);
        }
        if !self.budget.tick() {
            return Outcome::Timeout;
        }
        let v = rem.trailing_zeros() as usize;
        let candidates = match self.cover.candidates(v, rem) {
            Outcome::Done(c) => c,
            Outcome::Timeout => return Outcome::Timeout,
        };
        for part in candidates {
            let rest = rem & !part;
            match self.cover.feasible(rest, left - 1) {
                Outcome::Done(true) => {}
                Outcome::Done(false) => continue,
                Outcome::Timeout => return Outcome::Timeout,
            }
            match self.place_part(part, rest, left - 1) {
                Outcome::Done(false) => {}
                other => return other,
            }
        }
        Outcome::Done(false)
    }

    fn place_part(&mut self, part: u64, rest: u64, left: usize) -> Outcome<bool> {
        let v = part.trailing_zeros() as usize;
        match part.count_ones() {
            1 => {
                self.curves.push(Curve::Loop(v));
                let r = self.search(rest, left);
                if r != Outcome::Done(true) {
                    self.curves.pop();
                }
                r
            }
            2 => {
                let w = (part & !(1 << v)).trailing_zeros() as usize;
                self.place_arcs(&[v, w], &mut Vec::new(), rest, left)
            }
            _ => self.orders(part, &mut vec![v], 1 << v, rest, left),
        }
    }

    /// Cyclic orders of `part` (starting at its least vertex, one direction
    /// only) with consecutive vertices co-facial.
    fn orders(
        &mut self,
        part: u64,
        path: &mut Vec<Vertex>,
        mask: u64,
        rest: u64,
        left: usize,
    ) -> Outcome<bool> {
        if !self.budget.tick() {
            return Outcome::Timeout;
        }
        let last = *path.last().unwrap();
        if mask == part {
            let first = path[0];
            if path[1] > last || !self.cover_adjacent(last, first) {
                return Outcome::Done(false);
            }
            let order = path.clone();
            return self.place_arcs(&order, &mut Vec::new(), rest, left);
        }
        let mut next = self.cover_adj(last) & part & !mask;
        while next != 0 {
            let x = next.trailing_zeros() as usize;
            next &= next - 1;
            path.push(x);
            let r = self.orders(part, path, mask | 1 << x, rest, left);
            path.pop();
            match r {
                Outcome::Done(false) => {}
                other => return other,
            }
        }
        Outcome::Done(false)
    }

    fn cover_adj(&self, v: Vertex) -> u64 {
        self.options
            .range((v, 0)..(v + 1, 0))
            .fold(0u64, |m, (&(_, w), _)| m | 1 << w)
    }

    fn cover_adjacent(&self, u: Vertex, w: Vertex) -> bool {
        self.options.contains_key(&(u, w))
    }

    fn place_arcs(
        &mut self,
        order: &[Vertex],
        chosen: &mut Vec<ArcOption>,
        rest: u64,
        left: usize,
    ) -> Outcome<bool> {
        let m = order.len();
        let j = chosen.len();
        if j == m {
            self.curves
                .push(Curve::Arcs(chosen.clone(), order.to_vec()));
            let r = self.search(rest, left);
            if r != Outcome::Done(true) {
                self.curves.pop();
            }
            return r;
        }
        if !self.budget.tick() {
            return Outcome::Timeout;
        }
        let (u, w) = (order[j], order[(j + 1) % m]);
        let count = self.options.get(&(u, w)).map_or(0, Vec::len);
        for i in 0..count {
            let opt = self.options[&(u, w)][i];
            if !self.laminar(&opt) {
                continue;
            }
            self.placed[opt.face].push((opt.pu, opt.pw));
            chosen.push(opt);
            let r = self.place_arcs(order, chosen, rest, left);
            chosen.pop();
            self.placed[opt.face].pop();
            match r {
                Outcome::Done(false) => {}
                other => return other,
            }
        }
        Outcome::Done(false)
    }

    fn laminar(&self, opt: &ArcOption) -> bool {
        let (lo, hi) = (opt.pu.min(opt.pw), opt.pu.max(opt.pw));
        self.placed[opt.face].iter().all(|&(a, b)| {
            if a == lo || a == hi || b == lo || b == hi {
                return true;
            }
            let inside = |x: usize| lo < x && x < hi;
            inside(a) == inside(b)
        })
    }

    fn emit(&self) -> TCurveCertificate {
        let map = self.map;
        let mut b = MapBuilder::with_vertices(self.n);
        b.absorb(map, 0, 0);
        let mut inserts: BTreeMap<Dart, Vec<((Reverse<usize>, i64), Vec<Dart>)>> = BTreeMap::new();
        let mut cycles = Vec::new();
        for curve in &self.curves {
            match curve {
                Curve::Loop(v) => {
                    let s = b.add_segment(*v, *v, SegLabel::Blue);
                    let corner = self.loop_corner[*v];
                    if corner == NO_CORNER {
                        b.set_rotation(*v, vec![2 * s, 2 * s + 1]);
                    } else {
                        inserts
                            .entry(corner)
                            .or_default()
                            .push(((Reverse(0), 0), vec![2 * s, 2 * s + 1]));
                    }
                    cycles.push(vec![s]);
                }
                Curve::Arcs(arcs, order) => {
                    let m = order.len();
                    let mut segs = Vec::with_capacity(m);
                    for (j, opt) in arcs.iter().enumerate() {
                        let s = b.add_segment(order[j], order[(j + 1) % m], SegLabel::Blue);
                        let len = self.face_len[opt.face];
                        let fwd_u = (opt.pw + len - opt.pu) % len;
                        let fwd_w = (opt.pu + len - opt.pw) % len;
                        let tie_u = if opt.pu < opt.pw {
                            s as i64
                        } else {
                            -(s as i64)
                        };
                        let tie_w = if opt.pw < opt.pu {
                            s as i64
                        } else {
                            -(s as i64)
                        };
                        inserts
                            .entry(opt.du)
                            .or_default()
                            .push(((Reverse(fwd_u), tie_u), vec![2 * s]));
                        inserts
                            .entry(opt.dw)
                            .or_default()
                            .push(((Reverse(fwd_w), tie_w), vec![2 * s + 1]));
                        segs.push(s);
                    }
                    cycles.push(segs);
                }
            }
        }
        for (node, rot) in map.rotations().iter().enumerate() {
            if rot.is_empty() {
                continue;
            }
            let mut out = Vec::with_capacity(rot.len());
            for &d in rot {
                if let Some(list) = inserts.get_mut(&d) {
                    list.sort();
                    for (_, darts) in list.iter() {
                        out.extend_from_slice(darts);
                    }
                }
                out.push(d);
            }
            b.set_rotation(node, out);
        }
        let k = map.crossing_count();
        TCurveCertificate::new(b.build(), cycles, k, self.t)
    }
}

/// Marker for temporary bridge segments.
const BRIDGE: usize = usize::MAX / 2;

fn multi_component(
    map: &RotationMap,
    groups: &[Vec<usize>],
    t: usize,
    budget: &dyn Budget,
) -> Outcome<Result<Option<TCurveCertificate>, EmbedError>> {
    for group in groups {
        let sub = submap(map, group);
        match Embedder::new(&sub, t, budget).run() {
            Outcome::Done(Some(_)) => {}
            Outcome::Done(None) => return Outcome::Done(Ok(None)),
            Outcome::Timeout => return Outcome::Timeout,
        }
    }
    // corner darts per group; an isolated vertex offers its empty rotation
    let corners: Vec<Vec<(usize, Dart)>> = groups
        .iter()
        .map(|group| {
            let mut c = Vec::new();
            for &node in group {
                if map.nodes()[node] != NodeKind::Vertex {
                    continue;
                }
                let rot = map.rotation(node);
                if rot.is_empty() {
                    c.push((node, NO_CORNER));
                }
                c.extend(rot.iter().map(|&d| (node, d)));
            }
            c
        })
        .collect();
    let mut bridges = Vec::new();
    place_bridges(map, &corners, 1, &mut bridges, t, budget)
}

fn place_bridges(
    map: &RotationMap,
    corners: &[Vec<(usize, Dart)>],
    next: usize,
    bridges: &mut Vec<((usize, Dart), (usize, Dart))>,
    t: usize,
    budget: &dyn Budget,
) -> Outcome<Result<Option<TCurveCertificate>, EmbedError>> {
    if next == corners.len() {
        let bridged = add_bridges(map, bridges);
        if check_plane_map(&bridged).is_err() {
            return Outcome::Done(Ok(None));
        }
        return match Embedder::new(&bridged, t, budget).run() {
            Outcome::Done(Some(cert)) => Outcome::Done(Ok(Some(strip_bridges(cert)))),
            Outcome::Done(None) => Outcome::Done(Ok(None)),
            Outcome::Timeout => Outcome::Timeout,
        };
    }
    let placed: Vec<(usize, Dart)> = corners[..next].iter().flatten().copied().collect();
    for &host in &placed {
        for &guest in &corners[next] {
            if !budget.tick() {
                return Outcome::Timeout;
            }
            bridges.push((host, guest));
            let r = place_bridges(map, corners, next + 1, bridges, t, budget);
            bridges.pop();
            match r {
                Outcome::Done(Ok(None)) => {}
                other => return other,
            }
        }
    }
    Outcome::Done(Ok(None))
}

/// Copy of `map` with a bridge segment between each pair of corners, the
/// bridge darts inserted just before the corner darts.
fn add_bridges(map: &RotationMap, bridges: &[((usize, Dart), (usize, Dart))]) -> RotationMap {
    let (nodes, mut segments, mut rotation) = map.clone().into_parts();
    for (i, &((x, dx), (y, dy))) in bridges.iter().enumerate() {
        let s = segments.len();
        segments.push(Segment {
            a: x,
            b: y,
            label: SegLabel::Edge(BRIDGE + i),
        });
        for (node, corner, dart) in [(x, dx, 2 * s), (y, dy, 2 * s + 1)] {
            let rot = &mut rotation[node];
            let at = rot.iter().position(|&d| d == corner).unwrap_or(0);
            rot.insert(at, dart);
        }
    }
    RotationMap::from_parts(nodes, segments, rotation)
}

fn strip_bridges(cert: TCurveCertificate) -> TCurveCertificate {
    let (map, cycles, k, t) = cert.into_parts();
    let (nodes, segments, rotation) = map.into_parts();
    let mut new_id = vec![usize::MAX; segments.len()];
    let mut kept = Vec::new();
    for (s, seg) in segments.iter().enumerate() {
        if !matches!(seg.label, SegLabel::Edge(e) if e >= BRIDGE) {
            new_id[s] = kept.len();
            kept.push(*seg);
        }
    }
    let remap = |d: Dart| 2 * new_id[seg_of(d)] + (d & 1);
    let rotation = rotation
        .into_iter()
        .map(|rot| {
            rot.into_iter()
                .filter(|&d| new_id[seg_of(d)] != usize::MAX)
                .map(remap)
                .collect()
        })
        .collect();
    let cycles = cycles
        .into_iter()
        .map(|c| c.into_iter().map(|s| new_id[s]).collect())
        .collect();
    TCurveCertificate::new(RotationMap::from_parts(nodes, kept, rotation), cycles, k, t)
}

/// The nodes of `group` (vertices first, in order) with their segments.
fn submap(map: &RotationMap, group: &[usize]) -> RotationMap {
    let mut ordered: Vec<usize> = group
        .iter()
        .copied()
        .filter(|&v| map.nodes()[v] == NodeKind::Vertex)
        .collect();
    ordered.extend(
        group
            .iter()
            .copied()
            .filter(|&v| map.nodes()[v] != NodeKind::Vertex),
    );
    let mut id = BTreeMap::new();
    for (i, &v) in ordered.iter().enumerate() {
        id.insert(v, i);
    }
    let mut seg_id = BTreeMap::new();
    let mut segments = Vec::new();
    for (s, seg) in map.segments().iter().enumerate() {
        if let (Some(&a), Some(&b)) = (id.get(&seg.a), id.get(&seg.b)) {
            seg_id.insert(s, segments.len());
            segments.push(Segment {
                a,
                b,
                label: seg.label,
            });
        }
    }
    let nodes = ordered.iter().map(|&v| map.nodes()[v]).collect();
    let rotation = ordered
        .iter()
        .map(|&v| {
            map.rotation(v)
                .iter()
                .map(|&d| 2 * seg_id[&seg_of(d)] + (d & 1))
                .collect()
        })
        .collect();
    RotationMap::from_parts(nodes, segments, rotation)
}
