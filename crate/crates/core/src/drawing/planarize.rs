//! Planarization of book and cylindrical drawings into certificates.
//!
//! Each region (a page, a disk, or the annulus) is realized with hyperbolic
//! geodesics in the upper half-plane: boundary points become points of the
//! real line in their cyclic order, every edge becomes the semicircle over
//! its endpoints, and two semicircles meet exactly when their endpoints
//! interleave. The annulus is the quotient of the half-plane by the scaling
//! `z ↦ μ^L z`, so a strip point at `x` on level 0 sits at `μ^(L x)` and on
//! level 1 at `-μ^(L x)`. The intersection of the semicircles over `(p, q)`
//! and `(r, s)` has abscissa `(rs - pq) / (r + s - p - q)`, which is exact
//! and orders the crossings along each edge. Triple points are avoided by
//! trying a few bases `μ` and disk spacings.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::book::BookDrawing;
use super::cylindrical::{adjacent, CylindricalDrawing, Route, Side};
use super::strip::{crossing_translates, StripPoint};
use super::DrawingError;
use crate::builder::MapBuilder;
use crate::cert::TCurveCertificate;
use crate::graph::Vertex;
use crate::map::{Dart, SegLabel};

/// `(lower edge, higher edge, translate of the higher edge in the lower
/// edge's frame)`.
type CrossKey = (usize, usize, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Edge(usize),
    BlueSucc,
    BluePred,
}

/// Combinatorial planarization of one drawing, independent of node ids.
#[derive(Debug, Clone)]
struct Planarization {
    start: Vec<Vertex>,
    end: Vec<Vertex>,
    order: Vec<Vec<CrossKey>>,
    /// Whether the higher edge's start lies to the right of the lower edge
    /// walked from its start.
    right: BTreeMap<CrossKey, bool>,
    slots: Vec<Vec<Slot>>,
}

impl Planarization {
    fn new(n: usize, start: Vec<Vertex>, end: Vec<Vertex>) -> Self {
        let m = start.len();
        Self {
            start,
            end,
            order: vec![Vec::new(); m],
            right: BTreeMap::new(),
            slots: vec![Vec::new(); n],
        }
    }

    fn crossings(&self) -> usize {
        self.right.len()
    }

    /// Write nodes, segments and rotations into `b`. `blue(v)` gives the
    /// darts of the blue curve leaving `v` forwards and backwards.
    fn emit(
        &self,
        b: &mut MapBuilder,
        voff: usize,
        eoff: usize,
        blue: &dyn Fn(Vertex) -> (Dart, Dart),
    ) {
        let nodes: BTreeMap<CrossKey, usize> =
            self.right.keys().map(|&k| (k, b.add_crossing())).collect();
        let m = self.start.len();
        let mut ends = vec![(0, 0); m];
        let mut at_crossing: BTreeMap<(CrossKey, usize), (Dart, Dart)> = BTreeMap::new();
        for e in 0..m {
            let mut chain = Vec::with_capacity(self.order[e].len() + 2);
            chain.push(self.start[e] + voff);
            chain.extend(self.order[e].iter().map(|k| nodes[k]));
            chain.push(self.end[e] + voff);
            let segs: Vec<usize> = chain
                .windows(2)
                .map(|w| b.add_segment(w[0], w[1], SegLabel::Edge(e + eoff)))
                .collect();
            ends[e] = (2 * segs[0], 2 * segs[segs.len() - 1] + 1);
            for (j, key) in self.order[e].iter().enumerate() {
                at_crossing.insert((*key, e), (2 * segs[j] + 1, 2 * segs[j + 1]));
            }
        }
        for (key, &node) in &nodes {
            let (e_start, e_end) = at_crossing[&(*key, key.0)];
            let (f_start, f_end) = at_crossing[&(*key, key.1)];
            let (f_right, f_left) = if self.right[key] {
                (f_start, f_end)
            } else {
                (f_end, f_start)
            };
            b.set_rotation(node, vec![e_end, f_right, e_start, f_left]);
        }
        for (v, slots) in self.slots.iter().enumerate() {
            let (succ, pred) = blue(v);
            let rot = slots
                .iter()
                .map(|s| match *s {
                    Slot::Edge(e) if self.start[e] == v => ends[e].0,
                    Slot::Edge(e) => ends[e].1,
                    Slot::BlueSucc => succ,
                    Slot::BluePred => pred,
                })
                .collect();
            b.set_rotation(v + voff, rot);
        }
    }
}

/// Semicircle over two boundary abscissae, walked from `p` to `q`.
struct Geodesic {
    p: BigInt,
    q: BigInt,
}

impl Geodesic {
    /// Abscissa of the intersection with `other` as `(num, den)`, `den > 0`.
    fn meet(&self, other: &Geodesic) -> (BigInt, BigInt) {
        let num = &other.p * &other.q - &self.p * &self.q;
        let den = (&other.p + &other.q) - (&self.p + &self.q);
        debug_assert!(!den.is_zero(), "interleaving geodesics are not concentric");
        if den.is_negative() {
            (-num, -den)
        } else {
            (num, den)
        }
    }

    /// Sort crossings along the geodesic from `p`. Fails on coincident
    /// crossing points.
    fn order(
        &self,
        mut hits: Vec<(CrossKey, (BigInt, BigInt))>,
    ) -> Result<Vec<CrossKey>, DrawingError> {
        let forward = self.p < self.q;
        let cmp = |a: &(BigInt, BigInt), b: &(BigInt, BigInt)| (&a.0 * &b.1).cmp(&(&b.0 * &a.1));
        hits.sort_by(|a, b| {
            let o = cmp(&a.1, &b.1);
            if forward {
                o
            } else {
                o.reverse()
            }
        });
        if hits
            .windows(2)
            .any(|w| cmp(&w[0].1, &w[1].1) == Ordering::Equal)
        {
            return Err(DrawingError::Degenerate);
        }
        Ok(hits.into_iter().map(|(k, _)| k).collect())
    }
}

fn cyclically_between(lo: usize, x: usize, hi: usize) -> bool {
    if lo < hi {
        lo < x && x < hi
    } else {
        x > lo || x < hi
    }
}

fn key_for(e: usize, f: usize, k: i64) -> CrossKey {
    if e < f {
        (e, f, k)
    } else {
        (f, e, -k)
    }
}

/// Chords `(edge, start position, end position)` of one disk region whose
/// boundary carries positions `0..size` in cyclic order.
fn planarize_disk(
    pl: &mut Planarization,
    chords: &[(usize, usize, usize)],
    increasing_is_right: bool,
) -> Result<(), DrawingError> {
    let size = chords.iter().map(|&(_, a, b)| a.max(b) + 1).max().unwrap_or(0);
    let mut last = Err(DrawingError::Degenerate);
    for (base, seed) in attempts() {
        let at = jittered(base, size, seed, 0);
        last = try_disk(pl, chords, increasing_is_right, &at);
        if last.is_ok() {
            break;
        }
    }
    last
}

/// Bases and jitter seeds tried in turn until no three geodesics meet.
fn attempts() -> impl Iterator<Item = (u32, u64)> {
    [2u32, 3].into_iter().flat_map(|b| (0..16).map(move |s| (b, s)))
}

/// Strictly increasing boundary positions `M·base^r + h(r)` for
/// `r < count`, where `h < M` is a seeded perturbation (zero for seed 0).
/// Position `count − 1` stays below `base^count` times position 0, so the
/// table can be repeated with period `count` by scaling.
fn jittered(base: u32, count: usize, seed: u64, level: u64) -> Vec<BigInt> {
    const M: u64 = 1 << 16;
    let base = BigInt::from(base);
    (0..count as u64)
        .map(|r| {
            let h = if seed == 0 {
                0
            } else {
                (seed
                    .wrapping_mul(7919)
                    .wrapping_add(r.wrapping_mul(104_729))
                    .wrapping_add(level.wrapping_mul(15_485_863)))
                .wrapping_mul(2_654_435_761)
                    >> 17
                    & (M / 2 - 1)
            };
            base.pow(r as u32) * M + h
        })
        .collect()
}

fn try_disk(
    pl: &mut Planarization,
    chords: &[(usize, usize, usize)],
    increasing_is_right: bool,
    table: &[BigInt],
) -> Result<(), DrawingError> {
    let at = |i: usize| table[i].clone();
    let mut orders = Vec::with_capacity(chords.len());
    let mut sides = Vec::new();
    for &(e, a, b) in chords {
        let geo = Geodesic { p: at(a), q: at(b) };
        let mut hits = Vec::new();
        for &(f, c, d) in chords {
            if f == e || !super::chords_interleave(a, b, c, d) {
                continue;
            }
            let other = Geodesic { p: at(c), q: at(d) };
            hits.push((key_for(e, f, 0), geo.meet(&other)));
            if e < f {
                let inc = cyclically_between(a, c, b);
                sides.push(((e, f, 0), inc == increasing_is_right));
            }
        }
        orders.push((e, geo.order(hits)?));
    }
    for (e, order) in orders {
        pl.order[e] = order;
    }
    pl.right.extend(sides);
    Ok(())
}

fn strip_units(p: &StripPoint, scale: i64) -> i64 {
    p.num * (scale / p.den)
}

/// Boundary position in the upper half-plane: level 0 on the positive axis,
/// level 1 on the negative axis. A whole turn scales by `base^scale`, so
/// translates of one arc are images under a hyperbolic dilation; within a
/// turn the jittered tables break accidental concurrencies.
fn half_plane_position(
    p: &StripPoint,
    scale: i64,
    floor_turn: i64,
    base: &BigInt,
    tables: &[Vec<BigInt>; 2],
) -> BigInt {
    let u = strip_units(p, scale);
    let turns = (u.div_euclid(scale) - floor_turn) as u32;
    let r = u.rem_euclid(scale) as usize;
    let mag = base.pow(turns * scale as u32) * &tables[p.level as usize][r];
    if p.level == 0 {
        mag
    } else {
        -mag
    }
}

fn planarize_annulus(pl: &mut Planarization, d: &CylindricalDrawing) -> Result<(), DrawingError> {
    let scale = d.inner().len().max(1) * d.outer().len().max(1);
    let mut last = Err(DrawingError::Degenerate);
    for (base, seed) in attempts() {
        let tables = [jittered(base, scale, seed, 0), jittered(base, scale, seed, 1)];
        last = try_annulus(pl, d, &BigInt::from(base), &tables);
        if last.is_ok() {
            break;
        }
    }
    last
}

fn try_annulus(
    pl: &mut Planarization,
    d: &CylindricalDrawing,
    base: &BigInt,
    tables: &[Vec<BigInt>; 2],
) -> Result<(), DrawingError> {
    let edges = d.graph().edges();
    let scale = (d.inner().len().max(1) * d.outer().len().max(1)) as i64;
    let lifts: Vec<_> = (0..edges.len()).map(|i| d.lift(i)).collect();
    let mut orders = Vec::new();
    let mut sides = Vec::new();
    for (e, le) in lifts.iter().enumerate() {
        let Some(le) = le else { continue };
        let (a, b) = le.endpoints(0);
        let mut hits = Vec::new();
        for (f, lf) in lifts.iter().enumerate() {
            let Some(lf) = lf else { continue };
            if f == e || adjacent(edges[e], edges[f]) {
                continue;
            }
            for k in crossing_translates(le, lf) {
                hits.push((key_for(e, f, k), lf.endpoints(k)));
                if e < f {
                    let (c, _) = lf.endpoints(k);
                    let inc = if a.boundary_cmp(&b) == Ordering::Less {
                        a.boundary_cmp(&c) == Ordering::Less && c.boundary_cmp(&b) == Ordering::Less
                    } else {
                        a.boundary_cmp(&c) == Ordering::Less || c.boundary_cmp(&b) == Ordering::Less
                    };
                    // the annulus is drawn mirrored relative to the half-plane
                    sides.push(((e, f, k), !inc));
                }
            }
        }
        let floor = hits
            .iter()
            .flat_map(|(_, (c, d))| [strip_units(c, scale), strip_units(d, scale)])
            .chain([strip_units(&a, scale), strip_units(&b, scale)])
            .min()
            .unwrap_or(0)
            .div_euclid(scale);
        let pos = |p: &StripPoint| half_plane_position(p, scale, floor, base, tables);
        let geo = Geodesic {
            p: pos(&a),
            q: pos(&b),
        };
        let hits = hits
            .into_iter()
            .map(|(key, (c, dd))| {
                let other = Geodesic {
                    p: pos(&c),
                    q: pos(&dd),
                };
                (key, geo.meet(&other))
            })
            .collect();
        orders.push((e, geo.order(hits)?));
    }
    for (e, order) in orders {
        pl.order[e] = order;
    }
    pl.right.extend(sides);
    Ok(())
}

/// Sort `others` around a vertex at `rank` on a circle of `size`, by
/// relative rank.
fn by_relative_rank(
    mut others: Vec<(usize, usize)>,
    rank: usize,
    size: usize,
    decreasing: bool,
) -> Vec<Slot> {
    others.sort_by_key(|&(_, r)| (r + size - rank) % size);
    if decreasing {
        others.reverse();
    }
    others.into_iter().map(|(e, _)| Slot::Edge(e)).collect()
}

fn cylindrical_planarization(d: &CylindricalDrawing) -> Result<Planarization, DrawingError> {
    d.validate()?;
    let g = d.graph();
    let edges = g.edges();
    let start: Vec<Vertex> = (0..edges.len()).map(|i| d.lift_start(i)).collect();
    let end: Vec<Vertex> = edges
        .iter()
        .zip(&start)
        .map(|(&(u, v), &s)| if s == u { v } else { u })
        .collect();
    let mut pl = Planarization::new(g.n(), start, end);

    let rank = |v: Vertex| d.place(v).1;
    let chords = |route: Route| -> Vec<(usize, usize, usize)> {
        (0..edges.len())
            .filter(|&i| d.routes()[i] == route)
            .map(|i| (i, rank(pl.start[i]), rank(pl.end[i])))
            .collect()
    };
    let inner_chords = chords(Route::InnerDisk);
    let outer_chords = chords(Route::OuterDisk);
    planarize_disk(&mut pl, &inner_chords, true)?;
    planarize_disk(&mut pl, &outer_chords, false)?;
    planarize_annulus(&mut pl, d)?;

    let adj = g.adjacency();
    for v in 0..g.n() {
        let (side, r) = d.place(v);
        let p = d.point(v);
        let mut disk = Vec::new();
        let mut ann = Vec::new();
        for &w in &adj[v] {
            let e = g.edge_id(v, w).unwrap();
            match d.routes()[e] {
                Route::Annulus(wind) => {
                    let lift = d.lift(e).unwrap();
                    let other = if pl.start[e] == v {
                        lift.endpoints(0).1
                    } else {
                        lift.start.shifted(-wind)
                    };
                    ann.push((e, other));
                }
                _ => disk.push((e, rank(w))),
            }
        }
        ann.sort_by(|x, y| {
            let after = |q: &StripPoint| p.boundary_cmp(q) != Ordering::Less;
            after(&x.1)
                .cmp(&after(&y.1))
                .then_with(|| x.1.boundary_cmp(&y.1))
        });
        let ann: Vec<Slot> = ann.into_iter().map(|(e, _)| Slot::Edge(e)).collect();
        let slots = &mut pl.slots[v];
        match side {
            Side::Inner => {
                slots.push(Slot::BlueSucc);
                slots.extend(ann);
                slots.push(Slot::BluePred);
                slots.extend(by_relative_rank(disk, r, d.inner().len(), true));
            }
            Side::Outer => {
                slots.push(Slot::BluePred);
                slots.extend(ann);
                slots.push(Slot::BlueSucc);
                slots.extend(by_relative_rank(disk, r, d.outer().len(), false));
            }
        }
    }
    Ok(pl)
}

/// Blue segments around a circle; returns the segment ids and records the
/// forward/backward darts of every vertex.
fn blue_circle(b: &mut MapBuilder, circle: &[Vertex], darts: &mut [(Dart, Dart)]) -> Vec<usize> {
    let k = circle.len();
    let segs: Vec<usize> = (0..k)
        .map(|i| b.add_segment(circle[i], circle[(i + 1) % k], SegLabel::Blue))
        .collect();
    for i in 0..k {
        darts[circle[i]] = (2 * segs[i], 2 * segs[(i + k - 1) % k] + 1);
    }
    segs
}

/// Planarized certificate of a cylindrical drawing: one blue cycle per
/// nonempty circle, one crossing node per counted crossing.
pub fn cylindrical_to_certificate(
    d: &CylindricalDrawing,
) -> Result<TCurveCertificate, DrawingError> {
    let pl = cylindrical_planarization(d)?;
    let n = d.graph().n();
    let mut b = MapBuilder::with_vertices(n);
    let mut darts = vec![(0, 0); n];
    let mut cycles = Vec::new();
    for circle in [d.inner(), d.outer()] {
        if !circle.is_empty() {
            cycles.push(blue_circle(&mut b, circle, &mut darts));
        }
    }
    pl.emit(&mut b, 0, 0, &|v| darts[v]);
    let t = cycles.len();
    Ok(TCurveCertificate::new(b.build(), cycles, pl.crossings(), t))
}

/// Planarization of a drawing on at most two pages, ready to be threaded
/// onto a blue curve through its spine.
#[derive(Debug, Clone)]
pub struct BookPiece {
    pl: Planarization,
    spine: Vec<Vertex>,
}

impl BookPiece {
    pub fn new(d: &BookDrawing) -> Result<Self, DrawingError> {
        if d.page_count() > 2 {
            return Err(DrawingError::NotPlane(d.page_count()));
        }
        let g = d.graph();
        let pos = d.spine_positions();
        let start: Vec<Vertex> = g.edges().iter().map(|e| e.0).collect();
        let end: Vec<Vertex> = g.edges().iter().map(|e| e.1).collect();
        let mut pl = Planarization::new(g.n(), start, end);
        for page in 1..=2 {
            let chords: Vec<_> = g
                .edges()
                .iter()
                .enumerate()
                .filter(|(i, _)| d.pages()[*i] == page)
                .map(|(i, &(u, v))| (i, pos[u], pos[v]))
                .collect();
            planarize_disk(&mut pl, &chords, page == 1)?;
        }
        let adj = g.adjacency();
        let n = g.n();
        for v in 0..n {
            let mut by_page = [Vec::new(), Vec::new()];
            for &w in &adj[v] {
                let e = g.edge_id(v, w).unwrap();
                by_page[d.pages()[e] - 1].push((e, pos[w]));
            }
            let [one, two] = by_page;
            let slots = &mut pl.slots[v];
            slots.extend(by_relative_rank(one, pos[v], n, true));
            slots.push(Slot::BlueSucc);
            slots.extend(by_relative_rank(two, pos[v], n, false));
            slots.push(Slot::BluePred);
        }
        Ok(Self {
            pl,
            spine: d.spine().to_vec(),
        })
    }

    pub fn crossings(&self) -> usize {
        self.pl.crossings()
    }

    pub fn spine(&self) -> &[Vertex] {
        &self.spine
    }

    /// Emit into `b` with vertex and edge ids shifted. `blue(v)` returns the
    /// darts at local vertex `v` continuing the curve forwards (towards the
    /// next spine vertex) and backwards.
    pub fn emit(
        &self,
        b: &mut MapBuilder,
        vertex_offset: usize,
        edge_offset: usize,
        blue: &dyn Fn(Vertex) -> (Dart, Dart),
    ) {
        self.pl.emit(b, vertex_offset, edge_offset, blue);
    }
}

/// Planarized certificate of a drawing on at most two pages: the spine
/// closes into a single blue cycle.
pub fn book_to_certificate(d: &BookDrawing) -> Result<TCurveCertificate, DrawingError> {
    let piece = BookPiece::new(d)?;
    let n = d.graph().n();
    let mut b = MapBuilder::with_vertices(n);
    let mut darts = vec![(0, 0); n];
    let cycle = blue_circle(&mut b, d.spine(), &mut darts);
    piece.emit(&mut b, 0, 0, &|v| darts[v]);
    let cycles = if cycle.is_empty() {
        Vec::new()
    } else {
        vec![cycle]
    };
    Ok(TCurveCertificate::new(
        b.build(),
        cycles,
        piece.crossings(),
        1,
    ))
}
