use std::f64::consts::TAU;
use std::fmt::Write;

use tcc_core::map::{trace_faces, NodeKind};
use tcc_core::TCurveCertificate;

use super::{page_color, Svg};

const CENTER: (f64, f64) = (260.0, 260.0);
const RADIUS: f64 = 220.0;

/// Barycentric layout: the longest face is pinned to a circle and every
/// other node repeatedly moves to the mean of its neighbours. Graph
/// segments are solid, each blue cycle is one dashed closed curve.
pub fn render_certificate(cert: &TCurveCertificate) -> String {
    let map = cert.map();
    let pos = layout(cert);
    let mut svg = Svg::new(2.0 * CENTER.0, 2.0 * CENTER.1 + 30.0);
    for s in map.segments().iter().filter(|s| !s.label.is_blue()) {
        svg.line("edge", page_color(0), pos[s.a], pos[s.b]);
    }
    for cycle in cert.blue_cycles() {
        let nodes = cycle_nodes(cert, cycle);
        if nodes.len() == 1 {
            let p = pos[nodes[0]];
            svg.circle("blue", (p.0 + 10.0, p.1), 10.0, page_color(1), "none", true);
            continue;
        }
        let mut d = format!("M{:.2} {:.2}", pos[nodes[0]].0, pos[nodes[0]].1);
        for i in 0..nodes.len() {
            let (a, b) = (pos[nodes[i]], pos[nodes[(i + 1) % nodes.len()]]);
            // bend each hop to the same side so that two-node cycles stay open
            let c = ((a.0 + b.0) / 2.0 - 0.2 * (b.1 - a.1), (a.1 + b.1) / 2.0 + 0.2 * (b.0 - a.0));
            write!(d, " Q{:.2} {:.2} {:.2} {:.2}", c.0, c.1, b.0, b.1).unwrap();
        }
        d.push_str(" Z");
        svg.path("blue", page_color(1), &d, true);
    }
    for (i, kind) in map.nodes().iter().enumerate() {
        match kind {
            NodeKind::Vertex => svg.vertex(pos[i], i),
            NodeKind::Crossing => svg.crossing(pos[i]),
        }
    }
    svg.finish(&format!("crossings={}", cert.crossing_count()))
}

/// Nodes of a blue cycle in traversal order.
fn cycle_nodes(cert: &TCurveCertificate, cycle: &[usize]) -> Vec<usize> {
    let segs = cert.map().segments();
    let first = segs[cycle[0]];
    if cycle.len() == 1 {
        return vec![first.a];
    }
    let second = segs[cycle[1]];
    let mut at = if first.b == second.a || first.b == second.b { first.a } else { first.b };
    let mut out = Vec::with_capacity(cycle.len());
    for &s in cycle {
        out.push(at);
        let seg = segs[s];
        at = if seg.a == at { seg.b } else { seg.a };
    }
    out
}

fn layout(cert: &TCurveCertificate) -> Vec<(f64, f64)> {
    let map = cert.map();
    let n = map.node_count();
    let mut pos: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let a = TAU * i as f64 / n.max(1) as f64;
            (CENTER.0 + 0.3 * RADIUS * a.cos(), CENTER.1 + 0.3 * RADIUS * a.sin())
        })
        .collect();
    let mut pinned = vec![false; n];
    if let Ok(faces) = trace_faces(map) {
        if let Some(outer) = faces.iter().rev().max_by_key(|f| f.len()) {
            let mut ring: Vec<usize> = Vec::new();
            for &d in outer {
                let v = map.owner(d);
                if !ring.contains(&v) {
                    ring.push(v);
                }
            }
            for (i, &v) in ring.iter().enumerate() {
                let a = TAU * i as f64 / ring.len() as f64;
                pos[v] = (CENTER.0 + RADIUS * a.cos(), CENTER.1 + RADIUS * a.sin());
                pinned[v] = true;
            }
        }
    }
    let mut nbrs = vec![Vec::new(); n];
    for s in map.segments().iter().filter(|s| s.a != s.b) {
        nbrs[s.a].push(s.b);
        nbrs[s.b].push(s.a);
    }
    for _ in 0..400 {
        for v in 0..n {
            if pinned[v] || nbrs[v].is_empty() {
                continue;
            }
            let k = nbrs[v].len() as f64;
            let sx: f64 = nbrs[v].iter().map(|&w| pos[w].0).sum();
            let sy: f64 = nbrs[v].iter().map(|&w| pos[w].1).sum();
            pos[v] = (sx / k, sy / k);
        }
    }
    pos
}

#[cfg(test)]
mod tests {
    use super::*;
    use tcc_core::constructions::k33_book_drawing;
    use tcc_core::drawing::book_to_certificate;

    #[test]
    fn one_dashed_curve_and_one_crossing() {
        let cert = book_to_certificate(&k33_book_drawing()).unwrap();
        let svg = render_certificate(&cert);
        assert!(svg.contains("crossings=1"));
        assert_eq!(svg.matches(r#"class="blue""#).count(), 1);
        assert_eq!(svg.matches("stroke-dasharray").count(), 1);
        assert_eq!(svg.matches(r#"class="crossing""#).count(), 1);
        assert_eq!(svg, render_certificate(&cert));
    }
}
