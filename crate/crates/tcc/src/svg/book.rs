use tcc_core::BookDrawing;

use super::{page_color, Svg};

const GAP: f64 = 60.0;
const MARGIN: f64 = 40.0;

/// Spine along a horizontal line; odd pages arch above it, even pages
/// below. Crossing pairs are marked where their arcs meet.
pub fn render_book(d: &BookDrawing) -> String {
    let n = d.graph().n();
    let half = GAP * n.max(2) as f64 / 2.0 + MARGIN;
    let width = 2.0 * MARGIN + GAP * n.saturating_sub(1) as f64;
    let axis = half;
    let mut svg = Svg::new(width.max(200.0), 2.0 * half + 30.0);
    let pos = d.spine_positions();
    let x = |v: usize| MARGIN + GAP * pos[v] as f64;
    svg.line("spine", "black", (MARGIN - 10.0, axis), (width - MARGIN + 10.0, axis));
    let arcs: Vec<(f64, f64, usize)> = d
        .graph()
        .edges()
        .iter()
        .zip(d.pages())
        .map(|(&(u, v), &p)| {
            let (a, b) = (x(u).min(x(v)), x(u).max(x(v)));
            ((a + b) / 2.0, (b - a) / 2.0, p)
        })
        .collect();
    for &(c, r, p) in &arcs {
        // sweep flag 1 goes above the spine, 0 below
        let sweep = if p % 2 == 1 { 1 } else { 0 };
        let path = format!("M{:.2} {axis:.2} A{r:.2} {r:.2} 0 0 {sweep} {:.2} {axis:.2}", c - r, c + r);
        svg.path(&format!("edge page{p}"), page_color(p - 1), &path, false);
    }
    for i in 0..arcs.len() {
        for j in i + 1..arcs.len() {
            if let Some(q) = meet(arcs[i], arcs[j]) {
                let above = arcs[i].2 % 2 == 1;
                svg.crossing((q.0, if above { axis - q.1 } else { axis + q.1 }));
            }
        }
    }
    for v in 0..n {
        svg.vertex((x(v), axis), v);
    }
    svg.finish(&format!("crossings={}", d.crossings()))
}

/// Intersection of two same-page half circles centred on the spine, as
/// (x, height); only strictly interleaving arcs meet.
fn meet(e: (f64, f64, usize), f: (f64, f64, usize)) -> Option<(f64, f64)> {
    let ((c1, r1, p), (c2, r2, q)) = (e, f);
    if p != q {
        return None;
    }
    let (a1, b1, a2, b2) = (c1 - r1, c1 + r1, c2 - r2, c2 + r2);
    let interleave = (a1 < a2 && a2 < b1 && b1 < b2) || (a2 < a1 && a1 < b2 && b2 < b1);
    if !interleave {
        return None;
    }
    let x = (r1 * r1 - r2 * r2 + c2 * c2 - c1 * c1) / (2.0 * (c2 - c1));
    Some((x, (r1 * r1 - (x - c1) * (x - c1)).max(0.0).sqrt()))
}
