use std::f64::consts::TAU;

use tcc_core::drawing::{Side, StripPoint};
use tcc_core::{CylindricalDrawing, Route};

use super::{page_color, polyline, Svg};

const CENTER: (f64, f64) = (260.0, 260.0);
const INNER: f64 = 90.0;
const OUTER: f64 = 210.0;
const SAMPLES: usize = 48;

fn at(angle_turns: f64, radius: f64) -> (f64, f64) {
    let a = TAU * angle_turns - TAU / 4.0;
    (CENTER.0 + radius * a.cos(), CENTER.1 + radius * a.sin())
}

fn turns(p: StripPoint) -> f64 {
    p.num as f64 / p.den as f64
}

fn radius(level: u8) -> f64 {
    if level == 0 {
        INNER
    } else {
        OUTER
    }
}

/// Two concentric circles; annulus edges follow their lifts with angle and
/// radius interpolated, disk edges are chords.
pub fn render_cylindrical(d: &CylindricalDrawing) -> String {
    let mut svg = Svg::new(2.0 * CENTER.0, 2.0 * CENTER.1 + 30.0);
    svg.circle("circle inner", CENTER, INNER, "#888888", "none", false);
    svg.circle("circle outer", CENTER, OUTER, "#888888", "none", false);
    let point = |v: usize| {
        let (side, rank) = d.place(v);
        let (len, r) = match side {
            Side::Inner => (d.inner().len(), INNER),
            Side::Outer => (d.outer().len(), OUTER),
        };
        at(rank as f64 / len.max(1) as f64, r)
    };
    for (e, (&(u, v), route)) in d.graph().edges().iter().zip(d.routes()).enumerate() {
        match route {
            Route::InnerDisk | Route::OuterDisk => svg.line("edge disk", page_color(0), point(u), point(v)),
            Route::Annulus(_) => {
                let lift = d.lift(e).expect("annulus edge");
                let (s, t) = (lift.start, lift.end.shifted(lift.winding));
                let (a0, a1) = (turns(s), turns(t));
                let (r0, r1) = (radius(s.level), radius(t.level));
                let pts: Vec<(f64, f64)> = (0..=SAMPLES)
                    .map(|i| {
                        let l = i as f64 / SAMPLES as f64;
                        // same-circle arcs bulge into the annulus
                        let bulge = if s.level == t.level {
                            let depth = 0.45 * (OUTER - INNER) * (std::f64::consts::PI * l).sin();
                            if s.level == 0 {
                                depth
                            } else {
                                -depth
                            }
                        } else {
                            0.0
                        };
                        at(a0 + l * (a1 - a0), r0 + l * (r1 - r0) + bulge)
                    })
                    .collect();
                svg.path("edge annulus", page_color(1), &polyline(&pts, false), false);
            }
        }
    }
    for v in 0..d.graph().n() {
        svg.vertex(point(v), v);
    }
    let caption = match d.crossings() {
        Ok(c) => format!("crossings={c}"),
        Err(e) => format!("invalid drawing: {e}"),
    };
    svg.finish(&caption)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tcc_core::constructions::hill_drawing;

    #[test]
    fn hill_caption_and_determinism() {
        let d = hill_drawing(8).unwrap();
        let svg = render_cylindrical(&d);
        assert!(svg.contains("crossings=18"));
        assert_eq!(svg.matches(r#"class="vertex""#).count(), 8);
        assert_eq!(svg.matches("<path").count() + svg.matches(r#"class="edge disk""#).count(), 28);
        assert_eq!(svg, render_cylindrical(&d));
    }
}
