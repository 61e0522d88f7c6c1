use alloc::format;
use alloc::vec::Vec;

use super::{z_number, ConstructionError};
use crate::drawing::{cyl_crossings, CylindricalDrawing, Route};
use crate::graph::build_named_graph;

/// Cylindrical drawing of K_n with Z(n) crossings.
///
/// Vertices `0..⌈n/2⌉` sit on the outer circle and the rest on the inner
/// one, equally spaced. Same-circle edges run through that circle's disk.
/// Each inner–outer edge takes the winding with the smallest lifted span;
/// when two windings tie, the larger one wins. The result is recounted and
/// returned only if it has exactly Z(n) crossings.
pub fn hill_drawing(n: usize) -> Result<CylindricalDrawing, ConstructionError> {
    if n < 3 {
        return Err(ConstructionError::Parameter(format!(
            "hill drawings need n >= 3, got {n}"
        )));
    }
    let g = build_named_graph("complete", &[n]).expect("n >= 1");
    let no = n.div_ceil(2);
    let ni = n / 2;
    let outer: Vec<usize> = (0..no).collect();
    let inner: Vec<usize> = (no..n).collect();
    let turn = (ni * no) as i64;
    let routes = g
        .edges()
        .iter()
        .map(|&(u, v)| match (u < no, v < no) {
            (true, true) => Route::OuterDisk,
            (false, false) => Route::InnerDisk,
            _ => {
                let (i, o) = if u < no { (v - no, u) } else { (u - no, v) };
                // lifted span times ni·no is |offset + w·turn|
                let offset = o as i64 * ni as i64 - i as i64 * no as i64;
                let w = (-offset).div_euclid(turn);
                let best = [w, w + 1]
                    .into_iter()
                    .min_by_key(|&w| ((offset + w * turn).abs(), -w))
                    .unwrap();
                Route::Annulus(best)
            }
        })
        .collect();
    let d = CylindricalDrawing::new(g, inner, outer, routes)?;
    let found = cyl_crossings(&d)?;
    let expected = z_number(n) as usize;
    if found != expected {
        return Err(ConstructionError::SelfCheck { found, expected });
    }
    Ok(d)
}
