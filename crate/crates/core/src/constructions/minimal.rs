use alloc::format;
use alloc::string::String;

use super::{stacked_triangulation, ConstructionError, EmbeddedTriangulation, MAX_STACKING_ROUNDS};
use crate::budget::{Budget, Outcome};
use crate::cert::TCurveCertificate;
use crate::graph::is_three_connected;
use crate::map::trace_faces;
use crate::solvers::{curve_cover_filter, t_curve_embeddable};

/// A triangulation with a t-curve embedding and no (t−1)-curve embedding,
/// together with the certificate of the former.
#[derive(Debug, Clone)]
pub struct MinimalTriangulation {
    pub t: usize,
    pub triangulation: EmbeddedTriangulation,
    pub certificate: TCurveCertificate,
    /// Least `m` such that T_m has no (t−1)-curve embedding.
    pub m: usize,
    /// Number of stacked vertices of round `m` in the last (t−1)-curve
    /// embeddable graph of the sequence from T_{m−1} to T_m.
    pub ell: usize,
}

/// Walk T_1, T_2, … to the first T_m without a (t−1)-curve embedding, then
/// add the round-`m` vertices one face at a time (genealogy order) and stop
/// at the first graph without one. That graph is returned after its
/// properties are checked again from scratch.
pub fn minimal_tcurve_triangulation(
    t: usize,
    budget: &dyn Budget,
) -> Result<MinimalTriangulation, ConstructionError> {
    if t < 2 {
        return Err(ConstructionError::Parameter(format!(
            "t must be at least 2, got {t}"
        )));
    }
    let mut m = 1;
    let mut prev = stacked_triangulation(1)?;
    loop {
        let tri = stacked_triangulation(m)?;
        if !embeddable(
            &tri,
            t - 1,
            budget,
            &format!("testing T_{m} for {} curves", t - 1),
        )? {
            break;
        }
        if m == MAX_STACKING_ROUNDS || tri.n() > 64 {
            return Err(ConstructionError::Parameter(format!(
                "every T_i up to T_{m} has a {}-curve embedding",
                t - 1
            )));
        }
        prev = tri;
        m += 1;
    }
    if m == 1 {
        return Err(ConstructionError::Parameter(format!(
            "T_1 already has no {}-curve embedding",
            t - 1
        )));
    }
    let faces = prev.inner_face_count();
    let mut ell = 0;
    let result = loop {
        let q = prev.grow(ell + 1, m);
        if !embeddable(
            &q,
            t - 1,
            budget,
            &format!("testing Q_{} for {} curves", ell + 1, t - 1),
        )? {
            break q;
        }
        ell += 1;
        if ell == faces {
            return Err(ConstructionError::Property(format!(
                "T_{m} was found embeddable on the second pass"
            )));
        }
    };
    let certificate = check_properties(&result, t, budget)?;
    Ok(MinimalTriangulation {
        t,
        triangulation: result,
        certificate,
        m,
        ell,
    })
}

fn embeddable(
    tri: &EmbeddedTriangulation,
    t: usize,
    budget: &dyn Budget,
    stage: &str,
) -> Result<bool, ConstructionError> {
    let timeout = || ConstructionError::Budget(String::from(stage));
    let map = tri.map();
    match curve_cover_filter(&map, t, budget) {
        Ok(Outcome::Done(false)) => return Ok(false),
        Ok(Outcome::Done(true)) => {}
        Ok(Outcome::Timeout) => return Err(timeout()),
        Err(e) => return Err(ConstructionError::Property(format!("{e}"))),
    }
    match t_curve_embeddable(&map, t, budget)? {
        Outcome::Done(found) => Ok(found.is_some()),
        Outcome::Timeout => Err(timeout()),
    }
}

/// Re-derive every claimed property of `tri`; returns the t-curve certificate.
fn check_properties(
    tri: &EmbeddedTriangulation,
    t: usize,
    budget: &dyn Budget,
) -> Result<TCurveCertificate, ConstructionError> {
    let g = tri.graph();
    let map = tri.map();
    let faces = trace_faces(&map).map_err(|e| ConstructionError::Property(format!("{e}")))?;
    if faces.iter().any(|f| f.len() != 3) || g.m() != 3 * g.n() - 6 {
        return Err(ConstructionError::Property(String::from(
            "not maximal planar",
        )));
    }
    if !is_three_connected(&g).map_err(|e| ConstructionError::Property(format!("{e}")))? {
        return Err(ConstructionError::Property(String::from("not 3-connected")));
    }
    let cert = match t_curve_embeddable(&map, t, budget)? {
        Outcome::Done(Some(c)) => c,
        Outcome::Done(None) => {
            return Err(ConstructionError::Property(format!(
                "no {t}-curve embedding"
            )))
        }
        Outcome::Timeout => {
            return Err(ConstructionError::Budget(format!("re-checking {t} curves")))
        }
    };
    crate::cert::verify_certificate(&g, &cert, t, 0)?;
    match t_curve_embeddable(&map, t - 1, budget)? {
        Outcome::Done(None) => Ok(cert),
        Outcome::Done(Some(_)) => Err(ConstructionError::Property(format!(
            "has a {}-curve embedding",
            t - 1
        ))),
        Outcome::Timeout => Err(ConstructionError::Budget(format!(
            "re-checking {} curves",
            t - 1
        ))),
    }
}
