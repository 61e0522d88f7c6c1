//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

mod fixtures;
mod props;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use tcc::gt_cache;
use tcc_core::cert::{extract_curve_cover, merge_coface_curves, verify_certificate, Reject};
use tcc_core::constructions::{
    compose_reduction_drawing, hill_drawing, minimal_tcurve_triangulation, reduction_instance, stacked_triangulation,
    z_number, MinimalTriangulation,
};
use tcc_core::graph::{build_named_graph, chen_yu_bound, is_three_connected, longest_cycle_length, Graph};
use tcc_core::map::{trace_faces, MapViolation, NodeKind};
use tcc_core::solvers::{
    book_crossing_number, curve_cover_filter, cylindrical_crossing_number, is_two_page_embeddable, t_curve_embeddable,
    two_page_embedding, Sequential, SolveStatus,
};
use tcc_core::{Outcome, RotationMap, TCurveCertificate, Unlimited};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

struct Suite {
    failed: Vec<String>,
    /// Every certificate accepted along the way, for the cover check.
    accepted: Vec<(Graph, TCurveCertificate)>,
}

impl Suite {
    fn run(&mut self, id: &str, title: &str, limit: Option<Duration>, f: impl FnOnce(&mut Self) -> Check) {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| f(self))).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let took = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if took > l => Err(format!("took {took:.1?}, limit {l:.0?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {id}: {title} ({detail}; {took:.2?})"),
            Err(why) => {
                println!("FAIL criterion {id}: {title} ({why}; {took:.2?})");
                self.failed.push(id.to_string());
            }
        }
    }
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn c1(_: &mut Suite) -> Check {
    let expected = [0u64, 0, 1, 3, 9, 18, 36, 60, 100, 150];
    let found: Vec<u64> = (3..=12).map(z_number).collect();
    ensure!(found == expected, "got {found:?}");
    Ok(format!("Z(3..=12) = {found:?}"))
}

fn c2(_: &mut Suite) -> Check {
    for n in 4..=12 {
        let c = hill_drawing(n).map_err(|e| e.to_string())?.crossings().map_err(|e| e.to_string())?;
        ensure!(c as u64 == z_number(n), "n={n}: {c} crossings, Z={}", z_number(n));
    }
    Ok("cyl_crossings(hill(n)) = Z(n) for n = 4..=12".into())
}

fn cyl_case(n: usize, expect: usize) -> Check {
    let g = build_named_graph("complete", &[n]).unwrap();
    let r = cylindrical_crossing_number(&g, 2, &Unlimited, &Sequential);
    ensure!(r.status == SolveStatus::Optimal, "K{n}: status {}", r.status);
    ensure!(r.value == Some(expect), "K{n}: value {:?}", r.value);
    let w = r.witness.unwrap();
    ensure!(w.crossings().ok() == r.value, "K{n}: witness recount differs");
    Ok(format!("K{n} = {expect}, optimal, cap {:?}", r.winding_cap_used))
}

fn c4(_: &mut Suite) -> Check {
    let nu = |kind: &str, params: &[usize], p: usize| {
        let g = build_named_graph(kind, params).unwrap();
        let start = Instant::now();
        let r = book_crossing_number(&g, p, &Unlimited);
        let ok = r.status == SolveStatus::Optimal && r.witness.as_ref().map(|w| w.crossings()) == r.value;
        (r.value, ok && start.elapsed() < Duration::from_secs(60))
    };
    for (kind, params, p, want) in [
        ("complete_bipartite", vec![3, 3], 2, 1),
        ("complete", vec![5], 2, 1),
        ("complete", vec![6], 2, 3),
    ] {
        let (v, ok) = nu(kind, &params, p);
        ensure!(ok && v == Some(want), "{kind}{params:?} p={p}: {v:?}");
    }
    for n in 3..=10 {
        let (v, ok) = nu("cycle", &[n], 1);
        ensure!(ok && v == Some(0), "C{n} p=1: {v:?}");
    }
    Ok("nu2(K33)=1, nu2(K5)=1, nu2(K6)=3, nu1(C3..C10)=0".into())
}

fn c5(_: &mut Suite) -> Check {
    for (i, want) in [(1, 4), (2, 7), (3, 16), (4, 43)] {
        let t = stacked_triangulation(i).map_err(|e| e.to_string())?;
        let faces = trace_faces(&t.map()).map_err(|e| e.to_string())?;
        let g = t.graph();
        ensure!(t.n() == want, "T_{i} has {} vertices", t.n());
        ensure!(faces.iter().all(|f| f.len() == 3), "T_{i} has a non-triangular face");
        ensure!(t.n() + faces.len() == g.m() + 2, "T_{i} fails Euler");
    }
    let g = stacked_triangulation(3).unwrap().graph();
    let len = longest_cycle_length(&g, &Unlimited).done().ok_or("timeout")?;
    let bound = chen_yu_bound(16);
    ensure!((len as f64) < bound && len < 16, "longest cycle {len}, bound {bound:.2}");
    // 2-page embeddability decided separately from the cycle search
    let two_page = is_two_page_embeddable(&g, &Unlimited).done().ok_or("timeout")?;
    ensure!(!two_page, "T_3 reported 2-page embeddable");
    Ok(format!("|V| = 4,7,16,43; longest cycle of T_3 = {len} < {bound:.2}; T_3 not 2-page embeddable"))
}

fn c3(_: &mut Suite) -> Check {
    let mut notes = Vec::new();
    for (n, want) in [(4, 0), (5, 1), (6, 3)] {
        let start = Instant::now();
        notes.push(cyl_case(n, want)?);
        ensure!(start.elapsed() <= Duration::from_secs(60), "K{n} took {:.1?}", start.elapsed());
    }
    Ok(notes.join(", "))
}

fn c3_k7(_: &mut Suite) -> Check {
    cyl_case(7, 9)
}

fn c6(s: &mut Suite) -> Check {
    let gt = minimal_tcurve_triangulation(2, &Unlimited).map_err(|e| e.to_string())?;
    let MinimalTriangulation { triangulation, certificate, m, .. } = &gt;
    let g = triangulation.graph();
    let map = triangulation.map();
    let n = g.n();
    ensure!((8..=16).contains(&n), "|V| = {n}");
    ensure!(*m == 3, "m = {m}");
    ensure!(g.m() == 3 * n - 6, "not maximal planar: m = {}", g.m());
    let faces = trace_faces(&map).map_err(|e| e.to_string())?;
    ensure!(faces.iter().all(|f| f.len() == 3), "non-triangular face");
    ensure!(is_three_connected(&g).map_err(|e| e.to_string())?, "not 3-connected");
    verify_certificate(&g, certificate, 2, 0).map_err(|e| format!("certificate: {e}"))?;
    let one = t_curve_embeddable(&map, 1, &Unlimited).map_err(|e| e.to_string())?;
    ensure!(matches!(one, Outcome::Done(None)), "a 1-curve embedding was found");
    let two = t_curve_embeddable(&map, 2, &Unlimited).map_err(|e| e.to_string())?;
    let Outcome::Done(Some(own)) = two else { return Err("no 2-curve embedding found".into()) };
    verify_certificate(&g, &own, 2, 0).map_err(|e| format!("searched certificate: {e}"))?;
    let cached = gt_cache::load(&gt_cache::default_path(2)).map_err(|e| e.to_string())?;
    ensure!(cached.triangulation.graph() == g, "cached G_2 differs from a fresh run");
    s.accepted.push((g.clone(), certificate.clone()));
    s.accepted.push((g, own));
    Ok(format!("|V| = {n}, m = {m}, ell = {}", gt.ell))
}

fn reduce(s: &mut Suite, gt: &MinimalTriangulation, g: &Graph, k: usize) -> Result<TCurveCertificate, String> {
    let bd = two_page_embedding(g, &Unlimited).done().ok_or("timeout")?.ok_or("no 2-page embedding")?;
    let (inst, cert) = compose_reduction_drawing(&bd, gt, k).map_err(|e| e.to_string())?;
    verify_certificate(&inst.graph, &cert, 2, k).map_err(|e| format!("k={k}: {e}"))?;
    if k > 0 {
        let below = verify_certificate(&inst.graph, &cert, 2, k - 1);
        ensure!(matches!(below, Err(Reject::CrossingBudget { .. })), "accepted below k: {below:?}");
    }
    ensure!(reduction_instance(g, gt, k).graph == inst.graph, "instance mismatch");
    s.accepted.push((inst.graph, cert.clone()));
    Ok(cert)
}

fn c7(s: &mut Suite) -> Check {
    let gt = gt_cache::load(&gt_cache::default_path(2)).map_err(|e| e.to_string())?;
    let mut tamper_base = None;
    for (kind, params) in [("cycle", vec![4]), ("complete", vec![4]), ("cycle", vec![6])] {
        let g = build_named_graph(kind, &params).unwrap();
        for k in [0, 2] {
            let cert = reduce(s, &gt, &g, k)?;
            if k == 2 {
                tamper_base = Some((reduction_instance(&g, &gt, k).graph, cert));
            }
        }
    }
    let (g, cert) = tamper_base.unwrap();
    let r = verify_certificate(&g, &fixtures::uncover(&cert, 0), 2, 2);
    ensure!(matches!(r, Err(Reject::Uncovered { .. })), "uncover: {r:?}");
    let r = verify_certificate(&g, &fixtures::intersect(&cert), 2, 2);
    ensure!(matches!(r, Err(Reject::CurvesIntersect { .. })), "intersect: {r:?}");
    let x = cert.map().nodes().iter().position(|&k| k == NodeKind::Crossing).ok_or("no crossing")?;
    let r = verify_certificate(&g, &fixtures::drop_crossing(&cert, x), 2, 2);
    ensure!(matches!(r, Err(Reject::NotPlane(MapViolation::Euler { .. }))), "drop crossing: {r:?}");

    let corpus: [(&str, &[usize]); 10] = [
        ("path", &[2]),
        ("path", &[7]),
        ("cycle", &[3]),
        ("cycle", &[9]),
        ("wheel", &[5]),
        ("wheel", &[8]),
        ("grid", &[3, 3]),
        ("grid", &[2, 5]),
        ("complete", &[4]),
        ("complete_bipartite", &[2, 3]),
    ];
    for (kind, params) in corpus {
        let g = build_named_graph(kind, params).unwrap();
        reduce(s, &gt, &g, 0).map_err(|e| format!("{kind}{params:?}: {e}"))?;
    }
    Ok("accepted at exactly k, tamperings rejected, 10 corpus graphs accepted".into())
}

fn union_map() -> Result<RotationMap, String> {
    let t3 = stacked_triangulation(3).unwrap();
    let gt = gt_cache::load(&gt_cache::default_path(2)).map_err(|e| e.to_string())?;
    let shift = t3.n();
    let mut lists = t3.rotation_lists().to_vec();
    lists.extend(gt.triangulation.rotation_lists().iter().map(|l| l.iter().map(|v| v + shift).collect::<Vec<_>>()));
    let g = tcc_core::graph::disjoint_union(&[t3.graph(), gt.triangulation.graph()]);
    RotationMap::from_rotation_lists(&g, &lists).map_err(|e| e.to_string())
}

fn c7_negative(_: &mut Suite) -> Check {
    let map = union_map()?;
    let budget = tcc::runtime::Deadline::after(Duration::from_secs(600));
    match t_curve_embeddable(&map, 2, &budget).map_err(|e| e.to_string())? {
        Outcome::Done(None) => Ok("T_3 + G_2 has no 2-curve embedding".into()),
        Outcome::Done(Some(_)) => Err("a 2-curve embedding was found".into()),
        Outcome::Timeout => Err("budget exhausted".into()),
    }
}

fn c8(s: &mut Suite) -> Check {
    let map = stacked_triangulation(3).unwrap().map();
    let start = Instant::now();
    let r = curve_cover_filter(&map, 2, &Unlimited).map_err(|e| e.to_string())?;
    ensure!(matches!(r, Outcome::Done(false)), "filter on T_3: {r:?}");
    ensure!(start.elapsed() <= Duration::from_secs(60), "filter took {:.1?}", start.elapsed());
    for (g, cert) in &s.accepted {
        let cover = extract_curve_cover(cert).map_err(|e| e.to_string())?;
        ensure!(cover.is_valid_for(g.n()), "invalid cover {cover:?}");
    }
    Ok(format!("T_3 refuted at t=2; {} covers valid", s.accepted.len()))
}

fn c9(_: &mut Suite) -> Check {
    for (name, (g, cert)) in [("three loops", fixtures::three_loops()), ("loop and curve", fixtures::loop_and_curve())] {
        let before = cert.blue_cycles().len();
        verify_certificate(&g, &cert, before, 0).map_err(|e| format!("{name}: {e}"))?;
        let face = fixtures::face_touching_all(&cert).ok_or(format!("{name}: no shared face"))?;
        let merged = merge_coface_curves(&cert, face).map_err(|e| format!("{name}: {e}"))?;
        ensure!(merged.blue_cycles().len() == 1, "{name}: {} cycles after merge", merged.blue_cycles().len());
        verify_certificate(&g, &merged, 1, 0).map_err(|e| format!("{name}: merged: {e}"))?;
    }
    Ok("both fixtures merge to one curve and verify at t=1".into())
}

fn c10(_: &mut Suite) -> Check {
    props::relabeling_invariance()?;
    props::rotation_reflection()?;
    props::strip_formula()?;
    props::witnesses_and_cylindrical_bound()?;
    Ok("4 property groups, 1000 cases each".into())
}

fn main() {
    let mut suite = Suite { failed: Vec::new(), accepted: Vec::new() };
    suite.run("1", "Zarankiewicz numbers for n = 3..12", None, c1);
    suite.run("2", "Hill drawings attain Z(n)", Some(Duration::from_secs(1)), c2);
    suite.run("3", "cylindrical crossing numbers of K4, K5, K6", None, c3);
    suite.run("3b", "cylindrical crossing number of K7", secs(600), c3_k7);
    suite.run("4", "book crossing numbers", None, c4);
    suite.run("5", "stacked triangulations and longest cycles", None, c5);
    suite.run("6", "minimal 2-curve triangulation", secs(600), c6);
    suite.run("7", "reduction certificates and tampering", None, c7);
    suite.run("7b", "disjoint union T_3 + G_2 is not 2-curve embeddable", secs(600), c7_negative);
    suite.run("8", "curve cover filter and extraction", None, c8);
    suite.run("9", "merging co-facial curves", None, c9);
    suite.run("10", "invariant properties", None, c10);
    if !suite.failed.is_empty() {
        println!("{} criterion/criteria failed: {}", suite.failed.len(), suite.failed.join(", "));
        std::process::exit(1);
    }
}
