//! Randomised property checks, 1000 cases each.

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use tcc_core::drawing::{strip_pair_crossings, CylindricalDrawing, Route, StripLift, StripPoint};
use tcc_core::graph::{longest_cycle_length, Graph};
use tcc_core::solvers::{
    book_crossing_number, cylindrical_crossing_number, is_two_page_embeddable, Sequential, SolveStatus,
};
use tcc_core::Unlimited;

pub const CASES: u32 = 1000;

fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    })
}

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            Graph::new(n, pairs.iter().zip(&keep).filter(|(_, k)| **k).map(|(e, _)| *e)).unwrap()
        })
    })
}

fn relabeled(max_n: usize) -> impl Strategy<Value = (Graph, Graph)> {
    graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle()).prop_map(|(g, p)| {
            let h = g.relabel(&p);
            (g, h)
        })
    })
}

fn book(g: &Graph, p: usize) -> Result<usize, TestCaseError> {
    let r = book_crossing_number(g, p, &Unlimited);
    prop_assert_eq!(r.status, SolveStatus::Optimal);
    let w = r.witness.unwrap();
    prop_assert_eq!(Some(w.crossings()), r.value);
    Ok(r.value.unwrap())
}

fn cyl(g: &Graph) -> Result<usize, TestCaseError> {
    let r = cylindrical_crossing_number(g, 1, &Unlimited, &Sequential);
    let w = r.witness.unwrap();
    prop_assert_eq!(w.crossings().ok(), r.value);
    Ok(r.value.unwrap())
}

pub fn relabeling_invariance() -> Result<(), String> {
    let mut r = runner();
    r.run(&(relabeled(6), 1usize..=3), |((g, h), p)| {
        prop_assert_eq!(book(&g, p)?, book(&h, p)?);
        prop_assert_eq!(is_two_page_embeddable(&g, &Unlimited), is_two_page_embeddable(&h, &Unlimited));
        Ok(())
    })
    .map_err(|e| format!("book: {e}"))?;
    r.run(&relabeled(5), |(g, h)| {
        prop_assert_eq!(cyl(&g)?, cyl(&h)?);
        Ok(())
    })
    .map_err(|e| format!("cylindrical: {e}"))?;
    r.run(&relabeled(9), |(g, h)| {
        prop_assert_eq!(longest_cycle_length(&g, &Unlimited), longest_cycle_length(&h, &Unlimited));
        Ok(())
    })
    .map_err(|e| format!("longest cycle: {e}"))
}

/// Random sides and orders; each edge takes its preferred route or the
/// first legal alternative, and is dropped when none is legal.
fn drawing() -> impl Strategy<Value = CylindricalDrawing> {
    graph(7).prop_flat_map(|g| {
        let (n, m) = (g.n(), g.m());
        (
            Just(g),
            proptest::collection::vec(any::<bool>(), n),
            Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            proptest::collection::vec(-2i64..=2, m),
        )
            .prop_map(move |(g, side, order, pref)| {
                let inner: Vec<usize> = order.iter().copied().filter(|&v| side[v]).collect();
                let outer: Vec<usize> = order.iter().copied().filter(|&v| !side[v]).collect();
                let (mut kept, mut routes) = (Vec::new(), Vec::new());
                for (&(u, v), &w) in g.edges().iter().zip(&pref) {
                    let mut options: Vec<Route> = vec![Route::Annulus(w)];
                    options.extend((-3..=3).map(Route::Annulus));
                    match (side[u], side[v]) {
                        (true, true) => options.push(Route::InnerDisk),
                        (false, false) => options.push(Route::OuterDisk),
                        _ => {}
                    }
                    for route in options {
                        let mut e = kept.clone();
                        e.push((u, v));
                        let mut r = routes.clone();
                        r.push(route);
                        let d = CylindricalDrawing::new(Graph::new(n, e).unwrap(), inner.clone(), outer.clone(), r).unwrap();
                        if d.validate().is_ok() {
                            kept.push((u, v));
                            routes.push(route);
                            break;
                        }
                    }
                }
                CylindricalDrawing::new(Graph::new(n, kept).unwrap(), inner, outer, routes).unwrap()
            })
    })
}

pub fn rotation_reflection() -> Result<(), String> {
    runner()
        .run(&drawing(), |d| {
            let c = d.crossings().unwrap();
            prop_assert_eq!(d.rotate_inner().crossings().unwrap(), c);
            prop_assert_eq!(d.rotate_outer().crossings().unwrap(), c);
            prop_assert_eq!(d.reflect().crossings().unwrap(), c);
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn lift() -> impl Strategy<Value = StripLift> {
    let point = (1i64..=6, 0u8..=1).prop_flat_map(|(den, level)| (0..den).prop_map(move |num| StripPoint::new(num, den, level)));
    (point.clone(), point, -3i64..=3).prop_map(|(a, b, w)| {
        let (a, b) = if a.level == 1 && b.level == 0 { (b, a) } else { (a, b) };
        StripLift::new(a, b, w)
    })
}

pub fn strip_formula() -> Result<(), String> {
    runner()
        .run(&(lift(), lift(), -4i64..=4, -4i64..=4), |(e, f, k, j)| {
            prop_assert_eq!(strip_pair_crossings(&e, &f), strip_pair_crossings(&f, &e));
            let moved = |l: &StripLift, k: i64| StripLift::new(l.start.shifted(k), l.end.shifted(k), l.winding);
            prop_assert_eq!(strip_pair_crossings(&e, &f), strip_pair_crossings(&moved(&e, k), &moved(&f, j)));
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Witnesses recount to their values (checked inside `book` and `cyl`),
/// and the cylindrical value never exceeds the 2-page value.
pub fn witnesses_and_cylindrical_bound() -> Result<(), String> {
    runner()
        .run(&graph(6), |g| {
            prop_assert!(cyl(&g)? <= book(&g, 2)?);
            Ok(())
        })
        .map_err(|e| e.to_string())
}
