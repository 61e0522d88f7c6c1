//! Annulus arc crossings against a direct geometric count in the strip.

use proptest::prelude::*;
use tcc_core::drawing::{strip_pair_crossings, StripLift, StripPoint};

/// Exact rational as (numerator, positive denominator).
type Q = (i64, i64);

fn cmp(a: Q, b: Q) -> i64 {
    (a.0 * b.1 - b.0 * a.1).signum()
}

fn shift(a: Q, k: i64) -> Q {
    (a.0 + k * a.1, a.1)
}

fn ends(e: &StripLift) -> ((Q, u8), (Q, u8)) {
    let s = e.start;
    let t = e.end.shifted(e.winding);
    (((s.num, s.den), s.level), ((t.num, t.den), t.level))
}

/// Crossings of the straight segment or half-disk representatives of `e`
/// and all translates of `f`.
fn oracle(e: &StripLift, f: &StripLift) -> usize {
    let (ea, eb) = ends(e);
    let (fa, fb) = ends(f);
    let mut total = 0;
    for k in -60..=60 {
        let (ga, gb) = ((shift(fa.0, k), fa.1), (shift(fb.0, k), fb.1));
        total += pair(ea, eb, ga, gb) as usize;
    }
    total
}

fn pair(ea: (Q, u8), eb: (Q, u8), fa: (Q, u8), fb: (Q, u8)) -> bool {
    let same = |p: (Q, u8), q: (Q, u8)| p.1 == q.1 && cmp(p.0, q.0) == 0;
    if same(ea, fa) || same(ea, fb) || same(eb, fa) || same(eb, fb) {
        return false;
    }
    let mixed = |a: (Q, u8), b: (Q, u8)| a.1 != b.1;
    let strictly_inside = |p: Q, a: Q, b: Q| {
        let (lo, hi) = if cmp(a, b) < 0 { (a, b) } else { (b, a) };
        cmp(lo, p) < 0 && cmp(p, hi) < 0
    };
    match (mixed(ea, eb), mixed(fa, fb)) {
        (true, true) => {
            // segments from level 0 to level 1 cross when their order flips
            let (e0, e1) = if ea.1 == 0 { (ea.0, eb.0) } else { (eb.0, ea.0) };
            let (f0, f1) = if fa.1 == 0 { (fa.0, fb.0) } else { (fb.0, fa.0) };
            cmp(e0, f0) * cmp(e1, f1) < 0
        }
        (false, false) => {
            ea.1 == fa.1 && strictly_inside(fa.0, ea.0, eb.0) != strictly_inside(fb.0, ea.0, eb.0)
        }
        (true, false) | (false, true) => {
            let ((sa, sb), (ma, mb)) = if mixed(ea, eb) { ((fa, fb), (ea, eb)) } else { ((ea, eb), (fa, fb)) };
            let foot = if ma.1 == sa.1 { ma.0 } else { mb.0 };
            strictly_inside(foot, sa.0, sb.0)
        }
    }
}

fn point() -> impl Strategy<Value = StripPoint> {
    (1i64..=6, 0u8..=1).prop_flat_map(|(den, level)| (0..den).prop_map(move |num| StripPoint::new(num, den, level)))
}

fn lift() -> impl Strategy<Value = StripLift> {
    (point(), point(), -3i64..=3).prop_map(|(a, b, w)| {
        // mixed arcs start on the inner circle
        let (a, b) = if a.level == 1 && b.level == 0 { (b, a) } else { (a, b) };
        StripLift::new(a, b, w)
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn matches_geometric_count(e in lift(), f in lift()) {
        prop_assert_eq!(strip_pair_crossings(&e, &f), oracle(&e, &f));
    }

    #[test]
    fn symmetric(e in lift(), f in lift()) {
        prop_assert_eq!(strip_pair_crossings(&e, &f), strip_pair_crossings(&f, &e));
    }

    #[test]
    fn shift_invariant(e in lift(), f in lift(), k in -4i64..=4, j in -4i64..=4) {
        let moved = |l: &StripLift, k: i64| StripLift::new(l.start.shifted(k), l.end.shifted(k), l.winding);
        prop_assert_eq!(strip_pair_crossings(&e, &f), strip_pair_crossings(&moved(&e, k), &moved(&f, j)));
    }
}
