//! Universal-cover model of annulus arcs.
//!
//! The annulus between the two circles lifts to the strip `ℝ × [0, 1]`. A
//! boundary point is an exact rational `x` on level 0 (inner circle) or
//! level 1 (outer circle). Walking the strip's boundary as a disk visits
//! level 0 by increasing `x` and then level 1 by decreasing `x`; two arcs
//! cross once for every translate at which their endpoints alternate along
//! that walk.

use core::cmp::Ordering;

/// Exact rational boundary point.
#[derive(Debug, Clone, Copy)]
pub struct StripPoint {
    pub num: i64,
    pub den: i64,
    pub level: u8,
}

impl StripPoint {
    pub fn new(num: i64, den: i64, level: u8) -> Self {
        assert!(den != 0, "zero denominator");
        assert!(level <= 1, "level is 0 or 1");
        if den < 0 {
            Self {
                num: -num,
                den: -den,
                level,
            }
        } else {
            Self { num, den, level }
        }
    }

    /// The point moved by an integer number of turns.
    pub fn shifted(self, turns: i64) -> Self {
        Self {
            num: self.num + turns * self.den,
            ..self
        }
    }

    fn cmp_x(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }

    /// Order along the strip boundary walk.
    pub fn boundary_cmp(&self, other: &Self) -> Ordering {
        self.level.cmp(&other.level).then_with(|| {
            if self.level == 0 {
                self.cmp_x(other)
            } else {
                other.cmp_x(self)
            }
        })
    }

    fn same(&self, other: &Self) -> bool {
        self.boundary_cmp(other) == Ordering::Equal
    }
}

/// Lift of one annulus arc: from `start` to `end` moved by `winding` turns.
#[derive(Debug, Clone, Copy)]
pub struct StripLift {
    pub start: StripPoint,
    pub end: StripPoint,
    pub winding: i64,
}

impl StripLift {
    pub fn new(start: StripPoint, end: StripPoint, winding: i64) -> Self {
        Self {
            start,
            end,
            winding,
        }
    }

    /// Both endpoints of the lift after a translation by `k`.
    pub fn endpoints(&self, k: i64) -> (StripPoint, StripPoint) {
        (self.start.shifted(k), self.end.shifted(self.winding + k))
    }
}

/// Whether two boundary chords alternate. Chords sharing an endpoint never
/// do.
pub fn alternate(e: (StripPoint, StripPoint), f: (StripPoint, StripPoint)) -> bool {
    let (a, b) = e;
    let (c, d) = f;
    if a.same(&c) || a.same(&d) || b.same(&c) || b.same(&d) {
        return false;
    }
    let (lo, hi) = if a.boundary_cmp(&b) == Ordering::Less {
        (a, b)
    } else {
        (b, a)
    };
    let inside = |p: &StripPoint| {
        lo.boundary_cmp(p) == Ordering::Less && p.boundary_cmp(&hi) == Ordering::Less
    };
    inside(&c) != inside(&d)
}

impl StripPoint {
    fn floor(&self) -> i64 {
        self.num.div_euclid(self.den)
    }
}

impl StripLift {
    /// Integer bounds on the x-extent of the lift.
    fn extent(&self) -> (i64, i64) {
        let (a, b) = self.endpoints(0);
        let (fa, fb) = (a.floor(), b.floor());
        (fa.min(fb), fa.max(fb) + 1)
    }
}

/// Translates `k` for which the x-extents of `e` and `f + k` may overlap;
/// outside this range the lifts cannot alternate.
pub fn translate_window(e: &StripLift, f: &StripLift) -> (i64, i64) {
    let (elo, ehi) = e.extent();
    let (flo, fhi) = f.extent();
    (elo - fhi - 1, ehi - flo + 1)
}

/// Translates `k` at which `e` and `f + k` alternate.
pub fn crossing_translates(e: &StripLift, f: &StripLift) -> impl Iterator<Item = i64> {
    let (lo, hi) = translate_window(e, f);
    let base = e.endpoints(0);
    let f = *f;
    (lo..=hi).filter(move |&k| alternate(base, f.endpoints(k)))
}

/// Minimal number of crossings between two annulus arcs.
pub fn strip_pair_crossings(e: &StripLift, f: &StripLift) -> usize {
    crossing_translates(e, f).count()
}

/// Minimal number of self-crossings of one annulus arc: translates `k ≥ 1`
/// whose endpoints alternate with the arc's own.
pub fn strip_self_crossings(e: &StripLift) -> usize {
    let (lo, hi) = e.extent();
    let window = hi - lo + 1;
    let base = e.endpoints(0);
    (1..=window)
        .filter(|&k| alternate(base, e.endpoints(k)))
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(num: i64, den: i64, level: u8) -> StripPoint {
        StripPoint::new(num, den, level)
    }

    #[test]
    fn vertical_against_slanted() {
        // (0,0)-(0,1) against (1/2,0)-(1/2 + 2,1): alternates at k = -2, -1
        let e = StripLift::new(pt(0, 1, 0), pt(0, 1, 1), 0);
        let f = StripLift::new(pt(1, 2, 0), pt(1, 2, 1), 2);
        assert_eq!(strip_pair_crossings(&e, &f), 2);
        assert_eq!(
            crossing_translates(&e, &f).collect::<alloc::vec::Vec<_>>(),
            [-2, -1]
        );
        assert_eq!(strip_pair_crossings(&f, &e), 2);
    }

    #[test]
    fn parallel_arcs_do_not_cross() {
        let e = StripLift::new(pt(0, 1, 0), pt(1, 2, 1), 0);
        let f = StripLift::new(pt(1, 4, 0), pt(3, 4, 1), 0);
        assert_eq!(strip_pair_crossings(&e, &f), 0);
    }

    #[test]
    fn single_alternation() {
        let e = StripLift::new(pt(0, 1, 0), pt(1, 2, 1), 0);
        let f = StripLift::new(pt(1, 4, 0), pt(1, 4, 1), 0);
        assert_eq!(strip_pair_crossings(&e, &f), 1);
    }

    #[test]
    fn same_level_self_crossings() {
        let short = StripLift::new(pt(0, 1, 0), pt(2, 5, 0), 0);
        assert_eq!(strip_self_crossings(&short), 0);
        // span exactly one turn: translates share endpoints
        let full = StripLift::new(pt(0, 1, 0), pt(0, 1, 0), 1);
        assert_eq!(strip_self_crossings(&full), 0);
        let long = StripLift::new(pt(0, 1, 0), pt(0, 1, 0), 2);
        assert_eq!(strip_self_crossings(&long), 1);
        // cross arcs never cross themselves
        let cross = StripLift::new(pt(0, 1, 0), pt(1, 3, 1), 5);
        assert_eq!(strip_self_crossings(&cross), 0);
    }
}
