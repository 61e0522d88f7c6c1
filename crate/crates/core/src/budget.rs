//! Work budgets for exponential searches.

use core::sync::atomic::{AtomicU64, Ordering};

/// A budget is charged once per search node. Implementations must be
/// shareable between threads exploring different root branches.
pub trait Budget: Sync {
    /// Charge one unit of work. Returns `false` once the budget is spent.
    fn tick(&self) -> bool;
}

/// Never runs out.
#[derive(Clone, Copy, Debug, Default)]
pub struct Unlimited;

impl Budget for Unlimited {
    #[inline]
    fn tick(&self) -> bool {
        true
    }
}

/// Allows a fixed number of search nodes.
#[derive(Debug)]
pub struct NodeLimit {
    remaining: AtomicU64,
}

impl NodeLimit {
    pub fn new(nodes: u64) -> Self {
        Self {
            remaining: AtomicU64::new(nodes),
        }
    }
}

impl Budget for NodeLimit {
    fn tick(&self) -> bool {
        self.remaining
            .fetch_update(Ordering::Relaxed, Ordering::Relaxed, |r| r.checked_sub(1))
            .is_ok()
    }
}

impl<B: Budget + ?Sized> Budget for &B {
    #[inline]
    fn tick(&self) -> bool {
        (**self).tick()
    }
}

/// Result of a budgeted computation: either the exact answer or an explicit
/// timeout. A timeout never masquerades as a value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<T> {
    Done(T),
    Timeout,
}

impl<T> Outcome<T> {
    pub fn done(self) -> Option<T> {
        match self {
            Outcome::Done(v) => Some(v),
            Outcome::Timeout => None,
        }
    }

    pub fn is_timeout(&self) -> bool {
        matches!(self, Outcome::Timeout)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Done(v) => Outcome::Done(f(v)),
            Outcome::Timeout => Outcome::Timeout,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn node_limit_runs_out() {
        let b = NodeLimit::new(3);
        assert!(b.tick() && b.tick() && b.tick());
        assert!(!b.tick());
        assert!(!b.tick());
    }
}
