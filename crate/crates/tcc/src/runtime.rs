//! Wall-clock budgets and a threaded branch runner.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use tcc_core::solvers::{BranchOutcome, BranchRunner};
use tcc_core::Budget;

/// Runs out once a wall-clock instant has passed. The clock is read every
/// 1024 ticks, so overruns are bounded by that much search work.
#[derive(Debug)]
pub struct Deadline {
    end: Instant,
    ticks: AtomicUsize,
    expired: AtomicBool,
}

impl Deadline {
    pub fn after(limit: Duration) -> Self {
        Self {
            end: Instant::now() + limit,
            ticks: AtomicUsize::new(0),
            expired: AtomicBool::new(false),
        }
    }

    pub fn millis(ms: u64) -> Self {
        Self::after(Duration::from_millis(ms))
    }
}

impl Budget for Deadline {
    fn tick(&self) -> bool {
        if self.expired.load(Ordering::Relaxed) {
            return false;
        }
        if self.ticks.fetch_add(1, Ordering::Relaxed) % 1024 == 0 && Instant::now() >= self.end {
            self.expired.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

/// Hands root branches to a fixed number of scoped worker threads. The
/// results come back in branch order whatever the schedule.
#[derive(Debug, Clone, Copy)]
pub struct Threaded {
    pub threads: usize,
}

impl BranchRunner for Threaded {
    fn map(&self, count: usize, work: &(dyn Fn(usize) -> BranchOutcome + Sync)) -> Vec<BranchOutcome> {
        let next = AtomicUsize::new(0);
        let results: Mutex<Vec<Option<BranchOutcome>>> = Mutex::new(vec![None; count]);
        std::thread::scope(|s| {
            for _ in 0..self.threads.max(1) {
                s.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= count {
                        break;
                    }
                    let r = work(i);
                    results.lock().unwrap()[i] = Some(r);
                });
            }
        });
        results
            .into_inner()
            .unwrap()
            .into_iter()
            .map(|r| r.expect("every branch ran"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tcc_core::graph::build_named_graph;
    use tcc_core::solvers::{cylindrical_crossing_number, Sequential, SolveStatus};
    use tcc_core::Unlimited;

    #[test]
    fn deadline_expires() {
        let d = Deadline::millis(0);
        assert!((0..2048).any(|_| !d.tick()));
        assert!(!d.tick());
        let d = Deadline::millis(60_000);
        assert!((0..5000).all(|_| d.tick()));
    }

    #[test]
    fn threads_agree_with_sequential() {
        let k5 = build_named_graph("complete", &[5]).unwrap();
        let seq = cylindrical_crossing_number(&k5, 1, &Unlimited, &Sequential);
        let par = cylindrical_crossing_number(&k5, 1, &Unlimited, &Threaded { threads: 4 });
        assert_eq!(par.status, SolveStatus::Optimal);
        assert_eq!(par, seq);
    }
}
