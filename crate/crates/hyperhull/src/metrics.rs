//! Arithmetic-operation counters.
//!
//! The enumeration algorithms come with per-call operation budgets (loop
//! iterations per `nextpt`, membership tests per `raycast`). The walk code
//! checks those budgets inline; the counters here let tests observe call
//! volumes and confirm that no budget was ever exceeded.
//!
//! Tallies are thread-local so that concurrent walks do not interleave;
//! budget violations are global atomics so a violation on any worker thread
//! is visible to the test that checks for zero at the end.

use std::cell::Cell;
use std::sync::atomic::{AtomicU64, Ordering};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub nextpt_calls: u64,
    pub prev_vertex_calls: u64,
    pub raycast_calls: u64,
    pub membership_tests: u64,
    pub quad_root_calls: u64,
    pub nextpt_loop_iters: u64,
}

impl Tally {
    /// Component-wise difference against an earlier snapshot.
    pub fn since(&self, earlier: &Tally) -> Tally {
        Tally {
            nextpt_calls: self.nextpt_calls - earlier.nextpt_calls,
            prev_vertex_calls: self.prev_vertex_calls - earlier.prev_vertex_calls,
            raycast_calls: self.raycast_calls - earlier.raycast_calls,
            membership_tests: self.membership_tests - earlier.membership_tests,
            quad_root_calls: self.quad_root_calls - earlier.quad_root_calls,
            nextpt_loop_iters: self.nextpt_loop_iters - earlier.nextpt_loop_iters,
        }
    }
}

thread_local! {
    static TALLY: Cell<Tally> = const { Cell::new(Tally {
        nextpt_calls: 0,
        prev_vertex_calls: 0,
        raycast_calls: 0,
        membership_tests: 0,
        quad_root_calls: 0,
        nextpt_loop_iters: 0,
    }) };
}

static NEXTPT_BUDGET_VIOLATIONS: AtomicU64 = AtomicU64::new(0);
static RAYCAST_BUDGET_VIOLATIONS: AtomicU64 = AtomicU64::new(0);

/// Snapshot of this thread's counters.
pub fn snapshot() -> Tally {
    TALLY.with(|t| t.get())
}

pub(crate) fn bump(f: impl FnOnce(&mut Tally)) {
    TALLY.with(|t| {
        let mut v = t.get();
        f(&mut v);
        t.set(v);
    });
}

/// Number of `nextpt` calls, across all threads since process start, whose
/// search loop ran past its iteration budget. Must stay zero.
pub fn nextpt_budget_violations() -> u64 {
    NEXTPT_BUDGET_VIOLATIONS.load(Ordering::Relaxed)
}

/// Number of `raycast` calls that exceeded their membership-test budget.
pub fn raycast_budget_violations() -> u64 {
    RAYCAST_BUDGET_VIOLATIONS.load(Ordering::Relaxed)
}

pub(crate) fn note_nextpt_budget_violation() {
    NEXTPT_BUDGET_VIOLATIONS.fetch_add(1, Ordering::Relaxed);
}

pub(crate) fn note_raycast_budget_violation() {
    RAYCAST_BUDGET_VIOLATIONS.fetch_add(1, Ordering::Relaxed);
}
