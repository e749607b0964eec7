use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

/// Wall-clock limit shared by the workers of one search.
pub(crate) struct Deadline {
    until: Option<Instant>,
    expired: AtomicBool,
}

/// Nodes visited between clock reads.
pub(crate) const CHECK_INTERVAL: u64 = 1 << 16;

impl Deadline {
    pub(crate) fn new(budget: Option<Duration>) -> Self {
        Deadline {
            until: budget.map(|b| Instant::now() + b),
            expired: AtomicBool::new(false),
        }
    }

    /// Reads the clock; true once the budget is spent.
    pub(crate) fn check(&self) -> bool {
        if self.expired.load(Ordering::Relaxed) {
            return true;
        }
        if self.until.is_some_and(|u| Instant::now() >= u) {
            self.expired.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }

    pub(crate) fn is_expired(&self) -> bool {
        self.expired.load(Ordering::Relaxed)
    }
}
