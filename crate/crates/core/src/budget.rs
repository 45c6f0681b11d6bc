use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Default number of search steps before a search gives up.
pub const DEFAULT_WORK_BUDGET: u64 = 100_000_000;

/// Shared step counter for exponential searches.
///
/// Counting is relaxed: parallel workers may overshoot the limit by a few
/// steps before all of them observe it. Exhaustion is always reported as
/// [`Error::BudgetExceeded`], never as a negative answer.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
        }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    #[inline]
    pub fn tick(&self) -> Result<()> {
        let used = self.used.fetch_add(1, Ordering::Relaxed);
        if used >= self.limit {
            Err(Error::BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_WORK_BUDGET)
    }
}
