//! Shared step counter that aborts runaway exact computations.
//!
//! One step is one term-level multiply-accumulate inside a polynomial
//! reduction or a fraction-free elimination update.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

pub const DEFAULT_STEP_BUDGET: u64 = 10_000_000;

#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: AtomicU64::new(0) }
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

    /// Records `steps` units of work, failing once the total passes the limit.
    pub fn charge(&self, steps: u64) -> Result<()> {
        let before = self.used.fetch_add(steps, Ordering::Relaxed);
        let now = before.saturating_add(steps);
        if now > self.limit {
            Err(Error::BudgetExceeded { used: now, limit: self.limit })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_STEP_BUDGET)
    }
}
