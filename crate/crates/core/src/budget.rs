//! Step and wall-clock budgets shared by all engine calls.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// A cloneable budget. Clones share the step counter so that work spread over
/// threads is charged to one account.
#[derive(Clone, Debug)]
pub struct Budget {
    deadline: Option<Instant>,
    max_steps: Option<u64>,
    steps: Arc<AtomicU64>,
    /// Upper bound on the number of nonzero entries of a single matrix the
    /// linear algebra layer is allowed to build.
    pub max_matrix_entries: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self::unlimited()
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Self {
            deadline: None,
            max_steps: None,
            steps: Arc::new(AtomicU64::new(0)),
            max_matrix_entries: 200_000_000,
        }
    }

    pub fn with_timeout(t: Duration) -> Self {
        Self { deadline: Some(Instant::now() + t), ..Self::unlimited() }
    }

    pub fn with_steps(n: u64) -> Self {
        Self { max_steps: Some(n), ..Self::unlimited() }
    }

    pub fn steps_used(&self) -> u64 {
        self.steps.load(Ordering::Relaxed)
    }

    /// Charges `n` steps and fails if the budget is exhausted.
    #[inline]
    pub fn charge(&self, n: u64, stage: &str) -> Result<()> {
        let used = self.steps.fetch_add(n, Ordering::Relaxed) + n;
        if let Some(max) = self.max_steps {
            if used > max {
                return Err(Error::Budget {
                    stage: stage.to_string(),
                    partial: format!("{used} steps used of {max}"),
                });
            }
        }
        if used % 64 < n.max(1) || n >= 64 {
            self.check_time(stage)?;
        }
        Ok(())
    }

    pub fn check_time(&self, stage: &str) -> Result<()> {
        if let Some(d) = self.deadline {
            if Instant::now() > d {
                return Err(Error::Budget {
                    stage: stage.to_string(),
                    partial: "deadline passed".to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn check_matrix(&self, entries: usize, stage: &str) -> Result<()> {
        if entries > self.max_matrix_entries {
            return Err(Error::Budget {
                stage: stage.to_string(),
                partial: format!("matrix with {entries} entries exceeds {}", self.max_matrix_entries),
            });
        }
        Ok(())
    }
}
