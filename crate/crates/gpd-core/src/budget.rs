//! Search budgets. `ORBKIT_BUDGET` overrides every default limit.

use std::sync::OnceLock;

pub const ISO_NODES: u64 = 1_000_000;
pub const NERVE_GENERATORS: u64 = 100_000;
pub const NAIVE_ENUM_THRESHOLD: u64 = 10_000;
pub const ENUM_NODES: u64 = 5_000_000;
pub const TIETZE_STEPS: u64 = 1_000;

fn env_override() -> Option<u64> {
    static CELL: OnceLock<Option<u64>> = OnceLock::new();
    *CELL.get_or_init(|| {
        std::env::var("ORBKIT_BUDGET")
            .ok()
            .and_then(|s| s.trim().parse().ok())
    })
}

/// A node limit for one search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    /// The given default unless `ORBKIT_BUDGET` is set.
    pub fn or_env(default: u64) -> Budget {
        Budget(env_override().unwrap_or(default))
    }

    pub fn unlimited() -> Budget {
        Budget(u64::MAX)
    }

    pub fn meter(self) -> Meter {
        Meter { limit: self.0, used: 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("budget of {limit} exhausted")]
pub struct Exhausted {
    pub limit: u64,
}

/// Counts search nodes against a limit.
#[derive(Clone, Debug)]
pub struct Meter {
    limit: u64,
    used: u64,
}

impl Meter {
    pub fn tick(&mut self) -> Result<(), Exhausted> {
        self.add(1)
    }

    pub fn add(&mut self, n: u64) -> Result<(), Exhausted> {
        self.used = self.used.saturating_add(n);
        if self.used > self.limit {
            Err(Exhausted { limit: self.limit })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }
}
