//! Size limits protecting the exponential-time routines.

use crate::error::{Error, Result};

pub const DEFAULT_MAX_FIELD: u64 = 1 << 16;
pub const DEFAULT_MAX_NAIVE: usize = 9;
pub const DEFAULT_MAX_RYSER: usize = 24;
pub const DEFAULT_MAX_BELL: usize = 12;
pub const DEFAULT_MAX_ORACLE: u64 = 40_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guards {
    /// Largest field order accepted by `FieldCtx::build`.
    pub max_field: u64,
    /// Largest dimension for the n! expansion.
    pub max_naive: usize,
    /// Largest dimension for Ryser's formula.
    pub max_ryser: usize,
    /// Largest ground set for set-partition enumeration.
    pub max_bell: usize,
    /// Largest number of permutations the brute-force oracle may visit.
    pub max_oracle: u64,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            max_field: DEFAULT_MAX_FIELD,
            max_naive: DEFAULT_MAX_NAIVE,
            max_ryser: DEFAULT_MAX_RYSER,
            max_bell: DEFAULT_MAX_BELL,
            max_oracle: DEFAULT_MAX_ORACLE,
        }
    }
}

pub(crate) fn check(guard: &'static str, value: u128, limit: u128) -> Result<()> {
    if value > limit {
        Err(Error::Guard { guard, value, limit })
    } else {
        Ok(())
    }
}

/// Knobs shared by every counting route.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub guards: Guards,
    /// Worker count for Ryser and the oracle; 0 and 1 both mean sequential.
    pub threads: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            guards: Guards::default(),
            threads: 1,
        }
    }
}

impl Config {
    pub fn with_threads(threads: usize) -> Self {
        Config {
            threads,
            ..Config::default()
        }
    }

    pub(crate) fn workers(&self) -> usize {
        self.threads.max(1)
    }
}
