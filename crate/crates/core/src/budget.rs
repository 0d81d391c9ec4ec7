use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Upper bound on the number of items an exhaustive routine may enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(1 << 20);
    /// Vertex budget for explicit graph exports.
    pub const EXPORT: Budget = Budget(1 << 16);

    pub fn new(limit: u64) -> Result<Self> {
        if limit == 0 {
            return Err(Error::InvalidParameter("budget must be at least 1".into()));
        }
        Ok(Budget(limit))
    }

    pub fn limit(self) -> u64 {
        self.0
    }

    /// Returns `needed` as a `u64` if it fits in the budget.
    pub fn admit(self, needed: &BigUint) -> Result<u64> {
        match needed.to_u64() {
            Some(n) if n <= self.0 => Ok(n),
            _ => Err(Error::BudgetExceeded { needed: needed.clone(), budget: self.0 }),
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}
