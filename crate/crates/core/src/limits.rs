//! Guards on factorial-size enumerations.

use crate::combinat::MAX_PERM_ORDER;
use crate::error::{Error, Result};

/// Largest column height summed over with permutation tuples, largest
/// glued-column height for the decomposition engine, and largest glued
/// height for the exhaustive class census.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub perm_order: usize,
    pub junction_size: usize,
    pub census_size: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            perm_order: MAX_PERM_ORDER,
            junction_size: 4,
            census_size: 3,
        }
    }
}

impl Limits {
    /// No guards at all.
    pub fn unbounded() -> Self {
        Limits {
            perm_order: usize::MAX,
            junction_size: usize::MAX,
            census_size: usize::MAX,
        }
    }

    pub fn check_perm_order(&self, n: usize) -> Result<()> {
        if n > self.perm_order {
            return Err(Error::Guard {
                what: "column height",
                value: n,
                limit: self.perm_order,
            });
        }
        Ok(())
    }

    pub fn check_junction(&self, n: usize) -> Result<()> {
        if n > self.junction_size {
            return Err(Error::Guard {
                what: "glued column height",
                value: n,
                limit: self.junction_size,
            });
        }
        Ok(())
    }

    pub fn check_census(&self, n: usize) -> Result<()> {
        if n > self.census_size {
            return Err(Error::Guard {
                what: "class census height",
                value: n,
                limit: self.census_size,
            });
        }
        Ok(())
    }
}
