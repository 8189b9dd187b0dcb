//! Bounds on the limiting ratio `f(k,g)` of cage order to diameter.

use num_rational::Ratio;

use super::{precondition, Result};
use crate::bounds::moore_bound;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioBound {
    pub k: u64,
    pub g: u64,
    /// `M(k,g) / g`.
    pub lower: Ratio<i64>,
    /// Best known upper bound, if any.
    pub upper: Option<Ratio<i64>>,
}

impl RatioBound {
    /// Keeps the smaller of the current upper bound and `candidate`.
    pub fn tighten(&mut self, candidate: Ratio<i64>) {
        if self.upper.map_or(true, |u| candidate < u) {
            self.upper = Some(candidate);
        }
    }
}

/// `M(k,g)/g <= f(k,g)`, and `f(k,g) <= n(k,g)/g` when the cage order is
/// supplied.
pub fn ratio_bounds(k: u64, g: u64, n_kg: Option<u64>) -> Result<RatioBound> {
    if k < 3 || g < 3 {
        return precondition("need k, g >= 3");
    }
    let m = moore_bound(k, g as i64).map_err(|e| super::ConstructionError::Precondition(e.to_string()))?;
    let gi = g as i64;
    Ok(RatioBound { k, g, lower: Ratio::new(m as i64, gi), upper: n_kg.map(|n| Ratio::new(n as i64, gi)) })
}

/// Slope of a chain of copies of a piece of order `order` whose two
/// attachment vertices are `dist` apart. For even `k` consecutive copies
/// share a vertex; for odd `k` they are joined by an edge.
pub fn chain_ratio(k: u64, order: u64, dist: u64) -> Ratio<i64> {
    if k % 2 == 0 {
        Ratio::new(order as i64 - 1, dist as i64)
    } else {
        Ratio::new(order as i64, dist as i64 + 1)
    }
}
