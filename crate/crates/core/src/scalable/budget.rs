//! Budget-bounded provenance lists.
//!
//! Each list holds at most `capacity` entries. When a merge would overflow,
//! only `⌊keep_fraction · capacity⌋` real entries survive; the mass of the
//! evicted ones is credited to the unknown origin. The unknown entry itself is
//! never evicted and does not count toward the kept quota.
//!
//! Keeping the largest entries favours origins that generated early, since
//! their mass has had longer to pile up. This is left uncorrected.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::proportional::sparse::{sparse_merge, DustSink, SparseProvVector, UNKNOWN_SLOT};

/// Which entries survive a shrink.
#[derive(Clone, Debug, PartialEq)]
pub enum KeepCriterion {
    /// Largest amounts first; ties go to the smaller slot.
    LargestAmount,
    /// Slots ranked by importance, most important first. Unranked slots come
    /// after every ranked one and are ordered by amount.
    Priority(Vec<u32>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Budget {
    capacity: usize,
    keep_fraction: f64,
    criterion: KeepCriterion,
    rank: HashMap<u32, usize>,
}

impl Budget {
    pub const DEFAULT_KEEP_FRACTION: f64 = 0.7;

    pub fn new(capacity: usize, keep_fraction: f64) -> Result<Self> {
        Self::with_criterion(capacity, keep_fraction, KeepCriterion::LargestAmount)
    }

    pub fn with_criterion(
        capacity: usize,
        keep_fraction: f64,
        criterion: KeepCriterion,
    ) -> Result<Self> {
        if capacity < 2 {
            return Err(Error::config(format!(
                "budget capacity must be at least 2 (one origin plus unknown), got {capacity}"
            )));
        }
        if !(keep_fraction > 0.0 && keep_fraction < 1.0) {
            return Err(Error::config(format!(
                "budget keep fraction must lie in (0, 1), got {keep_fraction}"
            )));
        }
        let rank = match &criterion {
            KeepCriterion::Priority(order) => {
                order.iter().enumerate().map(|(i, &s)| (s, i)).collect()
            }
            KeepCriterion::LargestAmount => HashMap::new(),
        };
        Ok(Budget {
            capacity,
            keep_fraction,
            criterion,
            rank,
        })
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn keep_fraction(&self) -> f64 {
        self.keep_fraction
    }

    pub fn criterion(&self) -> &KeepCriterion {
        &self.criterion
    }

    /// Real entries retained by a shrink.
    pub fn keep_count(&self) -> usize {
        // The small bias absorbs representation error such as 0.6 * 5.
        let k = (self.keep_fraction * self.capacity as f64 + 1e-9).floor() as usize;
        k.clamp(1, self.capacity - 1)
    }

    fn cmp_keep(&self, a: &(u32, f64), b: &(u32, f64)) -> Ordering {
        let by_amount = b.1.total_cmp(&a.1).then(a.0.cmp(&b.0));
        match self.criterion {
            KeepCriterion::LargestAmount => by_amount,
            KeepCriterion::Priority(_) => {
                let ra = self.rank.get(&a.0).copied().unwrap_or(usize::MAX);
                let rb = self.rank.get(&b.0).copied().unwrap_or(usize::MAX);
                ra.cmp(&rb).then(by_amount)
            }
        }
    }

    /// Cuts an overflowing list down. Returns `None` if it already fits.
    pub fn shrink(&self, list: &SparseProvVector) -> Option<SparseProvVector> {
        if list.len() <= self.capacity {
            return None;
        }
        let mut unknown = 0.0;
        let mut real: Vec<(u32, f64)> = Vec::with_capacity(list.len());
        for &(slot, q) in list.entries() {
            if slot == UNKNOWN_SLOT {
                unknown += q;
            } else {
                real.push((slot, q));
            }
        }
        let keep = self.keep_count();
        if real.len() > keep {
            real.select_nth_unstable_by(keep, |a, b| self.cmp_keep(a, b));
            unknown += real[keep..].iter().map(|e| e.1).sum::<f64>();
            real.truncate(keep);
        }
        real.sort_unstable_by_key(|e| e.0);
        if unknown > 0.0 {
            real.push((UNKNOWN_SLOT, unknown));
        }
        Some(SparseProvVector::from_sorted(real))
    }
}

/// Outcome of merging new entries into a budgeted list.
#[derive(Clone, Debug, PartialEq)]
pub struct BudgetMerge {
    pub vector: SparseProvVector,
    pub shrunk: bool,
    pub dropped: f64,
}

/// Merges `scale · new_entries` into `list`, shrinking if the result would
/// exceed the budget.
pub fn budget_shrink(
    list: &SparseProvVector,
    new_entries: &SparseProvVector,
    scale: f64,
    budget: &Budget,
    eps: f64,
) -> BudgetMerge {
    let merged = sparse_merge(list, new_entries, scale, eps, DustSink::Fold(UNKNOWN_SLOT));
    match budget.shrink(&merged.vector) {
        Some(vector) => BudgetMerge {
            vector,
            shrunk: true,
            dropped: merged.dropped,
        },
        None => BudgetMerge {
            vector: merged.vector,
            shrunk: false,
            dropped: merged.dropped,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const V: u32 = 0;
    const U: u32 = 1;
    const W: u32 = 2;
    const Z: u32 = 3;
    const X: u32 = 4;
    const Y: u32 = 5;

    fn sv(e: &[(u32, f64)]) -> SparseProvVector {
        SparseProvVector::from_unsorted(e.to_vec())
    }

    #[test]
    fn worked_shrink_example() {
        let p = sv(&[(V, 1.0), (U, 3.0), (W, 2.0), (Z, 1.0)]);
        let new = sv(&[(X, 2.0), (W, 1.0), (Y, 4.0)]);
        let budget = Budget::new(5, 0.6).unwrap();
        assert_eq!(budget.keep_count(), 3);
        let out = budget_shrink(&p, &new, 1.0, &budget, 1e-9);
        assert!(out.shrunk);
        assert_eq!(
            out.vector.entries(),
            &[(U, 3.0), (W, 3.0), (Y, 4.0), (UNKNOWN_SLOT, 4.0)]
        );
    }

    #[test]
    fn fitting_merge_does_not_shrink() {
        let p = sv(&[(V, 1.0)]);
        let new = sv(&[(U, 2.0)]);
        let out = budget_shrink(&p, &new, 1.0, &Budget::new(2, 0.7).unwrap(), 1e-9);
        assert!(!out.shrunk);
        assert_eq!(out.vector.entries(), &[(V, 1.0), (U, 2.0)]);
    }

    #[test]
    fn unknown_is_kept_and_extended() {
        let p = sv(&[(V, 1.0), (U, 5.0), (UNKNOWN_SLOT, 2.0)]);
        let new = sv(&[(W, 3.0)]);
        let budget = Budget::new(3, 0.5).unwrap();
        let out = budget_shrink(&p, &new, 1.0, &budget, 1e-9);
        assert_eq!(out.vector.entries(), &[(U, 5.0), (UNKNOWN_SLOT, 6.0)]);
        assert_eq!(out.vector.sum(), 11.0);
    }

    #[test]
    fn tie_on_amount_prefers_smaller_slot() {
        let p = sv(&[(7, 1.0), (3, 1.0), (5, 1.0)]);
        let budget = Budget::new(2, 0.5).unwrap();
        let out = budget.shrink(&p).unwrap();
        assert_eq!(out.entries(), &[(3, 1.0), (UNKNOWN_SLOT, 2.0)]);
    }

    #[test]
    fn priority_criterion() {
        let p = sv(&[(1, 10.0), (2, 1.0), (3, 5.0), (4, 0.5)]);
        let budget = Budget::with_criterion(3, 0.7, KeepCriterion::Priority(vec![4, 2])).unwrap();
        let out = budget.shrink(&p).unwrap();
        assert_eq!(out.entries(), &[(2, 1.0), (4, 0.5), (UNKNOWN_SLOT, 15.0)]);
    }

    #[test]
    fn config_errors() {
        assert!(Budget::new(1, 0.5).is_err());
        assert!(Budget::new(5, 1.0).is_err());
        assert!(Budget::new(5, 0.0).is_err());
    }
}
