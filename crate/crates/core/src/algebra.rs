//! Cost algebra used by every relaxation.
//!
//! A relaxation extends the leaf's path cost by the arc weight and keeps the
//! candidate only if it is strictly better than the current label. Only the
//! min-plus instance is provided; other path algebras can implement the trait
//! as long as `better` is a strict total order and `extend` is monotone.

use std::fmt::Debug;

use crate::graph::{Cost, Weight};

pub trait CostAlgebra {
    type Cost: Copy + Eq + Debug;

    /// Cost of the empty path.
    fn zero(&self) -> Self::Cost;

    fn extend(&self, cost: Self::Cost, weight: Weight) -> Self::Cost;

    /// Strict comparison; `better(a, a)` must be false.
    fn better(&self, a: Self::Cost, b: Self::Cost) -> bool;
}

/// Integer addition with strict less-than.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MinPlus;

pub fn min_plus_algebra() -> MinPlus {
    MinPlus
}

impl CostAlgebra for MinPlus {
    type Cost = Cost;

    #[inline]
    fn zero(&self) -> Cost {
        0
    }

    #[inline]
    fn extend(&self, cost: Cost, weight: Weight) -> Cost {
        cost.saturating_add(weight as Cost)
    }

    #[inline]
    fn better(&self, a: Cost, b: Cost) -> bool {
        a < b
    }
}

/// Record of one relaxation: root cost, leaf cost and the arc weight between.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CostTriple<C> {
    pub root_cost: C,
    pub leaf_cost: C,
    pub arc_weight: Weight,
}

impl<C: Copy + Eq> CostTriple<C> {
    /// True when `root_cost` is the leaf cost extended by the arc.
    pub fn is_consistent<A: CostAlgebra<Cost = C>>(&self, algebra: &A) -> bool {
        algebra.extend(self.leaf_cost, self.arc_weight) == self.root_cost
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_plus_basics() {
        let a = min_plus_algebra();
        assert_eq!(a.extend(3, 4), 7);
        assert!(!a.better(2, 2));
        assert!(a.better(0, 1));
        assert!(!a.better(1, 0));
        assert_eq!(a.extend(a.zero(), 9), 9);
    }

    #[test]
    fn min_plus_laws_exhaustive() {
        let a = MinPlus;
        let costs: Vec<Cost> = (0..=100).collect();
        for &x in &costs {
            assert!(!a.better(x, x));
            for &y in &costs {
                // totality
                if x != y {
                    assert!(a.better(x, y) ^ a.better(y, x));
                }
                for w in 0..=10 {
                    if a.better(x, y) {
                        assert!(a.better(a.extend(x, w), a.extend(y, w)));
                    }
                }
            }
        }
        for x in (0..=100).step_by(7) {
            for y in (0..=100).step_by(5) {
                for z in (0..=100).step_by(3) {
                    if a.better(x, y) && a.better(y, z) {
                        assert!(a.better(x, z));
                    }
                }
            }
        }
        for w in 0..=10 {
            assert_eq!(a.extend(a.zero(), w), w as Cost);
        }
    }

    #[test]
    fn triple_consistency() {
        let t = CostTriple {
            root_cost: 2,
            leaf_cost: 1,
            arc_weight: 1,
        };
        assert!(t.is_consistent(&MinPlus));
        let bad = CostTriple { root_cost: 3, ..t };
        assert!(!bad.is_consistent(&MinPlus));
    }
}
