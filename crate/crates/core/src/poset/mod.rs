//! Finite partial orders with the compatibility structure of forcing:
//! `p` and `q` are compatible when some `r ≤ p, q` exists.

mod antichain;
mod product;
mod regular;

use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

pub use antichain::{
    is_antichain, is_maximal_antichain, maximal_antichains, maximal_antichains_capped, DEFAULT_ANTICHAIN_CAP,
};
pub use product::{support_product, support_product_capped, ProductCondition, SupportProduct};
pub use regular::{
    find_reduct, is_regular_suborder, is_suborder, regular_closure, regularity_failure, suborder_failure,
    RegularityFailure,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PosetError {
    #[error("order relation has a cycle through {0} and {1}")]
    Cycle(usize, usize),
    #[error("element {index} out of range for a poset of size {size}")]
    OutOfRange { index: usize, size: usize },
    #[error("designated top {0} is not above every element")]
    NotTop(usize),
    #[error("relation is not a partial order ({0})")]
    NotPartialOrder(&'static str),
    #[error("{what} has {size} elements, over the cap of {cap}")]
    Overflow {
        what: &'static str,
        size: usize,
        cap: usize,
    },
}

/// A partial order on `0..n`, stored as the down-set of every element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    down: Vec<FixedBitSet>,
    top: Option<usize>,
}

/// Reflexive-transitive closure of `strict_pairs` (each `(a, b)` meaning
/// `a < b`).
pub fn build_poset(n: usize, strict_pairs: &[(usize, usize)], top: Option<usize>) -> Result<FinitePoset, PosetError> {
    let mut down: Vec<FixedBitSet> = (0..n)
        .map(|i| {
            let mut s = FixedBitSet::with_capacity(n);
            s.insert(i);
            s
        })
        .collect();
    for &(a, b) in strict_pairs {
        for index in [a, b] {
            if index >= n {
                return Err(PosetError::OutOfRange { index, size: n });
            }
        }
        if a == b {
            return Err(PosetError::Cycle(a, b));
        }
        down[b].insert(a);
    }
    // Warshall: after step k, down-sets are closed under paths through 0..=k.
    for k in 0..n {
        let dk = down[k].clone();
        for (i, d) in down.iter_mut().enumerate() {
            if i != k && d.contains(k) {
                d.union_with(&dk);
            }
        }
    }
    for (b, d) in down.iter().enumerate() {
        if let Some(a) = d.ones().find(|&a| a != b && down[a].contains(b)) {
            return Err(PosetError::Cycle(a.min(b), a.max(b)));
        }
    }
    FinitePoset::with_top(FinitePoset { down, top: None }, top)
}

impl FinitePoset {
    /// The poset given by `leq`, which must be a partial order.
    pub fn from_leq_fn<F: FnMut(usize, usize) -> bool>(
        n: usize,
        leq: F,
        top: Option<usize>,
    ) -> Result<Self, PosetError> {
        let p = Self::from_leq_fn_unchecked(n, leq);
        for b in 0..n {
            if !p.down[b].contains(b) {
                return Err(PosetError::NotPartialOrder("not reflexive"));
            }
            for a in p.down[b].ones() {
                if a != b && p.down[a].contains(b) {
                    return Err(PosetError::NotPartialOrder("not antisymmetric"));
                }
                if !p.down[a].is_subset(&p.down[b]) {
                    return Err(PosetError::NotPartialOrder("not transitive"));
                }
            }
        }
        Self::with_top(p, top)
    }

    pub(crate) fn from_leq_fn_unchecked<F: FnMut(usize, usize) -> bool>(n: usize, mut leq: F) -> Self {
        let down = (0..n)
            .map(|b| {
                let mut s = FixedBitSet::with_capacity(n);
                s.extend((0..n).filter(|&a| leq(a, b)));
                s
            })
            .collect();
        FinitePoset { down, top: None }
    }

    fn with_top(mut self, top: Option<usize>) -> Result<Self, PosetError> {
        if let Some(t) = top {
            if t >= self.len() {
                return Err(PosetError::OutOfRange {
                    index: t,
                    size: self.len(),
                });
            }
            if self.down[t].count_ones(..) != self.len() {
                return Err(PosetError::NotTop(t));
            }
        }
        self.top = top;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.down.len()
    }

    pub fn is_empty(&self) -> bool {
        self.down.is_empty()
    }

    pub fn top(&self) -> Option<usize> {
        self.top
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.down[b].contains(a)
    }

    /// Elements below `p`, including `p`.
    pub fn down_set(&self, p: usize) -> &FixedBitSet {
        &self.down[p]
    }

    pub fn compatible(&self, p: usize, q: usize) -> bool {
        !self.down[p].is_disjoint(&self.down[q])
    }

    /// The least-indexed common extension of `p` and `q`.
    pub fn common_extension(&self, p: usize, q: usize) -> Option<usize> {
        self.down[p].intersection(&self.down[q]).next()
    }

    /// Strict pairs `(a, b)` with `a < b` and nothing in between.
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for b in 0..self.len() {
            for a in self.down[b].ones().filter(|&a| a != b) {
                let between = self.down[b]
                    .ones()
                    .any(|c| c != a && c != b && self.down[c].contains(a));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The order induced on `subset`; element `i` of the result is
    /// `subset[i]`.
    pub fn induced(&self, subset: &[usize]) -> FinitePoset {
        Self::from_leq_fn_unchecked(subset.len(), |a, b| self.leq(subset[a], subset[b]))
    }

    /// The poset itself if it has a top, otherwise a copy with a new greatest
    /// element `n` adjoined. Returns the top as well.
    pub fn with_formal_top(&self) -> (FinitePoset, usize) {
        if let Some(t) = self.top {
            return (self.clone(), t);
        }
        let n = self.len();
        let p = Self::from_leq_fn_unchecked(n + 1, |a, b| b == n || (a < n && self.leq(a, b)));
        (FinitePoset { top: Some(n), ..p }, n)
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<(), PosetError> {
        if index < self.len() {
            Ok(())
        } else {
            Err(PosetError::OutOfRange {
                index,
                size: self.len(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_examples() {
        let p = build_poset(2, &[(0, 1)], None).unwrap();
        assert!(p.leq(0, 1) && !p.leq(1, 0));
        let p = build_poset(3, &[(0, 1), (1, 2)], Some(2)).unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(p.top(), Some(2));
        assert_eq!(p.covering_pairs(), [(0, 1), (1, 2)]);
        assert_eq!(build_poset(2, &[(0, 1), (1, 0)], None), Err(PosetError::Cycle(0, 1)));
        assert_eq!(
            build_poset(3, &[(0, 1), (1, 2), (2, 0)], None),
            Err(PosetError::Cycle(0, 1))
        );
        assert_eq!(build_poset(2, &[(0, 1)], Some(0)), Err(PosetError::NotTop(0)));
        assert!(matches!(
            build_poset(2, &[(0, 5)], None),
            Err(PosetError::OutOfRange { .. })
        ));
    }

    #[test]
    fn compatibility_examples() {
        let v = build_poset(3, &[(0, 1), (0, 2)], None).unwrap();
        assert!(v.compatible(1, 1));
        assert_eq!(v.common_extension(1, 1), Some(0));
        assert!(v.compatible(1, 2));
        assert_eq!(v.common_extension(1, 2), Some(0));
        let anti = build_poset(2, &[], None).unwrap();
        assert!(!anti.compatible(0, 1));
        assert_eq!(anti.common_extension(0, 1), None);
    }

    #[test]
    fn from_leq_fn_validates() {
        assert!(FinitePoset::from_leq_fn(3, |a, b| a <= b, Some(2)).is_ok());
        assert_eq!(
            FinitePoset::from_leq_fn(2, |_, _| true, None),
            Err(PosetError::NotPartialOrder("not antisymmetric"))
        );
        assert_eq!(
            FinitePoset::from_leq_fn(3, |a, b| a == b || (a, b) == (0, 1) || (a, b) == (1, 2), None),
            Err(PosetError::NotPartialOrder("not transitive"))
        );
    }

    #[test]
    fn formal_top() {
        let anti = build_poset(2, &[], None).unwrap();
        let (p, t) = anti.with_formal_top();
        assert_eq!((p.len(), t), (3, 2));
        assert!(p.compatible(0, 2) && !p.compatible(0, 1));
        let chain = build_poset(2, &[(0, 1)], Some(1)).unwrap();
        assert_eq!(chain.with_formal_top(), (chain.clone(), 1));
    }
}
