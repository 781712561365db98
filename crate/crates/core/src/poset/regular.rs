//! Suborders given as subsets `A ⊆ Q` with the induced order.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{maximal_antichains, FinitePoset, PosetError};

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum RegularityFailure {
    /// `p, q ∈ A` are compatible in `Q` but have no common extension in `A`.
    NotSuborder { p: usize, q: usize },
    /// A maximal antichain of `A` that `witness ∈ Q` is incompatible with.
    AntichainNotMaximal { antichain: Vec<usize>, witness: usize },
}

fn check_subset(q: &FinitePoset, a: &[usize]) -> Result<(), PosetError> {
    a.iter().try_for_each(|&x| q.check_index(x))
}

/// The first pair of `A` that is compatible in `Q` without a common
/// extension inside `A`.
pub fn suborder_failure(q: &FinitePoset, a: &[usize]) -> Option<(usize, usize)> {
    for (i, &x) in a.iter().enumerate() {
        for &y in &a[i + 1..] {
            if q.compatible(x, y) && !a.iter().any(|&r| q.leq(r, x) && q.leq(r, y)) {
                return Some((x, y));
            }
        }
    }
    None
}

pub fn is_suborder(q: &FinitePoset, a: &[usize]) -> bool {
    suborder_failure(q, a).is_none()
}

/// Why `A` is not a regular suborder of `Q`, or `None` if it is.
pub fn regularity_failure(q: &FinitePoset, a: &[usize]) -> Result<Option<RegularityFailure>, PosetError> {
    check_subset(q, a)?;
    let a: Vec<usize> = a.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if let Some((p, r)) = suborder_failure(q, &a) {
        return Ok(Some(RegularityFailure::NotSuborder { p, q: r }));
    }
    for local in maximal_antichains(&q.induced(&a))? {
        let antichain: Vec<usize> = local.iter().map(|&i| a[i]).collect();
        if let Some(witness) = (0..q.len()).find(|&x| antichain.iter().all(|&m| !q.compatible(m, x))) {
            return Ok(Some(RegularityFailure::AntichainNotMaximal { antichain, witness }));
        }
    }
    Ok(None)
}

pub fn is_regular_suborder(q: &FinitePoset, a: &[usize]) -> Result<bool, PosetError> {
    Ok(regularity_failure(q, a)?.is_none())
}

/// The least `p ∈ A` all of whose extensions inside `A` are compatible with
/// `x` in `Q`.
pub fn find_reduct(q: &FinitePoset, a: &[usize], x: usize) -> Option<usize> {
    let mut a: Vec<usize> = a.to_vec();
    a.sort_unstable();
    a.iter()
        .copied()
        .find(|&p| a.iter().filter(|&&r| q.leq(r, p)).all(|&r| q.compatible(r, x)))
}

/// Grows `seed` inside `Q` until it is a regular suborder: pairs compatible
/// in `Q` but not in the suborder get their least common extension, and
/// maximal antichains of the suborder that are not maximal in `Q` are
/// extended greedily (least index first) to maximal antichains of `Q`.
pub fn regular_closure(q: &FinitePoset, seed: &[usize]) -> Result<Vec<usize>, PosetError> {
    check_subset(q, seed)?;
    let mut current: BTreeSet<usize> = seed.iter().copied().collect();
    loop {
        let a: Vec<usize> = current.iter().copied().collect();
        if let Some((x, y)) = suborder_failure(q, &a) {
            current.insert(q.common_extension(x, y).expect("compatible in Q"));
            continue;
        }
        let mut grown = false;
        for local in maximal_antichains(&q.induced(&a))? {
            let mut antichain: Vec<usize> = local.iter().map(|&i| a[i]).collect();
            let before = antichain.len();
            while let Some(w) = (0..q.len()).find(|&x| antichain.iter().all(|&m| !q.compatible(m, x))) {
                antichain.push(w);
            }
            if antichain.len() > before {
                current.extend(antichain);
                grown = true;
                break;
            }
        }
        if !grown {
            return Ok(current.into_iter().collect());
        }
    }
}
