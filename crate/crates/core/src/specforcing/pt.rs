use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::FiniteTree;

pub const DEFAULT_ENUMERATION_CAP: usize = 200_000;

/// A condition of `P(T)`: a finite partial colouring, injective on chains.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpecCondition {
    assignment: BTreeMap<usize, u64>,
}

impl SpecCondition {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn assignment(&self) -> &BTreeMap<usize, u64> {
        &self.assignment
    }

    pub fn get(&self, t: usize) -> Option<u64> {
        self.assignment.get(&t).copied()
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.assignment.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// `self ⊇ other`, i.e. `self ≤ other` in `P(T)`.
    pub fn extends(&self, other: &SpecCondition) -> bool {
        other.assignment.iter().all(|(t, c)| self.assignment.get(t) == Some(c))
    }

    fn sort_key(&self) -> (Vec<usize>, Vec<u64>) {
        (
            self.assignment.keys().copied().collect(),
            self.assignment.values().copied().collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PtError {
    #[error("nodes {0} and {1} are comparable and share a colour")]
    Invalid(usize, usize),
    #[error("node {0} is not in the tree")]
    NodeOutOfRange(usize),
    #[error("more than {cap} conditions")]
    Overflow { cap: usize },
    #[error("precondition failed: {0}")]
    Precondition(RefuterClause),
}

/// The hypothesis of the tree refuter that an input violates.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RefuterClause {
    #[error("node {node} of dom(q) has level ≥ β")]
    DomainNotBelowBeta { node: usize },
    #[error("level of t must exceed β")]
    TargetNotAboveBeta,
    #[error("q colours the predecessor {node} of t with 0")]
    ZeroBelowTarget { node: usize },
}

fn first_chain_clash(tree: &FiniteTree, assignment: &BTreeMap<usize, u64>) -> Option<(usize, usize)> {
    let items: Vec<(usize, u64)> = assignment.iter().map(|(&t, &c)| (t, c)).collect();
    for (i, &(a, ca)) in items.iter().enumerate() {
        for &(b, cb) in &items[i + 1..] {
            if ca == cb && tree.comparable(a, b) {
                return Some((a, b));
            }
        }
    }
    None
}

pub fn pt_validate(tree: &FiniteTree, assignment: BTreeMap<usize, u64>) -> Result<SpecCondition, PtError> {
    if let Some(&t) = assignment.keys().find(|&&t| t >= tree.len()) {
        return Err(PtError::NodeOutOfRange(t));
    }
    if let Some((a, b)) = first_chain_clash(tree, &assignment) {
        return Err(PtError::Invalid(a, b));
    }
    Ok(SpecCondition { assignment })
}

/// `s₀ ∪ s₁`, if it is a condition.
pub fn pt_union(tree: &FiniteTree, s0: &SpecCondition, s1: &SpecCondition) -> Option<SpecCondition> {
    let mut union = s0.assignment.clone();
    for (&t, &c) in &s1.assignment {
        if *union.entry(t).or_insert(c) != c {
            return None;
        }
    }
    pt_validate(tree, union).ok()
}

/// Two conditions are compatible exactly when their union is a condition.
pub fn pt_compatible(tree: &FiniteTree, s0: &SpecCondition, s1: &SpecCondition) -> bool {
    pt_union(tree, s0, s1).is_some()
}

pub fn pt_enumerate(tree: &FiniteTree, max_dom: usize, color_bound: u64) -> Result<Vec<SpecCondition>, PtError> {
    pt_enumerate_capped(tree, max_dom, color_bound, DEFAULT_ENUMERATION_CAP)
}

/// Every condition with at most `max_dom` nodes and colours below
/// `color_bound`, ordered by domain and then colours.
pub fn pt_enumerate_capped(
    tree: &FiniteTree,
    max_dom: usize,
    color_bound: u64,
    cap: usize,
) -> Result<Vec<SpecCondition>, PtError> {
    let mut out = alloc::vec![SpecCondition::empty()];
    if color_bound > 0 {
        let mut current = BTreeMap::new();
        grow(tree, 0, max_dom, color_bound, cap, &mut current, &mut out)?;
    }
    out.sort_by_cached_key(SpecCondition::sort_key);
    Ok(out)
}

fn grow(
    tree: &FiniteTree,
    from: usize,
    max_dom: usize,
    color_bound: u64,
    cap: usize,
    current: &mut BTreeMap<usize, u64>,
    out: &mut Vec<SpecCondition>,
) -> Result<(), PtError> {
    if current.len() == max_dom {
        return Ok(());
    }
    for t in from..tree.len() {
        for c in 0..color_bound {
            if current.iter().any(|(&s, &cs)| cs == c && tree.comparable(s, t)) {
                continue;
            }
            current.insert(t, c);
            if out.len() == cap {
                return Err(PtError::Overflow { cap });
            }
            out.push(SpecCondition {
                assignment: current.clone(),
            });
            grow(tree, t + 1, max_dom, color_bound, cap, current, out)?;
            current.remove(&t);
        }
    }
    Ok(())
}

/// Given `q` living below level `β` with no 0 below `t`, returns
/// `r = q ∪ {(u, 0)}` for the predecessor `u` of `t` at level `β`. Then `r`
/// extends `q` but is incompatible with `{(t, 0)}`, so `q` is not a reduct
/// of `{(t, 0)}` to the part of `P(T)` below `β`.
pub fn tree_reduct_refuter(
    tree: &FiniteTree,
    q: &SpecCondition,
    t: usize,
    beta: u32,
) -> Result<SpecCondition, PtError> {
    if t >= tree.len() {
        return Err(PtError::NodeOutOfRange(t));
    }
    pt_validate(tree, q.assignment.clone())?;
    if let Some(node) = q.domain().find(|&s| tree.level(s) >= beta) {
        return Err(PtError::Precondition(RefuterClause::DomainNotBelowBeta { node }));
    }
    if tree.level(t) <= beta {
        return Err(PtError::Precondition(RefuterClause::TargetNotAboveBeta));
    }
    if let Some(node) = q.domain().find(|&s| tree.is_below(s, t) && q.get(s) == Some(0)) {
        return Err(PtError::Precondition(RefuterClause::ZeroBelowTarget { node }));
    }
    let u = tree.pred_at_level(t, beta).expect("level(t) > β");
    let mut assignment = q.assignment.clone();
    assignment.insert(u, 0);
    pt_validate(tree, assignment)
}
