//! The poset of pairs `p = ⟨s_p, a_p⟩` where `s_p` is a finite sequence of
//! binary strings shorter than `λ` and `a_p` a finite subset of
//! `X ⊆ {0,1}^λ`. `p ≤ q` iff `s_q ⊑ s_p`, `a_q ⊆ a_p`, and no new entry
//! `s_p(i)` (`n_q ≤ i < n_p`) is an initial segment of a member of `a_q`.
//!
//! Conditions with the same first component are compatible, yet no condition
//! is a reduct of `⟨∅, {x}⟩`: appending a string that separates `x` from
//! `a_q` yields an extension incompatible with it.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::poset::FinitePoset;

pub const MAX_LAMBDA: u8 = 6;
pub const MAX_X: usize = 16;
pub const DEFAULT_FRAGMENT_CAP: usize = 4096;

/// A binary string of length at most 63; bit `i` is the `i`-th character.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitString {
    len: u8,
    bits: u64,
}

impl BitString {
    pub const EMPTY: BitString = BitString { len: 0, bits: 0 };

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bit(&self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    /// The initial segment of length `n ≤ len`.
    pub fn restrict(&self, n: usize) -> BitString {
        assert!(n <= self.len(), "restriction longer than the string");
        let mask = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
        BitString {
            len: n as u8,
            bits: self.bits & mask,
        }
    }

    /// `self ⊑ other`.
    pub fn is_prefix_of(&self, other: &BitString) -> bool {
        self.len <= other.len && other.restrict(self.len()) == *self
    }

    /// All strings of length `n`, in increasing numeric order of their bits.
    pub fn all_of_length(n: usize) -> impl Iterator<Item = BitString> {
        (0..1u64 << n).map(move |bits| BitString { len: n as u8, bits })
    }

    fn common_prefix_len(&self, other: &BitString) -> usize {
        let n = self.len.min(other.len) as usize;
        (0..n).take_while(|&i| self.bit(i) == other.bit(i)).count()
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.bit(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for BitString {
    type Err = LinkedError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.len() > 63 {
            return Err(LinkedError::BadString(s.into()));
        }
        let mut bits = 0u64;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(LinkedError::BadString(s.into())),
            }
        }
        Ok(BitString {
            len: s.len() as u8,
            bits,
        })
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for BitString {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for BitString {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = <String as serde::Deserialize>::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinkedError {
    #[error("not a binary string: {0:?}")]
    BadString(String),
    #[error("parameters out of range: {0}")]
    BadParams(&'static str),
    #[error("fragment has more than {cap} conditions")]
    Overflow { cap: usize },
    #[error("{0} is not in X")]
    NotInX(BitString),
    #[error("precondition failed: x is already in a_q")]
    XInAq,
    #[error("no α < λ separates x from every member of a_q")]
    NoSeparator,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LinkedCondition {
    pub s: Vec<BitString>,
    pub a: BTreeSet<BitString>,
}

/// `p ≤ q`.
pub fn linked_leq(p: &LinkedCondition, q: &LinkedCondition) -> bool {
    p.s.len() >= q.s.len()
        && p.s[..q.s.len()] == q.s[..]
        && q.a.is_subset(&p.a)
        && p.s[q.s.len()..]
            .iter()
            .all(|si| q.a.iter().all(|x| !si.is_prefix_of(x)))
}

/// Size bounds for a finite fragment of the poset.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LinkedParams {
    pub lambda: u8,
    pub x: BTreeSet<BitString>,
    pub max_n: usize,
    pub max_a: usize,
}

impl LinkedParams {
    fn check(&self) -> Result<(), LinkedError> {
        if self.lambda == 0 || self.lambda > MAX_LAMBDA {
            return Err(LinkedError::BadParams("λ must be between 1 and 6"));
        }
        if self.x.len() > MAX_X {
            return Err(LinkedError::BadParams("X has more than 16 strings"));
        }
        if self.x.iter().any(|x| x.len() != self.lambda as usize) {
            return Err(LinkedError::BadParams("members of X must have length λ"));
        }
        Ok(())
    }
}

/// All conditions with `n_p ≤ max_n` and `|a_p| ≤ max_a`, ordered by the
/// linked order.
#[derive(Debug, Clone)]
pub struct LinkedFragment {
    pub params: LinkedParams,
    conditions: Vec<LinkedCondition>,
    index: BTreeMap<LinkedCondition, usize>,
    poset: FinitePoset,
}

impl LinkedFragment {
    pub fn conditions(&self) -> &[LinkedCondition] {
        &self.conditions
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn index_of(&self, p: &LinkedCondition) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Compatibility inside the fragment, by brute force over its elements.
    pub fn compatible(&self, p: &LinkedCondition, q: &LinkedCondition) -> Option<bool> {
        Some(self.poset.compatible(self.index_of(p)?, self.index_of(q)?))
    }
}

pub fn build_linked_poset(params: LinkedParams) -> Result<LinkedFragment, LinkedError> {
    build_linked_poset_capped(params, DEFAULT_FRAGMENT_CAP)
}

pub fn build_linked_poset_capped(params: LinkedParams, cap: usize) -> Result<LinkedFragment, LinkedError> {
    params.check()?;
    let strings: Vec<BitString> = (0..params.lambda as usize).flat_map(BitString::all_of_length).collect();
    let mut sequences: Vec<Vec<BitString>> = alloc::vec![Vec::new()];
    let mut layer: Vec<Vec<BitString>> = alloc::vec![Vec::new()];
    for _ in 0..params.max_n {
        layer = layer
            .iter()
            .flat_map(|s| {
                strings.iter().map(move |x| {
                    let mut t = s.clone();
                    t.push(*x);
                    t
                })
            })
            .collect();
        sequences.extend(layer.iter().cloned());
        if sequences.len() > cap {
            return Err(LinkedError::Overflow { cap });
        }
    }
    let xs: Vec<BitString> = params.x.iter().copied().collect();
    let mut sets: Vec<BTreeSet<BitString>> = Vec::new();
    for mask in 0u32..1 << xs.len() {
        if mask.count_ones() as usize <= params.max_a {
            sets.push((0..xs.len()).filter(|i| mask >> i & 1 == 1).map(|i| xs[i]).collect());
        }
    }
    sets.sort_by_key(|a| (a.len(), a.iter().copied().collect::<Vec<_>>()));
    if sequences.len().saturating_mul(sets.len()) > cap {
        return Err(LinkedError::Overflow { cap });
    }
    let conditions: Vec<LinkedCondition> = sequences
        .iter()
        .flat_map(|s| {
            sets.iter().map(move |a| LinkedCondition {
                s: s.clone(),
                a: a.clone(),
            })
        })
        .collect();
    let index = conditions.iter().cloned().zip(0..).collect();
    let poset = FinitePoset::from_leq_fn_unchecked(conditions.len(), |i, j| linked_leq(&conditions[i], &conditions[j]));
    Ok(LinkedFragment {
        params,
        conditions,
        index,
        poset,
    })
}

/// `r ⊥ ⟨∅, {x}⟩` read off syntactically: some entry of `s_r` is an initial
/// segment of `x`, so no extension of `r` can lie below `⟨∅, {x}⟩`.
pub fn syntactic_incompatible(r: &LinkedCondition, x: &BitString) -> bool {
    r.s.iter().any(|si| si.is_prefix_of(x))
}

/// `r = ⟨s_q ⌢ x↾α, a_q⟩` for the least `α` with `x↾α ≠ y↾α` for every
/// `y ∈ a_q`: an extension of `q` incompatible with `⟨∅, {x}⟩`.
pub fn linked_reduct_refuter(
    params: &LinkedParams,
    q: &LinkedCondition,
    x: &BitString,
) -> Result<LinkedCondition, LinkedError> {
    params.check()?;
    if !params.x.contains(x) {
        return Err(LinkedError::NotInX(*x));
    }
    if q.a.contains(x) {
        return Err(LinkedError::XInAq);
    }
    // The least separating α is one past the longest common prefix; α = 0
    // would append the empty string, which is an initial segment of
    // everything, and α = λ is not a legal entry.
    let alpha = match q.a.iter().map(|y| x.common_prefix_len(y)).max() {
        None => return Err(LinkedError::NoSeparator),
        Some(l) => l + 1,
    };
    if alpha >= params.lambda as usize {
        return Err(LinkedError::NoSeparator);
    }
    let mut r = q.clone();
    r.s.push(x.restrict(alpha));
    Ok(r)
}
