use alloc::vec::Vec;

use super::{min_above, AvoidSet, CSeqError, CSequence};
use crate::ordinal::{Class, Ordinal};

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum CSeqViolation {
    /// `C_{ᾱ+1}` is not exactly `{ᾱ}`.
    SuccessorClause {
        alpha: Ordinal,
    },
    UndefinedEntry {
        alpha: Ordinal,
        index: u64,
    },
    NotIncreasing {
        alpha: Ordinal,
        index: u64,
    },
    NotBounded {
        alpha: Ordinal,
        index: u64,
    },
    NotCofinal {
        alpha: Ordinal,
        target: Ordinal,
    },
    HitsAvoidSet {
        alpha: Ordinal,
        member: Ordinal,
    },
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CSeqReport {
    pub checked_levels: usize,
    pub violations: Vec<CSeqViolation>,
}

impl CSeqReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the C-sequence clauses on every arena member.
///
/// Limit levels get their first `probes + 1` entries checked for strict
/// increase and boundedness, and `probes` cofinality targets: the largest
/// arena members below the level, topped up with standard-sequence entries
/// at indices `2^k − 1`. Avoidance of `S` is checked exactly, not only on
/// the sampled entries: `s ∈ C_α` iff the least entry `≥ s` is `s`.
pub fn verify_csequence<C: CSequence + ?Sized>(
    c: &C,
    arena: &[Ordinal],
    avoid: &AvoidSet,
    probes: usize,
) -> CSeqReport {
    let mut report = CSeqReport::default();
    let mut levels: Vec<&Ordinal> = arena.iter().collect();
    levels.sort();
    levels.dedup();
    for alpha in levels.iter().copied() {
        report.checked_levels += 1;
        match alpha.classify() {
            Class::Zero => {}
            Class::Successor(pred) => {
                if c.entry(alpha, 0).as_ref() != Some(&pred) || c.entry(alpha, 1).is_some() {
                    report
                        .violations
                        .push(CSeqViolation::SuccessorClause { alpha: alpha.clone() });
                }
            }
            Class::Limit => check_limit(c, alpha, &levels, avoid, probes, &mut report.violations),
        }
    }
    report
}

fn check_limit<C: CSequence + ?Sized>(
    c: &C,
    alpha: &Ordinal,
    arena: &[&Ordinal],
    avoid: &AvoidSet,
    probes: usize,
    out: &mut Vec<CSeqViolation>,
) {
    let mut prev: Option<Ordinal> = None;
    for i in 0..=probes as u64 {
        let Some(v) = c.entry(alpha, i) else {
            out.push(CSeqViolation::UndefinedEntry {
                alpha: alpha.clone(),
                index: i,
            });
            break;
        };
        if &v >= alpha {
            out.push(CSeqViolation::NotBounded {
                alpha: alpha.clone(),
                index: i,
            });
        }
        if prev.as_ref().is_some_and(|p| p >= &v) {
            out.push(CSeqViolation::NotIncreasing {
                alpha: alpha.clone(),
                index: i,
            });
        }
        prev = Some(v);
    }

    let std = super::standard_csequence();
    let below = arena.iter().rev().filter(|x| **x < alpha).map(|x| (*x).clone());
    let ladder = (0..63u32).filter_map(|k| std.entry(alpha, (1u64 << k) - 1));
    for target in below.chain(ladder).take(probes) {
        if let Err(CSeqError::BudgetExceeded { .. }) = min_above(c, alpha, &target) {
            out.push(CSeqViolation::NotCofinal {
                alpha: alpha.clone(),
                target,
            });
        }
    }

    for s in avoid.below(alpha) {
        if matches!(min_above(c, alpha, s), Ok((v, _)) if &v == s) {
            out.push(CSeqViolation::HitsAvoidSet {
                alpha: alpha.clone(),
                member: s.clone(),
            });
        }
    }
}
