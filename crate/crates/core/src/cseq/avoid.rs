use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{search_min_above, CSeqError, CSequence};
use crate::ordinal::Ordinal;

/// A finite set of limit ordinals to be avoided by C-sequences.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AvoidSet {
    members: BTreeSet<Ordinal>,
}

impl AvoidSet {
    pub fn new<I: IntoIterator<Item = Ordinal>>(members: I) -> Result<Self, CSeqError> {
        let members: BTreeSet<Ordinal> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|m| !m.is_limit()) {
            return Err(CSeqError::NotLimit(bad.clone()));
        }
        Ok(AvoidSet { members })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn contains(&self, x: &Ordinal) -> bool {
        self.members.contains(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Ordinal> + '_ {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn below<'a>(&'a self, alpha: &Ordinal) -> impl Iterator<Item = &'a Ordinal> + 'a {
        self.members.range(..alpha)
    }
}

/// `base`, with limit-level entries pushed off `S`.
///
/// An entry that lands on `s ∈ S` becomes `s+1` and later entries are pushed
/// up as far as needed to keep the sequence strictly increasing:
/// `C'(i) = max(bump(C(i)), C'(i−1)+1)`. Unrolled, this is
/// `max(C(i), s_j+1+(i−j))` over the indices `j ≤ i` with `C(j) = s_j ∈ S`,
/// which is what [`CSequence::entry`] evaluates. Successor levels are left
/// alone.
#[derive(Debug, Clone)]
pub struct AvoidingCSequence<C> {
    base: C,
    avoid: AvoidSet,
}

pub fn build_avoiding<C: CSequence>(avoid: AvoidSet, base: C) -> AvoidingCSequence<C> {
    AvoidingCSequence { base, avoid }
}

impl<C: CSequence> AvoidingCSequence<C> {
    pub fn avoid_set(&self) -> &AvoidSet {
        &self.avoid
    }

    pub fn base(&self) -> &C {
        &self.base
    }

    /// Indices of `C_α` (in the base sequence) that land in `S`, with the
    /// member hit.
    fn hits(&self, alpha: &Ordinal) -> Vec<(u64, &Ordinal)> {
        self.avoid
            .below(alpha)
            .filter_map(|s| match self.base.min_above(alpha, s) {
                Ok((v, pos)) if &v == s => Some((pos, s)),
                _ => None,
            })
            .collect()
    }
}

impl<C: CSequence> AvoidingCSequence<C> {
    fn entry_with_hits(&self, alpha: &Ordinal, i: u64, hits: &[(u64, &Ordinal)]) -> Option<Ordinal> {
        let mut value = self.base.entry(alpha, i)?;
        for &(j, s) in hits {
            if j <= i {
                let pushed = s.add_nat(1 + (i - j));
                if pushed > value {
                    value = pushed;
                }
            }
        }
        // Cannot happen for finite S below a limit, but never hand out an
        // entry that is not below α.
        (&value < alpha).then_some(value)
    }
}

impl<C: CSequence> CSequence for AvoidingCSequence<C> {
    fn entry(&self, alpha: &Ordinal, i: u64) -> Option<Ordinal> {
        if !alpha.is_limit() {
            return self.base.entry(alpha, i);
        }
        self.entry_with_hits(alpha, i, &self.hits(alpha))
    }

    fn min_above(&self, alpha: &Ordinal, xi: &Ordinal) -> Result<(Ordinal, u64), CSeqError> {
        if !alpha.is_limit() {
            return self.base.min_above(alpha, xi);
        }
        let hits = self.hits(alpha);
        if hits.is_empty() {
            return self.base.min_above(alpha, xi);
        }
        search_min_above(|i| self.entry_with_hits(alpha, i, &hits), alpha, xi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cseq::standard_csequence;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn rejects_non_limits() {
        assert_eq!(AvoidSet::new([o("w+1")]), Err(CSeqError::NotLimit(o("w+1"))));
        assert_eq!(AvoidSet::new([o("3")]), Err(CSeqError::NotLimit(o("3"))));
        assert!(AvoidSet::new([o("w"), o("w^(2)")]).is_ok());
    }

    #[test]
    fn empty_set_changes_nothing() {
        let std = standard_csequence();
        let c = build_avoiding(AvoidSet::empty(), std);
        for alpha in ["w", "w*2", "w^(2)+w*3", "w+5", "w^(w)"] {
            for i in 0..20 {
                assert_eq!(c.entry(&o(alpha), i), std.entry(&o(alpha), i));
            }
        }
    }

    #[test]
    fn avoids_omega_below_omega_two() {
        let c = build_avoiding(AvoidSet::new([o("w")]).unwrap(), standard_csequence());
        let alpha = o("w*2");
        let entries: Vec<Ordinal> = (0..100).map(|i| c.entry(&alpha, i).unwrap()).collect();
        assert!(entries.iter().all(|e| e != &o("w")));
        assert!(entries.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(entries[0], o("w+1"));
        assert_eq!(entries[1], o("w+2"));
        assert_eq!(entries[99], o("w+100"));
        // Successor levels keep C_{ᾱ+1} = {ᾱ} even when ᾱ ∈ S.
        assert_eq!(c.entry(&o("w+1"), 0), Some(o("w")));
    }

    #[test]
    fn cascade_through_several_hits() {
        // C_{ω²} = ⟨0, ω, ω·2, ω·3, …⟩ with ω and ω·2 removed.
        let s = AvoidSet::new([o("w"), o("w*2")]).unwrap();
        let c = build_avoiding(s, standard_csequence());
        let alpha = o("w^(2)");
        let got: Vec<Ordinal> = (0..5).map(|i| c.entry(&alpha, i).unwrap()).collect();
        assert_eq!(got, [o("0"), o("w+1"), o("w*2+1"), o("w*3"), o("w*4")]);
    }

    #[test]
    fn bump_collides_with_next_base_entry() {
        // The bumped value ω+1 equals the next base entry, which must move up.
        let s = AvoidSet::new([o("w")]).unwrap();
        let c = build_avoiding(s, standard_csequence());
        let alpha = o("w+w");
        assert_eq!(c.entry(&alpha, 0), Some(o("w+1")));
        assert_eq!(c.entry(&alpha, 1), Some(o("w+2")));
    }
}
