use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::{RhoTreeError, TreeNode, TreeView, Verdict};
use crate::cseq::CSequence;
use crate::ordinal::Ordinal;

/// The canonical nodes of an arena at a finite set of levels.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Fragment {
    pub levels: Vec<Ordinal>,
    pub nodes: Vec<TreeNode>,
}

impl Fragment {
    pub fn at_level<'a>(&'a self, level: &'a Ordinal) -> impl Iterator<Item = &'a TreeNode> + 'a {
        self.nodes.iter().filter(move |t| &t.level == level)
    }
}

pub fn fragment<C: CSequence>(view: &mut TreeView<'_, C>, levels: &[Ordinal]) -> Result<Fragment, RhoTreeError> {
    let levels: Vec<Ordinal> = levels.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let mut nodes = Vec::new();
    for level in &levels {
        nodes.extend(view.nodes_at_level(level)?);
    }
    Ok(Fragment { levels, nodes })
}

/// A regressive map on the nodes at the levels in `s_levels`, with colours
/// that should be injective on chains inside each fibre `r⁻¹{t}`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WitnessData {
    pub s_levels: BTreeSet<Ordinal>,
    pub r: BTreeMap<TreeNode, TreeNode>,
    pub colors: BTreeMap<TreeNode, u64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WitnessReport {
    /// S-level nodes of the fragment without an `r` value or colour.
    pub missing: Vec<TreeNode>,
    /// `(t, r(t))` with `r(t)` not below `t`.
    pub not_regressive: Vec<(TreeNode, TreeNode)>,
    /// Comparable nodes in one fibre with the same colour.
    pub chain_collisions: Vec<(TreeNode, TreeNode)>,
}

impl WitnessReport {
    pub fn is_valid(&self) -> bool {
        self.missing.is_empty() && self.not_regressive.is_empty() && self.chain_collisions.is_empty()
    }
}

/// The witness of the avoiding-sequence argument: `r` is
/// [`TreeView::regressive_r`] and a node's colour is the rank of its level in
/// `s_levels`, which separates any two comparable nodes.
pub fn regressive_witness<C: CSequence>(
    view: &mut TreeView<'_, C>,
    fragment: &Fragment,
    s_levels: &[Ordinal],
) -> Result<WitnessData, RhoTreeError> {
    let s_levels: BTreeSet<Ordinal> = s_levels.iter().cloned().collect();
    let rank: BTreeMap<&Ordinal, u64> = s_levels.iter().zip(0..).collect();
    let mut w = WitnessData {
        s_levels: s_levels.clone(),
        ..WitnessData::default()
    };
    for t in fragment.nodes.iter().filter(|t| s_levels.contains(&t.level)) {
        w.r.insert(t.clone(), view.regressive_r(t)?);
        w.colors.insert(t.clone(), rank[&t.level]);
    }
    Ok(w)
}

pub fn verify_witness<C: CSequence>(
    view: &mut TreeView<'_, C>,
    fragment: &Fragment,
    w: &WitnessData,
) -> Result<WitnessReport, RhoTreeError> {
    let mut report = WitnessReport::default();
    let mut fibres: BTreeMap<&TreeNode, Vec<(&TreeNode, u64)>> = BTreeMap::new();
    for t in fragment.nodes.iter().filter(|t| w.s_levels.contains(&t.level)) {
        let (Some(r), Some(&c)) = (w.r.get(t), w.colors.get(t)) else {
            report.missing.push(t.clone());
            continue;
        };
        if view.tree_leq(r, t)? != Verdict::Below {
            report.not_regressive.push((t.clone(), r.clone()));
        }
        fibres.entry(r).or_default().push((t, c));
    }
    for members in fibres.values() {
        for (i, (t0, c0)) in members.iter().enumerate() {
            for (t1, c1) in &members[i + 1..] {
                if c0 == c1 && t0.level != t1.level && matches!(view.tree_leq(t0, t1)?, Verdict::Below | Verdict::Above)
                {
                    report.chain_collisions.push(((*t0).clone(), (*t1).clone()));
                }
            }
        }
    }
    Ok(report)
}

/// The pairs `(r(t), c(t))` along a chain at its S-levels. For a valid
/// witness these are pairwise distinct (the pigeonhole core of the argument
/// that a nonstationary level set admits no cofinal branch); a repeat is
/// returned as the offending pair of nodes.
pub fn chain_signatures(w: &WitnessData, chain: &[TreeNode]) -> Result<Vec<(TreeNode, u64)>, (TreeNode, TreeNode)> {
    let mut seen: BTreeMap<(TreeNode, u64), &TreeNode> = BTreeMap::new();
    let mut out = Vec::new();
    for t in chain.iter().filter(|t| w.s_levels.contains(&t.level)) {
        let (Some(r), Some(&c)) = (w.r.get(t), w.colors.get(t)) else {
            continue;
        };
        let key = (r.clone(), c);
        if let Some(prev) = seen.get(&key) {
            return Err(((*prev).clone(), t.clone()));
        }
        seen.insert(key.clone(), t);
        out.push(key);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cseq::{build_avoiding, standard_csequence, AvoidSet};
    use crate::rhotree::build_arena;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn regressive_witness_is_valid_and_chains_are_injective() {
        let levels = [o("w*2"), o("w^(2)"), o("w^(2)+w")];
        let s = AvoidSet::new(levels.iter().cloned()).unwrap();
        let c = build_avoiding(s, standard_csequence());
        let seed = [
            o("w^(2)*2+5"),
            o("w^(2)+w*2+1"),
            o("w*3+4"),
            o("w^(2)+w*5"),
            o("w^(2)+3"),
        ];
        let a = build_arena(&seed, c, 6).unwrap();
        let mut v = TreeView::new(&a);
        let frag = fragment(&mut v, &levels).unwrap();
        let w = regressive_witness(&mut v, &frag, &levels).unwrap();
        let report = verify_witness(&mut v, &frag, &w).unwrap();
        assert!(report.is_valid(), "{report:?}");

        // Constant colours are fine too, because r is injective on chains.
        let mut flat = w.clone();
        flat.colors.values_mut().for_each(|c| *c = 0);
        assert!(verify_witness(&mut v, &frag, &flat).unwrap().is_valid());

        let top = a.members().last().unwrap().clone();
        let chain: Vec<TreeNode> = levels.iter().map(|l| v.node(l, &top).unwrap()).collect();
        assert_eq!(chain_signatures(&flat, &chain).unwrap().len(), 3);
    }

    #[test]
    fn corrupted_witnesses_are_caught() {
        let levels = [o("w*2"), o("w^(2)")];
        let s = AvoidSet::new(levels.iter().cloned()).unwrap();
        let c = build_avoiding(s, standard_csequence());
        let a = build_arena(&[o("w^(2)+w+1"), o("w*2+3")], c, 4).unwrap();
        let mut v = TreeView::new(&a);
        let frag = fragment(&mut v, &levels).unwrap();
        let good = regressive_witness(&mut v, &frag, &levels).unwrap();

        let mut selfish = good.clone();
        let t = frag.at_level(&levels[1]).next().unwrap().clone();
        selfish.r.insert(t.clone(), t.clone());
        let report = verify_witness(&mut v, &frag, &selfish).unwrap();
        assert_eq!(report.not_regressive, [(t.clone(), t.clone())]);

        // Send a comparable pair into one fibre with one colour.
        let top = a.members().last().unwrap().clone();
        let t0 = v.node(&levels[0], &top).unwrap();
        let t1 = v.node(&levels[1], &top).unwrap();
        let mut merged = good.clone();
        let root = v.node(&Ordinal::zero(), &top).unwrap();
        for t in [&t0, &t1] {
            merged.r.insert(t.clone(), root.clone());
            merged.colors.insert(t.clone(), 9);
        }
        let report = verify_witness(&mut v, &frag, &merged).unwrap();
        assert_eq!(report.chain_collisions, [(t0.clone(), t1.clone())]);
        assert_eq!(chain_signatures(&merged, &[t0.clone(), t1.clone()]), Err((t0, t1)));

        let mut partial = good;
        partial.colors.remove(&t);
        assert_eq!(verify_witness(&mut v, &frag, &partial).unwrap().missing, [t]);
    }
}
