use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::{Arena, RhoTreeError, TreeNode};
use crate::cseq::CSequence;
use crate::ordinal::Ordinal;
use crate::walks::{rho0, Rho0Code};

/// Outcome of comparing two nodes on their probes.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Verdict {
    /// `t₀ <_T t₁` as far as the probes can tell.
    Below,
    Above,
    /// Same level and no probe tells the two apart.
    EqualOnProbes,
    /// The codes differ at this ordinal, so the nodes are incomparable (or,
    /// at equal levels, distinct).
    Distinct(Ordinal),
}

/// Memoized access to the tree of an arena. The cache belongs to the view,
/// so a view is cheap to make and should not be shared between threads.
pub struct TreeView<'a, C> {
    arena: &'a Arena<C>,
    cache: BTreeMap<(Ordinal, Ordinal), Rho0Code>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SplitViolation {
    pub pair: (TreeNode, TreeNode),
    pub reason: &'static str,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct NonSplittingReport {
    /// Identical nodes: nothing to check.
    pub trivial: usize,
    /// Distinct pairs and the level below λ where they already differ.
    pub confirmed: Vec<(TreeNode, TreeNode, Ordinal)>,
    /// Pairs the probes cannot separate.
    pub unresolved: Vec<(TreeNode, TreeNode)>,
    pub violations: Vec<SplitViolation>,
}

impl<'a, C: CSequence> TreeView<'a, C> {
    pub fn new(arena: &'a Arena<C>) -> Self {
        TreeView {
            arena,
            cache: BTreeMap::new(),
        }
    }

    pub fn arena(&self) -> &'a Arena<C> {
        self.arena
    }

    /// `ρ₀(ξ, β)`.
    pub fn code(&mut self, xi: &Ordinal, beta: &Ordinal) -> Result<Rho0Code, RhoTreeError> {
        let key = (xi.clone(), beta.clone());
        if let Some(code) = self.cache.get(&key) {
            return Ok(code.clone());
        }
        let code = rho0(self.arena.cseq(), xi, beta)?;
        self.cache.insert(key, code.clone());
        Ok(code)
    }

    /// The first point where `ρ₀(·,b0)` and `ρ₀(·,b1)` differ.
    fn first_difference(
        &mut self,
        points: &[Ordinal],
        b0: &Ordinal,
        b1: &Ordinal,
    ) -> Result<Option<Ordinal>, RhoTreeError> {
        if b0 == b1 {
            return Ok(None);
        }
        for xi in points {
            if self.code(xi, b0)? != self.code(xi, b1)? {
                return Ok(Some(xi.clone()));
            }
        }
        Ok(None)
    }

    /// The canonical node `ρ₀(·,β)↾α`.
    pub fn node(&mut self, alpha: &Ordinal, beta: &Ordinal) -> Result<TreeNode, RhoTreeError> {
        if beta < alpha {
            return Err(RhoTreeError::SourceBelowLevel {
                level: alpha.clone(),
                beta: beta.clone(),
            });
        }
        let probes = self.arena.probes(alpha).into_owned();
        let start = self.arena.members().partition_point(|w| w < alpha);
        for cand in &self.arena.members()[start..] {
            if cand >= beta {
                break;
            }
            if self.first_difference(&probes, cand, beta)?.is_none() {
                return Ok(TreeNode::restriction(alpha.clone(), cand.clone()));
            }
        }
        Ok(TreeNode::restriction(alpha.clone(), beta.clone()))
    }

    /// All canonical nodes at level `alpha` with an arena source, by source.
    pub fn nodes_at_level(&mut self, alpha: &Ordinal) -> Result<Vec<TreeNode>, RhoTreeError> {
        let probes = self.arena.probes(alpha).into_owned();
        let start = self.arena.members().partition_point(|w| w < alpha);
        let mut seen: BTreeSet<Vec<Rho0Code>> = BTreeSet::new();
        let mut out = Vec::new();
        for beta in &self.arena.members()[start..] {
            let codes = probes
                .iter()
                .map(|xi| self.code(xi, beta))
                .collect::<Result<Vec<_>, _>>()?;
            if seen.insert(codes) {
                out.push(TreeNode::restriction(alpha.clone(), beta.clone()));
            }
        }
        Ok(out)
    }

    pub fn tree_leq(&mut self, t0: &TreeNode, t1: &TreeNode) -> Result<Verdict, RhoTreeError> {
        if t0 == t1 {
            return Ok(Verdict::EqualOnProbes);
        }
        let (lo, hi) = if t0.level <= t1.level { (t0, t1) } else { (t1, t0) };
        let mut points: BTreeSet<Ordinal> = self.arena.probes(&lo.level).iter().cloned().collect();
        if hi.level != lo.level {
            points.extend(
                self.arena
                    .probes(&hi.level)
                    .iter()
                    .take_while(|x| *x < &lo.level)
                    .cloned(),
            );
        }
        let points: Vec<Ordinal> = points.into_iter().collect();
        if let Some(xi) = self.first_difference(&points, &lo.source, &hi.source)? {
            return Ok(Verdict::Distinct(xi));
        }
        Ok(if t0.level == t1.level {
            Verdict::EqualOnProbes
        } else if t0.level < t1.level {
            Verdict::Below
        } else {
            Verdict::Above
        })
    }

    /// The regressive map `r(t) = ρ₀(·,β)↾f` where `β` is the canonical
    /// source of `t` and `f` is the sequence code of `ρ₀(α, β)`.
    pub fn regressive_r(&mut self, t: &TreeNode) -> Result<TreeNode, RhoTreeError> {
        let alpha = &t.level;
        if !alpha.is_limit() || *alpha <= Ordinal::omega() {
            return Err(RhoTreeError::NotInD(alpha.clone()));
        }
        let beta = self.node(alpha, &t.source)?.source;
        let code = self.code(alpha, &beta)?;
        let f = code
            .seq_code()
            .to_u64()
            .ok_or_else(|| RhoTreeError::CodeTooLarge { level: alpha.clone() })?;
        self.node(&Ordinal::nat(f), &beta)
    }

    pub fn check_nonsplitting(
        &mut self,
        lambda: &Ordinal,
        pairs: &[(TreeNode, TreeNode)],
    ) -> Result<NonSplittingReport, RhoTreeError> {
        if !lambda.is_limit() {
            return Err(RhoTreeError::NotLimit(lambda.clone()));
        }
        let mut report = NonSplittingReport::default();
        for (a, b) in pairs {
            let violation = |reason| SplitViolation {
                pair: (a.clone(), b.clone()),
                reason,
            };
            if &a.level != lambda || &b.level != lambda {
                report.violations.push(violation("pair is not at the given level"));
                continue;
            }
            if a == b {
                report.trivial += 1;
                continue;
            }
            match self.tree_leq(a, b)? {
                Verdict::Distinct(xi) => {
                    // The restrictions to ξ+1 differ exactly when the codes at ξ do.
                    let below = xi.succ();
                    if below < *lambda && self.code(&xi, &a.source)? != self.code(&xi, &b.source)? {
                        report.confirmed.push((a.clone(), b.clone(), below));
                    } else {
                        report.violations.push(violation("restrictions below the level agree"));
                    }
                }
                Verdict::EqualOnProbes => report.unresolved.push((a.clone(), b.clone())),
                Verdict::Below | Verdict::Above => report
                    .violations
                    .push(violation("nodes at one level compare as a chain")),
            }
        }
        Ok(report)
    }
}

pub fn node<C: CSequence>(arena: &Arena<C>, alpha: &Ordinal, beta: &Ordinal) -> Result<TreeNode, RhoTreeError> {
    TreeView::new(arena).node(alpha, beta)
}

pub fn tree_leq<C: CSequence>(arena: &Arena<C>, t0: &TreeNode, t1: &TreeNode) -> Result<Verdict, RhoTreeError> {
    TreeView::new(arena).tree_leq(t0, t1)
}

pub fn regressive_r<C: CSequence>(arena: &Arena<C>, t: &TreeNode) -> Result<TreeNode, RhoTreeError> {
    TreeView::new(arena).regressive_r(t)
}

pub fn check_nonsplitting<C: CSequence>(
    arena: &Arena<C>,
    lambda: &Ordinal,
    pairs: &[(TreeNode, TreeNode)],
) -> Result<NonSplittingReport, RhoTreeError> {
    TreeView::new(arena).check_nonsplitting(lambda, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cseq::{build_avoiding, standard_csequence, AvoidSet};
    use crate::ordinal::encode_seq;
    use crate::rhotree::build_arena;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn sample_arena() -> Arena<crate::cseq::StandardCSequence> {
        let seed = [o("w^(2)*2+3"), o("w^(2)+w*3+1"), o("w*4+2"), o("w^(2)*2+w"), o("w*6")];
        build_arena(&seed, standard_csequence(), 6).unwrap()
    }

    #[test]
    fn root_and_self_nodes() {
        let a = sample_arena();
        let mut v = TreeView::new(&a);
        let top = a.members().last().unwrap().clone();
        let root = v.node(&Ordinal::zero(), &top).unwrap();
        // Every source agrees on the empty probe set, so the root is sourced
        // at the least member.
        assert_eq!(root.source, a.members()[0]);
        assert!(root.is_root());
        for beta in a.members() {
            let t = v.node(beta, beta).unwrap();
            assert_eq!(&t.level, beta);
            if !beta.is_zero() {
                assert_eq!(v.tree_leq(&root, &t).unwrap(), Verdict::Below);
                assert_eq!(v.tree_leq(&t, &root).unwrap(), Verdict::Above);
            }
            assert_eq!(v.tree_leq(&t, &t).unwrap(), Verdict::EqualOnProbes);
        }
        assert!(matches!(
            v.node(&o("w*5"), &o("w*4+2")),
            Err(RhoTreeError::SourceBelowLevel { .. })
        ));
    }

    #[test]
    fn canonical_nodes_merge_equal_restrictions() {
        let a = sample_arena();
        let mut v = TreeView::new(&a);
        // At level ω every β ≥ ω restricts to a function on the naturals;
        // members with the same probe codes share one canonical source.
        let level = o("w");
        let nodes = v.nodes_at_level(&level).unwrap();
        let start = a.members().partition_point(|w| *w < level);
        for beta in &a.members()[start..] {
            let t = v.node(&level, beta).unwrap();
            assert!(nodes.contains(&t), "{t} not among the level nodes");
            assert!(t.source <= *beta);
            for xi in a.probes(&level).iter() {
                assert_eq!(v.code(xi, &t.source).unwrap(), v.code(xi, beta).unwrap());
            }
        }
        for (i, x) in nodes.iter().enumerate() {
            for y in &nodes[i + 1..] {
                assert!(matches!(v.tree_leq(x, y).unwrap(), Verdict::Distinct(_)));
            }
        }
    }

    #[test]
    fn distinct_carries_a_real_witness() {
        let a = sample_arena();
        let mut v = TreeView::new(&a);
        let level = o("w*4");
        let nodes = v.nodes_at_level(&level).unwrap();
        assert!(nodes.len() >= 2);
        for (i, x) in nodes.iter().enumerate() {
            for y in &nodes[i + 1..] {
                let Verdict::Distinct(xi) = v.tree_leq(x, y).unwrap() else {
                    panic!("expected distinct nodes");
                };
                assert!(xi < level);
                let c = a.cseq();
                assert_ne!(rho0(c, &xi, &x.source).unwrap(), rho0(c, &xi, &y.source).unwrap());
            }
        }
    }

    #[test]
    fn regressive_r_examples() {
        let s = AvoidSet::new([o("w*2"), o("w^(2)")]).unwrap();
        let c = build_avoiding(s, standard_csequence());
        let seed = [o("w^(2)*2+1"), o("w^(2)+w*2+3"), o("w*3+1"), o("w^(2)")];
        let a = build_arena(&seed, c, 6).unwrap();
        let mut v = TreeView::new(&a);
        let t = v.node(&o("w^(2)"), &o("w^(2)")).unwrap();
        // ρ₀(ω², ω²) = ⟨⟩, code 0: the root.
        assert_eq!(v.regressive_r(&t).unwrap().level, Ordinal::zero());
        for beta in a.members().iter().filter(|b| **b >= o("w^(2)")) {
            let t = v.node(&o("w^(2)"), beta).unwrap();
            let r = v.regressive_r(&t).unwrap();
            let f = encode_seq(&v.code(&t.level, &t.source).unwrap().entries);
            assert_eq!(Some(r.level.as_nat().unwrap()), f.to_u64());
            if !r.level.is_zero() {
                assert_eq!(v.tree_leq(&r, &t).unwrap(), Verdict::Below);
            }
        }
        for bad in ["w", "w*2+1", "7"] {
            let t = TreeNode::restriction(o(bad), o("w^(2)*2+1"));
            assert_eq!(v.regressive_r(&t), Err(RhoTreeError::NotInD(o(bad))));
        }
    }

    #[test]
    fn nonsplitting_on_sample_levels() {
        let a = sample_arena();
        let mut v = TreeView::new(&a);
        for level in [o("w*4"), o("w^(2)"), o("w*2")] {
            let nodes = v.nodes_at_level(&level).unwrap();
            let mut pairs = Vec::new();
            for x in &nodes {
                for y in &nodes {
                    pairs.push((x.clone(), y.clone()));
                }
            }
            let report = v.check_nonsplitting(&level, &pairs).unwrap();
            assert!(report.violations.is_empty(), "{:?}", report.violations);
            assert_eq!(report.trivial, nodes.len());
            assert_eq!(report.confirmed.len(), nodes.len() * (nodes.len() - 1));
        }
        assert!(matches!(
            v.check_nonsplitting(&o("w+1"), &[]),
            Err(RhoTreeError::NotLimit(_))
        ));
    }
}
