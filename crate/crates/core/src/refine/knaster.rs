use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::{RefineError, StageTrace};
use crate::clique::{mask_to_vec, max_clique};
use crate::specforcing::{pt_compatible, pt_validate, FiniteTree, SpecCondition, TreeWitness};

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct KnasterCondition {
    pub level: u32,
    pub condition: SpecCondition,
}

/// Everything the grouping looks at for one condition `p` at level `α`.
///
/// `t` lists the level-`α` predecessors of the domain nodes at or
/// above `α`, by node index; `iota`, `rbar` and `c` are aligned with it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Fingerprint {
    pub n: usize,
    pub rho: u32,
    /// Domain nodes below `α`, and their colours.
    pub r_nodes: Vec<usize>,
    pub d: Vec<u64>,
    /// Predecessors of `t` at the least level where they are pairwise
    /// distinct; empty when `n ≤ 1`.
    pub iota: Vec<usize>,
    pub rbar: Vec<usize>,
    pub c: Vec<u64>,
}

impl Fingerprint {
    fn key_a(&self) -> (usize, u32) {
        (self.n, self.rho)
    }

    fn key_b(&self) -> Fingerprint {
        Fingerprint {
            c: Vec::new(),
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct KnasterTrace {
    pub fingerprints: Vec<Fingerprint>,
    /// Grouping by `(n, ρ)`, then adding `(R, d, ι, r̄)`, then `c`.
    pub stages: Vec<StageTrace>,
    /// Distinct fingerprints, i.e. classes of the last stage.
    pub fingerprint_count: usize,
    pub u: Vec<usize>,
}

/// Refines conditions placed at witness levels to a pairwise compatible,
/// level-separated subfamily (positions in `conditions`).
///
/// Conditions are grouped by fingerprint; within a class the output keeps
/// conditions whose levels are separated: every lower one has its whole
/// domain strictly below the level of every higher one. A finite tree has
/// few levels, so a class usually holds several conditions per level; those
/// are kept together only when directly compatible. The class giving the largest subfamily
/// wins (ties: the class whose first member comes first).
pub fn knaster_refinement(
    tree: &FiniteTree,
    witness: &TreeWitness,
    conditions: &[KnasterCondition],
) -> Result<(Vec<usize>, KnasterTrace), RefineError> {
    let violations = witness.verify(tree);
    if !violations.is_empty() {
        return Err(RefineError::WitnessInvalid(violations));
    }
    for &level in &witness.s_levels {
        if let Some(node) = tree.splitting_node(level) {
            return Err(RefineError::SplittingDetected { level, node });
        }
    }
    let mut fingerprints = Vec::with_capacity(conditions.len());
    for (pos, kc) in conditions.iter().enumerate() {
        if !witness.s_levels.contains(&kc.level) {
            return Err(RefineError::LevelNotInS(pos));
        }
        if pt_validate(tree, kc.condition.assignment().clone()).is_err() {
            return Err(RefineError::InvalidCondition(pos));
        }
        fingerprints.push(fingerprint(tree, witness, kc));
    }
    let groups_a = group_by(&fingerprints, |f| f.key_a());
    let groups_b = group_by(&fingerprints, |f| f.key_b());
    let groups_c = group_by(&fingerprints, |f| f.clone());
    let classes = &groups_c;

    let mut best: Option<(usize, Vec<usize>)> = None;
    for (gi, group) in classes.iter().enumerate() {
        let u = separate(tree, conditions, group);
        if best.as_ref().is_none_or(|(_, b)| u.len() > b.len()) {
            best = Some((gi, u));
        }
    }
    let (selected, u) = best.unwrap_or_default();
    let anchor = classes.get(selected).map(|g| g[0]);
    let containing = |groups: &[Vec<usize>]| {
        anchor
            .and_then(|a| groups.iter().position(|g| g.contains(&a)))
            .unwrap_or(0)
    };
    let stages = alloc::vec![
        StageTrace {
            name: "n-rho".into(),
            selected: containing(&groups_a),
            groups: groups_a.clone(),
        },
        StageTrace {
            name: "R-d-iota-rbar".into(),
            selected: containing(&groups_b),
            groups: groups_b.clone(),
        },
        StageTrace {
            name: "c".into(),
            selected,
            groups: groups_c.clone(),
        },
    ];

    for (i, &a) in u.iter().enumerate() {
        for &b in &u[i + 1..] {
            if !pt_compatible(tree, &conditions[a].condition, &conditions[b].condition) {
                return Err(RefineError::NotCompatible(a, b));
            }
        }
    }
    let trace = KnasterTrace {
        fingerprint_count: classes.len(),
        fingerprints,
        stages,
        u: u.clone(),
    };
    Ok((u, trace))
}

/// Partition of positions by key, groups ordered by first member.
fn group_by<T, K: Ord, F: Fn(&T) -> K>(items: &[T], key: F) -> Vec<Vec<usize>> {
    let mut groups: BTreeMap<K, Vec<usize>> = BTreeMap::new();
    for (pos, f) in items.iter().enumerate() {
        groups.entry(key(f)).or_default().push(pos);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort_by_key(|g| g[0]);
    out
}

fn fingerprint(tree: &FiniteTree, witness: &TreeWitness, kc: &KnasterCondition) -> Fingerprint {
    let alpha = kc.level;
    let mut r_nodes = Vec::new();
    let mut d = Vec::new();
    let mut t: BTreeSet<usize> = BTreeSet::new();
    for (&node, &colour) in kc.condition.assignment() {
        if tree.level(node) < alpha {
            r_nodes.push(node);
            d.push(colour);
        } else {
            t.insert(tree.pred_at_level(node, alpha).expect("level at least alpha"));
        }
    }
    let t: Vec<usize> = t.into_iter().collect();
    let n = t.len();
    let iota: Vec<usize> = if n <= 1 {
        Vec::new()
    } else {
        (0..alpha)
            .map(|l| {
                t.iter()
                    .map(|&x| tree.pred_at_level(x, l).expect("below"))
                    .collect::<Vec<_>>()
            })
            .find(|preds| preds.iter().collect::<BTreeSet<_>>().len() == n)
            .expect("non-splitting gives distinct parents")
    };
    let rbar: Vec<usize> = t.iter().map(|x| witness.r[x]).collect();
    let c: Vec<u64> = t.iter().map(|x| witness.colors[x]).collect();
    let rho = r_nodes
        .iter()
        .map(|&x| tree.level(x))
        .chain(iota.first().map(|&x| tree.level(x)))
        .chain(rbar.iter().map(|&x| tree.level(x)))
        .max()
        .map_or(0, |m| m + 1);
    Fingerprint {
        n,
        rho,
        r_nodes,
        d,
        iota,
        rbar,
        c,
    }
}

/// Whether `p` and `q` may sit together in `U`: at different levels the
/// higher one must lie above the whole domain of the lower one; at one level
/// they must be directly compatible.
fn admissible(tree: &FiniteTree, conditions: &[KnasterCondition], p: usize, q: usize) -> bool {
    let (lo, hi) = if conditions[p].level <= conditions[q].level {
        (p, q)
    } else {
        (q, p)
    };
    let level = conditions[hi].level;
    if conditions[lo].level < level {
        conditions[lo].condition.domain().all(|x| tree.level(x) < level)
    } else {
        pt_compatible(tree, &conditions[p].condition, &conditions[q].condition)
    }
}

/// A largest pairwise admissible subfamily of `group`: exact up to 64
/// members, greedy by increasing level beyond that.
fn separate(tree: &FiniteTree, conditions: &[KnasterCondition], group: &[usize]) -> Vec<usize> {
    if group.len() <= 64 {
        let adj: Vec<u64> = group
            .iter()
            .map(|&p| {
                group
                    .iter()
                    .enumerate()
                    .filter(|&(_, &q)| q != p && admissible(tree, conditions, p, q))
                    .fold(0u64, |m, (j, _)| m | 1 << j)
            })
            .collect();
        let all = if group.len() == 64 {
            u64::MAX
        } else {
            (1u64 << group.len()) - 1
        };
        return mask_to_vec(max_clique(&adj, all))
            .into_iter()
            .map(|i| group[i])
            .collect();
    }
    let mut order = group.to_vec();
    order.sort_by_key(|&p| (conditions[p].level, p));
    let mut kept: Vec<usize> = Vec::new();
    for p in order {
        if kept.iter().all(|&q| admissible(tree, conditions, p, q)) {
            kept.push(p);
        }
    }
    kept.sort_unstable();
    kept
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Root 0 with two branches; S-levels 2 and 4 never split.
    ///
    /// level 0: 0
    /// level 1: 1 2
    /// level 2: 3 4
    /// level 3: 5 6 7
    /// level 4: 8 9 10
    fn tree() -> FiniteTree {
        FiniteTree::new(alloc::vec![
            None,
            Some(0),
            Some(0),
            Some(1),
            Some(2),
            Some(3),
            Some(3),
            Some(4),
            Some(5),
            Some(6),
            Some(7),
        ])
        .unwrap()
    }

    fn witness() -> TreeWitness {
        let mut w = TreeWitness {
            s_levels: [2, 4].into_iter().collect(),
            ..Default::default()
        };
        for (t, colour) in [(3, 0), (4, 1), (8, 1), (9, 2), (10, 0)] {
            w.r.insert(t, 0);
            w.colors.insert(t, colour);
        }
        w
    }

    fn cond(level: u32, pairs: &[(usize, u64)]) -> KnasterCondition {
        KnasterCondition {
            level,
            condition: pt_validate(&tree(), pairs.iter().copied().collect()).unwrap(),
        }
    }

    #[test]
    fn single_condition_is_kept() {
        let (u, trace) = knaster_refinement(&tree(), &witness(), &[cond(2, &[(3, 5)])]).unwrap();
        assert_eq!(u, [0]);
        assert_eq!(trace.fingerprint_count, 1);
        assert_eq!(trace.stages.len(), 3);
    }

    #[test]
    fn equal_fingerprints_survive() {
        // Shared root part {0 ↦ 7}, one node at the condition's level each.
        let a = cond(2, &[(0, 7), (3, 1)]);
        let b = cond(4, &[(0, 7), (10, 1)]);
        let (u, trace) = knaster_refinement(&tree(), &witness(), &[a.clone(), b.clone()]).unwrap();
        assert_eq!(trace.fingerprints[0].r_nodes, trace.fingerprints[1].r_nodes);
        assert_eq!(u, [0, 1]);
        assert!(pt_compatible(&tree(), &a.condition, &b.condition));
    }

    #[test]
    fn errors() {
        let mut bad = witness();
        bad.colors.insert(8, 0);
        bad.colors.insert(3, 0);
        bad.r.insert(8, 0);
        assert!(matches!(
            knaster_refinement(&tree(), &bad, &[]),
            Err(RefineError::WitnessInvalid(_))
        ));
        let mut splitting = witness();
        splitting.s_levels.insert(3);
        for t in [5, 6, 7] {
            splitting.r.insert(t, 0);
            splitting.colors.insert(t, 9 + t as u64);
        }
        assert_eq!(
            knaster_refinement(&tree(), &splitting, &[]),
            Err(RefineError::SplittingDetected { level: 3, node: 3 })
        );
        assert_eq!(
            knaster_refinement(&tree(), &witness(), &[cond(3, &[])]),
            Err(RefineError::LevelNotInS(0))
        );
    }
}
