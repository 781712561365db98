use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::clique::{mask_to_vec, max_clique};

/// Largest family searched exhaustively.
pub const EXHAUSTIVE_LIMIT: usize = 20;

/// A subfamily whose members pairwise intersect in exactly `root`.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DeltaSystem {
    pub root: Vec<u64>,
    /// Indices into the input family, increasing.
    pub members: Vec<usize>,
}

pub fn is_delta_system(family: &[Vec<u64>], ds: &DeltaSystem) -> bool {
    let sets: Vec<BTreeSet<u64>> = ds
        .members
        .iter()
        .map(|&i| family[i].iter().copied().collect())
        .collect();
    let root: BTreeSet<u64> = ds.root.iter().copied().collect();
    sets.iter().enumerate().all(|(i, a)| {
        root.is_subset(a)
            && sets[i + 1..]
                .iter()
                .all(|b| a.intersection(b).copied().collect::<BTreeSet<_>>() == root)
    })
}

/// A Δ-system with at least `k` members, if the search finds one.
///
/// Families of at most 20 sets are searched exhaustively for the largest
/// Δ-system (every root is a pairwise intersection, and for a fixed root the
/// members form a clique of "intersect exactly in the root"); ties go to the
/// lexicographically least member list. Larger families are split by set
/// size and searched greedily: take a maximal pairwise disjoint subfamily
/// and, if it is too small, move into the sets through the most popular
/// point, as in the sunflower lemma.
pub fn delta_system(family: &[Vec<u64>], k: usize) -> Option<DeltaSystem> {
    let sets: Vec<BTreeSet<u64>> = family.iter().map(|s| s.iter().copied().collect()).collect();
    let best = if sets.len() <= EXHAUSTIVE_LIMIT {
        exhaustive(&sets)
    } else {
        greedy(&sets, k)
    };
    let best = match best {
        Some(ds) if ds.members.len() >= 2 => Some(ds),
        _ => sets.first().map(|s| DeltaSystem {
            root: s.iter().copied().collect(),
            members: alloc::vec![0],
        }),
    };
    match best {
        Some(ds) if ds.members.len() >= k => Some(ds),
        None if k == 0 => Some(DeltaSystem {
            root: Vec::new(),
            members: Vec::new(),
        }),
        _ => None,
    }
}

fn exhaustive(sets: &[BTreeSet<u64>]) -> Option<DeltaSystem> {
    let n = sets.len();
    let mut roots: BTreeSet<BTreeSet<u64>> = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            roots.insert(sets[i].intersection(&sets[j]).copied().collect());
        }
    }
    let mut best: Option<DeltaSystem> = None;
    for root in roots {
        let mut allowed = 0u64;
        let mut adj = alloc::vec![0u64; n];
        for i in (0..n).filter(|&i| root.is_subset(&sets[i])) {
            allowed |= 1 << i;
        }
        for i in 0..n {
            for j in 0..n {
                if i != j
                    && allowed >> i & 1 == 1
                    && allowed >> j & 1 == 1
                    && sets[i].intersection(&sets[j]).eq(root.iter())
                {
                    adj[i] |= 1 << j;
                }
            }
        }
        let members = mask_to_vec(max_clique(&adj, allowed));
        let better = match &best {
            None => true,
            Some(b) => members.len() > b.members.len() || (members.len() == b.members.len() && members < b.members),
        };
        if better {
            best = Some(DeltaSystem {
                root: root.into_iter().collect(),
                members,
            });
        }
    }
    best
}

fn greedy(sets: &[BTreeSet<u64>], k: usize) -> Option<DeltaSystem> {
    let mut by_size: alloc::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (i, s) in sets.iter().enumerate() {
        by_size.entry(s.len()).or_default().push(i);
    }
    let mut best: Option<DeltaSystem> = None;
    for class in by_size.values() {
        let found = sunflower(sets, class, BTreeSet::new(), k);
        if best.as_ref().is_none_or(|b| found.members.len() > b.members.len()) {
            best = Some(found);
        }
    }
    best
}

fn sunflower(sets: &[BTreeSet<u64>], indices: &[usize], root: BTreeSet<u64>, k: usize) -> DeltaSystem {
    let petals = |i: usize| sets[i].difference(&root).copied().collect::<BTreeSet<u64>>();
    let mut used: BTreeSet<u64> = BTreeSet::new();
    let mut disjoint = Vec::new();
    for &i in indices {
        let p = petals(i);
        if p.is_disjoint(&used) {
            used.extend(p);
            disjoint.push(i);
        }
    }
    let here = DeltaSystem {
        root: root.iter().copied().collect(),
        members: disjoint,
    };
    if here.members.len() >= k || used.is_empty() {
        return here;
    }
    // Every set meets `used`, so some point of it lies in many sets.
    let point = used
        .iter()
        .copied()
        .max_by_key(|x| {
            (
                indices.iter().filter(|&&i| sets[i].contains(x)).count(),
                core::cmp::Reverse(*x),
            )
        })
        .expect("nonempty");
    let through: Vec<usize> = indices.iter().copied().filter(|&i| sets[i].contains(&point)).collect();
    if through.len() < 2 {
        return here;
    }
    let mut deeper_root = root;
    deeper_root.insert(point);
    let deeper = sunflower(sets, &through, deeper_root, k);
    if deeper.members.len() > here.members.len() {
        deeper
    } else {
        here
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(sets: &[&[u64]]) -> Vec<Vec<u64>> {
        sets.iter().map(|s| s.to_vec()).collect()
    }

    #[test]
    fn examples() {
        let f = fam(&[&[1, 2], &[1, 3], &[1, 4], &[2, 3]]);
        let ds = delta_system(&f, 3).unwrap();
        assert_eq!(ds.root, [1]);
        assert_eq!(ds.members, [0, 1, 2]);
        assert!(delta_system(&f, 4).is_none());

        let disjoint = fam(&[&[1], &[2, 3], &[4], &[5, 6, 7]]);
        let ds = delta_system(&disjoint, 4).unwrap();
        assert!(ds.root.is_empty());
        assert_eq!(ds.members, [0, 1, 2, 3]);

        let same = fam(&[&[1, 2], &[1, 2]]);
        let ds = delta_system(&same, 2).unwrap();
        assert_eq!(ds.root, [1, 2]);
        assert_eq!(ds.members, [0, 1]);
    }

    #[test]
    fn small_k_and_empty_families() {
        assert_eq!(delta_system(&[], 0).unwrap().members.len(), 0);
        assert!(delta_system(&[], 1).is_none());
        let one = fam(&[&[3, 4]]);
        assert_eq!(
            delta_system(&one, 1),
            Some(DeltaSystem {
                root: alloc::vec![3, 4],
                members: alloc::vec![0]
            })
        );
        assert!(delta_system(&one, 2).is_none());
    }

    #[test]
    fn greedy_on_large_families() {
        // 30 sets {0, i}: a sunflower with root {0}.
        let f: Vec<Vec<u64>> = (1..=30).map(|i| alloc::vec![0, i]).collect();
        let ds = delta_system(&f, 10).unwrap();
        assert_eq!(ds.root, [0]);
        assert_eq!(ds.members.len(), 30);
        assert!(is_delta_system(&f, &ds));

        // Mixed sizes: pairs {2i, 2i+1} are disjoint and win.
        let mut f: Vec<Vec<u64>> = (0..25).map(|i| alloc::vec![2 * i, 2 * i + 1]).collect();
        f.push(alloc::vec![0, 2, 4]);
        let ds = delta_system(&f, 20).unwrap();
        assert!(ds.root.is_empty());
        assert_eq!(ds.members.len(), 25);
        assert!(is_delta_system(&f, &ds));
    }
}
