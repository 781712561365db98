use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TreeError {
    #[error("a tree needs at least one node")]
    Empty,
    #[error("no root: every node has a parent")]
    NoRoot,
    #[error("nodes {0} and {1} are both roots")]
    MultipleRoots(usize, usize),
    #[error("parent of node {0} is out of range")]
    ParentOutOfRange(usize),
    #[error("node {0} lies on a parent cycle")]
    Cycle(usize),
}

/// A rooted tree on `0..n` given by parent pointers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteTree {
    parent: Vec<Option<usize>>,
    level: Vec<u32>,
    children: Vec<Vec<usize>>,
    root: usize,
}

impl FiniteTree {
    pub fn new(parent: Vec<Option<usize>>) -> Result<Self, TreeError> {
        let n = parent.len();
        if n == 0 {
            return Err(TreeError::Empty);
        }
        let mut root = None;
        let mut children = alloc::vec![Vec::new(); n];
        for (i, p) in parent.iter().enumerate() {
            match *p {
                None => {
                    if let Some(r) = root {
                        return Err(TreeError::MultipleRoots(r, i));
                    }
                    root = Some(i);
                }
                Some(p) if p >= n => return Err(TreeError::ParentOutOfRange(i)),
                Some(p) => children[p].push(i),
            }
        }
        let root = root.ok_or(TreeError::NoRoot)?;
        let mut level = alloc::vec![u32::MAX; n];
        level[root] = 0;
        let mut stack = alloc::vec![root];
        while let Some(t) = stack.pop() {
            for &c in &children[t] {
                level[c] = level[t] + 1;
                stack.push(c);
            }
        }
        if let Some(bad) = level.iter().position(|&l| l == u32::MAX) {
            return Err(TreeError::Cycle(bad));
        }
        Ok(FiniteTree {
            parent,
            level,
            children,
            root,
        })
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, t: usize) -> Option<usize> {
        self.parent[t]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn children(&self, t: usize) -> &[usize] {
        &self.children[t]
    }

    pub fn level(&self, t: usize) -> u32 {
        self.level[t]
    }

    /// Number of levels.
    pub fn height(&self) -> u32 {
        self.level.iter().max().map_or(0, |&l| l + 1)
    }

    pub fn nodes_at_level(&self, l: u32) -> Vec<usize> {
        (0..self.len()).filter(|&t| self.level[t] == l).collect()
    }

    /// The predecessor (or `t` itself) at level `l ≤ level(t)`.
    pub fn pred_at_level(&self, mut t: usize, l: u32) -> Option<usize> {
        if l > self.level[t] {
            return None;
        }
        while self.level[t] > l {
            t = self.parent[t].expect("non-root");
        }
        Some(t)
    }

    /// `a <_T b`.
    pub fn is_below(&self, a: usize, b: usize) -> bool {
        self.level[a] < self.level[b] && self.pred_at_level(b, self.level[a]) == Some(a)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        a == b || self.is_below(a, b) || self.is_below(b, a)
    }

    /// A node of level `l − 1` with two or more children at level `l`.
    pub fn splitting_node(&self, l: u32) -> Option<usize> {
        if l == 0 {
            return None;
        }
        self.nodes_at_level(l - 1)
            .into_iter()
            .find(|&t| self.children[t].len() >= 2)
    }
}

/// A regressive map on the nodes at the levels in `s_levels`, with colours
/// meant to be injective on chains inside each fibre.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TreeWitness {
    pub s_levels: BTreeSet<u32>,
    pub r: BTreeMap<usize, usize>,
    pub colors: BTreeMap<usize, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum TreeWitnessViolation {
    Missing(usize),
    NotRegressive(usize),
    ChainCollision(usize, usize),
}

impl TreeWitness {
    pub fn verify(&self, tree: &FiniteTree) -> Vec<TreeWitnessViolation> {
        let mut out = Vec::new();
        let nodes: Vec<usize> = (0..tree.len())
            .filter(|&t| self.s_levels.contains(&tree.level(t)))
            .collect();
        for &t in &nodes {
            match (self.r.get(&t), self.colors.get(&t)) {
                (Some(&r), Some(_)) => {
                    if !tree.is_below(r, t) {
                        out.push(TreeWitnessViolation::NotRegressive(t));
                    }
                }
                _ => out.push(TreeWitnessViolation::Missing(t)),
            }
        }
        for (i, &a) in nodes.iter().enumerate() {
            for &b in &nodes[i + 1..] {
                let same_fibre = self.r.contains_key(&a) && self.r.get(&a) == self.r.get(&b);
                let same_colour = self.colors.contains_key(&a) && self.colors.get(&a) == self.colors.get(&b);
                if same_fibre && same_colour && (tree.is_below(a, b) || tree.is_below(b, a)) {
                    out.push(TreeWitnessViolation::ChainCollision(a.min(b), a.max(b)));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> FiniteTree {
        //     0
        //    / \
        //   1   2
        //  / \   \
        // 3   4   5
        FiniteTree::new(alloc::vec![None, Some(0), Some(0), Some(1), Some(1), Some(2)]).unwrap()
    }

    #[test]
    fn structure() {
        let t = sample();
        assert_eq!(t.root(), 0);
        assert_eq!(t.height(), 3);
        assert_eq!(t.nodes_at_level(2), [3, 4, 5]);
        assert_eq!(t.pred_at_level(4, 1), Some(1));
        assert_eq!(t.pred_at_level(4, 2), Some(4));
        assert_eq!(t.pred_at_level(1, 2), None);
        assert!(t.is_below(0, 5) && t.is_below(1, 3) && !t.is_below(1, 5) && !t.is_below(3, 3));
        assert!(t.comparable(3, 3) && !t.comparable(3, 4));
        assert_eq!(t.splitting_node(1), Some(0));
        assert_eq!(t.splitting_node(2), Some(1));
    }

    #[test]
    fn rejects_non_trees() {
        assert_eq!(FiniteTree::new(alloc::vec![]), Err(TreeError::Empty));
        assert_eq!(
            FiniteTree::new(alloc::vec![None, None]),
            Err(TreeError::MultipleRoots(0, 1))
        );
        assert_eq!(FiniteTree::new(alloc::vec![Some(1), Some(0)]), Err(TreeError::NoRoot));
        assert_eq!(
            FiniteTree::new(alloc::vec![None, Some(9)]),
            Err(TreeError::ParentOutOfRange(1))
        );
        assert_eq!(
            FiniteTree::new(alloc::vec![None, Some(2), Some(1)]),
            Err(TreeError::Cycle(1))
        );
    }

    #[test]
    fn witness_checks() {
        let t = sample();
        let mut w = TreeWitness {
            s_levels: [2].into_iter().collect(),
            r: [(3, 0), (4, 0), (5, 2)].into_iter().collect(),
            colors: [(3, 0), (4, 0), (5, 0)].into_iter().collect(),
        };
        assert!(w.verify(&t).is_empty());
        w.r.insert(5, 4);
        assert_eq!(w.verify(&t), [TreeWitnessViolation::NotRegressive(5)]);
        w.r.insert(5, 2);
        w.s_levels.insert(1);
        w.r.insert(1, 0);
        w.r.insert(2, 0);
        assert_eq!(
            w.verify(&t),
            [TreeWitnessViolation::Missing(1), TreeWitnessViolation::Missing(2)]
        );
        w.colors.insert(1, 0);
        w.colors.insert(2, 1);
        assert_eq!(
            w.verify(&t),
            [
                TreeWitnessViolation::ChainCollision(1, 3),
                TreeWitnessViolation::ChainCollision(1, 4)
            ]
        );
    }
}
