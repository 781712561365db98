//! DOT and JSON renderings of a tree fragment.

use std::fmt::Write;

use anyhow::Result;
use ordlab_core::cseq::CSequence;
use ordlab_core::rhotree::{fragment, TreeNode, TreeView, Verdict};
use ordlab_core::Ordinal;
use serde::{Deserialize, Serialize};

/// Canonical nodes at the requested levels and the covering edges between
/// consecutive levels (parent index, child index).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeEmit {
    pub levels: Vec<Ordinal>,
    pub nodes: Vec<TreeNode>,
    pub edges: Vec<(usize, usize)>,
}

pub fn tree_emit<C: CSequence>(view: &mut TreeView<'_, C>, levels: &[Ordinal]) -> Result<TreeEmit> {
    let frag = fragment(view, levels)?;
    let mut edges = Vec::new();
    for (child, t) in frag.nodes.iter().enumerate() {
        let Some(pos) = frag.levels.iter().position(|l| *l == t.level) else {
            continue;
        };
        if pos == 0 {
            continue;
        }
        let below = &frag.levels[pos - 1];
        for (parent, s) in frag.nodes.iter().enumerate().filter(|(_, s)| &s.level == below) {
            if view.tree_leq(s, t)? == Verdict::Below {
                edges.push((parent, child));
                break;
            }
        }
    }
    Ok(TreeEmit {
        levels: frag.levels,
        nodes: frag.nodes,
        edges,
    })
}

pub fn to_dot(t: &TreeEmit) -> String {
    let mut out = String::from("digraph rho0 {\n  rankdir=BT;\n");
    for (i, n) in t.nodes.iter().enumerate() {
        writeln!(out, "  n{i} [label=\"{n}\"];").unwrap();
    }
    for (a, b) in &t.edges {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ordlab_core::cseq::standard_csequence;
    use ordlab_core::rhotree::build_arena;

    #[test]
    fn emits_levels_and_edges() {
        let seed: Vec<Ordinal> = ["w*2+3", "w^(2)", "w*3"].iter().map(|s| s.parse().unwrap()).collect();
        let arena = build_arena(&seed, standard_csequence(), 4).unwrap();
        let mut view = TreeView::new(&arena);
        let levels: Vec<Ordinal> = vec![Ordinal::omega(), "w*2".parse().unwrap()];
        let t = tree_emit(&mut view, &levels).unwrap();
        assert!(t.nodes.iter().all(|n| levels.contains(&n.level)));
        for &(a, b) in &t.edges {
            assert!(t.nodes[a].level < t.nodes[b].level);
        }
        let dot = to_dot(&t);
        assert!(dot.starts_with("digraph"));
        assert!(dot.contains("w@"));
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<TreeEmit>(&json).unwrap(), t);
    }
}
