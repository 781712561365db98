//! File formats: poset and tree JSON, ordinal lists, refinement inputs.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};
use ordlab_core::poset::{build_poset, FinitePoset};
use ordlab_core::refine::KnasterCondition;
use ordlab_core::specforcing::{pt_validate, FiniteTree, TreeWitness};
use ordlab_core::Ordinal;
use serde::{Deserialize, Serialize};

/// `{"n": 3, "le": [[0, 2], [1, 2]], "top": 2}`; `le` lists strict pairs
/// `i < j` before closure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub n: usize,
    pub le: Vec<[usize; 2]>,
    pub top: Option<usize>,
}

impl PosetFile {
    pub fn to_poset(&self) -> Result<FinitePoset> {
        let pairs: Vec<(usize, usize)> = self.le.iter().map(|&[a, b]| (a, b)).collect();
        Ok(build_poset(self.n, &pairs, self.top)?)
    }

    /// The covering pairs of `p`, which close back to `p`.
    pub fn from_poset(p: &FinitePoset) -> Self {
        PosetFile {
            n: p.len(),
            le: p.covering_pairs().into_iter().map(|(a, b)| [a, b]).collect(),
            top: p.top(),
        }
    }
}

/// `{"nodes": 4, "parent": [null, 0, 0, 1]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeFile {
    pub nodes: usize,
    pub parent: Vec<Option<usize>>,
}

impl TreeFile {
    pub fn to_tree(&self) -> Result<FiniteTree> {
        if self.parent.len() != self.nodes {
            bail!("tree file lists {} parents for {} nodes", self.parent.len(), self.nodes);
        }
        Ok(FiniteTree::new(self.parent.clone())?)
    }

    pub fn from_tree(t: &FiniteTree) -> Self {
        TreeFile {
            nodes: t.len(),
            parent: t.parents().to_vec(),
        }
    }
}

/// Input of `refine product`: factors, support bound and the conditions as
/// coordinate vectors (a factor's top marks a coordinate outside the support).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProductInput {
    pub factors: Vec<PosetFile>,
    pub nu: usize,
    pub conditions: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionEntry {
    pub level: u32,
    pub assignment: BTreeMap<usize, u64>,
}

/// Input of `refine knaster`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KnasterInput {
    pub tree: TreeFile,
    pub witness: TreeWitness,
    pub conditions: Vec<ConditionEntry>,
}

impl KnasterInput {
    pub fn conditions(&self, tree: &FiniteTree) -> Result<Vec<KnasterCondition>> {
        self.conditions
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let condition = pt_validate(tree, c.assignment.clone()).with_context(|| format!("condition {i}"))?;
                Ok(KnasterCondition {
                    level: c.level,
                    condition,
                })
            })
            .collect()
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = read_text(path)?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// One ordinal per line; blank lines and `#` comments are skipped.
pub fn parse_ordinal_lines(text: &str) -> Result<Vec<Ordinal>> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i, line.split('#').next().unwrap_or("").trim()))
        .filter(|(_, line)| !line.is_empty())
        .map(|(i, line)| line.parse().with_context(|| format!("line {}", i + 1)))
        .collect()
}

pub fn format_ordinal_lines(xs: &[Ordinal]) -> String {
    xs.iter().map(|x| format!("{x}\n")).collect()
}

/// `0,2,5`; empty input is the empty list.
pub fn parse_index_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().with_context(|| format!("bad index {p:?}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_file_roundtrip() {
        let text = r#"{"n": 3, "le": [[0, 2], [1, 2]], "top": 2}"#;
        let f: PosetFile = serde_json::from_str(text).unwrap();
        let p = f.to_poset().unwrap();
        assert!(p.leq(0, 2) && !p.compatible(0, 1));
        let back = PosetFile::from_poset(&p);
        assert_eq!(back, f);
        let null_top: PosetFile = serde_json::from_str(r#"{"n": 2, "le": [], "top": null}"#).unwrap();
        assert_eq!(null_top.top, None);
    }

    #[test]
    fn tree_file() {
        let f: TreeFile = serde_json::from_str(r#"{"nodes": 4, "parent": [null, 0, 0, 1]}"#).unwrap();
        let t = f.to_tree().unwrap();
        assert_eq!(t.level(3), 2);
        assert_eq!(TreeFile::from_tree(&t), f);
        let bad = TreeFile {
            nodes: 3,
            parent: vec![None],
        };
        assert!(bad.to_tree().is_err());
    }

    #[test]
    fn ordinal_lines() {
        let xs = parse_ordinal_lines("w*2\n\n# comment\nw^(2)+w  # trailing\n").unwrap();
        assert_eq!(format_ordinal_lines(&xs), "w*2\nw^(2)+w\n");
        assert!(parse_ordinal_lines("w*0").is_err());
        assert_eq!(parse_index_list("0, 2,5").unwrap(), [0, 2, 5]);
        assert!(parse_index_list("").unwrap().is_empty());
    }
}
