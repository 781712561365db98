use alloc::vec::Vec;

use super::{FinitePoset, PosetError};

pub const DEFAULT_ANTICHAIN_CAP: usize = 15;

/// Pairwise incompatible.
pub fn is_antichain(p: &FinitePoset, set: &[usize]) -> bool {
    set.iter()
        .enumerate()
        .all(|(i, &a)| set[i + 1..].iter().all(|&b| a != b && !p.compatible(a, b)))
}

/// An antichain that every element of `p` is compatible with.
pub fn is_maximal_antichain(p: &FinitePoset, set: &[usize]) -> bool {
    is_antichain(p, set) && (0..p.len()).all(|q| set.iter().any(|&a| p.compatible(a, q)))
}

/// Every maximal antichain, each sorted, in lexicographic order.
pub fn maximal_antichains(p: &FinitePoset) -> Result<Vec<Vec<usize>>, PosetError> {
    maximal_antichains_capped(p, DEFAULT_ANTICHAIN_CAP)
}

/// Maximal antichains are the maximal cliques of the incompatibility graph;
/// they are listed by Bron–Kerbosch with pivoting over bit masks.
pub fn maximal_antichains_capped(p: &FinitePoset, cap: usize) -> Result<Vec<Vec<usize>>, PosetError> {
    let n = p.len();
    let cap = cap.min(64);
    if n > cap {
        return Err(PosetError::Overflow {
            what: "poset",
            size: n,
            cap,
        });
    }
    let incompatible: Vec<u64> = (0..n)
        .map(|a| (0..n).filter(|&b| !p.compatible(a, b)).fold(0u64, |m, b| m | 1 << b))
        .collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut out = Vec::new();
    bron_kerbosch(&incompatible, 0, all, 0, &mut out);
    let mut out: Vec<Vec<usize>> = out
        .into_iter()
        .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect())
        .collect();
    out.sort();
    Ok(out)
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = (p | x).trailing_zeros() as usize;
    let mut candidates = p & !adj[pivot];
    while candidates != 0 {
        let v = candidates.trailing_zeros() as usize;
        let bit = 1u64 << v;
        candidates &= !bit;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
        p &= !bit;
        x |= bit;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::build_poset;

    /// Independent oracle: all subsets, filtered by the definition.
    fn brute(p: &FinitePoset) -> Vec<Vec<usize>> {
        let n = p.len();
        let mut out: Vec<Vec<usize>> = (0u32..1 << n)
            .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect::<Vec<_>>())
            .filter(|s| is_maximal_antichain(p, s))
            .collect();
        out.sort();
        out
    }

    #[test]
    fn examples() {
        let chain = build_poset(2, &[(0, 1)], None).unwrap();
        assert_eq!(maximal_antichains(&chain).unwrap(), [[0], [1]]);
        let anti = build_poset(2, &[], None).unwrap();
        assert_eq!(maximal_antichains(&anti).unwrap(), [[0, 1]]);
        let single = build_poset(1, &[], None).unwrap();
        assert_eq!(maximal_antichains(&single).unwrap(), [[0]]);
        let empty = build_poset(0, &[], None).unwrap();
        assert_eq!(maximal_antichains(&empty).unwrap(), [Vec::<usize>::new()]);
    }

    #[test]
    fn matches_subset_oracle() {
        // A tree-shaped poset, an inverted V, and a 2+2.
        let cases: [(usize, &[(usize, usize)]); 4] = [
            (5, &[(1, 0), (2, 0), (3, 1), (4, 1)]),
            (3, &[(0, 2), (1, 2)]),
            (4, &[(0, 1), (2, 3)]),
            (6, &[(0, 1), (0, 2), (3, 4), (5, 4), (5, 2)]),
        ];
        for (n, pairs) in cases {
            let p = build_poset(n, pairs, None).unwrap();
            assert_eq!(maximal_antichains(&p).unwrap(), brute(&p));
        }
    }

    #[test]
    fn overflow() {
        let big = build_poset(16, &[], None).unwrap();
        assert!(matches!(maximal_antichains(&big), Err(PosetError::Overflow { .. })));
        assert_eq!(maximal_antichains_capped(&big, 16).unwrap().len(), 1);
    }
}
