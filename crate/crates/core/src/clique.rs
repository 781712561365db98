//! Exact maximum clique on at most 64 vertices.

/// A maximum clique inside `allowed`, as a bit mask; among maximum cliques
/// the lexicographically least (as a sorted vertex list) is returned.
///
/// Branches extend cliques in increasing vertex order, so cliques are met
/// in lexicographic order and only a strictly larger clique replaces the
/// incumbent.
pub(crate) fn max_clique(adj: &[u64], allowed: u64) -> u64 {
    let mut best = (0u64, 0u32);
    extend(adj, 0, 0, allowed, &mut best);
    best.0
}

fn extend(adj: &[u64], current: u64, size: u32, mut candidates: u64, best: &mut (u64, u32)) {
    if size > best.1 {
        *best = (current, size);
    }
    while candidates != 0 {
        if size + candidates.count_ones() <= best.1 {
            return;
        }
        let v = candidates.trailing_zeros() as usize;
        candidates &= !(1u64 << v);
        extend(adj, current | 1 << v, size + 1, candidates & adj[v], best);
    }
}

pub(crate) fn mask_to_vec(mask: u64) -> alloc::vec::Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Vec<u64> {
        let mut adj = alloc::vec![0u64; n];
        for &(a, b) in edges {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        adj
    }

    /// Oracle: every subset, keeping the largest and then the least list.
    fn brute(adj: &[u64], n: usize) -> Vec<usize> {
        let mut best: Vec<usize> = Vec::new();
        for m in 0u64..1 << n {
            let vs = mask_to_vec(m);
            let clique = vs.iter().all(|&a| vs.iter().all(|&b| a == b || adj[a] >> b & 1 == 1));
            if clique && (vs.len() > best.len() || (vs.len() == best.len() && vs < best)) {
                best = vs;
            }
        }
        best
    }

    #[test]
    fn lexicographic_tie_break() {
        let adj = graph(4, &[(0, 3), (1, 2)]);
        assert_eq!(mask_to_vec(max_clique(&adj, 0b1111)), [0, 3]);
        assert_eq!(mask_to_vec(max_clique(&adj, 0b0110)), [1, 2]);
        assert_eq!(max_clique(&adj, 0), 0);
    }

    #[test]
    fn agrees_with_subset_oracle() {
        // A deterministic pseudo-random family of graphs on 10 vertices.
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        for _ in 0..200 {
            let mut edges = Vec::new();
            for a in 0..10 {
                for b in a + 1..10 {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    if !state.is_multiple_of(3) {
                        edges.push((a, b));
                    }
                }
            }
            let adj = graph(10, &edges);
            assert_eq!(mask_to_vec(max_clique(&adj, (1 << 10) - 1)), brute(&adj, 10));
        }
    }
}
