use alloc::vec::Vec;

use super::{delta_system, DeltaSystem, RefineError};
use crate::clique::{mask_to_vec, max_clique};
use crate::poset::SupportProduct;

/// Largest Δ-subfamily searched for a homogeneous clique; later members
/// are dropped and the trace says so.
pub const PRODUCT_CLIQUE_CAP: usize = 40;

/// Colours on pairs of Δ-members: the least root position where the two
/// coordinates clash, `ν` when the conditions are compatible, and `ν + 1`
/// when they agree on the root yet still clash (only possible off the
/// root, which a genuine Δ-system rules out).
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ColoringTable {
    pub nu: usize,
    /// Condition indices the rows and columns refer to.
    pub members: Vec<usize>,
    /// Symmetric; the diagonal is `ν`.
    pub colors: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ProductTrace {
    /// Supports are indexed by factor; members are positions in the input.
    pub delta: DeltaSystem,
    pub coloring: ColoringTable,
    /// Positions in the input, increasing.
    pub homogeneous: Vec<usize>,
    pub truncated: bool,
}

/// `members` are product condition indices; `root` is enumerated in
/// increasing order of factor index.
pub fn product_coloring(product: &SupportProduct, members: &[usize], root: &[usize]) -> ColoringTable {
    let nu = product.nu();
    let colour = |a: usize, b: usize| -> usize {
        let (ca, cb) = (&product.conditions()[a].coords, &product.conditions()[b].coords);
        for (pos, &g) in root.iter().enumerate() {
            if !product.factors()[g].compatible(ca[g], cb[g]) {
                return pos;
            }
        }
        if product.poset().compatible(a, b) {
            nu
        } else {
            nu + 1
        }
    };
    let colors = members
        .iter()
        .map(|&a| {
            members
                .iter()
                .map(|&b| if a == b { nu } else { colour(a, b) })
                .collect()
        })
        .collect();
    ColoringTable {
        nu,
        members: members.to_vec(),
        colors,
    }
}

/// Refines `conditions` (product indices, repetitions allowed) to a
/// pairwise compatible subfamily, returned as positions in `conditions`.
///
/// Δ-system on supports, then the root colouring, then the largest clique of
/// colour `ν`. When the largest Δ-system holds no compatible pair, the
/// Δ-system grown from the first compatible pair is tried as well.
pub fn compatible_refinement_product(
    product: &SupportProduct,
    conditions: &[usize],
) -> Result<(Vec<usize>, ProductTrace), RefineError> {
    if let Some(&bad) = conditions.iter().find(|&&c| c >= product.conditions().len()) {
        return Err(RefineError::OutOfRange(bad));
    }
    let supports: Vec<Vec<u64>> = conditions
        .iter()
        .map(|&c| product.support(c).into_iter().map(|g| g as u64).collect())
        .collect();
    if conditions.len() == 1 {
        let delta = delta_system(&supports, 1).expect("one set");
        let coloring = product_coloring(product, conditions, &[]);
        let trace = ProductTrace {
            delta,
            coloring,
            homogeneous: alloc::vec![0],
            truncated: false,
        };
        return Ok((alloc::vec![0], trace));
    }
    let first_pair = (0..conditions.len())
        .flat_map(|i| (i + 1..conditions.len()).map(move |j| (i, j)))
        .find(|&(i, j)| product.poset().compatible(conditions[i], conditions[j]))
        .ok_or(RefineError::Empty)?;

    let primary = delta_system(&supports, 2).expect("two sets always form a Δ-system");
    let mut best = homogeneous_in(product, conditions, primary);
    if best.homogeneous.len() < 2 {
        let seeded = grow_delta(&supports, first_pair);
        let other = homogeneous_in(product, conditions, seeded);
        if other.homogeneous.len() > best.homogeneous.len() {
            best = other;
        }
    }
    for (i, &a) in best.homogeneous.iter().enumerate() {
        for &b in &best.homogeneous[i + 1..] {
            if !product.poset().compatible(conditions[a], conditions[b]) {
                return Err(RefineError::NotCompatible(a, b));
            }
        }
    }
    Ok((best.homogeneous.clone(), best))
}

fn homogeneous_in(product: &SupportProduct, conditions: &[usize], delta: DeltaSystem) -> ProductTrace {
    let truncated = delta.members.len() > PRODUCT_CLIQUE_CAP;
    let positions: Vec<usize> = delta.members.iter().copied().take(PRODUCT_CLIQUE_CAP).collect();
    let members: Vec<usize> = positions.iter().map(|&p| conditions[p]).collect();
    let root: Vec<usize> = delta.root.iter().map(|&g| g as usize).collect();
    let coloring = product_coloring(product, &members, &root);
    let nu = coloring.nu;
    let adj: Vec<u64> = (0..members.len())
        .map(|i| {
            (0..members.len())
                .filter(|&j| j != i && coloring.colors[i][j] == nu)
                .fold(0u64, |m, j| m | 1 << j)
        })
        .collect();
    let all = if members.len() == 64 {
        u64::MAX
    } else {
        (1u64 << members.len()) - 1
    };
    let homogeneous = mask_to_vec(max_clique(&adj, all))
        .into_iter()
        .map(|i| positions[i])
        .collect();
    ProductTrace {
        delta,
        coloring,
        homogeneous,
        truncated,
    }
}

/// The Δ-system rooted at the intersection of the pair, extended greedily
/// in input order.
fn grow_delta(supports: &[Vec<u64>], (i, j): (usize, usize)) -> DeltaSystem {
    use alloc::collections::BTreeSet;
    let set = |k: usize| supports[k].iter().copied().collect::<BTreeSet<u64>>();
    let root: BTreeSet<u64> = set(i).intersection(&set(j)).copied().collect();
    let mut members = alloc::vec![i, j];
    for k in 0..supports.len() {
        if k == i || k == j {
            continue;
        }
        let sk = set(k);
        if root.is_subset(&sk)
            && members
                .iter()
                .all(|&m| set(m).intersection(&sk).copied().collect::<BTreeSet<_>>() == root)
        {
            members.push(k);
        }
    }
    members.sort_unstable();
    DeltaSystem {
        root: root.into_iter().collect(),
        members,
    }
}
