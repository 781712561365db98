use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{FinitePoset, PosetError};

pub const DEFAULT_PRODUCT_CAP: usize = 4096;

/// One coordinate per factor; a coordinate equal to the factor's top is
/// outside the support.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ProductCondition {
    pub coords: Vec<usize>,
}

/// The product of finitely many posets restricted to conditions with at
/// most `ν` non-top coordinates, ordered coordinatewise.
#[derive(Debug, Clone)]
pub struct SupportProduct {
    factors: Vec<FinitePoset>,
    tops: Vec<usize>,
    nu: usize,
    conditions: Vec<ProductCondition>,
    index: BTreeMap<Vec<usize>, usize>,
    poset: FinitePoset,
}

pub fn support_product(factors: &[FinitePoset], nu: usize) -> Result<SupportProduct, PosetError> {
    support_product_capped(factors, nu, DEFAULT_PRODUCT_CAP)
}

/// Factors without a top get a formal one adjoined first. Conditions are
/// listed by support size, then support (lexicographically), then
/// coordinates; condition 0 is the all-top condition.
pub fn support_product_capped(factors: &[FinitePoset], nu: usize, cap: usize) -> Result<SupportProduct, PosetError> {
    let (factors, tops): (Vec<FinitePoset>, Vec<usize>) = factors.iter().map(FinitePoset::with_formal_top).unzip();
    let mut conditions = Vec::new();
    for size in 0..=nu.min(factors.len()) {
        for support in subsets(factors.len(), size) {
            let mut coords = tops.clone();
            push_choices(&factors, &tops, &support, 0, &mut coords, &mut conditions, cap)?;
        }
    }
    let index = conditions
        .iter()
        .enumerate()
        .map(|(i, c)| (c.coords.clone(), i))
        .collect();
    let poset = FinitePoset::from_leq_fn_unchecked(conditions.len(), |a, b| {
        let (a, b) = (&conditions[a].coords, &conditions[b].coords);
        factors.iter().enumerate().all(|(g, f)| f.leq(a[g], b[g]))
    });
    let poset = FinitePoset { top: Some(0), ..poset };
    Ok(SupportProduct {
        factors,
        tops,
        nu,
        conditions,
        index,
        poset,
    })
}

fn push_choices(
    factors: &[FinitePoset],
    tops: &[usize],
    support: &[usize],
    k: usize,
    coords: &mut Vec<usize>,
    out: &mut Vec<ProductCondition>,
    cap: usize,
) -> Result<(), PosetError> {
    let Some(&g) = support.get(k) else {
        if out.len() == cap {
            return Err(PosetError::Overflow {
                what: "support product",
                size: cap + 1,
                cap,
            });
        }
        out.push(ProductCondition { coords: coords.clone() });
        return Ok(());
    };
    for x in (0..factors[g].len()).filter(|&x| x != tops[g]) {
        coords[g] = x;
        push_choices(factors, tops, support, k + 1, coords, out, cap)?;
    }
    coords[g] = tops[g];
    Ok(())
}

/// `size`-element subsets of `0..n` in lexicographic order.
fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

impl SupportProduct {
    /// Factors as used, with formal tops adjoined where needed.
    pub fn factors(&self) -> &[FinitePoset] {
        &self.factors
    }

    pub fn tops(&self) -> &[usize] {
        &self.tops
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn conditions(&self) -> &[ProductCondition] {
        &self.conditions
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn index_of(&self, coords: &[usize]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn support(&self, i: usize) -> Vec<usize> {
        let c = &self.conditions[i].coords;
        (0..c.len()).filter(|&g| c[g] != self.tops[g]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::build_poset;

    fn chain2() -> FinitePoset {
        build_poset(2, &[(0, 1)], Some(1)).unwrap()
    }

    #[test]
    fn examples() {
        let p = support_product(&[chain2(), chain2()], 0).unwrap();
        assert_eq!(p.conditions().len(), 1);
        let p = support_product(&[chain2(), chain2()], 2).unwrap();
        assert_eq!(p.conditions().len(), 4);
        assert_eq!(p.conditions()[0].coords, [1, 1]);
        assert_eq!(p.poset().top(), Some(0));
        let bottom = p.index_of(&[0, 0]).unwrap();
        assert!((0..4).all(|i| p.poset().leq(bottom, i)));
    }

    #[test]
    fn support_bound_and_compatibility() {
        let anti = build_poset(2, &[], None).unwrap();
        let factors = [anti.clone(), chain2(), anti];
        for nu in 0..=3 {
            let p = support_product(&factors, nu).unwrap();
            for i in 0..p.conditions().len() {
                assert!(p.support(i).len() <= nu);
            }
            // Compatibility in the product vs. coordinatewise compatibility.
            for a in 0..p.conditions().len() {
                for b in 0..p.conditions().len() {
                    let (ca, cb) = (&p.conditions()[a].coords, &p.conditions()[b].coords);
                    let coordinatewise = (0..3).all(|g| p.factors()[g].compatible(ca[g], cb[g]));
                    let mut union = p.support(a);
                    union.extend(p.support(b));
                    union.sort_unstable();
                    union.dedup();
                    if nu >= union.len() {
                        assert_eq!(p.poset().compatible(a, b), coordinatewise);
                    } else {
                        assert!(!p.poset().compatible(a, b) || coordinatewise);
                    }
                }
            }
        }
    }

    #[test]
    fn overflow() {
        let big = build_poset(20, &[], None).unwrap();
        assert!(matches!(
            support_product_capped(&[big.clone(), big], 2, 100),
            Err(PosetError::Overflow { .. })
        ));
    }
}
