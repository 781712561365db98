//! Random ordinals for probe sets and property suites.

use rand::Rng;

use super::{Ordinal, Term};

/// A random ordinal strictly below `bound`, or `None` when `bound` is zero.
///
/// The sample copies a random prefix of `bound`'s terms, lowers the next term
/// and appends a random tail, so every ordinal below `bound` whose
/// coefficients are at most `max_coeff` (and the prefix coefficients) has
/// positive probability.
pub fn random_below<R: Rng + ?Sized>(rng: &mut R, bound: &Ordinal, max_coeff: u64) -> Option<Ordinal> {
    if bound.is_zero() {
        return None;
    }
    if let Some(n) = bound.as_nat() {
        return Some(Ordinal::nat(rng.gen_range(0..n)));
    }
    let max_coeff = max_coeff.max(1);
    let terms = bound.terms();
    let keep = rng.gen_range(0..terms.len());
    let mut value = Ordinal {
        terms: terms[..keep].to_vec(),
    };
    let pivot = &terms[keep];
    if pivot.coefficient > 1 && rng.gen_bool(0.5) {
        let c = rng.gen_range(1..pivot.coefficient);
        value.terms.push(Term {
            exponent: pivot.exponent.clone(),
            coefficient: c,
        });
    }
    let tail = random_below_power(rng, &pivot.exponent, max_coeff);
    Some(&value + &tail)
}

/// A random ordinal below `ω^exponent`.
fn random_below_power<R: Rng + ?Sized>(rng: &mut R, exponent: &Ordinal, max_coeff: u64) -> Ordinal {
    if exponent.is_zero() {
        return Ordinal::zero();
    }
    let count = rng.gen_range(0..=3);
    let mut exps: alloc::vec::Vec<Ordinal> = (0..count)
        .filter_map(|_| random_below(rng, exponent, max_coeff))
        .collect();
    exps.sort_by(|a, b| b.cmp(a));
    exps.into_iter().fold(Ordinal::zero(), |acc, e| {
        &acc + &Ordinal::monomial(e, rng.gen_range(1..=max_coeff))
    })
}
