use alloc::vec::Vec;

use super::{Ordinal, OrdinalError, Term};

pub const DEFAULT_ENUMERATION_CAP: usize = 100_000;

/// All ordinals below `limit` with at most `max_terms` terms and every
/// coefficient at most `max_coeff`, in increasing order. Finite exponents are
/// only bounded by `limit`; transfinite exponents obey the same structural
/// bounds, which keeps the set finite even for limits like `ω^ω`.
pub fn enumerate_bounded(limit: &Ordinal, max_terms: usize, max_coeff: u64) -> Result<Vec<Ordinal>, OrdinalError> {
    enumerate_bounded_capped(limit, max_terms, max_coeff, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_bounded_capped(
    limit: &Ordinal,
    max_terms: usize,
    max_coeff: u64,
    cap: usize,
) -> Result<Vec<Ordinal>, OrdinalError> {
    if limit.is_zero() {
        return Ok(Vec::new());
    }
    if max_terms == 0 || max_coeff == 0 {
        return Ok(alloc::vec![Ordinal::zero()]);
    }
    if let Some(n) = limit.as_nat() {
        let top = max_coeff.min(n - 1);
        if top as u128 + 1 > cap as u128 {
            return Err(OrdinalError::Overflow { cap });
        }
        return Ok((0..=top).map(Ordinal::nat).collect());
    }
    let lead = limit.leading_exponent().expect("nonzero").succ();
    let mut exponents = match lead.as_nat() {
        Some(n) => (0..n).map(Ordinal::nat).collect(),
        None => enumerate_bounded_capped(&lead, max_terms, max_coeff, cap)?,
    };
    // Largest exponent first so that generated term lists are decreasing.
    exponents.reverse();

    let mut out = Vec::new();
    let mut generated = 0usize;
    let mut stack: Vec<Term> = Vec::new();
    extend(
        &exponents,
        0,
        max_terms,
        max_coeff,
        limit,
        cap,
        &mut stack,
        &mut out,
        &mut generated,
    )?;
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    exponents: &[Ordinal],
    from: usize,
    max_terms: usize,
    max_coeff: u64,
    limit: &Ordinal,
    cap: usize,
    stack: &mut Vec<Term>,
    out: &mut Vec<Ordinal>,
    generated: &mut usize,
) -> Result<(), OrdinalError> {
    let value = Ordinal { terms: stack.clone() };
    *generated += 1;
    if *generated > cap.saturating_mul(8) {
        return Err(OrdinalError::Overflow { cap });
    }
    if value >= *limit {
        // Extending keeps the same prefix, so every extension is also too big.
        return Ok(());
    }
    out.push(value);
    if out.len() > cap {
        return Err(OrdinalError::Overflow { cap });
    }
    if stack.len() == max_terms {
        return Ok(());
    }
    for (i, e) in exponents.iter().enumerate().skip(from) {
        for c in 1..=max_coeff {
            stack.push(Term {
                exponent: e.clone(),
                coefficient: c,
            });
            let r = extend(
                exponents,
                i + 1,
                max_terms,
                max_coeff,
                limit,
                cap,
                stack,
                out,
                generated,
            );
            stack.pop();
            r?;
        }
    }
    Ok(())
}
