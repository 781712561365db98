//! Walks `β = γ₀ > γ₁ > … > γₙ = α` with `γ_{i+1} = min(C_{γ_i} \ α)`, and
//! their full codes `ρ₀(α, β) = ⟨otp(C_{γ₀} ∩ α), …, otp(C_{γ_{n−1}} ∩ α)⟩`.
//!
//! With ω-type C-sequences every order type is a natural, so codes are
//! sequences of naturals.

use alloc::vec::Vec;

use crate::cseq::{min_above, CSeqError, CSequence};
use crate::ordinal::{encode_seq, Ordinal, SeqCode};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WalkError {
    #[error("walks need α ≤ β (got α = {alpha}, β = {beta})")]
    AlphaAboveBeta { alpha: Ordinal, beta: Ordinal },
    #[error(transparent)]
    CSeq(#[from] CSeqError),
    #[error("C-sequence step from {from} towards {alpha} does not descend")]
    NotDescending { from: Ordinal, alpha: Ordinal },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Walk {
    pub steps: Vec<Ordinal>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Rho0Code {
    pub entries: Vec<u64>,
}

impl Rho0Code {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn seq_code(&self) -> SeqCode {
        encode_seq(&self.entries)
    }
}

impl core::fmt::Display for Rho0Code {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("<")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(">")
    }
}

/// The walk from `beta` down to `alpha` together with its full code.
pub fn walk_with_code<C: CSequence + ?Sized>(
    c: &C,
    alpha: &Ordinal,
    beta: &Ordinal,
) -> Result<(Walk, Rho0Code), WalkError> {
    if alpha > beta {
        return Err(WalkError::AlphaAboveBeta {
            alpha: alpha.clone(),
            beta: beta.clone(),
        });
    }
    let mut steps = alloc::vec![beta.clone()];
    let mut code = Vec::new();
    let mut current = beta.clone();
    while &current != alpha {
        let (next, pos) = min_above(c, &current, alpha)?;
        if next >= current {
            return Err(WalkError::NotDescending {
                from: current,
                alpha: alpha.clone(),
            });
        }
        code.push(pos);
        steps.push(next.clone());
        current = next;
    }
    Ok((Walk { steps }, Rho0Code { entries: code }))
}

pub fn walk<C: CSequence + ?Sized>(c: &C, alpha: &Ordinal, beta: &Ordinal) -> Result<Walk, WalkError> {
    walk_with_code(c, alpha, beta).map(|(w, _)| w)
}

pub fn rho0<C: CSequence + ?Sized>(c: &C, alpha: &Ordinal, beta: &Ordinal) -> Result<Rho0Code, WalkError> {
    walk_with_code(c, alpha, beta).map(|(_, code)| code)
}
