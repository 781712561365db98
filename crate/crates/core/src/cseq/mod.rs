//! C-sequences: for each limit α a strictly increasing ω-sequence cofinal in
//! α, and `C_{ᾱ+1} = {ᾱ}` at successors.
//!
//! Every limit below ε₀ has cofinality ω, and an increasing ω-sequence that is
//! cofinal in α has no limit points below α, so these sequences are closed
//! unbounded in α.

mod avoid;
mod verify;

use crate::ordinal::{Class, Ordinal};

pub use avoid::{build_avoiding, AvoidSet, AvoidingCSequence};
pub use verify::{verify_csequence, CSeqReport, CSeqViolation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CSeqError {
    #[error("min_above needs ξ < α (got ξ = {xi}, α = {alpha})")]
    OutOfRange { alpha: Ordinal, xi: Ordinal },
    #[error("C_{alpha} is not cofinal: no entry ≥ {xi} within the search budget")]
    BudgetExceeded { alpha: Ordinal, xi: Ordinal },
    #[error("avoid set member {0} is not a limit ordinal")]
    NotLimit(Ordinal),
}

/// A C-sequence, given entrywise.
pub trait CSequence: Sync {
    /// The `i`-th element of `C_α`, or `None` past its end (and always at 0).
    fn entry(&self, alpha: &Ordinal, i: u64) -> Option<Ordinal>;

    /// The least element of `C_α` that is `≥ ξ`, with its index. The default
    /// searches the entries; implementations with a closed form override it.
    fn min_above(&self, alpha: &Ordinal, xi: &Ordinal) -> Result<(Ordinal, u64), CSeqError> {
        search_min_above(|i| self.entry(alpha, i), alpha, xi)
    }
}

impl<C: CSequence + ?Sized> CSequence for &C {
    fn entry(&self, alpha: &Ordinal, i: u64) -> Option<Ordinal> {
        (**self).entry(alpha, i)
    }

    fn min_above(&self, alpha: &Ordinal, xi: &Ordinal) -> Result<(Ordinal, u64), CSeqError> {
        (**self).min_above(alpha, xi)
    }
}

impl<C: CSequence + ?Sized> CSequence for alloc::boxed::Box<C> {
    fn entry(&self, alpha: &Ordinal, i: u64) -> Option<Ordinal> {
        (**self).entry(alpha, i)
    }

    fn min_above(&self, alpha: &Ordinal, xi: &Ordinal) -> Result<(Ordinal, u64), CSeqError> {
        (**self).min_above(alpha, xi)
    }
}

/// Fundamental sequences: `ω[i] = i`, `(γ+ω^{e+1})[i] = γ+ω^e·i` and
/// `(γ+ω^λ)[i] = γ+ω^{λ[i]}` for limit `λ`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StandardCSequence;

pub fn standard_csequence() -> StandardCSequence {
    StandardCSequence
}

impl CSequence for StandardCSequence {
    fn entry(&self, alpha: &Ordinal, i: u64) -> Option<Ordinal> {
        match alpha.classify() {
            Class::Zero => None,
            Class::Successor(pred) => (i == 0).then_some(pred),
            Class::Limit => Some(fundamental(alpha, i)),
        }
    }

    fn min_above(&self, alpha: &Ordinal, xi: &Ordinal) -> Result<(Ordinal, u64), CSeqError> {
        if xi >= alpha {
            return Err(CSeqError::OutOfRange {
                alpha: alpha.clone(),
                xi: xi.clone(),
            });
        }
        match alpha.classify() {
            Class::Successor(pred) => Ok((pred, 0)),
            _ => {
                let pos = fundamental_position(alpha, xi);
                Ok((fundamental(alpha, pos), pos))
            }
        }
    }
}

fn fundamental(alpha: &Ordinal, i: u64) -> Ordinal {
    let (gamma, e) = alpha.split_last_power().expect("limit ordinal");
    match e.classify() {
        Class::Successor(pred) => &gamma + &Ordinal::monomial(pred, i),
        Class::Limit => &gamma + &Ordinal::omega_pow(fundamental(&e, i)),
        Class::Zero => unreachable!("limit ordinals have a positive last exponent"),
    }
}

/// Least `i` with `α[i] ≥ ξ`, for limit `α > ξ`.
fn fundamental_position(alpha: &Ordinal, xi: &Ordinal) -> u64 {
    let (gamma, e) = alpha.split_last_power().expect("limit ordinal");
    if xi <= &gamma {
        return 0;
    }
    // ξ = γ + δ with 0 < δ < ω^e.
    let delta = xi.left_subtract(&gamma).expect("γ < ξ");
    let lead = &delta.terms()[0];
    match e.classify() {
        Class::Successor(e1) => {
            if lead.exponent() != &e1 {
                1
            } else if delta.terms().len() == 1 {
                lead.coefficient()
            } else {
                lead.coefficient() + 1
            }
        }
        Class::Limit => {
            // ω^{e[i]} ≥ δ iff e[i] > d, or e[i] = d and δ = ω^d.
            let d = lead.exponent();
            let bound = if delta.terms().len() == 1 && lead.coefficient() == 1 {
                d.clone()
            } else {
                d.succ()
            };
            fundamental_position(&e, &bound)
        }
        Class::Zero => unreachable!("limit ordinals have a positive last exponent"),
    }
}

/// Doublings allowed while galloping towards ξ before giving up.
pub const MIN_ABOVE_DOUBLINGS: u32 = 62;

/// The least element of `C_α` that is `≥ ξ`, with its index (which is the
/// order type of `C_α ∩ ξ`).
pub fn min_above<C: CSequence + ?Sized>(c: &C, alpha: &Ordinal, xi: &Ordinal) -> Result<(Ordinal, u64), CSeqError> {
    c.min_above(alpha, xi)
}

/// Galloping plus bisection over `entry`, which must be strictly increasing
/// for the answer to be exact (see [`verify_csequence`]).
pub fn search_min_above<F: FnMut(u64) -> Option<Ordinal>>(
    mut entry: F,
    alpha: &Ordinal,
    xi: &Ordinal,
) -> Result<(Ordinal, u64), CSeqError> {
    if xi >= alpha {
        return Err(CSeqError::OutOfRange {
            alpha: alpha.clone(),
            xi: xi.clone(),
        });
    }
    let exceeded = || CSeqError::BudgetExceeded {
        alpha: alpha.clone(),
        xi: xi.clone(),
    };
    let first = entry(0).ok_or_else(exceeded)?;
    if &first >= xi {
        return Ok((first, 0));
    }
    // entry(lo) < ξ throughout.
    let mut lo = 0u64;
    let mut hi = 1u64;
    let mut doublings = 0;
    let found = loop {
        match entry(hi) {
            Some(v) if &v >= xi => break (v, hi),
            Some(_) => {
                lo = hi;
                doublings += 1;
                if doublings > MIN_ABOVE_DOUBLINGS {
                    return Err(exceeded());
                }
                hi = hi.checked_mul(2).ok_or_else(exceeded)?;
            }
            None => {
                // A finite sequence: scan what is left of it.
                for i in lo + 1..hi {
                    match entry(i) {
                        Some(v) if &v >= xi => return Ok((v, i)),
                        Some(_) => {}
                        None => break,
                    }
                }
                return Err(exceeded());
            }
        }
    };
    let (mut best, mut hi) = found;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match entry(mid) {
            Some(v) if &v >= xi => {
                best = v;
                hi = mid;
            }
            Some(_) => lo = mid,
            None => return Err(exceeded()),
        }
    }
    Ok((best, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn standard_entries() {
        let c = standard_csequence();
        assert_eq!(c.entry(&o("w"), 3), Some(o("3")));
        assert_eq!(c.entry(&o("w+1"), 0), Some(o("w")));
        assert_eq!(c.entry(&o("w+1"), 1), None);
        assert_eq!(c.entry(&Ordinal::zero(), 0), None);
        assert_eq!(c.entry(&o("w*2"), 0), Some(o("w")));
        assert_eq!(c.entry(&o("w*2"), 2), Some(o("w+2")));
        assert_eq!(c.entry(&o("w^(2)"), 3), Some(o("w*3")));
        assert_eq!(c.entry(&o("w^(2)+w^(2)"), 1), Some(o("w^(2)+w")));
        assert_eq!(c.entry(&o("w^(w)"), 0), Some(o("1")));
        assert_eq!(c.entry(&o("w^(w)"), 4), Some(o("w^(4)")));
        assert_eq!(c.entry(&o("w^(w*2)"), 1), Some(o("w^(w+1)")));
    }

    #[test]
    fn min_above_examples() {
        let c = standard_csequence();
        assert_eq!(min_above(&c, &o("w"), &o("5")), Ok((o("5"), 5)));
        assert_eq!(min_above(&c, &o("w*2"), &o("w")), Ok((o("w"), 0)));
        assert_eq!(min_above(&c, &o("w*2"), &o("w+1")), Ok((o("w+1"), 1)));
        for beta in ["0", "7", "w", "w^(2)*3+w"] {
            let b = o(beta);
            assert_eq!(min_above(&c, &b.succ(), &b), Ok((b.clone(), 0)));
        }
        assert_eq!(min_above(&c, &o("w^(3)"), &o("w^(2)*5+1")), Ok((o("w^(2)*6"), 6)));
        assert!(matches!(
            min_above(&c, &o("w"), &o("w")),
            Err(CSeqError::OutOfRange { .. })
        ));
    }

    #[test]
    fn min_above_large_positions() {
        let c = standard_csequence();
        let (v, p) = min_above(&c, &o("w"), &Ordinal::nat(1_000_003)).unwrap();
        assert_eq!((v, p), (Ordinal::nat(1_000_003), 1_000_003));
    }

    struct Finite;
    impl CSequence for Finite {
        fn entry(&self, alpha: &Ordinal, i: u64) -> Option<Ordinal> {
            // A bogus sequence for ω that stops after three entries.
            let _ = alpha;
            (i < 3).then(|| Ordinal::nat(i))
        }
    }

    #[test]
    fn closed_form_matches_search() {
        use crate::ordinal::random::random_below;
        use rand::{rngs::StdRng, SeedableRng};
        let c = standard_csequence();
        let mut rng = StdRng::seed_from_u64(7);
        let levels = [
            "w",
            "w*2",
            "w^(2)",
            "w^(3)*2+w^(2)",
            "w^(w)",
            "w^(w+1)",
            "w^(w*2)+w^(w)",
            "w^(w^(2))",
        ];
        for level in levels {
            let alpha = o(level);
            for _ in 0..300 {
                let xi = random_below(&mut rng, &alpha, 6).unwrap();
                let fast = c.min_above(&alpha, &xi).unwrap();
                let slow = search_min_above(|i| c.entry(&alpha, i), &alpha, &xi).unwrap();
                assert_eq!(fast, slow, "α = {alpha}, ξ = {xi}");
            }
        }
    }

    #[test]
    fn non_cofinal_sequence_exceeds_budget() {
        assert!(matches!(
            min_above(&Finite, &o("w"), &o("10")),
            Err(CSeqError::BudgetExceeded { .. })
        ));
        assert_eq!(min_above(&Finite, &o("w"), &o("2")), Ok((o("2"), 2)));
    }
}
