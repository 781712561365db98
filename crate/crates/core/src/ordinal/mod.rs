//! Ordinals below ε₀ in Cantor normal form.
//!
//! An [`Ordinal`] is a finite sum `ω^e₁·c₁ + … + ω^eₖ·cₖ` with strictly
//! decreasing exponents (themselves ordinals) and positive coefficients. The
//! empty sum is `0`. All operations are exact and allocation is the only side
//! effect.

mod enumerate;
mod parse;
pub mod random;
mod seqcode;

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Add;

pub use enumerate::{enumerate_bounded, enumerate_bounded_capped, DEFAULT_ENUMERATION_CAP};
pub use parse::{format_list, parse_list, ParseOrdinalError};
pub use seqcode::{decode_seq, encode_seq, SeqCode};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrdinalError {
    #[error("term sequence is not in Cantor normal form: {0}")]
    NotNormal(&'static str),
    #[error("enumeration exceeds the cap of {cap} ordinals")]
    Overflow { cap: usize },
}

/// One summand `ω^exponent · coefficient`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Term {
    exponent: Ordinal,
    coefficient: u64,
}

impl Term {
    pub fn exponent(&self) -> &Ordinal {
        &self.exponent
    }

    pub fn coefficient(&self) -> u64 {
        self.coefficient
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<Term>,
}

/// Shape of an ordinal as seen by C-sequences and walks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Class {
    Zero,
    Successor(Ordinal),
    Limit,
}

impl Ordinal {
    pub const ZERO: Ordinal = Ordinal { terms: Vec::new() };

    pub fn zero() -> Self {
        Self::ZERO
    }

    pub fn one() -> Self {
        Self::nat(1)
    }

    pub fn nat(n: u64) -> Self {
        Self::monomial(Self::ZERO, n)
    }

    pub fn omega() -> Self {
        Self::omega_pow(Self::one())
    }

    /// `ω^exponent`.
    pub fn omega_pow(exponent: Ordinal) -> Self {
        Self::monomial(exponent, 1)
    }

    /// `ω^exponent · coefficient`; a zero coefficient gives `0`.
    pub fn monomial(exponent: Ordinal, coefficient: u64) -> Self {
        if coefficient == 0 {
            return Self::ZERO;
        }
        Ordinal {
            terms: alloc::vec![Term { exponent, coefficient }],
        }
    }

    /// Builds an ordinal from `(exponent, coefficient)` pairs, rejecting
    /// anything that is not already in normal form.
    pub fn from_terms(pairs: Vec<(Ordinal, u64)>) -> Result<Self, OrdinalError> {
        let mut terms: Vec<Term> = Vec::with_capacity(pairs.len());
        for (exponent, coefficient) in pairs {
            if coefficient == 0 {
                return Err(OrdinalError::NotNormal("zero coefficient"));
            }
            if let Some(last) = terms.last() {
                if exponent >= last.exponent {
                    return Err(OrdinalError::NotNormal("exponents must strictly decrease"));
                }
            }
            terms.push(Term { exponent, coefficient });
        }
        Ok(Ordinal { terms })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a natural number, if the ordinal is finite.
    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exponent.is_zero() => Some(t.coefficient),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.as_nat().is_some()
    }

    pub fn leading_exponent(&self) -> Option<&Ordinal> {
        self.terms.first().map(|t| &t.exponent)
    }

    pub fn classify(&self) -> Class {
        match self.terms.last() {
            None => Class::Zero,
            Some(last) if last.exponent.is_zero() => {
                let mut pred = self.clone();
                let tail = pred.terms.last_mut().expect("nonempty");
                if tail.coefficient == 1 {
                    pred.terms.pop();
                } else {
                    tail.coefficient -= 1;
                }
                Class::Successor(pred)
            }
            Some(_) => Class::Limit,
        }
    }

    pub fn is_limit(&self) -> bool {
        matches!(self.terms.last(), Some(t) if !t.exponent.is_zero())
    }

    pub fn is_successor(&self) -> bool {
        matches!(self.terms.last(), Some(t) if t.exponent.is_zero())
    }

    pub fn succ(&self) -> Ordinal {
        self.add_nat(1)
    }

    pub fn add_nat(&self, n: u64) -> Ordinal {
        self + &Ordinal::nat(n)
    }

    /// Splits a limit ordinal as `γ + ω^e` where `e > 0` is the last exponent.
    /// Returns `None` for zero and successors.
    pub fn split_last_power(&self) -> Option<(Ordinal, Ordinal)> {
        let last = self.terms.last()?;
        if last.exponent.is_zero() {
            return None;
        }
        let mut prefix = self.clone();
        let tail = prefix.terms.last_mut().expect("nonempty");
        if tail.coefficient == 1 {
            prefix.terms.pop();
        } else {
            tail.coefficient -= 1;
        }
        Some((prefix, last.exponent.clone()))
    }

    /// Splits `self = λ + n` with `λ` zero or a limit.
    pub fn split_finite(&self) -> (Ordinal, u64) {
        match self.terms.last() {
            Some(t) if t.exponent.is_zero() => {
                let n = t.coefficient;
                let mut lambda = self.clone();
                lambda.terms.pop();
                (lambda, n)
            }
            _ => (self.clone(), 0),
        }
    }

    /// The unique `δ` with `prefix + δ = self`, if `prefix ≤ self`.
    pub fn left_subtract(&self, prefix: &Ordinal) -> Option<Ordinal> {
        if prefix > self {
            return None;
        }
        let k = self.terms.iter().zip(&prefix.terms).take_while(|(a, b)| a == b).count();
        let mut terms = Vec::with_capacity(self.terms.len() - k);
        match (self.terms.get(k), prefix.terms.get(k)) {
            (Some(a), Some(b)) if a.exponent == b.exponent => {
                // Here b.coefficient < a.coefficient since prefix ≤ self.
                terms.push(Term {
                    exponent: a.exponent.clone(),
                    coefficient: a.coefficient - b.coefficient,
                });
                terms.extend(self.terms[k + 1..].iter().cloned());
            }
            _ => terms.extend(self.terms[k..].iter().cloned()),
        }
        Some(Ordinal { terms })
    }

    /// Checks every invariant of the normal form, recursively.
    pub fn is_normal(&self) -> bool {
        self.terms.iter().all(|t| t.coefficient > 0 && t.exponent.is_normal())
            && self.terms.windows(2).all(|w| w[0].exponent > w[1].exponent)
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            match a.exponent.cmp(&b.exponent) {
                Ordering::Equal => {}
                ord => return ord,
            }
            match a.coefficient.cmp(&b.coefficient) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add<&Ordinal> for &Ordinal {
    type Output = Ordinal;

    fn add(self, rhs: &Ordinal) -> Ordinal {
        let Some(head) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .take_while(|t| t.exponent > head.exponent)
            .cloned()
            .collect();
        let mut first = head.clone();
        if let Some(t) = self.terms.get(terms.len()) {
            if t.exponent == head.exponent {
                first.coefficient = first
                    .coefficient
                    .checked_add(t.coefficient)
                    .expect("ordinal coefficient overflow");
            }
        }
        terms.push(first);
        terms.extend(rhs.terms[1..].iter().cloned());
        Ordinal { terms }
    }
}

impl Add for Ordinal {
    type Output = Ordinal;

    fn add(self, rhs: Ordinal) -> Ordinal {
        &self + &rhs
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::nat(n)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if t.exponent.is_zero() {
                write!(f, "{}", t.coefficient)?;
                continue;
            }
            if t.exponent.as_nat() == Some(1) {
                f.write_str("w")?;
            } else {
                write!(f, "w^({})", t.exponent)?;
            }
            if t.coefficient > 1 {
                write!(f, "*{}", t.coefficient)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Ordinal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for Ordinal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = <alloc::string::String as serde::Deserialize>::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
