use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// A natural number coding a finite sequence of naturals.
///
/// The coding is `⟨⟩ ↦ 0` and `a⌢s ↦ 2^a·(2·code(s) + 1)`, i.e. the pairing
/// `(a, b) ↦ 2^a(2b+1)` of `ℕ×ℕ` onto the positive naturals applied along the
/// sequence. In binary, the code of `⟨a₁,…,aₖ⟩` is the blocks `1 0^{aₖ} … 1 0^{a₁}`,
/// so small entries give small codes.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SeqCode(BigUint);

impl SeqCode {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
}

impl From<u64> for SeqCode {
    fn from(n: u64) -> Self {
        SeqCode(BigUint::from(n))
    }
}

impl From<BigUint> for SeqCode {
    fn from(n: BigUint) -> Self {
        SeqCode(n)
    }
}

impl fmt::Display for SeqCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

pub fn encode_seq(seq: &[u64]) -> SeqCode {
    let mut acc = BigUint::zero();
    for &a in seq.iter().rev() {
        acc = ((acc << 1u32) + BigUint::one()) << a;
    }
    SeqCode(acc)
}

pub fn decode_seq(code: &SeqCode) -> Vec<u64> {
    let mut n = code.0.clone();
    let mut out = Vec::new();
    while let Some(a) = n.trailing_zeros() {
        n >>= a;
        n -= BigUint::one();
        n >>= 1u32;
        out.push(a);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_codes() {
        assert_eq!(encode_seq(&[]), SeqCode::from(0));
        assert!(decode_seq(&SeqCode::from(0)).is_empty());
        assert_eq!(decode_seq(&encode_seq(&[5])), alloc::vec![5]);
        assert_eq!(decode_seq(&encode_seq(&[3, 0, 7])), alloc::vec![3, 0, 7]);
        // ⟨0⟩ ↦ 1, ⟨1⟩ ↦ 2, ⟨0,0⟩ ↦ 3, ⟨2⟩ ↦ 4
        assert_eq!(encode_seq(&[0]).to_u64(), Some(1));
        assert_eq!(encode_seq(&[1]).to_u64(), Some(2));
        assert_eq!(encode_seq(&[0, 0]).to_u64(), Some(3));
        assert_eq!(encode_seq(&[2]).to_u64(), Some(4));
    }

    #[test]
    fn first_thousand_naturals_decode_to_distinct_sequences() {
        let mut seen = alloc::collections::BTreeSet::new();
        for n in 0u64..1000 {
            let s = decode_seq(&SeqCode::from(n));
            assert_eq!(encode_seq(&s).to_u64(), Some(n));
            assert!(seen.insert(s));
        }
    }

    proptest! {
        #[test]
        fn roundtrip(seq in proptest::collection::vec(0u64..=10_000, 0..=8)) {
            prop_assert_eq!(decode_seq(&encode_seq(&seq)), seq);
        }

        #[test]
        fn injective(a in proptest::collection::vec(0u64..=40, 0..=6),
                     b in proptest::collection::vec(0u64..=40, 0..=6)) {
            prop_assert_eq!(encode_seq(&a) == encode_seq(&b), a == b);
        }
    }
}
