//! Fixed-width bit sets used as occupancy masks.
//!
//! Two widths share one trait: plain `u64` for universes of at most 64
//! elements (the hot paths of enumeration and solving) and [`Mask`] for the
//! full board range.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, BitXor, Not, Shl, Shr};

/// Number of 64-bit words in a [`Mask`].
pub const WORDS: usize = 6;
/// Capacity of a [`Mask`] in bits.
pub const MASK_BITS: usize = WORDS * 64;

pub trait Bits:
    Copy
    + Eq
    + Hash
    + fmt::Debug
    + Send
    + Sync
    + BitAnd<Output = Self>
    + BitOr<Output = Self>
    + BitXor<Output = Self>
    + Not<Output = Self>
    + Shl<u32, Output = Self>
    + Shr<u32, Output = Self>
    + BitAndAssign
    + BitOrAssign
{
    const ZERO: Self;
    const CAPACITY: usize;

    fn single(i: usize) -> Self;
    fn get(&self, i: usize) -> bool;
    fn count(&self) -> u32;
    fn lowest(&self) -> Option<usize>;

    fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }

    fn with(self, i: usize) -> Self {
        self | Self::single(i)
    }

    fn without(self, i: usize) -> Self {
        self & !Self::single(i)
    }

    fn ones(self) -> Ones<Self> {
        Ones(self)
    }

    /// Mask of the first `len` bits.
    fn low(len: usize) -> Self {
        (0..len).fold(Self::ZERO, |m, i| m.with(i))
    }
}

/// Iterator over set bit positions, ascending.
#[derive(Clone, Debug)]
pub struct Ones<B>(B);

impl<B: Bits> Iterator for Ones<B> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        let i = self.0.lowest()?;
        self.0 = self.0.without(i);
        Some(i)
    }
}

/// Lexicographic order of two masks read as bit strings from index 0
/// upward, with an unset bit ordering before a set one.
pub fn lex_cmp<B: Bits>(a: B, b: B) -> Ordering {
    match (a ^ b).lowest() {
        None => Ordering::Equal,
        Some(i) if a.get(i) => Ordering::Greater,
        Some(_) => Ordering::Less,
    }
}

impl Bits for u64 {
    const ZERO: Self = 0;
    const CAPACITY: usize = 64;

    #[inline]
    fn single(i: usize) -> Self {
        1 << i
    }

    #[inline]
    fn get(&self, i: usize) -> bool {
        (self >> i) & 1 == 1
    }

    #[inline]
    fn count(&self) -> u32 {
        self.count_ones()
    }

    #[inline]
    fn lowest(&self) -> Option<usize> {
        (*self != 0).then(|| self.trailing_zeros() as usize)
    }

    fn low(len: usize) -> Self {
        if len >= 64 {
            u64::MAX
        } else {
            (1 << len) - 1
        }
    }
}

/// Multi-word bit set, large enough for an 18×18 grid or the edges of a
/// 14×14 dot grid.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mask(pub [u64; WORDS]);

impl Mask {
    pub fn from_u64(x: u64) -> Self {
        let mut w = [0; WORDS];
        w[0] = x;
        Mask(w)
    }

    /// Low word, for universes that fit in 64 bits.
    pub fn to_u64(self) -> u64 {
        self.0[0]
    }
}

impl From<u64> for Mask {
    fn from(x: u64) -> Self {
        Mask::from_u64(x)
    }
}

impl fmt::Debug for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mask{:?}", self.ones().collect::<Vec<_>>())
    }
}

impl BitAnd for Mask {
    type Output = Mask;
    fn bitand(mut self, rhs: Mask) -> Mask {
        self &= rhs;
        self
    }
}

impl BitOr for Mask {
    type Output = Mask;
    fn bitor(mut self, rhs: Mask) -> Mask {
        self |= rhs;
        self
    }
}

impl BitXor for Mask {
    type Output = Mask;
    fn bitxor(mut self, rhs: Mask) -> Mask {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a ^= b;
        }
        self
    }
}

impl BitAndAssign for Mask {
    fn bitand_assign(&mut self, rhs: Mask) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a &= b;
        }
    }
}

impl BitOrAssign for Mask {
    fn bitor_assign(&mut self, rhs: Mask) {
        for (a, b) in self.0.iter_mut().zip(rhs.0) {
            *a |= b;
        }
    }
}

impl Not for Mask {
    type Output = Mask;
    fn not(mut self) -> Mask {
        for a in self.0.iter_mut() {
            *a = !*a;
        }
        self
    }
}

impl Shl<u32> for Mask {
    type Output = Mask;
    fn shl(self, k: u32) -> Mask {
        let (words, bits) = ((k / 64) as usize, k % 64);
        let mut out = [0u64; WORDS];
        for i in (words..WORDS).rev() {
            let src = i - words;
            out[i] = self.0[src] << bits;
            if bits > 0 && src > 0 {
                out[i] |= self.0[src - 1] >> (64 - bits);
            }
        }
        Mask(out)
    }
}

impl Shr<u32> for Mask {
    type Output = Mask;
    fn shr(self, k: u32) -> Mask {
        let (words, bits) = ((k / 64) as usize, k % 64);
        let mut out = [0u64; WORDS];
        for i in 0..WORDS.saturating_sub(words) {
            let src = i + words;
            out[i] = self.0[src] >> bits;
            if bits > 0 && src + 1 < WORDS {
                out[i] |= self.0[src + 1] << (64 - bits);
            }
        }
        Mask(out)
    }
}

impl Bits for Mask {
    const ZERO: Self = Mask([0; WORDS]);
    const CAPACITY: usize = MASK_BITS;

    fn single(i: usize) -> Self {
        let mut w = [0; WORDS];
        w[i / 64] = 1 << (i % 64);
        Mask(w)
    }

    fn get(&self, i: usize) -> bool {
        (self.0[i / 64] >> (i % 64)) & 1 == 1
    }

    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    fn lowest(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mask_from(bits: &[usize]) -> Mask {
        bits.iter().fold(Mask::ZERO, |m, &i| m.with(i))
    }

    #[test]
    fn lex_order_prefers_unset_low_bits() {
        assert_eq!(lex_cmp(0b10u64, 0b01u64), Ordering::Less);
        assert_eq!(lex_cmp(0b11u64, 0b01u64), Ordering::Greater);
        assert_eq!(lex_cmp(5u64, 5u64), Ordering::Equal);
    }

    #[test]
    fn shifts_cross_word_boundaries() {
        let m = mask_from(&[63, 100]);
        assert_eq!((m << 1).ones().collect::<Vec<_>>(), vec![64, 101]);
        assert_eq!((m >> 64).ones().collect::<Vec<_>>(), vec![36]);
        assert_eq!((m << 330).ones().collect::<Vec<_>>(), Vec::<usize>::new());
    }

    proptest! {
        #[test]
        fn mask_shifts_match_index_arithmetic(
            bits in proptest::collection::btree_set(0usize..MASK_BITS, 0..20),
            k in 0u32..200,
        ) {
            let m = bits.iter().fold(Mask::ZERO, |m, &i| m.with(i));
            let left: Vec<usize> = bits.iter().map(|&i| i + k as usize).filter(|&i| i < MASK_BITS).collect();
            let right: Vec<usize> = bits.iter().filter(|&&i| i >= k as usize).map(|&i| i - k as usize).collect();
            prop_assert_eq!((m << k).ones().collect::<Vec<_>>(), left);
            prop_assert_eq!((m >> k).ones().collect::<Vec<_>>(), right);
            prop_assert_eq!(m.count() as usize, bits.len());
        }

        #[test]
        fn lex_cmp_agrees_between_widths(a in any::<u64>(), b in any::<u64>()) {
            prop_assert_eq!(lex_cmp(a, b), lex_cmp(Mask::from_u64(a), Mask::from_u64(b)));
        }
    }
}
