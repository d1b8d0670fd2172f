//! Packed fixed-length bit strings.
//!
//! Position 0 is the leftmost character of the textual form, so `"1000"`
//! has its only one-bit at index 0.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use rand::Rng;

use crate::error::{invalid, Error, Result};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitString {
    words: Vec<u64>,
    len: usize,
}

impl BitString {
    pub fn zeros(len: usize) -> Self {
        BitString {
            words: vec![0; len.div_ceil(WORD)],
            len,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut x = Self::zeros(len);
        for w in &mut x.words {
            *w = u64::MAX;
        }
        x.clear_tail();
        x
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut x = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                x.set(i, true);
            }
        }
        x
    }

    /// Builds the string whose bits are the low `len` bits of `value`, with
    /// bit `i` of `value` at position `i`. Used for exhaustive enumeration.
    pub fn from_index(value: u64, len: usize) -> Self {
        assert!(len <= WORD, "from_index supports at most 64 bits");
        let mut x = Self::zeros(len);
        if len > 0 {
            x.words[0] = if len == WORD { value } else { value & ((1u64 << len) - 1) };
        }
        x
    }

    /// Uniformly random string of the given length.
    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut x = Self::zeros(len);
        for w in &mut x.words {
            *w = rng.gen();
        }
        x.clear_tail();
        x
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    /// `|x|_1`.
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn count_zeros(&self) -> usize {
        self.len - self.count_ones()
    }

    /// Number of one-bits among positions `range`.
    pub fn count_ones_in(&self, range: Range<usize>) -> usize {
        assert!(range.end <= self.len && range.start <= range.end);
        let mut count = 0;
        let mut pos = range.start;
        while pos < range.end {
            let word = pos / WORD;
            let offset = pos % WORD;
            let take = (WORD - offset).min(range.end - pos);
            let mask = if take == WORD { u64::MAX } else { ((1u64 << take) - 1) << offset };
            count += (self.words[word] & mask).count_ones() as usize;
            pos += take;
        }
        count
    }

    /// The slice `x_{[a..b)}` as a new string.
    pub fn slice(&self, range: Range<usize>) -> BitString {
        assert!(range.end <= self.len && range.start <= range.end);
        let mut out = BitString::zeros(range.len());
        for (j, i) in range.enumerate() {
            if self.get(i) {
                out.set(j, true);
            }
        }
        out
    }

    /// Bitwise complement `x̄`.
    pub fn complement(&self) -> BitString {
        let mut out = BitString {
            words: self.words.iter().map(|w| !w).collect(),
            len: self.len,
        };
        out.clear_tail();
        out
    }

    /// Length of the maximal prefix of ones.
    pub fn leading_ones(&self) -> usize {
        for (wi, w) in self.words.iter().enumerate() {
            if *w != u64::MAX {
                return (wi * WORD + w.trailing_ones() as usize).min(self.len);
            }
        }
        self.len
    }

    /// Length of the maximal suffix of zeros.
    pub fn trailing_zeros(&self) -> usize {
        let mut count = 0;
        for i in (0..self.len).rev() {
            if self.get(i) {
                break;
            }
            count += 1;
        }
        count
    }

    pub fn hamming_distance(&self, other: &BitString) -> Result<usize> {
        if self.len != other.len {
            return Err(Error::DimensionMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum())
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(invalid(format!("bit strings contain only 0 and 1, got {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BitString::from_bits(&bits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    #[test]
    fn ones_count_examples() {
        assert_eq!(bs("0000").count_ones(), 0);
        assert_eq!(bs("1111").count_ones(), 4);
        assert_eq!(bs("1010").count_ones(), 2);
    }

    #[test]
    fn parse_rejects_other_chars() {
        assert!("10a1".parse::<BitString>().is_err());
    }

    #[test]
    fn prefix_suffix() {
        assert_eq!(bs("1101").leading_ones(), 2);
        assert_eq!(bs("1111").leading_ones(), 4);
        assert_eq!(bs("0110").trailing_zeros(), 1);
        assert_eq!(bs("0000").trailing_zeros(), 4);
        assert_eq!(BitString::ones(64).leading_ones(), 64);
        assert_eq!(BitString::ones(130).leading_ones(), 130);
    }

    #[test]
    fn complement_clears_padding() {
        let x = BitString::zeros(70).complement();
        assert_eq!(x.count_ones(), 70);
        assert_eq!(x, BitString::ones(70));
    }

    #[test]
    fn from_index_matches_positions() {
        let x = BitString::from_index(0b1011, 4);
        assert_eq!(x.to_string(), "1101");
    }

    proptest! {
        #[test]
        fn block_counts_match_naive(seed in any::<u64>(), len in 1usize..200, a in 0usize..200, b in 0usize..200) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = BitString::random(len, &mut rng);
            let (lo, hi) = (a.min(b) % (len + 1), a.max(b) % (len + 1));
            let (lo, hi) = (lo.min(hi), lo.max(hi));
            let naive = (lo..hi).filter(|&i| x.get(i)).count();
            prop_assert_eq!(x.count_ones_in(lo..hi), naive);
            prop_assert_eq!(x.slice(lo..hi).count_ones(), naive);
            prop_assert_eq!(x.count_ones() + x.complement().count_ones(), len);
        }

        #[test]
        fn display_parse_roundtrip(bits in proptest::collection::vec(any::<bool>(), 0..150)) {
            let x = BitString::from_bits(&bits);
            prop_assert_eq!(x.to_string().parse::<BitString>().unwrap(), x);
        }
    }
}
