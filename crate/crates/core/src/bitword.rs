//! Packed binary words.
//!
//! Bits are stored most-significant-first: position 0 is the top bit of the
//! first `u64`. With that packing the derived `Ord` on the word vector is the
//! lexicographic order over positions (0 < 1, position 0 most significant),
//! which is the canonical order used for mask sets.

use std::fmt;
use std::ops::{BitXor, BitXorAssign, Not};
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(WORD)
}

#[inline]
fn bit_mask(pos: usize) -> u64 {
    1u64 << (WORD - 1 - pos % WORD)
}

/// A fixed-length binary vector.
///
/// Masks, codewords and read words all have length `2^m`; the type itself
/// accepts any length so it can also carry generator-matrix columns and
/// label restrictions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitWord {
    len: usize,
    words: Vec<u64>,
}

impl BitWord {
    pub fn zeros(len: usize) -> Self {
        BitWord {
            len,
            words: vec![0; word_count(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut w = BitWord {
            len,
            words: vec![u64::MAX; word_count(len)],
        };
        w.clear_tail();
        w
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % WORD == 0 {
                words.push(0);
            }
            if b {
                *words.last_mut().unwrap() |= bit_mask(len);
            }
            len += 1;
        }
        BitWord { len, words }
    }

    /// Builds a word from 0/1 bytes; any nonzero byte is a 1.
    pub fn from_u8s(bits: &[u8]) -> Self {
        Self::from_bits(bits.iter().map(|&b| b != 0))
    }

    /// Word of length `len` whose bit `j` is `f(j)`.
    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        Self::from_bits((0..len).map(&mut f))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// `Some(m)` when the length is `2^m`.
    pub fn log_len(&self) -> Option<u32> {
        self.len
            .is_power_of_two()
            .then(|| self.len.trailing_zeros())
    }

    #[inline]
    pub fn get(&self, pos: usize) -> bool {
        debug_assert!(pos < self.len);
        self.words[pos / WORD] & bit_mask(pos) != 0
    }

    #[inline]
    pub fn set(&mut self, pos: usize, value: bool) {
        assert!(
            pos < self.len,
            "bit {pos} out of range for length {}",
            self.len
        );
        let m = bit_mask(pos);
        if value {
            self.words[pos / WORD] |= m;
        } else {
            self.words[pos / WORD] &= !m;
        }
    }

    #[inline]
    pub fn flip(&mut self, pos: usize) {
        assert!(
            pos < self.len,
            "bit {pos} out of range for length {}",
            self.len
        );
        self.words[pos / WORD] ^= bit_mask(pos);
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn to_bits(&self) -> Vec<bool> {
        self.iter().collect()
    }

    pub fn to_u8s(&self) -> Vec<u8> {
        self.iter().map(u8::from).collect()
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Position of the first 1 bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD + w.leading_zeros() as usize)
    }

    /// Number of positions where both words are 1.
    pub fn and_weight(&self, other: &BitWord) -> usize {
        assert_eq!(self.len, other.len, "length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// One butterfly step of the binary Moebius transform along variable `var`
    /// (bit `var` of the position index): every position with that bit set
    /// absorbs the value of its partner with the bit cleared.
    pub(crate) fn fold_variable(&mut self, var: u32) {
        const LOW: [u64; 6] = [
            0x5555_5555_5555_5555,
            0x3333_3333_3333_3333,
            0x0f0f_0f0f_0f0f_0f0f,
            0x00ff_00ff_00ff_00ff,
            0x0000_ffff_0000_ffff,
            0x0000_0000_ffff_ffff,
        ];
        if var < 6 {
            let shift = 1u32 << var;
            let mask = LOW[var as usize];
            for w in &mut self.words {
                *w ^= (*w >> shift) & mask;
            }
        } else {
            let stride = 1usize << (var - 6);
            for j in 0..self.words.len() {
                if j & stride != 0 {
                    self.words[j] ^= self.words[j - stride];
                }
            }
        }
    }

    pub fn is_all_ones(&self) -> bool {
        self.weight() == self.len
    }

    pub fn distance(&self, other: &BitWord) -> usize {
        assert_eq!(self.len, other.len, "length mismatch");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    pub fn complement(&self) -> BitWord {
        let mut w = BitWord {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        w.clear_tail();
        w
    }

    /// `[self, other]`.
    pub fn concat(&self, other: &BitWord) -> BitWord {
        if self.len.is_multiple_of(WORD) {
            let mut words = Vec::with_capacity(self.words.len() + other.words.len());
            words.extend_from_slice(&self.words);
            words.extend_from_slice(&other.words);
            return BitWord {
                len: self.len + other.len,
                words,
            };
        }
        BitWord::from_bits(self.iter().chain(other.iter()))
    }

    /// `[self, self]`.
    pub fn doubled(&self) -> BitWord {
        self.concat(self)
    }

    /// The first and second half of an even-length word.
    pub fn halves(&self) -> (BitWord, BitWord) {
        let h = self.len / 2;
        (self.slice(0, h), self.slice(h, self.len))
    }

    pub fn slice(&self, start: usize, end: usize) -> BitWord {
        assert!(start <= end && end <= self.len);
        if start.is_multiple_of(WORD) && (end.is_multiple_of(WORD) || end == self.len) {
            let mut w = BitWord {
                len: end - start,
                words: self.words[start / WORD..word_count(end)].to_vec(),
            };
            w.clear_tail();
            return w;
        }
        BitWord::from_bits((start..end).map(|i| self.get(i)))
    }

    /// Bits at `positions`, in the given order.
    pub fn restrict(&self, positions: &[usize]) -> BitWord {
        BitWord::from_bits(positions.iter().map(|&p| self.get(p)))
    }

    /// Lowercase hex, `ceil(len/4)` digits, positions 0-3 in the first digit.
    /// A final partial nibble is left-aligned (trailing positions padded with 0).
    pub fn to_hex(&self) -> String {
        let digits = self.len.div_ceil(4);
        let mut s = String::with_capacity(digits);
        for d in 0..digits {
            let word = self.words[d * 4 / WORD];
            let shift = WORD - 4 - (d * 4) % WORD;
            let nibble = (word >> shift) & 0xf;
            s.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        s
    }

    /// Inverse of [`BitWord::to_hex`]. An optional `0x` prefix is accepted.
    pub fn from_hex(hex: &str, len: usize) -> Result<BitWord> {
        let hex = hex.trim();
        let hex = hex
            .strip_prefix("0x")
            .or_else(|| hex.strip_prefix("0X"))
            .unwrap_or(hex);
        let digits = len.div_ceil(4);
        if hex.len() != digits {
            return Err(Error::Parse(format!(
                "expected {digits} hex digits for a {len}-bit word, got {}",
                hex.len()
            )));
        }
        let mut w = BitWord::zeros(len);
        for (d, c) in hex.chars().enumerate() {
            let nibble = c
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("invalid hex digit {c:?}")))?;
            for b in 0..4 {
                let pos = d * 4 + b;
                let bit = nibble >> (3 - b) & 1 == 1;
                if pos < len {
                    w.set(pos, bit);
                } else if bit {
                    return Err(Error::Parse("nonzero padding bits in hex word".into()));
                }
            }
        }
        Ok(w)
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= u64::MAX << (WORD - rem);
            }
        }
    }
}

impl BitXorAssign<&BitWord> for BitWord {
    fn bitxor_assign(&mut self, rhs: &BitWord) {
        assert_eq!(self.len, rhs.len, "length mismatch");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl BitXor for &BitWord {
    type Output = BitWord;
    fn bitxor(self, rhs: &BitWord) -> BitWord {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl Not for &BitWord {
    type Output = BitWord;
    fn not(self) -> BitWord {
        self.complement()
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitWord({self})")
    }
}

/// Parses a string of `0`/`1` characters; `_` and whitespace are ignored.
impl FromStr for BitWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != '_')
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("invalid bit character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitWord::from_bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    #[test]
    fn lexicographic_order() {
        assert!(w("00001111") < w("00110011"));
        assert!(w("01111111") < w("10000000"));
        let long_a = BitWord::from_fn(128, |i| i == 100);
        let long_b = BitWord::from_fn(128, |i| i == 3);
        assert!(long_a < long_b);
    }

    #[test]
    fn hex_matches_worked_example() {
        assert_eq!(w("01101100").to_hex(), "6c");
        assert_eq!(BitWord::from_hex("0x6c", 8).unwrap(), w("01101100"));
        assert_eq!(w("10").to_hex(), "8");
        assert_eq!(BitWord::from_hex("4", 2).unwrap(), w("01"));
        assert!(BitWord::from_hex("5", 2).is_err());
        assert!(BitWord::from_hex("6", 8).is_err());
    }

    #[test]
    fn halves_and_concat() {
        let x = w("00001111");
        let (a, b) = x.halves();
        assert_eq!(a, w("0000"));
        assert_eq!(b, w("1111"));
        assert_eq!(a.concat(&b), x);
        let big = BitWord::from_fn(256, |i| i % 3 == 0);
        let (l, r) = big.halves();
        assert_eq!(l.concat(&r), big);
    }

    #[test]
    fn complement_clears_padding() {
        let x = BitWord::zeros(8).complement();
        assert!(x.is_all_ones());
        assert_eq!(x.weight(), 8);
    }

    proptest! {
        #[test]
        fn complement_and_xor_identities(bits in proptest::collection::vec(any::<bool>(), 1..300)) {
            let x = BitWord::from_bits(bits.iter().copied());
            prop_assert_eq!(x.complement().complement(), x.clone());
            prop_assert!((&x ^ &x).is_zero());
            prop_assert_eq!(BitWord::from_hex(&x.to_hex(), x.len()).unwrap(), x.clone());
            prop_assert_eq!(x.to_string().parse::<BitWord>().unwrap(), x);
        }
    }
}
