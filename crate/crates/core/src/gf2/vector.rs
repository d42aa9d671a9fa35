use std::fmt;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn word_count(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A packed vector over GF(2).
///
/// Bit `i` lives in word `i / 64` at position `i % 64`. Bits past `len` in the
/// final word are always zero, so equality, hashing and popcount work on
/// whole words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; word_count(len)],
        }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Parse a `0`/`1` string, ignoring whitespace, commas and underscores.
    pub fn from_binary_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() || c == ',' || c == '_' => {}
                c => return Err(Error::Parse(format!("unexpected character {c:?} in bit string"))),
            }
        }
        Ok(Self::from_bools(&bits))
    }

    /// Build from raw words; any bits beyond `len` are cleared.
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(word_count(len), 0);
        let mut v = Self { len, words };
        v.clear_padding();
        v
    }

    /// The low `len` bits of `value`, with bit `i` of the vector taken from
    /// bit `i` of the integer.
    pub fn from_u64(len: usize, value: u64) -> Self {
        Self::from_words(len, vec![value])
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        (self.words[index / WORD_BITS] >> (index % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, index: usize, value: bool) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        let mask = 1u64 << (index % WORD_BITS);
        if value {
            self.words[index / WORD_BITS] |= mask;
        } else {
            self.words[index / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, index: usize) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        self.words[index / WORD_BITS] ^= 1u64 << (index % WORD_BITS);
    }

    #[inline]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD_BITS + bit)
            })
        })
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * WORD_BITS + w.trailing_zeros() as usize)
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let mut out = self.clone();
        out.xor_assign(other);
        Ok(out)
    }

    pub fn and(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        Ok(Self { len: self.len, words })
    }

    /// Euclidean inner product.
    pub fn dot(&self, other: &Self) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.dot_unchecked(other))
    }

    /// In-place XOR. Lengths must agree (checked in debug builds only).
    #[inline]
    pub fn xor_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    #[inline]
    pub(crate) fn dot_unchecked(&self, other: &Self) -> bool {
        debug_assert_eq!(self.len, other.len);
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    /// Concatenate `self` followed by `other`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    /// The sub-vector on the given coordinates, in the given order.
    pub fn select(&self, columns: &[usize]) -> Self {
        let mut out = Self::zeros(columns.len());
        for (j, &c) in columns.iter().enumerate() {
            if self.get(c) {
                out.set(j, true);
            }
        }
        out
    }

    /// Cyclic shift towards higher indices: entry `i` moves to `i + by`.
    pub fn rotate_right(&self, by: usize) -> Self {
        let mut out = Self::zeros(self.len);
        if self.len == 0 {
            return out;
        }
        for i in self.iter_ones() {
            out.set((i + by) % self.len, true);
        }
        out
    }

    pub fn rotate_left(&self, by: usize) -> Self {
        if self.len == 0 {
            return self.clone();
        }
        self.rotate_right(self.len - by % self.len)
    }

    fn clear_padding(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    /// Hex text: coordinate 0 is the most significant bit of the number the
    /// vector spells, left-padded to `ceil(len / 4)` digits.
    pub fn to_hex(&self) -> String {
        let digits = self.len.div_ceil(4);
        let pad = digits * 4 - self.len;
        let mut out = String::with_capacity(digits);
        for d in 0..digits {
            let mut nibble = 0u32;
            for b in 0..4 {
                let pos = d * 4 + b;
                nibble <<= 1;
                if pos >= pad && self.get(pos - pad) {
                    nibble |= 1;
                }
            }
            out.push(char::from_digit(nibble, 16).expect("nibble < 16"));
        }
        out
    }

    /// Inverse of [`BitVector::to_hex`]. Requires exactly `ceil(len / 4)`
    /// digits and zero padding bits.
    pub fn from_hex(len: usize, hex: &str) -> Result<Self> {
        let hex = hex.trim();
        let digits = len.div_ceil(4);
        if hex.len() != digits {
            return Err(Error::MalformedHex(format!(
                "{hex:?}: expected {digits} hex digits for {len} bits"
            )));
        }
        let pad = digits * 4 - len;
        let mut v = Self::zeros(len);
        for (d, ch) in hex.chars().enumerate() {
            let nibble = ch
                .to_digit(16)
                .ok_or_else(|| Error::MalformedHex(format!("{hex:?}: bad digit {ch:?}")))?;
            for b in 0..4 {
                let pos = d * 4 + b;
                let bit = (nibble >> (3 - b)) & 1 == 1;
                if pos < pad {
                    if bit {
                        return Err(Error::MalformedHex(format!("{hex:?}: nonzero padding")));
                    }
                } else if bit {
                    v.set(pos - pad, true);
                }
            }
        }
        Ok(v)
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector[{}](", self.len)?;
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bv(s: &str) -> BitVector {
        BitVector::from_binary_str(s).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(bv("1100").add(&bv("0110")).unwrap(), bv("1010"));
        let v = bv("10110111");
        assert!(v.add(&v).unwrap().is_zero());
        assert_eq!(v.add(&BitVector::zeros(8)).unwrap(), v);
        assert!(matches!(
            bv("10").add(&bv("101")),
            Err(Error::LengthMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn dot_examples() {
        assert!(!bv("101").dot(&bv("111")).unwrap());
        assert!(!bv("1100").dot(&bv("0011")).unwrap());
        let v = bv("1110101");
        assert_eq!(v.dot(&v).unwrap(), v.weight() % 2 == 1);
        assert!(bv("1").dot(&bv("11")).is_err());
    }

    #[test]
    fn weight_examples() {
        assert_eq!(BitVector::zeros(72).weight(), 0);
        assert_eq!(bv("1100").weight(), 2);
    }

    #[test]
    fn hex_format() {
        assert_eq!(bv("1010").to_hex(), "a");
        assert_eq!(bv("000001").to_hex(), "01");
        assert_eq!(bv("100000").to_hex(), "20");
        assert_eq!(BitVector::from_hex(6, "20").unwrap(), bv("100000"));
        assert!(BitVector::from_hex(6, "40").is_err());
        assert!(BitVector::from_hex(6, "020").is_err());
        assert!(BitVector::from_hex(8, "g0").is_err());
        let mut v = BitVector::zeros(72);
        v.set(0, true);
        v.set(71, true);
        assert_eq!(v.to_hex(), "800000000000000001");
    }

    #[test]
    fn padding_stays_canonical() {
        let v = BitVector::from_words(70, vec![u64::MAX, u64::MAX]);
        assert_eq!(v.weight(), 70);
        assert_eq!(v.words()[1], (1 << 6) - 1);
    }

    #[test]
    fn rotations() {
        let v = bv("100000");
        assert_eq!(v.rotate_right(1), bv("010000"));
        assert_eq!(v.rotate_left(1), bv("000001"));
        assert_eq!(v.rotate_left(7), bv("000001"));
    }

    fn arb_pair(max: usize) -> impl Strategy<Value = (Vec<bool>, Vec<bool>)> {
        (0..=max).prop_flat_map(|n| {
            (
                proptest::collection::vec(any::<bool>(), n),
                proptest::collection::vec(any::<bool>(), n),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn packed_matches_naive((a, b) in arb_pair(80)) {
            let u = BitVector::from_bools(&a);
            let v = BitVector::from_bools(&b);
            let sum: Vec<bool> = a.iter().zip(&b).map(|(x, y)| x ^ y).collect();
            prop_assert_eq!(u.add(&v).unwrap(), BitVector::from_bools(&sum));
            let naive_dot = a.iter().zip(&b).filter(|(x, y)| **x && **y).count() % 2 == 1;
            prop_assert_eq!(u.dot(&v).unwrap(), naive_dot);
            prop_assert_eq!(u.dot(&v).unwrap(), u.and(&v).unwrap().weight() % 2 == 1);
            prop_assert_eq!(u.weight(), a.iter().filter(|x| **x).count());
            prop_assert!(u.weight() <= u.len());
        }

        #[test]
        fn hex_round_trip(a in proptest::collection::vec(any::<bool>(), 0..100)) {
            let v = BitVector::from_bools(&a);
            prop_assert_eq!(BitVector::from_hex(v.len(), &v.to_hex()).unwrap(), v);
        }
    }
}
