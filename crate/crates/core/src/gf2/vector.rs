use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitXor, BitXorAssign};
use std::str::FromStr;

use crate::error::{Error, Result};

pub(crate) const WORD_BITS: usize = u64::BITS as usize;

#[inline]
pub(crate) fn word_count(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// A vector over GF(2), packed 64 bits per word.
///
/// Bit `i` lives in word `i / 64` at position `i % 64`. Bits past `len` in the
/// last word are always zero, so equality and hashing are word-wise.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Gf2Vector {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; word_count(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self {
            len,
            words: vec![u64::MAX; word_count(len)],
        };
        v.clear_tail();
        v
    }

    /// The `i`-th standard basis vector (0-based).
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for bit in bits {
            if len % WORD_BITS == 0 {
                words.push(0);
            }
            if bit {
                words[len / WORD_BITS] |= 1 << (len % WORD_BITS);
            }
            len += 1;
        }
        Self { len, words }
    }

    /// Builds a vector of length `len` with ones at the given 0-based positions.
    pub fn from_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut v = Self::zeros(len);
        for i in ones {
            if i >= len {
                return Err(Error::IndexOutOfRange {
                    index: i + 1,
                    limit: len,
                });
            }
            v.set(i, true);
        }
        Ok(v)
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

    /// # Panics
    ///
    /// Panics if `i >= len`.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Inner product over GF(2).
    ///
    /// # Panics
    ///
    /// Panics on a length mismatch.
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "dot product of unequal lengths");
        let acc = self
            .words
            .iter()
            .zip(&other.words)
            .fold(0u64, |acc, (a, b)| acc ^ (a & b));
        acc.count_ones() % 2 == 1
    }

    /// Positions of set bits, ascending, 0-based.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD_BITS + tz)
            })
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Lowest set position at or after `from`.
    pub fn first_one_from(&self, from: usize) -> Option<usize> {
        if from >= self.len {
            return None;
        }
        let mut wi = from / WORD_BITS;
        let mut w = self.words[wi] & (u64::MAX << (from % WORD_BITS));
        loop {
            if w != 0 {
                return Some(wi * WORD_BITS + w.trailing_zeros() as usize);
            }
            wi += 1;
            if wi == self.words.len() {
                return None;
            }
            w = self.words[wi];
        }
    }

    /// The first `p` entries.
    pub fn prefix(&self, p: usize) -> Self {
        assert!(p <= self.len, "prefix {p} longer than vector {}", self.len);
        let mut v = Self {
            len: p,
            words: self.words[..word_count(p)].to_vec(),
        };
        v.clear_tail();
        v
    }

    /// Entries `start..end` as a new vector.
    pub fn slice(&self, start: usize, end: usize) -> Self {
        assert!(start <= end && end <= self.len);
        Self::from_bits((start..end).map(|i| self.get(i)))
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self::from_bits(self.iter().chain(other.iter()))
    }

    /// Appends `other` in place.
    pub fn extend_from(&mut self, other: &Self) {
        let start = self.len;
        self.len += other.len;
        self.words.resize(word_count(self.len), 0);
        for i in other.iter_ones() {
            self.set(start + i, true);
        }
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(WORD_BITS) {
            self.words.push(0);
        }
        self.len += 1;
        self.set(self.len - 1, bit);
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub(crate) fn xor_words(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }
}

impl BitXorAssign<&Gf2Vector> for Gf2Vector {
    /// # Panics
    ///
    /// Panics on a length mismatch.
    fn bitxor_assign(&mut self, rhs: &Gf2Vector) {
        assert_eq!(self.len, rhs.len, "xor of unequal lengths");
        self.xor_words(rhs);
    }
}

impl BitXor<&Gf2Vector> for &Gf2Vector {
    type Output = Gf2Vector;

    fn bitxor(self, rhs: &Gf2Vector) -> Gf2Vector {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

/// Lexicographic order on the bit string, bit 0 first; a proper prefix sorts first.
impl Ord for Gf2Vector {
    fn cmp(&self, other: &Self) -> Ordering {
        let common = self.len.min(other.len);
        let full = common / WORD_BITS;
        for (a, b) in self.words[..full].iter().zip(&other.words[..full]) {
            if a != b {
                return a.reverse_bits().cmp(&b.reverse_bits());
            }
        }
        for i in full * WORD_BITS..common {
            match self.get(i).cmp(&other.get(i)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for Gf2Vector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Renders as a string of `0`/`1` characters, bit 0 first.
impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.iter().map(|b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vector({self})")
    }
}

impl FromStr for Gf2Vector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("unexpected character {other:?} in bit string"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::from_bits)
    }
}

impl serde::Serialize for Gf2Vector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Gf2Vector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_bits_stay_clear() {
        let v = Gf2Vector::ones(70);
        assert_eq!(v.words()[1], (1 << 6) - 1);
        assert_eq!(v.count_ones(), 70);
        assert_eq!(v.prefix(65).words()[1], 1);
    }

    #[test]
    fn parse_and_display() {
        let v: Gf2Vector = "0110".parse().unwrap();
        assert!(!v.get(0) && v.get(1) && v.get(2) && !v.get(3));
        assert_eq!(v.to_string(), "0110");
        assert!("01x".parse::<Gf2Vector>().is_err());
    }

    #[test]
    fn lexicographic_order_is_string_order() {
        let mut vs: Vec<Gf2Vector> = ["100100", "010010", "0", "01", "011111"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        vs.sort();
        let strs: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
        assert_eq!(strs, ["0", "01", "010010", "011111", "100100"]);

        let a = Gf2Vector::unit(130, 129);
        let b = Gf2Vector::unit(130, 0);
        assert!(a < b);
    }

    #[test]
    fn ones_iteration_and_search() {
        let v = Gf2Vector::from_ones(200, [3, 64, 199]).unwrap();
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![3, 64, 199]);
        assert_eq!(v.first_one_from(4), Some(64));
        assert_eq!(v.first_one_from(65), Some(199));
        assert_eq!(v.first_one_from(200), None);
        assert!(Gf2Vector::from_ones(3, [3]).is_err());
    }

    #[test]
    fn dot_and_xor() {
        let a: Gf2Vector = "1101".parse().unwrap();
        let b: Gf2Vector = "1011".parse().unwrap();
        assert!(!a.dot(&b));
        assert_eq!((&a ^ &b).to_string(), "0110");
    }

    #[test]
    fn push_and_extend() {
        let mut v = Gf2Vector::zeros(63);
        v.push(true);
        v.push(true);
        assert_eq!(v.len(), 65);
        assert_eq!(v.iter_ones().collect::<Vec<_>>(), vec![63, 64]);
        let mut w: Gf2Vector = "10".parse().unwrap();
        w.extend_from(&"011".parse().unwrap());
        assert_eq!(w.to_string(), "10011");
    }
}
