use std::fmt;
use std::ops::{BitXor, BitXorAssign};

use rand::Rng;

use crate::error::{mismatch, Error, Result};

pub(crate) const WORD: usize = 64;

pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

pub(crate) fn tail_mask(bits: usize) -> u64 {
    match bits % WORD {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

/// Dense vector over GF(2), packed little-endian into 64-bit words.
///
/// Bits at positions `>= len` are always zero, so equality, hashing and ordering
/// work directly on the words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    #[must_use]
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// Builds a vector from the low `len` bits of `value`. Requires `len <= 64`.
    #[must_use]
    pub fn from_u64(len: usize, value: u64) -> Self {
        assert!(len <= WORD, "from_u64 holds at most 64 bits, got {len}");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = value & tail_mask(len);
        }
        v
    }

    #[must_use]
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % WORD == 0 {
                words.push(0);
            }
            if b {
                words[len / WORD] |= 1 << (len % WORD);
            }
            len += 1;
        }
        Self { len, words }
    }

    pub(crate) fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(len);
        }
        Self { len, words }
    }

    #[must_use]
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let words = (0..words_for(len)).map(|_| rng.gen()).collect();
        Self::from_words(len, words)
    }

    /// Uniformly random nonzero vector. Requires `len >= 1`.
    pub fn random_nonzero<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        assert!(len > 0, "no nonzero vector of length 0");
        if len <= WORD {
            let max = if len == WORD { u64::MAX } else { (1u64 << len) - 1 };
            return Self::from_u64(len, rng.gen_range(1..=max));
        }
        loop {
            let v = Self::random(len, rng);
            if !v.is_zero() {
                return v;
            }
        }
    }

    #[must_use]
    pub fn len(&self) -> usize {
        self.len
    }

    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[must_use]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[must_use]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / WORD] ^= 1 << (i % WORD);
    }

    #[must_use]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[must_use]
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Value of the vector read as an integer with bit 0 least significant. Requires `len <= 64`.
    #[must_use]
    pub fn as_u64(&self) -> u64 {
        assert!(self.len <= WORD, "as_u64 needs at most 64 bits, got {}", self.len);
        self.words.first().copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * WORD + b)
            })
        })
    }

    /// Parity of the bitwise AND.
    #[must_use]
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors with different lengths");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn try_xor_assign(&mut self, other: &Self) -> Result<()> {
        if self.len != other.len {
            return Err(mismatch("xor", self.len, other.len));
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        Ok(())
    }

    /// Reads `len` bits starting at `start`.
    #[must_use]
    pub fn slice(&self, start: usize, len: usize) -> Self {
        assert!(start + len <= self.len, "slice {start}+{len} beyond length {}", self.len);
        let mut out = Self::zeros(len);
        for k in 0..out.words.len() {
            out.words[k] = self.read_word(start + k * WORD);
        }
        if let Some(last) = out.words.last_mut() {
            *last &= tail_mask(len);
        }
        out
    }

    /// Overwrites `src.len()` bits starting at `start` with `src`.
    pub fn write_slice(&mut self, start: usize, src: &Self) {
        assert!(
            start + src.len <= self.len,
            "write {start}+{} beyond length {}",
            src.len,
            self.len
        );
        let mut done = 0;
        for (k, &w) in src.words.iter().enumerate() {
            let n = (src.len - k * WORD).min(WORD);
            self.write_bits(start + done, n, w);
            done += n;
        }
    }

    /// Concatenation `self ++ other`.
    #[must_use]
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.len + other.len);
        out.write_slice(0, self);
        out.write_slice(self.len, other);
        out
    }

    fn read_word(&self, pos: usize) -> u64 {
        let (k, s) = (pos / WORD, pos % WORD);
        let lo = self.words.get(k).copied().unwrap_or(0) >> s;
        if s == 0 {
            lo
        } else {
            lo | self.words.get(k + 1).copied().unwrap_or(0) << (WORD - s)
        }
    }

    fn write_bits(&mut self, pos: usize, n: usize, value: u64) {
        if n == 0 {
            return;
        }
        let mask = if n == WORD { u64::MAX } else { (1u64 << n) - 1 };
        let value = value & mask;
        let (k, s) = (pos / WORD, pos % WORD);
        self.words[k] = (self.words[k] & !(mask << s)) | (value << s);
        if s + n > WORD {
            let hi = WORD - s;
            let m2 = mask >> hi;
            self.words[k + 1] = (self.words[k + 1] & !m2) | (value >> hi);
        }
    }

    /// Hexadecimal form of the vector read as an integer (bit 0 least significant),
    /// zero-padded to `ceil(len/4)` digits.
    #[must_use]
    pub fn to_hex(&self) -> String {
        let digits = self.len.div_ceil(4);
        (0..digits)
            .rev()
            .map(|d| {
                let nib = (0..4)
                    .filter(|b| d * 4 + b < self.len && self.get(d * 4 + b))
                    .fold(0u32, |acc, b| acc | 1 << b);
                char::from_digit(nib, 16).unwrap()
            })
            .collect()
    }

    /// Parses a string of `0`/`1` characters, bit 0 first.
    pub fn parse_bits(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse(format!("unexpected character {c:?} in bit string"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::from_bits)
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl BitXorAssign<&BitVector> for BitVector {
    fn bitxor_assign(&mut self, rhs: &BitVector) {
        self.try_xor_assign(rhs).expect("xor of vectors with different lengths");
    }
}

impl BitXor for &BitVector {
    type Output = BitVector;

    fn bitxor(self, rhs: &BitVector) -> BitVector {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}
