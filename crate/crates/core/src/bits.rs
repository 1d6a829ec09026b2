//! Compact binary strings.
//!
//! Certificates, label words, and canonical view encodings are all bit
//! strings whose exact length matters, so `Vec<u8>`-of-bytes is not enough.
//! Bit 0 is the leftmost bit of the written form: `BitString::parse("011")`
//! has `get(0) == false`.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A binary string with bit-exact length.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new() -> Self {
        BitString { bits: Vec::new() }
    }

    /// All-zero string of the given length.
    pub fn zeros(len: usize) -> Self {
        BitString {
            bits: vec![false; len],
        }
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        BitString { bits }
    }

    /// Parses a `0`/`1` string. Any other character is rejected.
    pub fn parse(s: &str) -> Option<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return None,
            }
        }
        Some(BitString { bits })
    }

    /// The minimal binary representation of `value`, most significant bit
    /// first. Zero encodes as the empty string.
    pub fn from_value(value: u64) -> Self {
        let n = bit_len(value);
        let mut bits = Vec::with_capacity(n as usize);
        for i in (0..n).rev() {
            bits.push(value >> i & 1 == 1);
        }
        BitString { bits }
    }

    /// `value` written in exactly `width` bits, most significant first.
    /// Returns `None` if it does not fit.
    pub fn from_value_width(value: u64, width: usize) -> Option<Self> {
        if bit_len(value) as usize > width {
            return None;
        }
        let mut bits = Vec::with_capacity(width);
        for i in (0..width).rev() {
            bits.push(value >> i & 1 == 1);
        }
        Some(BitString { bits })
    }

    /// Reads the whole string as an unsigned integer, most significant bit
    /// first. Returns `None` for strings longer than 64 bits.
    pub fn to_value(&self) -> Option<u64> {
        if self.bits.len() > 64 {
            return None;
        }
        let mut v = 0u64;
        for &b in &self.bits {
            v = v << 1 | b as u64;
        }
        Some(v)
    }

    /// `n` ones: the unary encoding used by counter certificates.
    pub fn ones(n: usize) -> Self {
        BitString {
            bits: vec![true; n],
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<bool> {
        self.bits.get(i).copied()
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn extend(&mut self, other: &BitString) {
        self.bits.extend_from_slice(&other.bits);
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    /// Appends `value` in exactly `width` bits. Panics if it does not fit;
    /// encoders validate widths up front.
    pub fn push_value(&mut self, value: u64, width: usize) {
        assert!(
            bit_len(value) as usize <= width,
            "value {value} does not fit in {width} bits"
        );
        for i in (0..width).rev() {
            self.bits.push(value >> i & 1 == 1);
        }
    }

    /// Reads `width` bits starting at `pos` as an unsigned integer.
    pub fn read_value(&self, pos: usize, width: usize) -> Option<u64> {
        if width > 64 || pos.checked_add(width)? > self.bits.len() {
            return None;
        }
        let mut v = 0u64;
        for i in 0..width {
            v = v << 1 | self.bits[pos + i] as u64;
        }
        Some(v)
    }

    pub fn slice(&self, start: usize, end: usize) -> Option<BitString> {
        if start > end || end > self.bits.len() {
            return None;
        }
        Some(BitString {
            bits: self.bits[start..end].to_vec(),
        })
    }

    /// Order by length first, then lexicographically (`0 < 1`). This is the
    /// order certificates are enumerated in.
    pub fn cmp_len_lex(&self, other: &BitString) -> std::cmp::Ordering {
        self.bits
            .len()
            .cmp(&other.bits.len())
            .then_with(|| self.bits.cmp(&other.bits))
    }

    /// Fixed-width binary +1, in place; false (wrapping to all zeros) on
    /// overflow.
    pub fn increment_fixed_width(&mut self) -> bool {
        for b in self.bits.iter_mut().rev() {
            if !*b {
                *b = true;
                return true;
            }
            *b = false;
        }
        false
    }

    /// In-place successor within the length-then-lex order bounded by
    /// `max_len`. Returns false (and resets to the empty string) on wrap.
    pub fn next_len_lex(&mut self, max_len: usize) -> bool {
        // Lexicographic +1 within the current length; on overflow grow by
        // one bit, all zeros.
        for b in self.bits.iter_mut().rev() {
            if !*b {
                *b = true;
                return true;
            }
            *b = false;
        }
        if self.bits.len() < max_len {
            self.bits.push(false);
            for b in self.bits.iter_mut() {
                *b = false;
            }
            true
        } else {
            self.bits.clear();
            false
        }
    }

    /// Hex rendering, most significant nibble first, padded at the end to a
    /// nibble boundary. Pair with `len` to make it unambiguous.
    pub fn to_hex(&self) -> String {
        let mut out = String::new();
        let mut nib = 0u8;
        let mut filled = 0;
        for &b in &self.bits {
            nib = nib << 1 | b as u8;
            filled += 1;
            if filled == 4 {
                out.push(char::from_digit(nib as u32, 16).unwrap());
                nib = 0;
                filled = 0;
            }
        }
        if filled > 0 {
            nib <<= 4 - filled;
            out.push(char::from_digit(nib as u32, 16).unwrap());
        }
        out
    }
}

/// Number of bits in the minimal binary representation of `v` (0 for 0).
pub fn bit_len(v: u64) -> u32 {
    64 - v.leading_zeros()
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b\"{self}\"")
    }
}

impl Serialize for BitString {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BitString {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        BitString::parse(&s).ok_or_else(|| serde::de::Error::custom("expected a 0/1 string"))
    }
}
