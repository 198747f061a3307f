//! Byte-stream coding shared by the program and formula Gödel numberings.
//!
//! Values are serialized to byte strings and read back with a cursor. The
//! byte string becomes a natural number via little-endian base-256 with a
//! trailing `0x01` sentinel, so that trailing zero bytes survive the round
//! trip. Decoding is lenient where a total decoder is required (program
//! indices) and strict where a partial one is wanted (formula codes).

use crate::Nat;
use num_traits::Zero;

/// Append `n` in LEB128 (7 bits per byte, high bit = continuation).
pub fn write_leb128(out: &mut Vec<u8>, mut n: u64) {
    loop {
        let byte = (n & 0x7f) as u8;
        n >>= 7;
        if n == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

/// Append an arbitrary-size natural as a length-prefixed little-endian blob.
pub fn write_nat(out: &mut Vec<u8>, n: &Nat) {
    let bytes = n.to_bytes_le();
    if n.is_zero() {
        write_leb128(out, 0);
        return;
    }
    write_leb128(out, bytes.len() as u64);
    out.extend_from_slice(&bytes);
}

/// Cursor over a byte string with both strict and lenient readers.
pub struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub fn new(bytes: &'a [u8]) -> Self {
        Reader { bytes, pos: 0 }
    }

    pub fn is_empty(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    pub fn next_byte(&mut self) -> Option<u8> {
        let b = self.bytes.get(self.pos).copied();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    /// Strict LEB128: fails on truncation or on values exceeding u64.
    pub fn read_leb128(&mut self) -> Option<u64> {
        let mut value: u64 = 0;
        let mut shift = 0u32;
        loop {
            let byte = self.next_byte()?;
            if shift >= 63 && byte > 1 {
                return None;
            }
            value |= u64::from(byte & 0x7f) << shift;
            if byte & 0x80 == 0 {
                return Some(value);
            }
            shift += 7;
        }
    }

    /// Lenient LEB128: missing bytes read as zero, overflow wraps. Total.
    pub fn read_leb128_lenient(&mut self) -> u64 {
        let mut value: u64 = 0;
        let mut shift = 0u32;
        loop {
            let byte = match self.next_byte() {
                Some(b) => b,
                None => return value,
            };
            if shift < 64 {
                value = value.wrapping_add(u64::from(byte & 0x7f).wrapping_shl(shift));
            }
            if byte & 0x80 == 0 {
                return value;
            }
            shift += 7;
        }
    }

    /// Strict length-prefixed natural.
    pub fn read_nat(&mut self) -> Option<Nat> {
        let len = self.read_leb128()? as usize;
        if len == 0 {
            return Some(Nat::zero());
        }
        if self.pos + len > self.bytes.len() {
            return None;
        }
        let n = Nat::from_bytes_le(&self.bytes[self.pos..self.pos + len]);
        self.pos += len;
        Some(n)
    }
}

/// Pack a byte string into a natural. Injective: a `0x01` sentinel is
/// appended so the most significant byte is never zero.
pub fn bytes_to_nat(bytes: &[u8]) -> Nat {
    let mut buf = bytes.to_vec();
    buf.push(0x01);
    Nat::from_bytes_le(&buf)
}

/// Inverse of [`bytes_to_nat`]; `None` if the sentinel is missing.
pub fn nat_to_bytes(n: &Nat) -> Option<Vec<u8>> {
    if n.is_zero() {
        return None;
    }
    let mut bytes = n.to_bytes_le();
    if bytes.pop() != Some(0x01) {
        return None;
    }
    Some(bytes)
}

/// Total variant: strips the sentinel when present, otherwise takes the raw
/// little-endian bytes. Used where every natural must decode to something.
pub fn nat_to_bytes_lenient(n: &Nat) -> Vec<u8> {
    if n.is_zero() {
        return Vec::new();
    }
    let mut bytes = n.to_bytes_le();
    if bytes.last() == Some(&0x01) {
        bytes.pop();
    }
    bytes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nat;

    #[test]
    fn leb128_round_trip() {
        for n in [0u64, 1, 127, 128, 300, 16384, u64::MAX] {
            let mut buf = Vec::new();
            write_leb128(&mut buf, n);
            assert_eq!(Reader::new(&buf).read_leb128(), Some(n));
            assert_eq!(Reader::new(&buf).read_leb128_lenient(), n);
        }
    }

    #[test]
    fn bytes_round_trip_preserves_trailing_zeros() {
        let cases: Vec<&[u8]> = vec![&[], &[0], &[0, 0, 1, 0], &[1, 0x01], &[0x01]];
        for bytes in cases {
            let n = bytes_to_nat(bytes);
            assert_eq!(nat_to_bytes(&n).as_deref(), Some(bytes));
        }
    }

    #[test]
    fn nat_blob_round_trip() {
        for v in [0u64, 1, 255, 256, 1_000_000] {
            let mut buf = Vec::new();
            write_nat(&mut buf, &nat(v));
            assert_eq!(Reader::new(&buf).read_nat(), Some(nat(v)));
        }
    }
}
