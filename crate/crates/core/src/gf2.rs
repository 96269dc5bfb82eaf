//! Bit-packed vectors over GF(2).
//!
//! All stabilizer bookkeeping reduces to XOR and parity-of-AND on binary
//! vectors; this module packs them into `u64` words. Bits past `len` are kept
//! zero so whole-word operations never see stray state.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

#[inline]
fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; word_count(len)],
        }
    }

    /// Build from site indices that carry a 1.
    pub fn from_ones(len: usize, ones: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in ones {
            v.set(i, true);
        }
        v
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
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn clear(&mut self) {
        self.words.fill(0);
    }

    /// Overwrite with the contents of `other` (same length).
    pub fn copy_from(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        self.words.copy_from_slice(&other.words);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    /// Parity of the GF(2) dot product with `other`.
    #[inline]
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u64;
        for (w, o) in self.words.iter().zip(&other.words) {
            acc ^= w & o;
        }
        acc.count_ones() % 2 == 1
    }

    #[inline]
    pub fn any(&self) -> bool {
        self.words.iter().any(|&w| w != 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Shared support with `other` is non-empty.
    #[inline]
    pub fn intersects(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).any(|(w, o)| w & o != 0)
    }
}

/// GF(2) rank of a set of equal-length rows. Consumes copies; used for
/// validation, not on hot paths.
pub fn rank(rows: &[BitVec]) -> usize {
    let mut rows: Vec<BitVec> = rows.to_vec();
    let len = match rows.first() {
        Some(r) => r.len(),
        None => return 0,
    };
    let mut pivot = 0;
    for col in 0..len {
        let Some(r) = (pivot..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(pivot, r);
        for r in 0..rows.len() {
            if r != pivot && rows[r].get(col) {
                let (a, b) = split_two(&mut rows, pivot, r);
                b.xor_assign(a);
            }
        }
        pivot += 1;
        if pivot == rows.len() {
            break;
        }
    }
    pivot
}

/// Disjoint mutable references to entries `i` and `j` of a slice.
pub(crate) fn split_two<T>(items: &mut [T], i: usize, j: usize) -> (&mut T, &mut T) {
    debug_assert_ne!(i, j);
    if i < j {
        let (lo, hi) = items.split_at_mut(j);
        (&mut lo[i], &mut hi[0])
    } else {
        let (lo, hi) = items.split_at_mut(i);
        (&mut hi[0], &mut lo[j])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_get_roundtrip() {
        let mut v = BitVec::zeros(70);
        v.set(0, true);
        v.set(63, true);
        v.set(64, true);
        v.set(69, true);
        assert!(v.get(0) && v.get(63) && v.get(64) && v.get(69));
        assert!(!v.get(1));
        assert_eq!(v.count_ones(), 4);
        v.set(63, false);
        assert!(!v.get(63));
    }

    #[test]
    fn dot_is_parity_of_and() {
        let a = BitVec::from_ones(5, &[0, 2, 4]);
        let b = BitVec::from_ones(5, &[2, 3, 4]);
        assert!(!a.dot(&b)); // overlap {2, 4}, even
        let c = BitVec::from_ones(5, &[2]);
        assert!(a.dot(&c));
    }

    #[test]
    fn rank_counts_independent_rows() {
        let rows = [
            BitVec::from_ones(4, &[0, 1]),
            BitVec::from_ones(4, &[1, 2]),
            BitVec::from_ones(4, &[0, 2]), // sum of the first two
        ];
        assert_eq!(rank(&rows), 2);
        assert_eq!(rank(&rows[..2]), 2);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn iter_ones_matches_get() {
        let v = BitVec::from_ones(130, &[0, 64, 128, 129]);
        let ones: Vec<usize> = v.iter_ones().collect();
        assert_eq!(ones, vec![0, 64, 128, 129]);
    }
}
