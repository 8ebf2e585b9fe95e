//! Sets of catalogue indices packed into a `u64`.

pub type IndSet = u64;

/// Largest catalogue the bitset representation supports.
pub const MAX_IND: usize = 64;

pub fn set_of<I: IntoIterator<Item = usize>>(it: I) -> IndSet {
    it.into_iter().fold(0, |s, i| s | (1 << i))
}

pub fn members(s: IndSet) -> Vec<usize> {
    (0..MAX_IND).filter(|&i| s >> i & 1 == 1).collect()
}

#[inline]
pub fn has(s: IndSet, i: usize) -> bool {
    s >> i & 1 == 1
}

#[inline]
pub fn subset(a: IndSet, b: IndSet) -> bool {
    a & !b == 0
}

#[inline]
pub fn count(s: IndSet) -> usize {
    s.count_ones() as usize
}

/// Set of the first `k` indices.
pub fn full(k: usize) -> IndSet {
    if k >= MAX_IND {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}
