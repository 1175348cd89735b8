//! Word-level helpers over `u64` bit rows.

#[inline]
pub fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

#[inline]
pub fn get(row: &[u64], i: usize) -> bool {
    row[i >> 6] >> (i & 63) & 1 == 1
}

#[inline]
pub fn set(row: &mut [u64], i: usize) {
    row[i >> 6] |= 1u64 << (i & 63);
}

#[inline]
pub fn clear(row: &mut [u64], i: usize) {
    row[i >> 6] &= !(1u64 << (i & 63));
}

#[inline]
pub fn count(row: &[u64]) -> usize {
    row.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
pub fn is_empty(row: &[u64]) -> bool {
    row.iter().all(|&w| w == 0)
}

/// Popcount of `a & b` without materializing it.
#[inline]
pub fn count_and(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

#[inline]
pub fn first(row: &[u64]) -> Option<usize> {
    row.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| (i << 6) + w.trailing_zeros() as usize)
}

/// A row with the first `n` bits set.
pub fn full(n: usize) -> Vec<u64> {
    let mut row = vec![!0u64; words_for(n)];
    if !n.is_multiple_of(64) {
        if let Some(last) = row.last_mut() {
            *last = (1u64 << (n % 64)) - 1;
        }
    }
    row
}

/// Iterator over set bit positions in increasing order.
pub struct Ones<'a> {
    row: &'a [u64],
    word: usize,
    cur: u64,
}

impl<'a> Ones<'a> {
    pub fn new(row: &'a [u64]) -> Self {
        Ones {
            row,
            word: 0,
            cur: row.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some((self.word << 6) + tz);
            }
            self.word += 1;
            if self.word >= self.row.len() {
                return None;
            }
            self.cur = self.row[self.word];
        }
    }
}

pub fn ones(row: &[u64]) -> Ones<'_> {
    Ones::new(row)
}
