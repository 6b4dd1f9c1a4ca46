//! Lexicographic permutation streams, splittable by rank.

use super::perm::Perm;
use crate::error::{Error, Result};

/// Enumeration cap applied when the caller does not configure one.
pub const DEFAULT_N_CAP: usize = 9;

/// Largest `n` whose `n!` fits in a `u64`.
pub const MAX_SWEEP_N: usize = 20;

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Writes the permutation of lexicographic rank `rank` into `out` (values `1..=n`).
pub(crate) fn unrank_into(rank: u64, out: &mut [u8]) {
    let n = out.len();
    let mut pool: Vec<u8> = (1..=n as u8).collect();
    let mut r = rank;
    for (pos, slot) in out.iter_mut().enumerate() {
        let f = factorial(n - 1 - pos);
        let idx = (r / f) as usize;
        r %= f;
        *slot = pool.remove(idx);
    }
}

/// Advances `a` to its lexicographic successor; returns `false` at the last permutation.
pub(crate) fn next_permutation(a: &mut [u8]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Lexicographic ranks `start..end` of `S_n`.
#[derive(Clone, Debug)]
pub struct PermRange {
    buf: Vec<u8>,
    remaining: u64,
    fresh: bool,
}

impl PermRange {
    pub fn new(n: usize, start: u64, end: u64) -> Self {
        assert!(n <= MAX_SWEEP_N);
        let total = factorial(n);
        let end = end.min(total);
        let start = start.min(end);
        let mut buf = vec![0u8; n];
        unrank_into(start, &mut buf);
        PermRange {
            buf,
            remaining: end - start,
            fresh: true,
        }
    }

    /// Visits each permutation in the range without allocating.
    pub fn for_each_slice<F: FnMut(&[u8])>(mut self, mut f: F) {
        while self.remaining > 0 {
            if !self.fresh {
                next_permutation(&mut self.buf);
            }
            self.fresh = false;
            self.remaining -= 1;
            f(&self.buf);
        }
    }
}

impl Iterator for PermRange {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        if self.remaining == 0 {
            return None;
        }
        if !self.fresh {
            next_permutation(&mut self.buf);
        }
        self.fresh = false;
        self.remaining -= 1;
        Some(Perm::from_bytes(&self.buf))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = self.remaining as usize;
        (r, Some(r))
    }
}

/// Every element of `S_n` exactly once, in lexicographic one-line order.
pub fn enumerate_perms(n: usize, cap: usize) -> Result<PermRange> {
    if n > cap || n > MAX_SWEEP_N {
        return Err(Error::OverCap { n, cap });
    }
    Ok(PermRange::new(n, 0, factorial(n)))
}
