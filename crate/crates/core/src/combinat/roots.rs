use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The root `t_i - t_j` of the type A root system, stored as the ordered pair `(i, j)`.
///
/// Inversions use the convention that lists the larger index first, so every
/// inversion is a negative root `(i, j)` with `i > j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RootPair {
    pub i: usize,
    pub j: usize,
}

impl RootPair {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i == j {
            return Err(Error::OutOfRange(format!("({i},{j}) is not a root")));
        }
        Ok(RootPair { i, j })
    }

    pub fn is_negative(self) -> bool {
        self.i > self.j
    }

    pub fn is_positive(self) -> bool {
        self.i < self.j
    }

    /// `t_i - t_j + t_j' - t_k`, when it is again a root.
    pub fn checked_add(self, other: RootPair) -> Option<RootPair> {
        if self.j == other.i && self.i != other.j {
            Some(RootPair { i: self.i, j: other.j })
        } else if other.j == self.i && other.i != self.j {
            Some(RootPair { i: other.i, j: self.j })
        } else {
            None
        }
    }
}

impl fmt::Display for RootPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// A subset of the simple roots `α_1, …, α_{n-1}`, with `α_i` written as `i`.
///
/// Backed by a bitmask: bit `i` stands for `α_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SimpleRootSet {
    n: usize,
    bits: u64,
}

pub(crate) const MAX_RANK: usize = 63;

impl SimpleRootSet {
    pub fn new<I: IntoIterator<Item = usize>>(n: usize, members: I) -> Result<Self> {
        let mut set = Self::empty(n);
        for i in members {
            if i == 0 || i >= n.max(1) {
                return Err(Error::InvalidRootSet(format!(
                    "index {i} is not a simple root for n = {n}"
                )));
            }
            set.bits |= 1 << i;
        }
        Ok(set)
    }

    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_RANK, "rank {n} too large for SimpleRootSet");
        SimpleRootSet { n, bits: 0 }
    }

    /// All of `Δ`.
    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        s.bits = Self::full_mask(n);
        s
    }

    pub(crate) fn full_mask(n: usize) -> u64 {
        if n <= 1 {
            0
        } else {
            ((1u64 << n) - 1) & !1
        }
    }

    /// Builds a set from a raw mask in the same encoding as [`SimpleRootSet::bits`].
    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        if bits & !Self::full_mask(n) != 0 {
            return Err(Error::InvalidRootSet(format!(
                "mask {bits:#b} has bits outside 1..{n}"
            )));
        }
        Ok(SimpleRootSet { n, bits })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Dense index of this subset among the `2^{n-1}` subsets of `Δ`.
    pub(crate) fn index(&self) -> usize {
        (self.bits >> 1) as usize
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 64 && self.bits & (1 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i >= 1 && i < self.n, "α_{i} not in Δ for n = {}", self.n);
        self.bits |= 1 << i;
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    /// `Δ ∖ self`.
    pub fn complement(&self) -> Self {
        SimpleRootSet {
            n: self.n,
            bits: Self::full_mask(self.n) & !self.bits,
        }
    }

    pub fn is_subset(&self, other: &SimpleRootSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn union(&self, other: &SimpleRootSet) -> Self {
        SimpleRootSet {
            n: self.n,
            bits: self.bits | other.bits,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (1..self.n).filter(move |&i| self.contains(i))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Every subset `I` of `Δ` with `self ⊆ I`, in increasing mask order.
    pub fn supersets(&self) -> impl Iterator<Item = SimpleRootSet> {
        let free = self.complement().bits;
        let base = self.bits;
        let n = self.n;
        // Enumerate submasks of `free` in increasing order.
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == free {
                None
            } else {
                Some(((cur | !free).wrapping_add(1)) & free)
            };
            Some(SimpleRootSet { n, bits: base | cur })
        })
    }

    /// All `2^{n-1}` subsets of `Δ`.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = SimpleRootSet> {
        Self::empty(n).supersets()
    }
}

impl fmt::Display for SimpleRootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (t, i) in self.iter().enumerate() {
            if t > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for SimpleRootSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

/// Parses `"[4,8,11,14]"` given the ambient rank.
pub fn parse_root_set(n: usize, text: &str) -> Result<SimpleRootSet> {
    let items = parse_int_list(text).map_err(Error::InvalidRootSet)?;
    SimpleRootSet::new(n, items)
}

/// Comma-separated nonnegative integers, optionally wrapped in brackets or parentheses.
pub(crate) fn parse_int_list(text: &str) -> std::result::Result<Vec<usize>, String> {
    let t = text.trim();
    let t = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .or_else(|| t.strip_prefix('(').and_then(|s| s.strip_suffix(')')))
        .unwrap_or(t)
        .trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|p| {
            let p = p.trim();
            usize::from_str(p).map_err(|_| format!("`{p}` is not a nonnegative integer"))
        })
        .collect()
}
