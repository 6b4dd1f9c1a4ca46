use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::roots::{parse_int_list, RootPair, SimpleRootSet};
use crate::error::{Error, Result};

/// A permutation of `{1, …, n}` in one-line notation: `image[i - 1] = w(i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    image: Vec<usize>,
}

impl Perm {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n + 1];
        for &v in &image {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPerm(format!(
                    "{image:?} is not a bijection on 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Perm { image })
    }

    pub(crate) fn from_bytes(one_line: &[u8]) -> Self {
        Perm {
            image: one_line.iter().map(|&v| v as usize).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            image: (1..=n).collect(),
        }
    }

    /// The longest element `[n, n-1, …, 1]`.
    pub fn longest(n: usize) -> Self {
        Perm {
            image: (1..=n).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// `w(i)` for `1 ≤ i ≤ n`.
    pub fn at(&self, i: usize) -> usize {
        self.image[i - 1]
    }

    pub fn one_line(&self) -> &[usize] {
        &self.image
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.n()];
        for (pos, &v) in self.image.iter().enumerate() {
            inv[v - 1] = pos + 1;
        }
        Perm { image: inv }
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`. Right composition acts on positions.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch {
                expected: self.n(),
                actual: other.n(),
            });
        }
        Ok(Perm {
            image: other.image.iter().map(|&p| self.at(p)).collect(),
        })
    }

    /// `w(t_i - t_j) = t_{w(i)} - t_{w(j)}`.
    pub fn act(&self, root: RootPair) -> RootPair {
        RootPair {
            i: self.at(root.i),
            j: self.at(root.j),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(p, &v)| v == p + 1)
    }

    pub fn len_inversions(&self) -> usize {
        let w = &self.image;
        let mut count = 0;
        for a in 0..w.len() {
            for b in a + 1..w.len() {
                if w[a] > w[b] {
                    count += 1;
                }
            }
        }
        count
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (t, v) in self.image.iter().enumerate() {
            if t > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Perm::new(parse_int_list(s).map_err(Error::InvalidPerm)?)
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.image.serialize(s)
    }
}

/// `inv(w) = {(i, j) | i > j and w(i) < w(j)}`.
pub fn inversions(w: &Perm) -> BTreeSet<RootPair> {
    let n = w.n();
    let mut out = BTreeSet::new();
    for i in 1..=n {
        for j in 1..i {
            if w.at(i) < w.at(j) {
                out.insert(RootPair { i, j });
            }
        }
    }
    out
}

/// `Des_L(w)`: the `i` such that `i + 1` appears before `i` in one-line notation.
pub fn descents_left(w: &Perm) -> SimpleRootSet {
    let inv = w.inverse();
    let n = w.n();
    let mut set = SimpleRootSet::empty(n);
    for i in 1..n {
        if inv.at(i) > inv.at(i + 1) {
            set.insert(i);
        }
    }
    set
}

/// `Des_R(w)`: the positions `i` with `w(i) > w(i + 1)`.
pub fn descents_right(w: &Perm) -> SimpleRootSet {
    let n = w.n();
    let mut set = SimpleRootSet::empty(n);
    for i in 1..n {
        if w.at(i) > w.at(i + 1) {
            set.insert(i);
        }
    }
    set
}

/// Splits the positions `1..=n` into the maximal intervals on which `w` increases.
pub fn maximal_staircases(w: &Perm) -> Vec<RangeInclusive<usize>> {
    let n = w.n();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut start = 1;
    for i in 1..n {
        if w.at(i) > w.at(i + 1) {
            out.push(start..=i);
            start = i + 1;
        }
    }
    out.push(start..=n);
    out
}

/// Deletes the values `1..=m` from the one-line notation and relabels `j ↦ j - m`.
pub fn delete_entries(w: &Perm, m: usize) -> Result<Perm> {
    let n = w.n();
    if m == 0 || m >= n {
        return Err(Error::OutOfRange(format!(
            "cannot delete {m} entries from a permutation of {n}"
        )));
    }
    Ok(Perm {
        image: w
            .image
            .iter()
            .filter(|&&v| v > m)
            .map(|&v| v - m)
            .collect(),
    })
}
