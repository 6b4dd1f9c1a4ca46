use std::cmp::Ordering;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::roots::{parse_int_list, SimpleRootSet};
use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers. The empty partition (of 0) is allowed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `λ_t` for `1 ≤ t`, zero past the last part.
    pub fn part(&self, t: usize) -> usize {
        self.parts.get(t.wrapping_sub(1)).copied().unwrap_or(0)
    }

    pub fn largest(&self) -> usize {
        self.part(1)
    }

    /// The bottom row length `λ_k`.
    pub fn bottom(&self) -> usize {
        self.parts.last().copied().unwrap_or(0)
    }

    /// `dim M^λ = n! / (λ_1! ⋯ λ_k!)`.
    pub fn tabloid_count(&self) -> u64 {
        let mut num = 1u64;
        let mut placed = 0u64;
        for &p in &self.parts {
            // Multiply by C(placed + p, p) one factor at a time to stay exact.
            for t in 1..=p as u64 {
                num = num * (placed + t) / t;
            }
            placed += p as u64;
        }
        num
    }

    /// `μ ⊴ λ` in dominance order (`self ⊴ other`).
    pub fn dominated_by(&self, other: &Partition) -> bool {
        let len = self.num_parts().max(other.num_parts());
        let (mut a, mut b) = (0, 0);
        for t in 1..=len {
            a += self.part(t);
            b += other.part(t);
            if a > b {
                return false;
            }
        }
        true
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (t, v) in self.parts.iter().enumerate() {
            if t > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_int_list(s).map_err(Error::InvalidPartition)?)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The `⪯` order: lexicographic comparison of the dual partitions.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        dual_partition(self).parts.cmp(&dual_partition(other).parts)
    }
}

/// `λ∨`, with `λ∨_s = #{t | λ_t ≥ s}`.
pub fn dual_partition(lambda: &Partition) -> Partition {
    Partition {
        parts: (1..=lambda.largest())
            .map(|s| lambda.parts.iter().take_while(|&&p| p >= s).count())
            .collect(),
    }
}

/// Partial sums `λ_1, λ_1 + λ_2, …` excluding the full sum.
fn partial_sums(lambda: &Partition) -> impl Iterator<Item = usize> + '_ {
    let k = lambda.num_parts();
    lambda
        .parts
        .iter()
        .take(k.saturating_sub(1))
        .scan(0, |acc, &p| {
            *acc += p;
            Some(*acc)
        })
}

/// `J_λ`: `Δ` with the row partial sums removed.
pub fn j_set(lambda: &Partition) -> SimpleRootSet {
    jj_set(&dual_partition(lambda)).complement()
}

/// `𝕁_λ = Δ ∖ J_{λ∨}`: the column partial sums of `λ`.
pub fn jj_set(lambda: &Partition) -> SimpleRootSet {
    let dual = dual_partition(lambda);
    SimpleRootSet::new(lambda.n(), partial_sums(&dual))
        .expect("partial sums lie strictly inside 1..n")
}

/// `λ[ℓ]`: delete the leftmost `ℓ` columns of the Young diagram.
pub fn truncate_columns(lambda: &Partition, ell: usize) -> Result<Partition> {
    if ell > lambda.largest() {
        return Err(Error::OutOfRange(format!(
            "cannot remove {ell} columns from {lambda}"
        )));
    }
    Ok(Partition {
        parts: lambda
            .parts
            .iter()
            .filter(|&&p| p > ell)
            .map(|&p| p - ell)
            .collect(),
    })
}

/// Intervals of `1..=λ_1` on which the column length `λ∨_s` is constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepDecomposition {
    pub steps: Vec<RangeInclusive<usize>>,
}

impl StepDecomposition {
    pub fn step_count(&self) -> usize {
        self.steps.len()
    }
}

pub fn step_decomposition(lambda: &Partition) -> StepDecomposition {
    let dual = dual_partition(lambda);
    let cols = dual.parts();
    let mut steps = Vec::new();
    let mut start = 1;
    for s in 1..=cols.len() {
        if s == cols.len() || cols[s] != cols[s - 1] {
            steps.push(start..=s);
            start = s + 1;
        }
    }
    StepDecomposition { steps }
}

/// Compares two partitions of the same `n` in the `⪯` order.
pub fn partition_cmp(lambda: &Partition, mu: &Partition) -> Result<Ordering> {
    if lambda.n() != mu.n() {
        return Err(Error::SizeMismatch {
            expected: lambda.n(),
            actual: mu.n(),
        });
    }
    Ok(lambda.cmp(mu))
}

/// All partitions of `n` sorted by `⪯`, from `(n)` up to `(1^n)`.
pub fn enumerate_partitions(n: usize, cap: usize) -> Result<Vec<Partition>> {
    if n > cap {
        return Err(Error::OverCap { n, cap });
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    out.sort();
    Ok(out)
}
