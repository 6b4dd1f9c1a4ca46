//! Hessenberg functions and the structures they determine: the root sets `Φ_h^±`,
//! the ideal `I_h` with its lower central series, the incomparability graph `Γ_h`,
//! sink sets with their degrees, and the deletion `h ↦ h[T]`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::combinat::{parse_int_list, RootPair};
use crate::error::{Error, Result};

/// A nondecreasing `h: [n] → [n]` with `h(i) ≥ i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HessFunction {
    values: Vec<usize>,
}

impl HessFunction {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        for (idx, &v) in values.iter().enumerate() {
            let i = idx + 1;
            if v < i {
                return Err(Error::InvalidHess(format!("h({i}) = {v} < {i}")));
            }
            if v > n {
                return Err(Error::InvalidHess(format!("h({i}) = {v} exceeds n = {n}")));
            }
            if idx > 0 && v < values[idx - 1] {
                return Err(Error::InvalidHess(format!(
                    "h is not nondecreasing at {i}: {} > {v}",
                    values[idx - 1]
                )));
            }
        }
        Ok(HessFunction { values })
    }

    /// `h(i) = i` for all `i`.
    pub fn minimal(n: usize) -> Self {
        HessFunction {
            values: (1..=n).collect(),
        }
    }

    /// `h(i) = n` for all `i`.
    pub fn maximal(n: usize) -> Self {
        HessFunction { values: vec![n; n] }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `h(i)` for `1 ≤ i ≤ n`.
    pub fn at(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    /// Whether `{a, b}` is an edge of `Γ_h`.
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        lo != hi && self.at(lo) >= hi
    }

    /// `Φ_h = Φ^+ ⊔ Φ_h^-`.
    pub fn in_phi_h(&self, root: RootPair) -> bool {
        root.is_positive() || root.i <= self.at(root.j)
    }

    /// Membership in `I_h = Φ^- ∖ Φ_h^-`.
    pub fn in_ideal(&self, root: RootPair) -> bool {
        root.is_negative() && root.i > self.at(root.j)
    }

    /// `|Φ_h^-| = Σ (h(i) - i)`, the top cohomological degree.
    pub fn num_phi_minus(&self) -> usize {
        self.values.iter().enumerate().map(|(i, &v)| v - (i + 1)).sum()
    }

    /// `Φ_h^- = {(i, j) | i > j, i ≤ h(j)}`.
    pub fn phi_h_minus(&self) -> BTreeSet<RootPair> {
        let n = self.n();
        let mut out = BTreeSet::new();
        for j in 1..=n {
            for i in j + 1..=self.at(j) {
                out.insert(RootPair { i, j });
            }
        }
        out
    }

    pub fn ideal(&self) -> IdealSeries {
        let n = self.n();
        let mut ideal = BTreeSet::new();
        for j in 1..=n {
            for i in self.at(j) + 1..=n {
                ideal.insert(RootPair { i, j });
            }
        }
        IdealSeries::new(ideal)
    }

    pub fn incomparability_graph(&self) -> IncompGraph {
        let mut edges = Vec::new();
        for a in 1..=self.n() {
            for b in a + 1..=self.at(a) {
                edges.push((a, b));
            }
        }
        IncompGraph { n: self.n(), edges }
    }

    /// `SK_k(Γ_h)`: all independent sets of size `k`, lexicographically sorted.
    pub fn sink_sets(&self, k: usize) -> Vec<SinkSet> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        self.extend_sink_sets(1, k, &mut cur, &mut out);
        out
    }

    fn extend_sink_sets(&self, from: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<SinkSet>) {
        if cur.len() == k {
            let degree = self.degree_unchecked(cur);
            out.push(SinkSet {
                vertices: cur.clone(),
                degree,
            });
            return;
        }
        let n = self.n();
        let need = k - cur.len();
        // Bound: even skipping greedily we cannot fit `need` more vertices.
        if from > n || self.greedy_independent_from(from) < need {
            return;
        }
        for v in from..=n {
            cur.push(v);
            self.extend_sink_sets(self.at(v) + 1, k, cur, out);
            cur.pop();
        }
    }

    /// Size of a maximum independent set among vertices `≥ from`.
    fn greedy_independent_from(&self, from: usize) -> usize {
        let mut count = 0;
        let mut v = from;
        while v <= self.n() {
            count += 1;
            v = self.at(v) + 1;
        }
        count
    }

    /// `m(Γ_h)`, the largest independent-set size.
    pub fn max_sink_size(&self) -> usize {
        self.greedy_independent_from(1)
    }

    fn check_independent(&self, t: &[usize]) -> Result<()> {
        let n = self.n();
        if t.iter().any(|&v| v == 0 || v > n) || !t.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::NotIndependent(format!(
                "{t:?} (must be strictly increasing inside 1..={n})"
            )));
        }
        for (x, &a) in t.iter().enumerate() {
            for &b in &t[x + 1..] {
                if self.adjacent(a, b) {
                    return Err(Error::NotIndependent(format!("{t:?}")));
                }
            }
        }
        Ok(())
    }

    fn degree_unchecked(&self, t: &[usize]) -> usize {
        // Edges {a, b}, a < b, with b ∈ T: the a < b ≤ h(a) with b ∈ T.
        t.iter()
            .map(|&b| (1..b).filter(|&a| self.at(a) >= b).count())
            .sum()
    }

    /// `deg_h(T)`: the number of edges whose larger endpoint lies in `T`.
    pub fn deg_of_sink_set(&self, t: &[usize]) -> Result<usize> {
        self.check_independent(t)?;
        Ok(self.degree_unchecked(t))
    }

    pub fn sink_set(&self, t: &[usize]) -> Result<SinkSet> {
        Ok(SinkSet {
            vertices: t.to_vec(),
            degree: self.deg_of_sink_set(t)?,
        })
    }

    /// `h[T]`: the Hessenberg function of `Γ_h - T` after relabeling with `f_T`.
    pub fn delete_sink_set(&self, t: &[usize]) -> Result<(HessFunction, SinkRelabel)> {
        self.check_independent(t)?;
        let relabel = SinkRelabel {
            n: self.n(),
            removed: t.to_vec(),
        };
        let kept: Vec<usize> = (1..=self.n()).filter(|v| !t.contains(v)).collect();
        let values = kept
            .iter()
            .enumerate()
            .map(|(idx, &a)| {
                let reach = kept
                    .iter()
                    .filter(|&&b| b > a && b <= self.at(a))
                    .map(|&b| relabel.apply(b).expect("kept vertex"))
                    .max();
                reach.unwrap_or(idx + 1).max(idx + 1)
            })
            .collect();
        let reduced = HessFunction::new(values)
            .map_err(|e| Error::Internal(format!("deleted graph is not Hessenberg: {e}")))?;
        Ok((reduced, relabel))
    }
}

impl fmt::Display for HessFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, v) in self.values.iter().enumerate() {
            if t > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for HessFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h({self})")
    }
}

impl FromStr for HessFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_hess(s)
    }
}

impl Serialize for HessFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.values.serialize(s)
    }
}

/// Parses `"2,4,4,5,5"`.
pub fn parse_hess(text: &str) -> Result<HessFunction> {
    let values = parse_int_list(text).map_err(Error::InvalidHess)?;
    if values.is_empty() {
        return Err(Error::InvalidHess("empty Hessenberg function".into()));
    }
    HessFunction::new(values)
}

/// All Hessenberg functions on `[n]` in lexicographic order of their values.
pub fn enumerate_hess(n: usize, cap: usize) -> Result<Vec<HessFunction>> {
    if n > cap {
        return Err(Error::OverCap { n, cap });
    }
    fn rec(n: usize, cur: &mut Vec<usize>, out: &mut Vec<HessFunction>) {
        let i = cur.len() + 1;
        if i > n {
            out.push(HessFunction { values: cur.clone() });
            return;
        }
        let lo = cur.last().copied().unwrap_or(1).max(i);
        for v in lo..=n {
            cur.push(v);
            rec(n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::with_capacity(n), &mut out);
    Ok(out)
}

/// The ideal `I_h` with its lower central series `I_1 ⊇ I_2 ⊇ ⋯`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSeries {
    pub ideal: BTreeSet<RootPair>,
    /// Nonempty terms only; `series[0] = ideal` when the ideal is nonempty.
    pub series: Vec<BTreeSet<RootPair>>,
    pub height: usize,
}

impl IdealSeries {
    pub fn new(ideal: BTreeSet<RootPair>) -> Self {
        let mut series = Vec::new();
        let mut cur = ideal.clone();
        while !cur.is_empty() {
            // I_j = {γ + β | γ ∈ I_{j-1}, β ∈ I, γ + β ∈ Φ^-}
            let next: BTreeSet<RootPair> = cur
                .iter()
                .flat_map(|&g| ideal.iter().filter_map(move |&b| g.checked_add(b)))
                .filter(|r| r.is_negative())
                .collect();
            series.push(std::mem::replace(&mut cur, next));
        }
        let height = series.len();
        IdealSeries {
            ideal,
            series,
            height,
        }
    }

    /// The `j`-th term of the series (1-based); empty past the height.
    pub fn term(&self, j: usize) -> BTreeSet<RootPair> {
        self.series.get(j.wrapping_sub(1)).cloned().unwrap_or_default()
    }

    /// `α ∈ I, β ∈ Φ^-, α + β ∈ Φ^- ⇒ α + β ∈ I`, checked over all of `Φ^-`.
    pub fn is_closed(&self, n: usize) -> bool {
        self.ideal.iter().all(|&a| {
            (1..=n).all(|i| {
                (1..i).all(|j| match a.checked_add(RootPair { i, j }) {
                    Some(s) if s.is_negative() => self.ideal.contains(&s),
                    _ => true,
                })
            })
        })
    }
}

/// `Γ_h = ([n], {{i, j} | i < j ≤ h(i)})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncompGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

/// An independent set `T = {ℓ_1 < ⋯ < ℓ_k}` of `Γ_h` together with `deg_h(T)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SinkSet {
    pub vertices: Vec<usize>,
    #[serde(rename = "deg")]
    pub degree: usize,
}

impl SinkSet {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// The relabeling `f_T: [n] ∖ T → [n - k]`, `f_T(j) = j - #{t ∈ T | t ≤ j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SinkRelabel {
    n: usize,
    removed: Vec<usize>,
}

impl SinkRelabel {
    pub fn new(n: usize, removed: &[usize]) -> Self {
        SinkRelabel {
            n,
            removed: removed.to_vec(),
        }
    }

    /// `None` on the deleted vertices.
    pub fn apply(&self, j: usize) -> Option<usize> {
        if j == 0 || j > self.n || self.removed.contains(&j) {
            return None;
        }
        Some(j - self.removed.iter().filter(|&&t| t <= j).count())
    }

    /// Transports a root of `Φ[T]`; `None` if it touches `T`.
    pub fn apply_root(&self, r: RootPair) -> Option<RootPair> {
        Some(RootPair {
            i: self.apply(r.i)?,
            j: self.apply(r.j)?,
        })
    }
}

/// `R_T = {t_{ℓ_{i+1}} - t_{ℓ_i}}`.
pub fn sink_set_to_roots(t: &[usize]) -> BTreeSet<RootPair> {
    t.windows(2)
        .map(|w| RootPair { i: w[1], j: w[0] })
        .collect()
}

/// `R_k(I)`: every chain `t_{q_2} - t_{q_1}, …, t_{q_{k+1}} - t_{q_k}` inside `I`.
///
/// Each chain is returned as its vertex sequence `q_1 < ⋯ < q_{k+1}`; for `k = 0`
/// the single empty subset is represented by an empty sequence.
pub fn height_subsets(ideal: &BTreeSet<RootPair>, n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    fn rec(ideal: &BTreeSet<RootPair>, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k + 1 {
            out.push(cur.clone());
            return;
        }
        let last = *cur.last().unwrap();
        for q in last + 1..=n {
            if ideal.contains(&RootPair { i: q, j: last }) {
                cur.push(q);
                rec(ideal, n, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    for q1 in 1..=n {
        rec(ideal, n, k, &mut vec![q1], &mut out);
    }
    out
}
