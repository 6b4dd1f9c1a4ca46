//! Counting `W_i(J, h)` and `D(J, K)`, assembling `A` and the graded right-hand
//! sides, and back-substituting for the multiplicities `c_{μ,i}`.
//!
//! Membership of `w` in `W(J, h)` only depends on which of the roots
//! `w^{-1}(α_j)` lie in `Φ_h`: calling that set `M_w`, `w ∈ W(J, h)` exactly when
//! `M_w = J`. One sweep over `S_n` therefore histograms every `w` by
//! `(M_w, |inv_h(w)|)` and all `W_i(J, h)` counts are read off the table.
//! Likewise `D(J, K)` counts come from one histogram by `(Des_L, Des_R)`.

use serde::Serialize;
use serde_json::json;

use crate::combinat::{
    descents_left, descents_right, enumerate_partitions, enumerate_perms, j_set, jj_set,
    truncate_columns, Partition, Perm, SimpleRootSet, MAX_SWEEP_N,
};
use crate::error::{Error, Result};
use crate::hessenberg::HessFunction;
use crate::par::{fold_perms, Exec};

fn check_rank(n: usize, cap: usize) -> Result<()> {
    if n > cap || n > MAX_SWEEP_N {
        return Err(Error::OverCap { n, cap });
    }
    Ok(())
}

fn check_same_n(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::SizeMismatch { expected, actual });
    }
    Ok(())
}

/// `(Des_L(w), Des_R(w))` as dense subset indices.
#[inline]
fn descent_indices(w: &[u8]) -> (usize, usize) {
    let n = w.len();
    let mut pos = [0u8; MAX_SWEEP_N + 1];
    for (p, &v) in w.iter().enumerate() {
        pos[v as usize] = p as u8;
    }
    let (mut left, mut right) = (0usize, 0usize);
    for j in 1..n {
        if pos[j] > pos[j + 1] {
            left |= 1 << (j - 1);
        }
        if w[j - 1] > w[j] {
            right |= 1 << (j - 1);
        }
    }
    (left, right)
}

/// `(M_w, |inv_h(w)|)` where `M_w = {j | w^{-1}(α_j) ∈ Φ_h}` as a dense subset index.
#[inline]
fn hess_class(w: &[u8], h: &[usize]) -> (usize, usize) {
    let n = w.len();
    let mut pos = [0usize; MAX_SWEEP_N + 1];
    for (p, &v) in w.iter().enumerate() {
        pos[v as usize] = p + 1;
    }
    let mut mask = 0usize;
    for j in 1..n {
        let (a, b) = (pos[j], pos[j + 1]);
        if a < b || a <= h[b - 1] {
            mask |= 1 << (j - 1);
        }
    }
    let mut inv_h = 0;
    for j in 1..=n {
        let wj = w[j - 1];
        for i in j + 1..=h[j - 1] {
            if w[i - 1] < wj {
                inv_h += 1;
            }
        }
    }
    (mask, inv_h)
}

fn add_vecs(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// Histogram of `S_n` by `(Des_L(w), Des_R(w))`. Depends only on `n`.
#[derive(Clone, Debug)]
pub struct DescentTable {
    n: usize,
    width: usize,
    counts: Vec<u64>,
}

impl DescentTable {
    pub fn build(n: usize, cap: usize, exec: Exec) -> Result<Self> {
        check_rank(n, cap)?;
        let width = 1usize << n.saturating_sub(1);
        let counts = fold_perms(
            n,
            exec,
            || vec![0u64; width * width],
            |acc, w| {
                let (l, r) = descent_indices(w);
                acc[l * width + r] += 1;
            },
            add_vecs,
        );
        Ok(DescentTable { n, width, counts })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `#{w | Des_L(w) = left, Des_R(w) = right}`.
    pub fn count(&self, left: &SimpleRootSet, right: &SimpleRootSet) -> u64 {
        self.counts[left.index() * self.width + right.index()]
    }

    /// `|D(J, K)| = #{w | Des_L(w) = Δ ∖ J, Des_R(w) ⊆ Δ ∖ K}`.
    pub fn d_count(&self, j: &SimpleRootSet, k: &SimpleRootSet) -> u64 {
        let left = j.complement();
        subsets_of(&k.complement())
            .map(|r| self.count(&left, &r))
            .sum()
    }

    /// `#{w | Des_L(w) ⊆ Δ ∖ I, Des_R(w) ⊆ Δ ∖ K}`.
    pub fn bounded_count(&self, i: &SimpleRootSet, k: &SimpleRootSet) -> u64 {
        let rights: Vec<SimpleRootSet> = subsets_of(&k.complement()).collect();
        subsets_of(&i.complement())
            .map(|l| rights.iter().map(|r| self.count(&l, r)).sum::<u64>())
            .sum()
    }
}

/// Every subset of `s` (including `∅` and `s`).
fn subsets_of(s: &SimpleRootSet) -> impl Iterator<Item = SimpleRootSet> {
    let n = s.n();
    let full = s.bits();
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == full {
            None
        } else {
            Some(((cur | !full).wrapping_add(1)) & full)
        };
        Some(SimpleRootSet::from_bits(n, cur).expect("submask of a valid set"))
    })
}

/// Histogram of `S_n` by `(M_w, |inv_h(w)|)` for one Hessenberg function.
#[derive(Clone, Debug)]
pub struct HessTable {
    n: usize,
    max_degree: usize,
    counts: Vec<u64>,
}

impl HessTable {
    pub fn build(h: &HessFunction, cap: usize, exec: Exec) -> Result<Self> {
        let n = h.n();
        check_rank(n, cap)?;
        let max_degree = h.num_phi_minus();
        let stride = max_degree + 1;
        let width = 1usize << n.saturating_sub(1);
        let hv = h.values();
        let counts = fold_perms(
            n,
            exec,
            || vec![0u64; width * stride],
            |acc, w| {
                let (mask, deg) = hess_class(w, hv);
                acc[mask * stride + deg] += 1;
            },
            add_vecs,
        );
        Ok(HessTable {
            n,
            max_degree,
            counts,
        })
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// `|W_i(J, h)|`.
    pub fn w_count(&self, j: &SimpleRootSet, i: usize) -> u64 {
        if i > self.max_degree {
            return 0;
        }
        self.counts[j.index() * (self.max_degree + 1) + i]
    }

    /// `|W(J, h)|` summed over degrees.
    pub fn w_total(&self, j: &SimpleRootSet) -> u64 {
        (0..=self.max_degree).map(|i| self.w_count(j, i)).sum()
    }

    /// `#{w | w^{-1}(J) ⊆ Φ_h, |inv_h(w)| = i}` for each `i`: Betti numbers of `Hess(X_J, h)`.
    pub fn betti_regular(&self, j: &SimpleRootSet) -> Vec<u64> {
        let mut out = vec![0u64; self.max_degree + 1];
        for m in j.supersets() {
            for (i, slot) in out.iter_mut().enumerate() {
                *slot += self.w_count(&m, i);
            }
        }
        out
    }

    pub fn betti(&self) -> Vec<u64> {
        self.betti_regular(&SimpleRootSet::empty(self.n))
    }
}

/// `W_i(J, h)` by direct filtering with the root-set definitions.
pub fn w_set(j: &SimpleRootSet, h: &HessFunction, i: usize, cap: usize) -> Result<Vec<Perm>> {
    check_same_n(h.n(), j.n())?;
    Ok(enumerate_perms(h.n(), cap)?
        .filter(|w| in_w_set(w, j, h) && inv_h_count(w, h) == i)
        .collect())
}

/// `|W_i(J, h)|` via a counting sweep.
pub fn w_count(j: &SimpleRootSet, h: &HessFunction, i: usize, cap: usize, exec: Exec) -> Result<u64> {
    check_same_n(h.n(), j.n())?;
    Ok(HessTable::build(h, cap, exec)?.w_count(j, i))
}

/// `w^{-1}(J) ⊆ Φ_h` and `w^{-1}(Δ ∖ J) ⊆ I_h`.
pub fn in_w_set(w: &Perm, j: &SimpleRootSet, h: &HessFunction) -> bool {
    let winv = w.inverse();
    (1..w.n()).all(|a| {
        let root = crate::combinat::RootPair {
            i: winv.at(a),
            j: winv.at(a + 1),
        };
        if j.contains(a) {
            h.in_phi_h(root)
        } else {
            h.in_ideal(root)
        }
    })
}

/// `|inv_h(w)|`.
pub fn inv_h_count(w: &Perm, h: &HessFunction) -> usize {
    let n = w.n();
    (1..=n)
        .map(|j| (j + 1..=h.at(j)).filter(|&i| w.at(i) < w.at(j)).count())
        .sum()
}

/// `D(J, K)` by direct filtering.
pub fn d_set(j: &SimpleRootSet, k: &SimpleRootSet, cap: usize) -> Result<Vec<Perm>> {
    check_same_n(j.n(), k.n())?;
    let left = j.complement();
    let right_bound = k.complement();
    Ok(enumerate_perms(j.n(), cap)?
        .filter(|w| descents_left(w) == left && descents_right(w).is_subset(&right_bound))
        .collect())
}

/// `|D(J, K)|` via a counting sweep.
pub fn d_count(j: &SimpleRootSet, k: &SimpleRootSet, cap: usize, exec: Exec) -> Result<u64> {
    check_same_n(j.n(), k.n())?;
    let n = j.n();
    check_rank(n, cap)?;
    let left = j.complement().index();
    let right_bound = k.complement().index();
    Ok(fold_perms(
        n,
        exec,
        || 0u64,
        |acc, w| {
            let (l, r) = descent_indices(w);
            if l == left && r & !right_bound == 0 {
                *acc += 1;
            }
        },
        |a, b| a + b,
    ))
}

/// `A(λ, μ) = |D(𝕁_λ, J_μ)|` over `Par(n)` in `⪯` order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AMatrix {
    pub n: usize,
    pub order: Vec<Partition>,
    pub entries: Vec<Vec<u64>>,
}

impl AMatrix {
    pub fn from_table(table: &DescentTable, cap: usize) -> Result<Self> {
        let n = table.n();
        let order = enumerate_partitions(n, cap.max(n))?;
        let entries = order
            .iter()
            .map(|lambda| {
                let jj = jj_set(lambda);
                order.iter().map(|mu| table.d_count(&jj, &j_set(mu))).collect()
            })
            .collect();
        let a = AMatrix { n, order, entries };
        a.validate()?;
        Ok(a)
    }

    /// Unit upper-triangular with respect to `⪯`.
    pub fn validate(&self) -> Result<()> {
        for (r, row) in self.entries.iter().enumerate() {
            for (c, &value) in row.iter().enumerate() {
                let expected_zero = c < r;
                if (expected_zero && value != 0) || (c == r && value != 1) {
                    return Err(Error::Triangularity {
                        n: self.n,
                        lambda: self.order[r].to_string(),
                        mu: self.order[c].to_string(),
                        value,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.order.iter().position(|q| q == p)
    }

    pub fn entry(&self, lambda: &Partition, mu: &Partition) -> Option<u64> {
        Some(self.entries[self.index_of(lambda)?][self.index_of(mu)?])
    }

    pub fn size(&self) -> usize {
        self.order.len()
    }
}

pub fn a_matrix(n: usize, cap: usize, exec: Exec) -> Result<AMatrix> {
    AMatrix::from_table(&DescentTable::build(n, cap, exec)?, cap)
}

/// `A(λ, μ)` by column truncation, enumerating only the irreducible remainder.
///
/// Strips the longest common prefix of `λ∨` and `μ∨` (which preserves the entry),
/// then: equal remainders give 1, a remainder `μ'` with fewer parts than `λ'`
/// gives 0, and otherwise the smaller `|D(𝕁_{λ'}, J_{μ'})|` is counted directly.
pub fn a_entry_fast(lambda: &Partition, mu: &Partition, cap: usize, exec: Exec) -> Result<u64> {
    check_same_n(lambda.n(), mu.n())?;
    let (l, m) = strip_common_columns(lambda, mu);
    if l == m {
        return Ok(1);
    }
    if m.num_parts() < l.num_parts() {
        return Ok(0);
    }
    if m.num_parts() == l.num_parts() && m.bottom() < l.bottom() {
        return Ok(0);
    }
    d_count(&jj_set(&l), &j_set(&m), cap, exec)
}

fn strip_common_columns(lambda: &Partition, mu: &Partition) -> (Partition, Partition) {
    let ld = crate::combinat::dual_partition(lambda);
    let md = crate::combinat::dual_partition(mu);
    let ell = ld
        .parts()
        .iter()
        .zip(md.parts())
        .take_while(|(a, b)| a == b)
        .count();
    (
        truncate_columns(lambda, ell).expect("ell ≤ λ_1"),
        truncate_columns(mu, ell).expect("ell ≤ μ_1"),
    )
}

/// `W_i` as a vector over `Par(n)` in `⪯` order: entry `|W_i(𝕁_λ, h)|`.
pub fn w_vector(table: &HessTable, order: &[Partition], i: usize) -> Vec<u64> {
    order.iter().map(|l| table.w_count(&jj_set(l), i)).collect()
}

/// Regular-Hessenberg Betti numbers `#{w | w^{-1}(J) ⊆ Φ_h, |inv_h(w)| = i}`.
pub fn betti_regular(j: &SimpleRootSet, h: &HessFunction, cap: usize, exec: Exec) -> Result<Vec<u64>> {
    check_same_n(h.n(), j.n())?;
    Ok(HessTable::build(h, cap, exec)?.betti_regular(j))
}

/// The solved graded system for one `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultTable {
    pub h: HessFunction,
    pub height: usize,
    pub max_degree: usize,
    pub order: Vec<Partition>,
    /// `coeffs[p][i] = c_{order[p], i}`.
    pub coeffs: Vec<Vec<i64>>,
    pub betti: Vec<u64>,
}

impl MultTable {
    pub fn n(&self) -> usize {
        self.h.n()
    }

    /// `c_{μ,i}`; zero outside the computed range.
    pub fn coeff(&self, mu: &Partition, i: usize) -> i64 {
        self.order
            .iter()
            .position(|p| p == mu)
            .and_then(|p| self.coeffs[p].get(i).copied())
            .unwrap_or(0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().flatten().all(|&c| c >= 0)
    }

    /// First `(μ, i, c)` with `c < 0`.
    pub fn first_negative(&self) -> Option<(Partition, usize, i64)> {
        self.order.iter().zip(&self.coeffs).find_map(|(mu, row)| {
            row.iter()
                .position(|&c| c < 0)
                .map(|i| (mu.clone(), i, row[i]))
        })
    }

    /// The solve output object; keys serialize sorted.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n(),
            "h": self.h.values(),
            "ht": self.height,
            "betti": self.betti,
            "coefficients": self.order.iter().zip(&self.coeffs).map(|(mu, row)| json!({
                "mu": mu.parts(),
                "by_degree": row,
            })).collect::<Vec<_>>(),
            "nonnegative": self.is_nonnegative(),
        })
    }
}

/// Back-substitutes `A X_i = W_i` for every degree `i = 0..=|Φ_h^-|`.
#[allow(clippy::needless_range_loop)]
pub fn solve_with(h: &HessFunction, a: &AMatrix, table: &HessTable) -> Result<MultTable> {
    check_same_n(a.n, h.n())?;
    let size = a.size();
    let max_degree = h.num_phi_minus();
    let mut coeffs = vec![vec![0i64; max_degree + 1]; size];
    for i in 0..=max_degree {
        let rhs: Vec<i64> = w_vector(table, &a.order, i)
            .into_iter()
            .map(|v| v as i64)
            .collect();
        // Strictly ⪯-decreasing: from (1^n) down to (n).
        for r in (0..size).rev() {
            let mut acc = rhs[r];
            for c in r + 1..size {
                let term = (a.entries[r][c] as i64)
                    .checked_mul(coeffs[c][i])
                    .ok_or_else(|| Error::Internal("overflow in back-substitution".into()))?;
                acc = acc
                    .checked_sub(term)
                    .ok_or_else(|| Error::Internal("overflow in back-substitution".into()))?;
            }
            coeffs[r][i] = acc;
        }
        // Residual audit over the full matrix, lower part included.
        for r in 0..size {
            let lhs: i64 = (0..size).map(|c| a.entries[r][c] as i64 * coeffs[c][i]).sum();
            if lhs != rhs[r] {
                return Err(Error::Internal(format!(
                    "A X_{i} != W_{i} at {} for h = {h}",
                    a.order[r]
                )));
            }
        }
    }
    Ok(MultTable {
        h: h.clone(),
        height: h.ideal().height,
        max_degree,
        order: a.order.clone(),
        coeffs,
        betti: table.betti(),
    })
}

pub fn solve(h: &HessFunction, a: &AMatrix, cap: usize, exec: Exec) -> Result<MultTable> {
    solve_with(h, a, &HessTable::build(h, cap, exec)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hessenberg::parse_hess;

    fn pt(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_matrices() {
        let a1 = a_matrix(1, 9, Exec::Sequential).unwrap();
        assert_eq!(a1.entries, vec![vec![1]]);
        let a2 = a_matrix(2, 9, Exec::Sequential).unwrap();
        assert_eq!(a2.entries, vec![vec![1, 1], vec![0, 1]]);
        let a3 = a_matrix(3, 9, Exec::Sequential).unwrap();
        assert_eq!(a3.entries, vec![vec![1, 1, 1], vec![0, 1, 2], vec![0, 0, 1]]);
        let a0 = a_matrix(0, 9, Exec::Sequential).unwrap();
        assert_eq!(a0.entries, vec![vec![1]]);
    }

    #[test]
    fn d_examples() {
        let jj2 = jj_set(&pt(&[2]));
        let j2 = j_set(&pt(&[2]));
        assert_eq!(d_set(&jj2, &j2, 9).unwrap(), vec![Perm::identity(2)]);
        assert_eq!(d_count(&jj_set(&pt(&[1, 1])), &j2, 9, Exec::Sequential).unwrap(), 0);
        assert_eq!(
            d_count(&jj_set(&pt(&[2, 1])), &j_set(&pt(&[1, 1, 1])), 9, Exec::Sequential).unwrap(),
            2
        );
    }

    #[test]
    fn minimal_h_has_only_longest_element_in_empty_j() {
        for n in 1..=5 {
            let h = HessFunction::minimal(n);
            let w0 = w_set(&SimpleRootSet::empty(n), &h, 0, 9).unwrap();
            assert_eq!(w0, vec![Perm::longest(n)]);
        }
    }

    #[test]
    fn running_example_membership() {
        let h = parse_hess("2,3,5,6,7,8,8,8").unwrap();
        let w: Perm = "[3,6,2,8,5,1,7,4]".parse().unwrap();
        assert!(in_w_set(&w, &jj_set(&pt(&[3, 3, 2])), &h));
    }

    #[test]
    fn size_mismatch_is_rejected() {
        let h = parse_hess("2,3,3").unwrap();
        assert!(w_set(&SimpleRootSet::empty(4), &h, 0, 9).is_err());
        assert!(d_set(&SimpleRootSet::empty(4), &SimpleRootSet::empty(3), 9).is_err());
    }

    #[test]
    fn solve_extremes() {
        let a3 = a_matrix(3, 9, Exec::Sequential).unwrap();
        let full = solve(&HessFunction::maximal(3), &a3, 9, Exec::Sequential).unwrap();
        assert_eq!(full.coeffs[0], vec![1, 2, 2, 1]);
        assert!(full.coeffs[1..].iter().flatten().all(|&c| c == 0));
        let min = solve(&HessFunction::minimal(3), &a3, 9, Exec::Sequential).unwrap();
        assert_eq!(min.coeff(&pt(&[1, 1, 1]), 0), 1);
        assert_eq!(min.coeffs.iter().flatten().filter(|&&c| c != 0).count(), 1);
    }

    #[test]
    fn tables_reject_over_cap() {
        assert!(DescentTable::build(10, 9, Exec::Sequential).is_err());
        assert!(HessTable::build(&HessFunction::minimal(10), 9, Exec::Sequential).is_err());
    }
}
