//! Sink-set decomposition of `W_i(𝕁_λ, h)` and the inductive formula for the
//! multiplicities of partitions with the maximal number of parts.
//!
//! For a sink set `T = {ℓ_1 < ⋯ < ℓ_k}`, the permutations with `w(ℓ_j) = k - j + 1`
//! factor uniquely as `w = w_T σ` with `σ` fixing every `ℓ_j`. Deleting the
//! positions of `T` from `σ` and relabeling with `f_T` gives `Ψ_T(w) = x_σ ∈ S_{n-k}`.
//! (Equivalently `Ψ_T` ignores the values `1..=k` in `w`.)

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use crate::combinat::{
    enumerate_perms, inversions, jj_set, truncate_columns, Partition, Perm, RootPair,
};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::hessenberg::{HessFunction, SinkRelabel};
use crate::solver::{in_w_set, inv_h_count};

fn check_sorted_subset(t: &[usize], n: usize) -> Result<()> {
    if t.iter().any(|&v| v == 0 || v > n) || !t.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Precondition(format!(
            "T = {t:?} must be strictly increasing inside 1..={n}"
        )));
    }
    Ok(())
}

/// `w_T`: `w_T(ℓ_j) = k - j + 1`, the other positions list `k+1, …, n` increasingly.
pub fn canonical_w_t(t: &[usize], n: usize) -> Result<Perm> {
    check_sorted_subset(t, n)?;
    let k = t.len();
    let f = SinkRelabel::new(n, t);
    let image = (1..=n)
        .map(|p| match t.iter().position(|&l| l == p) {
            Some(j) => k - j,
            None => f.apply(p).expect("position outside T") + k,
        })
        .collect();
    Perm::new(image)
}

/// `w(ℓ_j) = k - j + 1` for every `j`.
pub fn satisfies_position_condition(w: &Perm, t: &[usize]) -> bool {
    let k = t.len();
    t.iter().enumerate().all(|(j, &l)| l <= w.n() && w.at(l) == k - j)
}

/// The positions of the values `k, k-1, …, 1` in `w`, when they increase.
pub fn sink_positions(w: &Perm, k: usize) -> Option<Vec<usize>> {
    if k > w.n() {
        return None;
    }
    let inv = w.inverse();
    let t: Vec<usize> = (1..=k).rev().map(|v| inv.at(v)).collect();
    t.windows(2).all(|p| p[0] < p[1]).then_some(t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SinkFactorization {
    pub w: Perm,
    pub t: Vec<usize>,
    pub w_t: Perm,
    pub sigma: Perm,
    pub x_sigma: Perm,
}

/// Writes `w = w_T σ` and computes `x_σ = Ψ_T(w)`.
pub fn factorize(w: &Perm, t: &[usize]) -> Result<SinkFactorization> {
    let n = w.n();
    let w_t = canonical_w_t(t, n)?;
    if !satisfies_position_condition(w, t) {
        return Err(Error::Precondition(format!(
            "{w} does not place {}..1 at positions {t:?}",
            t.len()
        )));
    }
    let sigma = w_t.inverse().compose(w)?;
    let f = SinkRelabel::new(n, t);
    let x_sigma = Perm::new(
        (1..=n)
            .filter(|p| !t.contains(p))
            .map(|p| f.apply(sigma.at(p)).expect("σ preserves [n] ∖ T"))
            .collect(),
    )?;
    Ok(SinkFactorization {
        w: w.clone(),
        t: t.to_vec(),
        w_t,
        sigma,
        x_sigma,
    })
}

/// `Ψ_T(w)`.
pub fn psi(w: &Perm, t: &[usize]) -> Result<Perm> {
    Ok(factorize(w, t)?.x_sigma)
}

/// `inv(w) = inv(w_T) ⊔ (inv(σ) ∩ Φ[T])`, returned as the two parts.
pub fn inversion_split(w: &Perm, t: &[usize]) -> Result<(BTreeSet<RootPair>, BTreeSet<RootPair>)> {
    let fac = factorize(w, t)?;
    let outside = |r: &RootPair| !t.contains(&r.i) && !t.contains(&r.j);
    let sigma_part = inversions(&fac.sigma)
        .into_iter()
        .filter(outside)
        .collect();
    Ok((inversions(&fac.w_t), sigma_part))
}

fn check_sink_instance(lambda: &Partition, h: &HessFunction, t: &[usize]) -> Result<usize> {
    if lambda.n() != h.n() {
        return Err(Error::SizeMismatch {
            expected: h.n(),
            actual: lambda.n(),
        });
    }
    let k = lambda.num_parts();
    if t.len() != k {
        return Err(Error::Precondition(format!(
            "|T| = {} but {lambda} has {k} parts",
            t.len()
        )));
    }
    h.deg_of_sink_set(t)
}

/// `W_i(𝕁_λ, h, T)`: members of `W_i(𝕁_λ, h)` with `w(ℓ_j) = k - j + 1`.
pub fn w_sink_subset(
    lambda: &Partition,
    h: &HessFunction,
    t: &[usize],
    i: usize,
    cap: usize,
) -> Result<Vec<Perm>> {
    check_sink_instance(lambda, h, t)?;
    let jj = jj_set(lambda);
    Ok(enumerate_perms(h.n(), cap)?
        .filter(|w| {
            satisfies_position_condition(w, t) && in_w_set(w, &jj, h) && inv_h_count(w, h) == i
        })
        .collect())
}

/// Same set, selected by `w^{-1}({α_1, …, α_{k-1}}) = R_T` instead of positions.
pub fn w_sink_subset_by_roots(
    lambda: &Partition,
    h: &HessFunction,
    t: &[usize],
    i: usize,
    cap: usize,
) -> Result<Vec<Perm>> {
    check_sink_instance(lambda, h, t)?;
    let jj = jj_set(lambda);
    let k = t.len();
    let r_t = crate::hessenberg::sink_set_to_roots(t);
    Ok(enumerate_perms(h.n(), cap)?
        .filter(|w| {
            if !(in_w_set(w, &jj, h) && inv_h_count(w, h) == i) {
                return false;
            }
            let winv = w.inverse();
            let pulled: BTreeSet<RootPair> = (1..k)
                .map(|a| RootPair {
                    i: winv.at(a),
                    j: winv.at(a + 1),
                })
                .collect();
            pulled == r_t
        })
        .collect())
}

/// Per-degree counts of `W_i(𝕁_λ, h)` split by the sink set read off each member.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SinkDecomposition {
    /// `|W_i(𝕁_λ, h)|` by degree.
    pub total: Vec<u64>,
    /// `|W_i(𝕁_λ, h, T)|` by degree, keyed by `T ∈ SK_k(Γ_h)`.
    pub by_sink_set: BTreeMap<Vec<usize>, Vec<u64>>,
}

impl SinkDecomposition {
    /// Whether `Σ_T |W_i(𝕁_λ, h, T)| = |W_i(𝕁_λ, h)|` for every `i`; returns the first bad degree.
    pub fn first_mismatch(&self) -> Option<usize> {
        (0..self.total.len()).find(|&i| {
            let sum: u64 = self.by_sink_set.values().map(|v| v[i]).sum();
            sum != self.total[i]
        })
    }
}

pub fn sink_decomposition(lambda: &Partition, h: &HessFunction, cap: usize) -> Result<SinkDecomposition> {
    if lambda.n() != h.n() {
        return Err(Error::SizeMismatch {
            expected: h.n(),
            actual: lambda.n(),
        });
    }
    let k = lambda.num_parts();
    let degrees = h.num_phi_minus() + 1;
    let mut by_sink_set: BTreeMap<Vec<usize>, Vec<u64>> = h
        .sink_sets(k)
        .into_iter()
        .map(|s| (s.vertices, vec![0; degrees]))
        .collect();
    let mut total = vec![0; degrees];
    let jj = jj_set(lambda);
    for w in enumerate_perms(h.n(), cap)? {
        if !in_w_set(&w, &jj, h) {
            continue;
        }
        let i = inv_h_count(&w, h);
        total[i] += 1;
        if let Some(t) = sink_positions(&w, k) {
            if let Some(slot) = by_sink_set.get_mut(&t) {
                slot[i] += 1;
            }
        }
    }
    Ok(SinkDecomposition { total, by_sink_set })
}

/// Both sides of `Ψ_T: W_i(𝕁_λ, h, T) → W_{i - deg_h(T)}(𝕁_{λ[1]}, h[T])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiCheck {
    #[serde(rename = "T")]
    pub t: Vec<usize>,
    pub deg: usize,
    /// `|W_i(𝕁_λ, h, T)|` for `i = 0..=|Φ_h^-|`.
    pub counts_by_degree_left: Vec<u64>,
    /// `|W_{i - deg}(𝕁_{λ[1]}, h[T])|`, indexed by the same `i`.
    pub counts_by_degree_right: Vec<u64>,
    /// `Ψ_T` sends every left member into the right set at the shifted degree, injectively.
    pub bijection_verified: bool,
}

impl PsiCheck {
    pub fn at(&self, i: usize) -> (u64, u64) {
        (
            self.counts_by_degree_left.get(i).copied().unwrap_or(0),
            self.counts_by_degree_right.get(i).copied().unwrap_or(0),
        )
    }

    pub fn passed(&self) -> bool {
        self.bijection_verified && self.counts_by_degree_left == self.counts_by_degree_right
    }
}

fn require_max_parts(h: &HessFunction, k: usize, what: &str) -> Result<()> {
    let ht = h.ideal().height;
    if k != ht + 1 {
        return Err(Error::Precondition(format!(
            "{what} has {k} parts but ht(I_h) + 1 = {} for h = {h}",
            ht + 1
        )));
    }
    Ok(())
}

pub fn psi_bijection_check(
    lambda: &Partition,
    h: &HessFunction,
    t: &[usize],
    engine: &Engine,
) -> Result<PsiCheck> {
    let deg = check_sink_instance(lambda, h, t)?;
    require_max_parts(h, lambda.num_parts(), &lambda.to_string())?;
    let cap = engine.cap();
    let degrees = h.num_phi_minus() + 1;
    let (reduced, _) = h.delete_sink_set(t)?;
    let shrunk = truncate_columns(lambda, 1)?;
    let jj = jj_set(lambda);
    let jj_small = jj_set(&shrunk);

    let mut left = vec![0u64; degrees];
    let mut images = HashSet::new();
    let mut verified = true;
    for w in enumerate_perms(h.n(), cap)? {
        if !(satisfies_position_condition(&w, t) && in_w_set(&w, &jj, h)) {
            continue;
        }
        let i = inv_h_count(&w, h);
        left[i] += 1;
        let x = psi(&w, t)?;
        let lands = i >= deg
            && in_w_set(&x, &jj_small, &reduced)
            && inv_h_count(&x, &reduced) == i - deg;
        verified &= lands && images.insert(x);
    }

    let table = engine.hess_table(&reduced)?;
    let right = (0..degrees)
        .map(|i| if i >= deg { table.w_count(&jj_small, i - deg) } else { 0 })
        .collect();
    Ok(PsiCheck {
        t: t.to_vec(),
        deg,
        counts_by_degree_left: left,
        counts_by_degree_right: right,
        bijection_verified: verified,
    })
}

/// One summand `c^T_{μ[1], i - deg_h(T)}` of the inductive formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InductiveBranch {
    #[serde(rename = "T")]
    pub t: Vec<usize>,
    pub deg: usize,
    pub reduced_h: Vec<usize>,
    pub reduced_mu: Vec<usize>,
    /// Contribution at each degree `i = 0..=|Φ_h^-|`.
    pub terms: Vec<i64>,
}

/// The per-`T` terms of `c_{μ,i} = Σ_{T ∈ SK_k} c^T_{μ[1], i - deg_h(T)}` for every `i`.
pub fn inductive_branches(h: &HessFunction, mu: &Partition, engine: &Engine) -> Result<Vec<InductiveBranch>> {
    if mu.n() != h.n() {
        return Err(Error::SizeMismatch {
            expected: h.n(),
            actual: mu.n(),
        });
    }
    let k = mu.num_parts();
    require_max_parts(h, k, &mu.to_string())?;
    let shrunk = truncate_columns(mu, 1)?;
    let degrees = h.num_phi_minus() + 1;
    h.sink_sets(k)
        .into_iter()
        .map(|sink| {
            let (reduced, _) = h.delete_sink_set(&sink.vertices)?;
            let solved = engine.solve(&reduced)?;
            let terms = (0..degrees)
                .map(|i| {
                    i.checked_sub(sink.degree)
                        .map_or(0, |d| solved.coeff(&shrunk, d))
                })
                .collect();
            Ok(InductiveBranch {
                t: sink.vertices,
                deg: sink.degree,
                reduced_h: reduced.values().to_vec(),
                reduced_mu: shrunk.parts().to_vec(),
                terms,
            })
        })
        .collect()
}

/// `c_{μ,i}` from the inductive formula; requires `μ` to have `ht(I_h) + 1` parts.
pub fn inductive_coeffs(h: &HessFunction, mu: &Partition, i: usize, engine: &Engine) -> Result<i64> {
    Ok(inductive_branches(h, mu, engine)?
        .iter()
        .map(|b| b.terms.get(i).copied().unwrap_or(0))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hessenberg::parse_hess;

    fn p(s: &str) -> Perm {
        s.parse().unwrap()
    }

    #[test]
    fn running_example_factorization() {
        let t = [1, 3, 6];
        assert_eq!(canonical_w_t(&t, 8).unwrap(), p("[3,4,2,5,6,1,7,8]"));
        let fac = factorize(&p("[3,6,2,8,5,1,7,4]"), &t).unwrap();
        assert_eq!(fac.sigma, p("[1,5,3,8,4,6,7,2]"));
        assert_eq!(fac.x_sigma, p("[3,5,2,4,1]"));
        let (a, b) = inversion_split(&fac.w, &t).unwrap();
        assert_eq!((a.len(), b.len()), (7, 7));
        assert!(a.is_disjoint(&b));
    }

    #[test]
    fn w_t_edge_cases() {
        assert_eq!(canonical_w_t(&[1], 2).unwrap(), Perm::identity(2));
        assert_eq!(canonical_w_t(&[], 4).unwrap(), Perm::identity(4));
        assert!(canonical_w_t(&[3, 1], 4).is_err());
        let fac = factorize(&p("[3,4,2,5,6,1,7,8]"), &[1, 3, 6]).unwrap();
        assert!(fac.sigma.is_identity() && fac.x_sigma.is_identity());
        assert!(factorize(&Perm::identity(8), &[1, 3, 6]).is_err());
    }

    #[test]
    fn w_t_inversions_are_rows_of_t() {
        let t = [2, 4, 5];
        let expected: BTreeSet<RootPair> = (1..=6)
            .flat_map(|i| (1..i).map(move |j| RootPair { i, j }))
            .filter(|r| t.contains(&r.i))
            .collect();
        assert_eq!(inversions(&canonical_w_t(&t, 6).unwrap()), expected);
    }

    #[test]
    fn precondition_on_parts() {
        let h = parse_hess("2,3,5,6,7,8,8,8").unwrap();
        let engine = Engine::default();
        let two_parts: Partition = "[4,4]".parse().unwrap();
        assert!(matches!(
            psi_bijection_check(&two_parts, &h, &[1, 3], &engine),
            Err(Error::Precondition(_))
        ));
        assert!(inductive_coeffs(&h, &two_parts, 0, &engine).is_err());
        let three: Partition = "[3,3,2]".parse().unwrap();
        assert!(w_sink_subset(&three, &h, &[1, 3], 0, 9).is_err());
    }
}
