//! Brute-force oracles, written against the definitions and sharing no code
//! with the library's sweeps.

use std::collections::BTreeSet;

use hessmult_core::combinat::{delete_entries, enumerate_partitions, factorial};
use hessmult_core::hessenberg::{enumerate_hess, height_subsets, sink_set_to_roots};
use hessmult_core::sink::{factorize, inversion_split, psi};
use hessmult_core::solver::{a_entry_fast, a_matrix, DescentTable, HessTable};
use hessmult_core::verify::dim_fixed;
use hessmult_core::{Engine, Exec, HessFunction, Partition, Perm, SimpleRootSet};

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_perms(n - 1) {
        for slot in 0..n {
            let mut q = p.clone();
            q.insert(slot, n);
            out.push(q);
        }
    }
    out
}

fn inverse(w: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; w.len()];
    for (p, &v) in w.iter().enumerate() {
        inv[v - 1] = p + 1;
    }
    inv
}

/// Bit `i` stands for the simple root `α_i`.
fn left_descents(w: &[usize]) -> u64 {
    let pos = inverse(w);
    (1..w.len()).filter(|&i| pos[i - 1] > pos[i]).fold(0, |m, i| m | 1 << i)
}

fn right_descents(w: &[usize]) -> u64 {
    (1..w.len()).filter(|&i| w[i - 1] > w[i]).fold(0, |m, i| m | 1 << i)
}

fn delta(n: usize) -> u64 {
    (1..n).fold(0, |m, i| m | 1 << i)
}

fn set(n: usize, bits: u64) -> SimpleRootSet {
    SimpleRootSet::from_bits(n, bits).unwrap()
}

fn subsets(n: usize) -> impl Iterator<Item = u64> {
    let d = delta(n);
    (0..1u64 << n).map(|b| b << 1).filter(move |b| b & !d == 0).collect::<BTreeSet<_>>().into_iter()
}

/// `t_a - t_b` lies in `Φ_h`.
fn in_phi(h: &[usize], a: usize, b: usize) -> bool {
    a < b || a <= h[b - 1]
}

fn h_inversions(w: &[usize], h: &[usize]) -> usize {
    let n = w.len();
    (1..=n)
        .flat_map(|i| (1..i).map(move |j| (i, j)))
        .filter(|&(i, j)| w[i - 1] < w[j - 1] && i <= h[j - 1])
        .count()
}

/// The set of `j` with `w^{-1}(α_j) ∈ Φ_h`.
fn phi_class(w: &[usize], h: &[usize]) -> u64 {
    let inv = inverse(w);
    (1..w.len())
        .filter(|&j| in_phi(h, inv[j - 1], inv[j]))
        .fold(0, |m, j| m | 1 << j)
}

fn row_sums(parts: &[usize]) -> u64 {
    parts.iter().scan(0, |s, &p| {
        *s += p;
        Some(*s)
    }).fold(0, |m, s| m | 1 << s)
}

fn dual(parts: &[usize]) -> Vec<usize> {
    let top = parts.first().copied().unwrap_or(0);
    (1..=top).map(|c| parts.iter().filter(|&&p| p >= c).count()).collect()
}

/// `J_μ = Δ ∖ {μ_1, μ_1 + μ_2, …}`.
fn j_mu(n: usize, mu: &[usize]) -> u64 {
    delta(n) & !row_sums(mu)
}

/// `𝕁_λ`: partial sums of the columns.
fn jj_lambda(n: usize, lambda: &[usize]) -> u64 {
    delta(n) & row_sums(&dual(lambda))
}

fn d_count(n: usize, j: u64, k: u64) -> u64 {
    all_perms(n)
        .iter()
        .filter(|w| left_descents(w) == delta(n) & !j && right_descents(w) & k == 0)
        .count() as u64
}

fn hess_functions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = prefix.len() + 1;
        if i > n {
            out.push(prefix.clone());
            return;
        }
        let lo = prefix.last().copied().unwrap_or(1).max(i);
        for v in lo..=n {
            prefix.push(v);
            go(n, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut out);
    out
}

fn catalan(n: usize) -> usize {
    (0..n).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

/// Block sizes of the Young subgroup `S_I`.
fn blocks(n: usize, i: u64) -> Vec<usize> {
    if n == 0 {
        return vec![];
    }
    let mut out = vec![1];
    for a in 1..n {
        if i >> a & 1 == 1 {
            *out.last_mut().unwrap() += 1;
        } else {
            out.push(1);
        }
    }
    out
}

/// Nonnegative integer matrices with the given row and column sums, i.e.
/// `S_I`-orbits on tabloids.
fn contingency(rows: &[usize], cols: &mut Vec<usize>) -> u64 {
    fn fill(r: usize, c: usize, left: usize, rows: &[usize], cols: &mut Vec<usize>) -> u64 {
        if r == rows.len() {
            return cols.iter().all(|&x| x == 0) as u64;
        }
        if c + 1 == cols.len() {
            if left > cols[c] {
                return 0;
            }
            cols[c] -= left;
            let next = rows.get(r + 1).copied().unwrap_or(0);
            let total = fill(r + 1, 0, next, rows, cols);
            cols[c] += left;
            return total;
        }
        let mut total = 0;
        for x in 0..=left.min(cols[c]) {
            cols[c] -= x;
            total += fill(r, c + 1, left - x, rows, cols);
            cols[c] += x;
        }
        total
    }
    if cols.is_empty() {
        return rows.iter().all(|&r| r == 0) as u64;
    }
    let first = rows.first().copied().unwrap_or(0);
    fill(0, 0, first, rows, cols)
}

fn mahonian(n: usize) -> Vec<u64> {
    let mut poly = vec![1u64];
    for k in 1..=n {
        let mut next = vec![0; poly.len() + k - 1];
        for (d, &c) in poly.iter().enumerate() {
            for e in 0..k {
                next[d + e] += c;
            }
        }
        poly = next;
    }
    poly
}

fn edges(h: &[usize]) -> Vec<(usize, usize)> {
    let n = h.len();
    (1..=n)
        .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
        .filter(|&(a, b)| b <= h[a - 1])
        .collect()
}

#[test]
fn hessenberg_functions_are_catalan_many_in_lex_order() {
    for n in 1..=7 {
        let ours: Vec<Vec<usize>> = enumerate_hess(n, 9).unwrap().iter().map(|h| h.values().to_vec()).collect();
        assert_eq!(ours.len(), catalan(n));
        assert_eq!(ours, hess_functions(n));
    }
}

#[test]
fn partition_order_compares_duals_lexicographically() {
    for n in 1..=8 {
        let order = enumerate_partitions(n, 9).unwrap();
        let duals: Vec<Vec<usize>> = order.iter().map(|p| dual(p.parts())).collect();
        assert!(duals.windows(2).all(|w| w[0] < w[1]), "n = {n}");
    }
}

#[test]
fn a_matrix_equals_direct_descent_count() {
    for n in 1..=6 {
        let a = a_matrix(n, 9, Exec::default()).unwrap();
        for (r, lambda) in a.order.iter().enumerate() {
            for (c, mu) in a.order.iter().enumerate() {
                let expect = d_count(n, jj_lambda(n, lambda.parts()), j_mu(n, mu.parts()));
                assert_eq!(a.entries[r][c], expect, "n = {n}, A({lambda}, {mu})");
                assert_eq!(a_entry_fast(lambda, mu, 9, Exec::Sequential).unwrap(), expect);
            }
        }
    }
}

#[test]
fn sequential_and_parallel_sweeps_agree() {
    for n in [5, 7] {
        let seq = a_matrix(n, 9, Exec::Sequential).unwrap();
        let par = a_matrix(n, 9, Exec::Parallel).unwrap();
        assert_eq!(seq.entries, par.entries);
        let h = HessFunction::new(hess_functions(n)[catalan(n) / 2].clone()).unwrap();
        let s = HessTable::build(&h, 9, Exec::Sequential).unwrap();
        let p = HessTable::build(&h, 9, Exec::Parallel).unwrap();
        for j in SimpleRootSet::all_subsets(n) {
            assert_eq!(s.betti_regular(&j), p.betti_regular(&j));
        }
    }
}

#[test]
fn w_counts_and_betti_match_definitions() {
    for n in 1..=5 {
        let perms = all_perms(n);
        for hv in hess_functions(n) {
            let h = HessFunction::new(hv.clone()).unwrap();
            let table = HessTable::build(&h, 9, Exec::Sequential).unwrap();
            let top = h.num_phi_minus();
            for j in subsets(n) {
                let mut w_counts = vec![0u64; top + 1];
                let mut betti = vec![0u64; top + 1];
                for w in &perms {
                    let class = phi_class(w, &hv);
                    let i = h_inversions(w, &hv);
                    if class == j {
                        w_counts[i] += 1;
                    }
                    if class & j == j {
                        betti[i] += 1;
                    }
                }
                let js = set(n, j);
                let ours: Vec<u64> = (0..=top).map(|i| table.w_count(&js, i)).collect();
                assert_eq!(ours, w_counts, "h = {h}, J = {js}");
                assert_eq!(table.betti_regular(&js), betti, "h = {h}, J = {js}");
            }
        }
    }
}

#[test]
fn betti_numbers_are_palindromic_and_sum_to_factorial() {
    for n in 1..=6 {
        for h in enumerate_hess(n, 9).unwrap() {
            let b = HessTable::build(&h, 9, Exec::default()).unwrap().betti();
            assert_eq!(b.iter().sum::<u64>(), factorial(n));
            let mut rev = b.clone();
            rev.reverse();
            assert_eq!(b, rev, "h = {h}");
        }
    }
}

#[test]
fn full_flag_betti_is_mahonian_for_every_j() {
    for n in 1..=6 {
        let h = HessFunction::maximal(n);
        let table = HessTable::build(&h, 9, Exec::default()).unwrap();
        assert_eq!(table.betti_regular(&SimpleRootSet::full(n)), mahonian(n));
        assert_eq!(table.betti(), mahonian(n));
    }
}

#[test]
fn dim_fixed_counts_orbits_on_tabloids() {
    for n in 1..=6 {
        let table = DescentTable::build(n, 9, Exec::default()).unwrap();
        for mu in enumerate_partitions(n, 9).unwrap() {
            for i in subsets(n) {
                let expect = contingency(&blocks(n, i), &mut mu.parts().to_vec());
                assert_eq!(dim_fixed(&mu, &set(n, i), &table).unwrap(), expect, "μ = {mu}, I = {i:b}");
            }
            assert_eq!(dim_fixed(&mu, &SimpleRootSet::empty(n), &table).unwrap(), mu.tabloid_count());
        }
    }
}

#[test]
fn dim_fixed_shrinks_as_the_subgroup_grows() {
    for n in 1..=5 {
        let table = DescentTable::build(n, 9, Exec::default()).unwrap();
        for mu in enumerate_partitions(n, 9).unwrap() {
            for small in subsets(n) {
                for big in subsets(n).filter(|b| b & small == small) {
                    let lo = dim_fixed(&mu, &set(n, big), &table).unwrap();
                    let hi = dim_fixed(&mu, &set(n, small), &table).unwrap();
                    assert!(lo <= hi, "μ = {mu}");
                }
            }
        }
    }
}

#[test]
fn linear_relations_hold_for_every_j_against_brute_force() {
    let engine = Engine::new(9, Exec::default());
    for n in 1..=5 {
        let perms = all_perms(n);
        let order = enumerate_partitions(n, 9).unwrap();
        for hv in hess_functions(n) {
            let h = HessFunction::new(hv.clone()).unwrap();
            let solved = engine.solve(&h).unwrap();
            for j in subsets(n) {
                let d: Vec<i64> = order.iter().map(|mu| d_count(n, j, j_mu(n, mu.parts())) as i64).collect();
                for i in 0..=solved.max_degree {
                    let lhs = perms.iter().filter(|w| phi_class(w, &hv) == j && h_inversions(w, &hv) == i).count() as i64;
                    let rhs: i64 = order.iter().zip(&d).map(|(mu, dm)| solved.coeff(mu, i) * dm).sum();
                    assert_eq!(lhs, rhs, "h = {h}, J = {j:b}, i = {i}");
                }
            }
        }
    }
}

#[test]
fn closed_forms_at_the_extremes() {
    let engine = Engine::new(9, Exec::default());
    for n in 1..=6 {
        let full = engine.solve(&HessFunction::maximal(n)).unwrap();
        let row = Partition::new(vec![n]).unwrap();
        let mahonian = mahonian(n);
        for (mu, coeffs) in full.order.iter().zip(&full.coeffs) {
            for (i, &c) in coeffs.iter().enumerate() {
                let expect = if *mu == row { mahonian[i] as i64 } else { 0 };
                assert_eq!(c, expect, "n = {n}, μ = {mu}, i = {i}");
            }
        }
        let minimal = engine.solve(&HessFunction::minimal(n)).unwrap();
        let column = Partition::new(vec![1; n]).unwrap();
        assert_eq!(minimal.max_degree, 0);
        for (mu, coeffs) in minimal.order.iter().zip(&minimal.coeffs) {
            assert_eq!(coeffs[0], (*mu == column) as i64, "n = {n}, μ = {mu}");
        }
    }
}

/// Sink set and ascent count of every acyclic orientation of `Γ_h`; bit `e`
/// of the mask orients edge `e` from its smaller to its larger endpoint.
fn acyclic_orientations(n: usize, edges: &[(usize, usize)]) -> Vec<(Vec<usize>, usize)> {
    let mut out = Vec::new();
    for mask in 0u32..1 << edges.len() {
        let arcs: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .map(|(e, &(a, b))| if mask >> e & 1 == 1 { (a, b) } else { (b, a) })
            .collect();
        let mut indeg = vec![0; n + 1];
        for &(_, t) in &arcs {
            indeg[t] += 1;
        }
        let mut ready: Vec<usize> = (1..=n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = ready.pop() {
            seen += 1;
            for &(s, t) in &arcs {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        ready.push(t);
                    }
                }
            }
        }
        if seen < n {
            continue;
        }
        let sinks = (1..=n).filter(|&v| arcs.iter().all(|&(s, _)| s != v)).collect();
        out.push((sinks, mask.count_ones() as usize));
    }
    out
}

#[test]
fn sink_sets_and_degrees_match_orientation_brute_force() {
    for n in 1..=6 {
        for hv in hess_functions(n) {
            let h = HessFunction::new(hv.clone()).unwrap();
            let orientations = acyclic_orientations(n, &edges(&hv));
            let mut best: std::collections::BTreeMap<Vec<usize>, usize> = Default::default();
            for (sinks, asc) in orientations {
                let e = best.entry(sinks).or_insert(asc);
                *e = (*e).min(asc);
            }
            let max = best.keys().map(Vec::len).max().unwrap();
            assert_eq!(h.max_sink_size(), max, "h = {h}");
            assert_eq!(max, h.ideal().height + 1, "h = {h}");
            let es = edges(&hv);
            let comps = components(n, &es);
            for k in 1..=n {
                let ours = h.sink_sets(k);
                // Orientation sink sets are the independent sets meeting every component.
                let realizable: Vec<Vec<usize>> = ours
                    .iter()
                    .filter(|s| comps.iter().all(|c| c.iter().any(|v| s.vertices.contains(v))))
                    .map(|s| s.vertices.clone())
                    .collect();
                let theirs: Vec<Vec<usize>> = best.keys().filter(|t| t.len() == k).cloned().collect();
                assert_eq!(realizable, theirs, "h = {h}, k = {k}");
                if comps.len() == 1 {
                    assert_eq!(realizable.len(), ours.len());
                }
                for s in ours.iter().filter(|s| best.contains_key(&s.vertices)) {
                    let brute = best[&s.vertices];
                    // The edge count is the orientation minimum exactly when pointing
                    // every edge off T leftward leaves no sink outside T.
                    let tight = (1..=n).filter(|v| !s.vertices.contains(v)).all(|v| {
                        es.iter().any(|&(a, b)| {
                            (b == v && (s.vertices.contains(&a) || a < v)) || (a == v && s.vertices.contains(&b))
                        })
                    });
                    assert!(s.degree <= brute, "h = {h}, T = {:?}", s.vertices);
                    assert_eq!(s.degree == brute, tight, "h = {h}, T = {:?}", s.vertices);
                    if k == max {
                        assert_eq!(s.degree, brute, "h = {h}, T = {:?}", s.vertices);
                    }
                }
            }
        }
    }
}

fn components(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut label: Vec<usize> = (0..=n).collect();
    for _ in 0..n {
        for &(a, b) in edges {
            let m = label[a].min(label[b]);
            label[a] = m;
            label[b] = m;
        }
    }
    let roots: BTreeSet<usize> = (1..=n).map(|v| label[v]).collect();
    roots.into_iter().map(|r| (1..=n).filter(|&v| label[v] == r).collect()).collect()
}

#[test]
fn max_sink_size_is_height_plus_one_at_seven() {
    for h in enumerate_hess(7, 9).unwrap() {
        assert_eq!(h.max_sink_size(), h.ideal().height + 1, "h = {h}");
    }
}

#[test]
fn sink_sets_biject_onto_height_chains() {
    for n in 1..=6 {
        for h in enumerate_hess(n, 9).unwrap() {
            let ideal = h.ideal();
            let longest = (0..n).filter(|&k| !height_subsets(&ideal.ideal, n, k).is_empty()).max().unwrap();
            assert_eq!(longest, ideal.height, "h = {h}");
            for k in 2..=n {
                let sinks: BTreeSet<Vec<usize>> = h.sink_sets(k).into_iter().map(|s| s.vertices).collect();
                let chains: BTreeSet<Vec<usize>> = height_subsets(&ideal.ideal, n, k - 1).into_iter().collect();
                assert_eq!(sinks, chains, "h = {h}, k = {k}");
                let roots: BTreeSet<_> = sinks.iter().map(|t| sink_set_to_roots(t)).collect();
                assert_eq!(roots.len(), sinks.len());
                for r in &roots {
                    assert_eq!(r.len(), k - 1);
                    assert!(r.iter().all(|x| ideal.ideal.contains(x)));
                }
            }
        }
    }
}

#[test]
fn deletion_graph_is_the_relabelled_induced_subgraph() {
    for n in 1..=6 {
        for hv in hess_functions(n) {
            let h = HessFunction::new(hv.clone()).unwrap();
            for k in 1..=h.max_sink_size() {
                for t in h.sink_sets(k) {
                    let (reduced, _) = h.delete_sink_set(&t.vertices).unwrap();
                    let keep: Vec<usize> = (1..=n).filter(|v| !t.vertices.contains(v)).collect();
                    let relabel = |v: usize| keep.iter().position(|&x| x == v).unwrap() + 1;
                    let expect: Vec<(usize, usize)> = edges(&hv)
                        .into_iter()
                        .filter(|(a, b)| keep.contains(a) && keep.contains(b))
                        .map(|(a, b)| (relabel(a), relabel(b)))
                        .collect();
                    assert_eq!(edges(reduced.values()), expect, "h = {h}, T = {:?}", t.vertices);
                }
            }
        }
    }
}

#[test]
fn psi_deletes_the_smallest_letters() {
    for n in 2..=6 {
        for w in all_perms(n) {
            let inv = inverse(&w);
            let perm = Perm::new(w.clone()).unwrap();
            for k in 1..n {
                let t: Vec<usize> = (1..=k).rev().map(|v| inv[v - 1]).collect();
                if !t.windows(2).all(|p| p[0] < p[1]) {
                    continue;
                }
                assert_eq!(psi(&perm, &t).unwrap(), delete_entries(&perm, k).unwrap());
                let fac = factorize(&perm, &t).unwrap();
                assert_eq!(fac.w_t.compose(&fac.sigma).unwrap(), perm);
                let (a, b) = inversion_split(&perm, &t).unwrap();
                assert!(a.is_disjoint(&b));
                assert_eq!(a.len() + b.len(), perm.len_inversions(), "w = {perm}, T = {t:?}");
            }
        }
    }
}
