//! Exhaustive verification of the counting identities behind the solver.
//!
//! Every check recomputes both sides of an identity from independent counts.
//! A failure of any check other than non-negativity is an implementation defect
//! ([`Severity::ImplBug`]); a negative multiplicity is reported as
//! [`Severity::MathAlert`].

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use serde_json::json;

use crate::combinat::{j_set, jj_set, Partition, SimpleRootSet};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::hessenberg::{enumerate_hess, HessFunction};
use crate::par::map_items;
use crate::sink::{inductive_branches, psi_bijection_check, sink_decomposition};
use crate::solver::{AMatrix, DescentTable, HessTable, MultTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Triangularity,
    LinearRelations,
    Mobius,
    BrosnanChow,
    Vanishing,
    Nonnegativity,
    SinkDecomposition,
    PsiBijection,
    InductiveFormula,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::Triangularity,
        Check::LinearRelations,
        Check::Mobius,
        Check::BrosnanChow,
        Check::Vanishing,
        Check::Nonnegativity,
        Check::SinkDecomposition,
        Check::PsiBijection,
        Check::InductiveFormula,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Triangularity => "triangularity",
            Check::LinearRelations => "linear-relations",
            Check::Mobius => "mobius",
            Check::BrosnanChow => "brosnan-chow",
            Check::Vanishing => "vanishing",
            Check::Nonnegativity => "nonnegativity",
            Check::SinkDecomposition => "sink-decomposition",
            Check::PsiBijection => "psi-bijection",
            Check::InductiveFormula => "inductive-formula",
        }
    }

    pub fn severity(self) -> Severity {
        match self {
            Check::Nonnegativity => Severity::MathAlert,
            _ => Severity::ImplBug,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        Check::ALL
            .into_iter()
            .find(|c| c.name() == key || (key == "möbius" && *c == Check::Mobius))
            .ok_or_else(|| Error::Precondition(format!("unknown check `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Severity {
    ImplBug,
    MathAlert,
}

/// The checks to run, toggled individually.
pub type CheckSet = BTreeSet<Check>;

/// Cheap table-driven checks always; subset-exponential Möbius checks up to
/// `n = 5`; the enumeration-heavy sink-set checks up to `n = 6`.
pub fn default_checks(n: usize) -> CheckSet {
    let mut set: CheckSet = [
        Check::Triangularity,
        Check::LinearRelations,
        Check::BrosnanChow,
        Check::Vanishing,
        Check::Nonnegativity,
    ]
    .into_iter()
    .collect();
    if n <= 5 {
        set.insert(Check::Mobius);
    }
    if n <= 6 {
        set.extend([Check::SinkDecomposition, Check::PsiBijection, Check::InductiveFormula]);
    }
    set
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: Check,
    /// What was quantified over, e.g. `"J ⊆ Δ (16) × i ≤ 5"`.
    pub params: String,
    pub cases: u64,
    pub passed: bool,
    pub severity: Severity,
    /// The first failing case, always present when `passed` is false.
    pub witness: Option<String>,
}

#[derive(Default)]
struct Tally {
    cases: u64,
    witness: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn finish(self, check: Check, params: String) -> CheckResult {
        CheckResult {
            check,
            params,
            cases: self.cases,
            passed: self.witness.is_none(),
            severity: check.severity(),
            witness: self.witness,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    /// `None` for the n-level report (triangularity).
    pub h: Option<Vec<usize>>,
    pub checks: Vec<CheckResult>,
    pub elapsed_ms: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn has_math_alert(&self) -> bool {
        self.failures().any(|c| c.severity == Severity::MathAlert)
    }

    pub fn has_impl_bug(&self) -> bool {
        self.failures().any(|c| c.severity == Severity::ImplBug)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub n: usize,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub math_alerts: Vec<String>,
}

impl ScanSummary {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "total": self.total,
            "passed": self.passed,
            "failed": self.failed,
            "math_alerts": self.math_alerts,
        })
    }
}

/// `dim(M^μ)^{S_I} = #{w | Des_L(w) ⊆ Δ ∖ I, Des_R(w) ⊆ Δ ∖ J_μ}`.
pub fn dim_fixed(mu: &Partition, i: &SimpleRootSet, table: &DescentTable) -> Result<u64> {
    if mu.n() != i.n() || table.n() != i.n() {
        return Err(Error::SizeMismatch {
            expected: i.n(),
            actual: mu.n(),
        });
    }
    Ok(table.bounded_count(i, &j_set(mu)))
}

/// All `dim(M^μ)^{S_I}` for one `n`, indexed `[μ in ⪯ order][I as subset index]`.
#[derive(Clone, Debug)]
pub struct FixedDimTable {
    pub n: usize,
    pub order: Vec<Partition>,
    entries: Vec<Vec<u64>>,
}

impl FixedDimTable {
    pub fn new(order: &[Partition], table: &DescentTable) -> Self {
        let n = table.n();
        let entries = order
            .iter()
            .map(|mu| {
                let k = j_set(mu);
                SimpleRootSet::all_subsets(n)
                    .map(|i| table.bounded_count(&i, &k))
                    .collect()
            })
            .collect();
        FixedDimTable {
            n,
            order: order.to_vec(),
            entries,
        }
    }

    pub fn get(&self, mu_index: usize, i: &SimpleRootSet) -> u64 {
        self.entries[mu_index][(i.bits() >> 1) as usize]
    }
}

fn sign(i: &SimpleRootSet, j: &SimpleRootSet) -> i64 {
    if (i.len() - j.len()).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Both sides of a Möbius-inversion identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MobiusCheck {
    pub lhs: i64,
    pub rhs: i64,
}

impl MobiusCheck {
    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `|W_i(J, h)| = Σ_{I ⊇ J} (-1)^{|I|-|J|} dim H^{2i}(Hess(X_I, h))`.
pub fn check_mobius_w(table: &HessTable, j: &SimpleRootSet, i: usize) -> MobiusCheck {
    let rhs = j
        .supersets()
        .map(|big| sign(&big, j) * table.betti_regular(&big).get(i).copied().unwrap_or(0) as i64)
        .sum();
    MobiusCheck {
        lhs: table.w_count(j, i) as i64,
        rhs,
    }
}

/// `|D(J, J_μ)| = Σ_{I ⊇ J} (-1)^{|I|-|J|} dim(M^μ)^{S_I}`.
pub fn check_mobius_d(table: &DescentTable, mu: &Partition, j: &SimpleRootSet) -> MobiusCheck {
    let k = j_set(mu);
    let rhs = j
        .supersets()
        .map(|big| sign(&big, j) * table.bounded_count(&big, &k) as i64)
        .sum();
    MobiusCheck {
        lhs: table.d_count(j, &k) as i64,
        rhs,
    }
}

/// Everything shared by the checks at one `n`.
pub struct NContext {
    pub n: usize,
    pub a: std::sync::Arc<AMatrix>,
    pub descents: DescentTable,
    pub fixed: FixedDimTable,
}

impl NContext {
    pub fn new(n: usize, engine: &Engine) -> Result<Self> {
        let a = engine.a_matrix(n)?;
        let descents = DescentTable::build(n, engine.cap(), engine.exec())?;
        let fixed = FixedDimTable::new(&a.order, &descents);
        Ok(NContext {
            n,
            a,
            descents,
            fixed,
        })
    }
}

fn degree_params(n: usize, max_degree: usize) -> String {
    format!("J ⊆ Δ ({}) × i ≤ {max_degree}", 1usize << n.saturating_sub(1))
}

/// `Σ_μ c_{μ,i} dim(M^μ)^{S_J} = dim H^{2i}(Hess(X_J, h))` for every `J` and `i`.
pub fn brosnan_chow_result(solved: &MultTable, table: &HessTable, ctx: &NContext) -> CheckResult {
    let mut tally = Tally::default();
    for j in SimpleRootSet::all_subsets(ctx.n) {
        let betti = table.betti_regular(&j);
        for (i, &b) in betti.iter().enumerate() {
            let lhs: i64 = (0..solved.order.len())
                .map(|m| solved.coeffs[m][i] * ctx.fixed.get(m, &j) as i64)
                .sum();
            tally.record(lhs == b as i64, || {
                format!("J = {j}, i = {i}: Σ c·dim = {lhs}, betti = {b}")
            });
        }
    }
    tally.finish(Check::BrosnanChow, degree_params(ctx.n, solved.max_degree))
}

pub fn check_brosnan_chow(h: &HessFunction, engine: &Engine) -> Result<VerificationReport> {
    let start = Instant::now();
    let ctx = NContext::new(h.n(), engine)?;
    let solved = engine.solve(h)?;
    let table = engine.hess_table(h)?;
    Ok(VerificationReport {
        n: h.n(),
        h: Some(h.values().to_vec()),
        checks: vec![brosnan_chow_result(&solved, &table, &ctx)],
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn triangularity_result(a: &AMatrix) -> CheckResult {
    let mut tally = Tally::default();
    for (r, row) in a.entries.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            let ok = if c < r { v == 0 } else if c == r { v == 1 } else { true };
            tally.record(ok, || {
                format!("A({}, {}) = {v}", a.order[r], a.order[c])
            });
        }
    }
    tally.finish(Check::Triangularity, format!("|Par({})|² = {}", a.n, a.size() * a.size()))
}

fn linear_relations_result(solved: &MultTable, table: &HessTable, ctx: &NContext) -> CheckResult {
    let mut tally = Tally::default();
    let ks: Vec<SimpleRootSet> = solved.order.iter().map(j_set).collect();
    for j in SimpleRootSet::all_subsets(ctx.n) {
        let d: Vec<i64> = ks.iter().map(|k| ctx.descents.d_count(&j, k) as i64).collect();
        let (mut lhs_sum, mut rhs_sum) = (0i64, 0i64);
        for i in 0..=solved.max_degree {
            let lhs = table.w_count(&j, i) as i64;
            let rhs: i64 = (0..d.len()).map(|m| solved.coeffs[m][i] * d[m]).sum();
            lhs_sum += lhs;
            rhs_sum += rhs;
            tally.record(lhs == rhs, || {
                format!("J = {j}, i = {i}: |W_i| = {lhs}, Σ c·|D| = {rhs}")
            });
        }
        // Ungraded form: sum over all degrees.
        let ungraded: i64 = (0..d.len())
            .map(|m| solved.coeffs[m].iter().sum::<i64>() * d[m])
            .sum();
        tally.record(
            lhs_sum == table.w_total(&j) as i64 && ungraded == rhs_sum,
            || format!("J = {j}: ungraded |W| = {lhs_sum}, Σ c·|D| = {ungraded}"),
        );
    }
    tally.finish(Check::LinearRelations, degree_params(ctx.n, solved.max_degree))
}

fn mobius_result(solved: &MultTable, table: &HessTable, ctx: &NContext) -> CheckResult {
    let mut tally = Tally::default();
    for j in SimpleRootSet::all_subsets(ctx.n) {
        for i in 0..=solved.max_degree {
            let m = check_mobius_w(table, &j, i);
            tally.record(m.passed(), || {
                format!("W-form J = {j}, i = {i}: {} vs {}", m.lhs, m.rhs)
            });
        }
        for mu in &solved.order {
            let m = check_mobius_d(&ctx.descents, mu, &j);
            tally.record(m.passed(), || {
                format!("D-form J = {j}, μ = {mu}: {} vs {}", m.lhs, m.rhs)
            });
        }
    }
    tally.finish(
        Check::Mobius,
        format!("{} × (i ≤ {} and μ ⊢ {})", degree_params(ctx.n, solved.max_degree), solved.max_degree, ctx.n),
    )
}

fn vanishing_result(solved: &MultTable) -> CheckResult {
    let mut tally = Tally::default();
    let limit = solved.height + 1;
    for (mu, row) in solved.order.iter().zip(&solved.coeffs) {
        if mu.num_parts() > limit {
            for (i, &c) in row.iter().enumerate() {
                tally.record(c == 0, || format!("c_({mu},{i}) = {c} with {} > {limit} parts", mu.num_parts()));
            }
        }
    }
    tally.finish(Check::Vanishing, format!("μ with > {limit} parts"))
}

fn nonnegativity_result(solved: &MultTable) -> CheckResult {
    let mut tally = Tally::default();
    for (mu, row) in solved.order.iter().zip(&solved.coeffs) {
        for (i, &c) in row.iter().enumerate() {
            tally.record(c >= 0, || format!("c_({mu},{i}) = {c}"));
        }
    }
    tally.finish(Check::Nonnegativity, "all (μ, i)".into())
}

fn sink_decomposition_result(h: &HessFunction, ctx: &NContext, engine: &Engine) -> Result<CheckResult> {
    let mut tally = Tally::default();
    for lambda in &ctx.a.order {
        let dec = sink_decomposition(lambda, h, engine.cap())?;
        let bad = dec.first_mismatch();
        tally.record(bad.is_none(), || {
            let i = bad.unwrap_or(0);
            let sum: u64 = dec.by_sink_set.values().map(|v| v[i]).sum();
            format!("λ = {lambda}, i = {i}: Σ_T = {sum}, |W_i| = {}", dec.total[i])
        });
    }
    Ok(tally.finish(Check::SinkDecomposition, format!("λ ⊢ {}", ctx.n)))
}

fn max_parts_partitions(ctx: &NContext, k: usize) -> impl Iterator<Item = &Partition> {
    ctx.a.order.iter().filter(move |p| p.num_parts() == k)
}

fn psi_result(h: &HessFunction, ctx: &NContext, engine: &Engine) -> Result<CheckResult> {
    let mut tally = Tally::default();
    let k = h.ideal().height + 1;
    let sinks = h.sink_sets(k);
    for lambda in max_parts_partitions(ctx, k) {
        for sink in &sinks {
            let r = psi_bijection_check(lambda, h, &sink.vertices, engine)?;
            tally.record(r.passed(), || {
                format!(
                    "λ = {lambda}, T = {:?}: left {:?}, right {:?}, injective-into = {}",
                    r.t, r.counts_by_degree_left, r.counts_by_degree_right, r.bijection_verified
                )
            });
        }
    }
    Ok(tally.finish(Check::PsiBijection, format!("λ with {k} parts × T ∈ SK_{k}")))
}

fn inductive_result(h: &HessFunction, solved: &MultTable, ctx: &NContext, engine: &Engine) -> Result<CheckResult> {
    let mut tally = Tally::default();
    let k = h.ideal().height + 1;
    for mu in max_parts_partitions(ctx, k) {
        let branches = inductive_branches(h, mu, engine)?;
        for i in 0..=solved.max_degree {
            let formula: i64 = branches.iter().map(|b| b.terms[i]).sum();
            let direct = solved.coeff(mu, i);
            tally.record(formula == direct, || {
                format!("μ = {mu}, i = {i}: inductive {formula}, solved {direct}")
            });
        }
    }
    Ok(tally.finish(Check::InductiveFormula, format!("μ with {k} parts × i")))
}

/// Runs the selected per-`h` checks.
pub fn verify_h(h: &HessFunction, checks: &CheckSet, ctx: &NContext, engine: &Engine) -> Result<VerificationReport> {
    let start = Instant::now();
    let solved = engine.solve(h)?;
    let table = engine.hess_table(h)?;
    let mut out = Vec::new();
    for &check in checks {
        let result = match check {
            Check::Triangularity => continue,
            Check::LinearRelations => linear_relations_result(&solved, &table, ctx),
            Check::Mobius => mobius_result(&solved, &table, ctx),
            Check::BrosnanChow => brosnan_chow_result(&solved, &table, ctx),
            Check::Vanishing => vanishing_result(&solved),
            Check::Nonnegativity => nonnegativity_result(&solved),
            Check::SinkDecomposition => sink_decomposition_result(h, ctx, engine)?,
            Check::PsiBijection => psi_result(h, ctx, engine)?,
            Check::InductiveFormula => inductive_result(h, &solved, ctx, engine)?,
        };
        out.push(result);
    }
    Ok(VerificationReport {
        n: h.n(),
        h: Some(h.values().to_vec()),
        checks: out,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// The n-level report: triangularity of `A`.
pub fn verify_n(ctx: &NContext) -> VerificationReport {
    let start = Instant::now();
    VerificationReport {
        n: ctx.n,
        h: None,
        checks: vec![triangularity_result(&ctx.a)],
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

// Reports are emitted after each batch so partial progress survives interruption.
const SCAN_BATCH: usize = 32;

/// Verifies every Hessenberg function on `[n]`, in lexicographic order of `h`.
///
/// `emit` receives the n-level report (when triangularity is selected) followed
/// by one report per `h`. The scan stops at the first failing report, which
/// carries the witness; the summary then counts only what was checked.
pub fn scan_with(
    n: usize,
    checks: &CheckSet,
    engine: &Engine,
    mut emit: impl FnMut(&VerificationReport),
) -> Result<ScanSummary> {
    let all = enumerate_hess(n, engine.cap())?;
    let ctx = NContext::new(n, engine)?;
    let mut summary = ScanSummary {
        n,
        ..Default::default()
    };
    let mut absorb = |r: &VerificationReport, summary: &mut ScanSummary| -> bool {
        summary.total += 1;
        if r.passed() {
            summary.passed += 1;
        } else {
            summary.failed += 1;
        }
        for c in r.failures().filter(|c| c.severity == Severity::MathAlert) {
            let h = r.h.as_ref().map(|v| format!("{v:?}")).unwrap_or_default();
            summary
                .math_alerts
                .push(format!("h = {h}: {}", c.witness.clone().unwrap_or_default()));
        }
        emit(r);
        r.passed()
    };
    if checks.contains(&Check::Triangularity) && !absorb(&verify_n(&ctx), &mut summary) {
        return Ok(summary);
    }
    for batch in all.chunks(SCAN_BATCH) {
        let reports = map_items(batch, engine.exec(), |h| verify_h(h, checks, &ctx, engine));
        for r in reports {
            if !absorb(&r?, &mut summary) {
                return Ok(summary);
            }
        }
    }
    Ok(summary)
}

pub fn scan(n: usize, checks: &CheckSet, engine: &Engine) -> Result<(Vec<VerificationReport>, ScanSummary)> {
    let mut reports = Vec::new();
    let summary = scan_with(n, checks, engine, |r| reports.push(r.clone()))?;
    Ok((reports, summary))
}

/// Dimension sum rule `Σ_μ c_{μ,i} dim M^μ = betti[i]`, the `J = ∅` case of Brosnan–Chow.
pub fn dimension_sum_holds(solved: &MultTable) -> bool {
    (0..=solved.max_degree).all(|i| {
        let lhs: i64 = solved
            .order
            .iter()
            .zip(&solved.coeffs)
            .map(|(mu, row)| row[i] * mu.tabloid_count() as i64)
            .sum();
        lhs == solved.betti[i] as i64
    })
}

/// `𝕁_λ` for every `λ` in `order`; handy for callers that index W vectors.
pub fn jj_sets(order: &[Partition]) -> Vec<SimpleRootSet> {
    order.iter().map(jj_set).collect()
}
