use std::fmt::Write as _;

use hessmult_core::cache;
use hessmult_core::combinat::RootPair;
use hessmult_core::hessenberg::parse_hess;
use hessmult_core::sink::inductive_branches;
use hessmult_core::verify::{default_checks, scan_with, verify_h, verify_n, Check, CheckSet, NContext, ScanSummary};
use hessmult_core::{Engine, Error, HessFunction, Partition, Result, VerificationReport};
use serde_json::{json, Value};

use crate::args::{Format, VerifyArgs};
use crate::render::{csv_row, grid, json_line};

/// Rendered output plus whether it reports a non-negativity violation or a failed check.
pub struct Output {
    pub text: String,
    pub status: Status,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    ImplBug,
    MathAlert,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, status: Status::Ok }
    }
}

fn pairs(roots: impl IntoIterator<Item = RootPair>) -> Value {
    roots.into_iter().map(|r| json!([r.i, r.j])).collect()
}

pub fn solve(engine: &Engine, h: &str, degree: Option<usize>, format: Format) -> Result<Output> {
    let h = parse_hess(h)?;
    engine.check_n(h.n())?;
    let table = engine.solve(&h)?;
    let degrees: Vec<usize> = match degree {
        Some(i) if i > table.max_degree => {
            return Err(Error::OutOfRange(format!(
                "degree {i} exceeds the top degree {}",
                table.max_degree
            )))
        }
        Some(i) => vec![i],
        None => (0..=table.max_degree).collect(),
    };
    let text = match format {
        Format::Json => {
            let mut v = table.to_json();
            if let Some(i) = degree {
                v["degree"] = json!(i);
                v["betti"] = json!([table.betti[i]]);
                for c in v["coefficients"].as_array_mut().expect("array") {
                    c["by_degree"] = json!([c["by_degree"][i]]);
                }
            }
            json_line(&v)
        }
        Format::Csv => {
            let mut s = csv_row(["mu", "degree", "coefficient"]);
            for (mu, row) in table.order.iter().zip(&table.coeffs) {
                for &i in &degrees {
                    s += &csv_row([mu.to_string(), i.to_string(), row[i].to_string()]);
                }
            }
            s
        }
        Format::Table => {
            let mut header = vec!["mu".to_string()];
            header.extend(degrees.iter().map(|i| format!("i={i}")));
            let mut rows = vec![header];
            for (mu, row) in table.order.iter().zip(&table.coeffs) {
                let mut r = vec![mu.to_string()];
                r.extend(degrees.iter().map(|&i| row[i].to_string()));
                rows.push(r);
            }
            let mut b = vec!["betti".to_string()];
            b.extend(degrees.iter().map(|&i| table.betti[i].to_string()));
            rows.push(b);
            format!("h = {h}, ht = {}\n{}", table.height, grid(&rows))
        }
    };
    let status = if table.is_nonnegative() { Status::Ok } else { Status::MathAlert };
    Ok(Output { text, status })
}

pub fn amatrix(engine: &Engine, n: usize, format: Format) -> Result<Output> {
    engine.check_n(n)?;
    let a = engine.a_matrix(n)?;
    let text = match format {
        Format::Json => json_line(&json!({
            "n": a.n,
            "order": a.order,
            "entries": a.entries,
            "checksum": cache::checksum(&a),
        })),
        Format::Csv => {
            let mut s = csv_row(["lambda", "mu", "entry"]);
            for (lambda, row) in a.order.iter().zip(&a.entries) {
                for (mu, v) in a.order.iter().zip(row) {
                    s += &csv_row([lambda.to_string(), mu.to_string(), v.to_string()]);
                }
            }
            s
        }
        Format::Table => {
            let mut header = vec![String::new()];
            header.extend(a.order.iter().map(Partition::to_string));
            let mut rows = vec![header];
            for (lambda, row) in a.order.iter().zip(&a.entries) {
                let mut r = vec![lambda.to_string()];
                r.extend(row.iter().map(u64::to_string));
                rows.push(r);
            }
            grid(&rows)
        }
    };
    Ok(Output::ok(text))
}

fn select_checks(args: &VerifyArgs, n: usize) -> Result<CheckSet> {
    let mut set = if args.all_checks {
        Check::ALL.into_iter().collect()
    } else if args.checks.is_empty() {
        default_checks(n)
    } else {
        args.checks.iter().map(|c| c.parse()).collect::<Result<CheckSet>>()?
    };
    for c in &args.skip {
        set.remove(&c.parse::<Check>()?);
    }
    Ok(set)
}

fn render_report(r: &VerificationReport, format: Format, out: &mut String) {
    let h = r.h.as_ref().map(|v| format!("{v:?}")).unwrap_or_else(|| format!("n={}", r.n));
    match format {
        Format::Json => *out += &json_line(&r.to_json()),
        Format::Csv => {
            for c in &r.checks {
                *out += &csv_row([
                    h.clone(),
                    c.check.to_string(),
                    c.cases.to_string(),
                    c.passed.to_string(),
                    c.witness.clone().unwrap_or_default(),
                ]);
            }
        }
        Format::Table => {
            for c in &r.checks {
                let verdict = if c.passed { "pass" } else { "FAIL" };
                let _ = writeln!(out, "{h:<24} {:<20} {verdict} ({} cases)", c.check.name(), c.cases);
                if let Some(w) = &c.witness {
                    let _ = writeln!(out, "    witness: {w}");
                }
            }
        }
    }
}

fn render_summary(s: &ScanSummary, format: Format, out: &mut String) {
    match format {
        Format::Json => *out += &json_line(&s.to_json()),
        Format::Csv => {}
        Format::Table => {
            let _ = writeln!(out, "n = {}: {} reports, {} passed, {} failed", s.n, s.total, s.passed, s.failed);
            for a in &s.math_alerts {
                let _ = writeln!(out, "MATH-ALERT {a}");
            }
        }
    }
}

/// Streams reports to stdout as they are produced.
pub fn verify(engine: &Engine, args: &VerifyArgs, format: Format, mut print: impl FnMut(&str)) -> Result<Status> {
    if format == Format::Csv {
        print(&csv_row(["h", "check", "cases", "passed", "witness"]));
    }
    let mut status = Status::Ok;
    let mut record = |r: &VerificationReport| {
        if r.has_impl_bug() {
            status = Status::ImplBug;
        } else if r.has_math_alert() && status == Status::Ok {
            status = Status::MathAlert;
        }
        let mut s = String::new();
        render_report(r, format, &mut s);
        print(&s);
    };
    let summary = match (&args.h, args.all_n) {
        (Some(h), _) => {
            let h = parse_hess(h)?;
            engine.check_n(h.n())?;
            let checks = select_checks(args, h.n())?;
            let ctx = NContext::new(h.n(), engine)?;
            let mut reports = Vec::new();
            if checks.contains(&Check::Triangularity) {
                reports.push(verify_n(&ctx));
            }
            reports.push(verify_h(&h, &checks, &ctx, engine)?);
            let mut summary = ScanSummary { n: h.n(), ..Default::default() };
            for r in &reports {
                record(r);
                summary.total += 1;
                if r.passed() {
                    summary.passed += 1;
                } else {
                    summary.failed += 1;
                }
                for c in r.failures().filter(|c| c.severity == hessmult_core::verify::Severity::MathAlert) {
                    summary.math_alerts.push(format!("h = {h}: {}", c.witness.clone().unwrap_or_default()));
                }
            }
            summary
        }
        (None, Some(n)) => {
            engine.check_n(n)?;
            let checks = select_checks(args, n)?;
            scan_with(n, &checks, engine, &mut record)?
        }
        (None, None) => return Err(Error::Precondition("pass --h or --all-n".into())),
    };
    let mut s = String::new();
    render_summary(&summary, format, &mut s);
    print(&s);
    Ok(status)
}

pub fn induct(engine: &Engine, h: &str, mu: &str, format: Format) -> Result<Output> {
    let h = parse_hess(h)?;
    engine.check_n(h.n())?;
    let mu: Partition = mu.parse()?;
    let branches = inductive_branches(&h, &mu, engine)?;
    let solved = engine.solve(&h)?;
    let degrees = solved.max_degree + 1;
    let total: Vec<i64> = (0..degrees).map(|i| branches.iter().map(|b| b.terms[i]).sum()).collect();
    let direct: Vec<i64> = (0..degrees).map(|i| solved.coeff(&mu, i)).collect();
    let text = match format {
        Format::Json => json_line(&json!({
            "h": h.values(),
            "mu": mu,
            "ht": solved.height,
            "branches": branches,
            "coefficients": total,
            "solved": direct,
            "agrees": total == direct,
        })),
        Format::Csv => {
            let mut s = csv_row(["T", "deg", "reduced_h", "reduced_mu", "degree", "term"]);
            for b in &branches {
                for (i, t) in b.terms.iter().enumerate() {
                    s += &csv_row([
                        format!("{:?}", b.t),
                        b.deg.to_string(),
                        format!("{:?}", b.reduced_h),
                        format!("{:?}", b.reduced_mu),
                        i.to_string(),
                        t.to_string(),
                    ]);
                }
            }
            s
        }
        Format::Table => {
            let mut header = vec!["T".to_string(), "deg".into(), "h[T]".into()];
            header.extend((0..degrees).map(|i| format!("i={i}")));
            let mut rows = vec![header];
            for b in &branches {
                let mut r = vec![format!("{:?}", b.t), b.deg.to_string(), format!("{:?}", b.reduced_h)];
                r.extend(b.terms.iter().map(i64::to_string));
                rows.push(r);
            }
            for (label, v) in [("sum", &total), ("solved", &direct)] {
                let mut r = vec![label.to_string(), String::new(), String::new()];
                r.extend(v.iter().map(i64::to_string));
                rows.push(r);
            }
            format!("h = {h}, μ = {mu}\n{}", grid(&rows))
        }
    };
    let status = if total == direct { Status::Ok } else { Status::ImplBug };
    Ok(Output { text, status })
}

fn info_json(h: &HessFunction) -> Value {
    let ideal = h.ideal();
    let graph = h.incomparability_graph();
    let m = h.max_sink_size();
    let sink_sets: serde_json::Map<String, Value> = (1..=m)
        .map(|k| (k.to_string(), json!(h.sink_sets(k))))
        .collect();
    json!({
        "n": h.n(),
        "h": h.values(),
        "phi_minus": pairs(h.phi_h_minus()),
        "ideal": pairs(ideal.ideal.iter().copied()),
        "series": ideal.series.iter().map(|t| pairs(t.iter().copied())).collect::<Vec<_>>(),
        "ht": ideal.height,
        "graph": graph,
        "max_sink_size": m,
        "sink_sets": sink_sets,
    })
}

pub fn info(engine: &Engine, h: &str, format: Format) -> Result<Output> {
    let h = parse_hess(h)?;
    engine.check_n(h.n())?;
    let text = match format {
        Format::Json => json_line(&info_json(&h)),
        Format::Csv => {
            let mut s = csv_row(["k", "T", "deg"]);
            for k in 1..=h.max_sink_size() {
                for t in h.sink_sets(k) {
                    s += &csv_row([k.to_string(), format!("{:?}", t.vertices), t.degree.to_string()]);
                }
            }
            s
        }
        Format::Table => {
            let fmt_roots = |roots: &mut dyn Iterator<Item = RootPair>| {
                roots.map(|r| r.to_string()).collect::<Vec<_>>().join(" ")
            };
            let ideal = h.ideal();
            let mut s = String::new();
            let _ = writeln!(s, "h        {h}");
            let _ = writeln!(s, "Φ_h^-    {}", fmt_roots(&mut h.phi_h_minus().into_iter()));
            let _ = writeln!(s, "I_h      {}", fmt_roots(&mut ideal.ideal.iter().copied()));
            for (j, term) in ideal.series.iter().enumerate().skip(1) {
                let _ = writeln!(s, "(I_h)_{:<3}{}", j + 1, fmt_roots(&mut term.iter().copied()));
            }
            let _ = writeln!(s, "ht       {}", ideal.height);
            let edges = h.incomparability_graph().edges;
            let _ = writeln!(s, "edges    {}", edges.iter().map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>().join(" "));
            for k in 1..=h.max_sink_size() {
                let sets = h.sink_sets(k);
                let list = sets.iter().map(|t| format!("{:?}:{}", t.vertices, t.degree)).collect::<Vec<_>>().join(" ");
                let _ = writeln!(s, "SK_{k:<6}{list}");
            }
            s
        }
    };
    Ok(Output::ok(text))
}
