use std::fs;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use zpk_core::catalog::{
    builtin_catalog, parse_manifest, regression_table, verify_bounds, verify_classification,
    verify_global_max, verify_m2_classification, verify_prime_constraint, CatalogRing, VerificationReport,
    CATALOG_RELATIVE, DEFAULT_CATALOG_ORDER,
};
use zpk_core::engine::{zp_bruteforce_capped, zp_exact, zp_expr_with};
use zpk_core::ring::{RingBuilder, DEFAULT_MAX_ORDER};
use zpk_core::{parse_expr, Error, RingExpr, TableRing};

use crate::output::{render, yes_no, Failure, Output, Record, Table};
use crate::{KRange, Opts};

fn ks(opts: &Opts, default: KRange) -> Result<KRange, Failure> {
    let r = opts.k.unwrap_or(default);
    if r.lo < 2 {
        return Err(Error::InvalidParameter(format!("k must be at least 2, got {}", r.lo)).into());
    }
    Ok(r)
}

fn ring_expr(opts: &Opts, verb: &str) -> Result<RingExpr, Failure> {
    let text = opts.ring.as_deref().ok_or_else(|| Failure::Usage(format!("{verb} requires --ring")))?;
    Ok(parse_expr(text)?)
}

fn builder(opts: &Opts) -> RingBuilder {
    RingBuilder::with_max_order(opts.max_order.unwrap_or(DEFAULT_MAX_ORDER))
}

fn load_catalog(opts: &Opts) -> Result<Vec<CatalogRing>, Failure> {
    let max = opts.max_order.map_or(DEFAULT_CATALOG_ORDER, |m| m as u64);
    let entries = match &opts.catalog {
        Some(path) => {
            let text =
                fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            parse_manifest(&text)?.into_iter().filter(|e| e.order <= max).collect()
        }
        None => builtin_catalog(max)?,
    };
    let b = RingBuilder::default();
    let rings: Vec<CatalogRing> =
        entries.par_iter().map(|e| CatalogRing::new(e.clone(), &b)).collect::<Result<_, Error>>()?;
    Ok(rings)
}

pub fn compute(opts: &Opts) -> Result<Output, Failure> {
    let expr = ring_expr(opts, "compute")?;
    let range = ks(opts, KRange { lo: 2, hi: 2 })?;
    let b = builder(opts);
    let label = expr.to_string();
    // products are evaluated factor by factor, so the full table may not fit
    let table_ring: Option<TableRing> = match b.materialize(&expr) {
        Ok(r) => Some(r),
        Err(Error::Capacity { .. }) if expr.is_product() => None,
        Err(e) => return Err(e.into()),
    };
    let mut records = Vec::new();
    let mut table = Table::new(&["ring", "k", "zp", "decimal", "materialized", "bruteforce"]);
    let mut passed = true;
    for k in range.iter() {
        let value = zp_expr_with(&expr, k, &b)?;
        let mut rec = Record::new(&label, k, value.clone());
        let mut cells = [String::from("-"), String::from("-")];
        if let Some(ring) = &table_ring {
            let agrees = zp_exact(ring, k)? == value;
            passed &= agrees;
            rec = rec.flag("materialized_agrees", agrees);
            cells[0] = yes_no(agrees);
            if let Some(cap) = opts.bruteforce_cap {
                let agrees = zp_bruteforce_capped(ring, k, cap)? == value;
                passed &= agrees;
                rec = rec.flag("bruteforce_agrees", agrees);
                cells[1] = yes_no(agrees);
            }
        }
        let [m, bf] = cells;
        table.push(vec![label.clone(), k.to_string(), value.to_string(), rec.decimal.clone(), m, bf]);
        records.push(rec);
    }
    let mut summary = String::new();
    for r in &records {
        summary.push_str(&format!("zp_{}({}) = {}  ~ {}\n", r.k, r.ring, r.value, r.decimal));
    }
    if opts.format == crate::Format::Text {
        return Ok(Output { rendered: summary, passed });
    }
    render(opts.format, &records, &table, &summary, passed)
}

fn report_record(r: &VerificationReport) -> Record {
    let mut rec = Record::new(&r.ring, r.k, r.value.clone()).flags_from(&r.flags).flag("passed", r.passed());
    rec.bounds = r.bounds.clone();
    rec.details(json!({ "conditions": r.conditions, "violations": r.violations }))
}

pub fn bounds(opts: &Opts) -> Result<Output, Failure> {
    let expr = ring_expr(opts, "bounds")?;
    let range = ks(opts, KRange { lo: 2, hi: 2 })?;
    let ring = builder(opts).materialize(&expr)?.with_label(expr.to_string());
    let reports: Vec<VerificationReport> =
        range.iter().map(|k| verify_bounds(&ring, k)).collect::<Result<_, Error>>()?;
    let mut table = Table::new(&["ring", "k", "id", "side", "bound", "decimal", "holds", "attained"]);
    let mut summary = String::new();
    for r in &reports {
        for b in &r.bounds {
            let side = if b.lower.is_some() { "lower" } else { "upper" };
            table.push(vec![
                r.ring.clone(),
                r.k.to_string(),
                b.id.to_string(),
                side.into(),
                b.bound().to_string(),
                b.bound().to_decimal(crate::output::DECIMAL_DIGITS),
                yes_no(b.holds),
                yes_no(b.attained),
            ]);
        }
        summary.push_str(&format!(
            "\nzp_{}({}) = {}  ~ {}\n",
            r.k,
            r.ring,
            r.value,
            r.value.to_decimal(crate::output::DECIMAL_DIGITS)
        ));
        let f = &r.flags;
        summary.push_str(&format!(
            "field: {}  local: {}  Z(R)^2 = 0: {}  all Ann(x) prime: {}\n",
            yes_no(f.field),
            yes_no(f.local),
            yes_no(f.zsq_zero),
            yes_no(f.all_ann_prime)
        ));
        if f.t1_reduces_to_exact {
            summary.push_str("note: at k = 2 both t1 bounds reduce to the exact value\n");
        }
        for c in &r.conditions {
            let mark = if c.consistent { "ok" } else { "FAIL" };
            summary.push_str(&format!("  [{mark}] {}\n", c.name));
        }
        for v in &r.violations {
            summary.push_str(&format!("  violation: {v}\n"));
        }
    }
    let passed = reports.iter().all(VerificationReport::passed);
    let records: Vec<Record> = reports.iter().map(report_record).collect();
    render(opts.format, &records, &table, &summary, passed)
}

#[derive(Serialize)]
struct SuiteSummary<'a> {
    suite: &'a str,
    k: Option<u32>,
    passed: bool,
    details: serde_json::Value,
}

pub fn verify(opts: &Opts) -> Result<Output, Failure> {
    let range = ks(opts, KRange { lo: 2, hi: 8 })?;
    let (reports, suites, mismatches) = if let Some(text) = &opts.ring {
        let expr = parse_expr(text)?;
        let ring = builder(opts).materialize(&expr)?.with_label(expr.to_string());
        let reports: Vec<VerificationReport> =
            range.iter().map(|k| verify_bounds(&ring, k)).collect::<Result<_, Error>>()?;
        (reports, Vec::new(), Vec::new())
    } else {
        let cat = load_catalog(opts)?;
        let mismatches: Vec<String> = cat.iter().flat_map(|c| c.entry.mismatches(&c.ring)).collect();
        let jobs: Vec<(usize, u32)> =
            (0..cat.len()).flat_map(|i| range.iter().map(move |k| (i, k))).collect();
        let mut reports: Vec<(u64, String, VerificationReport)> = jobs
            .par_iter()
            .map(|&(i, k)| {
                verify_bounds(&cat[i].ring, k).map(|r| (cat[i].order(), cat[i].name().to_string(), r))
            })
            .collect::<Result<_, Error>>()?;
        reports.sort_by(|a, b| (a.0, &a.1, a.2.k).cmp(&(b.0, &b.1, b.2.k)));
        let mut suites = Vec::new();
        for k in range.iter() {
            let g = verify_global_max(&cat, k, opts.iso_cap)?;
            suites.push(SuiteSummary {
                suite: "global-max",
                k: Some(k),
                passed: g.passed(),
                details: json!(g),
            });
            let p = verify_prime_constraint(&cat, k)?;
            suites.push(SuiteSummary {
                suite: "prime-constraint",
                k: Some(k),
                passed: p.passed(),
                details: json!(p),
            });
        }
        let m = verify_m2_classification(&cat, opts.iso_cap)?;
        suites.push(SuiteSummary {
            suite: "m2-classification",
            k: None,
            passed: m.passed(),
            details: json!(m),
        });
        (reports.into_iter().map(|r| r.2).collect(), suites, mismatches)
    };

    let failing: Vec<&VerificationReport> = reports.iter().filter(|r| !r.passed()).collect();
    let passed = failing.is_empty() && suites.iter().all(|s| s.passed) && mismatches.is_empty();
    let mut table = Table::new(&["ring", "k", "zp", "passed", "violations"]);
    for r in &reports {
        table.push(vec![
            r.ring.clone(),
            r.k.to_string(),
            r.value.to_string(),
            yes_no(r.passed()),
            r.violations.len().to_string(),
        ]);
    }
    let mut summary = String::new();
    for r in &failing {
        for v in &r.violations {
            summary.push_str(&format!("FAIL {} k={}: {v}\n", r.ring, r.k));
        }
    }
    for m in &mismatches {
        summary.push_str(&format!("FAIL catalog flag: {m}\n"));
    }
    summary.push_str(&format!("bounds: {} reports, {} failing\n", reports.len(), failing.len()));
    for s in &suites {
        let k = s.k.map(|k| format!(" k={k}")).unwrap_or_default();
        summary.push_str(&format!("{}{k}: {}\n", s.suite, if s.passed { "pass" } else { "FAIL" }));
    }
    let json = json!({
        "passed": passed,
        "reports": reports.iter().map(report_record).collect::<Vec<_>>(),
        "suites": suites,
        "catalog_mismatches": mismatches,
    });
    if opts.format == crate::Format::Text {
        return Ok(Output { rendered: summary, passed });
    }
    render(opts.format, &json, &table, &summary, passed)
}

pub fn classify(opts: &Opts) -> Result<Output, Failure> {
    let range = ks(opts, KRange { lo: 2, hi: 2 })?;
    let cat = load_catalog(opts)?;
    let reports = range
        .iter()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&k| verify_classification(&cat, k, opts.iso_cap))
        .collect::<Result<Vec<_>, Error>>()?;
    let mut table = Table::new(&["k", "threshold", "count", "expected", "members", "passed"]);
    let mut summary = String::new();
    let mut records = Vec::new();
    for r in &reports {
        table.push(vec![
            r.k.to_string(),
            r.threshold.to_string(),
            r.count.to_string(),
            r.expected_count.to_string(),
            r.members.join("; "),
            yes_no(r.passed()),
        ]);
        summary.push_str(&format!(
            "k={}: {} local rings with zp_k >= {} (expected {}): {}\n",
            r.k,
            r.count,
            r.threshold,
            r.expected_count,
            r.members.join(", ")
        ));
        for v in r
            .missing
            .iter()
            .map(|m| format!("missing {m}"))
            .chain(r.unexpected.iter().map(|u| format!("unexpected {u}")))
        {
            summary.push_str(&format!("  FAIL {v}\n"));
        }
        for v in r.gap_violations.iter().chain(&r.attainment_violations) {
            summary.push_str(&format!("  FAIL {v}\n"));
        }
        records.push(
            Record::new("catalog", r.k, r.threshold.clone())
                .flag("passed", r.passed())
                .flag("count", r.count)
                .details(r),
        );
    }
    summary.push_str(&format!("note: {}\n", CATALOG_RELATIVE));
    let passed = reports.iter().all(|r| r.passed());
    render(opts.format, &records, &table, &summary, passed)
}

pub fn table(opts: &Opts) -> Result<Output, Failure> {
    let b = builder(opts);
    let mut table = Table::new(&["ring", "k", "zp", "expected", "match"]);
    let mut records = Vec::new();
    let mut passed = true;
    for row in regression_table() {
        let value = zp_expr_with(&row.expr, row.k, &b)?;
        let ok = value == row.expected;
        passed &= ok;
        table.push(vec![
            row.label.clone(),
            row.k.to_string(),
            value.to_string(),
            row.expected.to_string(),
            yes_no(ok),
        ]);
        records.push(
            Record::new(&row.label, row.k, value)
                .flag("matches", ok)
                .details(json!({ "expected": row.expected })),
        );
    }
    let summary = format!("{} rows, {}\n", records.len(), if passed { "all match" } else { "MISMATCH" });
    render(opts.format, &records, &table, &summary, passed)
}

#[derive(Serialize)]
struct EntryRow<'a> {
    name: &'a str,
    expr: String,
    order: u64,
    local: bool,
    field: bool,
    zsq_zero: bool,
    mismatches: Vec<String>,
}

pub fn catalog(opts: &Opts) -> Result<Output, Failure> {
    let cat = load_catalog(opts)?;
    let rows: Vec<EntryRow> = cat
        .iter()
        .map(|c| EntryRow {
            name: c.name(),
            expr: c.entry.expr.to_string(),
            order: c.order(),
            local: c.local,
            field: c.field,
            zsq_zero: c.zsq_zero,
            mismatches: c.entry.mismatches(&c.ring),
        })
        .collect();
    let mut table = Table::new(&["name", "expr", "order", "local", "field", "zsq_zero"]);
    for r in &rows {
        table.push(vec![
            r.name.to_string(),
            r.expr.clone(),
            r.order.to_string(),
            yes_no(r.local),
            yes_no(r.field),
            yes_no(r.zsq_zero),
        ]);
    }
    let bad: Vec<&String> = rows.iter().flat_map(|r| &r.mismatches).collect();
    let mut summary = format!("{} entries\n", rows.len());
    for m in &bad {
        summary.push_str(&format!("FAIL {m}\n"));
    }
    render(opts.format, &rows, &table, &summary, bad.is_empty())
}
