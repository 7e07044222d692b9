//! A curated catalog of small rings with their expected structural flags,
//! isomorphism testing, and executable checks of the classification results.
//!
//! The catalog is hand-picked rather than enumerated, so every classification
//! check is relative to the entries supplied.

mod iso;
mod verify;

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::ExactRational;
use crate::ring::{parse_expr, parse_poly, RingBuilder, RingExpr, TableRing};
use crate::zero::{is_field, is_local, zsquare_is_zero};

pub use iso::{iso_check, iso_check_capped, DEFAULT_ISO_CAP};
pub use verify::{
    allowed_primes, solve_prime_threshold, verify_bounds, verify_bounds_range, verify_classification,
    verify_global_max, verify_m2_classification, verify_prime_constraint, BoundCheck, ClassificationReport,
    ConditionCheck, ConditionKind, GlobalMaxReport, M2Report, M2Row, PrimeConstraintReport, RingFlags,
    VerificationReport, CATALOG_RELATIVE,
};

/// Default largest order kept by [`builtin_catalog`] in sweeps.
pub const DEFAULT_CATALOG_ORDER: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    #[serde(serialize_with = "display")]
    pub expr: RingExpr,
    pub order: u64,
    pub expected_local: Option<bool>,
    pub expected_zsq_zero: Option<bool>,
}

fn display<S: serde::Serializer>(e: &RingExpr, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(e)
}

impl CatalogEntry {
    pub fn new(name: impl Into<String>, expr: RingExpr) -> Result<Self> {
        expr.check()?;
        let order = expr
            .order()
            .and_then(|o| u64::try_from(o).ok())
            .ok_or_else(|| Error::invalid(format!("{expr} is too large for a catalog entry")))?;
        Ok(CatalogEntry { name: name.into(), expr, order, expected_local: None, expected_zsq_zero: None })
    }

    pub fn expect(mut self, local: bool, zsq_zero: bool) -> Self {
        self.expected_local = Some(local);
        self.expected_zsq_zero = Some(zsq_zero);
        self
    }

    pub fn materialize(&self, builder: &RingBuilder) -> Result<TableRing> {
        Ok(builder.materialize(&self.expr)?.with_label(self.name.clone()))
    }

    /// Mismatches between the curated data and the materialized ring.
    pub fn mismatches(&self, ring: &TableRing) -> Vec<String> {
        let mut out = Vec::new();
        if ring.order() as u64 != self.order {
            out.push(format!("{}: order {} but materialized {}", self.name, self.order, ring.order()));
        }
        if let Some(local) = self.expected_local {
            if local != is_local(ring) {
                out.push(format!("{}: expected local = {local}", self.name));
            }
        }
        if let Some(zsq) = self.expected_zsq_zero {
            if zsq != zsquare_is_zero(ring) {
                out.push(format!("{}: expected Z(R)^2 = 0 to be {zsq}", self.name));
            }
        }
        out
    }
}

fn zq(n: u64, poly: &str) -> RingExpr {
    RingExpr::quotient(n, parse_poly(poly, n).expect("curated polynomial"))
}

/// (name, expression, local, Z(R)^2 = 0)
fn curated() -> Vec<(&'static str, RingExpr, bool, bool)> {
    use RingExpr as E;
    vec![
        ("Z2", E::zn(2), true, true),
        ("Z3", E::zn(3), true, true),
        ("Z4", E::zn(4), true, true),
        ("Z2[x]/(x^2)", zq(2, "x^2"), true, true),
        ("GF(4)", E::gf(2, 2), true, true),
        ("Z5", E::zn(5), true, true),
        ("Z6", E::zn(6), false, false),
        ("Z7", E::zn(7), true, true),
        ("Z8", E::zn(8), true, false),
        ("Z2[x]/(x^3)", zq(2, "x^3"), true, false),
        ("Z4*Z2", E::idealize(4, vec![2]), true, true),
        ("Z2*(Z2)^2", E::idealize_power(E::zn(2), 2), true, true),
        ("GF(8)", E::gf(2, 3), true, true),
        ("Z2[x]/(x^3+x)", zq(2, "x^3+x"), false, false),
        ("Z9", E::zn(9), true, true),
        ("Z3[x]/(x^2)", zq(3, "x^2"), true, true),
        ("GF(9)", E::gf(3, 2), true, true),
        ("Z10", E::zn(10), false, false),
        ("Z11", E::zn(11), true, true),
        ("Z12", E::zn(12), false, false),
        ("Z6*Z2", E::idealize(6, vec![2]), false, false),
        ("Z13", E::zn(13), true, true),
        ("Z16", E::zn(16), true, false),
        ("Z2[x]/(x^4)", zq(2, "x^4"), true, false),
        ("Z4[x]/(x^2)", zq(4, "x^2"), true, false),
        ("Z4[x]/(x^2+x+1)", zq(4, "x^2+x+1"), true, true),
        ("Z2*(Z2)^3", E::idealize_power(E::zn(2), 3), true, true),
        ("Z4*(Z2)^2", E::idealize(4, vec![2, 2]), true, true),
        ("Z8*Z2", E::idealize(8, vec![2]), true, false),
        ("GF(16)", E::gf(2, 4), true, true),
        ("Z25", E::zn(25), true, true),
        ("Z5[x]/(x^2)", zq(5, "x^2"), true, true),
        ("GF(25)", E::gf(5, 2), true, true),
        ("Z27", E::zn(27), true, false),
        ("Z3[x]/(x^3)", zq(3, "x^3"), true, false),
        ("Z3*(Z3)^2", E::idealize_power(E::zn(3), 2), true, true),
        ("Z9*Z3", E::idealize(9, vec![3]), true, true),
        ("GF(27)", E::gf(3, 3), true, true),
        ("Z32", E::zn(32), true, false),
        ("Z2*(Z2)^4", E::idealize_power(E::zn(2), 4), true, true),
        ("GF(32)", E::gf(2, 5), true, true),
        ("Z49", E::zn(49), true, true),
        ("GF(49)", E::gf(7, 2), true, true),
        ("Z64", E::zn(64), true, false),
        ("GF(64)", E::gf(2, 6), true, true),
    ]
}

/// Curated rings of order at most `max_order`, together with every pairwise
/// product of curated rings that fits, sorted by order and then name.
pub fn builtin_catalog(max_order: u64) -> Result<Vec<CatalogEntry>> {
    if max_order < 2 {
        return Err(Error::invalid(format!("max_order must be at least 2, got {max_order}")));
    }
    let base: Vec<CatalogEntry> = curated()
        .into_iter()
        .map(|(name, expr, local, zsq)| CatalogEntry::new(name, expr).map(|e| e.expect(local, zsq)))
        .collect::<Result<_>>()?;
    let mut out: Vec<CatalogEntry> = base.iter().filter(|e| e.order <= max_order).cloned().collect();
    for (i, a) in base.iter().enumerate() {
        for b in &base[i..] {
            if a.order.saturating_mul(b.order) > max_order {
                continue;
            }
            let name = format!("{} x {}", a.name, b.name);
            let expr = RingExpr::product(a.expr.clone(), b.expr.clone());
            // a product of two nonzero rings has the idempotent (1, 0) in Z(R)
            out.push(CatalogEntry::new(name, expr)?.expect(false, false));
        }
    }
    out.sort_by(|a, b| a.order.cmp(&b.order).then_with(|| a.name.cmp(&b.name)));
    Ok(out)
}

/// Parses a manifest with one `name = expression [; local=bool] [; zsq=bool]`
/// entry per line. Blank lines and lines starting with `#` are ignored.
pub fn parse_manifest(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = |msg: String| Error::invalid(format!("manifest line {}: {msg}", lineno + 1));
        let (name, rest) = line.split_once('=').ok_or_else(|| at("expected `name = expression`".into()))?;
        let mut parts = rest.split(';');
        let expr_text = parts.next().unwrap_or("").trim();
        let expr = parse_expr(expr_text).map_err(|e| at(e.to_string()))?;
        let mut entry = CatalogEntry::new(name.trim(), expr).map_err(|e| at(e.to_string()))?;
        for flag in parts {
            let (key, value) =
                flag.split_once('=').ok_or_else(|| at(format!("bad flag `{}`", flag.trim())))?;
            let value: bool =
                value.trim().parse().map_err(|_| at(format!("bad flag value `{}`", value.trim())))?;
            match key.trim() {
                "local" => entry.expected_local = Some(value),
                "zsq" => entry.expected_zsq_zero = Some(value),
                other => return Err(at(format!("unknown flag `{other}`"))),
            }
        }
        out.push(entry);
    }
    Ok(out)
}

pub fn write_manifest(entries: &[CatalogEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        let _ = write!(out, "{} = {}", e.name, e.expr);
        if let Some(l) = e.expected_local {
            let _ = write!(out, "; local={l}");
        }
        if let Some(z) = e.expected_zsq_zero {
            let _ = write!(out, "; zsq={z}");
        }
        out.push('\n');
    }
    out
}

/// A known exact value of `zp_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegressionRow {
    pub label: String,
    pub expr: RingExpr,
    pub k: u32,
    pub expected: ExactRational,
}

/// Published values of `zp_4` for the small local rings, and the closed forms
/// for `Z2` and `Z4` at `2 <= k <= 8`.
pub fn regression_table() -> Vec<RegressionRow> {
    use RingExpr as E;
    let row = |label: &str, expr: RingExpr, k: u32, p: i64, q: i64| RegressionRow {
        label: label.to_string(),
        expr,
        k,
        expected: ExactRational::new(p, q),
    };
    let mut rows = vec![
        row("Z2", E::zn(2), 4, 15, 16),
        row("Z4", E::zn(4), 4, 13, 16),
        row("Z2[x]/(x^2)", zq(2, "x^2"), 4, 13, 16),
        row("GF(4)", E::gf(2, 2), 4, 175, 256),
        row("GF(8)", E::gf(2, 3), 4, 1695, 4096),
        row("Z3", E::zn(3), 4, 65, 81),
        row("Z4*Z2", E::idealize(4, vec![2]), 4, 3, 4),
        row("Z2*(Z2)^2", E::idealize_power(E::zn(2), 2), 4, 3, 4),
    ];
    for k in 2..=8u32 {
        let t = 1i64 << k;
        rows.push(row("Z2", E::zn(2), k, t - 1, t));
        rows.push(row("Z4", E::zn(4), k, 2 * t - k as i64 - 2, 2 * t));
    }
    rows
}

/// A materialized catalog entry with its computed structural flags.
#[derive(Debug, Clone)]
pub struct CatalogRing {
    pub entry: CatalogEntry,
    pub ring: TableRing,
    pub local: bool,
    pub field: bool,
    pub zsq_zero: bool,
}

impl CatalogRing {
    pub fn new(entry: CatalogEntry, builder: &RingBuilder) -> Result<Self> {
        let ring = entry.materialize(builder)?;
        Ok(CatalogRing {
            local: is_local(&ring),
            field: is_field(&ring),
            zsq_zero: zsquare_is_zero(&ring),
            entry,
            ring,
        })
    }

    pub fn name(&self) -> &str {
        &self.entry.name
    }

    pub fn order(&self) -> u64 {
        self.entry.order
    }
}

pub fn materialize_catalog(entries: &[CatalogEntry], builder: &RingBuilder) -> Result<Vec<CatalogRing>> {
    entries.iter().map(|e| CatalogRing::new(e.clone(), builder)).collect()
}
