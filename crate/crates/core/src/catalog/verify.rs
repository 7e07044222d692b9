//! Executable checks of the bounds and classification results over rings
//! and catalogs. Failures are report content, never panics.

use serde::Serialize;

use super::iso::iso_check_capped;
use super::CatalogRing;
use crate::arith::{factorize, is_prime, prime_power};
use crate::engine::zp_exact;
use crate::error::{Error, Result};
use crate::formulas::{
    bk, c25_bounds_k3, c28_recursive, c2_bounds, explicit_upper, field_zp, t1_bounds, t2_bounds,
    t6_product_bound, BoundId,
};
use crate::rational::ExactRational;
use crate::ring::{primary_components, RingBuilder, RingExpr, TableRing};
use crate::zero::{analyze, is_field, is_local, zero_divisors, zero_profile, zsquare_is_zero};

/// One bound evaluated against the exact value. Exactly one of `lower` and
/// `upper` is set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub id: BoundId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<ExactRational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<ExactRational>,
    pub holds: bool,
    pub attained: bool,
}

impl BoundCheck {
    fn lower(id: BoundId, bound: ExactRational, value: &ExactRational) -> Self {
        BoundCheck { id, holds: &bound <= value, attained: &bound == value, lower: Some(bound), upper: None }
    }

    fn upper(id: BoundId, bound: ExactRational, value: &ExactRational) -> Self {
        BoundCheck { id, holds: &bound >= value, attained: &bound == value, lower: None, upper: Some(bound) }
    }

    pub fn bound(&self) -> &ExactRational {
        self.lower.as_ref().or(self.upper.as_ref()).expect("one side is set")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConditionKind {
    /// `observed` must equal `structural`.
    Iff,
    /// `structural` must imply `observed`.
    Implies,
}

/// An equality characterization: a structural predicate against an observed equality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub name: String,
    pub kind: ConditionKind,
    pub structural: bool,
    pub observed: bool,
    pub consistent: bool,
}

impl ConditionCheck {
    fn new(name: impl Into<String>, kind: ConditionKind, structural: bool, observed: bool) -> Self {
        let consistent = match kind {
            ConditionKind::Iff => structural == observed,
            ConditionKind::Implies => !structural || observed,
        };
        ConditionCheck { name: name.into(), kind, structural, observed, consistent }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RingFlags {
    pub field: bool,
    pub local: bool,
    pub zsq_zero: bool,
    pub all_ann_prime: bool,
    pub squarefree_order: bool,
    /// At `k = 2` both `t1` bounds collapse to `|Ann_2(R)| / n^2`.
    pub t1_reduces_to_exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub ring: String,
    pub order: usize,
    pub k: u32,
    pub value: ExactRational,
    pub bounds: Vec<BoundCheck>,
    pub conditions: Vec<ConditionCheck>,
    pub flags: RingFlags,
    pub violations: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn bound(&self, id: BoundId) -> Option<&BoundCheck> {
        self.bounds.iter().find(|b| b.id == id)
    }
}

fn iff(name: &str, structural: bool, observed: bool) -> ConditionCheck {
    ConditionCheck::new(name, ConditionKind::Iff, structural, observed)
}

/// Evaluates every applicable bound for `zp_k(ring)`, the ordering between
/// them and every equality characterization.
pub fn verify_bounds(ring: &TableRing, k: u32) -> Result<VerificationReport> {
    if k < 2 {
        return Err(Error::invalid(format!("k must be at least 2, got {k}")));
    }
    let info = analyze(ring);
    let n = ring.order() as u64;
    let z = info.z_size() as u64;
    let value = zp_exact(ring, k)?;
    let profile = zero_profile(ring, k)?;
    let factorization = factorize(n);
    let flags = RingFlags {
        field: info.is_field,
        local: info.is_local,
        zsq_zero: info.zsq_zero,
        all_ann_prime: info.all_ann_prime(),
        squarefree_order: factorization.iter().all(|&(_, a)| a == 1),
        t1_reduces_to_exact: k == 2,
    };

    let t1 = t1_bounds(&profile)?;
    let t2 = t2_bounds(&profile)?;
    let t4 = explicit_upper(n, z, k)?;
    let mut bounds = vec![
        BoundCheck::lower(BoundId::T2Lower, t2.lower.clone(), &value),
        BoundCheck::lower(BoundId::T1Lower, t1.lower.clone(), &value),
        BoundCheck::upper(BoundId::T1Upper, t1.upper.clone(), &value),
        BoundCheck::upper(BoundId::T2Upper, t2.upper.clone(), &value),
        BoundCheck::upper(BoundId::T4Explicit, t4.clone(), &value),
    ];
    let mut conditions = vec![
        iff("t2.lower attained <=> R is a field", flags.field, t2.lower == value),
        iff("t2.upper attained <=> Z(R)^2 = 0", flags.zsq_zero, t2.upper == value),
        iff("t4.explicit attained <=> Z(R)^2 = 0", flags.zsq_zero, t4 == value),
        ConditionCheck::new(
            "every Ann(x) prime => t1.lower attained",
            ConditionKind::Implies,
            flags.all_ann_prime,
            t1.lower == value,
        ),
        iff("field closed form attained <=> R is a field", flags.field, field_zp(n, k)? == value),
    ];

    if k == 3 {
        let c25 = c25_bounds_k3(&profile)?;
        conditions.push(iff(
            "c25 agrees with t1 at k = 3",
            true,
            c25.lower == t1.lower && c25.upper == t1.upper,
        ));
        bounds.push(BoundCheck::lower(BoundId::C25Lower, c25.lower, &value));
        bounds.push(BoundCheck::upper(BoundId::C25Upper, c25.upper, &value));
    }
    if k >= 3 {
        let prev = zp_exact(ring, k - 1)?;
        let c28 = c28_recursive(&prev, n, z, k)?;
        conditions.push(iff("c28.lower attained <=> R is a field", flags.field, c28.lower == value));
        conditions.push(iff("c28.upper attained <=> Z(R)^2 = 0", flags.zsq_zero, c28.upper == value));
        bounds.push(BoundCheck::lower(BoundId::C28Lower, c28.lower, &value));
        bounds.push(BoundCheck::upper(BoundId::C28Upper, c28.upper, &value));
    }

    let mut violations = Vec::new();
    if let Some((p, alpha)) = prime_power(n) {
        let pring = field_zp(p, k)?;
        if value > pring {
            violations.push(format!("zp = {value} exceeds the p-ring bound {pring}"));
        }
        conditions.push(iff("p-ring bound attained <=> |R| = p", alpha == 1, value == pring));
        if flags.local {
            let b = bk(p, alpha, k)?;
            let structural = z * p == n && flags.zsq_zero;
            conditions.push(iff("bk attained <=> |Z(R)| = |R|/p and Z(R)^2 = 0", structural, b == value));
            bounds.push(BoundCheck::upper(BoundId::Bk, b, &value));
        }
    }

    let components = primary_components(ring);
    let comp_info: Vec<_> = components
        .iter()
        .map(|c| {
            let r = &c.ring;
            let zc = zero_divisors(r).len() as u64;
            (is_local(r), is_field(r), zc * c.prime == r.order() as u64 && zsquare_is_zero(r))
        })
        .collect();
    if comp_info.iter().all(|&(local, _, _)| local) {
        let factors: Vec<(u64, u32)> = components.iter().map(|c| (c.prime, c.exponent)).collect();
        let t6 = t6_product_bound(&factors, k)?;
        let structural = comp_info.iter().all(|&(_, _, sharp)| sharp);
        conditions.push(iff(
            "t6 attained <=> every component has |M| = |R_i|/p_i and M^2 = 0",
            structural,
            t6 == value,
        ));
        bounds.push(BoundCheck::upper(BoundId::T6, t6, &value));
    }
    let c2 = c2_bounds(&factorization, k)?;
    let all_fields = comp_info.iter().all(|&(_, field, _)| field);
    conditions.push(iff(
        "c2.lower attained <=> every primary component is a field",
        all_fields,
        c2.lower == value,
    ));
    conditions.push(iff(
        "c2.upper attained <=> |R| is squarefree",
        flags.squarefree_order,
        c2.upper == value,
    ));
    bounds.push(BoundCheck::lower(BoundId::C2Lower, c2.lower, &value));
    bounds.push(BoundCheck::upper(BoundId::C2Upper, c2.upper, &value));

    for b in &bounds {
        if !b.holds {
            let side = if b.lower.is_some() { "lower" } else { "upper" };
            violations.push(format!("{} {side} bound {} fails for zp = {value}", b.id, b.bound()));
        }
    }
    let chain = [
        ("t2.lower", &t2.lower),
        ("t1.lower", &t1.lower),
        ("zp", &value),
        ("t1.upper", &t1.upper),
        ("t2.upper", &t2.upper),
        ("t4.explicit", &t4),
    ];
    for w in chain.windows(2) {
        if w[0].1 > w[1].1 {
            violations.push(format!("chain broken: {} = {} > {} = {}", w[0].0, w[0].1, w[1].0, w[1].1));
        }
    }
    for c in &conditions {
        if !c.consistent {
            violations.push(format!(
                "condition `{}` inconsistent: structural = {}, observed = {}",
                c.name, c.structural, c.observed
            ));
        }
    }

    Ok(VerificationReport {
        ring: ring.label().to_string(),
        order: ring.order(),
        k,
        value,
        bounds,
        conditions,
        flags,
        violations,
    })
}

/// [`verify_bounds`] for each `k` in `ks`, in order.
pub fn verify_bounds_range(
    ring: &TableRing,
    ks: impl IntoIterator<Item = u32>,
) -> Result<Vec<VerificationReport>> {
    ks.into_iter().map(|k| verify_bounds(ring, k)).collect()
}

fn require_small_orders(catalog: &[CatalogRing]) -> Result<()> {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        if !catalog.iter().any(|c| c.local && c.order() == q) {
            return Err(Error::Precondition(format!("catalog has no local ring of order {q}")));
        }
    }
    Ok(())
}

fn named(builder: &RingBuilder, name: &str, expr: RingExpr) -> Result<TableRing> {
    Ok(builder.materialize(&expr)?.with_label(name))
}

/// The local rings with `zp_k >= B_k(2;3)` up to isomorphism, labelled.
fn classification_targets(k: u32) -> Result<Vec<TableRing>> {
    use RingExpr as E;
    let b = RingBuilder::default();
    let mut out = vec![
        named(&b, "Z2", E::zn(2))?,
        named(&b, "Z3", E::zn(3))?,
        named(&b, "Z4", E::zn(4))?,
        named(&b, "Z2*Z2", E::idealize_power(E::zn(2), 1))?,
        named(&b, "Z4*Z2", E::idealize(4, vec![2]))?,
        named(&b, "Z2*(Z2)^2", E::idealize_power(E::zn(2), 2))?,
        named(&b, "GF(4)", E::gf(2, 2))?,
    ];
    if k > 2 {
        out.retain(|r| r.label() != "GF(4)");
    }
    if k >= 6 {
        out.retain(|r| r.label() != "Z3");
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub k: u32,
    pub threshold: ExactRational,
    /// One catalog name per isomorphism class reaching the threshold.
    pub members: Vec<String>,
    pub count: usize,
    pub expected: Vec<String>,
    pub expected_count: usize,
    pub missing: Vec<String>,
    pub unexpected: Vec<String>,
    pub gap_violations: Vec<String>,
    pub attainment_violations: Vec<String>,
    pub note: &'static str,
}

impl ClassificationReport {
    pub fn passed(&self) -> bool {
        self.count == self.expected_count
            && self.missing.is_empty()
            && self.unexpected.is_empty()
            && self.gap_violations.is_empty()
            && self.attainment_violations.is_empty()
    }
}

pub const CATALOG_RELATIVE: &str = "membership is relative to the supplied catalog";

fn any_iso(r: &TableRing, among: &[&TableRing], cap: usize) -> Result<bool> {
    for s in among {
        if iso_check_capped(r, s, cap)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Local catalog rings with `zp_k >= B_k(2;3)` deduplicated up to
/// isomorphism and compared with the expected list, together with the gap
/// and attainment statements around `B_k(3;1)` and `B_k(2;2)`.
pub fn verify_classification(
    catalog: &[CatalogRing],
    k: u32,
    iso_cap: usize,
) -> Result<ClassificationReport> {
    if k < 2 {
        return Err(Error::invalid(format!("k must be at least 2, got {k}")));
    }
    require_small_orders(catalog)?;
    let threshold = bk(2, 3, k)?;
    let top = bk(2, 1, k)?;
    let b31 = bk(3, 1, k)?;
    let b22 = bk(2, 2, k)?;
    let gap_low = if k <= 3 { &b31 } else { &b22 };
    let targets = classification_targets(k)?;
    let z3 = named(&RingBuilder::default(), "Z3", RingExpr::zn(3))?;
    let by_label = |l: &str| targets.iter().find(|t| t.label() == l).expect("always a target");
    let (z4, z2z2) = (by_label("Z4"), by_label("Z2*Z2"));

    let mut reps: Vec<&CatalogRing> = Vec::new();
    let mut gap_violations = Vec::new();
    let mut attainment_violations = Vec::new();
    for c in catalog.iter().filter(|c| c.local) {
        let zp = zp_exact(&c.ring, k)?;
        if gap_low < &zp && zp < top {
            gap_violations.push(format!("{}: zp = {zp} lies strictly between {gap_low} and {top}", c.name()));
        }
        if (zp == b31) != iso_check_capped(&c.ring, &z3, iso_cap)? {
            attainment_violations
                .push(format!("{}: zp = B_k(3;1) disagrees with isomorphism to Z3", c.name()));
        }
        let sharp = iso_check_capped(&c.ring, z4, iso_cap)? || iso_check_capped(&c.ring, z2z2, iso_cap)?;
        if (zp == b22) != sharp {
            attainment_violations
                .push(format!("{}: zp = B_k(2;2) disagrees with isomorphism to Z4 or Z2*Z2", c.name()));
        }
        if zp >= threshold {
            let rep_rings: Vec<&TableRing> = reps.iter().map(|r| &r.ring).collect();
            if !any_iso(&c.ring, &rep_rings, iso_cap)? {
                reps.push(c);
            }
        }
    }

    let rep_rings: Vec<&TableRing> = reps.iter().map(|r| &r.ring).collect();
    let target_refs: Vec<&TableRing> = targets.iter().collect();
    let mut missing = Vec::new();
    for t in &targets {
        if !any_iso(t, &rep_rings, iso_cap)? {
            missing.push(t.label().to_string());
        }
    }
    let mut unexpected = Vec::new();
    for r in &reps {
        if !any_iso(&r.ring, &target_refs, iso_cap)? {
            unexpected.push(r.name().to_string());
        }
    }
    Ok(ClassificationReport {
        k,
        threshold,
        count: reps.len(),
        members: reps.iter().map(|r| r.name().to_string()).collect(),
        expected_count: targets.len(),
        expected: targets.iter().map(|t| t.label().to_string()).collect(),
        missing,
        unexpected,
        gap_violations,
        attainment_violations,
        note: CATALOG_RELATIVE,
    })
}

/// The primes a local ring with `zp_k >= (2^k-k-1)/2^k` may have, as stated.
pub fn allowed_primes(k: u32) -> Vec<u64> {
    match k {
        2 => vec![2, 3, 5, 7],
        3..=7 => vec![2, 3],
        _ => vec![2],
    }
}

/// Primes with `((p-1)/p)^k <= (k+1)/2^k`, by exact comparison. The left side
/// increases with `p`, so the search stops at the first prime that fails.
pub fn solve_prime_threshold(k: u32) -> Vec<u64> {
    let rhs = ExactRational::new(k as i64 + 1, 1)
        / ExactRational::from_integer(num_traits::pow(num_bigint::BigInt::from(2), k as usize));
    let mut out = Vec::new();
    for p in (2u64..).filter(|&p| is_prime(p)) {
        let lhs = ExactRational::new(p as i64 - 1, p as i64).pow(k);
        if lhs > rhs {
            break;
        }
        out.push(p);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeConstraintReport {
    pub k: u32,
    pub threshold: ExactRational,
    pub solved_primes: Vec<u64>,
    pub expected_primes: Vec<u64>,
    /// Local catalog rings reaching the threshold.
    pub reaching: Vec<String>,
    pub offending: Vec<String>,
}

impl PrimeConstraintReport {
    pub fn passed(&self) -> bool {
        self.solved_primes == self.expected_primes && self.offending.is_empty()
    }
}

pub fn verify_prime_constraint(catalog: &[CatalogRing], k: u32) -> Result<PrimeConstraintReport> {
    if k < 2 {
        return Err(Error::invalid(format!("k must be at least 2, got {k}")));
    }
    if catalog.is_empty() {
        return Err(Error::Precondition("catalog is empty".into()));
    }
    let two_k = num_traits::pow(num_bigint::BigInt::from(2), k as usize);
    let threshold = ExactRational::new(two_k.clone() - (k as i64 + 1), two_k);
    let expected = allowed_primes(k);
    let mut reaching = Vec::new();
    let mut offending = Vec::new();
    for c in catalog.iter().filter(|c| c.local) {
        if zp_exact(&c.ring, k)? >= threshold {
            reaching.push(c.name().to_string());
            let (p, _) = prime_power(c.order())
                .ok_or_else(|| Error::domain(format!("local ring {} has non-prime-power order", c.name())))?;
            if !expected.contains(&p) {
                offending.push(format!("{} (p = {p})", c.name()));
            }
        }
    }
    Ok(PrimeConstraintReport {
        k,
        threshold,
        solved_primes: solve_prime_threshold(k),
        expected_primes: expected,
        reaching,
        offending,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GlobalMaxReport {
    pub k: u32,
    pub bound: ExactRational,
    pub max_value: ExactRational,
    pub maximizers: Vec<String>,
    pub violations: Vec<String>,
}

impl GlobalMaxReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `zp_k <= B_k(2;1)` over the whole catalog, with equality exactly for rings isomorphic to Z2.
pub fn verify_global_max(catalog: &[CatalogRing], k: u32, iso_cap: usize) -> Result<GlobalMaxReport> {
    let bound = bk(2, 1, k)?;
    let z2 = named(&RingBuilder::default(), "Z2", RingExpr::zn(2))?;
    let mut max_value = ExactRational::zero();
    let mut maximizers = Vec::new();
    let mut violations = Vec::new();
    for c in catalog {
        let zp = zp_exact(&c.ring, k)?;
        if zp > bound {
            violations.push(format!("{}: zp = {zp} exceeds {bound}", c.name()));
        }
        if (zp == bound) != iso_check_capped(&c.ring, &z2, iso_cap)? {
            violations.push(format!("{}: attaining {bound} disagrees with isomorphism to Z2", c.name()));
        }
        if zp > max_value {
            max_value = zp.clone();
            maximizers.clear();
        }
        if zp == max_value {
            maximizers.push(c.name().to_string());
        }
    }
    if catalog.is_empty() {
        violations.push("catalog is empty".into());
    } else if max_value != bound {
        violations.push(format!("catalog maximum {max_value} differs from {bound}"));
    }
    Ok(GlobalMaxReport { k, bound, max_value, maximizers, violations })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct M2Row {
    pub ring: String,
    pub order: u64,
    pub m2_zero: bool,
    pub matches_model: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct M2Report {
    pub rows: Vec<M2Row>,
    /// Rings meeting the hypothesis but larger than the isomorphism cap.
    pub skipped: Vec<String>,
    pub violations: Vec<String>,
}

impl M2Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `Z_p * (Z_p)^{a-1}` and `Z_{p^2} * (Z_p)^{a-2}` for order `p^a`.
fn m2_models(p: u64, alpha: u32) -> Result<Vec<TableRing>> {
    use RingExpr as E;
    let b = RingBuilder::default();
    let mut out =
        vec![if alpha == 1 { b.zn(p)? } else { b.materialize(&E::idealize_power(E::zn(p), alpha - 1))? }];
    if alpha == 2 {
        out.push(b.zn(p * p)?);
    } else if alpha > 2 {
        out.push(b.materialize(&E::idealize(p * p, vec![p; alpha as usize - 2]))?);
    }
    Ok(out)
}

/// For local catalog rings of order `p^a` with `|M| = p^{a-1}`: `M^2 = 0` exactly
/// when the ring is isomorphic to one of the two idealization models.
pub fn verify_m2_classification(catalog: &[CatalogRing], iso_cap: usize) -> Result<M2Report> {
    require_small_orders(catalog)?;
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    let mut violations = Vec::new();
    for c in catalog.iter().filter(|c| c.local) {
        let Some((p, alpha)) = prime_power(c.order()) else { continue };
        if zero_divisors(&c.ring).len() as u64 * p != c.order() {
            continue;
        }
        if c.order() as usize > iso_cap {
            skipped.push(c.name().to_string());
            continue;
        }
        let models = m2_models(p, alpha)?;
        let refs: Vec<&TableRing> = models.iter().collect();
        let matches_model = any_iso(&c.ring, &refs, iso_cap)?;
        if c.zsq_zero != matches_model {
            violations.push(format!(
                "{}: M^2 = 0 is {} but model match is {matches_model}",
                c.name(),
                c.zsq_zero
            ));
        }
        rows.push(M2Row { ring: c.name().to_string(), order: c.order(), m2_zero: c.zsq_zero, matches_model });
    }
    Ok(M2Report { rows, skipped, violations })
}
