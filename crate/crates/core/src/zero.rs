//! Zero divisors, annihilators and the structural predicates that decide when
//! the bounds in [`formulas`](crate::formulas) are attained.
//!
//! `Z(R)` always contains 0 here, so a field has `|Z(R)| = 1`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::engine::ann_k_count;
use crate::error::{Error, Result};
use crate::formulas::ZeroProfile;
use crate::ring::{RingBuilder, RingExpr, TableRing};

fn mask(ring: &TableRing, set: &[usize]) -> Vec<bool> {
    let mut m = vec![false; ring.order()];
    for &x in set {
        m[x] = true;
    }
    m
}

/// `{x : xy = 0 for some y != 0}`, ascending.
pub fn zero_divisors(ring: &TableRing) -> Vec<usize> {
    let z = ring.zero();
    ring.elements()
        .filter(|&x| ring.mul_row(x).iter().enumerate().any(|(y, &p)| y != z && p as usize == z))
        .collect()
}

/// `{y : xy = 0}`, ascending.
pub fn annihilator(ring: &TableRing, x: usize) -> Result<Vec<usize>> {
    ring.check_index(x)?;
    Ok(annihilator_unchecked(ring, x))
}

fn annihilator_unchecked(ring: &TableRing, x: usize) -> Vec<usize> {
    let z = ring.zero() as u32;
    ring.mul_row(x).iter().enumerate().filter(|&(_, &p)| p == z).map(|(y, _)| y).collect()
}

pub fn is_field(ring: &TableRing) -> bool {
    zero_divisors(ring).len() == 1
}

/// A finite commutative ring is local exactly when `Z(R)` is closed under
/// addition; `Z(R)` is then its maximal ideal.
pub fn is_local(ring: &TableRing) -> bool {
    is_local_with(ring, &zero_divisors(ring))
}

fn is_local_with(ring: &TableRing, zset: &[usize]) -> bool {
    let m = mask(ring, zset);
    zset.iter().all(|&a| zset.iter().all(|&b| m[ring.add(a, b)]))
}

pub fn maximal_ideal(ring: &TableRing) -> Result<Vec<usize>> {
    let zset = zero_divisors(ring);
    if !is_local_with(ring, &zset) {
        return Err(Error::domain(format!("{} is not local", ring.label())));
    }
    Ok(zset)
}

/// True iff `xy = 0` for all `x, y` in `Z(R)`.
pub fn zsquare_is_zero(ring: &TableRing) -> bool {
    zsquare_is_zero_with(ring, &zero_divisors(ring))
}

fn zsquare_is_zero_with(ring: &TableRing, zset: &[usize]) -> bool {
    zset.iter().all(|&a| zset.iter().all(|&b| ring.mul(a, b) == ring.zero()))
}

/// Whether `Ann(x)` is a prime ideal, for a nonzero zero divisor `x`.
pub fn ann_is_prime(ring: &TableRing, x: usize) -> Result<bool> {
    ring.check_index(x)?;
    if x == ring.zero() || !zero_divisors(ring).contains(&x) {
        return Err(Error::domain(format!("element {x} is not a nonzero zero divisor of {}", ring.label())));
    }
    Ok(is_prime_ideal(ring, &mask(ring, &annihilator_unchecked(ring, x))))
}

/// An ideal `I` (as a membership mask) is prime iff it is proper and
/// `ab in I` forces `a in I` or `b in I`.
fn is_prime_ideal(ring: &TableRing, ideal: &[bool]) -> bool {
    if ideal[ring.one()] {
        return false;
    }
    let outside: Vec<usize> = ring.elements().filter(|&a| !ideal[a]).collect();
    outside.iter().all(|&a| outside.iter().all(|&b| !ideal[ring.mul(a, b)]))
}

/// Primality of every nonzero zero divisor's annihilator, sharing the work
/// between elements with the same annihilator.
pub fn prime_annihilators(ring: &TableRing) -> BTreeMap<usize, bool> {
    let mut memo: HashMap<Vec<usize>, bool> = HashMap::new();
    zero_divisors(ring)
        .into_iter()
        .filter(|&x| x != ring.zero())
        .map(|x| {
            let ann = annihilator_unchecked(ring, x);
            let prime = *memo.entry(ann).or_insert_with_key(|ann| is_prime_ideal(ring, &mask(ring, ann)));
            (x, prime)
        })
        .collect()
}

/// The zero divisors of an idealization predicted by `Z(R*M) = (Z(R) u Z(M)) x M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealizationZeroSet {
    pub predicted: Vec<usize>,
    pub matches_direct: bool,
}

/// Computes `(Z(base) u Z(M)) x M` from the construction of `ring` and
/// compares it with the zero divisors found by a direct scan.
///
/// Relies on the element encoding of the idealization builders: `(r, m)` has
/// index `r * |M| + code(m)`.
pub fn idealization_zero_set(ring: &TableRing) -> Result<IdealizationZeroSet> {
    let not_ideal = || Error::domain(format!("{} was not built as an idealization", ring.label()));
    let origin = ring.origin().ok_or_else(not_ideal)?;
    let (base_zero, module_size): (Vec<bool>, usize) = match origin {
        RingExpr::Idealize { n, moduli } => {
            let module_size = moduli.iter().product::<u64>() as usize;
            let base = RingBuilder::default().zn(*n)?;
            let zb = mask(&base, &zero_divisors(&base));
            // r kills a nonzero module element iff it kills a nonzero element
            // of a single cyclic component
            let zm = (0..*n).map(|r| moduli.iter().any(|&d| (1..d).any(|c| (r % d) * c % d == 0)));
            (zb.iter().zip(zm).map(|(&a, b)| a || b).collect(), module_size)
        }
        RingExpr::IdealizePower { base, t } => {
            let base = RingBuilder::default().materialize(base)?;
            // Z(M) = Z(base) for M = base^t with the ring action
            let zb = mask(&base, &zero_divisors(&base));
            (zb, base.order().pow(*t))
        }
        _ => return Err(not_ideal()),
    };
    let predicted: Vec<usize> = base_zero
        .iter()
        .enumerate()
        .filter(|(_, &z)| z)
        .flat_map(|(r, _)| (0..module_size).map(move |m| r * module_size + m))
        .collect();
    let matches_direct = predicted == zero_divisors(ring);
    Ok(IdealizationZeroSet { predicted, matches_direct })
}

/// The statistics the structural bounds are written in, for exponent `k`.
pub fn zero_profile(ring: &TableRing, k: u32) -> Result<ZeroProfile> {
    if k < 2 {
        return Err(Error::invalid(format!("k must be at least 2, got {k}")));
    }
    let zset = zero_divisors(ring);
    let ann_sizes = zset
        .iter()
        .filter(|&&x| x != ring.zero())
        .map(|&x| annihilator_unchecked(ring, x).len() as u64)
        .collect();
    ZeroProfile::new(ring.order() as u64, zset.len() as u64, ann_sizes, ann_k_count(ring, k - 1)?, k)
}

/// Everything known about the zero divisors of one ring.
#[derive(Debug, Clone, Serialize)]
pub struct ZeroStructureReport {
    pub ring: String,
    pub zset: Vec<usize>,
    /// `|Ann(x)|` for each nonzero zero divisor `x`.
    pub ann_sizes: BTreeMap<usize, usize>,
    pub is_field: bool,
    pub is_local: bool,
    pub maximal_ideal: Option<Vec<usize>>,
    pub zsq_zero: bool,
    pub prime_ann: BTreeMap<usize, bool>,
}

impl ZeroStructureReport {
    pub fn all_ann_prime(&self) -> bool {
        self.prime_ann.values().all(|&p| p)
    }

    pub fn z_size(&self) -> usize {
        self.zset.len()
    }
}

pub fn analyze(ring: &TableRing) -> ZeroStructureReport {
    let zset = zero_divisors(ring);
    let is_local = is_local_with(ring, &zset);
    let ann_sizes = zset
        .iter()
        .filter(|&&x| x != ring.zero())
        .map(|&x| (x, annihilator_unchecked(ring, x).len()))
        .collect();
    ZeroStructureReport {
        ring: ring.label().to_string(),
        is_field: zset.len() == 1,
        is_local,
        maximal_ideal: is_local.then(|| zset.clone()),
        zsq_zero: zsquare_is_zero_with(ring, &zset),
        prime_ann: prime_annihilators(ring),
        ann_sizes,
        zset,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_gf, build_zn, materialize};
    use num_bigint::BigUint;

    #[test]
    fn zero_divisor_sets() {
        assert_eq!(zero_divisors(&build_zn(2).unwrap()), vec![0]);
        assert_eq!(zero_divisors(&build_zn(4).unwrap()), vec![0, 2]);
        assert_eq!(zero_divisors(&build_zn(6).unwrap()), vec![0, 2, 3, 4]);
    }

    #[test]
    fn annihilators() {
        let z4 = build_zn(4).unwrap();
        assert_eq!(annihilator(&z4, 0).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(annihilator(&z4, 2).unwrap(), vec![0, 2]);
        assert_eq!(annihilator(&build_zn(6).unwrap(), 3).unwrap(), vec![0, 2, 4]);
        assert!(matches!(annihilator(&z4, 4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn locality_and_fields() {
        let gf4 = build_gf(2, 2, None).unwrap();
        assert!(is_field(&gf4) && is_local(&gf4));
        assert_eq!(maximal_ideal(&gf4).unwrap(), vec![0]);
        let z6 = build_zn(6).unwrap();
        assert!(!is_local(&z6));
        assert!(matches!(maximal_ideal(&z6), Err(Error::Domain(_))));
        let z8 = build_zn(8).unwrap();
        assert!(is_local(&z8));
        assert_eq!(maximal_ideal(&z8).unwrap().len(), 4);
    }

    #[test]
    fn zsquare() {
        assert!(zsquare_is_zero(&build_gf(3, 2, None).unwrap()));
        assert!(zsquare_is_zero(&build_zn(4).unwrap()));
        assert!(!zsquare_is_zero(&build_zn(8).unwrap()));
    }

    #[test]
    fn prime_annihilator_examples() {
        assert!(ann_is_prime(&build_zn(4).unwrap(), 2).unwrap());
        assert!(!ann_is_prime(&build_zn(8).unwrap(), 2).unwrap());
        assert!(ann_is_prime(&build_zn(6).unwrap(), 2).unwrap());
        assert!(matches!(ann_is_prime(&build_zn(6).unwrap(), 1), Err(Error::Domain(_))));
        assert!(matches!(ann_is_prime(&build_zn(6).unwrap(), 0), Err(Error::Domain(_))));
    }

    #[test]
    fn idealization_zero_sets() {
        for (expr, size) in [
            (RingExpr::idealize_power(RingExpr::zn(2), 1), 2),
            (RingExpr::idealize(4, vec![2]), 4),
            (RingExpr::idealize_power(RingExpr::zn(3), 2), 9),
            (RingExpr::idealize(12, vec![2, 3]), 12 * 6 - 4 * 6),
        ] {
            let r = materialize(&expr).unwrap();
            let z = idealization_zero_set(&r).unwrap();
            assert_eq!(z.predicted.len(), size, "{expr}");
            assert!(z.matches_direct, "{expr}");
        }
        assert!(idealization_zero_set(&build_zn(4).unwrap()).is_err());
    }

    #[test]
    fn profiles() {
        let p = zero_profile(&build_zn(4).unwrap(), 2).unwrap();
        assert_eq!((p.n, p.z, p.ann_sizes.clone()), (4, 2, vec![2]));
        assert_eq!(p.ann_k_minus_1, BigUint::from(1u32));
        let p = zero_profile(&build_gf(2, 2, None).unwrap(), 3).unwrap();
        assert_eq!((p.n, p.z, p.ann_sizes.len()), (4, 1, 0));
        assert_eq!(p.ann_k_minus_1, BigUint::from(7u32));
        let p = zero_profile(&build_zn(2).unwrap(), 2).unwrap();
        assert_eq!((p.n, p.z, p.ann_k_minus_1.clone()), (2, 1, BigUint::from(1u32)));
    }

    #[test]
    fn report() {
        let r = analyze(&build_zn(8).unwrap());
        assert!(r.is_local && !r.is_field && !r.zsq_zero);
        assert_eq!(r.ann_sizes.get(&4), Some(&4));
        assert!(!r.all_ann_prime());
        assert!(analyze(&build_zn(4).unwrap()).all_ann_prime());
    }
}
