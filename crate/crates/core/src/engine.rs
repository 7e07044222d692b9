//! Counting `k`-tuples by the value of their product.
//!
//! With `N_k(r) = #{(x_1, ..., x_k) : x_1 ... x_k = r}` we have `N_1 = 1` and
//!
//! ```text
//! N_k(r) = sum over s in R of N_{k-1}(s) * #{a : s a = r},
//! ```
//!
//! so one step costs `n^2` table lookups. `|Ann_k(R)| = N_k(0)` and
//! `zp_k(R) = N_k(0) / n^k`.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::ExactRational;
use crate::ring::{RingBuilder, RingExpr, TableRing};

/// Default limit on the number of tuples the brute-force oracle enumerates.
pub const DEFAULT_BRUTEFORCE_CAP: u128 = 10_000_000;

/// For fixed `k`, the number of `k`-tuples whose product is each element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductCountVector {
    k: u32,
    counts: Vec<BigUint>,
}

impl ProductCountVector {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn count(&self, element: usize) -> &BigUint {
        &self.counts[element]
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }
}

/// Successive product count vectors `N_1, N_2, ...` of one ring.
///
/// Counts stay in `u128` while `n^k` fits and switch to big integers after.
pub struct ProductCounts<'a> {
    ring: &'a TableRing,
    k: u32,
    small: Option<Vec<u128>>,
    big: Vec<BigUint>,
}

impl<'a> ProductCounts<'a> {
    pub fn new(ring: &'a TableRing) -> Self {
        ProductCounts { ring, k: 0, small: None, big: Vec::new() }
    }

    fn fits_u128(&self, k: u32) -> bool {
        (self.ring.order() as u128).checked_pow(k).is_some()
    }

    fn advance(&mut self) {
        let n = self.ring.order();
        let next_k = self.k + 1;
        if self.k == 0 {
            self.small = Some(vec![1u128; n]);
        } else if let Some(prev) = self.small.take() {
            if self.fits_u128(next_k) {
                let mut next = vec![0u128; n];
                for (s, &c) in prev.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for &r in self.ring.mul_row(s) {
                        next[r as usize] += c;
                    }
                }
                self.small = Some(next);
            } else {
                self.big = prev.into_iter().map(BigUint::from).collect();
                self.big_step();
            }
        } else {
            self.big_step();
        }
        self.k = next_k;
    }

    fn big_step(&mut self) {
        let mut next = vec![BigUint::zero(); self.ring.order()];
        for (s, c) in self.big.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &r in self.ring.mul_row(s) {
                next[r as usize] += c;
            }
        }
        self.big = next;
    }

    fn current(&self) -> ProductCountVector {
        let counts = match &self.small {
            Some(v) => v.iter().map(|&c| BigUint::from(c)).collect(),
            None => self.big.clone(),
        };
        ProductCountVector { k: self.k, counts }
    }

    fn current_zero(&self) -> BigUint {
        let z = self.ring.zero();
        match &self.small {
            Some(v) => BigUint::from(v[z]),
            None => self.big[z].clone(),
        }
    }
}

impl Iterator for ProductCounts<'_> {
    type Item = ProductCountVector;

    fn next(&mut self) -> Option<ProductCountVector> {
        self.advance();
        Some(self.current())
    }
}

pub fn product_count_vector(ring: &TableRing, k: u32) -> Result<ProductCountVector> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let mut it = ProductCounts::new(ring);
    for _ in 0..k {
        it.advance();
    }
    Ok(it.current())
}

/// `|Ann_k(R)|`, the number of `k`-tuples with product zero.
pub fn ann_k_count(ring: &TableRing, k: u32) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let mut it = ProductCounts::new(ring);
    for _ in 0..k {
        it.advance();
    }
    Ok(it.current_zero())
}

/// `[|Ann_1(R)|, ..., |Ann_kmax(R)|]` from a single pass.
pub fn ann_k_counts(ring: &TableRing, kmax: u32) -> Vec<BigUint> {
    let mut it = ProductCounts::new(ring);
    (0..kmax)
        .map(|_| {
            it.advance();
            it.current_zero()
        })
        .collect()
}

fn total_tuples(n: usize, k: u32) -> BigUint {
    num_traits::pow(BigUint::from(n), k as usize)
}

fn check_k(k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::invalid(format!("k must be at least 2, got {k}")));
    }
    Ok(())
}

pub fn zp_exact(ring: &TableRing, k: u32) -> Result<ExactRational> {
    check_k(k)?;
    let zeros = ann_k_count(ring, k)?;
    Ok(ExactRational::from_counts(&zeros, &total_tuples(ring.order(), k)))
}

/// `zp_k` for every `k` in `2..=kmax`, indexed from `k = 2`.
pub fn zp_exact_upto(ring: &TableRing, kmax: u32) -> Vec<ExactRational> {
    ann_k_counts(ring, kmax)
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| ExactRational::from_counts(c, &total_tuples(ring.order(), i as u32 + 1)))
        .collect()
}

/// Independent oracle: enumerates every `k`-tuple explicitly.
pub fn zp_bruteforce(ring: &TableRing, k: u32) -> Result<ExactRational> {
    zp_bruteforce_capped(ring, k, DEFAULT_BRUTEFORCE_CAP)
}

pub fn zp_bruteforce_capped(ring: &TableRing, k: u32, cap: u128) -> Result<ExactRational> {
    check_k(k)?;
    let n = ring.order();
    let tuples = (n as u128).checked_pow(k).unwrap_or(u128::MAX);
    if tuples > cap {
        return Err(Error::Capacity { what: "brute-force tuples", requested: tuples, cap });
    }
    fn walk(ring: &TableRing, prefix: usize, remaining: u32) -> u64 {
        if remaining == 0 {
            return (prefix == ring.zero()) as u64;
        }
        ring.elements().map(|a| walk(ring, ring.mul(prefix, a), remaining - 1)).sum()
    }
    let zeros: u64 = ring.elements().map(|x1| walk(ring, x1, k - 1)).sum();
    Ok(ExactRational::from_counts(&BigUint::from(zeros), &BigUint::from(tuples)))
}

/// `zp_k` of an expression, multiplying over the factors of products so that
/// only the factors are ever materialized.
pub fn zp_expr(expr: &RingExpr, k: u32) -> Result<ExactRational> {
    zp_expr_with(expr, k, &RingBuilder::default())
}

pub fn zp_expr_with(expr: &RingExpr, k: u32, builder: &RingBuilder) -> Result<ExactRational> {
    check_k(k)?;
    expr.check()?;
    let mut value = ExactRational::one();
    for factor in expr.factors() {
        let ring = builder.materialize(factor)?;
        value = value * zp_exact(&ring, k)?;
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use crate::ring::{build_gf, build_product, build_zn};
    use num_traits::One;

    /// Plain nested-loop enumeration for tiny cases, independent of both
    /// the recurrence and the oracle's recursion.
    fn enumerate_counts(ring: &TableRing, k: u32) -> Vec<u64> {
        let n = ring.order();
        let mut counts = vec![0u64; n];
        let total = n.pow(k);
        for code in 0..total {
            let mut c = code;
            let mut prod = ring.one();
            for _ in 0..k {
                prod = ring.mul(prod, c % n);
                c /= n;
            }
            counts[prod] += 1;
        }
        counts
    }

    fn as_u64(v: &ProductCountVector) -> Vec<u64> {
        v.counts().iter().map(|c| u64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn count_vectors_match_enumeration() {
        let z4 = build_zn(4).unwrap();
        assert_eq!(enumerate_counts(&z4, 2), vec![8, 2, 4, 2]);
        assert_eq!(as_u64(&product_count_vector(&z4, 2).unwrap()), vec![8, 2, 4, 2]);
        let z2 = build_zn(2).unwrap();
        assert_eq!(as_u64(&product_count_vector(&z2, 3).unwrap()), vec![7, 1]);
        let gf4 = build_gf(2, 2, None).unwrap();
        for k in 1..=4 {
            assert_eq!(as_u64(&product_count_vector(&gf4, k).unwrap()), enumerate_counts(&gf4, k));
        }
        assert!(as_u64(&product_count_vector(&z4, 1).unwrap()).iter().all(|&c| c == 1));
        assert!(product_count_vector(&z4, 0).is_err());
    }

    #[test]
    fn ann_counts() {
        let z4 = build_zn(4).unwrap();
        assert_eq!(ann_k_count(&z4, 2).unwrap(), BigUint::from(8u32));
        assert_eq!(ann_k_count(&z4, 1).unwrap(), BigUint::one());
        let gf4 = build_gf(2, 2, None).unwrap();
        assert_eq!(ann_k_count(&gf4, 2).unwrap(), BigUint::from(7u32));
    }

    #[test]
    fn switches_to_big_integers() {
        // 13^40 > 2^128, so the later steps run on BigUint
        let z13 = build_zn(13).unwrap();
        let v = product_count_vector(&z13, 40).unwrap();
        assert_eq!(v.total(), total_tuples(13, 40));
        let field = num_traits::pow(BigUint::from(13u32), 40) - num_traits::pow(BigUint::from(12u32), 40);
        assert_eq!(v.count(0), &field);
    }

    #[test]
    fn bruteforce_values() {
        assert_eq!(zp_bruteforce(&build_zn(4).unwrap(), 2).unwrap(), frac(1, 2));
        assert_eq!(zp_bruteforce(&build_zn(6).unwrap(), 2).unwrap(), frac(5, 12));
        assert_eq!(zp_bruteforce(&build_zn(8).unwrap(), 2).unwrap(), frac(5, 16));
        let err = zp_bruteforce_capped(&build_zn(10).unwrap(), 3, 999).unwrap_err();
        assert!(matches!(err, Error::Capacity { requested: 1000, .. }));
    }

    #[test]
    fn exact_values() {
        assert_eq!(zp_exact(&build_zn(2).unwrap(), 4).unwrap(), frac(15, 16));
        assert_eq!(zp_exact(&build_gf(2, 2, None).unwrap(), 4).unwrap(), frac(175, 256));
        assert_eq!(zp_exact(&build_zn(3).unwrap(), 4).unwrap(), frac(65, 81));
        assert_eq!(zp_exact(&build_zn(4).unwrap(), 3).unwrap(), frac(11, 16));
        assert!(zp_exact(&build_zn(4).unwrap(), 1).is_err());
        let upto = zp_exact_upto(&build_zn(4).unwrap(), 4);
        assert_eq!(upto, vec![frac(1, 2), frac(11, 16), frac(13, 16)]);
    }

    #[test]
    fn expressions_split_products() {
        let e = RingExpr::product(RingExpr::zn(2), RingExpr::zn(3));
        assert_eq!(zp_expr(&e, 2).unwrap(), frac(5, 12));
        let z22 = RingExpr::product(RingExpr::zn(2), RingExpr::zn(2));
        assert_eq!(zp_expr(&z22, 4).unwrap(), frac(225, 256));
        let ring = build_product(&build_zn(2).unwrap(), &build_zn(2).unwrap()).unwrap();
        assert_eq!(zp_exact(&ring, 4).unwrap(), frac(225, 256));
        assert_eq!(zp_expr(&RingExpr::zn(3), 4).unwrap(), frac(65, 81));
        // a product too large to materialize is still computable factorwise
        let big = RingExpr::product(RingExpr::gf(2, 8), RingExpr::gf(3, 5));
        assert!(zp_expr(&big, 3).is_ok());
    }
}
