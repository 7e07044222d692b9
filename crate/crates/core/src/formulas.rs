//! Closed forms and bounds for `zp_k(R)`, written as functions of ring
//! statistics and evaluated exactly.
//!
//! Throughout, `n = |R|`, `z = |Z(R)|` (counting 0), `a_x = |Ann(x)|` for the
//! nonzero zero divisors `x`, and `A = |Ann_{k-1}(R)|`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::rational::ExactRational;

/// Ring statistics parameterizing the structural bounds for a fixed `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroProfile {
    pub n: u64,
    pub z: u64,
    /// `|Ann(x)|` for each nonzero zero divisor `x` (any order).
    pub ann_sizes: Vec<u64>,
    /// `|Ann_{k-1}(R)|`.
    pub ann_k_minus_1: BigUint,
    pub k: u32,
}

impl ZeroProfile {
    pub fn new(n: u64, z: u64, ann_sizes: Vec<u64>, ann_k_minus_1: BigUint, k: u32) -> Result<Self> {
        let p = ZeroProfile { n, z, ann_sizes, ann_k_minus_1, k };
        p.check()?;
        Ok(p)
    }

    pub fn check(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::invalid(format!("profile k must be at least 2, got {}", self.k)));
        }
        if self.z < 1 || self.z > self.n {
            return Err(Error::invalid(format!("|Z(R)| = {} outside [1, {}]", self.z, self.n)));
        }
        if self.ann_sizes.len() as u64 != self.z - 1 {
            return Err(Error::invalid(format!(
                "{} annihilator sizes given for {} nonzero zero divisors",
                self.ann_sizes.len(),
                self.z - 1
            )));
        }
        if let Some(a) = self.ann_sizes.iter().find(|&&a| a < 1 || a > self.n) {
            return Err(Error::invalid(format!("annihilator size {a} outside [1, {}]", self.n)));
        }
        if self.ann_k_minus_1.is_zero() {
            return Err(Error::invalid("|Ann_{k-1}(R)| must be at least 1"));
        }
        Ok(())
    }
}

/// Stable identifiers of the bounds, used in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundId {
    T1Lower,
    T1Upper,
    T2Lower,
    T2Upper,
    T4Explicit,
    Bk,
    C25Lower,
    C25Upper,
    C28Lower,
    C28Upper,
    C2Lower,
    C2Upper,
    T6,
}

impl BoundId {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::T1Lower => "t1.lower",
            BoundId::T1Upper => "t1.upper",
            BoundId::T2Lower => "t2.lower",
            BoundId::T2Upper => "t2.upper",
            BoundId::T4Explicit => "t4.explicit",
            BoundId::Bk => "bk",
            BoundId::C25Lower => "c25.lower",
            BoundId::C25Upper => "c25.upper",
            BoundId::C28Lower => "c28.lower",
            BoundId::C28Upper => "c28.upper",
            BoundId::C2Lower => "c2.lower",
            BoundId::C2Upper => "c2.upper",
            BoundId::T6 => "t6",
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for BoundId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// A lower and an upper bound from the same result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundPair {
    pub lower: ExactRational,
    pub upper: ExactRational,
    /// Identifiers of the lower and upper bound.
    pub source: (BoundId, BoundId),
}

fn int(v: u64) -> BigInt {
    BigInt::from(v)
}

fn pow(base: &BigInt, e: u32) -> BigInt {
    num_traits::pow(base.clone(), e as usize)
}

fn ratio(num: BigInt, den: BigInt) -> ExactRational {
    ExactRational::new(num, den)
}

fn binomial(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * int(n - i) / int(i + 1);
    }
    acc
}

/// `P_d(x, y) = sum_{i=0}^{d} (-1)^i (i+1) C(d+2, i+2) x^{d-i} y^i`.
pub fn poly_p(d: u32, x: &ExactRational, y: &ExactRational) -> ExactRational {
    (0..=d)
        .map(|i| {
            let sign: i64 = if i % 2 == 0 { 1 } else { -1 };
            let c = binomial(d as u64 + 2, i as u64 + 2) * BigInt::from(sign * (i as i64 + 1));
            ExactRational::from_integer(c) * x.pow(d - i) * y.pow(i)
        })
        .sum()
}

fn profile_parts(p: &ZeroProfile) -> Result<(BigInt, BigInt, BigInt, BigInt)> {
    p.check()?;
    let n = int(p.n);
    let z = int(p.z);
    let nk1 = pow(&n, p.k - 1);
    // shared terms n^{k-1} + (n - z) A
    let base = &nk1 + (&n - &z) * BigInt::from(p.ann_k_minus_1.clone());
    Ok((n, z, nk1, base))
}

/// The recursive bounds with one term per nonzero zero divisor.
///
/// At `k = 2` both bounds collapse to the exact value `|Ann_2(R)| / n^2`
/// whenever the profile comes from a ring.
pub fn t1_bounds(p: &ZeroProfile) -> Result<BoundPair> {
    let (n, z, nk1, base) = profile_parts(p)?;
    let k = p.k;
    let nz = &n - &z;
    let mut lower = base.clone();
    let mut upper = base;
    for &a in &p.ann_sizes {
        let a = int(a);
        lower += &nk1 - pow(&(&n - &a), k - 1);
        let coeff = &n + BigInt::from(k - 2) * &z - BigInt::from(k - 1) * &a;
        upper += &nk1 - coeff * pow(&nz, k - 2);
    }
    let den = pow(&n, k);
    Ok(BoundPair {
        lower: ratio(lower, den.clone()),
        upper: ratio(upper, den),
        source: (BoundId::T1Lower, BoundId::T1Upper),
    })
}

/// Lower bound attained exactly by fields; upper bound attained exactly when `Z(R)^2 = 0`.
pub fn t2_bounds(p: &ZeroProfile) -> Result<BoundPair> {
    let (n, z, nk1, base) = profile_parts(p)?;
    let den = pow(&n, p.k);
    let extra = (&z - 1) * (&nk1 - pow(&(&n - &z), p.k - 1));
    Ok(BoundPair {
        lower: ratio(base.clone(), den.clone()),
        upper: ratio(base + extra, den),
        source: (BoundId::T2Lower, BoundId::T2Upper),
    })
}

/// The `k = 3` bounds written in `n`, `z` and the annihilator sizes only.
pub fn c25_bounds_k3(p: &ZeroProfile) -> Result<BoundPair> {
    p.check()?;
    if p.k != 3 {
        return Err(Error::invalid(format!("c25 bounds need k = 3, got {}", p.k)));
    }
    let n = int(p.n);
    let z = int(p.z);
    let sum_a: BigInt = p.ann_sizes.iter().map(|&a| int(a)).sum();
    let common = BigInt::from(3) * &n * &n - BigInt::from(3) * &n * &z;
    let upper = &common + pow(&z, 3) + BigInt::from(3) * (&n - &z) * &sum_a;
    let lower_terms: BigInt = p
        .ann_sizes
        .iter()
        .map(|&a| {
            let a = int(a);
            (BigInt::from(3) * &n - &z) * &a - &a * &a
        })
        .sum();
    let lower = common + &z * &z + lower_terms;
    let den = pow(&n, 3);
    Ok(BoundPair {
        lower: ratio(lower, den.clone()),
        upper: ratio(upper, den),
        source: (BoundId::C25Lower, BoundId::C25Upper),
    })
}

/// Bounds on `zp_k` from `zp_{k-1}`; needs `k >= 3`.
pub fn c28_recursive(zp_prev: &ExactRational, n: u64, z: u64, k: u32) -> Result<BoundPair> {
    if k < 3 {
        return Err(Error::invalid(format!("recursive bounds need k >= 3, got {k}")));
    }
    check_nz(n, z)?;
    let (nb, zb) = (int(n), int(z));
    let scaled = ratio(&nb - &zb, nb.clone()) * zp_prev;
    let nk1 = pow(&nb, k - 1);
    let tail = &nk1 + (&zb - 1) * (&nk1 - pow(&(&nb - &zb), k - 1));
    Ok(BoundPair {
        lower: &scaled + &ratio(BigInt::one(), nb.clone()),
        upper: scaled + ratio(tail, pow(&nb, k)),
        source: (BoundId::C28Lower, BoundId::C28Upper),
    })
}

fn check_nz(n: u64, z: u64) -> Result<()> {
    if n < 2 || z < 1 || z > n {
        return Err(Error::invalid(format!("need 1 <= z <= n and n >= 2, got n = {n}, z = {z}")));
    }
    Ok(())
}

fn check_k(k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::invalid(format!("k must be at least 2, got {k}")));
    }
    Ok(())
}

/// `(n^k - {n + (k-1) z - k} (n - z)^{k-1}) / n^k`, attained exactly when `Z(R)^2 = 0`.
pub fn explicit_upper(n: u64, z: u64, k: u32) -> Result<ExactRational> {
    check_nz(n, z)?;
    check_k(k)?;
    let (nb, zb) = (int(n), int(z));
    let coeff = &nb + BigInt::from(k - 1) * &zb - BigInt::from(k);
    let num = pow(&nb, k) - coeff * pow(&(&nb - &zb), k - 1);
    Ok(ratio(num, pow(&nb, k)))
}

/// `zp_k` of a field of order `n`: `(n^k - (n-1)^k) / n^k`.
pub fn field_zp(n: u64, k: u32) -> Result<ExactRational> {
    if n < 2 {
        return Err(Error::invalid(format!("field order must be at least 2, got {n}")));
    }
    check_k(k)?;
    let nb = int(n);
    Ok(ratio(pow(&nb, k) - pow(&(&nb - 1), k), pow(&nb, k)))
}

fn check_prime_alpha(p: u64, alpha: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if alpha == 0 {
        return Err(Error::invalid("alpha must be at least 1"));
    }
    Ok(())
}

/// The sharp upper bound for local rings of order `p^alpha`:
/// `(p^{alpha-1} {p^k - (k+p-1)(p-1)^{k-1}} + k (p-1)^{k-1}) / p^{k+alpha-1}`.
pub fn bk(p: u64, alpha: u32, k: u32) -> Result<ExactRational> {
    check_prime_alpha(p, alpha)?;
    check_k(k)?;
    let pb = int(p);
    let pm1 = pow(&(&pb - 1), k - 1);
    let inner = pow(&pb, k) - BigInt::from(k as u64 + p - 1) * &pm1;
    let num = pow(&pb, alpha - 1) * inner + BigInt::from(k) * pm1;
    Ok(ratio(num, pow(&pb, k + alpha - 1)))
}

/// `zp_k(Z_p * (Z_p)^{alpha-1})`, obtained from [`explicit_upper`] with
/// `n = p^alpha` and `z = p^{alpha-1}` (its maximal ideal squares to zero).
pub fn idealization_zp(p: u64, alpha: u32, k: u32) -> Result<ExactRational> {
    check_prime_alpha(p, alpha)?;
    explicit_upper(p.pow(alpha), p.pow(alpha - 1), k)
}

fn check_distinct(factors: &[(u64, u32)]) -> Result<()> {
    if factors.is_empty() {
        return Err(Error::invalid("at least one prime factor is required"));
    }
    for (i, &(p, a)) in factors.iter().enumerate() {
        check_prime_alpha(p, a)?;
        if factors[..i].iter().any(|&(q, _)| q == p) {
            return Err(Error::invalid(format!("prime {p} repeated")));
        }
    }
    Ok(())
}

/// Product of [`bk`] over local factors of orders `p_i^{alpha_i}`, distinct primes.
pub fn t6_product_bound(factors: &[(u64, u32)], k: u32) -> Result<ExactRational> {
    check_distinct(factors)?;
    factors.iter().map(|&(p, a)| bk(p, a, k)).product()
}

/// Bounds valid for every ring of order `prod p_i^{alpha_i}`.
pub fn c2_bounds(factorization: &[(u64, u32)], k: u32) -> Result<BoundPair> {
    check_distinct(factorization)?;
    let lower =
        factorization.iter().map(|&(p, a)| field_zp(p.pow(a), k)).product::<Result<ExactRational>>()?;
    let upper = factorization.iter().map(|&(p, _)| field_zp(p, k)).product::<Result<ExactRational>>()?;
    Ok(BoundPair { lower, upper, source: (BoundId::C2Lower, BoundId::C2Upper) })
}
