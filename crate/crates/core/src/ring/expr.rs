use std::fmt;

use super::poly::Polynomial;
use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Construction tree for a finite commutative ring.
///
/// Products keep their factored shape so that zero-product probabilities can
/// be computed factor by factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingExpr {
    /// Integers modulo `n`.
    Zn(u64),
    /// The field with `p^m` elements, as `Z_p[x]/(poly)`.
    Gf {
        p: u64,
        m: u32,
        poly: Option<Polynomial>,
    },
    /// `Z_n[x]/(poly)` for a monic `poly`.
    Quotient {
        n: u64,
        poly: Polynomial,
    },
    Product(Box<RingExpr>, Box<RingExpr>),
    /// `Z_n * (Z_{d_1} x ... x Z_{d_s})`, each `d_i | n`.
    Idealize {
        n: u64,
        moduli: Vec<u64>,
    },
    /// `base * base^t` with the ring multiplication as the module action.
    IdealizePower {
        base: Box<RingExpr>,
        t: u32,
    },
}

impl RingExpr {
    pub fn zn(n: u64) -> Self {
        RingExpr::Zn(n)
    }

    pub fn gf(p: u64, m: u32) -> Self {
        RingExpr::Gf { p, m, poly: None }
    }

    pub fn quotient(n: u64, poly: Polynomial) -> Self {
        RingExpr::Quotient { n, poly }
    }

    pub fn product(left: RingExpr, right: RingExpr) -> Self {
        RingExpr::Product(Box::new(left), Box::new(right))
    }

    /// Left-nested product of all `factors`; panics on an empty list.
    pub fn product_of(factors: impl IntoIterator<Item = RingExpr>) -> Self {
        let mut it = factors.into_iter();
        let first = it.next().expect("product needs at least one factor");
        it.fold(first, RingExpr::product)
    }

    pub fn idealize(n: u64, moduli: impl Into<Vec<u64>>) -> Self {
        RingExpr::Idealize { n, moduli: moduli.into() }
    }

    pub fn idealize_power(base: RingExpr, t: u32) -> Self {
        RingExpr::IdealizePower { base: Box::new(base), t }
    }

    /// Checks every parameter constraint without building tables.
    pub fn check(&self) -> Result<()> {
        match self {
            RingExpr::Zn(n) => {
                if *n < 2 {
                    return Err(Error::invalid(format!("Z{n}: modulus must be at least 2")));
                }
            }
            RingExpr::Gf { p, m, poly } => {
                if !is_prime(*p) {
                    return Err(Error::invalid(format!("GF: {p} is not prime")));
                }
                if *m == 0 {
                    return Err(Error::invalid("GF: degree must be at least 1"));
                }
                if let Some(f) = poly {
                    if f.modulus() != *p {
                        return Err(Error::invalid(format!(
                            "GF: polynomial is over Z{} but the field is over Z{p}",
                            f.modulus()
                        )));
                    }
                    if !f.is_monic() || f.degree() != Some(*m as usize) {
                        return Err(Error::invalid(format!("GF({p}^{m}): {f} is not monic of degree {m}")));
                    }
                    if !f.is_irreducible() {
                        return Err(Error::invalid(format!("GF({p}^{m}): {f} is reducible over Z{p}")));
                    }
                }
            }
            RingExpr::Quotient { n, poly } => {
                if *n < 2 {
                    return Err(Error::invalid(format!("Zq: modulus {n} must be at least 2")));
                }
                if poly.modulus() != *n {
                    return Err(Error::invalid("Zq: polynomial modulus mismatch"));
                }
                if !poly.is_monic() || poly.degree().unwrap_or(0) < 1 {
                    return Err(Error::invalid(format!(
                        "Zq({n}): {poly} must be monic of degree at least 1"
                    )));
                }
            }
            RingExpr::Product(a, b) => {
                a.check()?;
                b.check()?;
            }
            RingExpr::Idealize { n, moduli } => {
                if *n < 2 {
                    return Err(Error::invalid(format!("Ideal: base modulus {n} must be at least 2")));
                }
                if moduli.is_empty() {
                    return Err(Error::invalid("Ideal: at least one module component is required"));
                }
                for &d in moduli {
                    if d < 2 {
                        return Err(Error::invalid(format!("Ideal: component Z{d} is trivial")));
                    }
                    if n % d != 0 {
                        return Err(Error::invalid(format!("Ideal: {d} does not divide {n}")));
                    }
                }
            }
            RingExpr::IdealizePower { base, t } => {
                if *t == 0 {
                    return Err(Error::invalid("Ideal: module power must be at least 1"));
                }
                base.check()?;
            }
        }
        Ok(())
    }

    /// Number of elements, or `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        match self {
            RingExpr::Zn(n) => Some(*n as u128),
            RingExpr::Gf { p, m, .. } => (*p as u128).checked_pow(*m),
            RingExpr::Quotient { n, poly } => (*n as u128).checked_pow(poly.degree()? as u32),
            RingExpr::Product(a, b) => a.order()?.checked_mul(b.order()?),
            RingExpr::Idealize { n, moduli } => {
                moduli.iter().try_fold(*n as u128, |acc, &d| acc.checked_mul(d as u128))
            }
            RingExpr::IdealizePower { base, t } => base.order()?.checked_pow(t + 1),
        }
    }

    /// The factors of a (possibly nested) product, left to right. A
    /// non-product expression is its own single factor.
    pub fn factors(&self) -> Vec<&RingExpr> {
        let mut out = Vec::new();
        fn walk<'a>(e: &'a RingExpr, out: &mut Vec<&'a RingExpr>) {
            match e {
                RingExpr::Product(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                other => out.push(other),
            }
        }
        walk(self, &mut out);
        out
    }

    pub fn is_product(&self) -> bool {
        matches!(self, RingExpr::Product(..))
    }

    pub fn is_idealization(&self) -> bool {
        matches!(self, RingExpr::Idealize { .. } | RingExpr::IdealizePower { .. })
    }
}

/// Prints the expression in the textual grammar accepted by
/// [`parse_expr`](super::parse_expr).
impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Zn(n) => write!(f, "Z{n}"),
            RingExpr::Gf { p, m, poly: None } => write!(f, "GF({p}^{m})"),
            RingExpr::Gf { p, m, poly: Some(poly) } => write!(f, "GF({p},{m},{poly})"),
            RingExpr::Quotient { n, poly } => write!(f, "Zq({n},{poly})"),
            RingExpr::Product(a, b) => {
                if b.is_product() {
                    write!(f, "{a} x ({b})")
                } else {
                    write!(f, "{a} x {b}")
                }
            }
            RingExpr::Idealize { n, moduli } => {
                let parts: Vec<String> = moduli.iter().map(u64::to_string).collect();
                write!(f, "Ideal(Z{n},[{}])", parts.join(","))
            }
            RingExpr::IdealizePower { base, t } => write!(f, "Ideal({base},{t})"),
        }
    }
}
