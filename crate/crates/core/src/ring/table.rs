//! Materialized rings: dense element indices with explicit addition and
//! multiplication tables.

use super::expr::RingExpr;
use super::poly::{digits, smallest_irreducible, Polynomial};
use crate::arith::{factorize, mod_inverse};
use crate::error::{Error, Result};

/// Default cap on the number of elements of a materialized ring.
pub const DEFAULT_MAX_ORDER: usize = 4096;

/// A finite ring stored as `n x n` addition and multiplication tables over the
/// element indices `0..n`.
///
/// Instances built by [`RingBuilder`] always satisfy the ring axioms; tables
/// supplied through [`TableRing::from_tables`] are taken as-is and should be
/// checked with [`validate_ring`](super::validate_ring).
#[derive(Debug, Clone)]
pub struct TableRing {
    n: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    zero: usize,
    one: usize,
    label: String,
    origin: Option<RingExpr>,
}

impl TableRing {
    /// Wraps raw row-major tables. Only the shape is checked.
    pub fn from_tables(
        n: usize,
        add: Vec<u32>,
        mul: Vec<u32>,
        zero: usize,
        one: usize,
        label: impl Into<String>,
    ) -> Result<Self> {
        if n == 0 || add.len() != n * n || mul.len() != n * n {
            return Err(Error::invalid(format!("tables must be {n}x{n}")));
        }
        if zero >= n || one >= n {
            return Err(Error::IndexOutOfRange { index: zero.max(one), order: n });
        }
        Ok(TableRing { n, add, mul, zero, one, label: label.into(), origin: None })
    }

    fn tabulate(
        n: usize,
        zero: usize,
        one: usize,
        label: String,
        origin: Option<RingExpr>,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let mut add_t = vec![0u32; n * n];
        let mut mul_t = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let s = add(a, b) as u32;
                let p = mul(a, b) as u32;
                add_t[a * n + b] = s;
                add_t[b * n + a] = s;
                mul_t[a * n + b] = p;
                mul_t[b * n + a] = p;
            }
        }
        TableRing { n, add: add_t, mul: mul_t, zero, one, label, origin }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn origin(&self) -> Option<&RingExpr> {
        self.origin.as_ref()
    }

    /// Row-major addition table.
    pub fn add_table(&self) -> &[u32] {
        &self.add
    }

    /// Row-major multiplication table.
    pub fn mul_table(&self) -> &[u32] {
        &self.mul
    }

    /// Multiplication row of `a`: entry `b` is `a * b`.
    #[inline]
    pub fn mul_row(&self, a: usize) -> &[u32] {
        &self.mul[a * self.n..(a + 1) * self.n]
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn check_index(&self, x: usize) -> Result<()> {
        if x < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: x, order: self.n })
        }
    }

    /// `c * x` as an iterated sum.
    pub fn scalar(&self, c: u64, x: usize) -> usize {
        let mut acc = self.zero;
        for _ in 0..c {
            acc = self.add(acc, x);
        }
        acc
    }

    /// Order of `x` in the additive group.
    pub fn additive_order(&self, x: usize) -> usize {
        let mut acc = x;
        let mut k = 1;
        while acc != self.zero {
            acc = self.add(acc, x);
            k += 1;
        }
        k
    }

    /// Additive order of the identity.
    pub fn characteristic(&self) -> usize {
        self.additive_order(self.one)
    }

    pub fn is_unit(&self, x: usize) -> bool {
        self.mul_row(x).iter().any(|&y| y as usize == self.one)
    }
}

/// Builds rings under a cap on the number of elements.
#[derive(Debug, Clone, Copy)]
pub struct RingBuilder {
    pub max_order: usize,
}

impl Default for RingBuilder {
    fn default() -> Self {
        RingBuilder { max_order: DEFAULT_MAX_ORDER }
    }
}

impl RingBuilder {
    pub fn with_max_order(max_order: usize) -> Self {
        RingBuilder { max_order }
    }

    fn check_cap(&self, order: Option<u128>) -> Result<usize> {
        let cap = self.max_order as u128;
        match order {
            Some(n) if n <= cap => Ok(n as usize),
            Some(n) => Err(Error::Capacity { what: "ring order", requested: n, cap }),
            None => Err(Error::Capacity { what: "ring order", requested: u128::MAX, cap }),
        }
    }

    pub fn zn(&self, n: u64) -> Result<TableRing> {
        let expr = RingExpr::Zn(n);
        expr.check()?;
        let size = self.check_cap(expr.order())?;
        Ok(TableRing::tabulate(
            size,
            0,
            1,
            expr.to_string(),
            Some(expr),
            |a, b| (a + b) % size,
            |a, b| ((a as u64 * b as u64) % n) as usize,
        ))
    }

    pub fn gf(&self, p: u64, m: u32, poly: Option<Polynomial>) -> Result<TableRing> {
        let expr = RingExpr::Gf { p, m, poly: poly.clone() };
        expr.check()?;
        self.check_cap(expr.order())?;
        let modulus = match poly {
            Some(f) => f,
            None => smallest_irreducible(p, m)?,
        };
        let ring = self.polynomial_quotient(p, &modulus)?;
        Ok(ring.relabel(expr))
    }

    pub fn quotient(&self, n: u64, poly: Polynomial) -> Result<TableRing> {
        let expr = RingExpr::quotient(n, poly.clone());
        expr.check()?;
        self.check_cap(expr.order())?;
        Ok(self.polynomial_quotient(n, &poly)?.relabel(expr))
    }

    /// `Z_n[x]/(f)` with elements encoded as `c_0 + c_1 n + ... + c_{d-1} n^{d-1}`.
    fn polynomial_quotient(&self, n: u64, f: &Polynomial) -> Result<TableRing> {
        let d = f.degree().unwrap_or(0);
        let size = self.check_cap((n as u128).checked_pow(d as u32))?;
        let elems: Vec<Polynomial> = (0..size as u64).map(|c| Polynomial::new(digits(c, n, d), n)).collect();
        let encode =
            |p: &Polynomial| -> usize { (0..d).rev().fold(0u64, |acc, i| acc * n + p.coeff(i)) as usize };
        let ring = TableRing::tabulate(
            size,
            0,
            1,
            String::new(),
            None,
            |a, b| {
                let da = digits(a as u64, n, d);
                let db = digits(b as u64, n, d);
                let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % n).collect();
                encode(&Polynomial::new(sum, n))
            },
            |a, b| encode(&elems[a].mul(&elems[b]).rem_monic(f)),
        );
        Ok(ring)
    }

    pub fn product(&self, r1: &TableRing, r2: &TableRing) -> Result<TableRing> {
        let size = self.check_cap((r1.n as u128).checked_mul(r2.n as u128))?;
        let n2 = r2.n;
        let split = |x: usize| (x / n2, x % n2);
        let origin = match (r1.origin.clone(), r2.origin.clone()) {
            (Some(a), Some(b)) => Some(RingExpr::product(a, b)),
            _ => None,
        };
        let label = match &origin {
            Some(e) => e.to_string(),
            None => format!("{} x ({})", r1.label, r2.label),
        };
        Ok(TableRing::tabulate(
            size,
            r1.zero * n2 + r2.zero,
            r1.one * n2 + r2.one,
            label,
            origin,
            |a, b| {
                let ((a1, a2), (b1, b2)) = (split(a), split(b));
                r1.add(a1, b1) * n2 + r2.add(a2, b2)
            },
            |a, b| {
                let ((a1, a2), (b1, b2)) = (split(a), split(b));
                r1.mul(a1, b1) * n2 + r2.mul(a2, b2)
            },
        ))
    }

    /// `Z_n * (Z_{d_1} x ... x Z_{d_s})` with action `r m_i = (r mod d_i) m_i`.
    ///
    /// Element `(r, m)` has index `r * |M| + code(m)`, where `code` is mixed
    /// radix with the first component most significant.
    pub fn idealize(&self, n: u64, moduli: &[u64]) -> Result<TableRing> {
        let expr = RingExpr::idealize(n, moduli.to_vec());
        expr.check()?;
        let size = self.check_cap(expr.order())?;
        let module_size: u64 = moduli.iter().product();
        let decode = |code: u64| -> Vec<u64> {
            let mut rest = code;
            let mut out = vec![0; moduli.len()];
            for (slot, &d) in out.iter_mut().zip(moduli).rev() {
                *slot = rest % d;
                rest /= d;
            }
            out
        };
        let encode = |m: &[u64]| -> u64 { m.iter().zip(moduli).fold(0, |acc, (x, d)| acc * d + x) };
        let split = |x: usize| ((x as u64) / module_size, decode(x as u64 % module_size));
        Ok(TableRing::tabulate(
            size,
            0,
            module_size as usize,
            expr.to_string(),
            Some(expr.clone()),
            |a, b| {
                let ((ra, ma), (rb, mb)) = (split(a), split(b));
                let m: Vec<u64> = ma.iter().zip(&mb).zip(moduli).map(|((x, y), d)| (x + y) % d).collect();
                (((ra + rb) % n) * module_size + encode(&m)) as usize
            },
            |a, b| {
                let ((ra, ma), (rb, mb)) = (split(a), split(b));
                let m: Vec<u64> = ma
                    .iter()
                    .zip(&mb)
                    .zip(moduli)
                    .map(|((x, y), &d)| ((ra % d) * y + (rb % d) * x) % d)
                    .collect();
                (((ra * rb) % n) * module_size + encode(&m)) as usize
            },
        ))
    }

    /// `R * R^t` with componentwise ring multiplication as the action.
    ///
    /// Element `(r, m_1, ..., m_t)` has index `r |R|^t + m_1 + m_2 |R| + ... + m_t |R|^{t-1}`.
    pub fn idealize_power(&self, base: &TableRing, t: u32) -> Result<TableRing> {
        if t == 0 {
            return Err(Error::invalid("Ideal: module power must be at least 1"));
        }
        let b = base.n;
        let size = self.check_cap((b as u128).checked_pow(t + 1))?;
        let module_size = b.pow(t);
        let split = |x: usize| -> (usize, Vec<u64>) {
            (x / module_size, digits((x % module_size) as u64, b as u64, t as usize))
        };
        let encode = |m: &[usize]| -> usize { m.iter().rev().fold(0, |acc, &x| acc * b + x) };
        let origin = base.origin.clone().map(|e| RingExpr::idealize_power(e, t));
        let label = match &origin {
            Some(e) => e.to_string(),
            None => format!("Ideal({},{t})", base.label),
        };
        let zero = base.zero * module_size + encode(&vec![base.zero; t as usize]);
        let one = base.one * module_size + encode(&vec![base.zero; t as usize]);
        Ok(TableRing::tabulate(
            size,
            zero,
            one,
            label,
            origin,
            |x, y| {
                let ((rx, mx), (ry, my)) = (split(x), split(y));
                let m: Vec<usize> =
                    mx.iter().zip(&my).map(|(&a, &c)| base.add(a as usize, c as usize)).collect();
                base.add(rx, ry) * module_size + encode(&m)
            },
            |x, y| {
                let ((rx, mx), (ry, my)) = (split(x), split(y));
                let m: Vec<usize> = mx
                    .iter()
                    .zip(&my)
                    .map(|(&a, &c)| base.add(base.mul(rx, c as usize), base.mul(ry, a as usize)))
                    .collect();
                base.mul(rx, ry) * module_size + encode(&m)
            },
        ))
    }

    /// Recursively builds the tables of `expr`.
    pub fn materialize(&self, expr: &RingExpr) -> Result<TableRing> {
        expr.check()?;
        self.check_cap(expr.order())?;
        match expr {
            RingExpr::Zn(n) => self.zn(*n),
            RingExpr::Gf { p, m, poly } => self.gf(*p, *m, poly.clone()),
            RingExpr::Quotient { n, poly } => self.quotient(*n, poly.clone()),
            RingExpr::Product(a, b) => {
                let ra = self.materialize(a)?;
                let rb = self.materialize(b)?;
                self.product(&ra, &rb)
            }
            RingExpr::Idealize { n, moduli } => self.idealize(*n, moduli),
            RingExpr::IdealizePower { base, t } => {
                let rb = self.materialize(base)?;
                self.idealize_power(&rb, *t)
            }
        }
    }
}

impl TableRing {
    fn relabel(mut self, expr: RingExpr) -> TableRing {
        self.label = expr.to_string();
        self.origin = Some(expr);
        self
    }

    /// Restriction of the tables to `elements`, which must be closed under
    /// both operations and contain `zero`; `one` becomes the new identity.
    fn restrict(&self, elements: &[usize], one: usize, label: String) -> TableRing {
        let mut index = vec![usize::MAX; self.n];
        for (i, &e) in elements.iter().enumerate() {
            index[e] = i;
        }
        let m = elements.len();
        let mut add = vec![0u32; m * m];
        let mut mul = vec![0u32; m * m];
        for (i, &a) in elements.iter().enumerate() {
            for (j, &b) in elements.iter().enumerate() {
                add[i * m + j] = index[self.add(a, b)] as u32;
                mul[i * m + j] = index[self.mul(a, b)] as u32;
            }
        }
        TableRing { n: m, add, mul, zero: index[self.zero], one: index[one], label, origin: None }
    }
}

/// One factor `R_p` of the decomposition of a ring into rings of prime-power order.
#[derive(Debug, Clone)]
pub struct PrimaryComponent {
    pub prime: u64,
    pub exponent: u32,
    pub ring: TableRing,
}

/// Splits `R` into its `p`-primary components `R_p = {x : p^a x = 0}`, where
/// `|R| = prod p^a`. Each component is a ring whose identity is the image of 1.
/// `R` is isomorphic to the product of its components.
pub fn primary_components(ring: &TableRing) -> Vec<PrimaryComponent> {
    let n = ring.n as u64;
    let factors = factorize(n);
    if factors.len() == 1 {
        let (prime, exponent) = factors[0];
        return vec![PrimaryComponent { prime, exponent, ring: ring.clone() }];
    }
    factors
        .into_iter()
        .map(|(prime, exponent)| {
            let q = prime.pow(exponent);
            let cofactor = n / q;
            let elements: Vec<usize> = ring.elements().filter(|&x| ring.scalar(q, x) == ring.zero).collect();
            // c = 1 mod q and c = 0 mod n/q, so c * 1 is the component identity
            let c = cofactor * mod_inverse(cofactor % q, q).expect("coprime cofactor") % n;
            let one = ring.scalar(c, ring.one);
            let label = format!("{}[{prime}-part]", ring.label);
            PrimaryComponent { prime, exponent, ring: ring.restrict(&elements, one, label) }
        })
        .collect()
}

pub fn build_zn(n: u64) -> Result<TableRing> {
    RingBuilder::default().zn(n)
}

pub fn build_gf(p: u64, m: u32, poly: Option<Polynomial>) -> Result<TableRing> {
    RingBuilder::default().gf(p, m, poly)
}

pub fn build_quotient(n: u64, poly: Polynomial) -> Result<TableRing> {
    RingBuilder::default().quotient(n, poly)
}

pub fn build_product(r1: &TableRing, r2: &TableRing) -> Result<TableRing> {
    RingBuilder::default().product(r1, r2)
}

/// Builds either idealization form; any other expression is rejected.
pub fn build_idealization(expr: &RingExpr) -> Result<TableRing> {
    match expr {
        RingExpr::Idealize { .. } | RingExpr::IdealizePower { .. } => materialize(expr),
        other => Err(Error::invalid(format!("{other} is not an idealization"))),
    }
}

pub fn materialize(expr: &RingExpr) -> Result<TableRing> {
    RingBuilder::default().materialize(expr)
}
