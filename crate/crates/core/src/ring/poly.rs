//! Dense polynomials over `Z_n`, used to build Galois fields and principal
//! quotients `Z_n[x]/(f)`.

use std::fmt;

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// A polynomial with coefficients reduced modulo `modulus`, ascending degree.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial has an
/// empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<u64>,
    modulus: u64,
}

impl Polynomial {
    pub fn new(coeffs: impl Into<Vec<u64>>, modulus: u64) -> Self {
        assert!(modulus >= 2, "polynomial modulus must be at least 2");
        let mut coeffs: Vec<u64> = coeffs.into();
        for c in coeffs.iter_mut() {
            *c %= modulus;
        }
        let mut p = Polynomial { coeffs, modulus };
        p.trim();
        p
    }

    /// Monic polynomial `x^deg + lower[deg-1] x^(deg-1) + ... + lower[0]`.
    pub fn monic_with_lower(lower: &[u64], modulus: u64) -> Self {
        let mut coeffs = lower.to_vec();
        coeffs.push(1);
        Polynomial::new(coeffs, modulus)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.modulus, other.modulus);
        if self.is_zero() || other.is_zero() {
            return Polynomial::new(Vec::new(), self.modulus);
        }
        let m = self.modulus as u128;
        let mut out = vec![0u128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u128 * b as u128) % m;
            }
        }
        Polynomial::new(out.into_iter().map(|c| c as u64).collect::<Vec<_>>(), self.modulus)
    }

    /// Remainder of division by a monic polynomial of degree at least 1.
    pub fn rem_monic(&self, divisor: &Polynomial) -> Polynomial {
        assert!(divisor.is_monic(), "divisor must be monic");
        let d = divisor.degree().expect("monic divisor is nonzero");
        let m = self.modulus;
        let mut rem = self.coeffs.clone();
        while rem.len() > d {
            let lead = *rem.last().unwrap();
            let shift = rem.len() - 1 - d;
            if lead != 0 {
                for (i, &c) in divisor.coeffs.iter().enumerate() {
                    let sub = (lead as u128 * c as u128 % m as u128) as u64;
                    rem[shift + i] = (rem[shift + i] + m - sub) % m;
                }
            }
            rem.pop();
        }
        Polynomial::new(rem, m)
    }

    /// Irreducibility over `Z_p` for prime `p`: no monic factor of degree
    /// `1..=deg/2` divides the polynomial.
    pub fn is_irreducible(&self) -> bool {
        let Some(deg) = self.degree() else {
            return false;
        };
        if deg == 0 || !is_prime(self.modulus) {
            return false;
        }
        let p = self.modulus;
        for d in 1..=deg / 2 {
            let count = p.pow(d as u32);
            for code in 0..count {
                let divisor = Polynomial::monic_with_lower(&digits(code, p, d), p);
                if self.rem_monic(&divisor).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Base-`base` digits of `code`, least significant first, padded to `len`.
pub(crate) fn digits(mut code: u64, base: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(code % base);
        code /= base;
    }
    out
}

/// The monic irreducible polynomial of degree `m` over `Z_p` whose lower
/// coefficients `c_0 + c_1 p + ... + c_{m-1} p^{m-1}` form the smallest integer.
///
/// This is the order of the polynomials' element encoding, so `x^2+x+1` comes
/// first for `(2, 2)` and `x^3+x+1` (not `x^3+x^2+1`) for `(2, 3)`.
pub fn smallest_irreducible(p: u64, m: u32) -> Result<Polynomial> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if m == 0 {
        return Err(Error::invalid("field degree must be at least 1"));
    }
    let count = p.checked_pow(m).ok_or_else(|| Error::invalid(format!("{p}^{m} overflows")))?;
    for code in 0..count {
        let f = Polynomial::monic_with_lower(&digits(code, p, m as usize), p);
        if f.is_irreducible() {
            return Ok(f);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Reducibility by explicit search for a factorization into two monic
    /// polynomials of positive degree, independent of `rem_monic`.
    fn reducible_by_products(f: &Polynomial) -> bool {
        let p = f.modulus();
        let deg = f.degree().unwrap();
        for d in 1..deg {
            for a in 0..p.pow(d as u32) {
                for b in 0..p.pow((deg - d) as u32) {
                    let g = Polynomial::monic_with_lower(&digits(a, p, d), p);
                    let h = Polynomial::monic_with_lower(&digits(b, p, deg - d), p);
                    if &g.mul(&h) == f {
                        return true;
                    }
                }
            }
        }
        false
    }

    #[test]
    fn smallest_irreducible_known_values() {
        assert_eq!(smallest_irreducible(2, 2).unwrap().to_string(), "x^2+x+1");
        assert_eq!(smallest_irreducible(2, 3).unwrap().to_string(), "x^3+x+1");
        assert_eq!(smallest_irreducible(3, 1).unwrap().to_string(), "x");
        assert_eq!(smallest_irreducible(3, 2).unwrap().to_string(), "x^2+1");
        assert!(smallest_irreducible(4, 2).is_err());
    }

    #[test]
    fn irreducibility_agrees_with_product_search() {
        for (p, deg) in [(2u64, 2usize), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
            for code in 0..p.pow(deg as u32) {
                let f = Polynomial::monic_with_lower(&digits(code, p, deg), p);
                assert_eq!(f.is_irreducible(), !reducible_by_products(&f), "{f} over Z_{p}");
            }
        }
    }

    #[test]
    fn remainder_and_display() {
        let f = Polynomial::new(vec![1, 1, 1], 2);
        let x3 = Polynomial::new(vec![0, 0, 0, 1], 2);
        // x^3 = x * x^2 = x(x+1) = x^2 + x = 1 mod x^2+x+1
        assert_eq!(x3.rem_monic(&f), Polynomial::new(vec![1], 2));
        assert_eq!(Polynomial::new(vec![4, 0, 2], 5).to_string(), "2x^2+4");
        assert_eq!(Polynomial::new(vec![6, 2], 3).to_string(), "2x");
        assert_eq!(Polynomial::new(vec![0, 0], 3).degree(), None);
    }
}
