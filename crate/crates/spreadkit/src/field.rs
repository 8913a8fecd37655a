//! Exact arithmetic in prime fields GF(p) and extension fields GF(p^e).
//!
//! Elements are packed integers in [0, q): the base-p digits of the packed
//! value are the coefficients of the residue polynomial with respect to the
//! polynomial basis (1, x, ..., x^{e-1}). For e = 1 an element is just the
//! residue. The modulus polynomial is chosen deterministically, so equal
//! (p, e) parameters always yield interchangeable contexts.

use crate::{Error, Result};

/// Cap on the field order q = p^e. Every parameter set of interest uses a
/// tiny q; the cap keeps exhaustive sweeps (inverses, Frobenius) cheap.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// A finite field GF(p^e). Immutable, cheap to copy, safe to share.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FieldCtx {
    p: u64,
    e: u32,
    q: u64,
    /// Monic irreducible modulus of degree e, packed with the coefficient of
    /// x^i in the i-th base-p digit (so its value lies in [p^e, 2*p^e)).
    modulus: u64,
}

impl FieldCtx {
    /// Builds GF(p^e), picking the lexicographically smallest monic
    /// irreducible modulus polynomial of degree e (coefficients compared
    /// from the highest degree down).
    pub fn new(p: u64, e: u32) -> Result<Self> {
        check_order(p, e)?;
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q = p.pow(e);
        let modulus = if e == 1 {
            // x itself: the smallest monic degree-1 polynomial.
            p
        } else {
            let mut found = None;
            for low in 0..q {
                let mut coeffs = to_digits(low, p, e as usize);
                coeffs.push(1);
                if is_irreducible(p, &coeffs) {
                    found = Some(low + q);
                    break;
                }
            }
            // A monic irreducible of every degree exists over any GF(p).
            found.expect("irreducible modulus exists")
        };
        Ok(FieldCtx { p, e, q, modulus })
    }

    /// Builds GF(p^e) over an explicitly given monic modulus polynomial,
    /// `coeffs[i]` holding the coefficient of x^i. Used when loading spread
    /// files that fix their own field representation.
    pub fn with_modulus(p: u64, e: u32, coeffs: &[u64]) -> Result<Self> {
        check_order(p, e)?;
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q = p.pow(e);
        if coeffs.len() != e as usize + 1 {
            return Err(Error::Parameter(format!(
                "modulus must have degree {e}, got {} coefficients",
                coeffs.len()
            )));
        }
        if coeffs[e as usize] != 1 {
            return Err(Error::Parameter("modulus must be monic".into()));
        }
        if coeffs.iter().any(|&c| c >= p) {
            return Err(Error::Parameter(format!("modulus coefficients must lie in [0, {p})")));
        }
        if e > 1 && !is_irreducible(p, coeffs) {
            return Err(Error::Parameter("modulus polynomial is reducible".into()));
        }
        let modulus = from_digits(coeffs, p);
        Ok(FieldCtx { p, e, q, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// The field order q = p^e.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients, constant term first (length e + 1, monic).
    pub fn modulus_coeffs(&self) -> Vec<u64> {
        to_digits(self.modulus, self.p, self.e as usize + 1)
    }

    pub fn is_element(&self, a: u64) -> bool {
        a < self.q
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        debug_assert!(self.is_element(a) && self.is_element(b));
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let mut out = 0;
        let mut scale = 1;
        let (mut x, mut y) = (a, b);
        for _ in 0..self.e {
            out += (x % self.p + y % self.p) % self.p * scale;
            x /= self.p;
            y /= self.p;
            scale *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u64) -> u64 {
        debug_assert!(self.is_element(a));
        if self.e == 1 {
            return (self.p - a) % self.p;
        }
        let mut out = 0;
        let mut scale = 1;
        let mut x = a;
        for _ in 0..self.e {
            out += (self.p - x % self.p) % self.p * scale;
            x /= self.p;
            scale *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        debug_assert!(self.is_element(a) && self.is_element(b));
        if self.e == 1 {
            return a * b % self.p;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        let e = self.e as usize;
        let x = to_digits(a, self.p, e);
        let y = to_digits(b, self.p, e);
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % self.p;
            }
        }
        let modulus = self.modulus_coeffs();
        poly_rem(&mut prod, &modulus, self.p);
        prod.truncate(e);
        from_digits(&prod, self.p)
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        // a^(q-2) = a^(-1) in GF(q).
        Ok(self.pow(a, self.q - 2))
    }

    pub fn pow(&self, a: u64, mut exp: u64) -> u64 {
        debug_assert!(self.is_element(a));
        let mut base = a;
        let mut out = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                out = self.mul(out, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        out
    }

    /// Coordinates of `a` with respect to the polynomial basis
    /// (1, x, ..., x^{e-1}); inverse of [`FieldCtx::from_base_coeffs`].
    pub fn expand_to_base(&self, a: u64) -> Vec<u64> {
        debug_assert!(self.is_element(a));
        to_digits(a, self.p, self.e as usize)
    }

    /// Packs base-field coordinates back into an element.
    pub fn from_base_coeffs(&self, coeffs: &[u64]) -> Result<u64> {
        if coeffs.len() != self.e as usize {
            return Err(Error::Parameter(format!(
                "expected {} coordinates, got {}",
                self.e,
                coeffs.len()
            )));
        }
        if coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::Parameter(format!("coordinates must lie in [0, {})", self.p)));
        }
        Ok(from_digits(coeffs, self.p))
    }
}

impl std::fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.e == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.e)
        }
    }
}

fn check_order(p: u64, e: u32) -> Result<()> {
    if e == 0 {
        return Err(Error::DegreeOutOfRange { p, e, cap: MAX_FIELD_ORDER });
    }
    let mut q: u64 = 1;
    for _ in 0..e {
        q = q.saturating_mul(p);
        if q > MAX_FIELD_ORDER {
            return Err(Error::DegreeOutOfRange { p, e, cap: MAX_FIELD_ORDER });
        }
    }
    Ok(())
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits q into (p, e) with p prime and q = p^e, if such a pair exists.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut rest = q;
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            return if rest == 1 { Some((p, e)) } else { None };
        }
        p += 1;
    }
    Some((q, 1))
}

fn to_digits(mut v: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(v % p);
        v /= p;
    }
    debug_assert_eq!(v, 0);
    out
}

fn from_digits(digits: &[u64], p: u64) -> u64 {
    let mut out = 0;
    for &d in digits.iter().rev() {
        out = out * p + d;
    }
    out
}

/// Reduces `a` modulo the monic polynomial `m` in place (coefficients mod p,
/// constant term first).
fn poly_rem(a: &mut [u64], m: &[u64], p: u64) {
    let deg_m = m.len() - 1;
    for i in (deg_m..a.len()).rev() {
        let c = a[i];
        if c == 0 {
            continue;
        }
        a[i] = 0;
        // Subtract c * x^(i - deg_m) * m.
        for (j, &mj) in m.iter().enumerate().take(deg_m) {
            let idx = i - deg_m + j;
            a[idx] = (a[idx] + (p - mj % p) * c) % p;
        }
    }
}

/// Exhaustive factor test: a monic polynomial of degree e is reducible iff
/// some monic polynomial of degree in [1, e/2] divides it.
fn is_irreducible(p: u64, poly: &[u64]) -> bool {
    let e = poly.len() - 1;
    debug_assert!(poly[e] == 1);
    if e == 1 {
        return true;
    }
    for d in 1..=e / 2 {
        let count = p.pow(d as u32);
        for low in 0..count {
            let mut div = to_digits(low, p, d);
            div.push(1);
            let mut rem = poly.to_vec();
            poly_rem(&mut rem, &div, p);
            if rem.iter().take(d).all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}
