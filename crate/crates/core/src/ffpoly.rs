//! Dense univariate polynomials over a prime field F_p.
//!
//! Coefficients are u64 residues, constant term first, with no trailing
//! zeros (the zero polynomial is an empty vector). Moduli are validated
//! once, at [`Prime`] construction, and never re-checked on the hot paths.

use std::fmt;

use crate::error::{Error, Result};
use crate::rng::RandomStream;

/// A prime modulus, validated at construction. Must fit in 62 bits so that
/// sums of two residues and (via u128) products never overflow.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Prime(u64);

impl Prime {
    pub const MAX_BITS: u32 = 62;

    pub fn new(p: u64) -> Result<Prime> {
        if p.leading_zeros() < 64 - Self::MAX_BITS {
            return Err(Error::usage(format!("modulus {p} needs more than 62 bits")));
        }
        if !is_prime_u64(p) {
            return Err(Error::usage(format!("modulus {p} is not prime")));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic Miller–Rabin; the listed witness set decides primality for
/// every u64 (Sinclair's bound extends past 2^64).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == small {
            return true;
        }
        if n % small == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

pub fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` mod prime `p`, via Fermat. `a` must be nonzero mod p.
pub fn inv_mod_prime(a: u64, p: Prime) -> u64 {
    debug_assert!(a % p.get() != 0, "inverse of zero");
    pow_mod_u64(a, p.get() - 2, p.get())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldPoly {
    p: Prime,
    /// Constant term first; empty means the zero polynomial.
    c: Vec<u64>,
}

impl FieldPoly {
    pub fn zero(p: Prime) -> FieldPoly {
        FieldPoly { p, c: Vec::new() }
    }

    pub fn one(p: Prime) -> FieldPoly {
        FieldPoly { p, c: vec![1] }
    }

    /// The monomial x.
    pub fn x(p: Prime) -> FieldPoly {
        FieldPoly { p, c: vec![0, 1] }
    }

    /// Builds from coefficients (constant term first), reducing mod p and
    /// trimming trailing zeros.
    pub fn from_coeffs(p: Prime, coeffs: impl Into<Vec<u64>>) -> FieldPoly {
        let mut c: Vec<u64> = coeffs.into();
        for v in &mut c {
            *v %= p.get();
        }
        let mut f = FieldPoly { p, c };
        f.trim();
        f
    }

    /// Uniform random *monic* polynomial of exactly the given degree.
    pub fn random_monic(p: Prime, degree: usize, stream: &mut RandomStream) -> FieldPoly {
        let mut c = Vec::with_capacity(degree + 1);
        for _ in 0..degree {
            c.push(stream.uniform(p.get()));
        }
        c.push(1);
        FieldPoly { p, c }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn modulus(&self) -> u64 {
        self.p.get()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn leading(&self) -> u64 {
        self.c.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
    }

    fn assert_same_field(&self, other: &FieldPoly) {
        assert_eq!(
            self.p, other.p,
            "mixed moduli {} and {} in polynomial arithmetic",
            self.p, other.p
        );
    }

    pub fn add(&self, other: &FieldPoly) -> FieldPoly {
        self.assert_same_field(other);
        let p = self.p.get();
        let n = self.c.len().max(other.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let mut v = self.coeff(i) + other.coeff(i);
            if v >= p {
                v -= p;
            }
            c.push(v);
        }
        let mut f = FieldPoly { p: self.p, c };
        f.trim();
        f
    }

    pub fn sub(&self, other: &FieldPoly) -> FieldPoly {
        self.assert_same_field(other);
        let p = self.p.get();
        let n = self.c.len().max(other.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let (a, b) = (self.coeff(i), other.coeff(i));
            c.push(if a >= b { a - b } else { a + p - b });
        }
        let mut f = FieldPoly { p: self.p, c };
        f.trim();
        f
    }

    pub fn neg(&self) -> FieldPoly {
        let p = self.p.get();
        let c = self.c.iter().map(|&a| if a == 0 { 0 } else { p - a }).collect();
        FieldPoly { p: self.p, c }
    }

    pub fn mul_scalar(&self, s: u64) -> FieldPoly {
        let p = self.p.get();
        let s = s % p;
        let c = self.c.iter().map(|&a| mul_mod_u64(a, s, p)).collect();
        let mut f = FieldPoly { p: self.p, c };
        f.trim();
        f
    }

    pub fn mul(&self, other: &FieldPoly) -> FieldPoly {
        self.assert_same_field(other);
        if self.is_zero() || other.is_zero() {
            return FieldPoly::zero(self.p);
        }
        let p = self.p.get();
        let (a, b) = (&self.c, &other.c);
        let mut c = vec![0u64; a.len() + b.len() - 1];
        if p < 1 << 32 {
            // Products fit in u64 and a u128 accumulator absorbs any
            // realistic number of terms, so reduce once per output
            // coefficient instead of once per term.
            for (k, out) in c.iter_mut().enumerate() {
                let lo = k.saturating_sub(b.len() - 1);
                let hi = k.min(a.len() - 1);
                let mut acc: u128 = 0;
                for i in lo..=hi {
                    acc += (a[i] * b[k - i]) as u128;
                }
                *out = (acc % p as u128) as u64;
            }
        } else {
            for (k, out) in c.iter_mut().enumerate() {
                let lo = k.saturating_sub(b.len() - 1);
                let hi = k.min(a.len() - 1);
                let mut acc: u64 = 0;
                for i in lo..=hi {
                    let t = mul_mod_u64(a[i], b[k - i], p);
                    acc += t;
                    if acc >= p {
                        acc -= p;
                    }
                }
                *out = acc;
            }
        }
        let mut f = FieldPoly { p: self.p, c };
        f.trim();
        f
    }

    /// Quotient and remainder; the divisor may be any nonzero polynomial.
    pub fn divrem(&self, d: &FieldPoly) -> Result<(FieldPoly, FieldPoly)> {
        self.assert_same_field(d);
        if d.is_zero() {
            return Err(Error::usage("division by the zero polynomial"));
        }
        let p = self.p.get();
        let dd = d.degree().unwrap();
        if self.degree().map_or(true, |n| n < dd) {
            return Ok((FieldPoly::zero(self.p), self.clone()));
        }
        let n = self.degree().unwrap();
        let inv_lc = inv_mod_prime(d.leading(), self.p);
        let mut r = self.c.clone();
        let mut q = vec![0u64; n - dd + 1];
        for k in (dd..=n).rev() {
            let t = mul_mod_u64(r[k], inv_lc, p);
            if t == 0 {
                continue;
            }
            q[k - dd] = t;
            for j in 0..=dd {
                let sub = mul_mod_u64(t, d.c[j], p);
                let idx = k - dd + j;
                r[idx] = if r[idx] >= sub { r[idx] - sub } else { r[idx] + p - sub };
            }
        }
        let mut rem = FieldPoly { p: self.p, c: r };
        rem.trim();
        let mut quo = FieldPoly { p: self.p, c: q };
        quo.trim();
        Ok((quo, rem))
    }

    pub fn rem(&self, d: &FieldPoly) -> Result<FieldPoly> {
        Ok(self.divrem(d)?.1)
    }

    /// Scales to leading coefficient 1; zero stays zero.
    pub fn make_monic(&self) -> FieldPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.mul_scalar(inv_mod_prime(self.leading(), self.p))
    }

    pub fn derivative(&self) -> FieldPoly {
        let p = self.p.get();
        let c: Vec<u64> = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| mul_mod_u64(i as u64 % p, a, p))
            .collect();
        let mut f = FieldPoly { p: self.p, c };
        f.trim();
        f
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p.get();
        let x = x % p;
        let mut acc = 0u64;
        for &a in self.c.iter().rev() {
            acc = mul_mod_u64(acc, x, p);
            acc += a;
            if acc >= p {
                acc -= p;
            }
        }
        acc
    }

    /// `self^exp mod m` by square-and-multiply; `m` must have degree >= 1.
    pub fn pow_mod(&self, mut exp: u64, m: &FieldPoly) -> Result<FieldPoly> {
        self.assert_same_field(m);
        if m.degree().map_or(true, |d| d < 1) {
            return Err(Error::usage("pow_mod modulus must have degree >= 1"));
        }
        let mut base = self.rem(m)?;
        let mut acc = FieldPoly::one(self.p).rem(m)?;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            base = base.mul(&base).rem(m)?;
            exp >>= 1;
        }
        Ok(acc)
    }

    /// For f with f' = 0 (every exponent with a nonzero coefficient is a
    /// multiple of p), returns g with g(x)^p = f(x). In F_p the coefficient
    /// p-th root is the coefficient itself (a^p = a), so this just
    /// reindexes. Exposed for the squarefree decomposition.
    pub fn pth_root(&self) -> Result<FieldPoly> {
        let p = self.p.get();
        let step = usize::try_from(p)
            .map_err(|_| Error::capacity("p-th root at a modulus beyond usize"))?;
        let mut c = Vec::with_capacity(self.c.len() / step + 1);
        for (i, &a) in self.c.iter().enumerate() {
            if i % step == 0 {
                c.push(a);
            } else if a != 0 {
                return Err(Error::internal(format!(
                    "p-th root of a polynomial with nonzero x^{i} term"
                )));
            }
        }
        let mut f = FieldPoly { p: self.p, c };
        f.trim();
        Ok(f)
    }
}

/// Monic gcd; errors on mixed moduli. gcd(0, 0) = 0.
pub fn poly_gcd(a: &FieldPoly, b: &FieldPoly) -> Result<FieldPoly> {
    if a.prime() != b.prime() {
        return Err(Error::ModulusMismatch(a.modulus(), b.modulus()));
    }
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let r = a.rem(&b)?;
        a = b;
        b = r;
    }
    Ok(a.make_monic())
}

impl fmt::Display for FieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 (mod {})", self.p);
        }
        let mut first = true;
        for (i, &a) in self.c.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{a}")?,
                1 if a == 1 => write!(f, "x")?,
                1 => write!(f, "{a}x")?,
                _ if a == 1 => write!(f, "x^{i}")?,
                _ => write!(f, "{a}x^{i}")?,
            }
            first = false;
        }
        write!(f, " (mod {})", self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    #[test]
    fn prime_validation() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(3).is_ok());
        assert!(Prime::new((1 << 61) - 1).is_ok()); // Mersenne
        assert!(Prime::new(0).is_err());
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(4).is_err());
        assert!(Prime::new(561).is_err()); // Carmichael
        assert!(Prime::new(1 << 62).is_err()); // too wide even if prime-sized
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        let naive = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        for n in 0..2000 {
            assert_eq!(is_prime_u64(n), naive(n), "n = {n}");
        }
        // strong pseudoprime to base 2
        assert!(!is_prime_u64(3215031751));
        assert!(is_prime_u64(4611686018427387847)); // 62-bit prime
    }

    #[test]
    fn construction_reduces_and_trims() {
        let f = FieldPoly::from_coeffs(p(5), vec![7, 10, 5]);
        assert_eq!(f.coeffs(), &[2]);
        assert_eq!(f.degree(), Some(0));
        assert!(FieldPoly::from_coeffs(p(5), vec![5, 10]).is_zero());
        assert_eq!(FieldPoly::zero(p(5)).degree(), None);
    }

    #[test]
    fn display_layout() {
        let f = FieldPoly::from_coeffs(p(7), vec![3, 1, 0, 2]);
        assert_eq!(f.to_string(), "2x^3 + x + 3 (mod 7)");
        assert_eq!(FieldPoly::zero(p(7)).to_string(), "0 (mod 7)");
    }

    #[test]
    fn mul_known_product() {
        // (x + 1)(x + 2) = x^2 + 3x + 2 over F_5
        let a = FieldPoly::from_coeffs(p(5), vec![1, 1]);
        let b = FieldPoly::from_coeffs(p(5), vec![2, 1]);
        assert_eq!(a.mul(&b).coeffs(), &[2, 3, 1]);
    }

    #[test]
    fn mul_wide_modulus_path() {
        // exercise the >= 2^32 modulus branch against small known values
        let q = p(4611686018427387847);
        let a = FieldPoly::from_coeffs(q, vec![q.get() - 1, 1]); // x - 1
        let b = FieldPoly::from_coeffs(q, vec![1, 1]); // x + 1
        assert_eq!(a.mul(&b).coeffs(), &[q.get() - 1, 0, 1]); // x^2 - 1
    }

    #[test]
    fn divrem_and_back() {
        let q = p(13);
        let f = FieldPoly::from_coeffs(q, vec![1, 0, 7, 3, 1]);
        let d = FieldPoly::from_coeffs(q, vec![4, 6]); // non-monic divisor
        let (quo, rem) = f.divrem(&d).unwrap();
        assert!(rem.degree().map_or(true, |r| r < d.degree().unwrap()));
        assert_eq!(quo.mul(&d).add(&rem), f);
        assert!(f.divrem(&FieldPoly::zero(q)).is_err());
    }

    #[test]
    fn gcd_of_known_factors() {
        let q = p(7);
        let a = FieldPoly::from_coeffs(q, vec![6, 1]); // x - 1
        let b = FieldPoly::from_coeffs(q, vec![1, 1]); // x + 1
        let f = a.mul(&b);
        let g = a.mul(&FieldPoly::from_coeffs(q, vec![2, 1]));
        assert_eq!(poly_gcd(&f, &g).unwrap(), a.make_monic());
        // coprime
        let h = poly_gcd(&b, &FieldPoly::from_coeffs(q, vec![2, 1])).unwrap();
        assert_eq!(h, FieldPoly::one(q));
        // mixed moduli rejected
        let other = FieldPoly::one(p(5));
        assert!(poly_gcd(&f, &other).is_err());
    }

    #[test]
    fn derivative_and_eval() {
        let q = p(11);
        // f = x^3 + 4x + 5, f' = 3x^2 + 4
        let f = FieldPoly::from_coeffs(q, vec![5, 4, 0, 1]);
        assert_eq!(f.derivative().coeffs(), &[4, 0, 3]);
        assert_eq!(f.eval(2), (8 + 8 + 5) % 11);
        // derivative kills p-th powers: d/dx of x^11 over F_11 is 0
        let mut c = vec![0u64; 12];
        c[11] = 1;
        assert!(FieldPoly::from_coeffs(q, c).derivative().is_zero());
    }

    #[test]
    fn pth_root_reindexes() {
        let q = p(3);
        // x^6 + 2x^3 + 1 = (x^2 + 2x + 1)^3 over F_3
        let f = FieldPoly::from_coeffs(q, vec![1, 0, 0, 2, 0, 0, 1]);
        let r = f.pth_root().unwrap();
        assert_eq!(r.coeffs(), &[1, 2, 1]);
        assert_eq!(r.mul(&r).mul(&r), f);
        // nonzero stray term is an internal error
        let bad = FieldPoly::from_coeffs(q, vec![1, 1, 0, 2]);
        assert!(bad.pth_root().is_err());
    }

    #[test]
    fn pow_mod_matches_repeated_mul() {
        let q = p(5);
        let m = FieldPoly::from_coeffs(q, vec![2, 0, 1]); // x^2 + 2
        let f = FieldPoly::from_coeffs(q, vec![1, 1]);
        let mut slow = FieldPoly::one(q);
        for _ in 0..9 {
            slow = slow.mul(&f).rem(&m).unwrap();
        }
        assert_eq!(f.pow_mod(9, &m).unwrap(), slow);
        assert_eq!(f.pow_mod(0, &m).unwrap(), FieldPoly::one(q));
    }

    #[test]
    fn random_monic_has_exact_degree() {
        let mut s = RandomStream::derive(5, 5, 5);
        for n in [1usize, 2, 7, 30] {
            let f = FieldPoly::random_monic(p(2), n, &mut s);
            assert_eq!(f.degree(), Some(n));
            assert!(f.is_monic());
        }
    }

    proptest! {
        #[test]
        fn ring_laws_f13(a in proptest::collection::vec(0u64..13, 0..8),
                         b in proptest::collection::vec(0u64..13, 0..8),
                         c in proptest::collection::vec(0u64..13, 0..8)) {
            let q = p(13);
            let (a, b, c) = (
                FieldPoly::from_coeffs(q, a),
                FieldPoly::from_coeffs(q, b),
                FieldPoly::from_coeffs(q, c),
            );
            // commutativity + distributivity + divrem round-trip
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            if !b.is_zero() {
                let (quo, rem) = a.divrem(&b).unwrap();
                prop_assert_eq!(quo.mul(&b).add(&rem), a.clone());
                if let Some(r) = rem.degree() {
                    prop_assert!(r < b.degree().unwrap());
                }
            }
            // eval is a ring homomorphism
            for x in 0..13 {
                prop_assert_eq!(a.mul(&b).eval(x), mul_mod_u64(a.eval(x), b.eval(x), 13));
                prop_assert_eq!(a.add(&b).eval(x), (a.eval(x) + b.eval(x)) % 13);
            }
        }
    }
}
