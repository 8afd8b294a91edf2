//! Integer polynomials of bounded height: sampling models, the line-based
//! text format, reduction mod p, and exact resultants/discriminants via the
//! subresultant polynomial remainder sequence.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_perfect_square, log_abs};
use crate::error::{Error, Result};
use crate::factor::squarefree_decomposition;
use crate::ffpoly::{FieldPoly, Prime};
use crate::rng::RandomStream;
use crate::sturm::real_root_count;

/// Dense polynomial over ℤ, constant term first, no trailing zeros.
/// "Monic" is a derived property (leading coefficient == 1), not a stored
/// flag, so it can never go stale.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntPoly {
    c: Vec<BigInt>,
}

/// How the non-leading coefficients of a sampled monic polynomial are drawn.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CoefficientModel {
    /// Uniform integers in `low..=high`.
    UniformRange { low: i64, high: i64 },
    /// ±1 with equal probability.
    PlusMinusOne,
    /// 0 or 1 with equal probability; optionally force the constant term
    /// to 1 (so x never divides the sample).
    ZeroOne { constant_term_one: bool },
}

impl CoefficientModel {
    pub fn validate(&self) -> Result<()> {
        match self {
            CoefficientModel::UniformRange { low, high } if low > high => Err(Error::usage(
                format!("empty coefficient range {low}..={high}"),
            )),
            _ => Ok(()),
        }
    }

    fn draw(&self, stream: &mut RandomStream) -> i64 {
        match *self {
            CoefficientModel::UniformRange { low, high } => stream.uniform_range_i64(low, high),
            CoefficientModel::PlusMinusOne => {
                if stream.uniform(2) == 0 {
                    -1
                } else {
                    1
                }
            }
            CoefficientModel::ZeroOne { .. } => stream.uniform(2) as i64,
        }
    }
}

impl fmt::Display for CoefficientModel {
    /// Canonical config-file spelling.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientModel::UniformRange { low, high } => write!(f, "uniform:{low}:{high}"),
            CoefficientModel::PlusMinusOne => write!(f, "pm_one"),
            CoefficientModel::ZeroOne { constant_term_one: true } => write!(f, "zero_one_c1"),
            CoefficientModel::ZeroOne { constant_term_one: false } => write!(f, "zero_one"),
        }
    }
}

impl std::str::FromStr for CoefficientModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<CoefficientModel> {
        match s {
            "pm_one" => Ok(CoefficientModel::PlusMinusOne),
            "zero_one" => Ok(CoefficientModel::ZeroOne { constant_term_one: false }),
            "zero_one_c1" => Ok(CoefficientModel::ZeroOne { constant_term_one: true }),
            other => {
                if let Some(rest) = other.strip_prefix("uniform:") {
                    let (lo, hi) = rest
                        .split_once(':')
                        .ok_or_else(|| Error::usage(format!("bad model '{other}'")))?;
                    let low: i64 = lo
                        .parse()
                        .map_err(|_| Error::usage(format!("bad model bound '{lo}'")))?;
                    let high: i64 = hi
                        .parse()
                        .map_err(|_| Error::usage(format!("bad model bound '{hi}'")))?;
                    let m = CoefficientModel::UniformRange { low, high };
                    m.validate()?;
                    Ok(m)
                } else {
                    Err(Error::usage(format!(
                        "unknown coefficient model '{other}' \
                         (expected uniform:LOW:HIGH, pm_one, zero_one, zero_one_c1)"
                    )))
                }
            }
        }
    }
}

impl IntPoly {
    pub fn zero() -> IntPoly {
        IntPoly { c: Vec::new() }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> IntPoly {
        let mut f = IntPoly { c: coeffs };
        f.trim();
        f
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_coeffs(coeffs.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// Monic degree-n sample with lower coefficients drawn i.i.d. from the
    /// model (and the constant term forced when the model says so).
    pub fn sample(n: usize, model: &CoefficientModel, stream: &mut RandomStream) -> IntPoly {
        assert!(n >= 1, "sampling needs degree >= 1");
        let mut c = Vec::with_capacity(n + 1);
        for i in 0..n {
            let forced_one = i == 0
                && matches!(model, CoefficientModel::ZeroOne { constant_term_one: true });
            let v = if forced_one { 1 } else { model.draw(stream) };
            c.push(BigInt::from(v));
        }
        c.push(BigInt::one());
        IntPoly { c }
    }

    /// Parses the batch line format: base-10 integer coefficients separated
    /// by whitespace, constant term first, leading term last. Trailing zero
    /// coefficients are trimmed.
    pub fn parse_line(line: &str) -> Result<IntPoly> {
        let mut c = Vec::new();
        for tok in line.split_whitespace() {
            let v: BigInt = tok
                .parse()
                .map_err(|_| Error::usage(format!("bad coefficient '{tok}'")))?;
            c.push(v);
        }
        if c.is_empty() {
            return Err(Error::usage("empty polynomial line"));
        }
        Ok(IntPoly::from_coeffs(c))
    }

    /// Inverse of [`IntPoly::parse_line`] (modulo trimming): same format,
    /// single spaces. The zero polynomial renders as "0".
    pub fn to_line(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.c
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.c.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn leading(&self) -> BigInt {
        self.c.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().map_or(false, |v| v.is_one())
    }

    fn trim(&mut self) {
        while self.c.last().map_or(false, |v| v.is_zero()) {
            self.c.pop();
        }
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.c.len().max(other.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(self.coeff(i) + other.coeff(i));
        }
        IntPoly::from_coeffs(c)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.c.len().max(other.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(self.coeff(i) - other.coeff(i));
        }
        IntPoly::from_coeffs(c)
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly { c: self.c.iter().map(|v| -v).collect() }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(c)
    }

    pub fn mul_scalar(&self, s: &BigInt) -> IntPoly {
        if s.is_zero() {
            return IntPoly::zero();
        }
        IntPoly { c: self.c.iter().map(|v| v * s).collect() }
    }

    /// Exact scalar division; panics if any coefficient is not divisible
    /// (that would be an arithmetic invariant violation, not bad input).
    fn div_exact_scalar(&self, s: &BigInt) -> IntPoly {
        assert!(!s.is_zero());
        IntPoly {
            c: self
                .c
                .iter()
                .map(|v| {
                    let (q, r) = v.div_rem(s);
                    assert!(r.is_zero(), "inexact scalar division in remainder sequence");
                    q
                })
                .collect(),
        }
    }

    /// `self * x^k`.
    fn shifted(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.c.iter().cloned());
        IntPoly { c }
    }

    pub fn derivative(&self) -> IntPoly {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a * BigInt::from(i as u64))
            .collect();
        IntPoly::from_coeffs(c)
    }

    /// gcd of the coefficients, nonnegative; 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for v in &self.c {
            g = g.gcd(v);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// self / content (sign of the leading coefficient preserved).
    pub fn primitive_part(&self) -> IntPoly {
        let ct = self.content();
        if ct.is_zero() || ct.is_one() {
            return self.clone();
        }
        self.div_exact_scalar(&ct)
    }

    /// Division with remainder by a *monic* divisor, which keeps everything
    /// in ℤ[x]. Used to verify candidate divisors exactly.
    pub fn divrem_monic(&self, d: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        if !d.is_monic() {
            return Err(Error::usage("divrem_monic needs a monic divisor"));
        }
        let dd = d.degree().unwrap();
        let mut r = self.c.clone();
        let n = match self.degree() {
            Some(n) if n >= dd => n,
            _ => return Ok((IntPoly::zero(), self.clone())),
        };
        let mut q = vec![BigInt::zero(); n - dd + 1];
        for k in (dd..=n).rev() {
            let t = std::mem::replace(&mut r[k], BigInt::zero());
            if t.is_zero() {
                continue;
            }
            for j in 0..dd {
                let delta = &t * &d.c[j];
                r[k - dd + j] -= delta;
            }
            q[k - dd] = t;
        }
        Ok((IntPoly::from_coeffs(q), IntPoly::from_coeffs(r)))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    /// Coefficientwise reduction of a monic polynomial mod p; the result is
    /// monic of the same degree.
    pub fn reduce_mod(&self, p: Prime) -> FieldPoly {
        assert!(self.is_monic(), "reduce_mod is defined for monic inputs");
        let pb = BigInt::from(p.get());
        let coeffs: Vec<u64> = self
            .c
            .iter()
            .map(|v| {
                let r = v.mod_floor(&pb);
                u64::try_from(r).expect("residue fits by construction")
            })
            .collect();
        FieldPoly::from_coeffs(p, coeffs)
    }

    /// Degree of the squarefull part of the reduction mod p: with
    /// red_p(f) = Π g_j^j (squarefree decomposition), this is
    /// Σ_{j >= 2} j · deg g_j.
    pub fn squarefull_degree(&self, p: Prime) -> usize {
        let red = self.reduce_mod(p);
        let parts = squarefree_decomposition(&red)
            .expect("reduction of a monic polynomial is nonzero");
        parts
            .iter()
            .filter(|(_, m)| *m >= 2)
            .map(|(g, m)| m * g.degree().unwrap_or(0))
            .sum()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let mag = a.abs();
            if first {
                if a.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if a.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                1 if mag.is_one() => write!(f, "x")?,
                1 => write!(f, "{mag}x")?,
                _ if mag.is_one() => write!(f, "x^{i}")?,
                _ => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Pseudo-remainder: the unique r with lc(b)^(deg a - deg b + 1) · a =
/// q·b + r and deg r < deg b. Exact sign, no normalization — the
/// subresultant bookkeeping needs the honest multiplier.
pub(crate) fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let da = a.degree().expect("pseudo_rem of zero");
    let db = b.degree().expect("pseudo_rem by zero");
    assert!(da >= db, "pseudo_rem needs deg a >= deg b");
    let lcb = b.leading();
    let mut r = a.clone();
    let mut scalings = 0usize;
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let lead = r.leading();
        r = r.mul_scalar(&lcb).sub(&b.shifted(dr - db).mul_scalar(&lead));
        scalings += 1;
    }
    // top up to exactly lc(b)^(δ+1)
    let target = da - db + 1;
    let missing = target - scalings;
    if missing > 0 {
        r = r.mul_scalar(&lcb.pow(missing as u32));
    }
    r
}

/// Resultant of two integer polynomials, by the subresultant PRS
/// (fraction-free; every division below is exact by subresultant theory).
/// Res(a, b) = 0 whenever either argument is zero or they share a factor.
pub fn resultant(a0: &IntPoly, b0: &IntPoly) -> BigInt {
    if a0.is_zero() || b0.is_zero() {
        return BigInt::zero();
    }
    let da0 = a0.degree().unwrap();
    let db0 = b0.degree().unwrap();
    if da0 == 0 && db0 == 0 {
        return BigInt::one();
    }
    if da0 == 0 {
        return a0.leading().pow(db0 as u32);
    }
    if db0 == 0 {
        return b0.leading().pow(da0 as u32);
    }

    // Contents come out first: Res(ca·A, cb·B) = ca^deg B · cb^deg A · Res(A, B).
    let ca = a0.content();
    let cb = b0.content();
    let mut a = a0.div_exact_scalar(&ca);
    let mut b = b0.div_exact_scalar(&cb);
    let t = ca.pow(db0 as u32) * cb.pow(da0 as u32);

    let mut negate = false;
    if da0 < db0 {
        std::mem::swap(&mut a, &mut b);
        if da0 % 2 == 1 && db0 % 2 == 1 {
            negate = !negate;
        }
    }

    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            negate = !negate;
        }
        let r = pseudo_rem(&a, &b);
        if r.is_zero() {
            // common factor of positive degree
            return BigInt::zero();
        }
        a = b;
        let denom = &g * h.pow(delta as u32);
        b = r.div_exact_scalar(&denom);
        g = a.leading();
        if delta > 0 {
            // h ← g^δ / h^(δ−1), exact
            let (q, rem) = g.pow(delta as u32).div_rem(&h.pow(delta as u32 - 1));
            assert!(rem.is_zero(), "subresultant h-update must divide evenly");
            h = q;
        }
        if b.degree().unwrap() == 0 {
            let da = a.degree().unwrap(); // >= 1
            let (res, rem) = b.leading().pow(da as u32).div_rem(&h.pow(da as u32 - 1));
            assert!(rem.is_zero(), "subresultant finish must divide evenly");
            let val = t * res;
            return if negate { -val } else { val };
        }
    }
}

/// Discriminant of f (degree n >= 2):
/// (−1)^(n(n−1)/2) · Res(f, f') / lc(f). Exact integer for f ∈ ℤ[x].
pub fn discriminant(f: &IntPoly) -> BigInt {
    let n = f.degree().unwrap_or(0);
    assert!(n >= 2, "discriminant needs degree >= 2");
    let res = resultant(f, &f.derivative());
    let (q, r) = res.div_rem(&f.leading());
    assert!(r.is_zero(), "Res(f, f') is always divisible by lc(f)");
    if (n * (n - 1) / 2) % 2 == 1 {
        -q
    } else {
        q
    }
}

/// Everything interesting about one discriminant, in a single pass.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscriminantReport {
    pub disc: BigInt,
    /// Exact 2-adic valuation; None means disc = 0 (valuation ∞).
    pub v2: Option<u64>,
    /// Is disc a perfect square? (0 counts: 0 = 0².)
    pub is_square: bool,
    /// −1, 0, +1.
    pub sign: i8,
    /// n minus the number of distinct real roots; None when disc = 0
    /// (the polynomial is not separable, the count would be misleading).
    pub nonreal_count: Option<usize>,
    /// Natural log of |disc|; None when disc = 0. Floating point is
    /// sanctioned here only because the quantity itself is a summary
    /// statistic.
    pub log_abs_disc: Option<f64>,
}

impl DiscriminantReport {
    pub fn is_degenerate(&self) -> bool {
        self.disc.is_zero()
    }
}

/// Computes the discriminant and derives its 2-adic, square, sign, and
/// real-root summary in one pass. The sign
/// identity sign(disc) = (−1)^(nonreal/2) is *checked*, not assumed; a
/// violation would mean the discriminant or the root counter is wrong, and
/// surfaces as an internal error.
pub fn analyze_discriminant(f: &IntPoly) -> Result<DiscriminantReport> {
    let n = f.degree().unwrap_or(0);
    if n < 2 {
        return Err(Error::usage("discriminant analysis needs degree >= 2"));
    }
    let disc = discriminant(f);
    if disc.is_zero() {
        return Ok(DiscriminantReport {
            disc,
            v2: None,
            is_square: true,
            sign: 0,
            nonreal_count: None,
            log_abs_disc: None,
        });
    }
    let v2 = disc.trailing_zeros();
    let is_square = is_perfect_square(&disc);
    let sign = if disc.is_negative() { -1i8 } else { 1 };
    let real = real_root_count(f)?;
    if real > n {
        return Err(Error::internal(format!(
            "{real} real roots counted for degree {n}"
        )));
    }
    let nonreal = n - real;
    if nonreal % 2 != 0 {
        return Err(Error::internal(format!(
            "odd non-real root count {nonreal} for {f}"
        )));
    }
    let expected_sign = if (nonreal / 2) % 2 == 0 { 1i8 } else { -1 };
    if sign != expected_sign {
        return Err(Error::internal(format!(
            "sign({disc}) = {sign} but (−1)^({nonreal}/2) = {expected_sign} for {f}"
        )));
    }
    Ok(DiscriminantReport {
        log_abs_disc: log_abs(&disc),
        disc,
        v2,
        is_square,
        sign,
        nonreal_count: Some(nonreal),
    })
}
