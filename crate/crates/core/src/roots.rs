//! Desk-scale irreducibility oracle: find all complex roots in extended
//! precision, try every conjugate-closed subset product as a divisor
//! candidate, and let exact integer division be the judge.
//!
//! The floating point here is only a *search heuristic* — every "reducible"
//! answer is backed by an exact division, and every "irreducible" answer is
//! backed by an error bound showing no candidate was missed. When the bound
//! cannot be established the oracle refuses with a precision error rather
//! than guessing.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::zpoly::{discriminant, IntPoly};

/// Past this the 2^n subset search and the error budget both stop being
/// desk-scale; callers must treat larger degrees as out of range.
pub const ORACLE_MAX_DEGREE: usize = 12;

// ---------------------------------------------------------------------------
// double-double arithmetic (~106-bit mantissa), just enough for root finding

#[derive(Clone, Copy, Debug)]
struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b| or a == 0
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, f64::mul_add(a, b, -p))
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    #[inline]
    fn from_f64(v: f64) -> Dd {
        Dd { hi: v, lo: 0.0 }
    }

    #[inline]
    fn add(self, o: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, o.hi);
        let (t1, t2) = two_sum(self.lo, o.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }

    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    #[inline]
    fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    #[inline]
    fn mul(self, o: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, o.hi);
        let p2 = p2 + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    fn div(self, o: Dd) -> Dd {
        // three rounds of Newton-style quotient refinement
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul(Dd::from_f64(q1)));
        let q2 = r.hi / o.hi;
        let r = r.sub(o.mul(Dd::from_f64(q2)));
        let q3 = r.hi / o.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e }.add(Dd::from_f64(q3))
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    fn abs_f64(self) -> f64 {
        self.to_f64().abs()
    }

    #[inline]
    fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }
}

#[derive(Clone, Copy, Debug)]
struct Cdd {
    re: Dd,
    im: Dd,
}

impl Cdd {
    #[inline]
    fn sub(self, o: Cdd) -> Cdd {
        Cdd { re: self.re.sub(o.re), im: self.im.sub(o.im) }
    }

    #[inline]
    fn mul(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    #[inline]
    fn div(self, o: Cdd) -> Cdd {
        let denom = o.re.mul(o.re).add(o.im.mul(o.im));
        Cdd {
            re: self.re.mul(o.re).add(self.im.mul(o.im)).div(denom),
            im: self.im.mul(o.re).sub(self.re.mul(o.im)).div(denom),
        }
    }

    #[inline]
    fn abs_f64(self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }

    #[inline]
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

// ---------------------------------------------------------------------------
// root finding

/// f evaluated at z by Horner, coefficients real.
fn eval_cdd(coeffs: &[Dd], z: Cdd) -> Cdd {
    let mut acc = Cdd { re: Dd::ZERO, im: Dd::ZERO };
    for &a in coeffs.iter().rev() {
        acc = acc.mul(z);
        acc.re = acc.re.add(a);
    }
    acc
}

struct RootCloud {
    z: Vec<Cdd>,
    /// per-root inclusion radius: the true root ζ_j lies within err[j] of z[j]
    err: Vec<f64>,
}

/// Durand–Kerner iteration from a perturbed circle of radius 1 + max|a_i|
/// (Cauchy's bound). Returns the roots plus certified inclusion radii from
/// the Weierstrass corrections: the n disks D(z_j, n·|w_j|) jointly contain
/// all n roots, and once they are pairwise disjoint each contains exactly
/// one.
fn find_roots(coeffs: &[Dd], angle_offset: f64) -> Result<RootCloud> {
    let n = coeffs.len() - 1;
    let radius = 1.0
        + coeffs[..n]
            .iter()
            .map(|a| a.abs_f64())
            .fold(0.0f64, f64::max);
    let mut z: Vec<Cdd> = (0..n)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / n as f64 + angle_offset;
            Cdd {
                re: Dd::from_f64(radius * theta.cos()),
                im: Dd::from_f64(radius * theta.sin()),
            }
        })
        .collect();

    let tol = 1e-26 * radius;
    let mut converged = false;
    for _ in 0..600 {
        let mut worst = 0.0f64;
        for j in 0..n {
            let mut denom = Cdd { re: Dd::from_f64(1.0), im: Dd::ZERO };
            for k in 0..n {
                if k != j {
                    denom = denom.mul(z[j].sub(z[k]));
                }
            }
            let step = eval_cdd(coeffs, z[j]).div(denom);
            z[j] = z[j].sub(step);
            if !z[j].is_finite() {
                return Err(Error::precision("root iteration diverged"));
            }
            worst = worst.max(step.abs_f64());
        }
        if worst <= tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::precision("root iteration did not settle"));
    }

    let err: Vec<f64> = (0..n)
        .map(|j| {
            let mut denom = Cdd { re: Dd::from_f64(1.0), im: Dd::ZERO };
            let mut denom_mag = 1.0f64;
            for k in 0..n {
                if k != j {
                    let gap = z[j].sub(z[k]);
                    denom = denom.mul(gap);
                    denom_mag *= gap.abs_f64();
                }
            }
            let w = eval_cdd(coeffs, z[j]).div(denom).abs_f64();
            // Horner in double-double is only good to ~2^-100 relative to
            // the largest intermediate term; charge that against the
            // residual so the radii stay honest for large-modulus roots.
            let m = z[j].abs_f64().max(1.0);
            let mut term_scale = 0.0f64;
            let mut mk = 1.0f64;
            for a in coeffs {
                term_scale += a.abs_f64() * mk;
                mk *= m;
            }
            let eval_slop = 3e-31 * term_scale / denom_mag;
            n as f64 * (w + eval_slop)
        })
        .collect();

    // the disks must isolate: otherwise the per-root radii say nothing
    for j in 0..n {
        for k in 0..j {
            let gap = z[j].sub(z[k]).abs_f64();
            if gap <= 2.0 * (err[j] + err[k]) {
                return Err(Error::precision("root clusters too tight to separate"));
            }
        }
    }
    Ok(RootCloud { z, err })
}

// ---------------------------------------------------------------------------
// divisor search

/// One conjugate-closed factor: a single (approximately) real root, or a
/// complex-conjugate pair folded into a real quadratic.
struct Atom {
    degree: usize,
    /// monic real coefficients, constant first, length degree (leading 1 implicit)
    low: Vec<Dd>,
}

fn build_atoms(cloud: &RootCloud) -> Result<Vec<Atom>> {
    let n = cloud.z.len();
    let mut used = vec![false; n];
    let mut atoms = Vec::new();
    for j in 0..n {
        if used[j] {
            continue;
        }
        let zj = cloud.z[j];
        let near_axis = zj.im.abs_f64() <= 4.0 * cloud.err[j] + 1e-24 * (1.0 + zj.abs_f64());
        if near_axis {
            used[j] = true;
            atoms.push(Atom { degree: 1, low: vec![zj.re.neg()] });
            continue;
        }
        // find the conjugate partner
        let mut partner = None;
        for k in 0..n {
            if k == j || used[k] {
                continue;
            }
            let dist = (cloud.z[k].re.to_f64() - zj.re.to_f64())
                .hypot(cloud.z[k].im.to_f64() + zj.im.to_f64());
            if dist <= 4.0 * (cloud.err[j] + cloud.err[k]) + 1e-24 * (1.0 + zj.abs_f64()) {
                if partner.is_some() {
                    return Err(Error::precision("ambiguous conjugate pairing"));
                }
                partner = Some(k);
            }
        }
        let k = partner
            .ok_or_else(|| Error::precision("non-real root without a conjugate partner"))?;
        used[j] = true;
        used[k] = true;
        // (x − z)(x − z̄) = x² − 2·Re(z)·x + |z|²
        let norm = zj.re.mul(zj.re).add(zj.im.mul(zj.im));
        atoms.push(Atom { degree: 2, low: vec![norm, zj.re.add(zj.re).neg()] });
    }
    Ok(atoms)
}

/// Multiply monic real polynomials given by their non-leading coefficients.
fn mul_monic(a: &[Dd], b: &[Dd]) -> Vec<Dd> {
    let (da, db) = (a.len(), b.len());
    let mut out = vec![Dd::ZERO; da + db];
    // (a + x^da)(b + x^db) = ab + a·x^db + b·x^da + x^(da+db)
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(ai.mul(bj));
        }
        out[i + db] = out[i + db].add(ai);
    }
    for (j, &bj) in b.iter().enumerate() {
        out[j + da] = out[j + da].add(bj);
    }
    out
}

/// Exact set of proper monic-divisor degrees of f, as a bitset over 0..=n
/// with 0 and n always present (the trivial divisors).
///
/// Requires 2 ≤ deg f ≤ ORACLE_MAX_DEGREE, f monic and squarefree.
/// The subset search walks conjugate-closed root combinations only up to
/// degree n/2 — the cofactor of an integer divisor is an integer divisor, so
/// the top half comes for free by complement.
pub fn proper_divisor_degrees(f: &IntPoly) -> Result<BitSet> {
    let n = match f.degree() {
        Some(n) if n >= 2 => n,
        _ => return Err(Error::usage("divisor search needs degree >= 2")),
    };
    if n > ORACLE_MAX_DEGREE {
        return Err(Error::capacity(format!(
            "divisor search is capped at degree {ORACLE_MAX_DEGREE}, got {n}"
        )));
    }
    if !f.is_monic() {
        return Err(Error::usage("divisor search needs a monic polynomial"));
    }
    if discriminant(f).is_zero() {
        return Err(Error::usage("divisor search needs a squarefree polynomial"));
    }

    let coeffs: Vec<Dd> = f
        .coeffs()
        .iter()
        .map(|c| {
            c.to_f64()
                .filter(|v| v.abs() < 9.0e15 && c == &num_bigint::BigInt::from(*v as i64))
                .map(Dd::from_f64)
                .ok_or_else(|| Error::precision("coefficient too wide for the root finder"))
        })
        .collect::<Result<_>>()?;

    let cloud = match find_roots(&coeffs, 0.4) {
        Ok(c) => c,
        // one deterministic retry from a different starting orientation
        Err(_) => find_roots(&coeffs, 1.1)?,
    };

    // Mignotte-style sensitivity: any coefficient of any monic subset
    // product moves by at most 2^n · ||f||₂ · Σ(root errors). Rounding to
    // integers is safe while that stays clear of 1/4.
    let norm2 = f
        .coeffs()
        .iter()
        .map(|c| c.to_f64().expect("checked above").powi(2))
        .sum::<f64>()
        .sqrt();
    let total_err: f64 = cloud.err.iter().sum();
    let coeff_drift = (1u64 << n) as f64 * norm2 * total_err;
    if !(coeff_drift < 0.2) {
        return Err(Error::precision("root error budget too large to round safely"));
    }

    let atoms = build_atoms(&cloud)?;
    let mut degrees = BitSet::empty(n);
    degrees.insert(0);
    degrees.insert(n);

    // DFS over atom subsets, tracking the running product; prune at n/2.
    fn walk(
        atoms: &[Atom],
        idx: usize,
        degree: usize,
        product: &[Dd],
        half: usize,
        f: &IntPoly,
        degrees: &mut BitSet,
    ) {
        if idx == atoms.len() {
            if degree == 0 {
                return;
            }
            // round to an integer candidate; a true divisor's coefficients
            // sit within the drift budget of integers, so a large fraction
            // part disqualifies honestly
            let mut cand = Vec::with_capacity(degree + 1);
            for c in product {
                let v = c.to_f64();
                let r = v.round();
                if (v - r).abs() > 0.25 || r.abs() > 9.0e15 {
                    return;
                }
                cand.push(num_bigint::BigInt::from(r as i64));
            }
            cand.push(num_bigint::BigInt::from(1));
            let g = IntPoly::from_coeffs(cand);
            if g.degree() != Some(degree) {
                return;
            }
            let (_, rem) = f.divrem_monic(&g).expect("candidate is monic");
            if rem.is_zero() {
                degrees.insert(degree);
                degrees.insert(f.degree().unwrap() - degree);
            }
            return;
        }
        walk(atoms, idx + 1, degree, product, half, f, degrees);
        let d2 = degree + atoms[idx].degree;
        if d2 <= half {
            let p2 = mul_monic(product, &atoms[idx].low);
            walk(atoms, idx + 1, d2, &p2, half, f, degrees);
        }
    }
    walk(&atoms, 0, 0, &[], n / 2, f, &mut degrees);
    Ok(degrees)
}

/// True iff f has no monic integer divisor of degree strictly between
/// 0 and deg f. Same preconditions as [`proper_divisor_degrees`].
pub fn oracle_irreducible_small(f: &IntPoly) -> Result<bool> {
    let n = f.degree().unwrap_or(0);
    let degrees = proper_divisor_degrees(f)?;
    Ok(!degrees.any_in_range(1, n - 1))
}
