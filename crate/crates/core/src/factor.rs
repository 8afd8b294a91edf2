//! Factor-degree structure of polynomials over F_p, without ever finding
//! the factors themselves.
//!
//! Distinct-degree factorization already reveals how many irreducible
//! factors of each degree a squarefree polynomial has; combined with a
//! squarefree decomposition it gives the full degree multiset, with
//! multiplicity, of an arbitrary monic polynomial. No equal-degree
//! splitting is ever needed for that, so none is implemented.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ffpoly::{poly_gcd, FieldPoly, Prime};
use crate::multiset::DegreeMultiset;

/// Squarefree decomposition in characteristic p: returns pairwise-coprime
/// squarefree monic `g_m` with `f = Π g_m^m`, as `(g_m, m)` pairs with
/// `g_m` nonconstant, ascending in m.
///
/// The gcd chain below (Musser-style, adapted to F_p) walks multiplicity
/// classes one at a time: `w` carries the factors whose multiplicity is
/// not a multiple of p, `c` their remaining powers; at round m, whatever
/// drops out of `w` has multiplicity exactly m. A plain Yun difference
/// chain would be wrong here — a factor of multiplicity m ≡ 1 (mod p)
/// looks multiplicity-1 to derivatives. Once `w` is exhausted, `c` is
/// exactly the p-th-power part (multiplicities divisible by p), whose
/// p-th root is decomposed recursively with multiplicities scaled by p.
/// The two sources can never claim the same class: the loop yields only
/// p ∤ m, the recursion only p | m.
pub fn squarefree_decomposition(f: &FieldPoly) -> Result<Vec<(FieldPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::usage("squarefree decomposition of zero"));
    }
    let f = f.make_monic();
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }

    let mut out: Vec<(FieldPoly, usize)> = Vec::new();

    // gcd(f, f') keeps f_i^(m_i - 1) for p ∤ m_i and the full f_i^m_i for
    // p | m_i (where f' loses the factor entirely). f' = 0 degenerates
    // gracefully: c = f, w = 1, straight to the p-th-root recursion.
    let mut c = poly_gcd(&f, &f.derivative())?;
    let mut w = f.divrem(&c)?.0;
    let mut m = 1usize;
    while w.degree().map_or(false, |d| d >= 1) {
        // y keeps the parts of w that still have multiplicity beyond m
        let y = poly_gcd(&w, &c)?;
        let z = w.divrem(&y)?.0;
        if z.degree().map_or(false, |d| d >= 1) {
            out.push((z, m));
        }
        c = c.divrem(&y)?.0;
        w = y;
        m += 1;
    }

    if c.degree().map_or(false, |d| d >= 1) {
        let root = c.pth_root()?;
        let p_usize = usize::try_from(f.modulus())
            .map_err(|_| Error::capacity("multiplicity overflow in p-th power"))?;
        for (g, mm) in squarefree_decomposition(&root)? {
            out.push((g, mm * p_usize));
        }
    }
    out.sort_by_key(|&(_, m)| m);
    Ok(out)
}

/// Degrees at which a *squarefree* polynomial has irreducible factors:
/// returns `(d, total degree of the degree-d factors)` pairs via
/// distinct-degree factorization. The count of degree-d factors is the
/// second component divided by d.
fn distinct_degree_profile(f: &FieldPoly) -> Result<Vec<(usize, usize)>> {
    let p = f.prime();
    let mut g = f.make_monic();
    let mut out = Vec::new();
    // h = x^(p^d) mod g, advanced one Frobenius per round
    let x = FieldPoly::x(p);
    let mut h = x.rem(&g)?;
    let mut d = 0usize;
    while g.degree().map_or(false, |deg| deg >= 1) {
        d += 1;
        if g.degree().unwrap() < 2 * d {
            // whatever is left is irreducible of its own degree
            out.push((g.degree().unwrap(), g.degree().unwrap()));
            break;
        }
        h = h.pow_mod(p.get(), &g)?;
        let probe = poly_gcd(&g, &h.sub(&x))?;
        if let Some(deg) = probe.degree().filter(|&deg| deg > 0) {
            out.push((d, deg));
            g = g.divrem(&probe)?.0;
            h = h.rem(&g)?;
        }
    }
    Ok(out)
}

/// The multiset of irreducible-factor degrees of monic `f`, counted with
/// multiplicity (so its weight is exactly deg f).
pub fn factor_degree_multiset(f: &FieldPoly) -> Result<DegreeMultiset> {
    if f.is_zero() {
        return Err(Error::usage("factor degrees of zero"));
    }
    let mut out = DegreeMultiset::empty();
    for (g, mult) in squarefree_decomposition(f)? {
        for (d, span) in distinct_degree_profile(&g)? {
            debug_assert_eq!(span % d, 0);
            out.push_many(d, span / d * mult)?;
        }
    }
    if out.weight() != f.degree().unwrap_or(0) {
        return Err(Error::internal(format!(
            "factor degrees sum to {} for a degree-{:?} input",
            out.weight(),
            f.degree()
        )));
    }
    Ok(out)
}

/// Irreducibility over F_p, by checking the factor type is a single part.
pub fn is_irreducible_ff(f: &FieldPoly) -> Result<bool> {
    match f.degree() {
        None | Some(0) => Ok(false),
        Some(n) => {
            let ms = factor_degree_multiset(f)?;
            Ok(ms.count_of(n) == 1)
        }
    }
}

/// Möbius function on small arguments.
pub fn mobius(n: usize) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut primes = 0;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0; // squareful
            }
            primes += 1;
        }
        d += 1;
    }
    if n > 1 {
        primes += 1;
    }
    if primes % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Number of monic irreducible polynomials of degree d over F_q:
/// (1/d) Σ_{e | d} μ(d/e) q^e. Exact, hence BigInt.
pub fn count_irreducibles(q: Prime, d: usize) -> BigInt {
    assert!(d >= 1);
    let q = BigInt::from(q.get());
    let mut sum = BigInt::zero();
    for e in 1..=d {
        if d % e == 0 {
            sum += mobius(d / e) * q.pow(e as u32);
        }
    }
    let (quot, rem) = num_integer::Integer::div_rem(&sum, &BigInt::from(d));
    debug_assert!(rem.is_zero(), "necklace count must divide evenly");
    quot
}

/// C(n + m - 1, m): multisets of size m from n kinds.
fn multichoose(n: &BigInt, m: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..m {
        num *= n + BigInt::from(j as u64);
        den *= BigInt::from((j + 1) as u64);
    }
    let (quot, rem) = num_integer::Integer::div_rem(&num, &den);
    debug_assert!(rem.is_zero());
    quot
}

/// Probability that a uniform monic polynomial of large degree over F_q has
/// exactly m irreducible factors of degree d (in the degree-d coordinate of
/// the limiting factor-type law): C(N_d + m - 1, m) / q^(d m), where N_d
/// counts the degree-d irreducibles.
///
/// This is also the exact finite-n probability factor: for deg f = n, the
/// joint probability of a factor type is the product of these over its
/// parts (see dist::exact_factor_probability).
pub fn alpha(q: Prime, d: usize, m: usize) -> BigRational {
    assert!(d >= 1);
    let choices = multichoose(&count_irreducibles(q, d), m);
    let denom = BigInt::from(q.get()).pow((d * m) as u32);
    BigRational::new(choices, denom)
}
