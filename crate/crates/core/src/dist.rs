//! Exact distributions of factor types and cycle types, and their
//! comparison.
//!
//! The degree multiset of a uniform monic degree-n polynomial over F_q and
//! the cycle type of a uniform permutation in S_n are both laws on the
//! partitions of n:
//!
//! * polynomial side: P(type = λ) = Π_i α(i, m_i) with α from
//!   [`crate::factor::alpha`] — a product over the parts of λ;
//! * permutation side: P(type = λ) = Π_i 1 / (m_i! i^m_i) (Cauchy).
//!
//! Everything here is exact rational arithmetic; the only approximation in
//! the whole module is the caller's choice to stop reading digits.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::factor::{alpha, factor_degree_multiset};
use crate::ffpoly::{FieldPoly, Prime};
use crate::multiset::DegreeMultiset;
use crate::partitions::partitions;
use crate::perm::cycle_type_probability;

/// Total-variation computations iterate all partitions twice and hold a
/// grouped map; past this weight the exact arithmetic stops being a
/// desk-scale affair.
pub const TV_WEIGHT_CAP: usize = 60;

/// Exhaustive enumeration cap on q^n.
pub const EXHAUSTIVE_SPACE_CAP: u64 = 1 << 24;

#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum DistributionKind {
    /// Degree multisets of irreducible factors of uniform monic degree-n
    /// polynomials over F_q.
    PolynomialFactors,
    /// Cycle types of uniform permutations of n letters (q is carried along
    /// for labeling but does not influence the law).
    PermutationCycles,
}

/// An exact law on the partitions of n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorTypeDistribution {
    n: usize,
    q: Prime,
    kind: DistributionKind,
    entries: BTreeMap<DegreeMultiset, BigRational>,
}

impl FactorTypeDistribution {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> Prime {
        self.q
    }

    pub fn kind(&self) -> DistributionKind {
        self.kind
    }

    pub fn entries(&self) -> &BTreeMap<DegreeMultiset, BigRational> {
        &self.entries
    }

    pub fn probability(&self, ct: &DegreeMultiset) -> BigRational {
        self.entries.get(ct).cloned().unwrap_or_else(BigRational::zero)
    }

    fn checked(self) -> Result<FactorTypeDistribution> {
        let total: BigRational = self.entries.values().sum();
        if !total.is_one() {
            return Err(Error::internal(format!(
                "distribution over partitions of {} sums to {total}, not 1",
                self.n
            )));
        }
        if let Some(bad) = self.entries.keys().find(|k| k.weight() != self.n) {
            return Err(Error::internal(format!(
                "entry {bad} has weight {} in a distribution on partitions of {}",
                bad.weight(),
                self.n
            )));
        }
        Ok(self)
    }
}

/// Exact probability that a uniform monic polynomial of degree = weight(ct)
/// over F_q has factor type exactly `ct`: the product of α(i, m_i) over the
/// parts. (Parts absent from ct contribute α(i, 0) = 1.)
pub fn exact_factor_probability(q: Prime, ct: &DegreeMultiset) -> BigRational {
    let mut acc = BigRational::one();
    for (part, count) in ct.iter() {
        acc *= alpha(q, part, count);
    }
    acc
}

/// The full exact law for either side, over all partitions of n.
pub fn build_distribution(
    q: Prime,
    n: usize,
    kind: DistributionKind,
) -> Result<FactorTypeDistribution> {
    let mut entries = BTreeMap::new();
    for part in partitions(n)? {
        let p = match kind {
            DistributionKind::PolynomialFactors => exact_factor_probability(q, &part),
            DistributionKind::PermutationCycles => cycle_type_probability(&part),
        };
        entries.insert(part, p);
    }
    FactorTypeDistribution { n, q, kind, entries }.checked()
}

/// Independent oracle for the polynomial side: enumerate all q^n monic
/// polynomials of degree n, factor each, tally. Exact rational output with
/// denominator q^n. Refuses spaces beyond [`EXHAUSTIVE_SPACE_CAP`].
pub fn exhaustive_distribution(q: Prime, n: usize) -> Result<FactorTypeDistribution> {
    if n == 0 {
        return Err(Error::usage("exhaustive enumeration needs degree >= 1"));
    }
    let qe = q.get();
    let mut space: u64 = 1;
    for _ in 0..n {
        space = space
            .checked_mul(qe)
            .filter(|&s| s <= EXHAUSTIVE_SPACE_CAP)
            .ok_or_else(|| {
                Error::capacity(format!(
                    "q^n = {qe}^{n} exceeds the exhaustive cap 2^24"
                ))
            })?;
    }

    let mut tally: BTreeMap<DegreeMultiset, u64> = BTreeMap::new();
    let mut coeffs = vec![0u64; n + 1];
    coeffs[n] = 1;
    loop {
        let f = FieldPoly::from_coeffs(q, coeffs.clone());
        *tally.entry(factor_degree_multiset(&f)?).or_insert(0) += 1;
        // odometer over the n low coefficients
        let mut i = 0;
        loop {
            if i == n {
                // wrapped all the way: done
                let denom = BigInt::from(space);
                let entries = tally
                    .into_iter()
                    .map(|(k, c)| (k, BigRational::new(BigInt::from(c), denom.clone())))
                    .collect();
                return FactorTypeDistribution {
                    n,
                    q,
                    kind: DistributionKind::PolynomialFactors,
                    entries,
                }
                .checked();
            }
            coeffs[i] += 1;
            if coeffs[i] < qe {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

/// Marginal onto the multiplicities of parts >= r ("forget how the weight
/// below r is arranged"). Keys are restricted multisets; values sum to 1.
pub fn marginal_from(
    dist: &FactorTypeDistribution,
    r: usize,
) -> Result<BTreeMap<DegreeMultiset, BigRational>> {
    if r < 1 || r > dist.n() + 1 {
        return Err(Error::usage(format!(
            "marginal cutoff r = {r} outside 1..={}",
            dist.n() + 1
        )));
    }
    let mut out: BTreeMap<DegreeMultiset, BigRational> = BTreeMap::new();
    for (ct, p) in dist.entries() {
        let key = ct.restrict_min_part(r);
        *out.entry(key).or_insert_with(BigRational::zero) += p;
    }
    Ok(out)
}

/// Exact total-variation distance between the two laws after both are
/// marginalized onto parts >= r: (1/2) Σ |X - Y| over restricted types.
pub fn tv_distance(q: Prime, n: usize, r: usize) -> Result<BigRational> {
    if n > TV_WEIGHT_CAP {
        return Err(Error::capacity(format!(
            "tv_distance at n = {n} exceeds the cap {TV_WEIGHT_CAP}"
        )));
    }
    if r < 1 || r > n + 1 {
        return Err(Error::usage(format!(
            "marginal cutoff r = {r} outside 1..={}",
            n + 1
        )));
    }
    // Single pass: group both laws by the restricted key as we enumerate.
    let mut grouped: BTreeMap<DegreeMultiset, (BigRational, BigRational)> = BTreeMap::new();
    for part in partitions(n)? {
        let key = part.restrict_min_part(r);
        let slot = grouped
            .entry(key)
            .or_insert_with(|| (BigRational::zero(), BigRational::zero()));
        slot.0 += exact_factor_probability(q, &part);
        slot.1 += cycle_type_probability(&part);
    }
    let mut tv = BigRational::zero();
    for (x, y) in grouped.values() {
        tv += (x - y).abs();
    }
    Ok(tv / BigRational::from(BigInt::from(2)))
}

/// Exact P(m_i = lam) on the polynomial side at finite n.
pub fn tail_probability(q: Prime, n: usize, i: usize, lam: usize) -> Result<BigRational> {
    if i == 0 {
        return Err(Error::usage("part size i must be >= 1"));
    }
    if i > n || i * lam > n {
        // impossible weight
        return Ok(BigRational::zero());
    }
    let mut total = BigRational::zero();
    for part in partitions(n)? {
        if part.count_of(i) == lam {
            total += exact_factor_probability(q, &part);
        }
    }
    Ok(total)
}

/// Σ of cycle-type probabilities over all partitions of x — exactly 1 for
/// every x, which is worth asserting because the per-type formula is a
/// product that knows nothing about totality.
pub fn y_weight_total(x: usize) -> Result<BigRational> {
    let mut total = BigRational::zero();
    for part in partitions(x)? {
        total += cycle_type_probability(&part);
    }
    Ok(total)
}
