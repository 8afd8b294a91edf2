//! Multi-prime degree sieve: a one-sided irreducibility certifier for monic
//! integer polynomials.
//!
//! For each prime p, any monic integer divisor of f of degree d reduces to a
//! degree-d divisor of f mod p, so d must be a subset sum of the mod-p factor
//! degrees (taken with multiplicity — non-squarefree reductions still cover
//! every divisor degree, so no prime is ever skipped). Intersecting those
//! achievable sets across primes leaves a witness set; if nothing survives
//! strictly between 0 and n, no proper divisor can exist.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::factor::factor_degree_multiset;
use crate::ffpoly::Prime;
use crate::zpoly::IntPoly;

/// The prime factors of 210 — the default sieve set. Extra primes only ever
/// shrink the witness.
pub const DEFAULT_SIEVE_PRIMES: [u64; 4] = [2, 3, 5, 7];

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SieveStatus {
    /// Certified: no proper divisor degree survives any prime. A true
    /// statement about f over the integers.
    Irreducible,
    /// Not certified. Says nothing about reducibility.
    Unknown,
}

impl std::fmt::Display for SieveStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SieveStatus::Irreducible => write!(f, "irreducible"),
            SieveStatus::Unknown => write!(f, "unknown"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SieveVerdict {
    pub status: SieveStatus,
    /// Degrees d such that every reduction admits a divisor of degree d;
    /// always contains 0 and n.
    pub witness: BitSet,
    pub primes_used: Vec<u64>,
}

impl SieveVerdict {
    pub fn certified(&self) -> bool {
        self.status == SieveStatus::Irreducible
    }
}

/// Runs the sieve for a monic f of degree n >= 2 over the given primes
/// (nonempty, pairwise distinct). Status is Irreducible exactly when the
/// witness collapses to {0, n}.
pub fn degree_sieve_certify(f: &IntPoly, primes: &[u64]) -> Result<SieveVerdict> {
    let n = match f.degree() {
        Some(n) if n >= 2 => n,
        _ => return Err(Error::usage("sieve needs degree >= 2")),
    };
    if !f.is_monic() {
        return Err(Error::usage("sieve needs a monic polynomial"));
    }
    if primes.is_empty() {
        return Err(Error::usage("sieve needs at least one prime"));
    }
    let mut seen = primes.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != primes.len() {
        return Err(Error::usage("sieve primes must be pairwise distinct"));
    }

    let mut witness: Option<BitSet> = None;
    for &p in primes {
        let prime = Prime::new(p)?;
        let degrees = factor_degree_multiset(&f.reduce_mod(prime))?;
        let achievable = degrees.achievable_sums();
        match witness.as_mut() {
            None => witness = Some(achievable),
            Some(w) => w.and_assign(&achievable),
        }
    }
    let witness = witness.expect("at least one prime");
    debug_assert!(witness.contains(0) && witness.contains(n));

    let status = if witness.any_in_range(1, n - 1) {
        SieveStatus::Unknown
    } else {
        SieveStatus::Irreducible
    };
    Ok(SieveVerdict { status, witness, primes_used: primes.to_vec() })
}
