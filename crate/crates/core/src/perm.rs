//! Permutations of {0, ..., n-1}: uniform sampling and cycle structure.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::multiset::DegreeMultiset;
use crate::rng::RandomStream;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Permutation {
    /// images: element i maps to images[i]
    images: Vec<usize>,
}

impl Permutation {
    /// Validates that `images` is a bijection on 0..len.
    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        if n == 0 {
            return Err(Error::usage("permutation of the empty set"));
        }
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n {
                return Err(Error::usage(format!("image {v} out of range for n = {n}")));
            }
            if seen[v] {
                return Err(Error::usage(format!("image {v} repeated")));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Result<Permutation> {
        Permutation::new((0..n).collect())
    }

    /// Uniform random permutation by Fisher–Yates (the swap index is drawn
    /// by rejection, so every one of the n! outcomes is equally likely).
    pub fn random(n: usize, stream: &mut RandomStream) -> Result<Permutation> {
        if n == 0 {
            return Err(Error::usage("permutation of the empty set"));
        }
        let mut images: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = stream.uniform_usize(i + 1);
            images.swap(i, j);
        }
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Cycle lengths as a multiset; its weight is n.
    pub fn cycle_type(&self) -> DegreeMultiset {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut ms = DegreeMultiset::empty();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0usize;
            let mut at = start;
            while !seen[at] {
                seen[at] = true;
                at = self.images[at];
                len += 1;
            }
            ms.push(len).expect("cycle length is positive");
        }
        debug_assert_eq!(ms.weight(), n);
        ms
    }
}

/// Exact probability that a uniform permutation of S_n has the given cycle
/// type: Π_i 1 / (m_i! i^(m_i)) over parts i with multiplicities m_i
/// (Cauchy's formula). The multiset's weight is the n in question.
pub fn cycle_type_probability(ct: &DegreeMultiset) -> BigRational {
    let mut denom = BigInt::one();
    for (part, count) in ct.iter() {
        let mut fact = BigInt::one();
        for j in 1..=count {
            fact *= BigInt::from(j as u64);
        }
        denom *= fact * BigInt::from(part as u64).pow(count as u32);
    }
    BigRational::new(BigInt::one(), denom)
}
