//! Degree multisets: the common shape of a polynomial's irreducible factor
//! degrees (with multiplicity) and a permutation's cycle lengths.
//!
//! A multiset is stored sparsely as `part -> count` with every stored count
//! at least 1; its weight is the underlying n, i.e. the sum of part * count.

use std::collections::BTreeMap;
use std::fmt;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct DegreeMultiset {
    weight: usize,
    counts: BTreeMap<usize, usize>,
}

impl DegreeMultiset {
    /// The empty multiset (weight 0).
    pub fn empty() -> DegreeMultiset {
        DegreeMultiset::default()
    }

    /// Builds from an unordered list of parts, e.g. `[3, 1, 1]`.
    pub fn from_parts(parts: &[usize]) -> Result<DegreeMultiset> {
        let mut m = DegreeMultiset::empty();
        for &p in parts {
            m.push(p)?;
        }
        Ok(m)
    }

    /// Builds from `part -> count` pairs; parts and counts must be positive.
    pub fn from_counts(
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<DegreeMultiset> {
        let mut m = DegreeMultiset::empty();
        for (part, count) in pairs {
            if count == 0 {
                return Err(Error::usage(format!("count 0 for part {part}")));
            }
            if part == 0 {
                return Err(Error::usage("part 0 is not allowed"));
            }
            if m.counts.insert(part, count).is_some() {
                return Err(Error::usage(format!("part {part} given twice")));
            }
            m.weight += part * count;
        }
        Ok(m)
    }

    /// Adds one copy of `part`.
    pub fn push(&mut self, part: usize) -> Result<()> {
        if part == 0 {
            return Err(Error::usage("part 0 is not allowed"));
        }
        *self.counts.entry(part).or_insert(0) += 1;
        self.weight += part;
        Ok(())
    }

    /// Adds `count` copies of `part`. No-op for `count == 0`.
    pub fn push_many(&mut self, part: usize, count: usize) -> Result<()> {
        if count == 0 {
            return Ok(());
        }
        if part == 0 {
            return Err(Error::usage("part 0 is not allowed"));
        }
        *self.counts.entry(part).or_insert(0) += count;
        self.weight += part * count;
        Ok(())
    }

    /// Sum of part * count — the n this multiset partitions.
    pub fn weight(&self) -> usize {
        self.weight
    }

    /// Number of distinct part values.
    pub fn distinct_parts(&self) -> usize {
        self.counts.len()
    }

    /// Total number of parts, counted with multiplicity.
    pub fn total_count(&self) -> usize {
        self.counts.values().sum()
    }

    /// Multiplicity of `part` (0 if absent).
    pub fn count_of(&self, part: usize) -> usize {
        self.counts.get(&part).copied().unwrap_or(0)
    }

    /// Ascending `(part, count)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts.iter().map(|(&p, &c)| (p, c))
    }

    /// Parts expanded with multiplicity, descending — `[3, 1, 1]` style.
    pub fn parts_desc(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.total_count());
        for (&p, &c) in self.counts.iter().rev() {
            out.extend(std::iter::repeat(p).take(c));
        }
        out
    }

    /// The sub-multiset of parts `>= bound`: the restriction of a factor
    /// type to the multiplicities (m_bound, m_bound+1, ...), which is what
    /// the truncated-distribution comparisons marginalize onto.
    pub fn restrict_min_part(&self, bound: usize) -> DegreeMultiset {
        let mut m = DegreeMultiset::empty();
        for (p, c) in self.iter() {
            if p >= bound {
                m.counts.insert(p, c);
                m.weight += p * c;
            }
        }
        m
    }

    /// The set of sums of sub-multisets, as a bitset over `0..=weight`.
    ///
    /// For a factor-degree multiset these are exactly the degrees of monic
    /// divisors; for a cycle type, the sizes of invariant subsets (fixed
    /// unions of cycles). 0 and `weight` are always present.
    ///
    /// Repeated parts are handled by binary splitting: count c of part p is
    /// decomposed as 1, 2, 4, ..., remainder, and each chunk contributes one
    /// shift-or of p * chunk. Any count in `0..=c` is a sum of chunks, and
    /// no overshoot is representable, so the DP is exact in
    /// O(n/64 * Σ log c) word operations.
    pub fn achievable_sums(&self) -> BitSet {
        let mut set = BitSet::empty(self.weight);
        set.insert(0);
        for (part, count) in self.iter() {
            let mut left = count;
            let mut chunk = 1usize;
            while left > 0 {
                let take = chunk.min(left);
                set.or_shift_up(part * take);
                left -= take;
                chunk *= 2;
            }
        }
        set
    }

    /// Does some integer `l > threshold` divide two *different* parts
    /// (two distinct cycles — a part with multiplicity 2 counts)?
    pub fn has_double_divisor(&self, threshold: usize) -> bool {
        let parts: Vec<(usize, usize)> = self.iter().collect();
        for (i, &(p, c)) in parts.iter().enumerate() {
            if c >= 2 && p > threshold {
                // l = p divides both copies
                return true;
            }
            for &(q, _) in &parts[i + 1..] {
                if gcd(p, q) > threshold {
                    return true;
                }
            }
        }
        false
    }

    /// Is there a part `l` with `weight^a <= l <= weight^b` that has a
    /// prime factor larger than `prime_floor`?
    pub fn has_rough_cycle(&self, a: f64, b: f64, prime_floor: usize) -> bool {
        assert!(0.0 <= a && a < b && b <= 1.0, "need 0 <= a < b <= 1");
        let n = self.weight as f64;
        let lo = n.powf(a).ceil() as usize;
        let hi = n.powf(b).floor() as usize;
        self.iter().any(|(p, _)| {
            lo <= p && p <= hi && has_prime_factor_above(p, prime_floor)
        })
    }
}

/// Strips every prime factor `<= floor` from m; anything left is a product
/// of primes above the floor.
fn has_prime_factor_above(mut m: usize, floor: usize) -> bool {
    let mut d = 2usize;
    while d <= floor && d * d <= m {
        while m % d == 0 {
            m /= d;
        }
        d += 1;
    }
    if m > 1 && m <= floor {
        // remaining m is prime (no divisor up to sqrt survived) but small
        return false;
    }
    m > 1
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl fmt::Display for DegreeMultiset {
    /// Canonical text form: ascending `part:count` pairs joined by `;`,
    /// `-` for the empty multiset. `[3,1,1]` renders as `1:2;3:1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.counts.is_empty() {
            return write!(f, "-");
        }
        let mut first = true;
        for (p, c) in self.iter() {
            if !first {
                write!(f, ";")?;
            }
            write!(f, "{p}:{c}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_and_weight() {
        let m = DegreeMultiset::from_parts(&[3, 1, 1]).unwrap();
        assert_eq!(m.weight(), 5);
        assert_eq!(m.count_of(1), 2);
        assert_eq!(m.count_of(3), 1);
        assert_eq!(m.count_of(2), 0);
        assert_eq!(m.total_count(), 3);
        assert_eq!(m.parts_desc(), vec![3, 1, 1]);
        assert_eq!(m.to_string(), "1:2;3:1");
        assert!(DegreeMultiset::from_parts(&[0]).is_err());
        assert_eq!(DegreeMultiset::empty().to_string(), "-");
    }

    #[test]
    fn achievable_sums_small_exhaustive() {
        // [2, 2, 3]: subsets sum to 0,2,3,4,5,7
        let m = DegreeMultiset::from_parts(&[2, 2, 3]).unwrap();
        let s = m.achievable_sums();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 2, 3, 4, 5, 7]);
    }

    #[test]
    fn achievable_sums_matches_brute_force() {
        // Compare the split-chunk DP against direct subset enumeration on
        // every partition-ish multiset of a few shapes.
        let shapes: Vec<Vec<usize>> = vec![
            vec![1; 9],
            vec![5, 5, 5, 5],
            vec![4, 4, 4, 2, 1],
            vec![7],
            vec![6, 6, 6, 6, 6, 1, 1, 1],
            vec![9, 3, 3, 3, 2, 2, 2, 2],
        ];
        for parts in shapes {
            let m = DegreeMultiset::from_parts(&parts).unwrap();
            let fast: Vec<usize> = m.achievable_sums().iter().collect();
            let mut brute = std::collections::BTreeSet::new();
            for mask in 0u32..1 << parts.len() {
                let sum: usize = parts
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &p)| p)
                    .sum();
                brute.insert(sum);
            }
            assert_eq!(fast, brute.into_iter().collect::<Vec<_>>(), "{parts:?}");
        }
    }

    #[test]
    fn double_divisor_detection() {
        // 6 and 9 share divisor 3
        let m = DegreeMultiset::from_parts(&[6, 9, 1]).unwrap();
        assert!(m.has_double_divisor(2));
        assert!(!m.has_double_divisor(3));
        // a repeated part shares itself
        let m = DegreeMultiset::from_parts(&[5, 5]).unwrap();
        assert!(m.has_double_divisor(4));
        assert!(!m.has_double_divisor(5));
        // coprime parts share nothing above 1
        let m = DegreeMultiset::from_parts(&[4, 9, 25]).unwrap();
        assert!(!m.has_double_divisor(1));
        assert!(m.has_double_divisor(0));
    }

    #[test]
    fn rough_cycle_detection() {
        // weight 100: window for (0.25, 0.75) is [ceil(100^.25), floor(100^.75)]
        // = [4, 31]. 22 = 2 * 11 has prime factor 11 > 5.
        let m = DegreeMultiset::from_parts(&[22, 78]).unwrap();
        assert!(m.has_rough_cycle(0.25, 0.75, 5));
        assert!(!m.has_rough_cycle(0.25, 0.75, 11)); // 11 not above 11
        // 16 = 2^4 is smooth: no qualifying part even though in window
        let m = DegreeMultiset::from_parts(&[16, 84]).unwrap();
        assert!(!m.has_rough_cycle(0.25, 0.75, 5));
        // part outside the window does not count: 78 = 2*3*13 but 78 > 31
        let m = DegreeMultiset::from_parts(&[2, 98]).unwrap();
        assert!(!m.has_rough_cycle(0.25, 0.75, 5));
    }

    #[test]
    fn restriction_keeps_large_parts() {
        let m = DegreeMultiset::from_parts(&[5, 3, 3, 1]).unwrap();
        let t = m.restrict_min_part(3);
        assert_eq!(t.parts_desc(), vec![5, 3, 3]);
        assert_eq!(t.weight(), 11);
        // bound 1 is the identity; bound weight+1 is empty
        assert_eq!(m.restrict_min_part(1), m);
        assert!(m.restrict_min_part(13).parts_desc().is_empty());
    }

    #[test]
    fn prime_factor_stripping() {
        assert!(has_prime_factor_above(22, 5)); // 11
        assert!(!has_prime_factor_above(16, 5));
        assert!(!has_prime_factor_above(15, 5)); // 3 * 5 all <= 5
        assert!(has_prime_factor_above(7, 5));
        assert!(!has_prime_factor_above(7, 7));
        assert!(!has_prime_factor_above(1, 5));
        assert!(has_prime_factor_above(143, 10)); // 11 * 13
    }
}
